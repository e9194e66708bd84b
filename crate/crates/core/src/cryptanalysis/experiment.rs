//! Repeated end-to-end message-recovery trials against both schemes.

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::Result;
use crate::mcnie2::{encrypt, keygen, Plaintext, SchemeParams};

use super::gaborit::{attack, gaborit_reduce};
use super::legacy::{legacy_encrypt, legacy_keygen, legacy_random_message, LegacyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Legacy,
    McNie2,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Legacy => "mcnie",
            Scheme::McNie2 => "mcnie2",
        })
    }
}

/// Outcome of `trials` independent keygen, encrypt, attack runs.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub scheme: Scheme,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub trials: usize,
    pub successes: usize,
    /// Trials whose reduced code had exactly `l - (n - k)` rows.
    pub reduced_dim_matches: usize,
    pub wall_time: Duration,
}

impl TrialSummary {
    pub fn reduced_dim(&self) -> usize {
        self.l - (self.n - self.k)
    }

    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub const CSV_HEADER: &'static str =
        "scheme,m,n,k,l,r,reduced_dim,trials,successes,reduced_dim_matches,wall_time_s";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.scheme,
            self.m,
            self.n,
            self.k,
            self.l,
            self.r,
            self.reduced_dim(),
            self.trials,
            self.successes,
            self.reduced_dim_matches,
            self.wall_time.as_secs_f64()
        )
    }
}

impl fmt::Display for TrialSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scheme;
        writeln!(f, "{s}.params              = m={} n={} k={} l={} r={}", self.m, self.n, self.k, self.l, self.r)?;
        writeln!(f, "{s}.reduced_dim         = {}", self.reduced_dim())?;
        writeln!(f, "{s}.trials              = {}", self.trials)?;
        writeln!(f, "{s}.successes           = {}", self.successes)?;
        writeln!(f, "{s}.success_rate        = {:.2}", self.success_rate())?;
        writeln!(f, "{s}.reduced_dim_matches = {}", self.reduced_dim_matches)?;
        write!(f, "{s}.wall_time_s         = {:.3}", self.wall_time.as_secs_f64())
    }
}

/// Attacks `trials` fresh legacy key pairs and ciphertexts.
pub fn run_legacy_trials(params: &LegacyParams, trials: usize, seed: u64) -> Result<TrialSummary> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let start = Instant::now();
    let (mut successes, mut dims) = (0, 0);
    let want_dim = params.l() - params.redundancy();
    for _ in 0..trials {
        let (pk, _) = legacy_keygen(params, &mut rng)?;
        let msg = legacy_random_message(params, &mut rng);
        let ct = legacy_encrypt(&pk, &msg, &mut rng)?;
        dims += (gaborit_reduce(&pk, &ct)?.gpp.rows() == want_dim) as usize;
        successes += (attack(&pk, &ct, params.radius()).ok() == Some(msg)) as usize;
    }
    Ok(TrialSummary {
        scheme: Scheme::Legacy,
        m: params.m(),
        n: params.n(),
        k: params.k(),
        l: params.l(),
        r: params.radius(),
        trials,
        successes,
        reduced_dim_matches: dims,
        wall_time: start.elapsed(),
    })
}

/// Runs the identical pipeline against `trials` McNie2 key pairs.
pub fn run_mcnie2_trials(params: &SchemeParams, trials: usize, seed: u64) -> Result<TrialSummary> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let start = Instant::now();
    let (mut successes, mut dims) = (0, 0);
    let want_dim = params.l() - params.redundancy();
    for _ in 0..trials {
        let (pk, _) = keygen(params, &mut rng)?;
        let msg = Plaintext::random(params, &mut rng);
        let ct = encrypt(&pk, &msg, &mut rng)?;
        dims += (gaborit_reduce(&pk, &ct)?.gpp.rows() == want_dim) as usize;
        successes += (attack(&pk, &ct, params.radius()).ok().as_ref() == Some(msg.as_vector())) as usize;
    }
    Ok(TrialSummary {
        scheme: Scheme::McNie2,
        m: params.m(),
        n: params.n(),
        k: params.k(),
        l: params.l(),
        r: params.radius(),
        trials,
        successes,
        reduced_dim_matches: dims,
        wall_time: start.elapsed(),
    })
}
