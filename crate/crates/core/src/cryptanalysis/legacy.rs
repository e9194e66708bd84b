//! The original McNie scheme over an `[n, k]` Gabidulin code.
//!
//! Public key `(G', F)` with `F = G' P^-1 H^T S`; ciphertext `c1 = m G' + e`,
//! `c2 = m F`. Only `c1` carries an error, which is what the message-recovery
//! reduction exploits.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gabidulin::GabidulinCode;
use crate::gf2m::Field;
use crate::linalg::{partial_circulant, ExtMatrix, ExtVector, LeftSolver, Permutation, SolveMode};
use crate::mcnie2::Ciphertext;
use crate::rank_metric::random_error;

/// `(m, n, k, l)` with `q = 2`, `rho = n - k`, `r = floor(rho / 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegacyParams {
    field: Field,
    n: usize,
    k: usize,
    l: usize,
}

impl LegacyParams {
    pub fn new(m: u32, n: usize, k: usize, l: usize) -> Result<Self> {
        let field = Field::standard(m)?;
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!("need 0 < k < n, got k = {k}, n = {n}")));
        }
        if n > m as usize {
            return Err(Error::InvalidParameter(format!("code length n = {n} exceeds m = {m}")));
        }
        if l == 0 || l > n {
            return Err(Error::InvalidParameter(format!("need 0 < l <= n, got l = {l}")));
        }
        if n < 2 {
            return Err(Error::InvalidParameter("need n >= 2".into()));
        }
        Ok(LegacyParams { field, n, k, l })
    }

    /// `m = 12, n = 10, k = 4, l = 8`: the reduced instance has
    /// `2^{12 (8 - 6)} = 2^24` candidate messages.
    pub fn toy() -> Self {
        LegacyParams::new(12, 10, 4, 8).expect("valid toy parameters")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> u32 {
        self.field.degree()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn radius(&self) -> usize {
        self.redundancy() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegacyPublicKey {
    pub params: LegacyParams,
    pub g_prime: ExtMatrix,
    pub f: ExtMatrix,
}

#[derive(Clone, Debug)]
pub struct LegacySecretKey {
    pub perm: Permutation,
    pub code: GabidulinCode,
    pub s: ExtMatrix,
    s_inv: ExtMatrix,
}

pub fn legacy_keygen<R: Rng + ?Sized>(
    params: &LegacyParams,
    rng: &mut R,
) -> Result<(LegacyPublicKey, LegacySecretKey)> {
    let field = params.field;
    let rho = params.redundancy();
    let g_prime = loop {
        let g = partial_circulant(&ExtVector::random(field, params.n, rng), params.l)?;
        if g.rank() == params.l {
            break g;
        }
    };
    let (s, s_inv) = loop {
        let s = ExtMatrix::random(field, rho, rho, rng);
        if let Ok(inv) = s.inverse() {
            break (s, inv);
        }
    };
    let code = GabidulinCode::random(field, params.n, params.k, rng)?;
    let perm = Permutation::random_non_identity(params.n, rng)?;
    let rows = (0..params.l)
        .map(|i| perm.apply(&g_prime.row(i), true))
        .collect::<Result<Vec<_>>>()?;
    let f = ExtMatrix::from_rows(field, &rows)?
        .mul(&code.parity_check().transpose())?
        .mul(&s)?;
    Ok((
        LegacyPublicKey {
            params: *params,
            g_prime,
            f,
        },
        LegacySecretKey {
            perm,
            code,
            s,
            s_inv,
        },
    ))
}

pub fn legacy_encrypt<R: Rng + ?Sized>(
    pk: &LegacyPublicKey,
    msg: &ExtVector,
    rng: &mut R,
) -> Result<Ciphertext> {
    let p = &pk.params;
    let e = random_error(p.field, p.n, p.radius(), rng)?;
    legacy_encrypt_with_error(pk, msg, &e)
}

/// `c1 = m G' + e`, `c2 = m F` for a caller-chosen `e` of length `n`.
pub fn legacy_encrypt_with_error(pk: &LegacyPublicKey, msg: &ExtVector, e: &ExtVector) -> Result<Ciphertext> {
    if msg.len() != pk.params.l || e.len() != pk.params.n {
        return Err(Error::Dimension("message or error has the wrong length".into()));
    }
    Ok(Ciphertext {
        c1: pk.g_prime.vec_mul(msg)?.add(e)?,
        c2: pk.f.vec_mul(msg)?,
    })
}

/// `c1 P^-1 H^T - c2 S^-1`, equal to `e P^-1 H^T`.
pub fn legacy_syndrome(sk: &LegacySecretKey, ct: &Ciphertext) -> Result<ExtVector> {
    let s1 = sk.code.syndrome(&sk.perm.apply(&ct.c1, true)?)?;
    s1.sub(&sk.s_inv.vec_mul(&ct.c2)?)
}

pub fn legacy_decrypt(sk: &LegacySecretKey, pk: &LegacyPublicKey, ct: &Ciphertext) -> Result<ExtVector> {
    let fail = |e: Error| Error::DecryptionFailure(e.to_string());
    let s = legacy_syndrome(sk, ct).map_err(fail)?;
    let e = sk.perm.apply(&sk.code.decode_syndrome(&s).map_err(fail)?, false)?;
    let m = LeftSolver::new(&pk.g_prime)
        .solve(&ct.c1.sub(&e)?, SolveMode::Unique)
        .map_err(fail)?
        .particular;
    if pk.f.vec_mul(&m)? != ct.c2 {
        return Err(Error::DecryptionFailure("c2 is inconsistent with the recovered message".into()));
    }
    Ok(m)
}

/// Random message of length `l`, in the same shape as a McNie2 plaintext.
pub fn legacy_random_message<R: Rng + ?Sized>(params: &LegacyParams, rng: &mut R) -> ExtVector {
    ExtVector::random(params.field, params.l, rng)
}
