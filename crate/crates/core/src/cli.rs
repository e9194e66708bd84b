//! Command-line front end. Output is `key = value` lines with aligned `=`.
//!
//! Exit codes: 0 success, 2 usage, 3 malformed input, 4 decryption or other
//! cryptographic failure, 5 I/O.
//!
//! An encrypted file is the `MCN2` header, the plaintext length as a `u64`
//! (little-endian), then one ciphertext payload per plaintext block. The last
//! block is zero-padded. Block `i` is encrypted with ChaCha20 seeded by the
//! run seed on stream `i`, so with `--seed` the output is reproducible and
//! independent of block order. Fixed seeds are for testing only and are
//! insecure for real use.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::cryptanalysis::{run_legacy_trials, run_mcnie2_trials, LegacyParams, TrialSummary};
use crate::error::Error;
use crate::mcnie2::{encrypt, keygen, Ciphertext, Decryptor, Plaintext, PublicKey, SchemeParams, SecretKey};
use crate::params::{lookup, ParameterSet, PUBLIC_KEY_COMPARISON, REGISTRY};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_CRYPTO: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "mcnie", version, about = "McNie2 public-key encryption over Gabidulin codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a file block by block.
    Encrypt(EncryptArgs),
    /// Decrypt a file produced by `encrypt`.
    Decrypt(DecryptArgs),
    /// Show parameter sets, sizes and security estimates.
    Params(ParamsArgs),
    /// Run the message-recovery attack against McNie and McNie2 toy keys.
    AttackDemo(AttackArgs),
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long, value_name = "NAME")]
    pub params: String,
    /// Deterministic seed (insecure; for tests and reproducibility).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "pub", value_name = "PATH")]
    pub public: PathBuf,
    #[arg(long = "sec", value_name = "PATH")]
    pub secret: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long = "pub", value_name = "PATH")]
    pub public: PathBuf,
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    /// Deterministic seed (insecure; for tests and reproducibility).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[arg(long = "sec", value_name = "PATH")]
    pub secret: PathBuf,
    #[arg(long = "pub", value_name = "PATH")]
    pub public: PathBuf,
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    /// Skip the check that c2 agrees with the recovered message.
    #[arg(long)]
    pub no_check: bool,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    /// List every registered set (the default).
    #[arg(long, conflicts_with = "set")]
    pub list: bool,
    #[arg(long, value_name = "NAME")]
    pub set: Option<String>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Print a CSV report instead of key = value lines.
    #[arg(long)]
    pub csv: bool,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Display) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn format(message: impl Display) -> Self {
        CliError {
            code: EXIT_FORMAT,
            message: message.to_string(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Format(_) => EXIT_FORMAT,
            Error::InvalidParameter(_) => EXIT_USAGE,
            _ => EXIT_CRYPTO,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Collects `key = value` lines and prints them with the `=` aligned.
#[derive(Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn add(&mut self, key: impl Into<String>, value: impl Display) {
        self.0.push((key.into(), value.to_string()));
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.0 {
            writeln!(out, "{k:width$} = {v}")?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> CliResult {
    let report = match command {
        Command::Keygen(a) => cmd_keygen(a)?,
        Command::Encrypt(a) => cmd_encrypt(a)?,
        Command::Decrypt(a) => cmd_decrypt(a)?,
        Command::Params(a) => cmd_params(a)?,
        Command::AttackDemo(a) => return cmd_attack_demo(a, out),
    };
    report.write(out).map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn lookup_set(name: &str) -> CliResult<&'static ParameterSet> {
    lookup(name).map_err(CliError::usage)
}

fn cmd_keygen(a: &KeygenArgs) -> CliResult<Report> {
    let set = lookup_set(&a.params)?;
    let params = set.scheme_params()?;
    let mut rng = match a.seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => rand::make_rng(),
    };
    let (pk, sk) = keygen(&params, &mut rng)?;
    let (pk_bytes, sk_bytes) = (pk.to_bytes(), sk.to_bytes());
    write_file(&a.public, &pk_bytes)?;
    write_file(&a.secret, &sk_bytes)?;
    let sizes = set.sizes();
    let mut r = Report::default();
    r.add("params", set.name);
    r.add("pk_file_size", format!("{} bytes", pk_bytes.len()));
    r.add("pk_formula_size", format!("{} bytes", sizes.pk));
    r.add("sk_file_size", format!("{} bytes", sk_bytes.len()));
    r.add("sk_formula_size", format!("{} bytes", sizes.sk));
    r.add("ct_block_size", format!("{} bytes", params.ciphertext_payload_bytes()));
    r.add("ct_formula_size", format!("{} bytes", sizes.ct));
    r.add("pt_block_size", format!("{} bytes", params.plaintext_block_bytes()));
    Ok(r)
}

/// Encrypts `data` under `pk` into the multi-block file format.
pub fn encrypt_stream(pk: &PublicKey, data: &[u8], seed: u64) -> crate::Result<Vec<u8>> {
    let params = pk.params();
    let bb = params.plaintext_block_bytes();
    let blocks = data.len().div_ceil(bb);
    let mut out = Vec::with_capacity(crate::mcnie2::HEADER_LEN + 8 + blocks * params.ciphertext_payload_bytes());
    params.encode_header(&mut out);
    out.extend_from_slice(&(data.len() as u64).to_le_bytes());
    for (i, chunk) in data.chunks(bb).enumerate() {
        let mut block = chunk.to_vec();
        block.resize(bb, 0);
        let msg = Plaintext::from_block(params, &block)?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        out.extend(encrypt(pk, &msg, &mut rng)?.encode_payload(params));
    }
    Ok(out)
}

/// Inverse of [`encrypt_stream`].
pub fn decrypt_stream(sk: &SecretKey, pk: &PublicKey, bytes: &[u8], check: bool) -> crate::Result<Vec<u8>> {
    let (params, used) = SchemeParams::decode_header(bytes)?;
    if params != *pk.params() || params != *sk.params() {
        return Err(Error::Format("ciphertext parameters differ from the key parameters".into()));
    }
    let rest = &bytes[used..];
    if rest.len() < 8 {
        return Err(Error::Format("truncated length field".into()));
    }
    let (len, payload) = rest.split_at(8);
    let len = u64::from_le_bytes(len.try_into().expect("8 bytes")) as usize;
    let (bb, cb) = (params.plaintext_block_bytes(), params.ciphertext_payload_bytes());
    let blocks = len.div_ceil(bb);
    if payload.len() != blocks * cb {
        return Err(Error::Format(format!(
            "expected {blocks} ciphertext blocks of {cb} bytes, found {} bytes",
            payload.len()
        )));
    }
    let dec = Decryptor::new(sk, pk)?.consistency_check(check);
    let mut out = Vec::with_capacity(blocks * bb);
    for (i, chunk) in payload.chunks(cb).enumerate() {
        let ct = Ciphertext::decode_payload(&params, chunk)?;
        let msg = dec.decrypt(&ct).map_err(|e| match e {
            Error::DecryptionFailure(s) => Error::DecryptionFailure(format!("block {i}: {s}")),
            other => other,
        })?;
        let block = msg
            .to_block(&params)
            .map_err(|_| Error::DecryptionFailure(format!("block {i}: message exceeds the block")))?;
        out.extend(block);
    }
    if out[len..].iter().any(|&b| b != 0) {
        return Err(Error::DecryptionFailure("nonzero padding in the last block".into()));
    }
    out.truncate(len);
    Ok(out)
}

fn load_public(path: &Path) -> CliResult<PublicKey> {
    PublicKey::from_bytes(&read(path)?).map_err(|e| CliError::format(format!("{}: {e}", path.display())))
}

fn load_secret(path: &Path) -> CliResult<SecretKey> {
    SecretKey::from_bytes(&read(path)?).map_err(|e| CliError::format(format!("{}: {e}", path.display())))
}

fn cmd_encrypt(a: &EncryptArgs) -> CliResult<Report> {
    let pk = load_public(&a.public)?;
    let data = read(&a.input)?;
    let seed = a.seed.unwrap_or_else(rand::random);
    let ct = encrypt_stream(&pk, &data, seed)?;
    write_file(&a.output, &ct)?;
    let mut r = Report::default();
    r.add("plaintext_bytes", data.len());
    r.add("blocks", data.len().div_ceil(pk.params().plaintext_block_bytes()));
    r.add("ciphertext_bytes", ct.len());
    Ok(r)
}

fn cmd_decrypt(a: &DecryptArgs) -> CliResult<Report> {
    let sk = load_secret(&a.secret)?;
    let pk = load_public(&a.public)?;
    let ct = read(&a.input)?;
    let data = decrypt_stream(&sk, &pk, &ct, !a.no_check)?;
    write_file(&a.output, &data)?;
    let mut r = Report::default();
    r.add("plaintext_bytes", data.len());
    r.add("blocks", data.len().div_ceil(pk.params().plaintext_block_bytes()));
    r.add("consistency_check", if a.no_check { "off" } else { "on" });
    Ok(r)
}

fn describe_set(r: &mut Report, set: &ParameterSet) {
    let p = set.name;
    let sizes = set.sizes();
    let est = set.security_estimate();
    r.add(format!("{p}.security"), set.security.map_or("toy".to_string(), |s| s.to_string()));
    r.add(
        format!("{p}.params"),
        format!("q={} m={} n={} k={} l={} r={}", set.q, set.m, set.n, set.k, set.l, set.r),
    );
    for (name, size) in [("pk", sizes.pk), ("sk", sizes.sk), ("ct", sizes.ct)] {
        r.add(format!("{p}.{name}_bytes"), size);
        r.add(format!("{p}.{name}_kb"), size.kb());
    }
    for e in [est.naive, est.combined] {
        r.add(
            format!("{p}.security_{}", e.label),
            format!("{:.2} bits (n={} k={} m={} r={}, exponent {})", e.log2_cost, e.n, e.k, e.m, e.r, e.exponent),
        );
    }
}

fn cmd_params(a: &ParamsArgs) -> CliResult<Report> {
    let mut r = Report::default();
    match &a.set {
        Some(name) => describe_set(&mut r, lookup_set(name)?),
        None => {
            for set in REGISTRY {
                describe_set(&mut r, set);
            }
            for &(sec, gab, qd, goppa) in PUBLIC_KEY_COMPARISON {
                r.add(
                    format!("reference_pk_kb.{sec}"),
                    format!("mcnie-gabidulin={gab} mceliece-qd-goppa={qd} mceliece-goppa={goppa}"),
                );
            }
        }
    }
    Ok(r)
}

fn cmd_attack_demo(a: &AttackArgs, out: &mut dyn Write) -> CliResult {
    let seed = a.seed.unwrap_or_else(rand::random);
    let legacy = run_legacy_trials(&LegacyParams::toy(), a.trials, seed)?;
    let mcnie2 = run_mcnie2_trials(&lookup("toy-attack")?.scheme_params()?, a.trials, seed)?;
    let io = |e| CliError::io(Path::new("<stdout>"), e);
    if a.csv {
        writeln!(out, "{}", TrialSummary::CSV_HEADER).map_err(io)?;
        for s in [&legacy, &mcnie2] {
            writeln!(out, "{}", s.csv_row()).map_err(io)?;
        }
    } else {
        writeln!(out, "seed                      = {seed}").map_err(io)?;
        writeln!(out, "{legacy}\n{mcnie2}").map_err(io)?;
    }
    Ok(())
}
