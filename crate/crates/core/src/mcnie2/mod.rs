//! McNie2 public-key encryption over Gabidulin codes.
//!
//! Key generation picks a seed `u` for the `l x n` partial circulant `G'`,
//! a `[2n-k, n]` Gabidulin code with Moore parity-check matrix
//! `H = [H1 | H2]` and a non-identity permutation `P`, and publishes
//! `(G', F)` with `F = G' P^-1 H1^T (H2^T)^-1`.
//!
//! A message `m` of length `l` encrypts to `c1 = m G' + e1` and
//! `c2 = m F + e2`, where `e = (e1, e2)` has rank weight exactly `r`.
//! The key holder computes `c1 P^-1 H1^T - c2 H2^T = (e1 P^-1, -e2) H^T`,
//! decodes that syndrome, undoes the permutation and solves `m G' = c1 - e1`.

mod wire;

use rand::Rng;

pub use wire::{HEADER_LEN, MAGIC, VERSION};

use crate::error::{Error, Result};
use crate::gabidulin::GabidulinCode;
use crate::gf2m::Field;
use crate::linalg::{partial_circulant, ExtMatrix, ExtVector, LeftSolver, Permutation, SolveMode};
use crate::rank_metric::random_error;

/// `(m, n, k, l)` with `q = 2`. The code has length `N = 2n - k`, redundancy
/// `rho = n - k` and corrects rank errors up to `r = floor(rho / 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    field: Field,
    n: usize,
    k: usize,
    l: usize,
}

impl SchemeParams {
    /// Uses the built-in reduction polynomial for `m`.
    pub fn new(m: u32, n: usize, k: usize, l: usize) -> Result<Self> {
        SchemeParams::with_field(Field::standard(m)?, n, k, l)
    }

    pub fn with_field(field: Field, n: usize, k: usize, l: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if k == 0 || k >= n {
            return bad(format!("need 0 < k < n, got k = {k}, n = {n}"));
        }
        if l > n {
            return bad(format!("need l <= n, got l = {l}, n = {n}"));
        }
        if 2 * n - k > field.degree() as usize {
            return bad(format!(
                "code length 2n - k = {} exceeds m = {}",
                2 * n - k,
                field.degree()
            ));
        }
        if l <= n - k {
            return bad(format!("need l > n - k, got l = {l}, n - k = {}", n - k));
        }
        if n > u16::MAX as usize {
            return bad(format!("n = {n} does not fit the key format"));
        }
        Ok(SchemeParams { field, n, k, l })
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

    /// `N = 2n - k`
    pub fn code_length(&self) -> usize {
        2 * self.n - self.k
    }

    /// `rho = n - k`
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// `r = floor((n - k) / 2)`
    pub fn radius(&self) -> usize {
        self.redundancy() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    params: SchemeParams,
    u: ExtVector,
    g_prime: ExtMatrix,
    f: ExtMatrix,
}

impl PublicKey {
    /// Validates shapes and that `G'` has full rank `l`.
    pub fn new(params: SchemeParams, u: ExtVector, f: ExtMatrix) -> Result<Self> {
        if u.len() != params.n || u.field() != params.field {
            return Err(Error::InvalidParameter("seed vector has the wrong shape".into()));
        }
        if (f.rows(), f.cols()) != (params.l, params.redundancy()) || f.field() != params.field {
            return Err(Error::InvalidParameter(format!(
                "public matrix is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                params.l,
                params.redundancy()
            )));
        }
        let g_prime = partial_circulant(&u, params.l)?;
        if g_prime.rank() != params.l {
            return Err(Error::InvalidParameter("G' is not of full rank".into()));
        }
        Ok(PublicKey {
            params,
            u,
            g_prime,
            f,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// Seed of the partial circulant `G'`.
    pub fn seed(&self) -> &ExtVector {
        &self.u
    }

    /// `G'`, `l x n`.
    pub fn generator(&self) -> &ExtMatrix {
        &self.g_prime
    }

    /// `F`, `l x (n - k)`.
    pub fn masked_matrix(&self) -> &ExtMatrix {
        &self.f
    }
}

#[derive(Clone, Debug)]
pub struct SecretKey {
    params: SchemeParams,
    perm: Permutation,
    code: GabidulinCode,
}

impl PartialEq for SecretKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.perm == other.perm && self.code.h() == other.code.h()
    }
}

impl Eq for SecretKey {}

impl SecretKey {
    /// Rejects identity permutations and parity vectors that are not of
    /// full rank weight.
    pub fn new(params: SchemeParams, perm: Permutation, h: ExtVector) -> Result<Self> {
        if perm.len() != params.n {
            return Err(Error::InvalidParameter("permutation has the wrong size".into()));
        }
        if perm.is_identity() {
            return Err(Error::InvalidParameter("permutation must not be the identity".into()));
        }
        if h.len() != params.code_length() || h.field() != params.field {
            return Err(Error::InvalidParameter("parity vector has the wrong shape".into()));
        }
        let code = GabidulinCode::new(h, params.n)?;
        Ok(SecretKey { params, perm, code })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn code(&self) -> &GabidulinCode {
        &self.code
    }

    /// `H = [H1 | H2]`, `(n - k) x (2n - k)`.
    pub fn parity_check(&self) -> &ExtMatrix {
        self.code.parity_check()
    }

    /// `c1 P^-1 H1^T - c2 H2^T`, which equals `(e1 P^-1, -e2) H^T` for any
    /// ciphertext built with error `(e1, e2)`.
    pub fn decryption_syndrome(&self, ct: &Ciphertext) -> Result<ExtVector> {
        self.check_ciphertext(ct)?;
        let c1p = self.perm.apply(&ct.c1, true)?;
        self.code.syndrome(&c1p.concat(&ct.c2)?)
    }

    fn check_ciphertext(&self, ct: &Ciphertext) -> Result<()> {
        if ct.c1.len() != self.params.n || ct.c2.len() != self.params.redundancy() {
            return Err(Error::Dimension(format!(
                "ciphertext of lengths ({}, {}), expected ({}, {})",
                ct.c1.len(),
                ct.c2.len(),
                self.params.n,
                self.params.redundancy()
            )));
        }
        if ct.c1.field() != self.params.field || ct.c2.field() != self.params.field {
            return Err(Error::FieldMismatch {
                left: self.params.m(),
                right: ct.c1.field().degree(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plaintext(ExtVector);

impl Plaintext {
    pub fn new(params: &SchemeParams, m: ExtVector) -> Result<Self> {
        if m.len() != params.l || m.field() != params.field {
            return Err(Error::Dimension(format!(
                "message of length {}, expected {}",
                m.len(),
                params.l
            )));
        }
        Ok(Plaintext(m))
    }

    pub fn random<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Self {
        Plaintext(ExtVector::random(params.field, params.l, rng))
    }

    pub fn as_vector(&self) -> &ExtVector {
        &self.0
    }

    pub fn into_vector(self) -> ExtVector {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub c1: ExtVector,
    pub c2: ExtVector,
}

/// `F = G' P^-1 H1^T (H2^T)^-1` where `H1` is the first `n` columns of
/// `parity` and `H2` the rest.
pub fn public_matrix(g_prime: &ExtMatrix, perm: &Permutation, parity: &ExtMatrix) -> Result<ExtMatrix> {
    let n = g_prime.cols();
    if parity.cols() < n || parity.cols() - n != parity.rows() {
        return Err(Error::Dimension(format!(
            "parity-check matrix {}x{} does not split as [H1 | H2] with n = {n}",
            parity.rows(),
            parity.cols()
        )));
    }
    let rows = (0..g_prime.rows())
        .map(|i| perm.apply(&g_prime.row(i), true))
        .collect::<Result<Vec<_>>>()?;
    let gp = ExtMatrix::from_rows(g_prime.field(), &rows)?;
    let h1t = parity.columns(0..n).transpose();
    let h2t_inv = parity
        .columns(n..parity.cols())
        .transpose()
        .inverse()
        .map_err(|_| Error::InvalidParameter("H2 is singular".into()))?;
    gp.mul(&h1t)?.mul(&h2t_inv)
}

pub fn keygen<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Result<(PublicKey, SecretKey)> {
    let field = params.field;
    let (u, g_prime) = loop {
        let u = ExtVector::random(field, params.n, rng);
        let g = partial_circulant(&u, params.l)?;
        if g.rank() == params.l {
            break (u, g);
        }
    };
    let code = GabidulinCode::random(field, params.code_length(), params.n, rng)?;
    let perm = Permutation::random_non_identity(params.n, rng)?;
    let f = public_matrix(&g_prime, &perm, code.parity_check())?;
    let pk = PublicKey {
        params: *params,
        u,
        g_prime,
        f,
    };
    let sk = SecretKey {
        params: *params,
        perm,
        code,
    };
    Ok((pk, sk))
}

pub fn encrypt<R: Rng + ?Sized>(pk: &PublicKey, msg: &Plaintext, rng: &mut R) -> Result<Ciphertext> {
    let p = &pk.params;
    let e = random_error(p.field, p.code_length(), p.radius(), rng)?;
    encrypt_with_error(pk, msg, &e)
}

/// Encryption with a caller-chosen error `e = (e1, e2)` of length `2n - k`.
/// Honest encryption uses a uniformly drawn `e` of rank weight exactly `r`;
/// this entry point exists for known-answer and failure-mode testing.
pub fn encrypt_with_error(pk: &PublicKey, msg: &Plaintext, e: &ExtVector) -> Result<Ciphertext> {
    let p = &pk.params;
    if e.len() != p.code_length() {
        return Err(Error::Dimension(format!(
            "error of length {}, expected {}",
            e.len(),
            p.code_length()
        )));
    }
    Plaintext::new(p, msg.0.clone())?;
    let c1 = pk.g_prime.vec_mul(&msg.0)?.add(&e.slice(0..p.n))?;
    let c2 = pk.f.vec_mul(&msg.0)?.add(&e.slice(p.n..p.code_length()))?;
    Ok(Ciphertext { c1, c2 })
}

/// Decryption state for one key pair; precomputes the elimination of `G'`.
#[derive(Clone, Debug)]
pub struct Decryptor<'a> {
    sk: &'a SecretKey,
    pk: &'a PublicKey,
    solver: LeftSolver,
    consistency_check: bool,
}

impl<'a> Decryptor<'a> {
    pub fn new(sk: &'a SecretKey, pk: &'a PublicKey) -> Result<Self> {
        if sk.params != pk.params {
            return Err(Error::InvalidParameter(
                "secret and public key use different parameters".into(),
            ));
        }
        Ok(Decryptor {
            sk,
            pk,
            solver: pk.g_prime.solver(),
            consistency_check: true,
        })
    }

    /// With the check on (the default), decryption also verifies
    /// `c2 - m F = e2` and reports a mismatch as an error.
    pub fn consistency_check(mut self, enabled: bool) -> Self {
        self.consistency_check = enabled;
        self
    }

    pub fn decrypt(&self, ct: &Ciphertext) -> Result<Plaintext> {
        let fail = |e: Error| Error::DecryptionFailure(e.to_string());
        let p = &self.sk.params;
        let s = self.sk.decryption_syndrome(ct).map_err(fail)?;
        let e_prime = self.sk.code.decode_syndrome(&s).map_err(fail)?;
        let e1 = self.sk.perm.apply(&e_prime.slice(0..p.n), false)?;
        let m = self
            .solver
            .solve(&ct.c1.sub(&e1)?, SolveMode::Unique)
            .map_err(fail)?
            .particular;
        if self.consistency_check {
            let e2 = ct.c2.sub(&self.pk.f.vec_mul(&m)?)?;
            if e2 != e_prime.slice(p.n..p.code_length()) {
                return Err(Error::DecryptionFailure(
                    "c2 is inconsistent with the recovered message".into(),
                ));
            }
        }
        Ok(Plaintext(m))
    }
}

pub fn decrypt(sk: &SecretKey, pk: &PublicKey, ct: &Ciphertext) -> Result<Plaintext> {
    Decryptor::new(sk, pk)?.decrypt(ct)
}
