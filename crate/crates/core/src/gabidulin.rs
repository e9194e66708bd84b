//! Gabidulin codes in parity-check form with a syndrome decoder.
//!
//! A code is described by a vector `h` of `N` elements that are linearly
//! independent over `GF(2)`. Its parity-check matrix is the Moore matrix
//! `H[j][i] = h_i^{2^j}` with `rho = N - dim` rows, and the code is the right
//! kernel of `H`. Every error of rank weight at most `floor(rho / 2)` is
//! recovered from its syndrome `e H^T`; decoding never fails inside that
//! radius.
//!
//! The decoder works on the syndrome alone:
//!
//! 1. `s_j = sum_u E_u z_u^{2^j}`, where `E_u` spans the error support and
//!    `z_u = sum_i Y[i][u] h_i` are the images of the binary coefficient
//!    columns under `h`.
//! 2. Twisting row `j` by the inverse Frobenius `x -> x^{2^{-j}}` turns the
//!    key equation for the annihilator `Lambda` of `span(z)` into one linear
//!    system over `GF(2^m)`; the rank of the twisted Hankel block gives the
//!    error weight `t`.
//! 3. The roots of `Lambda` give `z`, a `t x t` Moore system gives `E`, and
//!    the coordinates of each `z_u` in the basis `h` give `Y`.
//!
//! Every intermediate result is checked, and the output is verified against
//! the syndrome before it is returned.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};
use crate::linalg::{BaseMatrix, BaseSolver, BitVector, ExtMatrix, ExtVector, SolveMode};
use crate::linpoly::LinearizedPoly;
use crate::rank_metric::{rank_weight, xor_rank};

/// `k x N` matrix with entry `(i, j) = g_j^{2^i}`.
pub fn moore_matrix(g: &ExtVector, k: usize) -> Result<ExtMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("Moore matrix needs k >= 1".into()));
    }
    let field = g.field();
    let mut rows = Vec::with_capacity(k);
    let mut row = g.clone();
    for i in 0..k {
        if i > 0 {
            row = row.frobenius(1);
        }
        rows.push(row.clone());
    }
    ExtMatrix::from_rows(field, &rows)
}

#[derive(Clone, Debug)]
pub struct GabidulinCode {
    h: ExtVector,
    dim: usize,
    parity: ExtMatrix,
    parity_t: ExtMatrix,
    /// Row `i` holds the bits of `h_i`; solves for `GF(2)` coordinates in `h`.
    h_coords: BaseSolver,
}

impl GabidulinCode {
    /// The `[N, dim]` code with Moore parity-check vector `h` (`N = h.len()`).
    pub fn new(h: ExtVector, dim: usize) -> Result<Self> {
        let n = h.len();
        let m = h.field().degree() as usize;
        if dim >= n {
            return Err(Error::InvalidParameter(format!(
                "code dimension {dim} must be below the length {n}"
            )));
        }
        if n > m {
            return Err(Error::InvalidParameter(format!(
                "length {n} exceeds the extension degree {m}"
            )));
        }
        if rank_weight(&h) != n {
            return Err(Error::InvalidParameter(
                "parity-check vector is not of full rank weight".into(),
            ));
        }
        let parity = moore_matrix(&h, n - dim)?;
        let rows: Vec<BitVector> = h.iter().map(|x| BitVector::from_u64(x.bits(), m)).collect();
        let h_coords = BaseSolver::new(&BaseMatrix::from_rows(&rows)?);
        Ok(GabidulinCode {
            parity_t: parity.transpose(),
            parity,
            h,
            dim,
            h_coords,
        })
    }

    /// Random `[N, dim]` code: `h` is drawn until its entries are independent.
    pub fn random<R: Rng + ?Sized>(
        field: Field,
        length: usize,
        dim: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if length > field.degree() as usize {
            return Err(Error::InvalidParameter(format!(
                "length {length} exceeds the extension degree {}",
                field.degree()
            )));
        }
        let h = loop {
            let h = ExtVector::random(field, length, rng);
            if xor_rank(h.iter().map(|x| x.bits())) == length {
                break h;
            }
        };
        GabidulinCode::new(h, dim)
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn h(&self) -> &ExtVector {
        &self.h
    }

    pub fn length(&self) -> usize {
        self.h.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn redundancy(&self) -> usize {
        self.length() - self.dim
    }

    /// Decoding radius `floor((N - dim) / 2)`.
    pub fn radius(&self) -> usize {
        self.redundancy() / 2
    }

    /// The Moore parity-check matrix, `rho x N`.
    pub fn parity_check(&self) -> &ExtMatrix {
        &self.parity
    }

    /// A basis of the code as rows of a `dim x N` matrix.
    pub fn generator(&self) -> ExtMatrix {
        self.parity_t.left_kernel()
    }

    /// `v H^T`.
    pub fn syndrome(&self, v: &ExtVector) -> Result<ExtVector> {
        if v.len() != self.length() {
            return Err(Error::Dimension(format!(
                "word of length {} for a code of length {}",
                v.len(),
                self.length()
            )));
        }
        self.parity_t.vec_mul(v)
    }

    /// The unique error of rank weight at most [`radius`](Self::radius) with
    /// syndrome `s`. Syndromes of heavier errors either fail with
    /// [`Error::DecodingFailure`] or yield a light error with the same syndrome.
    pub fn decode_syndrome(&self, s: &ExtVector) -> Result<ExtVector> {
        let field = self.field();
        let rho = self.redundancy();
        if s.len() != rho {
            return Err(Error::Dimension(format!(
                "syndrome of length {} for redundancy {rho}",
                s.len()
            )));
        }
        if s.field() != field {
            return Err(Error::FieldMismatch {
                left: field.degree(),
                right: s.field().degree(),
            });
        }
        if s.is_zero() {
            return Ok(ExtVector::zeros(field, self.length()));
        }
        let r = self.radius();
        if r == 0 {
            return Err(Error::DecodingFailure("nonzero syndrome and zero radius"));
        }

        // twisted[j][i] = s_i^{2^{-j}}
        let mut twisted = Vec::with_capacity(rho);
        twisted.push(s.as_slice().to_vec());
        for j in 1..rho {
            let prev: &Vec<FieldElement> = &twisted[j - 1];
            let next = prev.iter().map(|&x| field.sqrt(x)).collect();
            twisted.push(next);
        }

        let hankel = ExtMatrix::from_fn(field, r, r, |j, p| twisted[j][p + j]);
        let detected = hankel.rank();
        for t in (1..=detected).rev() {
            if let Some(e) = self.decode_with_weight(s, &twisted, t) {
                return Ok(e);
            }
        }
        Err(Error::DecodingFailure("no error of rank within the radius fits the syndrome"))
    }

    fn decode_with_weight(
        &self,
        s: &ExtVector,
        twisted: &[Vec<FieldElement>],
        t: usize,
    ) -> Option<ExtVector> {
        let field = self.field();
        let rho = self.redundancy();
        let eqs = rho - t;

        // sum_{p<t} Lambda_p tw[j][p+j] = tw[j][t+j] for j < rho - t
        let system = ExtMatrix::from_fn(field, t, eqs, |p, j| twisted[j][p + j]);
        let rhs = ExtVector::new(field, (0..eqs).map(|j| twisted[j][t + j]).collect()).ok()?;
        let lambda = system.solve_right(&rhs, SolveMode::Unique).ok()?.particular;
        let mut coeffs = lambda.into_vec();
        coeffs.push(FieldElement::ONE);
        let roots = LinearizedPoly::new(field, coeffs).ok()?.root_space();
        if roots.dim() != t {
            return None;
        }
        let z = roots.basis();

        // E Z = (s_0 .. s_{t-1}) with Z[u][j] = z_u^{2^j}
        let mut powers: Vec<Vec<FieldElement>> = Vec::with_capacity(t);
        for &zu in z {
            let mut col = Vec::with_capacity(rho);
            let mut x = zu;
            for j in 0..rho {
                if j > 0 {
                    x = field.square(x);
                }
                col.push(x);
            }
            powers.push(col);
        }
        let moore = ExtMatrix::from_fn(field, t, t, |u, j| powers[u][j]);
        let head = s.slice(0..t);
        let big_e = moore.solve_right(&head, SolveMode::Unique).ok()?.particular;
        for j in t..rho {
            let acc = (0..t).fold(FieldElement::ZERO, |acc, u| {
                acc + field.mul(big_e[u], powers[u][j])
            });
            if acc != s[j] {
                return None;
            }
        }

        let m = field.degree() as usize;
        let mut e = vec![FieldElement::ZERO; self.length()];
        for (u, &zu) in z.iter().enumerate() {
            let y = self
                .h_coords
                .solve(&BitVector::from_u64(zu.bits(), m), SolveMode::Unique)
                .ok()?
                .particular;
            for (i, ei) in e.iter_mut().enumerate() {
                if y.get(i) {
                    *ei += big_e[u];
                }
            }
        }
        let e = ExtVector::new(field, e).ok()?;
        (self.syndrome(&e).ok()? == *s && rank_weight(&e) == t).then_some(e)
    }
}
