//! Rank weight, supports and rank-bounded error sampling.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};
use crate::linalg::{BaseMatrix, BaseSolver, BitVector, ExtVector, SolveMode};

/// Inserts `x` into an XOR basis kept in echelon form by leading bit.
/// Returns false when `x` is already in the span.
#[inline]
fn insert(basis: &mut [u64; 64], mut x: u64) -> bool {
    while x != 0 {
        let top = 63 - x.leading_zeros() as usize;
        if basis[top] == 0 {
            basis[top] = x;
            return true;
        }
        x ^= basis[top];
    }
    false
}

/// `GF(2)`-rank of a set of bit-packed field elements.
pub(crate) fn xor_rank(values: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    values.into_iter().filter(|&x| insert(&mut basis, x)).count()
}

/// True when the `GF(2)`-span of `values` has dimension at most `bound`.
/// Stops as soon as the bound is exceeded.
#[inline]
pub(crate) fn rank_at_most(values: &[u64], bound: usize) -> bool {
    rank_at_most_iter(values.iter().copied(), bound)
}

/// As [`rank_at_most`]; values after the first `bound + 1` independent ones
/// are never pulled from the iterator.
#[inline]
pub(crate) fn rank_at_most_iter(values: impl Iterator<Item = u64>, bound: usize) -> bool {
    // sorted by strictly decreasing leading bit, so `x.min(x ^ b)` clears
    // the leading bit of `b` from `x` exactly when it is set
    let mut basis = [0u64; 64];
    let mut len = 0;
    for v in values {
        let x = basis[..len].iter().fold(v, |x, &b| x.min(x ^ b));
        if x != 0 {
            if len == bound {
                return false;
            }
            let pos = basis[..len].partition_point(|&b| b > x);
            basis.copy_within(pos..len, pos + 1);
            basis[pos] = x;
            len += 1;
        }
    }
    true
}

/// Dimension over `GF(2)` of the span of the coordinates of `v`.
pub fn rank_weight(v: &ExtVector) -> usize {
    xor_rank(v.iter().map(|x| x.bits()))
}

/// An `GF(2)`-subspace of `GF(2^m)` given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    field: Field,
    basis: Vec<FieldElement>,
}

impl Support {
    /// Fails when the basis elements are linearly dependent.
    pub fn new(field: Field, basis: Vec<FieldElement>) -> Result<Self> {
        if basis.iter().any(|&x| !field.contains(x)) {
            return Err(Error::InvalidParameter("basis element outside the field".into()));
        }
        if xor_rank(basis.iter().map(|x| x.bits())) != basis.len() {
            return Err(Error::InvalidParameter(
                "support basis is linearly dependent".into(),
            ));
        }
        Ok(Support { field, basis })
    }

    pub fn empty(field: Field) -> Self {
        Support {
            field,
            basis: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn basis_matrix(&self) -> BaseMatrix {
        let m = self.field.degree() as usize;
        let rows: Vec<BitVector> = self
            .basis
            .iter()
            .map(|x| BitVector::from_u64(x.bits(), m))
            .collect();
        BaseMatrix::from_rows(&rows).unwrap_or_else(|_| BaseMatrix::zeros(0, m))
    }

    /// Coordinates of `x` in this basis, or `None` when `x` is outside the span.
    pub fn coordinates(&self, x: FieldElement) -> Option<BitVector> {
        let m = self.field.degree() as usize;
        if self.basis.is_empty() {
            return x.is_zero().then(|| BitVector::zeros(0));
        }
        let solver = BaseSolver::new(&self.basis_matrix());
        solver
            .solve(&BitVector::from_u64(x.bits(), m), SolveMode::Unique)
            .ok()
            .map(|s| s.particular)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.coordinates(x).is_some()
    }

    /// Every element of the span, `2^dim` of them. Only for small supports.
    pub fn elements(&self) -> Vec<FieldElement> {
        assert!(self.dim() < 32, "span too large to enumerate");
        (0u64..1 << self.dim())
            .map(|mask| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(FieldElement::ZERO, |acc, (_, &b)| acc + b)
            })
            .collect()
    }

    /// True when both supports span the same subspace.
    pub fn same_span(&self, other: &Support) -> bool {
        self.field == other.field
            && self.dim() == other.dim()
            && other.basis.iter().all(|&x| self.contains(x))
    }
}

/// Basis of the span of the entries of `v`, picked greedily from the entries.
pub fn support_of(v: &ExtVector) -> Support {
    let mut echelon = [0u64; 64];
    let basis = v
        .iter()
        .copied()
        .filter(|x| insert(&mut echelon, x.bits()))
        .collect();
    Support {
        field: v.field(),
        basis,
    }
}

/// A vector of length `length` whose rank weight is exactly `target_rank`.
///
/// Draws a random support basis `E_1..E_t` and a full-rank `t x length`
/// binary matrix `Y` (both by rejection) and returns `e_j = sum_u Y[u][j] E_u`.
pub fn random_error<R: Rng + ?Sized>(
    field: Field,
    length: usize,
    target_rank: usize,
    rng: &mut R,
) -> Result<ExtVector> {
    let m = field.degree() as usize;
    if target_rank > m.min(length) {
        return Err(Error::InvalidParameter(format!(
            "no vector of length {length} over GF(2^{m}) has rank {target_rank}"
        )));
    }
    let support: Vec<u64> = loop {
        let cand: Vec<u64> = (0..target_rank).map(|_| field.random(rng).bits()).collect();
        if xor_rank(cand.iter().copied()) == target_rank {
            break cand;
        }
    };
    let coeffs = loop {
        let mut y = BaseMatrix::zeros(target_rank, length);
        for u in 0..target_rank {
            for j in 0..length {
                y.set(u, j, rng.next_u32() & 1 == 1);
            }
        }
        if y.rank() == target_rank {
            break y;
        }
    };
    let data = (0..length)
        .map(|j| {
            FieldElement(
                (0..target_rank)
                    .filter(|&u| coeffs.get(u, j))
                    .fold(0, |acc, u| acc ^ support[u]),
            )
        })
        .collect();
    Ok(ExtVector::from_parts(field, data))
}
