//! Dense linear algebra over `GF(2^m)` and `GF(2)`.
//!
//! Vectors are row vectors: a linear map is applied as `x A`, which is how
//! messages meet generator matrices throughout the crate. Elimination pivots
//! on the first nonzero entry in column order.

mod base;
mod perm;

use std::fmt;
use std::ops::Index;

use rand::Rng;

pub use base::{BaseMatrix, BaseSolution, BaseSolver, BitVector};
pub use perm::{apply_permutation, Permutation};

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};

/// How [`ExtMatrix::solve_right`] treats the solution space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Error unless the solution is unique.
    Unique,
    /// Any particular solution.
    Any,
    /// A particular solution plus a basis of the left kernel.
    All,
}

fn check_field(a: Field, b: Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: a.degree(),
            right: b.degree(),
        })
    }
}

/// A row vector over `GF(2^m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtVector {
    field: Field,
    data: Vec<FieldElement>,
}

impl fmt::Debug for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}

impl Index<usize> for ExtVector {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.data[i]
    }
}

impl ExtVector {
    pub fn new(field: Field, data: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidParameter(format!(
                "{bad:?} is not an element of {field:?}"
            )));
        }
        Ok(ExtVector { field, data })
    }

    pub(crate) fn from_parts(field: Field, data: Vec<FieldElement>) -> Self {
        debug_assert!(data.iter().all(|&x| field.contains(x)));
        ExtVector { field, data }
    }

    pub fn from_bits(field: Field, bits: &[u64]) -> Result<Self> {
        let data = bits
            .iter()
            .map(|&b| field.element(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtVector { field, data })
    }

    pub fn zeros(field: Field, len: usize) -> Self {
        ExtVector {
            field,
            data: vec![FieldElement::ZERO; len],
        }
    }

    pub fn random<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R) -> Self {
        ExtVector {
            field,
            data: (0..len).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<FieldElement> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FieldElement> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Number of nonzero coordinates.
    pub fn hamming_weight(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn set(&mut self, i: usize, value: FieldElement) {
        assert!(self.field.contains(value));
        self.data[i] = value;
    }

    pub fn add(&self, other: &ExtVector) -> Result<ExtVector> {
        check_field(self.field, other.field)?;
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "adding vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(ExtVector {
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    /// Same as [`ExtVector::add`] in characteristic 2.
    pub fn sub(&self, other: &ExtVector) -> Result<ExtVector> {
        self.add(other)
    }

    pub fn scale(&self, c: FieldElement) -> ExtVector {
        ExtVector {
            field: self.field,
            data: self.data.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// Coordinate-wise `x^{2^i}`.
    pub fn frobenius(&self, i: i64) -> ExtVector {
        ExtVector {
            field: self.field,
            data: self.data.iter().map(|&a| self.field.frobenius(a, i)).collect(),
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> ExtVector {
        ExtVector {
            field: self.field,
            data: self.data[range].to_vec(),
        }
    }

    pub fn concat(&self, other: &ExtVector) -> Result<ExtVector> {
        check_field(self.field, other.field)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExtVector {
            field: self.field,
            data,
        })
    }

    pub fn dot(&self, other: &ExtVector) -> Result<FieldElement> {
        check_field(self.field, other.field)?;
        if self.len() != other.len() {
            return Err(Error::Dimension("dot product of unequal lengths".into()));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| acc + self.field.mul(a, b)))
    }

    /// The vector as a `1 x len` matrix.
    pub fn to_row_matrix(&self) -> ExtMatrix {
        ExtMatrix {
            field: self.field,
            rows: 1,
            cols: self.len(),
            data: self.data.clone(),
        }
    }

    /// Serialized as a `1 x len` matrix.
    pub fn encode(&self, out: &mut Vec<u8>) {
        encode_dims(1, self.len(), out);
        self.encode_raw(out);
    }

    /// Entries only, without the dimension prefix.
    pub fn encode_raw(&self, out: &mut Vec<u8>) {
        for &x in &self.data {
            self.field.encode_element(x, out);
        }
    }

    /// Reads a vector written by [`ExtVector::encode`]; returns it with the
    /// number of bytes consumed.
    pub fn decode(field: Field, bytes: &[u8]) -> Result<(ExtVector, usize)> {
        let (m, used) = ExtMatrix::decode(field, bytes)?;
        if m.rows != 1 {
            return Err(Error::Format(format!("expected a 1-row vector, got {} rows", m.rows)));
        }
        Ok((
            ExtVector {
                field,
                data: m.data,
            },
            used,
        ))
    }

    pub fn decode_raw(field: Field, len: usize, bytes: &[u8]) -> Result<(ExtVector, usize)> {
        let w = field.element_bytes();
        let need = len * w;
        if bytes.len() < need {
            return Err(Error::Format(format!(
                "vector of {len} elements needs {need} bytes, {} left",
                bytes.len()
            )));
        }
        let data = bytes[..need]
            .chunks_exact(w)
            .map(|c| field.decode_element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok((ExtVector { field, data }, need))
    }
}

impl<'a> IntoIterator for &'a ExtVector {
    type Item = &'a FieldElement;
    type IntoIter = std::slice::Iter<'a, FieldElement>;
    fn into_iter(self) -> Self::IntoIter {
        self.data.iter()
    }
}

fn encode_dims(rows: usize, cols: usize, out: &mut Vec<u8>) {
    out.extend_from_slice(&(rows as u32).to_le_bytes());
    out.extend_from_slice(&(cols as u32).to_le_bytes());
}

/// The `m x len` bit matrix whose column `j` holds the polynomial-basis
/// coefficients of `v[j]`.
pub fn expand_to_base(v: &ExtVector) -> BaseMatrix {
    let m = v.field().degree() as usize;
    let mut a = BaseMatrix::zeros(m, v.len());
    for (j, x) in v.iter().enumerate() {
        for i in 0..m {
            if (x.bits() >> i) & 1 == 1 {
                a.set(i, j, true);
            }
        }
    }
    a
}

/// Inverse of [`expand_to_base`]: collapses each column back into an element.
pub fn collapse_from_base(field: Field, a: &BaseMatrix) -> Result<ExtVector> {
    if a.rows() != field.degree() as usize {
        return Err(Error::Dimension(format!(
            "{} rows cannot encode elements of GF(2^{})",
            a.rows(),
            field.degree()
        )));
    }
    let data = (0..a.cols())
        .map(|j| {
            FieldElement(
                (0..a.rows()).fold(0u64, |acc, i| acc | ((a.get(i, j) as u64) << i)),
            )
        })
        .collect();
    Ok(ExtVector { field, data })
}

/// A dense row-major matrix over `GF(2^m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExtMatrix {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ExtMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl ExtMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExtMatrix {
            field,
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut a = ExtMatrix::zeros(field, n, n);
        for i in 0..n {
            a.set(i, i, FieldElement::ONE);
        }
        a
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert!(field.contains(x));
                data.push(x);
            }
        }
        ExtMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: &[ExtVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_field(field, r.field)?;
            if r.len() != cols {
                return Err(Error::Dimension("rows of unequal length".into()));
            }
            data.extend_from_slice(&r.data);
        }
        Ok(ExtMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        ExtMatrix {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert!(i < self.rows && j < self.cols && self.field.contains(x));
        self.data[i * self.cols + j] = x;
    }

    pub fn row_slice(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row(&self, i: usize) -> ExtVector {
        ExtVector {
            field: self.field,
            data: self.row_slice(i).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> ExtMatrix {
        ExtMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> ExtMatrix {
        assert!(range.end <= self.cols);
        let start = range.start;
        ExtMatrix::from_fn(self.field, self.rows, range.len(), |i, j| self[(i, start + j)])
    }

    pub fn add(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        check_field(self.field, other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("adding matrices of different shapes".into()));
        }
        Ok(ExtMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        check_field(self.field, other.field)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = self.field;
        let mut out = ExtMatrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (p, &a) in self.row_slice(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (d, &b) in dst.iter_mut().zip(other.row_slice(p)) {
                    *d += k.mul(a, b);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x A`.
    pub fn vec_mul(&self, x: &ExtVector) -> Result<ExtVector> {
        check_field(self.field, x.field)?;
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let k = self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row_slice(i)) {
                *d += k.mul(a, b);
            }
        }
        Ok(ExtVector {
            field: k,
            data: out,
        })
    }

    /// Rank over `GF(2^m)` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let k = self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !a[i * cols + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = k.inv(a[rank * cols + col]).expect("pivot is nonzero");
            for i in rank + 1..rows {
                let f = a[i * cols + col];
                if f.is_zero() {
                    continue;
                }
                let c = k.mul(f, inv);
                for j in col..cols {
                    let t = k.mul(c, a[rank * cols + j]);
                    a[i * cols + j] += t;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn solver(&self) -> LeftSolver {
        LeftSolver::new(self)
    }

    /// Solves `x A = b` for the row vector `x`.
    pub fn solve_right(&self, b: &ExtVector, mode: SolveMode) -> Result<Solution> {
        check_field(self.field, b.field)?;
        self.solver().solve(b, mode)
    }

    /// Basis (as rows) of `{x : x A = 0}`.
    pub fn left_kernel(&self) -> ExtMatrix {
        self.solver().kernel()
    }

    pub fn inverse(&self) -> Result<ExtMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let s = self.solver();
        if s.rank() < self.rows {
            return Err(Error::DivisionByZero);
        }
        Ok(s.transform)
    }

    /// Dimensions as two little-endian `u32`, then the entries row-major.
    pub fn encode(&self, out: &mut Vec<u8>) {
        encode_dims(self.rows, self.cols, out);
        for &x in &self.data {
            self.field.encode_element(x, out);
        }
    }

    /// Reads a matrix written by [`ExtMatrix::encode`]; returns it with the
    /// number of bytes consumed.
    pub fn decode(field: Field, bytes: &[u8]) -> Result<(ExtMatrix, usize)> {
        if bytes.len() < 8 {
            return Err(Error::Format("truncated matrix header".into()));
        }
        let rows = u32::from_le_bytes(bytes[0..4].try_into().unwrap()) as usize;
        let cols = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let count = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Format("matrix dimensions overflow".into()))?;
        let (v, used) = ExtVector::decode_raw(field, count, &bytes[8..])?;
        Ok((
            ExtMatrix {
                field,
                rows,
                cols,
                data: v.data,
            },
            8 + used,
        ))
    }
}

/// Solution of `x A = b` over `GF(2^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: ExtVector,
    /// Basis of the left kernel, present only for [`SolveMode::All`].
    pub kernel: Option<ExtMatrix>,
}

/// Reduced row echelon form `R` of `A` with the transform `T`, `T A = R`.
/// Built once and reused across right-hand sides.
#[derive(Clone, Debug)]
pub struct LeftSolver {
    reduced: ExtMatrix,
    transform: ExtMatrix,
    pivots: Vec<usize>,
}

impl LeftSolver {
    pub fn new(a: &ExtMatrix) -> Self {
        let k = a.field;
        let mut r = a.clone();
        let mut t = ExtMatrix::identity(k, a.rows);
        let mut pivots = Vec::new();
        for col in 0..a.cols {
            let rank = pivots.len();
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !r[(i, col)].is_zero()) else {
                continue;
            };
            swap_rows(&mut r, rank, p);
            swap_rows(&mut t, rank, p);
            let inv = k.inv(r[(rank, col)]).expect("pivot is nonzero");
            scale_row(&mut r, rank, inv);
            scale_row(&mut t, rank, inv);
            for i in 0..a.rows {
                let f = r[(i, col)];
                if i != rank && !f.is_zero() {
                    axpy_row(&mut r, i, rank, f);
                    axpy_row(&mut t, i, rank, f);
                }
            }
            pivots.push(col);
        }
        LeftSolver {
            reduced: r,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> ExtMatrix {
        let rows = self.transform.rows;
        let rank = self.rank();
        ExtMatrix {
            field: self.transform.field,
            rows: rows - rank,
            cols: rows,
            data: self.transform.data[rank * rows..].to_vec(),
        }
    }

    pub fn solve(&self, b: &ExtVector, mode: SolveMode) -> Result<Solution> {
        let k = self.reduced.field;
        check_field(k, b.field)?;
        if b.len() != self.reduced.cols {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.reduced.cols
            )));
        }
        let nullity = self.reduced.rows - self.rank();
        if mode == SolveMode::Unique && nullity > 0 {
            return Err(Error::Ambiguous { dim: nullity });
        }
        let mut check = vec![FieldElement::ZERO; self.reduced.cols];
        let mut x = vec![FieldElement::ZERO; self.reduced.rows];
        for (i, &col) in self.pivots.iter().enumerate() {
            let y = b[col];
            if y.is_zero() {
                continue;
            }
            for (c, &r) in check.iter_mut().zip(self.reduced.row_slice(i)) {
                *c += k.mul(y, r);
            }
            for (c, &t) in x.iter_mut().zip(self.transform.row_slice(i)) {
                *c += k.mul(y, t);
            }
        }
        if check != b.data {
            return Err(Error::NoSolution);
        }
        let kernel = (mode == SolveMode::All).then(|| self.kernel());
        Ok(Solution {
            particular: ExtVector { field: k, data: x },
            kernel,
        })
    }
}

fn swap_rows(a: &mut ExtMatrix, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            a.data.swap(i * a.cols + c, j * a.cols + c);
        }
    }
}

fn scale_row(a: &mut ExtMatrix, i: usize, c: FieldElement) {
    let k = a.field;
    for x in &mut a.data[i * a.cols..(i + 1) * a.cols] {
        *x = k.mul(*x, c);
    }
}

/// `row[dst] += c * row[src]`
fn axpy_row(a: &mut ExtMatrix, dst: usize, src: usize, c: FieldElement) {
    let k = a.field;
    let cols = a.cols;
    for j in 0..cols {
        let t = k.mul(c, a.data[src * cols + j]);
        a.data[dst * cols + j] += t;
    }
}

/// The first `l` rows of the circulant matrix of `u`; row `i` is `u`
/// cyclically shifted right by `i` positions.
pub fn partial_circulant(u: &ExtVector, l: usize) -> Result<ExtMatrix> {
    let n = u.len();
    if l == 0 || l > n {
        return Err(Error::InvalidParameter(format!(
            "partial circulant needs 1 <= l <= {n}, got {l}"
        )));
    }
    Ok(ExtMatrix::from_fn(u.field(), l, n, |i, j| u[(j + n - i) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn k8() -> Field {
        Field::standard(8).unwrap()
    }

    fn naive_mul(a: &ExtMatrix, b: &ExtMatrix) -> ExtMatrix {
        let k = a.field();
        ExtMatrix::from_fn(k, a.rows(), b.cols(), |i, j| {
            let mut acc = FieldElement::ZERO;
            for p in 0..a.cols() {
                acc = acc + k.mul(a[(i, p)], b[(p, j)]);
            }
            acc
        })
    }

    /// Largest nonzero minor by exhaustive cofactor expansion.
    fn rank_by_minors(a: &ExtMatrix) -> usize {
        fn det(k: Field, m: &[Vec<FieldElement>]) -> FieldElement {
            if m.is_empty() {
                return FieldElement::ONE;
            }
            let mut acc = FieldElement::ZERO;
            for c in 0..m.len() {
                let minor: Vec<Vec<FieldElement>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                acc = acc + k.mul(m[0][c], det(k, &minor));
            }
            acc
        }
        fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == size)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        }
        let k = a.field();
        for size in (1..=a.rows().min(a.cols())).rev() {
            for rs in subsets(a.rows(), size) {
                for cs in subsets(a.cols(), size) {
                    let m: Vec<Vec<FieldElement>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[(i, j)]).collect())
                        .collect();
                    if !det(k, &m).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn mat_mul_examples() {
        let k = k8();
        let mut rng = ChaCha20Rng::seed_from_u64(20);
        let a = ExtMatrix::random(k, 3, 4, &mut rng);
        assert_eq!(a.mul(&ExtMatrix::identity(k, 4)).unwrap(), a);
        let b = ExtMatrix::random(k, 4, 2, &mut rng);
        assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
        let x = ExtMatrix::from_fn(k, 1, 1, |_, _| FieldElement(0x53));
        let y = ExtMatrix::from_fn(k, 1, 1, |_, _| FieldElement(0xca));
        assert_eq!(x.mul(&y).unwrap()[(0, 0)], k.mul(FieldElement(0x53), FieldElement(0xca)));
        assert!(matches!(a.mul(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let a = ExtVector::random(k8(), 3, &mut rng);
        let b = ExtVector::random(Field::standard(6).unwrap(), 3, &mut rng);
        assert_eq!(
            a.add(&b),
            Err(Error::FieldMismatch { left: 8, right: 6 })
        );
    }

    #[test]
    fn rank_examples() {
        let k = k8();
        assert_eq!(ExtMatrix::zeros(k, 3, 5).rank(), 0);
        assert_eq!(ExtMatrix::identity(k, 6).rank(), 6);
        let mut rng = ChaCha20Rng::seed_from_u64(22);
        let r = ExtVector::random(k, 5, &mut rng);
        let other = ExtVector::random(k, 5, &mut rng);
        let a = ExtMatrix::from_rows(k, &[r.clone(), other, r]).unwrap();
        assert!(a.rank() <= 2);
    }

    #[test]
    fn rank_agrees_with_minor_expansion() {
        let k = Field::standard(2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        for _ in 0..300 {
            let rows = 1 + (rng.next_u32() % 4) as usize;
            let cols = 1 + (rng.next_u32() % 4) as usize;
            let a = ExtMatrix::random(k, rows, cols, &mut rng);
            assert_eq!(a.rank(), rank_by_minors(&a), "{a:?}");
            assert_eq!(a.rank(), a.solver().rank());
        }
    }

    #[test]
    fn solve_examples() {
        let k = k8();
        let mut rng = ChaCha20Rng::seed_from_u64(24);
        let b = ExtVector::random(k, 4, &mut rng);
        let s = ExtMatrix::identity(k, 4).solve_right(&b, SolveMode::Unique).unwrap();
        assert_eq!(s.particular, b);

        let a = ExtMatrix::random(k, 3, 5, &mut rng);
        let s = a.solve_right(&ExtVector::zeros(k, 5), SolveMode::Any).unwrap();
        assert!(s.particular.is_zero());

        let k41 = Field::standard(41).unwrap();
        for _ in 0..20 {
            let a = ExtMatrix::random(k41, 5, 8, &mut rng);
            assert_eq!(a.rank(), 5);
            let x = ExtVector::random(k41, 5, &mut rng);
            let b = a.vec_mul(&x).unwrap();
            assert_eq!(a.solve_right(&b, SolveMode::Unique).unwrap().particular, x);
        }
    }

    #[test]
    fn solve_errors() {
        let k = k8();
        let mut rng = ChaCha20Rng::seed_from_u64(25);
        // 5 rows in a 3-dimensional column space
        let a = ExtMatrix::random(k, 5, 3, &mut rng);
        let b = a.vec_mul(&ExtVector::random(k, 5, &mut rng)).unwrap();
        assert_eq!(
            a.solve_right(&b, SolveMode::Unique),
            Err(Error::Ambiguous { dim: 2 })
        );
        let all = a.solve_right(&b, SolveMode::All).unwrap();
        assert_eq!(a.vec_mul(&all.particular).unwrap(), b);
        assert_eq!(all.kernel.unwrap().rows(), 2);

        // 2 rows cannot reach a generic vector of length 4
        let a = ExtMatrix::random(k, 2, 4, &mut rng);
        let b = ExtVector::random(k, 4, &mut rng);
        assert_eq!(a.solve_right(&b, SolveMode::Any), Err(Error::NoSolution));
    }

    #[test]
    fn left_kernel_examples() {
        let k = k8();
        assert_eq!(ExtMatrix::identity(k, 4).left_kernel().rows(), 0);
        let z = ExtMatrix::zeros(k, 3, 2).left_kernel();
        assert_eq!(z, ExtMatrix::identity(k, 3));

        let mut rng = ChaCha20Rng::seed_from_u64(26);
        for _ in 0..30 {
            let left = ExtMatrix::random(k, 6, 3, &mut rng);
            let right = ExtMatrix::random(k, 3, 5, &mut rng);
            let a = left.mul(&right).unwrap();
            let ker = a.left_kernel();
            assert_eq!(ker.rows(), 6 - a.rank());
            assert!(ker.mul(&a).unwrap().is_zero());
            assert_eq!(ker.rank(), ker.rows());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let k = Field::standard(41).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(27);
        let a = ExtMatrix::random(k, 6, 6, &mut rng);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExtMatrix::identity(k, 6));
        assert_eq!(ExtMatrix::zeros(k, 2, 2).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn expand_examples() {
        let k = k8();
        let zero = ExtVector::zeros(k, 3);
        assert!(expand_to_base(&zero).is_zero());
        let ones = ExtVector::from_bits(k, &[1, 1]).unwrap();
        let e = expand_to_base(&ones);
        assert_eq!((e.rows(), e.cols()), (8, 2));
        assert!(e.get(0, 0) && e.get(0, 1));
        assert_eq!(e.row(0).count_ones() + (1..8).map(|i| e.row(i).count_ones()).sum::<usize>(), 2);

        let mut rng = ChaCha20Rng::seed_from_u64(28);
        let v = ExtVector::random(k, 9, &mut rng);
        assert_eq!(collapse_from_base(k, &expand_to_base(&v)).unwrap(), v);
    }

    #[test]
    fn partial_circulant_examples() {
        let k = k8();
        let (a, b, c) = (FieldElement(1), FieldElement(2), FieldElement(3));
        let u = ExtVector::new(k, vec![a, b, c]).unwrap();
        assert_eq!(partial_circulant(&u, 1).unwrap().row(0), u);
        let g = partial_circulant(&u, 3).unwrap();
        assert_eq!(g.row_slice(0), &[a, b, c]);
        assert_eq!(g.row_slice(1), &[c, a, b]);
        assert_eq!(g.row_slice(2), &[b, c, a]);
        assert!(partial_circulant(&u, 0).is_err());
        assert!(partial_circulant(&u, 4).is_err());
    }

    #[test]
    fn square_circulant_commutes_with_shift() {
        let k = Field::standard(41).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(29);
        let n = 7;
        let u = ExtVector::random(k, n, &mut rng);
        let c = partial_circulant(&u, n).unwrap();
        let shift = Permutation::new((0..n).map(|i| (i + 1) % n).collect())
            .unwrap()
            .to_matrix(k);
        assert_eq!(c.mul(&shift).unwrap(), shift.mul(&c).unwrap());
        for i in 0..n {
            let mut row: Vec<_> = c.row_slice(i).to_vec();
            let mut seed: Vec<_> = u.as_slice().to_vec();
            row.sort();
            seed.sort();
            assert_eq!(row, seed);
        }
    }

    #[test]
    fn serialization_layout() {
        let k = Field::standard(41).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(30);
        let a = ExtMatrix::random(k, 3, 2, &mut rng);
        let mut out = Vec::new();
        a.encode(&mut out);
        assert_eq!(out.len(), 8 + 6 * 6);
        assert_eq!(&out[..8], &[3, 0, 0, 0, 2, 0, 0, 0]);
        let (back, used) = ExtMatrix::decode(k, &out).unwrap();
        assert_eq!((back, used), (a, out.len()));
        assert!(ExtMatrix::decode(k, &out[..20]).is_err());
    }
}
