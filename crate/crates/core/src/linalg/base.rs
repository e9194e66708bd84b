//! Dense bit matrices over `GF(2)`.

use std::fmt;

use super::SolveMode;
use crate::error::{Error, Result};

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A bit vector over `GF(2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `word`, bit `i` at index `i`.
    pub fn from_u64(word: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut v = BitVector::zeros(len);
        if len > 0 {
            v.words[0] = if len == 64 { word } else { word & ((1 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// The first word; bits `0..min(len, 64)`.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn xor_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a ^= b;
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A dense `rows x cols` matrix over `GF(2)`, rows bit-packed into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BaseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// Solution of `x A = b` over `GF(2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSolution {
    pub particular: BitVector,
    /// Basis of the left kernel, present only for [`SolveMode::All`].
    pub kernel: Option<BaseMatrix>,
}

impl BaseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BaseMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = BaseMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, i, true);
        }
        a
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut a = BaseMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} bits, expected {cols}",
                    r.len()
                )));
            }
            a.row_words_mut(i).copy_from_slice(&r.words);
        }
        Ok(a)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let bit = 1u64 << (j % 64);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BaseMatrix {
        let mut t = BaseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BaseMatrix) -> Result<BaseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BaseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (src, dst) = (other.row_words(k).to_vec(), out.row_words_mut(i));
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x A`.
    pub fn vec_mul(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = BitVector::zeros(self.cols);
        for i in (0..self.rows).filter(|&i| x.get(i)) {
            out.xor_words(self.row_words(i));
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        BaseSolver::new(self).rank()
    }

    /// Solves `x A = b` for the row vector `x`.
    pub fn solve(&self, b: &BitVector, mode: SolveMode) -> Result<BaseSolution> {
        BaseSolver::new(self).solve(b, mode)
    }

    /// A basis (as rows) of `{x : x A = 0}`.
    pub fn left_kernel(&self) -> BaseMatrix {
        BaseSolver::new(self).kernel()
    }
}

/// Reduced row echelon form of `A` together with the row operations `T`
/// such that `T A = R`. Reusable for many right-hand sides.
#[derive(Clone, Debug)]
pub struct BaseSolver {
    reduced: BaseMatrix,
    transform: BaseMatrix,
    pivots: Vec<usize>,
}

impl BaseSolver {
    pub fn new(a: &BaseMatrix) -> Self {
        let mut reduced = a.clone();
        let mut transform = BaseMatrix::identity(a.rows);
        let mut pivots = Vec::new();
        for col in 0..a.cols {
            let rank = pivots.len();
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| reduced.get(i, col)) else {
                continue;
            };
            swap_rows(&mut reduced, rank, p);
            swap_rows(&mut transform, rank, p);
            let (pr, pt) = (
                reduced.row_words(rank).to_vec(),
                transform.row_words(rank).to_vec(),
            );
            for i in 0..a.rows {
                if i != rank && reduced.get(i, col) {
                    xor_into(reduced.row_words_mut(i), &pr);
                    xor_into(transform.row_words_mut(i), &pt);
                }
            }
            pivots.push(col);
        }
        BaseSolver {
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> BaseMatrix {
        let r = self.transform.rows;
        let rank = self.rank();
        let mut k = BaseMatrix::zeros(r - rank, r);
        for (out, i) in (rank..r).enumerate() {
            k.row_words_mut(out)
                .copy_from_slice(self.transform.row_words(i));
        }
        k
    }

    pub fn solve(&self, b: &BitVector, mode: SolveMode) -> Result<BaseSolution> {
        let r = self.reduced.rows;
        if b.len() != self.reduced.cols {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.reduced.cols
            )));
        }
        let nullity = r - self.rank();
        if mode == SolveMode::Unique && nullity > 0 {
            return Err(Error::Ambiguous { dim: nullity });
        }
        let mut check = BitVector::zeros(self.reduced.cols);
        let mut x = BitVector::zeros(r);
        for (i, &col) in self.pivots.iter().enumerate() {
            if b.get(col) {
                check.xor_words(self.reduced.row_words(i));
                x.xor_words(self.transform.row_words(i));
            }
        }
        if check != *b {
            return Err(Error::NoSolution);
        }
        let kernel = (mode == SolveMode::All).then(|| self.kernel());
        Ok(BaseSolution {
            particular: x,
            kernel,
        })
    }
}

fn swap_rows(a: &mut BaseMatrix, i: usize, j: usize) {
    if i != j {
        for w in 0..a.stride {
            a.data.swap(i * a.stride + w, j * a.stride + w);
        }
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha20Rng) -> BaseMatrix {
        let mut a = BaseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, rng.next_u32() & 1 == 1);
            }
        }
        a
    }

    fn random_bits(len: usize, rng: &mut ChaCha20Rng) -> BitVector {
        let bits: Vec<bool> = (0..len).map(|_| rng.next_u32() & 1 == 1).collect();
        BitVector::from_bools(&bits)
    }

    #[test]
    fn identity_system() {
        let a = BaseMatrix::identity(5);
        let b = BitVector::from_bools(&[true, false, true, true, false]);
        let s = a.solve(&b, SolveMode::Unique).unwrap();
        assert_eq!(s.particular, b);
    }

    #[test]
    fn inconsistent_system() {
        // x * (1 1) = (0 1): both equations read x = b_j
        let a = BaseMatrix::from_rows(&[BitVector::from_bools(&[true, true])]).unwrap();
        let b = BitVector::from_bools(&[false, true]);
        assert_eq!(a.solve(&b, SolveMode::Any), Err(Error::NoSolution));
    }

    #[test]
    fn full_row_rank_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 50 {
            let a = random_matrix(6, 10, &mut rng);
            if a.rank() < 6 {
                continue;
            }
            let x = random_bits(6, &mut rng);
            let b = a.vec_mul(&x).unwrap();
            let s = a.solve(&b, SolveMode::Unique).unwrap();
            assert_eq!(s.particular, x);
            done += 1;
        }
    }

    #[test]
    fn ambiguity_and_kernel() {
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for _ in 0..50 {
            let a = random_matrix(9, 5, &mut rng);
            let k = a.left_kernel();
            assert_eq!(k.rows(), 9 - a.rank());
            assert!(k.mul(&a).unwrap().is_zero());
            assert_eq!(k.rank(), k.rows());
            let b = a.vec_mul(&random_bits(9, &mut rng)).unwrap();
            assert!(matches!(
                a.solve(&b, SolveMode::Unique),
                Err(Error::Ambiguous { .. })
            ));
            let s = a.solve(&b, SolveMode::All).unwrap();
            assert_eq!(a.vec_mul(&s.particular).unwrap(), b);
            assert_eq!(s.kernel.unwrap(), k);
        }
    }

    #[test]
    fn wide_matrices_span_multiple_words() {
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        let a = random_matrix(70, 130, &mut rng);
        assert_eq!(a.rank(), a.transpose().rank());
        let x = random_bits(70, &mut rng);
        let b = a.vec_mul(&x).unwrap();
        let s = a.solve(&b, SolveMode::Any).unwrap();
        assert_eq!(a.vec_mul(&s.particular).unwrap(), b);
    }
}
