//! Message recovery by eliminating `n - k` message coordinates through `c2`.
//!
//! When `c2 = m F` is noiseless, every solution of `x F = c2` has the form
//! `m0 + m' K` with `K` a basis of the left kernel of `F`. Substituting into
//! `c1 = m G' + e` leaves `y = c1 - m0 G' = m' (K G') + e`, a rank syndrome
//! decoding instance of dimension `l - rank F` instead of `l`.

use crate::error::{Error, Result};
use crate::linalg::{ExtMatrix, ExtVector, SolveMode};
use crate::mcnie2::{Ciphertext, PublicKey};
use crate::rank_metric::{rank_at_most, rank_at_most_iter};

use super::legacy::LegacyPublicKey;

/// Enumeration cap for [`brute_force_rsd`], as a power of two.
pub const LOG2_CANDIDATE_CAP: u32 = 24;

/// The public data the reduction uses: `G'` (`l x n`) and `F` (`l x rho`).
pub trait AttackTarget {
    fn generator(&self) -> &ExtMatrix;
    fn masked_matrix(&self) -> &ExtMatrix;
}

impl AttackTarget for LegacyPublicKey {
    fn generator(&self) -> &ExtMatrix {
        &self.g_prime
    }

    fn masked_matrix(&self) -> &ExtMatrix {
        &self.f
    }
}

impl AttackTarget for PublicKey {
    fn generator(&self) -> &ExtMatrix {
        PublicKey::generator(self)
    }

    fn masked_matrix(&self) -> &ExtMatrix {
        PublicKey::masked_matrix(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    /// `c1 - m0 G'`, length `n`.
    pub y: ExtVector,
    /// `K G'`, `(l - rank F) x n`.
    pub gpp: ExtMatrix,
    /// Some solution of `x F = c2`.
    pub m0: ExtVector,
    /// Rows span the left kernel of `F`.
    pub kernel: ExtMatrix,
}

impl ReducedInstance {
    /// `m0 + m' K`.
    pub fn lift(&self, m_reduced: &ExtVector) -> Result<ExtVector> {
        self.m0.add(&self.kernel.vec_mul(m_reduced)?)
    }
}

/// Requires `F` of full column rank.
pub fn gaborit_reduce<T: AttackTarget + ?Sized>(pk: &T, ct: &Ciphertext) -> Result<ReducedInstance> {
    let f = pk.masked_matrix();
    let rank = f.rank();
    if rank < f.cols() {
        return Err(Error::ReductionInapplicable(format!(
            "F has rank {rank} < {}",
            f.cols()
        )));
    }
    reduce_any_rank(pk, ct)
}

/// As [`gaborit_reduce`], but also accepts a rank-deficient `F`; the
/// reduced dimension is then `l - rank F`.
pub fn reduce_any_rank<T: AttackTarget + ?Sized>(pk: &T, ct: &Ciphertext) -> Result<ReducedInstance> {
    let (g, f) = (pk.generator(), pk.masked_matrix());
    let sol = f
        .solve_right(&ct.c2, SolveMode::All)
        .map_err(|e| Error::ReductionInapplicable(format!("x F = c2 is unsolvable: {e}")))?;
    let kernel = sol.kernel.expect("kernel requested");
    let m0 = sol.particular;
    let y = ct.c1.sub(&g.vec_mul(&m0)?)?;
    let gpp = kernel.mul(g)?;
    Ok(ReducedInstance { y, gpp, m0, kernel })
}

/// Every `(x, y - x G)` with `rank_weight(y - x G) <= r`, by exhaustive
/// enumeration of `x`. Fails when there are more than `2^24` candidates.
/// Solutions are sorted by the bits of `x`.
pub fn brute_force_rsd(g: &ExtMatrix, y: &ExtVector, r: usize) -> Result<Vec<(ExtVector, ExtVector)>> {
    let field = g.field();
    let m = field.degree() as usize;
    let (rows, n) = (g.rows(), g.cols());
    if y.len() != n {
        return Err(Error::Dimension(format!("target of length {}, expected {n}", y.len())));
    }
    let dims = (m * rows) as u64;
    if dims > LOG2_CANDIDATE_CAP as u64 {
        return Err(Error::Infeasible {
            log2_candidates: dims,
            log2_cap: LOG2_CANDIDATE_CAP,
        });
    }
    let mask = (1u64 << m) - 1;
    let mut hits = Vec::new();
    if rows == 0 {
        if rank_at_most(&y.iter().map(|x| x.bits()).collect::<Vec<_>>(), r) {
            hits.push((0, y.iter().map(|x| x.bits()).collect()));
        }
    } else {
        // the last message coordinate runs through a table of multiples of
        // the last row; the others walk a Gray code, where flipping bit `b`
        // adds X^{b mod m} times row `b / m`
        let last = g.row_slice(rows - 1);
        let mut table = vec![0u64; n << m];
        for b in 0..m {
            let step: Vec<u64> = last.iter().map(|&x| field.mul(field.basis(b as u32), x).bits()).collect();
            for v in 1usize << b..1 << (b + 1) {
                let (dst, src) = (v * n, (v ^ 1 << b) * n);
                for j in 0..n {
                    table[dst + j] = table[src + j] ^ step[j];
                }
            }
        }
        let outer_dims = m * (rows - 1);
        let steps: Vec<u64> = (0..outer_dims)
            .flat_map(|b| {
                let c = field.basis((b % m) as u32);
                g.row_slice(b / m).iter().map(move |&x| field.mul(c, x).bits())
            })
            .collect();
        let prefilter = (r < n && r <= 6).then_some(r + 1);
        let mut outer: Vec<u64> = y.iter().map(|x| x.bits()).collect();
        for i in 0u64..1 << outer_dims {
            if i > 0 {
                let b = i.trailing_zeros() as usize;
                for (a, &s) in outer.iter_mut().zip(&steps[b * n..(b + 1) * n]) {
                    *a ^= s;
                }
            }
            let prefix = (i ^ (i >> 1)) & ((1u64 << outer_dims) - 1);
            for (v, row) in table.chunks_exact(n).enumerate() {
                if let Some(head) = prefilter {
                    // rank <= r forces the first r + 1 entries to be dependent
                    let mut acc = 0u64;
                    let mut dependent = false;
                    for s in 1u32..1 << head {
                        let j = s.trailing_zeros() as usize;
                        acc ^= outer[j] ^ row[j];
                        dependent |= acc == 0;
                    }
                    if !dependent {
                        continue;
                    }
                }
                if rank_at_most_iter(outer.iter().zip(row).map(|(&a, &b)| a ^ b), r) {
                    let res = outer.iter().zip(row).map(|(&a, &b)| a ^ b).collect();
                    hits.push((prefix | (v as u64) << outer_dims, res));
                }
            }
        }
    }
    hits.sort_unstable_by_key(|&(x, _)| x);
    hits.into_iter()
        .map(|(x, res): (u64, Vec<u64>)| {
            let msg = (0..rows).map(|j| x >> (j * m) & mask).collect::<Vec<_>>();
            Ok((ExtVector::from_bits(field, &msg)?, ExtVector::from_bits(field, &res)?))
        })
        .collect()
}

/// Reduce, enumerate the reduced instance at rank `r`, and lift the unique
/// solution back to a full message.
pub fn attack<T: AttackTarget + ?Sized>(pk: &T, ct: &Ciphertext, r: usize) -> Result<ExtVector> {
    let inst = gaborit_reduce(pk, ct)?;
    let sols = brute_force_rsd(&inst.gpp, &inst.y, r)?;
    match sols.as_slice() {
        [(m_reduced, _)] => inst.lift(m_reduced),
        [] => Err(Error::DecodingFailure("no reduced message within the rank bound")),
        _ => Err(Error::DecodingFailure("several reduced messages within the rank bound")),
    }
}
