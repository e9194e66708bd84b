use rand::seq::SliceRandom;
use rand::Rng;

use super::ExtVector;
use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};
use crate::linalg::ExtMatrix;

/// A permutation of `{0, .., n-1}`, acting on row vectors from the right.
///
/// The matrix form has `P[i][map[i]] = 1`, so `(v P)[map[i]] = v[i]` and
/// `(v P^-1)[i] = v[map[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if j >= map.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!(
                    "{map:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// A uniformly random permutation of size `n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(rng);
        Permutation { map }
    }

    /// Uniform over the non-identity permutations; needs `n >= 2`.
    pub fn random_non_identity<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "no non-identity permutation of size {n}"
            )));
        }
        loop {
            let p = Permutation::random(n, rng);
            if !p.is_identity() {
                return Ok(p);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// `v P`, or `v P^-1` when `inverse` is set.
    pub fn apply(&self, v: &ExtVector, inverse: bool) -> Result<ExtVector> {
        if v.len() != self.map.len() {
            return Err(Error::Dimension(format!(
                "vector of length {} under permutation of size {}",
                v.len(),
                self.map.len()
            )));
        }
        let src = v.as_slice();
        let mut out = vec![FieldElement::ZERO; src.len()];
        for (i, &j) in self.map.iter().enumerate() {
            if inverse {
                out[i] = src[j];
            } else {
                out[j] = src[i];
            }
        }
        Ok(ExtVector::from_parts(v.field(), out))
    }

    /// The 0/1 permutation matrix over `field`.
    pub fn to_matrix(&self, field: Field) -> ExtMatrix {
        let n = self.map.len();
        let mut p = ExtMatrix::zeros(field, n, n);
        for (i, &j) in self.map.iter().enumerate() {
            p.set(i, j, FieldElement::ONE);
        }
        p
    }
}

/// `v P` for the permutation `p`; `inverse` selects `v P^-1`.
pub fn apply_permutation(v: &ExtVector, p: &Permutation, inverse: bool) -> Result<ExtVector> {
    p.apply(v, inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn apply_examples() {
        let k = Field::standard(8).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let v = ExtVector::random(k, 6, &mut rng);
        assert_eq!(apply_permutation(&v, &Permutation::identity(6), false).unwrap(), v);

        let p = Permutation::random(6, &mut rng);
        let back = p.apply(&p.apply(&v, false).unwrap(), true).unwrap();
        assert_eq!(back, v);

        let swap = Permutation::new(vec![1, 0]).unwrap();
        let ab = ExtVector::new(k, vec![k.element(3).unwrap(), k.element(7).unwrap()]).unwrap();
        let ba = swap.apply(&ab, false).unwrap();
        assert_eq!(ba.as_slice(), &[ab[1], ab[0]]);

        assert!(p.apply(&ab, false).is_err());
    }

    #[test]
    fn matrix_form_agrees_with_apply() {
        let k = Field::standard(8).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        for _ in 0..20 {
            let p = Permutation::random(7, &mut rng);
            let v = ExtVector::random(k, 7, &mut rng);
            let pm = p.to_matrix(k);
            assert_eq!(pm.vec_mul(&v).unwrap(), p.apply(&v, false).unwrap());
            assert_eq!(
                pm.transpose().vec_mul(&v).unwrap(),
                p.apply(&v, true).unwrap()
            );
            assert_eq!(p.inverse().apply(&v, false).unwrap(), p.apply(&v, true).unwrap());
        }
    }

    #[test]
    fn non_identity_sampling() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(!Permutation::random_non_identity(2, &mut rng).unwrap().is_identity());
        }
        assert!(Permutation::random_non_identity(1, &mut rng).is_err());
    }
}
