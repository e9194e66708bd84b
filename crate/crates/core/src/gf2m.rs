//! Binary extension fields `GF(2^m)` for `2 <= m <= 64` in polynomial basis.
//!
//! Elements are bit-packed into a `u64`; bit `i` is the coefficient of `X^i`.
//! None of the routines here are constant time.

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

/// Reduction polynomials for the supported standard fields, as
/// `(m, modulus)` with the `X^m` term included.
const STANDARD_MODULI: &[(u32, u128)] = &[
    (2, 0b111),
    (3, 0b1011),
    (4, 0b1_0011),
    (6, 0b100_0011),
    (8, 0x11b),
    (12, (1 << 12) | (1 << 3) | 1),
    (14, (1 << 14) | (1 << 5) | 1),
    (16, (1 << 16) | (1 << 5) | (1 << 3) | (1 << 2) | 1),
    (41, (1 << 41) | (1 << 3) | 1),
    (53, (1 << 53) | (1 << 6) | (1 << 2) | (1 << 1) | 1),
    (59, (1 << 59) | (1 << 7) | (1 << 4) | (1 << 2) | 1),
];

/// Extension degrees with a built-in reduction polynomial.
pub fn standard_degrees() -> impl Iterator<Item = u32> {
    STANDARD_MODULI.iter().map(|&(m, _)| m)
}

/// An element of `GF(2^m)`. The field it belongs to is carried by the
/// containers (vectors, matrices, polynomials), not by the element itself.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Parameters of `GF(2^m)`: the extension degree and an irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    m: u32,
    modulus: u128,
    /// `modulus - X^m`
    tail: u64,
    mask: u64,
    /// `X^{2^{m-1}}`, the square root of `X`.
    sqrt_x: u64,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

/// Carry-less product, iterating over the set bits of `b`.
#[inline]
fn clmul_sparse(a: u64, mut b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

#[inline]
fn clmul(a: u64, b: u64) -> u128 {
    if a.count_ones() < b.count_ones() {
        clmul_sparse(b, a)
    } else {
        clmul_sparse(a, b)
    }
}

#[inline]
fn spread32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread32`] on the even bit positions.
#[inline]
fn compress_even(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    x = (x | (x >> 16)) & 0x0000_0000_ffff_ffff;
    x as u32
}

#[inline]
fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        while a != 0 && degree(a) >= degree(b) {
            a ^= b << (degree(a) - degree(b));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl Field {
    /// Builds `GF(2^m)` from a modulus given as a bit mask including the
    /// `X^m` term. The modulus must have degree `m` and be irreducible.
    pub fn new(m: u32, modulus: u128) -> Result<Field> {
        if !(2..=64).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree {m} outside 2..=64"
            )));
        }
        if degree(modulus) != m as i32 {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:#x} does not have degree {m}"
            )));
        }
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut field = Field {
            m,
            modulus,
            tail: (modulus & mask as u128) as u64,
            mask,
            sqrt_x: 0,
        };
        field.sqrt_x = field.x_pow_pow2(m - 1);
        if !field.modulus_is_irreducible() {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:#x} is reducible over GF(2)"
            )));
        }
        Ok(field)
    }

    /// The field with the built-in reduction polynomial for degree `m`.
    pub fn standard(m: u32) -> Result<Field> {
        let &(_, modulus) = STANDARD_MODULI
            .iter()
            .find(|&&(d, _)| d == m)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("no built-in modulus for m = {m}"))
            })?;
        Field::new(m, modulus)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Number of bytes in the serialized form of one element.
    pub fn element_bytes(&self) -> usize {
        self.m.div_ceil(8) as usize
    }

    /// `X^{2^d} mod f` via `d` squarings of `X`. Valid for any modulus of
    /// degree `m`, irreducible or not.
    fn x_pow_pow2(&self, d: u32) -> u64 {
        let mut x = 0b10;
        for _ in 0..d {
            x = self.square(FieldElement(x)).0;
        }
        x
    }

    /// Rabin/Ben-Or style check: `X^{2^m} = X` and
    /// `gcd(X^{2^d} - X, f) = 1` for every proper divisor `d` of `m`.
    fn modulus_is_irreducible(&self) -> bool {
        let x = 0b10u64;
        if self.x_pow_pow2(self.m) != x {
            return false;
        }
        (1..self.m)
            .filter(|d| self.m % d == 0)
            .all(|d| {
                let t = (self.x_pow_pow2(d) ^ x) as u128;
                t != 0 && poly_gcd(self.modulus, t) == 1
            })
    }

    /// Checks the range invariant and wraps `bits` as an element.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits & !self.mask != 0 {
            return Err(Error::InvalidParameter(format!(
                "{bits:#x} has bits above position {}",
                self.m - 1
            )));
        }
        Ok(FieldElement(bits))
    }

    /// The polynomial-basis element `X^i`.
    pub fn basis(&self, i: u32) -> FieldElement {
        assert!(i < self.m, "basis index {i} out of range for m = {}", self.m);
        FieldElement(1u64 << i)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.mask == 0
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.next_u64() & self.mask)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    #[inline]
    fn reduce(&self, mut p: u128) -> FieldElement {
        let m = self.m;
        loop {
            let hi = p >> m;
            if hi == 0 {
                return FieldElement(p as u64);
            }
            p = (p & self.mask as u128) ^ clmul_sparse(hi as u64, self.tail);
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        self.reduce(clmul(a.0, b.0))
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        let lo = spread32(a.0 as u32) as u128;
        let hi = spread32((a.0 >> 32) as u32) as u128;
        self.reduce(lo | (hi << 64))
    }

    /// The unique `b` with `b^2 = a`: writing `a = E(X^2) + X O(X^2)` gives
    /// `sqrt(a) = E(X) + sqrt(X) O(X)`.
    #[inline]
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let even = compress_even(a.0) as u64;
        let odd = compress_even(a.0 >> 1) as u64;
        FieldElement(even) + self.mul(FieldElement(odd), FieldElement(self.sqrt_x))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `GF(2)[X]`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut u = a.0 as u128;
        let mut v = self.modulus;
        let mut g1 = 1u128;
        let mut g2 = 0u128;
        while u != 1 {
            let mut j = degree(u) - degree(v);
            if j < 0 {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                j = -j;
            }
            u ^= v << j;
            g1 ^= g2 << j;
        }
        Ok(FieldElement(g1 as u64))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u128) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^{2^i}`. Negative `i` applies the inverse automorphism; exponents
    /// are taken modulo `m` since `a^{2^m} = a`.
    pub fn frobenius(&self, a: FieldElement, i: i64) -> FieldElement {
        let m = self.m as i64;
        let e = i.rem_euclid(m);
        let mut x = a;
        if 2 * e <= m {
            for _ in 0..e {
                x = self.square(x);
            }
        } else {
            for _ in 0..m - e {
                x = self.sqrt(x);
            }
        }
        x
    }

    /// Little-endian packing into `element_bytes()` bytes.
    pub fn encode_element(&self, a: FieldElement, out: &mut Vec<u8>) {
        out.extend_from_slice(&a.0.to_le_bytes()[..self.element_bytes()]);
    }

    /// Inverse of [`Field::encode_element`]; rejects set bits at positions `>= m`.
    pub fn decode_element(&self, bytes: &[u8]) -> Result<FieldElement> {
        if bytes.len() != self.element_bytes() {
            return Err(Error::Format(format!(
                "element needs {} bytes, got {}",
                self.element_bytes(),
                bytes.len()
            )));
        }
        let mut buf = [0u8; 8];
        buf[..bytes.len()].copy_from_slice(bytes);
        let bits = u64::from_le_bytes(buf);
        self.element(bits)
            .map_err(|_| Error::Format(format!("element {bits:#x} has bits above m")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn f(m: u32) -> Field {
        Field::standard(m).unwrap()
    }

    /// Schoolbook multiply over coefficient lists, then long division.
    fn schoolbook_mul(a: u64, b: u64, modulus: u128, m: u32) -> u64 {
        let a: Vec<u8> = (0..64).map(|i| ((a >> i) & 1) as u8).collect();
        let b: Vec<u8> = (0..64).map(|i| ((b >> i) & 1) as u8).collect();
        let mut prod = vec![0u8; 128];
        for i in 0..64 {
            for j in 0..64 {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % 2;
            }
        }
        let md: Vec<u8> = (0..=m).map(|i| ((modulus >> i) & 1) as u8).collect();
        for deg in (m as usize..128).rev() {
            if prod[deg] == 1 {
                for (i, &c) in md.iter().enumerate() {
                    let idx = deg - m as usize + i;
                    prod[idx] = (prod[idx] + c) % 2;
                }
            }
        }
        prod.iter()
            .take(m as usize)
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
    }

    #[test]
    fn all_standard_moduli_are_irreducible() {
        for m in standard_degrees() {
            assert!(Field::standard(m).is_ok(), "m = {m}");
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2
        assert!(matches!(
            Field::new(4, 0b10101),
            Err(Error::InvalidParameter(_))
        ));
        // (X^3 + X + 1)(X^3 + X^2 + 1): no roots, only cubic factors
        assert!(Field::new(6, 0b111_1111).is_err());
        assert!(Field::new(6, 0b100_1001).is_ok());
        assert!(Field::new(4, 0b111).is_err());
        assert!(Field::new(1, 0b11).is_err());
    }

    #[test]
    fn add_examples() {
        let k = f(2);
        let e = |x| k.element(x).unwrap();
        assert_eq!(k.add(e(0b01), e(0b01)), e(0));
        assert_eq!(k.add(e(0b10), e(0b11)), e(0b01));
        assert_eq!(e(0b10) + FieldElement::ZERO, e(0b10));
    }

    #[test]
    fn mul_examples() {
        let k = f(2);
        let w = k.element(0b10).unwrap();
        assert_eq!(k.mul(w, w).bits(), 0b11);
        assert_eq!(k.mul(w, FieldElement::ONE), w);

        let k3 = f(3);
        let got = k3.mul(FieldElement(0b010), FieldElement(0b100));
        let want = schoolbook_mul(0b010, 0b100, k3.modulus(), 3);
        assert_eq!(want, 0b011);
        assert_eq!(got.bits(), want);
    }

    #[test]
    fn mul_matches_schoolbook_on_every_field() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for m in standard_degrees() {
            let k = f(m);
            for _ in 0..200 {
                let a = k.random(&mut rng);
                let b = k.random(&mut rng);
                assert_eq!(
                    k.mul(a, b).bits(),
                    schoolbook_mul(a.bits(), b.bits(), k.modulus(), m)
                );
                assert_eq!(k.square(a), k.mul(a, a));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let k = f(2);
        assert_eq!(k.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(k.inv(FieldElement(0b10)).unwrap().bits(), 0b11);
        assert_eq!(k.inv(FieldElement::ZERO), Err(Error::DivisionByZero));

        let k41 = f(41);
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..500 {
            let a = k41.random_nonzero(&mut rng);
            let inv = k41.inv(a).unwrap();
            assert_eq!(k41.mul(a, inv), FieldElement::ONE);
            assert_eq!(inv, k41.pow(a, (1u128 << 41) - 2));
        }
    }

    #[test]
    fn frobenius_examples() {
        let k = f(2);
        let w = FieldElement(0b10);
        assert_eq!(k.frobenius(w, 0), w);
        assert_eq!(k.frobenius(w, 1).bits(), 0b11);

        let k41 = f(41);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = k41.random(&mut rng);
            assert_eq!(k41.frobenius(k41.frobenius(a, 3), -3), a);
            assert_eq!(k41.frobenius(a, 41), a);
            assert_eq!(k41.frobenius(a, 5), k41.pow(a, 1 << 5));
        }
    }

    #[test]
    fn sqrt_inverts_square() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for m in standard_degrees() {
            let k = f(m);
            for _ in 0..200 {
                let a = k.random(&mut rng);
                assert_eq!(k.sqrt(k.square(a)), a);
                assert_eq!(k.square(k.sqrt(a)), a);
                let i = (rng.next_u32() % 200) as i64 - 100;
                let mut slow = a;
                for _ in 0..i.rem_euclid(m as i64) {
                    slow = k.square(slow);
                }
                assert_eq!(k.frobenius(a, i), slow);
            }
        }
    }

    #[test]
    fn element_range_is_enforced() {
        let k = f(3);
        assert!(k.element(0b111).is_ok());
        assert!(k.element(0b1000).is_err());
        assert!(k.decode_element(&[0x08]).is_err());
        assert_eq!(k.decode_element(&[0x05]).unwrap().bits(), 5);
    }

    #[test]
    fn element_encoding_is_little_endian() {
        let k = f(41);
        let a = k.element(0x1_0203_0405).unwrap();
        let mut out = Vec::new();
        k.encode_element(a, &mut out);
        assert_eq!(out, vec![0x05, 0x04, 0x03, 0x02, 0x01, 0x00]);
        assert_eq!(k.decode_element(&out).unwrap(), a);
    }
}
