//! Named parameter sets, key and ciphertext sizes, and the rank syndrome
//! decoding cost estimate used to size them.

use std::fmt;

use crate::error::{Error, Result};
use crate::mcnie2::SchemeParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParameterSet {
    pub name: &'static str,
    /// Claimed security level in bits; `None` for toy sets.
    pub security: Option<u32>,
    pub q: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
}

const fn set(name: &'static str, security: Option<u32>, m: u32, n: usize, k: usize, l: usize, r: usize) -> ParameterSet {
    ParameterSet {
        name,
        security,
        q: 2,
        m,
        n,
        k,
        l,
        r,
    }
}

pub const REGISTRY: &[ParameterSet] = &[
    set("mcnie128", Some(128), 41, 24, 12, 22, 6),
    set("mcnie192", Some(192), 53, 32, 16, 24, 8),
    set("mcnie256", Some(256), 59, 36, 18, 29, 9),
    // one reduced message coordinate, 2^14 candidates for the attack
    set("toy-attack", None, 14, 8, 2, 7, 3),
    set("toy-tiny", None, 8, 5, 3, 3, 1),
];

pub fn lookup(name: &str) -> Result<&'static ParameterSet> {
    REGISTRY.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = REGISTRY.iter().map(|p| p.name).collect();
        Error::InvalidParameter(format!(
            "unknown parameter set {name:?}; known sets: {}",
            names.join(", ")
        ))
    })
}

impl ParameterSet {
    pub fn scheme_params(&self) -> Result<SchemeParams> {
        if self.q != 2 {
            return Err(Error::InvalidParameter(format!("only q = 2 is supported, got {}", self.q)));
        }
        let p = SchemeParams::new(self.m, self.n, self.k, self.l)?;
        if p.radius() != self.r {
            return Err(Error::InvalidParameter(format!(
                "r = {} but floor((n - k) / 2) = {}",
                self.r,
                p.radius()
            )));
        }
        Ok(p)
    }

    fn log2_q(&self) -> u64 {
        self.q.trailing_zeros() as u64
    }

    /// `PK = (n + l(n - k)) m log2(q) / 8`, `SK = (n + (2n - k)) m log2(q) / 8`,
    /// `CT = (n + (n - k)) m log2(q) / 8` bytes.
    pub fn sizes(&self) -> SizeReport {
        let (n, k, l, m) = (self.n as u64, self.k as u64, self.l as u64, self.m as u64);
        let lq = self.log2_q();
        SizeReport {
            pk: ByteCount::from_bits((n + l * (n - k)) * m * lq),
            sk: ByteCount::from_bits((n + (2 * n - k)) * m * lq),
            ct: ByteCount::from_bits((n + (n - k)) * m * lq),
        }
    }

    /// The cost formula on the naive `[n, k]` instance and on the combined
    /// `[2n - k, l]` instance generated by `[G' | F]`.
    pub fn security_estimate(&self) -> SecurityEstimate {
        let (n, k, l, m, r, q) = (self.n as u64, self.k as u64, self.l as u64, self.m as u64, self.r as u64, self.q as u64);
        SecurityEstimate {
            naive: InstanceEstimate::new("naive", n, k, m, r, q),
            combined: InstanceEstimate::new("combined", 2 * n - k, l, m, r, q),
        }
    }
}

/// An exact byte count stored as a number of bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ByteCount {
    bits: u64,
}

impl ByteCount {
    pub fn from_bits(bits: u64) -> Self {
        ByteCount { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn as_f64(&self) -> f64 {
        self.bits as f64 / 8.0
    }

    /// Whole bytes needed to hold the value.
    pub fn ceil_bytes(&self) -> u64 {
        self.bits.div_ceil(8)
    }

    /// Kilobytes (1000 bytes) to three decimals, after rounding up to
    /// whole bytes.
    pub fn kb(&self) -> String {
        let b = self.ceil_bytes();
        format!("{}.{:03}", b / 1000, b % 1000)
    }
}

/// Exact decimal value, e.g. `307.5` or `4115.25`.
impl fmt::Display for ByteCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.bits / 8;
        match self.bits % 8 {
            0 => write!(f, "{whole}"),
            rem => {
                let frac = format!("{:.3}", rem as f64 / 8.0);
                write!(f, "{whole}.{}", frac[2..].trim_end_matches('0'))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub pk: ByteCount,
    pub sk: ByteCount,
    pub ct: ByteCount,
}

/// `num / den` in lowest terms, `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den).max(1);
        Ratio {
            num: num / g as i64,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `r (k + 1) m / n - m`.
pub fn rsd_exponent(n: u64, k: u64, m: u64, r: u64) -> Ratio {
    let num = (r * (k + 1) * m) as i64 - (m * n) as i64;
    Ratio::new(num, n)
}

/// `log2((n - k)^3 m^3 q^{r (k + 1) m / n - m})`, the cost of the best known
/// generic attack on rank syndrome decoding. The exponent of `q` is exact.
pub fn rsd_complexity_log2(n: u64, k: u64, m: u64, r: u64, q: u64) -> f64 {
    assert!(k < n && m > 0 && q >= 2, "need k < n, m > 0, q >= 2");
    let e = rsd_exponent(n, k, m, r);
    let lq = if q.is_power_of_two() {
        q.trailing_zeros() as f64
    } else {
        (q as f64).log2()
    };
    3.0 * ((n - k) as f64).log2() + 3.0 * (m as f64).log2() + e.to_f64() * lq
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceEstimate {
    pub label: &'static str,
    pub n: u64,
    pub k: u64,
    pub m: u64,
    pub r: u64,
    pub exponent: Ratio,
    pub log2_cost: f64,
}

impl InstanceEstimate {
    fn new(label: &'static str, n: u64, k: u64, m: u64, r: u64, q: u64) -> Self {
        InstanceEstimate {
            label,
            n,
            k,
            m,
            r,
            exponent: rsd_exponent(n, k, m, r),
            log2_cost: rsd_complexity_log2(n, k, m, r, q),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecurityEstimate {
    pub naive: InstanceEstimate,
    pub combined: InstanceEstimate,
}

/// Public key sizes in KB of other schemes without decryption failures, as
/// published alongside the McNie2 sets: `(security, McNie-Gabidulin,
/// McEliece QD-Goppa, McEliece Goppa)`.
pub const PUBLIC_KEY_COMPARISON: &[(u32, &str, &str, &str)] = &[
    (128, "1.88", "4.096", "192.192"),
    (192, "3.21", "5.632", "-"),
    (256, "4.70", "8.192", "958.482"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        for p in REGISTRY {
            let s = p.scheme_params().unwrap();
            assert_eq!(s.radius(), p.r, "{}", p.name);
        }
        assert!(lookup("mcnie512").is_err());
        assert_eq!(lookup("mcnie192").unwrap().m, 53);
    }

    #[test]
    fn table_sizes() {
        let s = lookup("mcnie128").unwrap().sizes();
        assert_eq!((s.pk.to_string(), s.sk.to_string(), s.ct.to_string()), ("1476".into(), "307.5".into(), "184.5".into()));
        assert_eq!((s.pk.kb(), s.sk.kb(), s.ct.kb()), ("1.476".into(), "0.308".into(), "0.185".into()));
        let s = lookup("mcnie256").unwrap().sizes();
        assert_eq!(s.pk.to_string(), "4115.25");
        assert_eq!(s.sk.to_string(), "663.75");
        assert_eq!(s.pk.kb(), "4.116");
        assert_eq!(s.ct.kb(), "0.399");
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(rsd_exponent(24, 12, 41, 6), Ratio::new(369, 4));
        assert_eq!(rsd_exponent(36, 22, 41, 6), Ratio::new(697, 6));
        assert_eq!(rsd_exponent(36, 18, 59, 9).to_string(), "885/4");
        assert_eq!(rsd_exponent(54, 29, 59, 9).to_string(), "236");
        assert_eq!(rsd_complexity_log2(2, 1, 1, 1, 2), 0.0);
    }

    #[test]
    fn doubling_m() {
        // log2 cost(2m) - log2 cost(m) = 3 + (r (k + 1) / n - 1) m
        for &(n, k, m, r) in &[(24u64, 12u64, 41u64, 6u64), (32, 16, 53, 8), (10, 3, 7, 2)] {
            let d = rsd_complexity_log2(n, k, 2 * m, r, 2) - rsd_complexity_log2(n, k, m, r, 2);
            let want = 3.0 + (r as f64 * (k + 1) as f64 / n as f64 - 1.0) * m as f64;
            assert!((d - want).abs() < 1e-9);
        }
    }

    #[test]
    fn estimate_is_increasing_in_r() {
        for r in 1..12 {
            assert!(rsd_complexity_log2(36, 22, 41, r + 1, 2) > rsd_complexity_log2(36, 22, 41, r, 2));
        }
    }

    #[test]
    fn byte_count_display() {
        assert_eq!(ByteCount::from_bits(1).to_string(), "0.125");
        assert_eq!(ByteCount::from_bits(8 * 1000 + 6).to_string(), "1000.75");
        assert_eq!(ByteCount::from_bits(8 * 999 + 1).kb(), "1.000");
    }
}
