//! The rank syndrome decoding cost on the `[n, k]` instance and on the
//! `[2n - k, l]` instance an attacker sees through the public key.

use mcnie::params::{rsd_complexity_log2, REGISTRY};

pub fn main() {
    for p in REGISTRY.iter().filter(|p| p.security.is_some()) {
        let est = p.security_estimate();
        println!("{} (claimed {} bits)", p.name, p.security.unwrap());
        for inst in [est.naive, est.combined] {
            println!(
                "  {:<8} n={:<3} k={:<3} m={} r={}  q^({})  {:.2} bits",
                inst.label, inst.n, inst.k, inst.m, inst.r, inst.exponent, inst.log2_cost
            );
        }
    }

    // cost grows linearly in r at fixed n, k, m
    let p = REGISTRY[0];
    for r in 4..=8 {
        println!("{} with r = {r}: {:.2} bits", p.name, rsd_complexity_log2(p.n as u64, p.k as u64, p.m as u64, r, 2));
    }
}
