//! Key and ciphertext sizes for every named parameter set, next to the
//! public key sizes of schemes without decryption failures.

use mcnie::params::{PUBLIC_KEY_COMPARISON, REGISTRY};

pub fn main() {
    println!("{:<12} {:>4} {:>4} {:>4} {:>4} {:>10} {:>10} {:>10}", "set", "m", "n", "k", "l", "pk KB", "sk KB", "ct KB");
    for p in REGISTRY {
        let s = p.sizes();
        println!(
            "{:<12} {:>4} {:>4} {:>4} {:>4} {:>10} {:>10} {:>10}",
            p.name,
            p.m,
            p.n,
            p.k,
            p.l,
            s.pk.kb(),
            s.sk.kb(),
            s.ct.kb()
        );
    }
    println!();
    println!("{:<8} {:>16} {:>16} {:>16}", "security", "McNie-Gabidulin", "McEliece QD", "McEliece Goppa");
    for (bits, mcnie, qd, goppa) in PUBLIC_KEY_COMPARISON {
        println!("{bits:<8} {mcnie:>16} {qd:>16} {goppa:>16}");
    }
}
