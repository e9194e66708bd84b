//! Message recovery from ciphertexts alone. Against the original McNie the
//! public key reduces decoding to a tiny instance that brute force solves;
//! against McNie2 the same reduction leaves no solution of the target rank.

use mcnie::cryptanalysis::{
    attack, gaborit_reduce, legacy_encrypt, legacy_keygen, legacy_random_message, run_legacy_trials,
    run_mcnie2_trials, LegacyParams,
};
use mcnie::params::lookup;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = LegacyParams::toy();
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let (pk, _sk) = legacy_keygen(&params, &mut rng)?;
    let msg = legacy_random_message(&params, &mut rng);
    let ct = legacy_encrypt(&pk, &msg, &mut rng)?;

    let reduced = gaborit_reduce(&pk, &ct)?;
    println!(
        "McNie [{}, {}] l={}: reduced to {} unknown coordinates over GF(2^{})",
        params.n(),
        params.k(),
        params.l(),
        reduced.gpp.rows(),
        params.m()
    );
    let recovered = attack(&pk, &ct, params.radius())?;
    assert_eq!(recovered, msg);
    println!("message recovered without the secret key");

    let trials = 5;
    println!("\n{}", run_legacy_trials(&params, trials, 1)?);
    let toy = lookup("toy-attack")?.scheme_params()?;
    println!("\n{}", run_mcnie2_trials(&toy, trials, 1)?);
    Ok(())
}
