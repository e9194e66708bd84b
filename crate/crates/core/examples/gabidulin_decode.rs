//! Syndrome decoding of a Gabidulin code up to its rank radius, and what
//! happens one step beyond it.

use mcnie::gabidulin::GabidulinCode;
use mcnie::gf2m::Field;
use mcnie::rank_metric::{random_error, rank_weight};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Field::standard(41)?;
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let code = GabidulinCode::random(field, 36, 24, &mut rng)?;
    println!(
        "[{}, {}] code over GF(2^{}), radius {}",
        code.length(),
        code.dim(),
        field.degree(),
        code.radius()
    );

    for t in 0..=code.radius() {
        let e = random_error(field, code.length(), t, &mut rng)?;
        let decoded = code.decode_syndrome(&code.syndrome(&e)?)?;
        assert_eq!(decoded, e);
        println!("rank {t}: recovered");
    }

    // beyond the radius the decoder either refuses or lands on another
    // error of rank at most the radius with the same syndrome
    let e = random_error(field, code.length(), code.radius() + 1, &mut rng)?;
    match code.decode_syndrome(&code.syndrome(&e)?) {
        Ok(other) => println!("rank {}: decoded to a different rank {} error", code.radius() + 1, rank_weight(&other)),
        Err(err) => println!("rank {}: {err}", code.radius() + 1),
    }
    Ok(())
}
