//! Subspace annihilators: the monic linearized polynomial of least
//! q-degree vanishing on a given GF(2)-subspace of GF(2^m).

use mcnie::gf2m::Field;
use mcnie::linpoly::LinearizedPoly;
use mcnie::rank_metric::{random_error, support_of};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Field::standard(12)?;
    let mut rng = ChaCha20Rng::seed_from_u64(3);

    // the support of a rank 3 vector is a 3-dimensional subspace
    let e = random_error(field, 8, 3, &mut rng)?;
    let support = support_of(&e);
    let l = LinearizedPoly::annihilator(&support)?;
    println!("support of dimension {}", support.dim());
    println!("annihilator has q-degree {:?}", l.q_degree());
    for (i, c) in l.coeffs().iter().enumerate() {
        println!("  coefficient of X^(2^{i}) = {:#05x}", c.bits());
    }

    let roots = support.elements();
    assert!(roots.iter().all(|&x| l.evaluate(x).is_zero()));
    assert!(l.root_space().same_span(&support));
    println!("vanishes on all {} elements of the support and nowhere else", roots.len());

    let x = field.random(&mut rng);
    let y = field.random(&mut rng);
    assert_eq!(l.evaluate(field.add(x, y)), field.add(l.evaluate(x), l.evaluate(y)));
    println!("additive: L(x + y) = L(x) + L(y)");
    Ok(())
}
