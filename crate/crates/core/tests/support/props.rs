//! Property checks shared by the `properties` and `acceptance` targets. Each
//! returns a description of the first counterexample, if any.

use mcnie::gf2m::{standard_degrees, Field, FieldElement};
use mcnie::linalg::{expand_to_base, ExtMatrix, ExtVector, Permutation};
use mcnie::linpoly::LinearizedPoly;
use mcnie::mcnie2::{encrypt, keygen, Ciphertext, Plaintext, PublicKey, SecretKey};
use mcnie::params::lookup;
use mcnie::rank_metric::{random_error, rank_weight, support_of};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const FIELD_AXIOM_CASES: u32 = 10_000;
pub const PERMUTATION_CASES: u32 = 1_000;
pub const ANNIHILATOR_CASES: u32 = 1_000;
pub const SERIALIZATION_CASES: u32 = 200;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn outcome<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn element(field: Field) -> impl Strategy<Value = FieldElement> {
    let mask = if field.degree() == 64 { u64::MAX } else { (1u64 << field.degree()) - 1 };
    any::<u64>().prop_map(move |x| field.element(x & mask).unwrap())
}

/// Ring and field axioms plus Frobenius and square-root identities in one
/// field.
pub fn field_axioms(m: u32, cases: u32) -> Result<(), String> {
    let k = Field::standard(m).unwrap();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    outcome(runner(cases).run(&(element(k), element(k), element(k)), |(a, b, c)| {
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
        prop_assert_eq!(k.add(a, zero), a);
        prop_assert_eq!(k.add(a, a), zero);
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(a, one), a);
        prop_assert_eq!(k.mul(a, zero), zero);
        prop_assert_eq!(k.square(a), k.mul(a, a));
        prop_assert_eq!(k.square(k.add(a, b)), k.add(k.square(a), k.square(b)));
        prop_assert_eq!(k.sqrt(k.square(a)), a);
        prop_assert_eq!(k.frobenius(a, m as i64), a);
        prop_assert_eq!(k.frobenius(k.frobenius(a, 3), -3), a);
        if !a.is_zero() {
            let inv = k.inv(a).unwrap();
            prop_assert_eq!(k.mul(a, inv), one);
            prop_assert_eq!(k.div(k.mul(b, a), a).unwrap(), b);
        } else {
            prop_assert!(k.inv(a).is_err());
        }
        Ok(())
    }))
}

pub fn field_axioms_all(cases: u32) -> Result<(), String> {
    for m in standard_degrees() {
        field_axioms(m, cases).map_err(|e| format!("m = {m}: {e}"))?;
    }
    Ok(())
}

/// Rank weight is unchanged by coordinate permutations and negation and
/// agrees with the rank of the expanded binary matrix.
pub fn permutation_invariance(cases: u32) -> Result<(), String> {
    let k = Field::standard(41).unwrap();
    outcome(runner(cases).run(&(any::<u64>(), 1usize..=36, 0usize..=8), |(seed, len, t)| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let t = t.min(len);
        let v = random_error(k, len, t, &mut rng).unwrap();
        let p = Permutation::random(len, &mut rng);
        let w = p.apply(&v, false).unwrap();
        prop_assert_eq!(rank_weight(&v), t);
        prop_assert_eq!(rank_weight(&w), t);
        prop_assert_eq!(rank_weight(&ExtVector::zeros(k, len).sub(&w).unwrap()), t);
        prop_assert_eq!(expand_to_base(&w).rank(), t);
        prop_assert_eq!(p.apply(&w, true).unwrap(), v);
        Ok(())
    }))
}

/// The annihilator of a random support vanishes exactly on it.
pub fn annihilator_round_trip(cases: u32) -> Result<(), String> {
    let k = Field::standard(41).unwrap();
    outcome(runner(cases).run(&(any::<u64>(), 0usize..=12), |(seed, t)| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let s = support_of(&random_error(k, t.max(1), t, &mut rng).unwrap());
        let l = LinearizedPoly::annihilator(&s).unwrap();
        prop_assert_eq!(l.q_degree(), Some(t));
        prop_assert!(l.is_monic());
        prop_assert!(s.basis().iter().all(|&b| l.evaluate(b).is_zero()));
        prop_assert!(l.root_space().same_span(&s));
        Ok(())
    }))
}

/// decode(encode(x)) = x and encode(decode(b)) = b for keys, ciphertexts,
/// plaintext blocks, vectors and matrices.
pub fn serialization_round_trip(cases: u32) -> Result<(), String> {
    let sets = ["toy-tiny", "toy-attack", "mcnie128", "mcnie192", "mcnie256"];
    outcome(runner(cases).run(&(any::<u64>(), 0..sets.len()), |(seed, which)| {
        let params = lookup(sets[which]).unwrap().scheme_params().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (pk, sk) = keygen(&params, &mut rng).unwrap();
        let pkb = pk.to_bytes();
        let pk2 = PublicKey::from_bytes(&pkb).unwrap();
        prop_assert_eq!(&pk2, &pk);
        prop_assert_eq!(pk2.to_bytes(), pkb);
        let skb = sk.to_bytes();
        let sk2 = SecretKey::from_bytes(&skb).unwrap();
        prop_assert_eq!(&sk2, &sk);
        prop_assert_eq!(sk2.to_bytes(), skb);

        let msg = Plaintext::random(&params, &mut rng);
        let ct = encrypt(&pk, &msg, &mut rng).unwrap();
        let ctb = ct.to_bytes(&params);
        prop_assert_eq!(ctb.len(), mcnie::mcnie2::HEADER_LEN + params.ciphertext_payload_bytes());
        let (p2, ct2) = Ciphertext::from_bytes(&ctb).unwrap();
        prop_assert_eq!(p2, params);
        prop_assert_eq!(&ct2, &ct);
        prop_assert_eq!(ct2.to_bytes(&params), ctb);

        let block: Vec<u8> = (0..params.plaintext_block_bytes()).map(|i| (seed >> (i % 8 * 8)) as u8 ^ i as u8).collect();
        let pt = Plaintext::from_block(&params, &block).unwrap();
        prop_assert_eq!(pt.to_block(&params).unwrap(), block);

        let field = params.field();
        let v = ExtVector::random(field, params.n(), &mut rng);
        let mut vb = Vec::new();
        v.encode(&mut vb);
        let (v2, used) = ExtVector::decode(field, &vb).unwrap();
        prop_assert_eq!((&v2, used), (&v, vb.len()));
        let a = ExtMatrix::random(field, params.l(), params.n(), &mut rng);
        let mut ab = Vec::new();
        a.encode(&mut ab);
        let (a2, used) = ExtMatrix::decode(field, &ab).unwrap();
        prop_assert_eq!((&a2, used), (&a, ab.len()));
        Ok(())
    }))
}
