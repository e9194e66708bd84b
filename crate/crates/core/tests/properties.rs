mod support;

use support::props::*;

#[test]
fn field_axioms_hold_in_every_field() {
    field_axioms_all(FIELD_AXIOM_CASES).unwrap();
}

#[test]
fn rank_weight_is_permutation_invariant() {
    permutation_invariance(PERMUTATION_CASES).unwrap();
}

#[test]
fn annihilator_and_root_space_agree() {
    annihilator_round_trip(ANNIHILATOR_CASES).unwrap();
}

#[test]
fn serialization_is_byte_exact() {
    serialization_round_trip(SERIALIZATION_CASES).unwrap();
}
