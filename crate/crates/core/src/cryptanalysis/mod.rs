//! The original McNie scheme and the message-recovery reduction that breaks
//! it, run against both McNie and McNie2.

mod experiment;
mod gaborit;
mod legacy;

pub use experiment::{run_legacy_trials, run_mcnie2_trials, Scheme, TrialSummary};
pub use gaborit::{
    attack, brute_force_rsd, gaborit_reduce, reduce_any_rank, AttackTarget, ReducedInstance,
    LOG2_CANDIDATE_CAP,
};
pub use legacy::{
    legacy_decrypt, legacy_encrypt, legacy_encrypt_with_error, legacy_keygen,
    legacy_random_message, legacy_syndrome, LegacyParams, LegacyPublicKey, LegacySecretKey,
};
