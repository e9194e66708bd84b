use std::collections::HashMap;

use mcnie::linalg::ExtVector;
use mcnie::mcnie2::{decrypt, encrypt, encrypt_with_error, keygen, Ciphertext, Plaintext, PublicKey, SecretKey};
use mcnie::params::lookup;
use mcnie::rank_metric::random_error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn fixture() -> HashMap<String, String> {
    include_str!("fixtures/kat_mcnie128.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn bytes(kv: &HashMap<String, String>, key: &str) -> Vec<u8> {
    hex::decode(&kv[key]).unwrap()
}

#[test]
fn seeded_run_reproduces_fixture() {
    let kv = fixture();
    let seed: u64 = kv["seed"].parse().unwrap();
    let p = lookup("mcnie128").unwrap().scheme_params().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (pk, sk) = keygen(&p, &mut rng).unwrap();
    assert_eq!(pk.to_bytes(), bytes(&kv, "public_key"));
    assert_eq!(sk.to_bytes(), bytes(&kv, "secret_key"));
    let mut block = vec![0u8; p.plaintext_block_bytes()];
    rng.fill_bytes(&mut block);
    assert_eq!(block, bytes(&kv, "message_block"));
    let msg = Plaintext::from_block(&p, &block).unwrap();
    let e = random_error(p.field(), p.code_length(), p.radius(), &mut rng).unwrap();
    let mut raw = Vec::new();
    e.encode_raw(&mut raw);
    assert_eq!(raw, bytes(&kv, "error"));
    assert_eq!(encrypt_with_error(&pk, &msg, &e).unwrap().to_bytes(&p), bytes(&kv, "ciphertext"));
    assert_eq!(encrypt(&pk, &msg, &mut rng).unwrap().to_bytes(&p), bytes(&kv, "ciphertext_honest"));
}

#[test]
fn fixture_decrypts() {
    let kv = fixture();
    let pk = PublicKey::from_bytes(&bytes(&kv, "public_key")).unwrap();
    let sk = SecretKey::from_bytes(&bytes(&kv, "secret_key")).unwrap();
    let p = *pk.params();
    let msg = Plaintext::from_block(&p, &bytes(&kv, "message_block")).unwrap();
    for key in ["ciphertext", "ciphertext_honest"] {
        let (cp, ct) = Ciphertext::from_bytes(&bytes(&kv, key)).unwrap();
        assert_eq!(cp, p);
        assert_eq!(decrypt(&sk, &pk, &ct).unwrap(), msg);
    }
    let (e, _) = ExtVector::decode_raw(p.field(), p.code_length(), &bytes(&kv, "error")).unwrap();
    let (_, ct) = Ciphertext::from_bytes(&bytes(&kv, "ciphertext")).unwrap();
    assert_eq!(sk.decryption_syndrome(&ct).unwrap(), {
        let e1 = sk.permutation().apply(&e.slice(0..24), true).unwrap();
        sk.code().syndrome(&e1.concat(&e.slice(24..36)).unwrap()).unwrap()
    });
}
