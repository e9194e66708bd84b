//! Key generation, encryption and decryption of one block at every named
//! security level, through both the in-memory API and the wire formats.

use mcnie::mcnie2::{decrypt, encrypt, keygen, Ciphertext, Plaintext, PublicKey, SecretKey};
use mcnie::params::lookup;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    for name in ["mcnie128", "mcnie192", "mcnie256"] {
        let params = lookup(name)?.scheme_params()?;
        let (pk, sk) = keygen(&params, &mut rng)?;

        // keys and ciphertexts survive serialization
        let pk = PublicKey::from_bytes(&pk.to_bytes())?;
        let sk = SecretKey::from_bytes(&sk.to_bytes())?;

        let block: Vec<u8> = (0..params.plaintext_block_bytes()).map(|i| i as u8).collect();
        let msg = Plaintext::from_block(&params, &block)?;
        let ct = encrypt(&pk, &msg, &mut rng)?;
        let wire = ct.to_bytes(&params);
        let (_, ct) = Ciphertext::from_bytes(&wire)?;

        let back = decrypt(&sk, &pk, &ct)?.to_block(&params)?;
        assert_eq!(back, block);
        println!(
            "{name}: {} byte block -> {} byte ciphertext, recovered",
            block.len(),
            wire.len()
        );
    }
    Ok(())
}
