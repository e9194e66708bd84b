//! Byte formats: key and ciphertext files, and plaintext blocks.
//!
//! Every file starts with `"MCN2"`, a version byte and `m, n, k, l` as
//! little-endian `u16`. Ciphertext payloads pack `c1 || c2` as a contiguous
//! little-endian bit string of `(n + rho) m` bits.

use super::{Ciphertext, Plaintext, PublicKey, SchemeParams, SecretKey};
use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};
use crate::linalg::{ExtMatrix, ExtVector, Permutation};

pub const MAGIC: &[u8; 4] = b"MCN2";
pub const VERSION: u8 = 1;
/// Magic, version and four `u16` parameters.
pub const HEADER_LEN: usize = 4 + 1 + 8;

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn take<'b>(bytes: &mut &'b [u8], len: usize, what: &str) -> Result<&'b [u8]> {
    if bytes.len() < len {
        return Err(format_err(format!("truncated {what}")));
    }
    let (head, tail) = bytes.split_at(len);
    *bytes = tail;
    Ok(head)
}

fn finish(bytes: &[u8]) -> Result<()> {
    if bytes.is_empty() {
        Ok(())
    } else {
        Err(format_err(format!("{} trailing bytes", bytes.len())))
    }
}

/// `values` as a little-endian bit string of `width` bits each, in
/// `ceil(values.len() * width / 8)` bytes.
fn pack_bits(values: impl IntoIterator<Item = u64>, width: u32, count: usize) -> Vec<u8> {
    let mut out = vec![0u8; (count * width as usize).div_ceil(8)];
    let mut pos = 0usize;
    for v in values {
        for b in 0..width as usize {
            if v >> b & 1 == 1 {
                out[(pos + b) / 8] |= 1 << ((pos + b) % 8);
            }
        }
        pos += width as usize;
    }
    out
}

/// Inverse of `pack_bits`; bits past `count * width` must be zero.
fn unpack_bits(bytes: &[u8], width: u32, count: usize) -> Result<Vec<u64>> {
    let total = count * width as usize;
    if bytes.len() != total.div_ceil(8) {
        return Err(format_err(format!(
            "expected {} packed bytes, got {}",
            total.div_ceil(8),
            bytes.len()
        )));
    }
    let bit = |p: usize| (bytes[p / 8] >> (p % 8)) & 1;
    if (total..bytes.len() * 8).any(|p| bit(p) == 1) {
        return Err(format_err("nonzero padding bits"));
    }
    Ok((0..count)
        .map(|i| {
            (0..width as usize).fold(0u64, |acc, b| acc | (bit(i * width as usize + b) as u64) << b)
        })
        .collect())
}

impl SchemeParams {
    pub fn encode_header(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        for v in [self.m() as usize, self.n, self.k, self.l] {
            out.extend_from_slice(&(v as u16).to_le_bytes());
        }
    }

    /// Parses and validates a header, returning the parameters and the
    /// number of bytes consumed.
    pub fn decode_header(bytes: &[u8]) -> Result<(SchemeParams, usize)> {
        let mut rest = bytes;
        if take(&mut rest, 4, "magic")? != MAGIC {
            return Err(format_err("bad magic"));
        }
        let version = take(&mut rest, 1, "version")?[0];
        if version != VERSION {
            return Err(format_err(format!("unsupported format version {version}")));
        }
        let mut vals = [0usize; 4];
        for v in &mut vals {
            let b = take(&mut rest, 2, "parameters")?;
            *v = u16::from_le_bytes([b[0], b[1]]) as usize;
        }
        let [m, n, k, l] = vals;
        let params = SchemeParams::new(m as u32, n, k, l)
            .map_err(|e| format_err(format!("header parameters: {e}")))?;
        Ok((params, HEADER_LEN))
    }

    /// `floor(l m / 8)`.
    pub fn plaintext_block_bytes(&self) -> usize {
        self.l * self.m() as usize / 8
    }

    /// `ceil((n + rho) m / 8)`.
    pub fn ciphertext_payload_bytes(&self) -> usize {
        ((self.n + self.redundancy()) * self.m() as usize).div_ceil(8)
    }
}

impl Plaintext {
    /// Unpacks exactly `plaintext_block_bytes` bytes into `l` elements of
    /// `m` bits; the high bits of the last element stay zero.
    pub fn from_block(params: &SchemeParams, block: &[u8]) -> Result<Plaintext> {
        if block.len() != params.plaintext_block_bytes() {
            return Err(format_err(format!(
                "plaintext block of {} bytes, expected {}",
                block.len(),
                params.plaintext_block_bytes()
            )));
        }
        let mut padded = block.to_vec();
        padded.resize((params.l * params.m() as usize).div_ceil(8), 0);
        let data = unpack_bits(&padded, params.m(), params.l)
            .expect("zero padding")
            .into_iter()
            .map(FieldElement)
            .collect();
        Ok(Plaintext(ExtVector::from_parts(params.field, data)))
    }

    /// Fails when the message uses bits beyond the block.
    pub fn to_block(&self, params: &SchemeParams) -> Result<Vec<u8>> {
        let mut packed = pack_bits(self.0.iter().map(|x| x.bits()), params.m(), params.l);
        let len = params.plaintext_block_bytes();
        if packed[len..].iter().any(|&b| b != 0) {
            return Err(format_err("message does not fit a plaintext block"));
        }
        packed.truncate(len);
        Ok(packed)
    }
}

impl Ciphertext {
    /// The bit-packed `c1 || c2`, without header.
    pub fn encode_payload(&self, params: &SchemeParams) -> Vec<u8> {
        pack_bits(
            self.c1.iter().chain(self.c2.iter()).map(|x| x.bits()),
            params.m(),
            params.n + params.redundancy(),
        )
    }

    pub fn decode_payload(params: &SchemeParams, bytes: &[u8]) -> Result<Ciphertext> {
        let n = params.n;
        let vals = unpack_bits(bytes, params.m(), n + params.redundancy())?;
        let elems: Vec<FieldElement> = vals.into_iter().map(FieldElement).collect();
        Ok(Ciphertext {
            c1: ExtVector::from_parts(params.field, elems[..n].to_vec()),
            c2: ExtVector::from_parts(params.field, elems[n..].to_vec()),
        })
    }

    pub fn to_bytes(&self, params: &SchemeParams) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + params.ciphertext_payload_bytes());
        params.encode_header(&mut out);
        out.extend(self.encode_payload(params));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<(SchemeParams, Ciphertext)> {
        let (params, used) = SchemeParams::decode_header(bytes)?;
        Ok((params, Ciphertext::decode_payload(&params, &bytes[used..])?))
    }
}

fn decode_raw(field: Field, len: usize, rest: &mut &[u8], what: &str) -> Result<ExtVector> {
    let (v, used) = ExtVector::decode_raw(field, len, rest)
        .map_err(|e| format_err(format!("{what}: {e}")))?;
    *rest = &rest[used..];
    Ok(v)
}

impl PublicKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.params.encode_header(&mut out);
        self.u.encode_raw(&mut out);
        self.f.encode(&mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<PublicKey> {
        let (params, used) = SchemeParams::decode_header(bytes)?;
        let mut rest = &bytes[used..];
        let u = decode_raw(params.field, params.n, &mut rest, "seed vector")?;
        let (f, used) =
            ExtMatrix::decode(params.field, rest).map_err(|e| format_err(format!("F: {e}")))?;
        finish(&rest[used..])?;
        PublicKey::new(params, u, f).map_err(|e| format_err(e.to_string()))
    }
}

impl SecretKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.params.encode_header(&mut out);
        for &i in self.perm.map() {
            out.extend_from_slice(&(i as u16).to_le_bytes());
        }
        self.code.h().encode_raw(&mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<SecretKey> {
        let (params, used) = SchemeParams::decode_header(bytes)?;
        let mut rest = &bytes[used..];
        let raw = take(&mut rest, 2 * params.n, "permutation")?;
        let map = raw
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as usize)
            .collect();
        let perm = Permutation::new(map).map_err(|e| format_err(e.to_string()))?;
        let h = decode_raw(params.field, params.code_length(), &mut rest, "parity vector")?;
        finish(rest)?;
        SecretKey::new(params, perm, h).map_err(|e| format_err(e.to_string()))
    }
}
