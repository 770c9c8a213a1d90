//! Gimli-Hash as submitted to the NIST lightweight competition: 48-byte
//! state of little-endian 32-bit words, 16-byte rate.
//!
//! The submission's padding (0x01 after the message, 0x01 into the last
//! state byte) differs from the designers' earlier standalone publication
//! (0x1F / 0x80 inside the rate); the known-answer files pin the former.

const RATE: usize = 16;

pub(crate) fn permute(s: &mut [u32; 12]) {
    for round in (1..=24u32).rev() {
        for col in 0..4 {
            let x = s[col].rotate_left(24);
            let y = s[4 + col].rotate_left(9);
            let z = s[8 + col];
            s[8 + col] = x ^ (z << 1) ^ ((y & z) << 2);
            s[4 + col] = y ^ x ^ ((x | z) << 1);
            s[col] = z ^ y ^ ((x & y) << 3);
        }
        match round & 3 {
            0 => {
                s.swap(0, 1);
                s.swap(2, 3);
                s[0] ^= 0x9e37_7900 | round;
            }
            2 => {
                s.swap(0, 2);
                s.swap(1, 3);
            }
            _ => {}
        }
    }
}

/// The 24-round permutation on the little-endian byte serialization.
pub fn gimli_permute_bytes(state: &[u8; 48]) -> [u8; 48] {
    let mut s = [0u32; 12];
    for (i, w) in s.iter_mut().enumerate() {
        *w = u32::from_le_bytes(state[4 * i..4 * i + 4].try_into().unwrap());
    }
    permute(&mut s);
    let mut out = [0u8; 48];
    for (i, w) in s.iter().enumerate() {
        out[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
    }
    out
}

pub(crate) struct GimliHash {
    s: [u32; 12],
    buf: [u8; RATE],
    buf_len: usize,
}

impl GimliHash {
    pub fn new() -> Self {
        GimliHash { s: [0; 12], buf: [0; RATE], buf_len: 0 }
    }

    fn xor_byte(&mut self, i: usize, b: u8) {
        self.s[i / 4] ^= (b as u32) << (8 * (i % 4));
    }

    fn absorb_block(&mut self, block: [u8; RATE]) {
        for (i, b) in block.iter().enumerate() {
            self.xor_byte(i, *b);
        }
        permute(&mut self.s);
    }

    pub fn update(&mut self, mut data: &[u8]) {
        if self.buf_len > 0 {
            let take = (RATE - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
            if self.buf_len < RATE {
                return;
            }
            let block = self.buf;
            self.absorb_block(block);
            self.buf_len = 0;
        }
        while data.len() >= RATE {
            self.absorb_block(data[..RATE].try_into().unwrap());
            data = &data[RATE..];
        }
        self.buf[..data.len()].copy_from_slice(data);
        self.buf_len = data.len();
    }

    fn extract16(&self) -> [u8; 16] {
        let mut out = [0u8; 16];
        for (i, w) in self.s[..4].iter().enumerate() {
            out[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn finalize(&mut self) -> [u8; 32] {
        for i in 0..self.buf_len {
            self.xor_byte(i, self.buf[i]);
        }
        self.xor_byte(self.buf_len, 0x01);
        self.xor_byte(47, 0x01);
        permute(&mut self.s);

        let mut out = [0u8; 32];
        out[..16].copy_from_slice(&self.extract16());
        permute(&mut self.s);
        out[16..].copy_from_slice(&self.extract16());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn designers_permutation_vector() {
        // Input words i*i*i + i*0x9e3779b9 and the published output.
        let mut s = [0u32; 12];
        for (i, w) in s.iter_mut().enumerate() {
            let i = i as u32;
            *w = i
                .wrapping_mul(i)
                .wrapping_mul(i)
                .wrapping_add(i.wrapping_mul(0x9e37_79b9));
        }
        permute(&mut s);
        assert_eq!(
            s,
            [
                0xba11c85a, 0x91bad119, 0x380ce880, 0xd24c2c68,
                0x3eceffea, 0x277a921c, 0x4f73a0bd, 0xda5a9cd8,
                0x84b673f0, 0x34e52ff7, 0x9e2bef49, 0xf41bb8d6,
            ]
        );
    }

    fn digest_hex(msg: &[u8]) -> String {
        let mut h = GimliHash::new();
        h.update(msg);
        h.finalize().map(|b| format!("{b:02x}")).concat()
    }

    #[test]
    fn known_answers() {
        assert_eq!(
            digest_hex(b""),
            "27ae20e95fbc2bf01e972b0015eea431c20fc8818f25bc6dbe66232230db352f"
        );
        let msg: Vec<u8> = (0..32).collect();
        assert_eq!(
            digest_hex(&msg),
            "a8f4fa28708bda7efb4c1914ca4afa9e475b82d588d36504f87dbb0ed9ab3c4b"
        );
        let msg: Vec<u8> = (0..128).collect();
        assert_eq!(
            digest_hex(&msg),
            "4983e675ae9fe5391d3e946b169683ba3e07ebbabd067dab3157ce04490e2072"
        );
    }
}
