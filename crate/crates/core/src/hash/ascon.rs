//! ASCON-Hash: 320-bit state as five big-endian 64-bit words, 8-byte rate,
//! 12-round permutation throughout.

const RATE: usize = 8;
const IV: u64 = 0x0040_0c00_0000_0100;

fn round_constant(r: usize) -> u64 {
    (0xF0 - (r as u64) * 0x10 + (r as u64)) & 0xFF
}

pub(crate) fn permute(s: &mut [u64; 5], rounds: usize) {
    for r in 12 - rounds..12 {
        s[2] ^= round_constant(r);

        s[0] ^= s[4];
        s[4] ^= s[3];
        s[2] ^= s[1];
        let t = [
            !s[0] & s[1],
            !s[1] & s[2],
            !s[2] & s[3],
            !s[3] & s[4],
            !s[4] & s[0],
        ];
        for i in 0..5 {
            s[i] ^= t[(i + 1) % 5];
        }
        s[1] ^= s[0];
        s[0] ^= s[4];
        s[3] ^= s[2];
        s[2] = !s[2];

        s[0] ^= s[0].rotate_right(19) ^ s[0].rotate_right(28);
        s[1] ^= s[1].rotate_right(61) ^ s[1].rotate_right(39);
        s[2] ^= s[2].rotate_right(1) ^ s[2].rotate_right(6);
        s[3] ^= s[3].rotate_right(10) ^ s[3].rotate_right(17);
        s[4] ^= s[4].rotate_right(7) ^ s[4].rotate_right(41);
    }
}

/// The 12-round permutation on the reference big-endian serialization.
pub fn ascon_permute_bytes(state: &[u8; 40]) -> [u8; 40] {
    let mut s = [0u64; 5];
    for (i, w) in s.iter_mut().enumerate() {
        *w = u64::from_be_bytes(state[8 * i..8 * i + 8].try_into().unwrap());
    }
    permute(&mut s, 12);
    let mut out = [0u8; 40];
    for (i, w) in s.iter().enumerate() {
        out[8 * i..8 * i + 8].copy_from_slice(&w.to_be_bytes());
    }
    out
}

pub(crate) struct AsconHash {
    s: [u64; 5],
    buf: [u8; RATE],
    buf_len: usize,
}

impl AsconHash {
    pub fn new() -> Self {
        let mut s = [IV, 0, 0, 0, 0];
        permute(&mut s, 12);
        AsconHash { s, buf: [0; RATE], buf_len: 0 }
    }

    fn absorb_block(&mut self, block: &[u8]) {
        self.s[0] ^= u64::from_be_bytes(block.try_into().unwrap());
        permute(&mut self.s, 12);
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
            self.absorb_block(&block);
            self.buf_len = 0;
        }
        while data.len() >= RATE {
            self.absorb_block(&data[..RATE]);
            data = &data[RATE..];
        }
        self.buf[..data.len()].copy_from_slice(data);
        self.buf_len = data.len();
    }

    pub fn finalize(&mut self) -> [u8; 32] {
        // last (possibly empty) block gets the 10* pad inside the rate word
        let mut last = [0u8; RATE];
        last[..self.buf_len].copy_from_slice(&self.buf[..self.buf_len]);
        last[self.buf_len] = 0x80;
        self.s[0] ^= u64::from_be_bytes(last);

        let mut out = [0u8; 32];
        for chunk in out.chunks_mut(8) {
            permute(&mut self.s, 12);
            chunk.copy_from_slice(&self.s[0].to_be_bytes());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digest_hex(msg: &[u8]) -> String {
        let mut h = AsconHash::new();
        h.update(msg);
        h.finalize().map(|b| format!("{b:02x}")).concat()
    }

    #[test]
    fn initial_state_after_iv_permutation() {
        // Constants every conformant implementation reaches after
        // absorbing the IV word and running p12 once.
        let h = AsconHash::new();
        assert_eq!(h.s[0], 0xee9398aadb67f03d);
        assert_eq!(h.s[1], 0x8bb21831c60f1002);
        assert_eq!(h.s[2], 0xb48a92db98d5da62);
        assert_eq!(h.s[3], 0x43189921b8f8e3e8);
        assert_eq!(h.s[4], 0x348fa5c9d525e140);
    }

    #[test]
    fn known_answers() {
        assert_eq!(
            digest_hex(b""),
            "7346bc14f036e87ae03d0997913088f5f68411434b3cf8b54fa796a80d251f91"
        );
        let msg: Vec<u8> = (0..32).collect();
        assert_eq!(
            digest_hex(&msg),
            "2a4f6f2b6b3ec2a6c47ba08d18c8ea561b493c13ccb35803fa8b9fb00a0f1f35"
        );
        let msg: Vec<u8> = (0..128).collect();
        assert_eq!(
            digest_hex(&msg),
            "99f85ae900901d2667fe7fbc52ab6a924fd4aa902bc03019c92106f83578d459"
        );
    }

    #[test]
    fn matches_published_crate() {
        use ascon_hash::{AsconHash as RefHash, Digest as _};
        for len in [0usize, 1, 7, 8, 9, 63, 64, 65, 200] {
            let msg: Vec<u8> = (0..len as u8).collect();
            let ours = {
                let mut h = AsconHash::new();
                h.update(&msg);
                h.finalize()
            };
            let theirs = RefHash::digest(&msg);
            assert_eq!(ours.as_slice(), theirs.as_slice(), "len {len}");
        }
    }
}
