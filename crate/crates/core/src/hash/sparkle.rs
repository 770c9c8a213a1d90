//! Esch256: a 384-bit ARX permutation (Sparkle384) driven in sponge mode
//! with an indirect 128-bit rate (message blocks pass through a Feistel
//! whitening layer before entering the state).
//!
//! The state is twelve u32 words interleaved as [x0, y0, x1, y1, ...]; the
//! byte serialization is little-endian per word.

const ROUND_CONSTANTS: [u32; 8] = [
    0xB7E1_5162, 0xBF71_5880, 0x38B4_DA56, 0x324E_7738,
    0xBB11_85EB, 0x4F7C_7B57, 0xCFBF_A1C8, 0xC2B3_293D,
];

const BRANCHES: usize = 6;
const STEPS_SLIM: usize = 7;
const STEPS_BIG: usize = 11;
const RATE: usize = 16;

#[inline]
fn ror(x: u32, n: u32) -> u32 {
    x.rotate_right(n)
}

/// Diffusion helper: swap halves of `w ^ (w << 16)`.
#[inline]
fn ell(w: u32) -> u32 {
    ror(w ^ (w << 16), 16)
}

pub(crate) fn sparkle384(state: &mut [u32; 12], steps: usize) {
    for i in 0..steps {
        state[1] ^= ROUND_CONSTANTS[i % 8];
        state[3] ^= i as u32;

        for j in 0..BRANCHES {
            let rc = ROUND_CONSTANTS[j];
            let (mut x, mut y) = (state[2 * j], state[2 * j + 1]);
            x = x.wrapping_add(ror(y, 31));
            y ^= ror(x, 24);
            x ^= rc;
            x = x.wrapping_add(ror(y, 17));
            y ^= ror(x, 17);
            x ^= rc;
            x = x.wrapping_add(y);
            y ^= ror(x, 31);
            x ^= rc;
            x = x.wrapping_add(ror(y, 24));
            y ^= ror(x, 16);
            x ^= rc;
            state[2 * j] = x;
            state[2 * j + 1] = y;
        }

        // Linear layer: XOR-fold the left half into the right, then rotate
        // the branch halves (Feistel swap).
        let tmpx = ell(state[0] ^ state[2] ^ state[4]);
        let tmpy = ell(state[1] ^ state[3] ^ state[5]);
        let (x0, y0) = (state[0], state[1]);
        for j in (2..BRANCHES).step_by(2) {
            let (xj, yj) = (state[j], state[j + 1]);
            state[j - 2] = state[j + BRANCHES] ^ xj ^ tmpy;
            state[j + BRANCHES] = xj;
            state[j - 1] = state[j + BRANCHES + 1] ^ yj ^ tmpx;
            state[j + BRANCHES + 1] = yj;
        }
        state[BRANCHES - 2] = state[BRANCHES] ^ x0 ^ tmpy;
        state[BRANCHES] = x0;
        state[BRANCHES - 1] = state[BRANCHES + 1] ^ y0 ^ tmpx;
        state[BRANCHES + 1] = y0;
    }
}

fn load(bytes: &[u8; 48]) -> [u32; 12] {
    let mut words = [0u32; 12];
    for (i, w) in words.iter_mut().enumerate() {
        *w = u32::from_le_bytes(bytes[4 * i..4 * i + 4].try_into().unwrap());
    }
    words
}

fn store(words: &[u32; 12]) -> [u8; 48] {
    let mut bytes = [0u8; 48];
    for (i, w) in words.iter().enumerate() {
        bytes[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
    }
    bytes
}

/// Full-strength Sparkle384 (11 steps) on the little-endian serialization.
pub fn sparkle384_permute_bytes(state: &[u8; 48]) -> [u8; 48] {
    let mut words = load(state);
    sparkle384(&mut words, STEPS_BIG);
    store(&words)
}

/// XOR a rate block into the state through the Feistel whitening layer.
/// `block` is already padded to the full 16 bytes.
fn inject(state: &mut [u32; 12], block: &[u8; RATE]) {
    let mut w = [0u32; 4];
    for (i, word) in w.iter_mut().enumerate() {
        *word = u32::from_le_bytes(block[4 * i..4 * i + 4].try_into().unwrap());
    }
    let tmpx = ell(w[0] ^ w[2]);
    let tmpy = ell(w[1] ^ w[3]);
    state[0] ^= w[0] ^ tmpy;
    state[1] ^= w[1] ^ tmpx;
    state[2] ^= w[2] ^ tmpy;
    state[3] ^= w[3] ^ tmpx;
    state[4] ^= tmpy;
    state[5] ^= tmpx;
}

/// Streaming wrapper. The final block is flagged with a domain constant in
/// the last state word and absorbed under the 11-step permutation, so a
/// full buffer is only committed once more input proves it is not last.
pub(crate) struct Esch256 {
    state: [u32; 12],
    buf: [u8; RATE],
    buf_len: usize,
}

impl Esch256 {
    pub fn new() -> Self {
        Esch256 { state: [0; 12], buf: [0; RATE], buf_len: 0 }
    }

    pub fn update(&mut self, mut data: &[u8]) {
        while !data.is_empty() {
            if self.buf_len == RATE {
                inject(&mut self.state, &self.buf);
                sparkle384(&mut self.state, STEPS_SLIM);
                self.buf_len = 0;
            }
            let take = (RATE - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
        }
    }

    pub fn finalize(&mut self) -> [u8; 32] {
        let len = self.buf_len;
        if len < RATE {
            self.state[5] ^= 1 << 24;
            self.buf[len] = 0x80;
            self.buf[len + 1..].fill(0);
        } else {
            self.state[5] ^= 2 << 24;
        }
        inject(&mut self.state, &self.buf);
        sparkle384(&mut self.state, STEPS_BIG);

        let mut out = [0u8; 32];
        for i in 0..4 {
            out[4 * i..4 * i + 4].copy_from_slice(&self.state[i].to_le_bytes());
        }
        sparkle384(&mut self.state, STEPS_SLIM);
        for i in 0..4 {
            out[16 + 4 * i..20 + 4 * i].copy_from_slice(&self.state[i].to_le_bytes());
        }
        out
    }
}
