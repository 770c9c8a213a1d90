//! PHOTON-Beetle-Hash[32]: a 256-bit state absorbed at 16 bytes for the
//! first block and 4 bytes thereafter, squeezed as two 16-byte halves.
//!
//! The PHOTON-256 permutation works on an 8x8 grid of 4-bit cells; the low
//! nibble of byte 0 is cell (0,0), its high nibble cell (0,1).

const ROUND_CONSTANTS: [u8; 12] = [1, 3, 7, 14, 13, 11, 6, 12, 9, 2, 5, 10];
const INTERNAL_CONSTANTS: [u8; 8] = [0, 1, 3, 7, 15, 14, 12, 8];

const SBOX: [u8; 16] = [
    0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
    0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
];

const MIX_MATRIX: [[u8; 8]; 8] = [
    [2, 4, 2, 11, 2, 8, 5, 6],
    [12, 9, 8, 13, 7, 7, 5, 2],
    [4, 4, 13, 13, 9, 4, 13, 9],
    [1, 6, 5, 1, 12, 13, 15, 14],
    [15, 12, 9, 13, 14, 5, 14, 13],
    [9, 14, 5, 15, 4, 12, 9, 6],
    [12, 2, 2, 10, 3, 1, 1, 14],
    [15, 1, 13, 10, 5, 10, 2, 3],
];

/// GF(2^4) product, reduction polynomial x^4 + x + 1.
fn gf16_mul(mut a: u8, mut b: u8) -> u8 {
    let mut p = 0;
    for _ in 0..4 {
        if b & 1 != 0 {
            p ^= a;
        }
        b >>= 1;
        let hi = a & 0x8;
        a = (a << 1) & 0xF;
        if hi != 0 {
            a ^= 0x3;
        }
    }
    p
}

// 16x16 product table; the inner loop of MixColumnSerial dominates the
// whole hash, and the table turns it into two lookups.
fn mul_table() -> &'static [[u8; 16]; 16] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[[u8; 16]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0u8; 16]; 16];
        for (a, row) in t.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = gf16_mul(a as u8, b as u8);
            }
        }
        t
    })
}

pub(crate) fn permute(state: &mut [u8; 32]) {
    let tab = mul_table();
    let mut grid = [[0u8; 8]; 8];
    for i in 0..64 {
        let nib = (state[i >> 1] >> (4 * (i & 1))) & 0xF;
        grid[i / 8][i % 8] = nib;
    }

    for rc in ROUND_CONSTANTS {
        for i in 0..8 {
            grid[i][0] ^= rc ^ INTERNAL_CONSTANTS[i];
        }
        for row in grid.iter_mut() {
            for cell in row.iter_mut() {
                *cell = SBOX[*cell as usize];
            }
        }
        for (i, row) in grid.iter_mut().enumerate() {
            row.rotate_left(i);
        }
        let mut mixed = [[0u8; 8]; 8];
        for j in 0..8 {
            for i in 0..8 {
                let row = &MIX_MATRIX[i];
                let mut acc = 0;
                for k in 0..8 {
                    acc ^= tab[row[k] as usize][grid[k][j] as usize];
                }
                mixed[i][j] = acc;
            }
        }
        grid = mixed;
    }

    let mut out = [0u8; 32];
    for i in 0..64 {
        out[i >> 1] |= grid[i / 8][i % 8] << (4 * (i & 1));
    }
    *state = out;
}

/// PHOTON-256 on the nibble-packed byte serialization.
pub fn photon256_permute_bytes(state: &[u8; 32]) -> [u8; 32] {
    let mut s = *state;
    permute(&mut s);
    s
}

const FIRST_RATE: usize = 16;
const RATE: usize = 4;

fn domain(c: u8) -> u8 {
    c << 5
}

/// Streaming wrapper. The reference algorithm pads and tags the final block
/// differently depending on whether the whole message fit in the first
/// 16-byte block, so absorption is deferred one block.
pub(crate) struct PhotonBeetleHash {
    state: [u8; 32],
    buf: [u8; FIRST_RATE],
    buf_len: usize,
    past_first_block: bool,
}

impl PhotonBeetleHash {
    pub fn new() -> Self {
        PhotonBeetleHash {
            state: [0; 32],
            buf: [0; FIRST_RATE],
            buf_len: 0,
            past_first_block: false,
        }
    }

    fn rate(&self) -> usize {
        if self.past_first_block { RATE } else { FIRST_RATE }
    }

    fn commit_block(&mut self) {
        let len = self.buf_len;
        debug_assert_eq!(len, self.rate());
        if self.past_first_block {
            permute(&mut self.state);
        }
        for i in 0..len {
            self.state[i] ^= self.buf[i];
        }
        self.past_first_block = true;
        self.buf_len = 0;
    }

    pub fn update(&mut self, mut data: &[u8]) {
        while !data.is_empty() {
            if self.buf_len == self.rate() {
                self.commit_block();
            }
            let take = (self.rate() - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
        }
    }

    pub fn finalize(&mut self) -> [u8; 32] {
        let len = self.buf_len;
        if !self.past_first_block {
            // whole message fit in the initial block
            if len == 0 {
                self.state[31] ^= domain(1);
            } else {
                for i in 0..len {
                    self.state[i] ^= self.buf[i];
                }
                if len < FIRST_RATE {
                    self.state[len] ^= 0x01;
                    self.state[31] ^= domain(1);
                } else {
                    self.state[31] ^= domain(2);
                }
            }
        } else {
            // trailing 1..=4 byte block after at least one full one
            permute(&mut self.state);
            for i in 0..len {
                self.state[i] ^= self.buf[i];
            }
            if len == RATE {
                self.state[31] ^= domain(1);
            } else {
                self.state[len] ^= 0x01;
                self.state[31] ^= domain(2);
            }
        }

        let mut out = [0u8; 32];
        permute(&mut self.state);
        out[..16].copy_from_slice(&self.state[..16]);
        permute(&mut self.state);
        out[16..].copy_from_slice(&self.state[..16]);
        out
    }
}
