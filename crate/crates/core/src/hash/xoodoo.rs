//! Xoodyak's hash mode: the Cyclist construction over Xoodoo[12] with a
//! 48-byte state (little-endian 32-bit lanes) and a 16-byte hash rate.

const RATE: usize = 16;

const ROUND_CONSTANTS: [u32; 12] = [
    0x058, 0x038, 0x3C0, 0x0D0, 0x120, 0x014,
    0x060, 0x02C, 0x380, 0x0F0, 0x1A0, 0x012,
];

pub(crate) fn permute(a: &mut [u32; 12]) {
    for &rc in &ROUND_CONSTANTS {
        // theta: column parity mixed into every lane
        let mut p = [0u32; 4];
        for x in 0..4 {
            p[x] = a[x] ^ a[x + 4] ^ a[x + 8];
        }
        let mut e = [0u32; 4];
        for x in 0..4 {
            let q = p[(x + 3) % 4];
            e[x] = q.rotate_left(5) ^ q.rotate_left(14);
        }
        for i in 0..12 {
            a[i] ^= e[i % 4];
        }

        // rho west: shift plane 1 by one lane, rotate plane 2 lanes by 11
        let p1 = [a[4 + 3], a[4], a[4 + 1], a[4 + 2]];
        a[4..8].copy_from_slice(&p1);
        for x in 0..4 {
            a[8 + x] = a[8 + x].rotate_left(11);
        }

        a[0] ^= rc;

        // chi: nonlinear complement-and per column
        let mut b = [0u32; 12];
        for x in 0..4 {
            b[x] = a[x] ^ (!a[x + 4] & a[x + 8]);
            b[x + 4] = a[x + 4] ^ (!a[x + 8] & a[x]);
            b[x + 8] = a[x + 8] ^ (!a[x] & a[x + 4]);
        }
        *a = b;

        // rho east: rotate plane 1 bits by 1, plane 2 lanes by 2 and bits by 8
        for x in 0..4 {
            a[4 + x] = a[4 + x].rotate_left(1);
        }
        let p2 = [
            a[8 + 2].rotate_left(8),
            a[8 + 3].rotate_left(8),
            a[8].rotate_left(8),
            a[8 + 1].rotate_left(8),
        ];
        a[8..12].copy_from_slice(&p2);
    }
}

/// Xoodoo[12] on the little-endian byte serialization.
pub fn xoodoo_permute_bytes(state: &[u8; 48]) -> [u8; 48] {
    let mut a = [0u32; 12];
    for (i, w) in a.iter_mut().enumerate() {
        *w = u32::from_le_bytes(state[4 * i..4 * i + 4].try_into().unwrap());
    }
    permute(&mut a);
    let mut out = [0u8; 48];
    for (i, w) in a.iter().enumerate() {
        out[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
    }
    out
}

/// Cyclist hash mode. Absorb blocks are delimited by a 0x01 pad byte plus a
/// domain bit in the last state byte (0x01 on the first block only);
/// squeezing interleaves empty down-calls between rate-sized outputs.
pub(crate) struct XoodyakHash {
    bytes: [u8; 48],
    buf: [u8; RATE],
    buf_len: usize,
    absorbed_any: bool,
}

impl XoodyakHash {
    pub fn new() -> Self {
        XoodyakHash { bytes: [0; 48], buf: [0; RATE], buf_len: 0, absorbed_any: false }
    }

    fn permute_state(&mut self) {
        let mut a = [0u32; 12];
        for (i, w) in a.iter_mut().enumerate() {
            *w = u32::from_le_bytes(self.bytes[4 * i..4 * i + 4].try_into().unwrap());
        }
        permute(&mut a);
        for (i, w) in a.iter().enumerate() {
            self.bytes[4 * i..4 * i + 4].copy_from_slice(&w.to_le_bytes());
        }
    }

    fn down(&mut self, block: &[u8], cd: u8) {
        for (i, b) in block.iter().enumerate() {
            self.bytes[i] ^= b;
        }
        self.bytes[block.len()] ^= 0x01;
        self.bytes[47] ^= cd & 0x01;
    }

    fn absorb_block(&mut self, block: [u8; RATE]) {
        if self.absorbed_any {
            self.permute_state();
            self.down(&block, 0x00);
        } else {
            self.down(&block, 0x03);
            self.absorbed_any = true;
        }
    }

    pub fn update(&mut self, mut data: &[u8]) {
        // Blocks are only committed once a byte beyond them arrives, so the
        // final (possibly full) block is still in `buf` at finalize time.
        while !data.is_empty() {
            if self.buf_len == RATE {
                let block = self.buf;
                self.absorb_block(block);
                self.buf_len = 0;
            }
            let take = (RATE - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
        }
    }

    pub fn finalize(&mut self) -> [u8; 32] {
        let block_len = self.buf_len;
        let block = self.buf;
        if self.absorbed_any {
            self.permute_state();
            self.down(&block[..block_len], 0x00);
        } else {
            self.down(&block[..block_len], 0x03);
        }

        // squeeze: up(16), down(empty), up(16); hash mode adds no up-domain
        let mut out = [0u8; 32];
        self.permute_state();
        out[..16].copy_from_slice(&self.bytes[..16]);
        self.down(&[], 0x00);
        self.permute_state();
        out[16..].copy_from_slice(&self.bytes[..16]);
        out
    }
}
