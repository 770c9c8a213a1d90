//! Static metadata for the 24 surveyed hash designs.
//!
//! Every entry records the construction parameters of one design; six of
//! them additionally have executable implementations in [`crate::hash`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Structure {
    Sponge,
    ExtendedSponge,
    Duplex,
    ModifiedSponge,
    MerkleDamgard,
    Haifa,
    BinaryTree,
    FlatSponge,
}

impl Structure {
    /// Sponge-family structures carry a rate/capacity split; the
    /// Merkle-Damgard family does not.
    pub fn is_sponge_family(self) -> bool {
        !matches!(
            self,
            Structure::MerkleDamgard | Structure::Haifa | Structure::BinaryTree
        )
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Structure::Sponge => "sponge",
            Structure::ExtendedSponge => "extended sponge",
            Structure::Duplex => "duplex",
            Structure::ModifiedSponge => "modified sponge",
            Structure::MerkleDamgard => "Merkle-Damgard",
            Structure::Haifa => "HAIFA",
            Structure::BinaryTree => "binary tree",
            Structure::FlatSponge => "flat sponge",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rounds {
    Fixed(u32),
    /// Round count depends on the mode or input; see the entry's
    /// `rounds_note` for the values its hashing mode uses.
    Variable,
}

impl fmt::Display for Rounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rounds::Fixed(n) => write!(f, "{n}"),
            Rounds::Variable => f.write_str("var"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HashSpec {
    pub id: &'static str,
    pub name: &'static str,
    pub rate_bits: u32,
    /// Distinct input rate for designs that absorb fewer bits than they
    /// emit (Subterranean absorbs 9 bits per duplex call, emits 32).
    pub rate_in_bits: Option<u32>,
    pub capacity_bits: u32,
    /// False for Merkle-Damgard-family entries, where capacity_bits = 0
    /// stands for "not applicable" rather than a zero-width capacity.
    pub capacity_applicable: bool,
    pub state_bits: u32,
    pub structure: Structure,
    pub primitive: &'static str,
    pub rounds: Rounds,
    pub rounds_note: Option<&'static str>,
    pub digest_bits: u32,
    pub implemented: bool,
    /// Deviations from or ambiguities in the published parameter tables.
    pub notes: Option<&'static str>,
}

impl HashSpec {
    pub fn digest_bytes(&self) -> usize {
        self.digest_bits as usize / 8
    }
}

macro_rules! spec {
    ($id:literal, $name:literal, $rate:literal, $cap:expr, $state:literal,
     $structure:expr, $prim:literal, $rounds:expr, $digest:literal, $impl:literal) => {
        HashSpec {
            id: $id,
            name: $name,
            rate_bits: $rate,
            rate_in_bits: None,
            capacity_bits: $cap,
            capacity_applicable: $cap > 0,
            state_bits: $state,
            structure: $structure,
            primitive: $prim,
            rounds: $rounds,
            rounds_note: None,
            digest_bits: $digest,
            implemented: $impl,
            notes: None,
        }
    };
}

/// All 24 designs, in the order the survey lists them.
pub fn registry_list() -> Vec<HashSpec> {
    use Rounds::{Fixed, Variable};
    use Structure::*;

    vec![
        spec!("photon-256", "PHOTON-256", 32, 256, 288, ExtendedSponge,
              "AES-like permutation", Fixed(12), 256, false),
        spec!("lesamnta-lw", "Lesamnta-LW", 128, 0, 256, MerkleDamgard,
              "AES-based block cipher (LW1 mode)", Fixed(64), 256, false),
        spec!("blake2s", "BLAKE2s", 512, 0, 256, Haifa,
              "ChaCha-inspired G function", Fixed(10), 256, true),
        spec!("blake3", "BLAKE3", 512, 0, 256, BinaryTree,
              "BLAKE2s compression function", Fixed(7), 256, false),
        HashSpec {
            rounds_note: Some("permutation family defines 12- and 8-round variants; the hash mode runs 12 throughout"),
            ..spec!("ascon", "ASCON", 64, 256, 320, Sponge,
                    "bit-sliced permutation", Fixed(12), 256, true)
        },
        spec!("photon-beetle", "PHOTON-Beetle", 32, 224, 256, Sponge,
              "PHOTON-256 permutation", Fixed(12), 256, true),
        HashSpec {
            notes: Some("state published as 320 bits; Xoodoo[12] operates on \
                         384 = 128 rate + 256 capacity, which is what the \
                         implementation uses"),
            ..spec!("xoodyak", "Xoodyak", 128, 256, 384, Duplex,
                    "3x32-bit slices, XOR/rotate/shift", Fixed(12), 256, true)
        },
        spec!("knot", "KNOT", 32, 224, 256, Sponge,
              "SPN-style substitution and diffusion", Fixed(68), 256, false),
        spec!("orangish", "ORANGISH", 128, 128, 256, Sponge,
              "PHOTON-256 permutation (JH mode)", Fixed(12), 256, false),
        spec!("shamas", "SHAMAS", 64, 256, 320, Sponge,
              "bit-sliced permutation with matrix mixing", Fixed(12), 256, false),
        spec!("siv-rijndael", "SIV-Rijndael", 32, 224, 256, ModifiedSponge,
              "Rijndael256 permutation", Fixed(14), 256, false),
        spec!("siv-tem-photon", "SIV-TEM-PHOTON", 32, 224, 256, ModifiedSponge,
              "PHOTON-256 permutation", Fixed(20), 256, false),
        spec!("skinny-tk2", "SKINNY-tk2", 32, 224, 256, Sponge,
              "SKINNY-128-256 tweakable cipher", Fixed(48), 256, false),
        spec!("sneikha", "SNEIKHA", 256, 256, 512, Sponge,
              "SNEIK f512 ARX permutation (BLNK2 mode)", Fixed(8), 256, false),
        spec!("triad", "TRIAD", 32, 224, 256, ExtendedSponge,
              "Triad-P permutation", Fixed(1024), 256, false),
        spec!("coral", "Coral", 32, 224, 256, Sponge,
              "pi-I permutation", Fixed(10), 256, false),
        spec!("gimli", "Gimli", 128, 256, 384, Sponge,
              "Gimli permutation", Fixed(24), 256, true),
        HashSpec {
            rounds_note: Some("NLFSR step count varies with input length"),
            ..spec!("clx", "CLX", 32, 256, 288, Sponge,
                    "P'288 NLFSR permutation", Variable, 256, false)
        },
        spec!("ace-h", "ACE-H", 64, 256, 320, Sponge,
              "ACE permutation (Simeck-style, sLiSCP-light mode)", Fixed(48),
              256, false),
        HashSpec {
            rounds_note: Some("Sparkle384 steps: 7 between blocks, 11 after the last"),
            ..spec!("esch256", "ESCH", 128, 256, 384, ModifiedSponge,
                    "ARX-based Sparkle384", Variable, 256, true)
        },
        HashSpec {
            rate_in_bits: Some(9),
            ..spec!("subterranean", "Subterranean", 32, 224, 257, FlatSponge,
                    "bitwise round function", Fixed(1), 256, false)
        },
        spec!("saturnin", "Saturnin", 256, 0, 256, MerkleDamgard,
              "Saturnin block cipher", Fixed(32), 256, false),
        HashSpec {
            rounds_note: Some("permutation rounds differ between absorb and squeeze phases"),
            notes: Some("state published as 320/400 bits; 400 (Keccak-p[400]) \
                         is the value consistent with rate 144 + capacity 256"),
            ..spec!("isap", "ISAP", 144, 256, 400, Sponge,
                    "Keccak-p[400] and Ascon-p", Variable, 256, false)
        },
        spec!("gage", "GAGE", 8, 224, 232, Sponge,
              "custom SPN permutation", Fixed(32), 256, false),
    ]
}

pub fn lookup(id: &str) -> Result<HashSpec> {
    registry_list()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSpec(id.to_string()))
}

/// Ids of the entries that have executable implementations.
pub fn implemented_ids() -> Vec<&'static str> {
    registry_list()
        .iter()
        .filter(|s| s.implemented)
        .map(|s| s.id)
        .collect()
}
