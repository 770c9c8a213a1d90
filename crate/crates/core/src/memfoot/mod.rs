//! Memory footprints from build artifacts: linker-map section totals plus
//! a worst-case stack bound.
//!
//!   RAM = .data + .bss + stack bound
//!   ROM = .text + .rodata
//!
//! Heap is excluded by construction — the measured firmware performs no
//! dynamic allocation, so static segments plus stack cover all RAM use.

mod map;
mod su;

pub use map::{parse_map, MapSegments};
pub use su::{parse_su, FrameQualifier, StackPolicy, StackUsage, SuEntry};

/// Identifies the parsing/aggregation behavior that produced a footprint;
/// bumped whenever either changes meaning.
pub const PARSER_VERSION: &str = "1";

/// Where a footprint's numbers came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Provenance {
    pub map_path: String,
    pub su_path: String,
    pub parser_version: String,
    pub stack_policy: Option<StackPolicy>,
}

/// RAM/ROM totals with the segment breakdown they were computed from.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MemoryFootprint {
    pub ram_bytes: u64,
    pub rom_bytes: u64,
    pub segments: MapSegments,
    pub stack_bytes: u64,
    pub provenance: Provenance,
}

/// Combine parsed segments and stack usage into RAM/ROM totals.
pub fn footprint(map: &MapSegments, su: &StackUsage) -> MemoryFootprint {
    MemoryFootprint {
        ram_bytes: map.data_bytes + map.bss_bytes + su.worst_case_bytes,
        rom_bytes: map.text_bytes + map.rodata_bytes,
        segments: *map,
        stack_bytes: su.worst_case_bytes,
        provenance: Provenance {
            map_path: String::new(),
            su_path: String::new(),
            parser_version: PARSER_VERSION.to_string(),
            stack_policy: Some(su.policy),
        },
    }
}

impl MemoryFootprint {
    /// Attach the source file paths for reporting.
    pub fn with_paths(mut self, map_path: impl Into<String>, su_path: impl Into<String>) -> Self {
        self.provenance.map_path = map_path.into();
        self.provenance.su_path = su_path.into();
        self
    }
}
