//! Benchmarking toolkit for lightweight 256-bit hash functions.
//!
//! The crate bundles four loosely coupled layers:
//!
//! * [`registry`] and [`hash`]: metadata for 24 lightweight hash designs and
//!   executable implementations of six of them (ASCON-Hash, Gimli-Hash,
//!   Xoodyak, PHOTON-Beetle-Hash, Esch256, BLAKE2s), all verified against
//!   their published known-answer vectors.
//! * [`profile`]: cycles-per-byte measurement with pluggable cycle sources,
//!   including a fully deterministic scripted source for testing.
//! * [`memfoot`] and [`energy`]: static memory footprints from linker map
//!   and stack-usage files, and an energy model converting normalized ADC
//!   traces into per-execution energy.
//! * [`metrics`] and [`report`]: composite efficiency scores, min-max and
//!   log normalizations, rankings, and CSV/JSON/SVG report rendering, with
//!   a reference dataset embedded for comparison.

pub mod batch;
pub mod energy;
pub mod error;
pub mod fmt;
pub mod hash;
pub mod kat;
pub mod memfoot;
pub mod metrics;
pub mod profile;
pub mod registry;
pub mod report;
pub mod table2;

pub use error::{Error, Result};
