//! Cycles-per-byte measurement with pluggable cycle sources.
//!
//! The model mirrors a timer-register workflow: a counter is zeroed, the
//! hash runs, the counter is read back, and the count divided by the
//! message length gives cycles per byte. On a host there is no calibrated
//! cycle register, so three sources are offered: the CPU timestamp counter
//! where available, a monotonic clock scaled by a nominal frequency, and a
//! scripted source replaying fixed counts for fully reproducible output.
//! Host numbers characterize relative cost only; externally measured
//! per-target values enter through [`ingest_external_cpb`] instead and are
//! never mixed with host numbers silently.

use crate::{Error, Result};

/// Default message length (bytes) for host measurements.
pub const DEFAULT_MESSAGE_LEN: usize = 128;
/// Default repetition count for host measurements.
pub const DEFAULT_REPETITIONS: usize = 32;

/// Where a cycle count (and hence a CpB figure) came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Source {
    HostCounter,
    ClockScaled,
    Scripted,
    External,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Source::HostCounter => "host-counter",
            Source::ClockScaled => "clock-scaled",
            Source::Scripted => "scripted",
            Source::External => "external",
        };
        f.write_str(s)
    }
}

/// A supplier of per-invocation cycle counts.
#[derive(Debug, Clone)]
pub enum CycleSource {
    /// CPU timestamp counter (x86_64); elsewhere falls back to the
    /// monotonic clock scaled by `fallback_frequency_hz`.
    HostCounter { fallback_frequency_hz: f64 },
    /// Wall-clock duration times a nominal frequency.
    MonotonicClockScaled { frequency_hz: f64 },
    /// Fixed sequence replayed round-robin; measurement never touches a
    /// real clock, so results are a pure function of the inputs.
    Scripted { cycles: Vec<u64> },
}

impl CycleSource {
    pub fn validate(&self) -> Result<()> {
        match self {
            CycleSource::HostCounter { fallback_frequency_hz: f }
            | CycleSource::MonotonicClockScaled { frequency_hz: f } => {
                if !(f.is_finite() && *f > 0.0) {
                    return Err(Error::invalid(format!(
                        "cycle-source frequency must be positive, got {f}"
                    )));
                }
            }
            CycleSource::Scripted { cycles } => {
                if cycles.is_empty() {
                    return Err(Error::invalid("scripted cycle source needs at least one count"));
                }
            }
        }
        Ok(())
    }

    fn kind(&self) -> Source {
        match self {
            CycleSource::HostCounter { .. } => Source::HostCounter,
            CycleSource::MonotonicClockScaled { .. } => Source::ClockScaled,
            CycleSource::Scripted { .. } => Source::Scripted,
        }
    }
}

#[cfg(target_arch = "x86_64")]
fn timestamp_counter() -> Option<u64> {
    // SAFETY: RDTSC has no memory effects and is available on every
    // x86_64 CPU.
    Some(unsafe { core::arch::x86_64::_rdtsc() })
}

#[cfg(not(target_arch = "x86_64"))]
fn timestamp_counter() -> Option<u64> {
    None
}

fn timed_cycles<F: FnMut()>(source: &CycleSource, mut work: F) -> u64 {
    match source {
        CycleSource::HostCounter { fallback_frequency_hz } => {
            if let Some(start) = timestamp_counter() {
                work();
                timestamp_counter().expect("counter availability is static").saturating_sub(start)
            } else {
                clock_scaled(*fallback_frequency_hz, work)
            }
        }
        CycleSource::MonotonicClockScaled { frequency_hz } => clock_scaled(*frequency_hz, work),
        CycleSource::Scripted { .. } => unreachable!("scripted sources never time real work"),
    }
}

fn clock_scaled<F: FnMut()>(frequency_hz: f64, mut work: F) -> u64 {
    let start = std::time::Instant::now();
    work();
    (start.elapsed().as_secs_f64() * frequency_hz).round() as u64
}

/// One cycles-per-byte measurement: raw per-repetition counts plus the
/// median/median-absolute-deviation summary.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CpbResult {
    pub spec_id: String,
    pub message_len_bytes: usize,
    pub repetitions: usize,
    pub cycles_per_rep: Vec<u64>,
    pub cpb_median: f64,
    pub cpb_mad: f64,
    pub source: Source,
}

/// Median of a nonempty slice; the even case averages the middle pair.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("measurement values are never NaN"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Median absolute deviation around the median.
pub fn median_abs_deviation(values: &[f64]) -> f64 {
    let m = median(values);
    let deviations: Vec<f64> = values.iter().map(|v| (v - m).abs()).collect();
    median(&deviations)
}

/// Run `spec_id` over a `message_len_bytes`-byte message `repetitions`
/// times, taking one cycle count per repetition: counter zeroed, hash run,
/// counter read. One untimed warm-up invocation precedes the loop. The
/// timed loop is strictly sequential.
pub fn measure_cpb(
    spec_id: &str,
    message_len_bytes: usize,
    repetitions: usize,
    source: &CycleSource,
) -> Result<CpbResult> {
    let spec = crate::registry::lookup(spec_id)?;
    if !spec.implemented {
        return Err(Error::NotImplemented(spec_id.to_string()));
    }
    if message_len_bytes == 0 {
        return Err(Error::invalid("cycles per byte is undefined for an empty message"));
    }
    if repetitions == 0 {
        return Err(Error::invalid("at least one repetition is required"));
    }
    source.validate()?;

    let cycles_per_rep: Vec<u64> = match source {
        CycleSource::Scripted { cycles } => {
            (0..repetitions).map(|i| cycles[i % cycles.len()]).collect()
        }
        timed => {
            let message: Vec<u8> = (0..message_len_bytes).map(|i| i as u8).collect();
            // warm-up, untimed
            std::hint::black_box(crate::hash::hash(spec_id, &message)?);
            let mut counts = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let count = timed_cycles(timed, || {
                    let digest = crate::hash::hash(spec_id, std::hint::black_box(&message))
                        .expect("spec checked implemented above");
                    std::hint::black_box(digest);
                });
                counts.push(count);
            }
            counts
        }
    };

    let cpb: Vec<f64> = cycles_per_rep
        .iter()
        .map(|&c| c as f64 / message_len_bytes as f64)
        .collect();
    Ok(CpbResult {
        spec_id: spec_id.to_string(),
        message_len_bytes,
        repetitions,
        cpb_median: median(&cpb),
        cpb_mad: median_abs_deviation(&cpb),
        cycles_per_rep,
        source: source.kind(),
    })
}

/// A cycles-per-byte figure paired with its provenance, as consumed by the
/// ranking metrics.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CpbRecord {
    pub spec_id: String,
    pub cpb: f64,
    pub source: Source,
}

impl From<&CpbResult> for CpbRecord {
    fn from(r: &CpbResult) -> Self {
        CpbRecord { spec_id: r.spec_id.clone(), cpb: r.cpb_median, source: r.source }
    }
}

/// Record a target-measured cycles-per-byte value (from real hardware or a
/// published table) for downstream metrics, flagged `external`. The id
/// must exist in the registry but need not be implemented here.
pub fn ingest_external_cpb(spec_id: &str, cpb_value: f64) -> Result<CpbRecord> {
    if !(cpb_value.is_finite() && cpb_value > 0.0) {
        return Err(Error::invalid(format!(
            "external cycles-per-byte must be positive, got {cpb_value}"
        )));
    }
    let spec = crate::registry::lookup(spec_id)?;
    Ok(CpbRecord { spec_id: spec.id.to_string(), cpb: cpb_value, source: Source::External })
}
