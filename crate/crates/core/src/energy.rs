//! Energy per execution from normalized current-shunt traces.
//!
//! A capture tool hands us ADC samples normalized to [-0.5, +0.5]. Each
//! sample maps to a real shunt voltage via the ADC reference and amplifier
//! gain, to instantaneous power via Ohm's law against the supply rail, and
//! the whole trace reduces to RMS power. Execution time comes from a cycle
//! count and the device clock; energy is their product:
//!
//!   v      = sample * v_adc_ref / gain_factor
//!   p      = (v / r_shunt) * v_sup
//!   p_rms  = sqrt(mean(p^2))
//!   t_exec = cycles / f_clk
//!   e      = p_rms * t_exec
//!
//! Constants are carried at full precision; nothing is pre-rounded.

use std::path::Path;

use crate::{batch, Error, Result};

/// Magic header of the binary trace format (followed by raw little-endian
/// 32-bit floats).
pub const TRACE_MAGIC: &[u8; 8] = b"LWHTRC01";

/// Capture-chain constants.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CaptureConfig {
    /// ADC reference voltage (volts).
    pub v_adc_ref: f64,
    /// Linear amplifier gain the samples were scaled by.
    pub gain_factor: f64,
    /// Current-sense shunt resistance (ohms).
    pub r_shunt: f64,
    /// Device supply voltage (volts).
    pub v_sup: f64,
    /// Device clock (hertz).
    pub f_clk: f64,
}

impl Default for CaptureConfig {
    fn default() -> Self {
        CaptureConfig {
            v_adc_ref: 1.0,
            gain_factor: 5.0,
            r_shunt: 49.9,
            v_sup: 3.3,
            f_clk: 7_372_800.0,
        }
    }
}

impl CaptureConfig {
    /// Interpret a gain given in decibels: gain_factor = 10^(dB/20).
    /// The default linear 5.0 reproduces the documented arithmetic; a
    /// "5 dB" reading of the same setup yields 10^(5/20) ~= 1.778 instead.
    pub fn with_gain_db(mut self, db: f64) -> Self {
        self.gain_factor = 10f64.powf(db / 20.0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("v_adc_ref", self.v_adc_ref),
            ("gain_factor", self.gain_factor),
            ("r_shunt", self.r_shunt),
            ("v_sup", self.v_sup),
            ("f_clk", self.f_clk),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(format!(
                    "capture config field {name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

fn check_sample(index: Option<usize>, sample: f64) -> Result<()> {
    if (-0.5..=0.5).contains(&sample) {
        Ok(())
    } else {
        let place = index.map(|i| format!(" at index {i}")).unwrap_or_default();
        Err(Error::invalid(format!(
            "sample{place} is outside the normalized ADC range [-0.5, 0.5]: {sample}"
        )))
    }
}

/// Actual shunt voltage for one normalized sample.
pub fn to_actual_voltage(sample: f64, config: &CaptureConfig) -> Result<f64> {
    config.validate()?;
    check_sample(None, sample)?;
    Ok(sample * config.v_adc_ref / config.gain_factor)
}

/// Instantaneous power for one normalized sample.
pub fn instantaneous_power(sample: f64, config: &CaptureConfig) -> Result<f64> {
    let v = to_actual_voltage(sample, config)?;
    Ok(v / config.r_shunt * config.v_sup)
}

/// A validated trace: every sample within the normalized ADC range.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTrace {
    samples: Vec<f64>,
    config: CaptureConfig,
}

impl PowerTrace {
    pub fn new(samples: Vec<f64>, config: CaptureConfig) -> Result<Self> {
        config.validate()?;
        for (i, &s) in samples.iter().enumerate() {
            check_sample(Some(i), s)?;
        }
        Ok(PowerTrace { samples, config })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn config(&self) -> &CaptureConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Root-mean-square power over the whole trace.
pub fn rms_power(trace: &PowerTrace) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::invalid("cannot compute RMS power of an empty trace"));
    }
    let c = &trace.config;
    let scale = c.v_adc_ref / c.gain_factor / c.r_shunt * c.v_sup;
    let sum_sq = batch::sum_f64_by(trace.samples(), |&s| {
        let p = s * scale;
        p * p
    });
    Ok((sum_sq / trace.len() as f64).sqrt())
}

/// Seconds spent executing `cycles` clock cycles.
pub fn execution_time(cycles: u64, config: &CaptureConfig) -> f64 {
    cycles as f64 / config.f_clk
}

/// RMS power, execution time, and their product.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EnergyResult {
    pub p_rms_watts: f64,
    pub t_exec_seconds: f64,
    pub energy_joules: f64,
    pub n_samples: usize,
}

impl EnergyResult {
    /// Joules expressed in nanojoules (exactly `energy_joules * 1e9`).
    pub fn energy_nanojoules(&self) -> f64 {
        self.energy_joules * 1e9
    }
}

/// Combine a trace and a cycle count into an energy figure.
pub fn energy(trace: &PowerTrace, cycles: u64) -> Result<EnergyResult> {
    let p_rms_watts = rms_power(trace)?;
    let t_exec_seconds = execution_time(cycles, &trace.config);
    Ok(EnergyResult {
        p_rms_watts,
        t_exec_seconds,
        energy_joules: p_rms_watts * t_exec_seconds,
        n_samples: trace.len(),
    })
}

/// Parse the text trace format: one decimal sample per line; blank lines
/// and `#` comments are skipped.
pub fn parse_trace_text(text: &str) -> Result<Vec<f64>> {
    let mut samples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value = line.parse::<f64>().map_err(|_| {
            Error::parse(idx + 1, format!("expected one decimal sample, got `{line}`"))
        })?;
        samples.push(value);
    }
    Ok(samples)
}

/// Parse the binary trace format: the [`TRACE_MAGIC`] header followed by
/// little-endian 32-bit floats.
pub fn parse_trace_binary(bytes: &[u8]) -> Result<Vec<f64>> {
    let body = bytes
        .strip_prefix(TRACE_MAGIC.as_slice())
        .ok_or_else(|| Error::parse(1, "binary trace is missing the LWHTRC01 magic header"))?;
    if body.len() % 4 != 0 {
        return Err(Error::parse(
            1,
            format!("binary trace body of {} bytes is not a whole number of f32 samples", body.len()),
        ));
    }
    Ok(body
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
        .collect())
}

/// Load a trace file, auto-detecting binary (magic header) vs text.
pub fn load_trace(path: impl AsRef<Path>, config: CaptureConfig) -> Result<PowerTrace> {
    let bytes = std::fs::read(path.as_ref())?;
    let samples = if bytes.starts_with(TRACE_MAGIC) {
        parse_trace_binary(&bytes)?
    } else {
        let text = String::from_utf8(bytes).map_err(|_| {
            Error::parse(1, "trace file is neither LWHTRC01 binary nor UTF-8 text")
        })?;
        parse_trace_text(&text)?
    };
    PowerTrace::new(samples, config)
}
