//! Efficiency metrics and cross-function comparison.
//!
//! This module turns raw measurements (cycles per byte, RAM, ROM, energy)
//! into comparable scores:
//!
//! - [`erank`]: a balance score rewarding speed, small memory footprint and
//!   low energy at once. Higher is better.
//! - [`fom`]: a hardware figure of merit (throughput over clock times squared
//!   gate count). Exposed for completeness; not part of default reports since
//!   gate counts are out of scope here.
//! - [`normalize_inverted_minmax`] / [`normalize_log_minmax`]: column
//!   normalizations used to build a 0..=1 heatmap where higher is better.
//! - [`build_report`]: assembles per-metric normalized columns and orderings
//!   for a set of measurement records.
//! - [`compare_to_paper`]: relative deltas of a measured dataset against the
//!   embedded reference dataset.

use std::collections::BTreeSet;
use std::fmt;

use crate::batch;
use crate::error::{Error, Result};
use crate::table2;

/// Where a measurement record came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementSource {
    /// Row of the embedded reference dataset.
    ReferenceDataset,
    /// Measured locally by this tool chain.
    Measured,
    /// Imported from an external capture (e.g. target-board logs).
    External,
}

impl fmt::Display for MeasurementSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeasurementSource::ReferenceDataset => "reference",
            MeasurementSource::Measured => "measured",
            MeasurementSource::External => "external",
        };
        f.write_str(s)
    }
}

/// One benchmarked hash function: identifier plus the four cost metrics.
///
/// Units are fixed: cycles per byte, bytes, bytes, nanojoules. All four
/// values must be strictly positive and finite for score computation.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub spec_id: String,
    /// Cycles per byte.
    pub cpb: f64,
    /// RAM footprint in bytes (.data + .bss + stack).
    pub ram_bytes: f64,
    /// ROM footprint in bytes (.text + .rodata).
    pub rom_bytes: f64,
    /// Energy per hash invocation in nanojoules.
    pub energy_nj: f64,
    pub source: MeasurementSource,
}

impl MeasurementRecord {
    pub fn new(
        spec_id: impl Into<String>,
        cpb: f64,
        ram_bytes: f64,
        rom_bytes: f64,
        energy_nj: f64,
        source: MeasurementSource,
    ) -> Self {
        Self {
            spec_id: spec_id.into(),
            cpb,
            ram_bytes,
            rom_bytes,
            energy_nj,
            source,
        }
    }

    /// All four metric fields must be strictly positive and finite.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("cpb", self.cpb),
            ("ram_bytes", self.ram_bytes),
            ("rom_bytes", self.rom_bytes),
            ("energy_nj", self.energy_nj),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::invalid(format!(
                    "record '{}': {name} must be strictly positive and finite, got {value}",
                    self.spec_id
                )));
            }
        }
        Ok(())
    }

    /// Balance score of this record; see [`erank`].
    pub fn erank(&self) -> Result<f64> {
        erank(self.cpb, self.ram_bytes, self.rom_bytes, self.energy_nj)
    }
}

/// Balance score: `(1e9 / cpb) / ((rom + 2·ram) · energy_nj)`.
///
/// The numerator is throughput-like (scaled inverse cycles per byte), the
/// denominator charges memory (RAM weighted double) and energy. Units are
/// fixed to cycles/byte, bytes and nanojoules; with those units the embedded
/// reference dataset reproduces its published score column.
///
/// Errors with invalid-argument when `cpb` or `energy_nj` is not strictly
/// positive, when `rom + 2·ram` is not strictly positive, or when any input
/// is non-finite.
pub fn erank(cpb: f64, ram_bytes: f64, rom_bytes: f64, energy_nj: f64) -> Result<f64> {
    for (name, value) in [
        ("cpb", cpb),
        ("ram_bytes", ram_bytes),
        ("rom_bytes", rom_bytes),
        ("energy_nj", energy_nj),
    ] {
        if !value.is_finite() {
            return Err(Error::invalid(format!("{name} must be finite, got {value}")));
        }
    }
    if cpb <= 0.0 {
        return Err(Error::invalid(format!(
            "cpb must be strictly positive, got {cpb}"
        )));
    }
    if energy_nj <= 0.0 {
        return Err(Error::invalid(format!(
            "energy_nj must be strictly positive, got {energy_nj}"
        )));
    }
    let mem = rom_bytes + 2.0 * ram_bytes;
    if mem <= 0.0 {
        return Err(Error::invalid(format!(
            "rom_bytes + 2*ram_bytes must be strictly positive, got {mem}"
        )));
    }
    Ok((1e9 / cpb) / (mem * energy_nj))
}

/// Hardware figure of merit: `throughput / (clk · ge²)`.
///
/// `throughput` in bits/s, `clk` in Hz, `ge` in gate equivalents. All inputs
/// must be strictly positive and finite.
pub fn fom(throughput: f64, clk: f64, ge: f64) -> Result<f64> {
    for (name, value) in [("throughput", throughput), ("clk", clk), ("ge", ge)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::invalid(format!(
                "{name} must be strictly positive and finite, got {value}"
            )));
        }
    }
    Ok(throughput / (clk * ge * ge))
}

/// A normalized column in `[0, 1]`, plus a flag marking degenerate input.
///
/// When every input value is equal there is no spread to normalize over;
/// by decision such columns map every element to `1.0` and set `degenerate`
/// so callers can surface a warning instead of failing the whole report.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedColumn {
    pub values: Vec<f64>,
    pub degenerate: bool,
}

fn check_normalize_input(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::invalid(format!(
            "normalization needs at least 2 values, got {}",
            values.len()
        )));
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::invalid(format!(
                "normalization input [{i}] must be finite, got {v}"
            )));
        }
    }
    Ok(())
}

fn min_max(values: &[f64]) -> (f64, f64) {
    let mut min = values[0];
    let mut max = values[0];
    for &v in &values[1..] {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
    }
    (min, max)
}

/// Inverted min-max normalization: `x ↦ 1 − (x − min)/(max − min)`.
///
/// Intended for cost metrics where lower raw values are better: the minimum
/// maps to 1, the maximum to 0, and the ordering is reversed so that higher
/// normalized scores mean better. All-equal input yields all `1.0` with the
/// `degenerate` flag set.
pub fn normalize_inverted_minmax(values: &[f64]) -> Result<NormalizedColumn> {
    check_normalize_input(values)?;
    let (min, max) = min_max(values);
    if min == max {
        return Ok(NormalizedColumn {
            values: vec![1.0; values.len()],
            degenerate: true,
        });
    }
    let span = max - min;
    Ok(NormalizedColumn {
        values: values.iter().map(|&x| 1.0 - (x - min) / span).collect(),
        degenerate: false,
    })
}

/// Which printed form of the log normalization to evaluate.
///
/// The two published presentations of the formula differ; [`Quotient`] is the
/// adopted, order-preserving map onto `[0, 1]`. [`PrintedProduct`] is the
/// alternative as literally printed (`log(x·min)/log(max/min)`), retained
/// only for auditing: it is not bounded to `[0, 1]` unless `min == 1`.
///
/// [`Quotient`]: LogNormForm::Quotient
/// [`PrintedProduct`]: LogNormForm::PrintedProduct
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogNormForm {
    /// `log(x/min) / log(max/min)`; min→0, max→1, order preserved.
    #[default]
    Quotient,
    /// `log(x·min) / log(max/min)`, verbatim alternative form.
    PrintedProduct,
}

/// Log min-max normalization: `x ↦ log(x/min) / log(max/min)`.
///
/// Intended for skewed benefit metrics where higher raw values are better:
/// the log transform compresses extreme values, the min maps to 0, the max
/// to 1, and ordering is preserved. Values must be strictly positive.
/// All-equal input yields all `1.0` with the `degenerate` flag set.
pub fn normalize_log_minmax(values: &[f64]) -> Result<NormalizedColumn> {
    normalize_log_minmax_with(values, LogNormForm::Quotient)
}

/// [`normalize_log_minmax`] with an explicit choice of printed form.
pub fn normalize_log_minmax_with(values: &[f64], form: LogNormForm) -> Result<NormalizedColumn> {
    check_normalize_input(values)?;
    for (i, v) in values.iter().enumerate() {
        if *v <= 0.0 {
            return Err(Error::invalid(format!(
                "log normalization input [{i}] must be strictly positive, got {v}"
            )));
        }
    }
    let (min, max) = min_max(values);
    if min == max {
        return Ok(NormalizedColumn {
            values: vec![1.0; values.len()],
            degenerate: true,
        });
    }
    let denom = (max / min).ln();
    let mapped = match form {
        LogNormForm::Quotient => values.iter().map(|&x| (x / min).ln() / denom).collect(),
        LogNormForm::PrintedProduct => values.iter().map(|&x| (x * min).ln() / denom).collect(),
    };
    Ok(NormalizedColumn {
        values: mapped,
        degenerate: false,
    })
}

/// The metric columns a report can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Cpb,
    Ram,
    Rom,
    Energy,
    Erank,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Cpb,
        Metric::Ram,
        Metric::Rom,
        Metric::Energy,
        Metric::Erank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Cpb => "cpb",
            Metric::Ram => "ram",
            Metric::Rom => "rom",
            Metric::Energy => "energy_nj",
            Metric::Erank => "erank",
        }
    }

    /// Cost metrics rank ascending (smaller is better); the balance score
    /// ranks descending (larger is better).
    pub fn lower_is_better(self) -> bool {
        !matches!(self, Metric::Erank)
    }

    fn extract(self, rec: &MeasurementRecord) -> Result<f64> {
        Ok(match self {
            Metric::Cpb => rec.cpb,
            Metric::Ram => rec.ram_bytes,
            Metric::Rom => rec.rom_bytes,
            Metric::Energy => rec.energy_nj,
            Metric::Erank => rec.erank()?,
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cpb" => Ok(Metric::Cpb),
            "ram" => Ok(Metric::Ram),
            "rom" => Ok(Metric::Rom),
            "energy" | "energy_nj" => Ok(Metric::Energy),
            "erank" => Ok(Metric::Erank),
            other => Err(Error::invalid(format!(
                "unknown metric '{other}' (expected cpb, ram, rom, energy, erank)"
            ))),
        }
    }
}

/// One metric column of a report: raw values, normalized scores and the
/// best-first ordering. All vectors are indexed like `MetricReport::spec_ids`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricColumn {
    pub metric: Metric,
    pub raw: Vec<f64>,
    /// Normalized scores in `[0, 1]`; higher is better for every column.
    pub normalized: Vec<f64>,
    /// True when the raw column had no spread and was mapped to all `1.0`.
    pub degenerate: bool,
    /// Indices into `spec_ids`, best first: ascending raw value for cost
    /// metrics, descending for the balance score. Ties break on `spec_id`.
    pub ordering: Vec<usize>,
}

/// Per-metric normalized view over a set of measurement records.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    /// Record identifiers, in input order.
    pub spec_ids: Vec<String>,
    /// One column per requested metric, in canonical metric order.
    pub columns: Vec<MetricColumn>,
}

impl MetricReport {
    pub fn column(&self, metric: Metric) -> Option<&MetricColumn> {
        self.columns.iter().find(|c| c.metric == metric)
    }

    /// Identifiers of a column in best-first order.
    pub fn ranked_ids(&self, metric: Metric) -> Option<Vec<&str>> {
        let col = self.column(metric)?;
        Some(
            col.ordering
                .iter()
                .map(|&i| self.spec_ids[i].as_str())
                .collect(),
        )
    }
}

fn build_column(records: &[MeasurementRecord], metric: Metric) -> Result<MetricColumn> {
    let mut raw = Vec::with_capacity(records.len());
    for rec in records {
        raw.push(metric.extract(rec)?);
    }
    let normalized = if raw.len() < 2 {
        // A single record has no spread to normalize over; treat like the
        // all-equal case so one-row reports stay total.
        NormalizedColumn {
            values: vec![1.0; raw.len()],
            degenerate: true,
        }
    } else if metric == Metric::Erank {
        normalize_log_minmax(&raw)?
    } else {
        normalize_inverted_minmax(&raw)?
    };

    let mut ordering: Vec<usize> = (0..records.len()).collect();
    ordering.sort_by(|&a, &b| {
        let cmp = raw[a]
            .partial_cmp(&raw[b])
            .expect("raw metric values are finite");
        let cmp = if metric.lower_is_better() {
            cmp
        } else {
            cmp.reverse()
        };
        cmp.then_with(|| records[a].spec_id.cmp(&records[b].spec_id))
    });

    Ok(MetricColumn {
        metric,
        raw,
        normalized: normalized.values,
        degenerate: normalized.degenerate,
        ordering,
    })
}

/// Build per-metric normalized columns and orderings over `records`.
///
/// `metrics` is treated as a set: duplicates collapse, and columns always
/// come out in canonical order (cpb, ram, rom, energy, erank). An empty
/// `metrics` slice selects all five. Cost metrics are normalized with the
/// inverted min-max map, the balance score with the log min-max map, so in
/// every column higher normalized scores mean better.
///
/// Errors with invalid-argument when `records` is empty, contains a
/// duplicate `spec_id`, or contains a non-positive metric field.
pub fn build_report(records: &[MeasurementRecord], metrics: &[Metric]) -> Result<MetricReport> {
    if records.is_empty() {
        return Err(Error::invalid("report needs at least one record"));
    }
    let mut seen = BTreeSet::new();
    for rec in records {
        rec.validate()?;
        if !seen.insert(rec.spec_id.as_str()) {
            return Err(Error::invalid(format!(
                "duplicate spec_id '{}' in report input",
                rec.spec_id
            )));
        }
    }

    let requested: BTreeSet<Metric> = if metrics.is_empty() {
        Metric::ALL.into_iter().collect()
    } else {
        metrics.iter().copied().collect()
    };
    let selected: Vec<Metric> = Metric::ALL
        .into_iter()
        .filter(|m| requested.contains(m))
        .collect();

    let columns = batch::try_map_slice(&selected, |&metric| build_column(records, metric))?;

    Ok(MetricReport {
        spec_ids: records.iter().map(|r| r.spec_id.clone()).collect(),
        columns,
    })
}

/// Relative delta of one field: `(measured − reference) / reference`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDelta {
    pub field: &'static str,
    pub measured: f64,
    pub reference: f64,
    pub relative_delta: f64,
}

/// Deltas for one matched identifier, covering the four metric fields plus
/// the balance score recomputed from each side's own inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub spec_id: String,
    pub deltas: Vec<FieldDelta>,
}

impl ComparisonRow {
    pub fn delta(&self, field: &str) -> Option<&FieldDelta> {
        self.deltas.iter().find(|d| d.field == field)
    }

    /// Largest absolute relative delta across all fields.
    pub fn max_abs_delta(&self) -> f64 {
        self.deltas
            .iter()
            .map(|d| d.relative_delta.abs())
            .fold(0.0, f64::max)
    }
}

/// Result of comparing a measured dataset against a reference dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    /// Rows for measured identifiers found in the reference, in input order.
    pub rows: Vec<ComparisonRow>,
    /// Measured identifiers with no reference counterpart, in input order.
    pub unmatched: Vec<String>,
}

/// Compare measured records against an explicit reference dataset.
///
/// Each measured record is matched to the reference by `spec_id`; matched
/// rows carry relative deltas per field plus the balance score recomputed
/// from each side's inputs (so comparing a dataset against itself yields
/// exactly zero everywhere). Unmatched identifiers are reported, not fatal.
pub fn compare_to_reference(
    measured: &[MeasurementRecord],
    reference: &[MeasurementRecord],
) -> Result<ComparisonTable> {
    let mut rows = Vec::new();
    let mut unmatched = Vec::new();
    for rec in measured {
        rec.validate()?;
        let Some(ref_rec) = reference.iter().find(|r| r.spec_id == rec.spec_id) else {
            unmatched.push(rec.spec_id.clone());
            continue;
        };
        ref_rec.validate()?;
        let pairs = [
            ("cpb", rec.cpb, ref_rec.cpb),
            ("ram", rec.ram_bytes, ref_rec.ram_bytes),
            ("rom", rec.rom_bytes, ref_rec.rom_bytes),
            ("energy_nj", rec.energy_nj, ref_rec.energy_nj),
            ("erank", rec.erank()?, ref_rec.erank()?),
        ];
        let deltas = pairs
            .into_iter()
            .map(|(field, measured, reference)| FieldDelta {
                field,
                measured,
                reference,
                relative_delta: (measured - reference) / reference,
            })
            .collect();
        rows.push(ComparisonRow {
            spec_id: rec.spec_id.clone(),
            deltas,
        });
    }
    Ok(ComparisonTable { rows, unmatched })
}

/// Compare measured records against the embedded reference dataset.
pub fn compare_to_paper(measured: &[MeasurementRecord]) -> Result<ComparisonTable> {
    compare_to_reference(measured, &table2::embedded_records()?)
}

/// Header expected by [`parse_measurements_csv`].
pub const MEASUREMENTS_CSV_HEADER: &str = "spec_id,cpb,ram,rom,energy_nj";

/// Parse a measurements CSV (`spec_id,cpb,ram,rom,energy_nj`) into records
/// tagged [`MeasurementSource::External`].
///
/// Blank lines and `#` comments are ignored; errors carry 1-based line
/// numbers; duplicate identifiers and non-positive values are rejected.
pub fn parse_measurements_csv(text: &str) -> Result<Vec<MeasurementRecord>> {
    let mut records: Vec<MeasurementRecord> = Vec::new();
    let mut header_seen = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != MEASUREMENTS_CSV_HEADER {
                return Err(Error::parse(
                    line_no,
                    format!("expected header '{MEASUREMENTS_CSV_HEADER}', got '{line}'"),
                ));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::parse(
                line_no,
                format!("expected 5 comma-separated fields, got {}", fields.len()),
            ));
        }
        let spec_id = fields[0].trim();
        if spec_id.is_empty() {
            return Err(Error::parse(line_no, "empty spec_id"));
        }
        if records.iter().any(|r| r.spec_id == spec_id) {
            return Err(Error::parse(
                line_no,
                format!("duplicate spec_id '{spec_id}'"),
            ));
        }
        let mut values = [0.0f64; 4];
        for (slot, (name, text)) in values.iter_mut().zip(
            ["cpb", "ram", "rom", "energy_nj"].iter().zip(&fields[1..]),
        ) {
            let value: f64 = text.trim().parse().map_err(|_| {
                Error::parse(line_no, format!("invalid {name} value '{text}'"))
            })?;
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::parse(
                    line_no,
                    format!("{name} must be strictly positive, got {value}"),
                ));
            }
            *slot = value;
        }
        records.push(MeasurementRecord::new(
            spec_id,
            values[0],
            values[1],
            values[2],
            values[3],
            MeasurementSource::External,
        ));
    }
    if !header_seen {
        return Err(Error::parse(1, "empty measurements file: missing header"));
    }
    if records.is_empty() {
        return Err(Error::parse(1, "measurements file has a header but no rows"));
    }
    Ok(records)
}
