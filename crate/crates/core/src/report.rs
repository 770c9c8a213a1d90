//! Deterministic report rendering: CSV, JSON and SVG artifacts.
//!
//! Every renderer here produces byte-identical output for identical input:
//! field order is fixed, floats go through the shared 6-significant-digit
//! formatter, and the SVG heatmap computes integer geometry and quantized
//! cell shades only. That keeps golden-file tests stable across platforms.

use crate::energy::EnergyResult;
use crate::error::{Error, Result};
use crate::fmt::{format_sig, report_num};
use crate::memfoot::MemoryFootprint;
use crate::metrics::{
    normalize_inverted_minmax, normalize_log_minmax, MeasurementRecord, Metric, NormalizedColumn,
};
use crate::profile::CpbResult;
use crate::table2::Table2Row;

/// One row of a ranking table: the four cost metrics plus a balance score.
#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub spec_id: String,
    pub cpb: f64,
    pub ram_bytes: f64,
    pub rom_bytes: f64,
    pub energy_nj: f64,
    pub erank: f64,
}

impl RankRow {
    /// Keep the published balance score as-is.
    pub fn from_published(row: &Table2Row) -> Self {
        Self {
            spec_id: row.spec_id.clone(),
            cpb: row.cpb,
            ram_bytes: row.ram_bytes,
            rom_bytes: row.rom_bytes,
            energy_nj: row.energy_nj,
            erank: row.erank,
        }
    }

    /// Recompute the balance score from the record's four inputs.
    pub fn from_record(rec: &MeasurementRecord) -> Result<Self> {
        Ok(Self {
            spec_id: rec.spec_id.clone(),
            cpb: rec.cpb,
            ram_bytes: rec.ram_bytes,
            rom_bytes: rec.rom_bytes,
            energy_nj: rec.energy_nj,
            erank: rec.erank()?,
        })
    }

    fn raw(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Cpb => self.cpb,
            Metric::Ram => self.ram_bytes,
            Metric::Rom => self.rom_bytes,
            Metric::Energy => self.energy_nj,
            Metric::Erank => self.erank,
        }
    }
}

/// Published rows to rank rows, keeping the published score column.
pub fn rank_rows_from_published(rows: &[Table2Row]) -> Vec<RankRow> {
    rows.iter().map(RankRow::from_published).collect()
}

/// Measurement records to rank rows, recomputing the score column.
pub fn rank_rows_recomputed(records: &[MeasurementRecord]) -> Result<Vec<RankRow>> {
    records.iter().map(RankRow::from_record).collect()
}

/// Sort best-first: descending balance score, ties broken by identifier.
pub fn sort_by_erank_desc(rows: &mut [RankRow]) {
    rows.sort_by(|a, b| {
        b.erank
            .total_cmp(&a.erank)
            .then_with(|| a.spec_id.cmp(&b.spec_id))
    });
}

/// Header shared by the table/ranking CSV renderers.
pub const TABLE_CSV_HEADER: &str = "spec_id,cpb,ram,rom,energy_nj,erank";

/// Render rows as `spec_id,cpb,ram,rom,energy_nj,erank` CSV, in given order.
pub fn render_table_csv(rows: &[RankRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.spec_id,
            report_num(row.cpb),
            report_num(row.ram_bytes),
            report_num(row.rom_bytes),
            report_num(row.energy_nj),
            report_num(row.erank),
        ));
    }
    out
}

/// Render rows as a JSON array with fixed key order, in given order.
pub fn render_table_json(rows: &[RankRow]) -> String {
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"spec_id\": \"{}\", \"cpb\": {}, \"ram\": {}, \"rom\": {}, \
             \"energy_nj\": {}, \"erank\": {}}}{}\n",
            json_escape(&row.spec_id),
            report_num(row.cpb),
            report_num(row.ram_bytes),
            report_num(row.rom_bytes),
            report_num(row.energy_nj),
            report_num(row.erank),
            if i + 1 < rows.len() { "," } else { "" },
        ));
    }
    out.push_str("]\n");
    out
}

/// A normalized score matrix over rank rows: one column per metric, all
/// scores in `[0, 1]` with higher meaning better.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub spec_ids: Vec<String>,
    pub columns: Vec<HeatmapColumn>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapColumn {
    pub metric: Metric,
    pub raw: Vec<f64>,
    pub scores: Vec<f64>,
    /// True when the column had no spread and every score collapsed to 1.0.
    pub degenerate: bool,
}

/// Build the score matrix: inverted min-max for the cost metrics, log
/// min-max for the balance score. Duplicate identifiers are rejected;
/// a single row degenerates every column to 1.0.
pub fn heatmap_from_rows(rows: &[RankRow]) -> Result<Heatmap> {
    if rows.is_empty() {
        return Err(Error::invalid("heatmap needs at least one row"));
    }
    for (i, row) in rows.iter().enumerate() {
        if rows[..i].iter().any(|r| r.spec_id == row.spec_id) {
            return Err(Error::invalid(format!(
                "duplicate spec_id '{}' in heatmap input",
                row.spec_id
            )));
        }
    }
    let mut columns = Vec::with_capacity(Metric::ALL.len());
    for metric in Metric::ALL {
        let raw: Vec<f64> = rows.iter().map(|r| r.raw(metric)).collect();
        let normalized = if raw.len() < 2 {
            NormalizedColumn {
                values: vec![1.0; raw.len()],
                degenerate: true,
            }
        } else if metric == Metric::Erank {
            normalize_log_minmax(&raw)?
        } else {
            normalize_inverted_minmax(&raw)?
        };
        columns.push(HeatmapColumn {
            metric,
            raw,
            scores: normalized.values,
            degenerate: normalized.degenerate,
        });
    }
    Ok(Heatmap {
        spec_ids: rows.iter().map(|r| r.spec_id.clone()).collect(),
        columns,
    })
}

/// Render raw values plus normalized scores as CSV
/// (`spec_id,cpb,…,erank,cpb_score,…,erank_score`), rows in input order.
pub fn render_report_csv(heatmap: &Heatmap) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    for col in &heatmap.columns {
        out.push_str(&format!(",{}_score", short_metric_name(col.metric)));
    }
    out.push('\n');
    for (i, id) in heatmap.spec_ids.iter().enumerate() {
        out.push_str(id);
        for col in &heatmap.columns {
            out.push(',');
            out.push_str(&report_num(col.raw[i]));
        }
        for col in &heatmap.columns {
            out.push(',');
            out.push_str(&report_num(col.scores[i]));
        }
        out.push('\n');
    }
    out
}

fn short_metric_name(metric: Metric) -> &'static str {
    match metric {
        Metric::Energy => "energy",
        other => other.name(),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Render the score matrix as JSON with fixed key order.
pub fn render_report_json(heatmap: &Heatmap) -> String {
    let mut out = String::from("{\n  \"spec_ids\": [");
    for (i, id) in heatmap.spec_ids.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("\"{}\"", json_escape(id)));
    }
    out.push_str("],\n  \"columns\": [\n");
    for (ci, col) in heatmap.columns.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"metric\": \"{}\", \"raw\": [{}], \"scores\": [{}], \"degenerate\": {}}}{}\n",
            col.metric.name(),
            join_nums(&col.raw),
            join_nums(&col.scores),
            col.degenerate,
            if ci + 1 < heatmap.columns.len() { "," } else { "" },
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

fn join_nums(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| report_num(v))
        .collect::<Vec<_>>()
        .join(", ")
}

const SVG_LABEL_W: usize = 150;
const SVG_HEADER_H: usize = 26;
const SVG_CELL_W: usize = 92;
const SVG_CELL_H: usize = 20;
const SVG_PAD: usize = 8;

/// Shade for a score in `[0, 1]`: higher score, darker cell.
fn score_gray(score: f64) -> u8 {
    let clamped = score.clamp(0.0, 1.0);
    (245.0 - clamped * 200.0).round() as u8
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render the score matrix as an SVG heatmap: one row per function, one
/// column per metric, cell shade proportional to the normalized score
/// (darkest = best). Output bytes are deterministic for fixed input.
pub fn render_heatmap_svg(heatmap: &Heatmap) -> String {
    let ncols = heatmap.columns.len();
    let nrows = heatmap.spec_ids.len();
    let width = SVG_LABEL_W + ncols * SVG_CELL_W + SVG_PAD;
    let height = SVG_HEADER_H + nrows * SVG_CELL_H + SVG_PAD;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"monospace\" font-size=\"11\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    for (ci, col) in heatmap.columns.iter().enumerate() {
        let x = SVG_LABEL_W + ci * SVG_CELL_W + SVG_CELL_W / 2;
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"17\" text-anchor=\"middle\" fill=\"#1a1a1a\">{}</text>\n",
            xml_escape(col.metric.name())
        ));
    }
    for (ri, id) in heatmap.spec_ids.iter().enumerate() {
        let y_cell = SVG_HEADER_H + ri * SVG_CELL_H;
        let y_text = y_cell + 14;
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{y_text}\" text-anchor=\"end\" fill=\"#1a1a1a\">{}</text>\n",
            SVG_LABEL_W - 6,
            xml_escape(id)
        ));
        for (ci, col) in heatmap.columns.iter().enumerate() {
            let x = SVG_LABEL_W + ci * SVG_CELL_W;
            let gray = score_gray(col.scores[ri]);
            let text_fill = if gray < 140 { "#ffffff" } else { "#1a1a1a" };
            out.push_str(&format!(
                "  <rect id=\"cell-{}-{}\" x=\"{x}\" y=\"{y_cell}\" width=\"{}\" height=\"{}\" \
                 fill=\"rgb({gray},{gray},{gray})\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n",
                id,
                col.metric.name(),
                SVG_CELL_W,
                SVG_CELL_H,
            ));
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{y_text}\" text-anchor=\"middle\" fill=\"{text_fill}\">{}</text>\n",
                x + SVG_CELL_W / 2,
                format_sig(col.scores[ri], 3),
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Header used by the cycle-benchmark CSV renderer.
pub const BENCH_CSV_HEADER: &str = "spec_id,message_len,repetitions,cpb_median,cpb_mad,source";

/// Render cycle-benchmark results as CSV, in given order.
pub fn render_bench_csv(results: &[CpbResult]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.spec_id,
            r.message_len_bytes,
            r.repetitions,
            report_num(r.cpb_median),
            report_num(r.cpb_mad),
            r.source,
        ));
    }
    out
}

/// Render cycle-benchmark results as a JSON array with fixed key order.
pub fn render_bench_json(results: &[CpbResult]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in results.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"spec_id\": \"{}\", \"message_len\": {}, \"repetitions\": {}, \
             \"cpb_median\": {}, \"cpb_mad\": {}, \"source\": \"{}\"}}{}\n",
            json_escape(&r.spec_id),
            r.message_len_bytes,
            r.repetitions,
            report_num(r.cpb_median),
            report_num(r.cpb_mad),
            r.source,
            if i + 1 < results.len() { "," } else { "" },
        ));
    }
    out.push_str("]\n");
    out
}

/// Header used by the memory-footprint CSV renderer.
pub const MEM_CSV_HEADER: &str = "spec_id,ram_bytes,rom_bytes,data,bss,stack,text,rodata";

/// Render labeled memory footprints as CSV, in given order.
pub fn render_mem_csv(entries: &[(String, MemoryFootprint)]) -> String {
    let mut out = String::from(MEM_CSV_HEADER);
    out.push('\n');
    for (label, foot) in entries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            label,
            foot.ram_bytes,
            foot.rom_bytes,
            foot.segments.data_bytes,
            foot.segments.bss_bytes,
            foot.stack_bytes,
            foot.segments.text_bytes,
            foot.segments.rodata_bytes,
        ));
    }
    out
}

/// Render labeled memory footprints as a JSON array with fixed key order.
pub fn render_mem_json(entries: &[(String, MemoryFootprint)]) -> String {
    let mut out = String::from("[\n");
    for (i, (label, foot)) in entries.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"spec_id\": \"{}\", \"ram_bytes\": {}, \"rom_bytes\": {}, \"data\": {}, \
             \"bss\": {}, \"stack\": {}, \"text\": {}, \"rodata\": {}}}{}\n",
            json_escape(label),
            foot.ram_bytes,
            foot.rom_bytes,
            foot.segments.data_bytes,
            foot.segments.bss_bytes,
            foot.stack_bytes,
            foot.segments.text_bytes,
            foot.segments.rodata_bytes,
            if i + 1 < entries.len() { "," } else { "" },
        ));
    }
    out.push_str("]\n");
    out
}

/// Render an energy computation as a single JSON object with fixed key order.
pub fn render_energy_json(result: &EnergyResult) -> String {
    format!(
        "{{\"p_rms_w\": {}, \"t_exec_s\": {}, \"energy_j\": {}, \"energy_nj\": {}, \
         \"n_samples\": {}}}\n",
        report_num(result.p_rms_watts),
        report_num(result.t_exec_seconds),
        report_num(result.energy_joules),
        report_num(result.energy_nanojoules()),
        result.n_samples,
    )
}

/// Header used by the energy CSV renderer.
pub const ENERGY_CSV_HEADER: &str = "p_rms_w,t_exec_s,energy_j,energy_nj,n_samples";

/// Render an energy computation as a one-row CSV.
pub fn render_energy_csv(result: &EnergyResult) -> String {
    format!(
        "{ENERGY_CSV_HEADER}\n{},{},{},{},{}\n",
        report_num(result.p_rms_watts),
        report_num(result.t_exec_seconds),
        report_num(result.energy_joules),
        report_num(result.energy_nanojoules()),
        result.n_samples,
    )
}
