//! Embedded reference dataset: published AVR measurements for 24 lightweight
//! hash functions (cycles per byte, RAM, ROM, energy, balance score).
//!
//! The dataset ships as a CSV compiled into the library so ranking and
//! comparison work offline; an alternative file with the same layout can be
//! loaded from disk to override it (the command-line tool wires this to the
//! `LWHBENCH_TABLE2` environment variable).

use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::{MeasurementRecord, MeasurementSource};

/// The embedded dataset, verbatim CSV.
pub const EMBEDDED_CSV: &str = include_str!("table2.csv");

/// Expected CSV header.
pub const HEADER: &str = "spec_id,cpb,ram,rom,energy_nj,erank";

/// One dataset row: the four cost metrics plus the published balance score.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub spec_id: String,
    pub cpb: f64,
    pub ram_bytes: f64,
    pub rom_bytes: f64,
    pub energy_nj: f64,
    /// Published balance score, kept for cross-checking against values
    /// recomputed from the four input columns.
    pub erank: f64,
}

impl Table2Row {
    /// Drop the published score, keeping the four metric inputs.
    pub fn to_record(&self) -> MeasurementRecord {
        MeasurementRecord::new(
            self.spec_id.clone(),
            self.cpb,
            self.ram_bytes,
            self.rom_bytes,
            self.energy_nj,
            MeasurementSource::ReferenceDataset,
        )
    }
}

fn parse_field(line_no: usize, name: &str, text: &str) -> Result<f64> {
    let value: f64 = text.trim().parse().map_err(|_| {
        Error::parse(line_no, format!("invalid {name} value '{text}'"))
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::parse(
            line_no,
            format!("{name} must be strictly positive, got {value}"),
        ));
    }
    Ok(value)
}

/// Parse dataset CSV text (header `spec_id,cpb,ram,rom,energy_nj,erank`).
///
/// Blank lines and `#` comment lines are ignored. Errors carry 1-based line
/// numbers; duplicate identifiers and non-positive values are rejected.
pub fn parse_rows(text: &str) -> Result<Vec<Table2Row>> {
    let mut rows: Vec<Table2Row> = Vec::new();
    let mut header_seen = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != HEADER {
                return Err(Error::parse(
                    line_no,
                    format!("expected header '{HEADER}', got '{line}'"),
                ));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::parse(
                line_no,
                format!("expected 6 comma-separated fields, got {}", fields.len()),
            ));
        }
        let spec_id = fields[0].trim();
        if spec_id.is_empty() {
            return Err(Error::parse(line_no, "empty spec_id"));
        }
        if rows.iter().any(|r| r.spec_id == spec_id) {
            return Err(Error::parse(
                line_no,
                format!("duplicate spec_id '{spec_id}'"),
            ));
        }
        rows.push(Table2Row {
            spec_id: spec_id.to_string(),
            cpb: parse_field(line_no, "cpb", fields[1])?,
            ram_bytes: parse_field(line_no, "ram", fields[2])?,
            rom_bytes: parse_field(line_no, "rom", fields[3])?,
            energy_nj: parse_field(line_no, "energy_nj", fields[4])?,
            erank: parse_field(line_no, "erank", fields[5])?,
        });
    }
    if !header_seen {
        return Err(Error::parse(1, "empty dataset: missing header"));
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "dataset has a header but no rows"));
    }
    Ok(rows)
}

/// Rows of the embedded dataset.
pub fn embedded_rows() -> Result<Vec<Table2Row>> {
    parse_rows(EMBEDDED_CSV)
}

/// Embedded dataset as measurement records (published score dropped).
pub fn embedded_records() -> Result<Vec<MeasurementRecord>> {
    Ok(embedded_rows()?.iter().map(Table2Row::to_record).collect())
}

/// Load a dataset override with the same CSV layout from disk.
pub fn load_rows(path: impl AsRef<Path>) -> Result<Vec<Table2Row>> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_rows(&text)
}

/// Rows to records, dropping the published score column.
pub fn rows_to_records(rows: &[Table2Row]) -> Vec<MeasurementRecord> {
    rows.iter().map(Table2Row::to_record).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_dataset_has_24_unique_positive_rows() {
        let rows = embedded_rows().unwrap();
        assert_eq!(rows.len(), 24);
        let mut ids: Vec<&str> = rows.iter().map(|r| r.spec_id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 24);
        for row in &rows {
            assert!(row.cpb > 0.0 && row.ram_bytes > 0.0 && row.rom_bytes > 0.0);
            assert!(row.energy_nj > 0.0 && row.erank > 0.0);
        }
    }

    #[test]
    fn embedded_dataset_matches_published_anchor_rows() {
        let rows = embedded_rows().unwrap();
        let get = |id: &str| rows.iter().find(|r| r.spec_id == id).unwrap();

        let skinny = get("skinny-tk2");
        assert_eq!(
            (skinny.cpb, skinny.ram_bytes, skinny.rom_bytes),
            (204.0, 559.0, 6806.0)
        );
        assert_eq!((skinny.energy_nj, skinny.erank), (83.87, 7.38));

        let clx = get("clx");
        assert_eq!((clx.cpb, clx.ram_bytes, clx.rom_bytes), (1116.0, 57.0, 630.0));
        assert_eq!((clx.energy_nj, clx.erank), (476.28, 2.53));

        let blake2s = get("blake2s");
        assert_eq!(blake2s.rom_bytes, 28704.0);
        assert_eq!(blake2s.erank, 0.0061);

        let ascon = get("ascon");
        assert_eq!((ascon.cpb, ascon.ram_bytes), (2531.0, 153.0));
    }

    #[test]
    fn embedded_ids_resolve_in_the_registry() {
        let rows = embedded_rows().unwrap();
        for row in &rows {
            assert!(
                crate::registry::lookup(&row.spec_id).is_ok(),
                "dataset id '{}' missing from registry",
                row.spec_id
            );
        }
    }

    #[test]
    fn records_drop_published_score_but_keep_inputs() {
        let rows = embedded_rows().unwrap();
        let records = rows_to_records(&rows);
        assert_eq!(records.len(), rows.len());
        for (row, rec) in rows.iter().zip(&records) {
            assert_eq!(rec.spec_id, row.spec_id);
            assert_eq!(rec.cpb, row.cpb);
            assert_eq!(rec.source, MeasurementSource::ReferenceDataset);
        }
    }

    #[test]
    fn parser_reports_line_numbers_and_rejects_bad_rows() {
        let err = parse_rows("nonsense\n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");

        let text = format!("{HEADER}\nascon,2531,153,2648,1099.3,0.12\nascon,1,1,1,1,1\n");
        let err = parse_rows(&text).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(err.to_string().contains("duplicate"), "{err}");

        let text = format!("{HEADER}\nascon,-5,153,2648,1099.3,0.12\n");
        let err = parse_rows(&text).unwrap_err();
        assert!(err.to_string().contains("strictly positive"), "{err}");

        let text = format!("{HEADER}\nascon,2531,153\n");
        let err = parse_rows(&text).unwrap_err();
        assert!(err.to_string().contains("6 comma-separated"), "{err}");

        assert!(parse_rows("").is_err());
        assert!(parse_rows(&format!("{HEADER}\n")).is_err());
    }

    #[test]
    fn parser_tolerates_comments_and_blank_lines() {
        let text = format!("# comment\n\n{HEADER}\n# another\nascon,2531,153,2648,1099.3,0.12\n\n");
        let rows = parse_rows(&text).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].spec_id, "ascon");
    }

    #[test]
    fn load_rows_reads_override_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("override.csv");
        std::fs::write(&path, format!("{HEADER}\nascon,100,50,200,10.5,1.5\n")).unwrap();
        let rows = load_rows(&path).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].cpb, 100.0);
        assert!(load_rows(dir.path().join("missing.csv")).is_err());
    }
}
