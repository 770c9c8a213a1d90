//! GNU linker map parsing: section sizes bucketed into the four segments
//! that matter for footprint arithmetic.
//!
//! Only top-level (column-0) section records are summed — in GNU map
//! output these carry the totals of their indented input records, so
//! counting both would double-count. Orphan sub-sections promoted to
//! top level (`.text.main`, `.bss.buf`, ...) are attributed to their
//! parent segment by name prefix. Long section names wrap onto the next
//! line; the parser stitches those records back together.

use crate::{Error, Result};

/// Byte totals of the program segments found in a linker map.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct MapSegments {
    pub data_bytes: u64,
    pub bss_bytes: u64,
    pub text_bytes: u64,
    pub rodata_bytes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Segment {
    Data,
    Bss,
    Text,
    Rodata,
}

/// `.text` matches itself and `.text.foo`, but not `.textfoo`.
fn classify(name: &str) -> Option<Segment> {
    let parent = name.split('.').nth(1)?;
    match parent {
        "data" => Some(Segment::Data),
        "bss" => Some(Segment::Bss),
        "text" => Some(Segment::Text),
        "rodata" => Some(Segment::Rodata),
        _ => None,
    }
}

/// Size tokens are hexadecimal when `0x`-prefixed, decimal otherwise.
fn parse_size(line_no: usize, token: &str) -> Result<u64> {
    let parsed = if let Some(hex) = token.strip_prefix("0x").or_else(|| token.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        token.parse::<u64>()
    };
    parsed.map_err(|_| Error::parse(line_no, format!("malformed size field `{token}`")))
}

fn looks_numeric(token: &str) -> bool {
    token.starts_with("0x") || token.starts_with("0X") || token.chars().all(|c| c.is_ascii_digit())
}

/// Sum the `.data*`, `.bss*`, `.text*` and `.rodata*` top-level records of
/// a GNU linker map.
pub fn parse_map(map_text: &str) -> Result<MapSegments> {
    if map_text.trim().is_empty() {
        return Err(Error::parse(1, "empty map file"));
    }

    let mut segments = MapSegments::default();
    // a column-0 record whose name was too long to share a line with its
    // address/size columns
    let mut pending: Option<(usize, Segment)> = None;

    let mut add = |line_no: usize, seg: Segment, size: u64| -> Result<()> {
        let slot = match seg {
            Segment::Data => &mut segments.data_bytes,
            Segment::Bss => &mut segments.bss_bytes,
            Segment::Text => &mut segments.text_bytes,
            Segment::Rodata => &mut segments.rodata_bytes,
        };
        *slot = slot
            .checked_add(size)
            .ok_or_else(|| Error::parse(line_no, "segment total overflows a 64-bit byte count"))?;
        Ok(())
    };

    for (idx, line) in map_text.lines().enumerate() {
        let line_no = idx + 1;
        let indented = line.starts_with([' ', '\t']);
        let tokens: Vec<&str> = line.split_whitespace().collect();

        if let Some((name_line, seg)) = pending {
            // continuation line: address then size
            if indented && tokens.len() >= 2 && looks_numeric(tokens[0]) {
                let size = parse_size(line_no, tokens[1])?;
                add(line_no, seg, size)?;
                pending = None;
                continue;
            }
            return Err(Error::parse(
                name_line,
                "section record is missing its address/size continuation line",
            ));
        }

        if indented || tokens.is_empty() {
            continue; // input-section records are covered by their output totals
        }
        let name = tokens[0];
        if !name.starts_with('.') {
            continue; // memory-configuration tables, symbols, commands
        }
        let Some(seg) = classify(name) else {
            continue; // .comment, .debug_*, .noinit, ...
        };
        match tokens.len() {
            1 => pending = Some((line_no, seg)),
            2 => {
                return Err(Error::parse(
                    line_no,
                    format!("section record `{name}` is missing its size field"),
                ))
            }
            _ => {
                let size = parse_size(line_no, tokens[2])?;
                add(line_no, seg, size)?;
            }
        }
    }

    if let Some((name_line, _)) = pending {
        return Err(Error::parse(
            name_line,
            "section record is missing its address/size continuation line",
        ));
    }
    Ok(segments)
}
