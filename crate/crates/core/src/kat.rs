//! Known-answer-test files: parsing the NIST lightweight-competition
//! `LWC_HASH_KAT_256.txt` stanza format and checking implementations
//! against it.
//!
//! A stanza is three `Key = value` lines — `Count`, `Msg`, `MD` — followed
//! by a blank line; `Msg` may be empty (zero-length message).

use crate::batch::try_map_slice;
use crate::hash::hash;
use crate::{Error, Result};

/// One parsed stanza.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatVector {
    pub count: u64,
    pub msg: Vec<u8>,
    pub md: Vec<u8>,
}

fn decode_hex(line_no: usize, key: &str, value: &str) -> Result<Vec<u8>> {
    hex::decode(value)
        .map_err(|e| Error::parse(line_no, format!("bad hex in `{key}`: {e}")))
}

/// Parse a whole KAT file. Carriage returns are tolerated; anything else
/// that is not a stanza line is an error carrying its 1-based line number.
pub fn parse_kat(text: &str) -> Result<Vec<KatVector>> {
    let mut vectors = Vec::new();
    let mut count: Option<(usize, u64)> = None;
    let mut msg: Option<Vec<u8>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("expected `Key = value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());

        match key {
            "Count" => {
                if count.is_some() {
                    return Err(Error::parse(line_no, "`Count` repeated before `MD`"));
                }
                let n = value
                    .parse::<u64>()
                    .map_err(|e| Error::parse(line_no, format!("bad `Count`: {e}")))?;
                count = Some((line_no, n));
            }
            "Msg" => {
                if count.is_none() {
                    return Err(Error::parse(line_no, "`Msg` before `Count`"));
                }
                if msg.is_some() {
                    return Err(Error::parse(line_no, "`Msg` repeated before `MD`"));
                }
                msg = Some(decode_hex(line_no, "Msg", value)?);
            }
            "MD" => {
                let (_, n) = count
                    .ok_or_else(|| Error::parse(line_no, "`MD` before `Count`"))?;
                let msg_bytes = msg
                    .take()
                    .ok_or_else(|| Error::parse(line_no, "`MD` before `Msg`"))?;
                let md_bytes = decode_hex(line_no, "MD", value)?;
                if md_bytes.is_empty() {
                    return Err(Error::parse(line_no, "empty `MD`"));
                }
                vectors.push(KatVector { count: n, msg: msg_bytes, md: md_bytes });
                count = None;
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown key `{other}`")));
            }
        }
    }

    if let Some((line_no, n)) = count {
        return Err(Error::parse(
            line_no,
            format!("stanza `Count = {n}` is missing its `Msg`/`MD` lines"),
        ));
    }
    if vectors.is_empty() {
        return Err(Error::parse(1, "no vectors found"));
    }
    Ok(vectors)
}

/// One digest that did not match its expected value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatMismatch {
    pub count: u64,
    pub msg_len: usize,
    pub expected: String,
    pub got: String,
}

/// Outcome of running a vector set against one implementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatReport {
    pub spec_id: String,
    pub total: usize,
    pub mismatches: Vec<KatMismatch>,
}

impl KatReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Hash every vector's message and compare against its expected digest.
pub fn run_kat(spec_id: &str, vectors: &[KatVector]) -> Result<KatReport> {
    crate::registry::lookup(spec_id)?;
    let outcomes = try_map_slice(vectors, |v| {
        let digest = hash(spec_id, &v.msg)?;
        Ok(if digest.bytes == v.md {
            None
        } else {
            Some(KatMismatch {
                count: v.count,
                msg_len: v.msg.len(),
                expected: hex::encode(&v.md),
                got: digest.hex(),
            })
        })
    })?;
    Ok(KatReport {
        spec_id: spec_id.to_string(),
        total: vectors.len(),
        mismatches: outcomes.into_iter().flatten().collect(),
    })
}

/// Parse and run in one step.
pub fn run_kat_text(spec_id: &str, text: &str) -> Result<KatReport> {
    let vectors = parse_kat(text)?;
    run_kat(spec_id, &vectors)
}
