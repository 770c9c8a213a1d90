//! GCC `.su` stack-usage files: one `file:line:col:function<TAB>bytes<TAB>
//! qualifier` record per line, reduced to a worst-case stack bound.
//!
//! Without call-graph information the bound is the largest single frame;
//! [`StackUsage::with_call_graph`] upgrades it to the deepest call-path
//! sum. A `dynamic,bounded` qualifier carries a usable bound and is
//! treated as bounded.

use std::collections::HashMap;

use crate::{Error, Result};

/// How per-function frames were reduced to one worst-case number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum StackPolicy {
    /// Largest single frame (no call-graph data available).
    MaxFrame,
    /// Sum of frames along the deepest path of a caller/callee graph.
    CallPathSum,
}

impl std::fmt::Display for StackPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StackPolicy::MaxFrame => "max-frame",
            StackPolicy::CallPathSum => "call-path-sum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FrameQualifier {
    Static,
    Dynamic,
    Bounded,
}

/// One function's frame record.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SuEntry {
    pub function: String,
    pub frame_bytes: u64,
    pub qualifier: FrameQualifier,
}

/// All frame records of a translation unit plus the reduced bound.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StackUsage {
    pub entries: Vec<SuEntry>,
    pub worst_case_bytes: u64,
    pub policy: StackPolicy,
}

fn parse_qualifier(line_no: usize, text: &str) -> Result<FrameQualifier> {
    match text {
        "static" => Ok(FrameQualifier::Static),
        "dynamic" => Ok(FrameQualifier::Dynamic),
        // the compiler proved a bound, so the byte column is usable
        "bounded" | "dynamic,bounded" => Ok(FrameQualifier::Bounded),
        other => Err(Error::parse(line_no, format!("unknown stack qualifier `{other}`"))),
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<SuEntry> {
    // tab-separated primary form; fall back to whitespace splitting from
    // the right so function signatures containing spaces stay intact
    let (location, bytes_tok, qual_tok) = if line.contains('\t') {
        let fields: Vec<&str> = line.split('\t').filter(|f| !f.is_empty()).collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected `location<TAB>bytes<TAB>qualifier`, got {} fields", fields.len()),
            ));
        }
        (fields[0], fields[1], fields[2])
    } else {
        let missing = || Error::parse(line_no, "expected `location bytes qualifier`");
        let (rest, qual) = line.trim_end().rsplit_once(char::is_whitespace).ok_or_else(missing)?;
        let (loc, bytes) = rest.trim_end().rsplit_once(char::is_whitespace).ok_or_else(missing)?;
        (loc.trim_end(), bytes, qual)
    };

    // location is file:line:col:function; the function part may itself
    // contain colons (C++ scope operators)
    let mut pieces = location.splitn(4, ':');
    let (_file, _line, _col, function) =
        match (pieces.next(), pieces.next(), pieces.next(), pieces.next()) {
            (Some(f), Some(l), Some(c), Some(name)) if !name.is_empty() => (f, l, c, name),
            _ => {
                return Err(Error::parse(
                    line_no,
                    format!("location `{location}` is not file:line:col:function"),
                ))
            }
        };

    let frame_bytes = bytes_tok
        .parse::<u64>()
        .map_err(|_| Error::parse(line_no, format!("malformed byte count `{bytes_tok}`")))?;
    Ok(SuEntry {
        function: function.to_string(),
        frame_bytes,
        qualifier: parse_qualifier(line_no, qual_tok)?,
    })
}

/// Parse a `.su` file; the initial bound is the max-frame reduction.
pub fn parse_su(su_text: &str) -> Result<StackUsage> {
    let mut entries = Vec::new();
    for (idx, raw) in su_text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        entries.push(parse_line(idx + 1, line)?);
    }
    let worst_case_bytes = entries.iter().map(|e| e.frame_bytes).max().unwrap_or(0);
    Ok(StackUsage { entries, worst_case_bytes, policy: StackPolicy::MaxFrame })
}

impl StackUsage {
    /// Re-derive the bound as the deepest path of `caller callee` edges,
    /// counting each node's frame once per occurrence on the path.
    /// Functions missing from the `.su` records cost zero. Recursion makes
    /// the bound unbounded and is rejected.
    pub fn with_call_graph(&self, graph_text: &str) -> Result<StackUsage> {
        let mut edges: HashMap<&str, Vec<&str>> = HashMap::new();
        let mut nodes: Vec<&str> = Vec::new();
        for (idx, raw) in graph_text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (caller, callee) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::parse(
                        idx + 1,
                        format!("expected `caller callee`, got `{line}`"),
                    ))
                }
            };
            edges.entry(caller).or_default().push(callee);
            nodes.push(caller);
            nodes.push(callee);
        }

        let frames: HashMap<&str, u64> =
            self.entries.iter().map(|e| (e.function.as_str(), e.frame_bytes)).collect();
        // functions that appear in no edge still bound the stack alone
        for e in &self.entries {
            nodes.push(e.function.as_str());
        }
        nodes.sort_unstable();
        nodes.dedup();

        // depth-first with memoization; `visiting` marks the current path
        // for cycle detection
        fn deepest<'a>(
            node: &'a str,
            edges: &HashMap<&'a str, Vec<&'a str>>,
            frames: &HashMap<&'a str, u64>,
            memo: &mut HashMap<&'a str, u64>,
            visiting: &mut Vec<&'a str>,
        ) -> Result<u64> {
            if let Some(&known) = memo.get(node) {
                return Ok(known);
            }
            if visiting.contains(&node) {
                return Err(Error::invalid(format!(
                    "call graph contains a cycle through `{node}`; stack bound is undefined"
                )));
            }
            visiting.push(node);
            let mut deepest_callee = 0;
            for callee in edges.get(node).map(Vec::as_slice).unwrap_or(&[]) {
                deepest_callee = deepest_callee.max(deepest(callee, edges, frames, memo, visiting)?);
            }
            visiting.pop();
            let total = frames.get(node).copied().unwrap_or(0) + deepest_callee;
            memo.insert(node, total);
            Ok(total)
        }

        let mut memo = HashMap::new();
        let mut worst = 0;
        for node in nodes {
            worst = worst.max(deepest(node, &edges, &frames, &mut memo, &mut Vec::new())?);
        }
        Ok(StackUsage {
            entries: self.entries.clone(),
            worst_case_bytes: worst,
            policy: StackPolicy::CallPathSum,
        })
    }
}
