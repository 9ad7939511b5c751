use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Parses a whitespace-separated edge list (SNAP style).
///
/// Lines starting with `#` and blank lines are skipped. Node ids are compacted
/// to `0..N` in order of first appearance; the originals are kept as labels.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: i + 1,
                message: "expected two node ids".into(),
            })?;
            let label: u64 = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("invalid node id {tok:?}"),
            })?;
            Ok(*ids.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            }))
        };
        let u = endpoint()?;
        let v = endpoint()?;
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(Graph::from_edges(labels.len(), edges)?.with_labels(labels))
}

pub fn read_edge_list_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_edge_list(&text)
}

/// One `u v` line per edge using dense ids, `u < v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
