//! Edge-list and clustering file formats.
//!
//! Edge lists: one `src<ws>dst` pair per line, `#` comments, UTF-8, gzip
//! transparent for `.gz` paths. Clustering files: one `node_id<ws>cluster_id`
//! line per node in sorted node-id order. Graph export uses canonically
//! sorted endpoint pairs so round-trips are bit-exact.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use citeclust_core::{Clustering, DegreeStats, Graph};
use flate2::read::GzDecoder;

use crate::error::{CliError, CliResult};

fn open_reader(path: &Path) -> CliResult<Box<dyn BufRead>> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|ext| ext == "gz") {
        Ok(Box::new(BufReader::new(GzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}

fn data_lines(path: &Path, mut reader: impl BufRead) -> CliResult<Vec<(usize, String)>> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn split_pair<'a>(path: &Path, line_no: usize, line: &'a str) -> CliResult<(&'a str, &'a str)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(CliError::Input(format!(
            "{}:{line_no}: expected two whitespace-separated fields, got '{line}'",
            path.display()
        ))),
    }
}

/// Load and clean an edge list.
pub fn load_graph(path: &Path) -> CliResult<(Graph, DegreeStats)> {
    let reader = open_reader(path)?;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (line_no, line) in data_lines(path, reader)? {
        let (a, b) = split_pair(path, line_no, &line)?;
        pairs.push((a.to_string(), b.to_string()));
    }
    Graph::from_edges(pairs).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Export a graph canonically: every edge as `min max` (string order of the
/// external ids), lines sorted. Reload + re-export is byte-exact.
pub fn write_graph(path: &Path, graph: &Graph) -> CliResult<()> {
    let mut lines: Vec<(String, String)> = graph
        .edges()
        .map(|(u, v)| {
            let a = graph.external_id(u as usize).to_string();
            let b = graph.external_id(v as usize).to_string();
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    lines.sort();
    let mut out = String::new();
    for (a, b) in lines {
        out.push_str(&a);
        out.push(' ');
        out.push_str(&b);
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Write a clustering as `node_id cluster_id` lines in sorted node-id order.
pub fn write_clustering(path: &Path, graph: &Graph, clustering: &Clustering) -> CliResult<()> {
    let mut order: Vec<usize> = (0..graph.node_count()).collect();
    order.sort_by(|&a, &b| graph.external_id(a).cmp(graph.external_id(b)));
    let mut out = String::new();
    for v in order {
        out.push_str(graph.external_id(v));
        out.push(' ');
        out.push_str(&clustering.label(v).to_string());
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Load a clustering file against a graph; the node sets must match exactly.
pub fn load_clustering(path: &Path, graph: &Graph) -> CliResult<Clustering> {
    let reader = open_reader(path)?;
    let index: BTreeMap<&str, usize> = (0..graph.node_count())
        .map(|v| (graph.external_id(v), v))
        .collect();
    let mut raw: Vec<Option<i64>> = vec![None; graph.node_count()];
    for (line_no, line) in data_lines(path, reader)? {
        let (id, label) = split_pair(path, line_no, &line)?;
        let label: i64 = label.parse().map_err(|_| {
            CliError::Input(format!(
                "{}:{line_no}: cluster id '{label}' is not an integer",
                path.display()
            ))
        })?;
        let Some(&node) = index.get(id) else {
            return Err(CliError::Mismatch(format!(
                "{}: node '{id}' is not part of the graph",
                path.display()
            )));
        };
        if raw[node].is_some() {
            return Err(CliError::Mismatch(format!(
                "{}: node '{id}' is assigned twice",
                path.display()
            )));
        }
        raw[node] = Some(label);
    }
    if let Some(missing) = raw.iter().position(|l| l.is_none()) {
        return Err(CliError::Mismatch(format!(
            "{}: node '{}' has no cluster assignment",
            path.display(),
            graph.external_id(missing)
        )));
    }
    Ok(Clustering::from_labels(&dense_labels(
        raw.into_iter().map(|l| l.unwrap()),
    )))
}

/// Load several clustering files over the same node set (no graph needed);
/// nodes are aligned by sorted id. Labels are the file names.
pub fn load_clusterings_aligned(
    paths: &[std::path::PathBuf],
) -> CliResult<Vec<(String, Clustering)>> {
    let mut reference: Option<Vec<String>> = None;
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let reader = open_reader(path)?;
        let mut map: BTreeMap<String, i64> = BTreeMap::new();
        for (line_no, line) in data_lines(path, reader)? {
            let (id, label) = split_pair(path, line_no, &line)?;
            let label: i64 = label.parse().map_err(|_| {
                CliError::Input(format!(
                    "{}:{line_no}: cluster id '{label}' is not an integer",
                    path.display()
                ))
            })?;
            if map.insert(id.to_string(), label).is_some() {
                return Err(CliError::Mismatch(format!(
                    "{}: node '{id}' is assigned twice",
                    path.display()
                )));
            }
        }
        let ids: Vec<String> = map.keys().cloned().collect();
        match &reference {
            None => reference = Some(ids),
            Some(expected) => {
                if *expected != ids {
                    return Err(CliError::Mismatch(format!(
                        "{}: node set differs from {}",
                        path.display(),
                        paths[0].display()
                    )));
                }
            }
        }
        let clustering = Clustering::from_labels(&dense_labels(map.into_values()));
        let label = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        out.push((label, clustering));
    }
    Ok(out)
}

/// Map arbitrary integer labels to dense u32 ids by first appearance.
fn dense_labels(raw: impl Iterator<Item = i64>) -> Vec<u32> {
    let mut remap: BTreeMap<i64, u32> = BTreeMap::new();
    let mut out = Vec::new();
    for l in raw {
        let next = remap.len() as u32;
        out.push(*remap.entry(l).or_insert(next));
    }
    out
}

/// Write `content` ensuring a trailing newline.
pub fn write_text(path: &Path, content: &str) -> CliResult<()> {
    let mut file = File::create(path)?;
    file.write_all(content.as_bytes())?;
    if !content.ends_with('\n') {
        file.write_all(b"\n")?;
    }
    Ok(())
}
