//! Graph and coloring file handling for the CLI.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use tricolor_core::{Coloring, Graph, GraphFormat};

/// Loads a graph file, sniffing the format: DIMACS starts with `c`/`p`
/// lines, anything else is treated as the edge-list format. A `.col`
/// extension forces DIMACS.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = sniff_format(path, &text);
    Graph::load(std::io::Cursor::new(text), format)
        .with_context(|| format!("parsing {}", path.display()))
}

fn sniff_format(path: &Path, text: &str) -> GraphFormat {
    if path.extension().map(|e| e == "col").unwrap_or(false) {
        return GraphFormat::Dimacs;
    }
    for line in text.lines() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        return if trimmed.starts_with("c ")
            || trimmed == "c"
            || trimmed.starts_with("p ")
        {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        };
    }
    GraphFormat::EdgeList
}

/// Writes a coloring as `v c` lines, one per vertex, ascending.
pub fn write_coloring(path: &Path, coloring: &Coloring) -> Result<()> {
    let mut out = String::new();
    for (v, &c) in coloring.assignment().iter().enumerate() {
        out.push_str(&format!("{v} {c}\n"));
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Reads a `v c` file back into a coloring; every vertex of the graph must
/// appear exactly once.
pub fn read_coloring(path: &Path, n: usize) -> Result<Coloring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut assignment = vec![usize::MAX; n];
    for (idx, line) in text.lines().enumerate() {
        let trimmed = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            bail!("line {}: expected \"v c\"", idx + 1);
        }
        let v: usize = toks[0]
            .parse()
            .with_context(|| format!("line {}: bad vertex id", idx + 1))?;
        let c: usize = toks[1]
            .parse()
            .with_context(|| format!("line {}: bad color", idx + 1))?;
        if v >= n {
            bail!("line {}: vertex {v} out of range (n = {n})", idx + 1);
        }
        if assignment[v] != usize::MAX {
            bail!("line {}: vertex {v} assigned twice", idx + 1);
        }
        assignment[v] = c;
    }
    if let Some(v) = assignment.iter().position(|&c| c == usize::MAX) {
        bail!("vertex {v} has no color (partial assignment)");
    }
    Ok(Coloring::from_assignment(assignment))
}
