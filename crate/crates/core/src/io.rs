//! Edge-list text format.
//!
//! First line `n m d` (vertex count, edge count, degree bound), then `m`
//! lines `u v` with 0-based ids, whitespace separated, LF line endings.
//! Lines starting with `#` are comments.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    read_graph(std::io::BufReader::new(file))
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    write_graph(g, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn read_graph(reader: impl BufRead) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let parse = |field: Option<&str>, name: &str| -> Result<usize> {
            field
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("missing {name}"),
                })?
                .parse::<usize>()
                .map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad {name}: {e}"),
                })
        };
        match header {
            None => {
                let n = parse(fields.next(), "vertex count")?;
                let m = parse(fields.next(), "edge count")?;
                let d = parse(fields.next(), "degree bound")?;
                if fields.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "trailing fields in header".into(),
                    });
                }
                header = Some((n, m, d));
                edges.reserve(m);
            }
            Some(_) => {
                let u = parse(fields.next(), "endpoint")?;
                let v = parse(fields.next(), "endpoint")?;
                if fields.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "trailing fields in edge line".into(),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m, d) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::build(n, &edges, d)
}

pub fn write_graph(g: &Graph, out: &mut impl Write) -> Result<()> {
    writeln!(
        out,
        "{} {} {}",
        g.vertex_count(),
        g.edge_count(),
        g.degree_bound()
    )?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
