//! Text edge-list format.
//!
//! ```text
//! # N=4 n0=2 seed=7 h00=1 h11=1
//! 0 1
//! 2 3
//! ```
//!
//! The header records how the graph was produced; one `u v` pair follows
//! per line with `u < v`, in ascending order. Reals use the shortest
//! representation that parses back to the same `f64`, so writing an
//! imported file reproduces it byte for byte.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::generate::{GenSpec, LabeledGraph};

/// Generation metadata carried in the header line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub seed: u64,
    pub h00: f64,
    pub h11: f64,
}

impl From<&GenSpec> for Provenance {
    fn from(spec: &GenSpec) -> Self {
        Self {
            seed: spec.seed,
            h00: spec.params.h_intra_minority(),
            h11: spec.params.h_intra_majority(),
        }
    }
}

pub fn write_edge_list<W: Write>(mut out: W, graph: &LabeledGraph, prov: &Provenance) -> Result<()> {
    writeln!(
        out,
        "# N={} n0={} seed={} h00={} h11={}",
        graph.n_total(),
        graph.n_minority(),
        prov.seed,
        prov.h00,
        prov.h11
    )?;
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str) -> Result<(usize, usize, Provenance)> {
    let body = line
        .strip_prefix("# ")
        .ok_or_else(|| parse_err(1, "missing '# ' header"))?;
    let mut fields = body.split(' ');
    let mut next = |key: &str| -> Result<&str> {
        let field = fields
            .next()
            .ok_or_else(|| parse_err(1, format!("missing header field {key}")))?;
        field
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| parse_err(1, format!("expected {key}=..., got {field:?}")))
    };
    let bad = |key: &str, v: &str| parse_err(1, format!("bad value for {key}: {v:?}"));
    let n = next("N")?;
    let n_total: usize = n.parse().map_err(|_| bad("N", n))?;
    let n0 = next("n0")?;
    let n_minority: usize = n0.parse().map_err(|_| bad("n0", n0))?;
    let seed = next("seed")?;
    let seed: u64 = seed.parse().map_err(|_| bad("seed", seed))?;
    let h00 = next("h00")?;
    let h00: f64 = h00.parse().map_err(|_| bad("h00", h00))?;
    let h11 = next("h11")?;
    let h11: f64 = h11.parse().map_err(|_| bad("h11", h11))?;
    if fields.next().is_some() {
        return Err(parse_err(1, "trailing header fields"));
    }
    Ok((n_total, n_minority, Provenance { seed, h00, h11 }))
}

/// Reads a canonical edge list. Lines must be strictly ascending pairs
/// `u v` with `u < v < N`.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<(LabeledGraph, Provenance)> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "empty input"))??;
    let (n_total, n_minority, prov) = parse_header(&header)?;
    let mut edges = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        let (u, v) = line
            .split_once(' ')
            .ok_or_else(|| parse_err(line_no, "expected 'u v'"))?;
        let u: usize = u.parse().map_err(|_| parse_err(line_no, format!("bad node {u:?}")))?;
        let v: usize = v.parse().map_err(|_| parse_err(line_no, format!("bad node {v:?}")))?;
        if u >= v || v >= n_total {
            return Err(parse_err(line_no, format!("pair ({u}, {v}) violates u < v < {n_total}")));
        }
        if edges.last().is_some_and(|&last| last >= (u, v)) {
            return Err(parse_err(line_no, "pairs not strictly ascending"));
        }
        edges.push((u, v));
    }
    let graph = LabeledGraph::from_edges(n_total, n_minority, edges)?;
    Ok((graph, prov))
}
