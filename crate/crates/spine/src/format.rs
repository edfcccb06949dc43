//! Line-oriented text and DOT serialisation of the three graphs.
//!
//! Text format:
//!
//! ```text
//! # spine p=29 ell=2 s^2=2
//! v 0 0
//! v 1 2
//! e 0 1 3
//! ```
//!
//! Vertices of `G_ℓ(F_p)` carry `c4 c6` and, for `p ≡ 3 (mod 4)`, a
//! `surface`/`floor` tag. Labels of F_p² elements are `a+b*s`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context};
use spine_core::graph::{FpIsogenyGraph, IsogenyMultigraph, Level};

/// Which graph a file describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FieldKind {
    /// `G_ℓ(F_p)`.
    Fp,
    /// `G_ℓ(F̄_p)`.
    Fpbar,
    /// `S_ℓ^p`.
    Spine,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Fp => "fp",
            FieldKind::Fpbar => "fpbar",
            FieldKind::Spine => "spine",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Text,
    Dot,
}

fn header(kind: FieldKind, p: u64, ell: u32, nonresidue: u64) -> String {
    format!("# {} p={p} ell={ell} s^2={nonresidue}\n", kind.name())
}

fn nonresidue_of(p: u64) -> anyhow::Result<u64> {
    Ok(spine_core::arith::FieldContext::new(p)?.nonresidue().value())
}

/// Text form of `G_ℓ(F̄_p)` or the spine, with directed multiplicities.
pub fn multigraph_text(g: &IsogenyMultigraph, kind: FieldKind) -> anyhow::Result<String> {
    let mut out = header(kind, g.p(), g.ell(), nonresidue_of(g.p())?);
    for (i, j) in g.vertices().iter().enumerate() {
        writeln!(out, "v {i} {j}")?;
    }
    for (i, k, m) in g.edges() {
        writeln!(out, "e {i} {k} {m}")?;
    }
    Ok(out)
}

fn level_name(l: Level) -> &'static str {
    match l {
        Level::Surface => "surface",
        Level::Floor => "floor",
    }
}

/// Text form of `G_ℓ(F_p)` with undirected edges, duals identified.
pub fn fp_graph_text(g: &FpIsogenyGraph) -> anyhow::Result<String> {
    let mut out = header(FieldKind::Fp, g.p(), g.ell(), nonresidue_of(g.p())?);
    for (i, v) in g.vertices().iter().enumerate() {
        let t = v.invariants;
        write!(out, "v {i} {} {} {}", t.j, t.c4, t.c6)?;
        if let Some(l) = v.level {
            write!(out, " {}", level_name(l))?;
        }
        out.push('\n');
    }
    for (a, b, m) in g.undirected_edges() {
        writeln!(out, "e {a} {b} {m}")?;
    }
    Ok(out)
}

fn dot_escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

/// DOT form of `G_ℓ(F̄_p)` or the spine.
pub fn multigraph_dot(g: &IsogenyMultigraph, kind: FieldKind) -> String {
    let mut out = format!("digraph {}_{}_{} {{\n", kind.name(), g.p(), g.ell());
    for (i, j) in g.vertices().iter().enumerate() {
        let shape = if j.is_base() { "box" } else { "ellipse" };
        let _ = writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", dot_escape(&j.to_string()));
    }
    for (i, k, m) in g.edges() {
        let _ = writeln!(out, "  n{i} -> n{k} [label=\"{m}\"];");
    }
    out.push_str("}\n");
    out
}

/// DOT form of `G_ℓ(F_p)`.
pub fn fp_graph_dot(g: &FpIsogenyGraph) -> String {
    let mut out = format!("graph fp_{}_{} {{\n", g.p(), g.ell());
    for (i, v) in g.vertices().iter().enumerate() {
        let t = v.invariants;
        let tag = v.level.map(|l| format!(" {}", level_name(l))).unwrap_or_default();
        let _ = writeln!(out, "  n{i} [label=\"{} ({}, {}){tag}\"];", t.j, t.c4, t.c6);
    }
    for (a, b, m) in g.undirected_edges() {
        let _ = writeln!(out, "  n{a} -- n{b} [label=\"{m}\"];");
    }
    out.push_str("}\n");
    out
}

/// A graph read back from the text format.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedGraph {
    pub header: BTreeMap<String, String>,
    pub kind: String,
    /// `(id, label, extra fields)`.
    pub vertices: Vec<(usize, String, Vec<String>)>,
    pub edges: Vec<(usize, usize, u32)>,
}

/// Parses the text format.
pub fn parse_text(input: &str) -> anyhow::Result<ParsedGraph> {
    let mut g = ParsedGraph::default();
    for (n, line) in input.lines().enumerate() {
        let lineno = n + 1;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None => continue,
            Some("#") => {
                for (i, f) in fields.enumerate() {
                    match f.split_once('=') {
                        Some((k, v)) => {
                            g.header.insert(k.to_string(), v.to_string());
                        }
                        None if i == 0 => g.kind = f.to_string(),
                        None => {}
                    }
                }
            }
            Some("v") => {
                let id = fields.next().context(format!("line {lineno}: missing vertex id"))?.parse()?;
                if id != g.vertices.len() {
                    bail!("line {lineno}: vertex ids must be consecutive");
                }
                let label = fields.next().context(format!("line {lineno}: missing label"))?.to_string();
                g.vertices.push((id, label, fields.map(str::to_string).collect()));
            }
            Some("e") => {
                let mut num = |what: &str| -> anyhow::Result<u64> {
                    Ok(fields.next().context(format!("line {lineno}: missing {what}"))?.parse()?)
                };
                let (a, b, m) = (num("source")? as usize, num("target")? as usize, num("multiplicity")? as u32);
                if a >= g.vertices.len() || b >= g.vertices.len() {
                    bail!("line {lineno}: edge refers to an unknown vertex");
                }
                g.edges.push((a, b, m));
            }
            Some(other) => bail!("line {lineno}: unknown record `{other}`"),
        }
    }
    Ok(g)
}
