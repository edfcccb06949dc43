//! JSON records for conformance reports.

use serde::Serialize;
use spine_core::oracle::{ConformanceReport, Verdict};

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct NewEdgeRecord {
    pub a: u64,
    pub b: u64,
    pub multiplicity: (u32, u32),
    pub attaching: bool,
}

#[derive(Debug, Serialize)]
pub struct ReportRecord {
    pub p: u64,
    pub ell: u32,
    pub verdict: &'static str,
    pub case: String,
    pub resolution: Option<String>,
    pub fp_vertices: usize,
    pub spine_vertices: usize,
    pub full_vertices: usize,
    pub folds: usize,
    pub stacked_pairs: usize,
    pub new_edges: Vec<NewEdgeRecord>,
    /// Only the mismatching fields.
    pub diff: Vec<CheckRecord>,
}

impl From<&ConformanceReport> for ReportRecord {
    fn from(r: &ConformanceReport) -> Self {
        let c = &r.computed;
        ReportRecord {
            p: r.p,
            ell: r.ell,
            verdict: r.verdict.as_str(),
            case: r.case.clone(),
            resolution: r.resolution.clone(),
            fp_vertices: c.fp_vertices,
            spine_vertices: c.spine_vertices,
            full_vertices: c.full_vertices,
            folds: c.folds.len(),
            stacked_pairs: c.stacked_pairs,
            new_edges: c
                .new_edges
                .iter()
                .map(|e| NewEdgeRecord {
                    a: e.a.value(),
                    b: e.b.value(),
                    multiplicity: e.spine_multiplicity,
                    attaching: e.attaching,
                })
                .collect(),
            diff: r
                .failures()
                .map(|f| CheckRecord { field: f.name, expected: f.expected.clone(), computed: f.computed.clone(), ok: f.ok })
                .collect(),
        }
    }
}

/// One human-readable line per report.
pub fn report_line(r: &ConformanceReport) -> String {
    let mut line = format!("p={} ell={} {}", r.p, r.ell, r.verdict.as_str());
    match r.verdict {
        Verdict::IndeterminateResolved => {
            if let Some(res) = &r.resolution {
                line.push_str(": ");
                line.push_str(res);
            }
        }
        Verdict::Fail => {
            let parts: Vec<String> =
                r.failures().map(|f| format!("{} expected {} got {}", f.name, f.expected, f.computed)).collect();
            line.push_str(": ");
            line.push_str(&parts.join("; "));
        }
        Verdict::Routed => line.push_str(": computed directly"),
        Verdict::Pass => {}
    }
    line
}
