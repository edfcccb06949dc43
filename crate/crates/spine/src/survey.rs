//! Parallel surveys over ranges of primes and their CSV output.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;
use spine_core::arith::primes_between;
use spine_core::graph::build_graphs;
use spine_core::metrics::{center_row_of, eccentricity_profile, mean_component_diameter};
use spine_core::nullmodel::{sample_center_size, tree_margin, ModelParams};
use spine_core::oracle::{verify_bundle, ConformanceReport, Verdict};

pub const SURVEY_HEADER: [&str; 10] = [
    "p",
    "ell",
    "n_vertices",
    "n_fp_vertices",
    "radius",
    "diameter",
    "center_size",
    "center_fp_count",
    "mean_spine_component_diameter",
    "verdict",
];

/// One CSV row; `None` fields are written empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyRow {
    pub p: u64,
    pub ell: u32,
    pub n_vertices: usize,
    pub n_fp_vertices: usize,
    pub radius: u32,
    pub diameter: u32,
    pub center_size: usize,
    pub center_fp_count: usize,
    pub mean_spine_component_diameter: Option<String>,
    pub verdict: Option<String>,
    #[serde(skip)]
    pub center_contains_1728: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SurveyMode {
    Centers,
    Diameters,
}

/// Primes `p ≥ 5`, `p ≠ ℓ`, in `[min, max]`.
pub fn primes_in(min: u64, max: u64, ell: u32) -> Vec<u64> {
    primes_between(min.max(5), max).into_iter().filter(|&p| p != u64::from(ell)).collect()
}

/// Runs `f` on every prime with `jobs` workers (0 = all cores), keeping
/// input order.
pub fn par_map<T: Send>(
    primes: &[u64],
    jobs: usize,
    f: impl Fn(u64) -> anyhow::Result<T> + Sync + Send,
) -> anyhow::Result<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| primes.par_iter().map(|&p| f(p)).collect())
}

fn verdict_field(r: &ConformanceReport) -> Option<String> {
    match r.verdict {
        Verdict::Routed => None,
        v => Some(v.as_str().to_string()),
    }
}

/// One survey row for `(p, ℓ)`.
pub fn survey_row(p: u64, ell: u32, mode: SurveyMode) -> anyhow::Result<SurveyRow> {
    let b = build_graphs(p, ell)?;
    let c = center_row_of(&b.full)?;
    let report = verify_bundle(&b)?;
    let mean = match mode {
        SurveyMode::Centers => None,
        SurveyMode::Diameters => Some(format!("{:.6}", mean_component_diameter(&b.spine)?.value())),
    };
    Ok(SurveyRow {
        p,
        ell,
        n_vertices: c.n_vertices,
        n_fp_vertices: c.n_fp_vertices,
        radius: c.radius,
        diameter: c.diameter,
        center_size: c.center_size,
        center_fp_count: c.center_fp_count,
        mean_spine_component_diameter: mean,
        verdict: verdict_field(&report),
        center_contains_1728: c.center_contains_1728,
    })
}

/// All rows for a survey, sorted by `p`.
pub fn survey(mode: SurveyMode, ell: u32, min: u64, max: u64, jobs: usize) -> anyhow::Result<Vec<SurveyRow>> {
    let mut primes = primes_in(min, max, ell);
    if mode == SurveyMode::Diameters {
        primes.retain(|p| p % 8 == 7);
    }
    par_map(&primes, jobs, |p| survey_row(p, ell, mode))
}

/// Serialises survey rows with the fixed header.
pub fn survey_csv(rows: &[SurveyRow]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(SURVEY_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(w.into_inner()?)
}

/// A row of the discrete-Gaussian comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelRow {
    pub p: u64,
    pub sampled_center_size: u64,
    pub tree_margin_scaled: String,
}

/// Sampled center sizes and `ε/12` against the radius of `G_2(F̄_p)`.
pub fn model_rows(min: u64, max: u64, params: &ModelParams, jobs: usize) -> anyhow::Result<Vec<ModelRow>> {
    params.validate()?;
    let primes = primes_in(min, max, 2);
    par_map(&primes, jobs, |p| {
        let g = spine_core::graph::build_full_graph(p, 2)?;
        let radius = eccentricity_profile(&g)?.radius.context("full graph is connected")?;
        let eps = tree_margin(g.len() as u64, radius);
        Ok(ModelRow {
            p,
            sampled_center_size: sample_center_size(p, params)?,
            tree_margin_scaled: format!("{:.6}", eps as f64 / 12.0),
        })
    })
}

pub fn model_csv(rows: &[ModelRow]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["p", "sampled_center_size", "tree_margin_scaled"])?;
    }
    Ok(w.into_inner()?)
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so the target is either absent or complete.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_exact() {
        let csv = String::from_utf8(survey_csv(&[]).unwrap()).unwrap();
        assert_eq!(
            csv,
            "p,ell,n_vertices,n_fp_vertices,radius,diameter,center_size,center_fp_count,mean_spine_component_diameter,verdict\n"
        );
    }

    #[test]
    fn p7_row() {
        let r = survey_row(7, 2, SurveyMode::Centers).unwrap();
        assert_eq!((r.n_vertices, r.center_size, r.center_fp_count), (1, 1, 1));
        assert_eq!(r.verdict, None);
    }

    #[test]
    fn rows_are_sorted_and_deterministic() {
        let a = survey(SurveyMode::Diameters, 2, 5, 400, 4).unwrap();
        let b = survey(SurveyMode::Diameters, 2, 5, 400, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].p < w[1].p));
        assert!(a.iter().all(|r| r.p % 8 == 7 && r.mean_spine_component_diameter.is_some()));
        let text = String::from_utf8(survey_csv(&a).unwrap()).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("7,2,1,1,0,0,1,1,0.000000,"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"one\n").unwrap();
        write_atomic(&path, b"two\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
