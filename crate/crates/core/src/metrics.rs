//! Distances, eccentricities, radius, diameter and center.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, GraphError};
use crate::graph::{build_full_graph, IsogenyMultigraph};

/// Directed BFS distances from `source`; `None` marks unreachable vertices.
pub fn distances(g: &IsogenyMultigraph, source: usize) -> Result<Vec<Option<u32>>, GraphError> {
    if source >= g.len() {
        return Err(GraphError::UnknownVertex(alloc::format!("index {source}")));
    }
    let mut dist = vec![None; g.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have a distance");
        for &(w, _) in g.out_edges(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Eccentricity data of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricsReport {
    /// Eccentricity of each vertex within its own component.
    pub eccentricity: Vec<u32>,
    /// Defined when every component is strongly connected.
    pub radius: Option<u32>,
    pub diameter: Option<u32>,
    /// Vertices of minimal eccentricity; empty when the radius is undefined.
    pub center: Vec<usize>,
    /// Components, each sorted, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Diameter of each component, `None` if it is not strongly connected.
    pub component_diameters: Vec<Option<u32>>,
}

impl MetricsReport {
    /// Number of center vertices whose j-invariant lies in F_p.
    pub fn center_fp_count(&self, g: &IsogenyMultigraph) -> usize {
        self.center.iter().filter(|&&v| g.vertices()[v].is_base()).count()
    }
}

/// Eccentricities, radius, diameter, center and component diameters.
pub fn eccentricity_profile(g: &IsogenyMultigraph) -> Result<MetricsReport, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let components = g.components();
    let mut eccentricity = vec![0u32; g.len()];
    let mut component_diameters = Vec::with_capacity(components.len());
    for comp in &components {
        let mut strong = true;
        let mut diam = 0;
        for &v in comp {
            let d = distances(g, v)?;
            let mut ecc = 0;
            for &w in comp {
                match d[w] {
                    Some(x) => ecc = ecc.max(x),
                    None => strong = false,
                }
            }
            eccentricity[v] = ecc;
            diam = diam.max(ecc);
        }
        component_diameters.push(strong.then_some(diam));
    }
    let all_strong = component_diameters.iter().all(Option::is_some);
    let (radius, diameter, center) = if all_strong {
        let r = *eccentricity.iter().min().expect("nonempty");
        let d = *eccentricity.iter().max().expect("nonempty");
        let center = (0..g.len()).filter(|&v| eccentricity[v] == r).collect();
        (Some(r), Some(d), center)
    } else {
        (None, None, Vec::new())
    };
    Ok(MetricsReport { eccentricity, radius, diameter, center, components, component_diameters })
}

/// Mean of the component diameters as an exact ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeanDiameter {
    pub total: u64,
    pub components: u64,
}

impl MeanDiameter {
    pub fn value(&self) -> f64 {
        self.total as f64 / self.components as f64
    }
}

/// Mean diameter over the components of `g`.
pub fn mean_component_diameter(g: &IsogenyMultigraph) -> Result<MeanDiameter, GraphError> {
    let report = eccentricity_profile(g)?;
    let mut total = 0u64;
    for d in &report.component_diameters {
        total += u64::from(d.ok_or_else(|| GraphError::Inconsistent("component not strongly connected".into()))?);
    }
    Ok(MeanDiameter { total, components: report.component_diameters.len() as u64 })
}

/// One row of the center survey over `G_ℓ(F̄_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterRow {
    pub p: u64,
    pub n_vertices: usize,
    pub n_fp_vertices: usize,
    pub radius: u32,
    pub diameter: u32,
    pub center_size: usize,
    pub center_fp_count: usize,
    /// Whether `j = 1728` is a center vertex.
    pub center_contains_1728: bool,
}

/// Center statistics of `G_ℓ(F̄_p)`.
pub fn center_survey_row(p: u64, ell: u32) -> Result<CenterRow, Error> {
    let g = build_full_graph(p, ell)?;
    center_row_of(&g)
}

/// Center statistics of an already built `G_ℓ(F̄_p)`.
pub fn center_row_of(g: &IsogenyMultigraph) -> Result<CenterRow, Error> {
    let m = eccentricity_profile(g)?;
    let j1728 = g.vertices().iter().position(|j| j.is_base() && j.a().value() == 1728 % g.p());
    Ok(CenterRow {
        p: g.p(),
        n_vertices: g.len(),
        n_fp_vertices: g.vertices().iter().filter(|j| j.is_base()).count(),
        radius: m.radius.ok_or(GraphError::Inconsistent("full graph is connected".into()))?,
        diameter: m.diameter.ok_or(GraphError::Inconsistent("full graph is connected".into()))?,
        center_size: m.center.len(),
        center_fp_count: m.center_fp_count(g),
        center_contains_1728: j1728.is_some_and(|v| m.center.contains(&v)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldContext, Fp2};
    use crate::graph::build_spine;

    fn path(n: u64) -> IsogenyMultigraph {
        let ctx = FieldContext::new(101).unwrap();
        let vs: Vec<Fp2> = (0..n).map(|i| ctx.fp2(i, 0)).collect();
        let mut es = Vec::new();
        for w in vs.windows(2) {
            es.push((w[0], w[1], 1));
            es.push((w[1], w[0], 1));
        }
        IsogenyMultigraph::from_edges(101, 2, vs, es).unwrap()
    }

    #[test]
    fn path_metrics() {
        let m = eccentricity_profile(&path(5)).unwrap();
        assert_eq!(m.eccentricity, vec![4, 3, 2, 3, 4]);
        assert_eq!((m.radius, m.diameter), (Some(2), Some(4)));
        assert_eq!(m.center, vec![2]);
    }

    #[test]
    fn one_way_edge_is_not_strong() {
        let ctx = FieldContext::new(101).unwrap();
        let (a, b) = (ctx.fp2(1, 0), ctx.fp2(2, 0));
        let g = IsogenyMultigraph::from_edges(101, 2, [a, b], [(a, b, 1)]).unwrap();
        let m = eccentricity_profile(&g).unwrap();
        assert_eq!(m.radius, None);
        assert_eq!(m.component_diameters, vec![None]);
        assert!(mean_component_diameter(&g).is_err());
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = IsogenyMultigraph::from_edges(101, 2, [], []).unwrap();
        assert_eq!(eccentricity_profile(&g), Err(GraphError::Empty));
    }

    #[test]
    fn spine_of_p23() {
        let s = build_spine(23, 2).unwrap();
        let m = eccentricity_profile(&s).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(m.component_diameters, vec![Some(2)]);
    }

    #[test]
    fn small_center_rows() {
        let r = center_survey_row(11, 2).unwrap();
        assert_eq!((r.n_vertices, r.n_fp_vertices), (2, 2));
        assert!(r.center_contains_1728);
        let r = center_survey_row(101, 2).unwrap();
        assert_eq!(r.n_vertices, 9);
        assert!(r.radius <= r.diameter && r.diameter <= 2 * r.radius);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn radius_diameter_bounds(i in 2usize..120) {
                let p = crate::arith::primes_between(5, 700)[i % 120];
                let g = build_full_graph(p, 2).unwrap();
                let m = eccentricity_profile(&g).unwrap();
                let (r, d) = (m.radius.unwrap(), m.diameter.unwrap());
                prop_assert!(r <= d && d <= 2 * r);
                prop_assert!(!m.center.is_empty());
                let s = build_spine(p, 2).unwrap();
                let ms = eccentricity_profile(&s).unwrap();
                prop_assert!(ms.component_diameters.iter().all(Option::is_some));
            }
        }
    }
}
