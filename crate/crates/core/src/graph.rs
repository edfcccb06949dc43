//! The isogeny graphs `G_ℓ(F_p)`, `G_ℓ(F̄_p)`, the spine `S_ℓ^p`, and the
//! analysis of how the first projects onto the last.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{FieldContext, FieldElement, Fp, Fp2};
use crate::curves::{smallest_supersingular_j, twists_from_j, InvariantTriple, WeierstrassCurve};
use crate::error::{Error, GraphError};
use crate::modpoly::ReducedModularPolynomial;

fn check_parameters(p: u64, ell: u32) -> Result<(), GraphError> {
    if !(ell == 2 || ell == 3) || p < 5 || u64::from(ell) == p || !crate::arith::is_prime(p) {
        return Err(GraphError::InvalidParameters { p, ell });
    }
    Ok(())
}

/// A directed multigraph on j-invariants, stored as sorted vertices and
/// per-vertex out-edge lists `(target, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyMultigraph {
    p: u64,
    ell: u32,
    vertices: Vec<Fp2>,
    out: Vec<Vec<(usize, u32)>>,
}

impl IsogenyMultigraph {
    /// Builds a graph from a vertex set and directed edges with
    /// multiplicity; repeated edges accumulate.
    pub fn from_edges(
        p: u64,
        ell: u32,
        vertices: impl IntoIterator<Item = Fp2>,
        edges: impl IntoIterator<Item = (Fp2, Fp2, u32)>,
    ) -> Result<Self, GraphError> {
        let set: BTreeSet<Fp2> = vertices.into_iter().collect();
        let vertices: Vec<Fp2> = set.into_iter().collect();
        let mut acc: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); vertices.len()];
        for (a, b, m) in edges {
            let i = vertices.binary_search(&a).map_err(|_| GraphError::UnknownVertex(format!("{a}")))?;
            let k = vertices.binary_search(&b).map_err(|_| GraphError::UnknownVertex(format!("{b}")))?;
            if m > 0 {
                *acc[i].entry(k).or_insert(0) += m;
            }
        }
        let out = acc.into_iter().map(|m| m.into_iter().collect()).collect();
        Ok(IsogenyMultigraph { p, ell, vertices, out })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn vertices(&self) -> &[Fp2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, j: Fp2) -> Option<usize> {
        self.vertices.binary_search(&j).ok()
    }

    pub fn out_edges(&self, i: usize) -> &[(usize, u32)] {
        &self.out[i]
    }

    /// Directed multiplicity of `i → k`.
    pub fn multiplicity(&self, i: usize, k: usize) -> u32 {
        self.out[i].binary_search_by_key(&k, |e| e.0).map(|pos| self.out[i][pos].1).unwrap_or(0)
    }

    /// Total out-multiplicity of `i`.
    pub fn out_degree(&self, i: usize) -> u32 {
        self.out[i].iter().map(|e| e.1).sum()
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.multiplicity(i, i) > 0
    }

    /// All directed edges `(source, target, multiplicity)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.out.iter().enumerate().flat_map(|(i, es)| es.iter().map(move |&(k, m)| (i, k, m)))
    }

    /// Whether `i → k` exists exactly when `k → i` does.
    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(i, k, _)| self.multiplicity(k, i) > 0)
    }

    /// Weakly connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (i, k, _) in self.edges() {
            undirected[i].push(k);
            undirected[k].push(i);
        }
        components_of(&undirected)
    }

    /// The subgraph induced on the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(&Fp2) -> bool) -> Self {
        let vertices: Vec<Fp2> = self.vertices.iter().copied().filter(|j| keep(j)).collect();
        let edges: Vec<(Fp2, Fp2, u32)> = self
            .edges()
            .map(|(i, k, m)| (self.vertices[i], self.vertices[k], m))
            .filter(|(a, b, _)| keep(a) && keep(b))
            .collect();
        IsogenyMultigraph::from_edges(self.p, self.ell, vertices, edges).expect("induced edges stay inside")
    }
}

fn components_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `G_ℓ(F̄_p)`, explored breadth-first from the smallest supersingular
/// `j ∈ F_p`.
pub fn build_full_graph(p: u64, ell: u32) -> Result<IsogenyMultigraph, Error> {
    check_parameters(p, ell)?;
    let ctx = FieldContext::new(p)?;
    full_graph_in(&ctx, ell)
}

fn full_graph_in(ctx: &FieldContext, ell: u32) -> Result<IsogenyMultigraph, Error> {
    let phi = ReducedModularPolynomial::new(ell, ctx)?;
    let seed = ctx.lift(smallest_supersingular_j(ctx));
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    let mut edges = Vec::new();
    while let Some(j) = queue.pop_front() {
        for (k, m) in phi.neighbors(j)? {
            edges.push((j, k, m));
            if seen.insert(k) {
                queue.push_back(k);
            }
        }
    }
    Ok(IsogenyMultigraph::from_edges(ctx.p(), ell, seen, edges)?)
}

/// The subgraph of `G_ℓ(F̄_p)` induced on `j ∈ F_p`.
pub fn spine(full: &IsogenyMultigraph) -> IsogenyMultigraph {
    full.induced(|j| j.is_base())
}

/// `S_ℓ^p` built from scratch.
pub fn build_spine(p: u64, ell: u32) -> Result<IsogenyMultigraph, Error> {
    Ok(spine(&build_full_graph(p, ell)?))
}

/// Position of a curve in a 2-volcano when `p ≡ 3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Surface,
    Floor,
}

/// A rational ℓ-isogeny leaving a vertex of `G_ℓ(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    /// x-coordinate of the kernel generator.
    pub x0: Fp,
    pub target: usize,
}

/// One F_p-isomorphism class of supersingular curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpVertex {
    pub curve: WeierstrassCurve,
    pub invariants: InvariantTriple,
    pub level: Option<Level>,
}

/// `G_ℓ(F_p)`: F_p-classes of supersingular curves and rational
/// ℓ-isogenies between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpIsogenyGraph {
    p: u64,
    ell: u32,
    vertices: Vec<FpVertex>,
    arcs: Vec<Vec<Arc>>,
    by_j: BTreeMap<Fp, Vec<usize>>,
}

impl FpIsogenyGraph {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn vertices(&self) -> &[FpVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arcs(&self, i: usize) -> &[Arc] {
        &self.arcs[i]
    }

    pub fn j(&self, i: usize) -> Fp {
        self.vertices[i].invariants.j
    }

    /// Vertex indices with invariant `j`.
    pub fn classes_of(&self, j: Fp) -> &[usize] {
        self.by_j.get(&j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The j-invariants present, ascending.
    pub fn j_values(&self) -> impl Iterator<Item = Fp> + '_ {
        self.by_j.keys().copied()
    }

    /// Directed multiplicity of `i → k`.
    pub fn multiplicity(&self, i: usize, k: usize) -> u32 {
        self.arcs[i].iter().filter(|a| a.target == k).count() as u32
    }

    /// Undirected edges `(a, b, multiplicity)` with `a ≤ b`, duals identified.
    pub fn undirected_edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let mut targets: BTreeMap<usize, u32> = BTreeMap::new();
            for a in &self.arcs[i] {
                *targets.entry(a.target).or_insert(0) += 1;
            }
            for (k, m) in targets {
                if k > i {
                    out.push((i, k, m.max(self.multiplicity(k, i))));
                } else if k == i {
                    out.push((i, i, m.div_ceil(2)));
                }
            }
        }
        out
    }

    /// Whether some vertex has an isogeny to itself.
    pub fn has_loops(&self) -> bool {
        (0..self.len()).any(|i| self.arcs[i].iter().any(|a| a.target == i))
    }

    /// Whether two inequivalent isogenies join the same two distinct vertices.
    pub fn has_multi_edges(&self) -> bool {
        (0..self.len()).any(|i| {
            let mut t: Vec<usize> = self.arcs[i].iter().map(|a| a.target).filter(|&k| k != i).collect();
            t.sort_unstable();
            t.windows(2).any(|w| w[0] == w[1])
        })
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (i, arcs) in self.arcs.iter().enumerate() {
            for a in arcs {
                adj[i].push(a.target);
                adj[a.target].push(i);
            }
        }
        components_of(&adj)
    }

    /// The vertex holding the quadratic twist of vertex `i`.
    pub fn twist_of(&self, i: usize, ctx: &FieldContext) -> Result<usize, GraphError> {
        let t = self.vertices[i].curve.quadratic_twist(ctx);
        self.locate(&t)
    }

    /// The vertex F_p-isomorphic to `e`.
    pub fn locate(&self, e: &WeierstrassCurve) -> Result<usize, GraphError> {
        self.classes_of(e.j_invariant())
            .iter()
            .copied()
            .find(|&k| self.vertices[k].curve.fp_isomorphic(e))
            .ok_or_else(|| GraphError::UnknownVertex(format!("{:?}", e.invariants())))
    }
}

/// `G_ℓ(F_p)`.
pub fn build_fp_graph(p: u64, ell: u32) -> Result<FpIsogenyGraph, Error> {
    Ok(build_graphs(p, ell)?.fp)
}

fn fp_graph_from_js(ctx: &FieldContext, ell: u32, js: &[Fp]) -> Result<FpIsogenyGraph, Error> {
    let mut curves = Vec::with_capacity(2 * js.len());
    for &j in js {
        let (e, t) = twists_from_j(ctx, j);
        curves.push(e);
        curves.push(t);
    }
    let tag = ctx.p() % 4 == 3;
    let mut vertices: Vec<FpVertex> = curves
        .into_iter()
        .map(|curve| FpVertex {
            curve,
            invariants: curve.invariants(),
            level: tag.then(|| if curve.has_full_two_torsion() { Level::Surface } else { Level::Floor }),
        })
        .collect();
    vertices.sort_by_key(|v| v.invariants);
    let mut by_j: BTreeMap<Fp, Vec<usize>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        by_j.entry(v.invariants.j).or_default().push(i);
    }
    let mut g = FpIsogenyGraph { p: ctx.p(), ell, vertices, arcs: Vec::new(), by_j };
    let mut arcs = Vec::with_capacity(g.len());
    for v in &g.vertices {
        let mut out = Vec::new();
        for k in v.curve.rational_ell_kernels(ell)? {
            let target = g.locate(&v.curve.velu_isogeny(&k)?)?;
            out.push(Arc { x0: k.x0(), target });
        }
        arcs.push(out);
    }
    g.arcs = arcs;
    Ok(g)
}

/// The three graphs for one `(p, ℓ)`.
#[derive(Clone, Debug)]
pub struct GraphBundle {
    pub full: IsogenyMultigraph,
    pub spine: IsogenyMultigraph,
    pub fp: FpIsogenyGraph,
}

/// Builds `G_ℓ(F̄_p)`, `S_ℓ^p` and `G_ℓ(F_p)` sharing one field context.
pub fn build_graphs(p: u64, ell: u32) -> Result<GraphBundle, Error> {
    check_parameters(p, ell)?;
    let ctx = FieldContext::new(p)?;
    let full = full_graph_in(&ctx, ell)?;
    let spine = spine(&full);
    let js: Vec<Fp> = spine.vertices().iter().filter_map(|j| j.to_base()).collect();
    let fp = fp_graph_from_js(&ctx, ell, &js)?;
    Ok(GraphBundle { full, spine, fp })
}

/// How a component of `G_ℓ(F_p)` lands in the spine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fate {
    /// Maps onto its own image, which it shares with `partner`.
    Stacked { partner: usize },
    /// Closed under twisting, so the projection is two-to-one onto itself.
    Folded,
}

/// Images of distinct component orbits sharing a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAttachment {
    pub j: Fp,
    /// Smallest component index of each orbit meeting at `j`.
    pub orbits: Vec<usize>,
}

/// Classification of a spine edge not fully accounted for by `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NewEdgeKind {
    Loop,
    NewAdjacency,
    Thickening,
}

/// A pair of spine vertices whose spine multiplicity exceeds the image of
/// `G_ℓ(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewEdge {
    pub a: Fp,
    pub b: Fp,
    /// Spine multiplicities `a → b` and `b → a`.
    pub spine_multiplicity: (u32, u32),
    /// Image multiplicities `a → b` and `b → a`.
    pub gamma_multiplicity: (u32, u32),
    pub kind: NewEdgeKind,
    /// Whether `a` and `b` lie in different components of the image.
    pub attaching: bool,
}

/// The decomposition of `Ω : G_ℓ(F_p) → S_ℓ^p` into `Γ` and `Θ`.
#[derive(Clone, Debug)]
pub struct SpineAnalysis {
    pub components: Vec<Vec<usize>>,
    pub fates: Vec<Fate>,
    pub vertex_attachments: Vec<VertexAttachment>,
    /// `Γ(G_ℓ(F_p))`, on the spine vertex set.
    pub gamma_image: IsogenyMultigraph,
    pub new_edges: Vec<NewEdge>,
    gamma_component: BTreeMap<Fp, usize>,
    component_js: Vec<BTreeSet<Fp>>,
}

impl SpineAnalysis {
    pub fn folded(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.fates.len()).filter(|&c| self.fates[c] == Fate::Folded)
    }

    pub fn fold_count(&self) -> usize {
        self.folded().count()
    }

    /// Stacked pairs `(c, partner)` with `c < partner`.
    pub fn stacked_pairs(&self) -> Vec<(usize, usize)> {
        self.fates
            .iter()
            .enumerate()
            .filter_map(|(c, f)| match *f {
                Fate::Stacked { partner } if c < partner => Some((c, partner)),
                _ => None,
            })
            .collect()
    }

    /// The j-invariants of component `c`.
    pub fn component_js(&self, c: usize) -> &BTreeSet<Fp> {
        &self.component_js[c]
    }

    /// Non-loop spine adjacencies absent from the image.
    pub fn new_adjacencies(&self) -> impl Iterator<Item = &NewEdge> {
        self.new_edges.iter().filter(|e| e.kind == NewEdgeKind::NewAdjacency)
    }

    pub fn new_edge_count(&self) -> usize {
        self.new_adjacencies().count()
    }

    pub fn attaching_edges(&self) -> impl Iterator<Item = &NewEdge> {
        self.new_adjacencies().filter(|e| e.attaching)
    }

    /// Whether the new adjacencies share no endpoint.
    pub fn new_edges_vertex_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.new_adjacencies().all(|e| seen.insert(e.a) && seen.insert(e.b))
    }

    /// Component of the image containing `j`.
    pub fn gamma_component_of(&self, j: Fp) -> Option<usize> {
        self.gamma_component.get(&j).copied()
    }

    /// Whether some folded component contains `j`.
    pub fn folds_at(&self, j: Fp) -> bool {
        self.folded().any(|c| self.component_js[c].contains(&j))
    }
}

type Labelled = (Vec<Fp>, Vec<(Fp, Fp)>);

fn labelled(fp: &FpIsogenyGraph, comp: &[usize]) -> Labelled {
    let mut js: Vec<Fp> = comp.iter().map(|&v| fp.j(v)).collect();
    js.sort_unstable();
    let mut es: Vec<(Fp, Fp)> =
        comp.iter().flat_map(|&v| fp.arcs(v).iter().map(move |a| (fp.j(v), fp.j(a.target)))).collect();
    es.sort_unstable();
    (js, es)
}

/// Computes how `G_ℓ(F_p)` projects onto `S_ℓ^p`.
pub fn omega_analysis(fp: &FpIsogenyGraph, sp: &IsogenyMultigraph) -> Result<SpineAnalysis, Error> {
    let ctx = FieldContext::new(fp.p())?;
    let spine_js: Vec<Fp> = sp.vertices().iter().filter_map(|j| j.to_base()).collect();
    let fp_js: Vec<Fp> = fp.j_values().collect();
    if spine_js.len() != sp.len() || spine_js != fp_js {
        return Err(GraphError::Inconsistent("spine and F_p graph disagree on vertices".into()).into());
    }

    let components = fp.components();
    let mut comp_of = vec![0usize; fp.len()];
    for (c, vs) in components.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let sigma: Vec<usize> = (0..fp.len()).map(|v| fp.twist_of(v, &ctx)).collect::<Result<_, _>>()?;

    let mut fates = Vec::with_capacity(components.len());
    for (c, vs) in components.iter().enumerate() {
        let image = comp_of[sigma[vs[0]]];
        if vs.iter().any(|&v| comp_of[sigma[v]] != image) {
            return Err(GraphError::Inconsistent(format!("twist does not preserve component {c}")).into());
        }
        if image != c {
            fates.push(Fate::Stacked { partner: image });
            continue;
        }
        let lone = vs.len() == 1 && fp.arcs(vs[0]).is_empty();
        let twin = fp.classes_of(fp.j(vs[0])).iter().copied().find(|&w| w != vs[0]);
        match twin.map(|w| comp_of[w]) {
            Some(pc) if lone && components[pc].len() == 1 && fp.arcs(components[pc][0]).is_empty() => {
                fates.push(Fate::Stacked { partner: pc })
            }
            _ => fates.push(Fate::Folded),
        }
    }
    for (c, f) in fates.iter().enumerate() {
        if let Fate::Stacked { partner } = *f {
            if labelled(fp, &components[c]) != labelled(fp, &components[partner]) {
                return Err(GraphError::Inconsistent(format!("components {c} and {partner} differ")).into());
            }
        }
    }

    let component_js: Vec<BTreeSet<Fp>> =
        components.iter().map(|vs| vs.iter().map(|&v| fp.j(v)).collect()).collect();
    let orbit = |c: usize| match fates[c] {
        Fate::Stacked { partner } => c.min(partner),
        Fate::Folded => c,
    };
    let mut orbits_at: BTreeMap<Fp, BTreeSet<usize>> = BTreeMap::new();
    for (c, js) in component_js.iter().enumerate() {
        for &j in js {
            orbits_at.entry(j).or_default().insert(orbit(c));
        }
    }
    let vertex_attachments = orbits_at
        .into_iter()
        .filter(|(_, o)| o.len() > 1)
        .map(|(j, o)| VertexAttachment { j, orbits: o.into_iter().collect() })
        .collect();

    // Transport every rational kernel to a fixed model per j and count the
    // distinct kernels reaching each target j.
    let mut kernels: BTreeMap<(Fp, Fp), BTreeSet<Fp2>> = BTreeMap::new();
    for j in fp.j_values() {
        let model = twists_from_j(&ctx, j).0;
        for &v in fp.classes_of(j) {
            let lambda = model
                .x_scaling(&fp.vertices()[v].curve, &ctx)
                .and_then(|l| l.inv())
                .ok_or_else(|| GraphError::Inconsistent(format!("no scaling at j = {j}")))?;
            for a in fp.arcs(v) {
                kernels.entry((j, fp.j(a.target))).or_default().insert(ctx.lift(a.x0) * lambda);
            }
        }
    }
    let lift = |j: Fp| ctx.lift(j);
    let gamma_edges: Vec<(Fp2, Fp2, u32)> = kernels
        .iter()
        .map(|(&(a, b), ks)| {
            let cap = sp.multiplicity(sp.index_of(lift(a)).expect("vertex"), sp.index_of(lift(b)).expect("vertex"));
            (lift(a), lift(b), (ks.len() as u32).min(cap))
        })
        .collect();
    let gamma_image = IsogenyMultigraph::from_edges(fp.p(), fp.ell(), sp.vertices().iter().copied(), gamma_edges)?;
    let mut gamma_component = BTreeMap::new();
    for (c, vs) in gamma_image.components().iter().enumerate() {
        for &v in vs {
            gamma_component.insert(spine_js[v], c);
        }
    }

    let mut new_edges = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, k, _) in sp.edges() {
        pairs.insert((i.min(k), i.max(k)));
    }
    for (i, k) in pairs {
        let s = (sp.multiplicity(i, k), sp.multiplicity(k, i));
        let g = (gamma_image.multiplicity(i, k), gamma_image.multiplicity(k, i));
        if s.0 <= g.0 && s.1 <= g.1 {
            continue;
        }
        let kind = if i == k {
            NewEdgeKind::Loop
        } else if g == (0, 0) {
            NewEdgeKind::NewAdjacency
        } else {
            NewEdgeKind::Thickening
        };
        let (a, b) = (spine_js[i], spine_js[k]);
        new_edges.push(NewEdge {
            a,
            b,
            spine_multiplicity: s,
            gamma_multiplicity: g,
            kind,
            attaching: gamma_component[&a] != gamma_component[&b],
        });
    }

    Ok(SpineAnalysis { components, fates, vertex_attachments, gamma_image, new_edges, gamma_component, component_js })
}
