//! Connectivity and Hasse graphs of a complex, the Hasse decomposition built
//! from a skeleton decomposition, and expansion measurements.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::complex::SimplicialComplex;
use crate::decomposition::{validate_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::oracle::{brute_force_treewidth, OracleBudget};

pub type Rational = Ratio<u64>;

/// Graph on the `d`-simplices, adjacent when they share a `(d-1)`-face.
pub fn connectivity_graph(complex: &SimplicialComplex, d: usize) -> Result<UndirectedGraph> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let tops = complex.simplices(d);
    let mut graph =
        UndirectedGraph::with_labels(tops.iter().map(|s| complex.format_simplex(s)).collect());
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); complex.count(d - 1)];
    for (i, s) in tops.iter().enumerate() {
        for f in s.facets() {
            cofaces[complex.index_of(&f).expect("closed")].push(i);
        }
    }
    for around in &cofaces {
        for (a, &x) in around.iter().enumerate() {
            for &y in &around[a + 1..] {
                graph.add_edge(x, y);
            }
        }
    }
    Ok(graph)
}

/// Bipartite incidence graph between `(d-1)`- and `d`-simplices. The
/// `(d-1)`-simplices come first, so `d`-simplex `i` is vertex
/// `complex.count(d - 1) + i`.
pub fn hasse_level(complex: &SimplicialComplex, d: usize) -> Result<UndirectedGraph> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let offset = complex.count(d - 1);
    let labels = complex
        .simplices(d - 1)
        .iter()
        .chain(complex.simplices(d))
        .map(|s| complex.format_simplex(s))
        .collect();
    let mut graph = UndirectedGraph::with_labels(labels);
    for (i, s) in complex.simplices(d).iter().enumerate() {
        for f in s.facets() {
            graph.add_edge(complex.index_of(&f).expect("closed"), offset + i);
        }
    }
    Ok(graph)
}

/// Turns a decomposition of the 1-skeleton into one of `Hasse_d(K)`.
///
/// Each bag is replaced by the `(d-1)`-simplices it contains, and every
/// `d`-simplex gets a pendant bag hung off the first node holding it. Bags
/// have at most `C(s, d) + 1` members for input bag size `s`.
pub fn hasse_td_from_skeleton(
    complex: &SimplicialComplex,
    td: &TreeDecomposition,
    d: usize,
) -> Result<TreeDecomposition> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    validate_decomposition(&complex.skeleton_graph(), td).into_result()?;
    let lower = complex.simplices(d - 1);
    let offset = lower.len();
    let inside = |bag: &[usize], vs: &[usize]| vs.iter().all(|v| bag.binary_search(v).is_ok());

    let mut bags: Vec<Vec<usize>> = td
        .bags()
        .iter()
        .map(|bag| {
            if bag.len() < d {
                return Vec::new();
            }
            lower
                .iter()
                .enumerate()
                .filter(|(_, s)| inside(bag, s.vertices()))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut edges = td.edges().to_vec();
    for (i, tau) in complex.simplices(d).iter().enumerate() {
        let home = td
            .bags()
            .iter()
            .position(|bag| inside(bag, tau.vertices()))
            .ok_or_else(|| {
                Error::InvalidDecomposition(format!("no bag holds {}", complex.format_simplex(tau)))
            })?;
        let mut pendant = bags[home].clone();
        pendant.push(offset + i);
        edges.push((home, bags.len()));
        bags.push(pendant);
    }
    Ok(TreeDecomposition::new(bags, edges))
}

/// The full complex on vertices `0..n`.
pub fn simplex_delta(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return SimplicialComplex::build(Vec::<Vec<u64>>::new());
    }
    SimplicialComplex::build([(0..n as u64).collect::<Vec<_>>()])
}

/// Longest shortest path; `None` when the graph is disconnected.
pub fn diameter(graph: &UndirectedGraph) -> Option<usize> {
    let mut best = 0;
    for v in 0..graph.vertex_count() {
        for d in graph.distances_from(v) {
            best = best.max(d?);
        }
    }
    Some(best)
}

fn subset_masks(graph: &UndirectedGraph, budget: &OracleBudget) -> Result<Vec<u64>> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "expansion needs at least two vertices, graph has {n}"
        )));
    }
    if n >= 63 || (1u64 << n) > budget.max_chains {
        return Err(Error::BudgetExceeded(format!(
            "expansion over {n} vertices needs 2^{n} subsets, budget is {}",
            budget.max_chains
        )));
    }
    Ok(graph.adjacency_masks().expect("at most 62 vertices"))
}

fn min_ratio(
    graph: &UndirectedGraph,
    budget: &OracleBudget,
    measure: impl Fn(&[u64], u64) -> u64,
) -> Result<Rational> {
    let adj = subset_masks(graph, budget)?;
    let n = adj.len();
    let mut best: Option<Rational> = None;
    for set in 1u64..(1 << n) {
        let size = set.count_ones() as u64;
        if 2 * size > n as u64 {
            continue;
        }
        let r = Rational::new(measure(&adj, set), size);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    Ok(best.expect("a single vertex is always admissible"))
}

/// `min |δ(S)| / |S|` over `1 <= |S| <= |V|/2`.
pub fn edge_expansion_bruteforce(
    graph: &UndirectedGraph,
    budget: &OracleBudget,
) -> Result<Rational> {
    min_ratio(graph, budget, |adj, set| {
        let mut cut = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cut += (adj[v] & !set).count_ones() as u64;
        }
        cut
    })
}

/// `min |N(S)| / |S|` over `1 <= |S| <= |V|/2`.
pub fn vertex_expansion_bruteforce(
    graph: &UndirectedGraph,
    budget: &OracleBudget,
) -> Result<Rational> {
    min_ratio(graph, budget, |adj, set| {
        let mut nbrs = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nbrs |= adj[v];
        }
        (nbrs & !set).count_ones() as u64
    })
}

/// The `(n, d)` of a graph known to be `Hasse_d(Δⁿ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HasseContext {
    pub n: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: Rational,
    /// `">="` or `"<="`.
    pub relation: &'static str,
    pub rhs: Rational,
    pub holds: bool,
}

impl BoundCheck {
    fn at_least(name: &'static str, lhs: Rational, rhs: Rational) -> Self {
        BoundCheck {
            name,
            lhs,
            relation: ">=",
            rhs,
            holds: lhs >= rhs,
        }
    }

    fn at_most(name: &'static str, lhs: Rational, rhs: Rational) -> Self {
        BoundCheck {
            name,
            lhs,
            relation: "<=",
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Harmonic mean of the extreme degrees; `None` with an isolated vertex.
    pub harmonic_mean: Option<Rational>,
    /// `None` when disconnected.
    pub diameter: Option<usize>,
    /// `None` when not measured.
    pub edge_expansion: Option<Rational>,
    pub vertex_expansion: Option<Rational>,
    pub treewidth: Option<usize>,
    /// `EE·|V| / (4·d_max)`.
    pub tw_lower_bound: Option<Rational>,
    /// `r / 2D`.
    pub expansion_lower_bound: Option<Rational>,
    pub checks: Vec<BoundCheck>,
}

impl ExpansionReport {
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn whole(x: usize) -> Rational {
    Rational::from_integer(x as u64)
}

/// Measures a graph and evaluates the expansion and treewidth inequalities.
///
/// Without a budget only the cheap quantities are computed. Inequalities that
/// hold only for `Hasse_d(Δⁿ)` are evaluated when `context` is given.
pub fn bound_report(
    graph: &UndirectedGraph,
    context: Option<HasseContext>,
    budget: Option<&OracleBudget>,
) -> ExpansionReport {
    let n = graph.vertex_count();
    let (lo, hi) = (graph.min_degree(), graph.max_degree());
    let harmonic_mean = (lo > 0).then(|| Rational::new(2 * (lo * hi) as u64, (lo + hi) as u64));
    let diam = diameter(graph);
    let measure = |f: fn(&UndirectedGraph, &OracleBudget) -> Result<Rational>| {
        budget.and_then(|b| f(graph, b).ok())
    };
    let ee = measure(edge_expansion_bruteforce);
    let ve = measure(vertex_expansion_bruteforce);
    let treewidth = budget.and_then(|b| brute_force_treewidth(graph, b).ok());
    let tw_lower_bound = ee.filter(|_| hi > 0).map(|e| e * whole(n) / whole(4 * hi));
    let expansion_lower_bound = match (harmonic_mean, diam) {
        (Some(r), Some(d)) if d > 0 => Some(r / whole(2 * d)),
        _ => None,
    };

    let mut checks = Vec::new();
    if let (Some(v), Some(e)) = (ve, ee) {
        if hi > 0 {
            checks.push(BoundCheck::at_least(
                "vertex-vs-edge-expansion",
                v,
                e / whole(hi),
            ));
        }
    }
    if let (Some(tw), Some(bound)) = (treewidth, tw_lower_bound) {
        checks.push(BoundCheck::at_least(
            "treewidth-vs-edge-expansion",
            whole(tw),
            bound,
        ));
    }
    if let (Some(tw), Some(v)) = (treewidth, ve) {
        checks.push(BoundCheck::at_least(
            "treewidth-vs-vertex-expansion",
            whole(tw),
            v * whole(n) / whole(4),
        ));
    }
    if let Some(HasseContext { n: verts, d }) = context {
        if let Some(dm) = diam {
            checks.push(BoundCheck::at_most("diameter", whole(dm), whole(2 * d + 2)));
        }
        if verts > 2 * d {
            if let Some(r) = harmonic_mean {
                checks.push(BoundCheck::at_least("harmonic-mean", r, whole(d + 1)));
            }
            if let Some(e) = ee {
                checks.push(BoundCheck::at_least(
                    "edge-expansion-quarter",
                    e,
                    Rational::new(1, 4),
                ));
            }
        }
        if let (Some(e), Some(bound)) = (ee, expansion_lower_bound) {
            checks.push(BoundCheck::at_least("babai-szegedy", e, bound));
        }
    }

    ExpansionReport {
        vertices: n,
        edges: graph.edge_count(),
        min_degree: lo,
        max_degree: hi,
        harmonic_mean,
        diameter: diam,
        edge_expansion: ee,
        vertex_expansion: ve,
        treewidth,
        tw_lower_bound,
        expansion_lower_bound,
        checks,
    }
}

/// Whether relabelling the vertices of `Δⁿ` by `perm` maps `Hasse_d(Δⁿ)` onto
/// itself, i.e. preserves adjacency in both directions.
pub fn relabeling_is_automorphism(n: usize, d: usize, perm: &[usize]) -> Result<bool> {
    if perm.len() != n || perm.iter().copied().collect::<BTreeSet<_>>() != (0..n).collect() {
        return Err(Error::Unsupported(format!("not a permutation of 0..{n}")));
    }
    let k = simplex_delta(n)?;
    let g = hasse_level(&k, d)?;
    let offset = k.count(d - 1);
    let image = |v: usize| -> usize {
        let (dim, index) = if v < offset {
            (d - 1, v)
        } else {
            (d, v - offset)
        };
        let mut mapped: Vec<usize> = k
            .simplex(dim, index)
            .vertices()
            .iter()
            .map(|x| perm[*x])
            .collect();
        mapped.sort_unstable();
        let i = k.index_of_vertices(&mapped).expect("full complex");
        if dim == d {
            offset + i
        } else {
            i
        }
    };
    let phi: Vec<usize> = (0..g.vertex_count()).map(image).collect();
    if phi.iter().copied().collect::<BTreeSet<_>>().len() != phi.len() {
        return Ok(false);
    }
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            if g.has_edge(u, v) != g.has_edge(phi[u], phi[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
