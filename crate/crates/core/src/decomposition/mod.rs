//! Tree decompositions of graphs: validation, construction, normalisation to
//! nice form, and the per-node scopes consumed by the dynamic programs.

mod build;
mod nice;
mod scope;

pub use build::{
    build_decomposition, decomposition_from_order, exact_elimination_order, Strategy,
    DEFAULT_EXACT_LIMIT,
};
pub use nice::{make_nice, NiceNode, NiceTreeDecomposition, NodeKind};
pub use scope::{scope, scopes, simplex_home_node, RootedScope};

use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Bags over graph vertices joined by tree edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; edge order is kept as given.
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(vertex_count: usize) -> Self {
        Self::new(vec![(0..vertex_count).collect()], vec![])
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[usize] {
        &self.bags[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest bag size minus one (zero when every bag is empty).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Checks that the nodes form a tree and that each vertex's nodes are
    /// connected. Coverage needs the graph and is left to [`validate_decomposition`].
    pub(crate) fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Some(v) = tree_violation(self) {
            out.push(v);
            return out;
        }
        let vertex_bound = self.bags.iter().flatten().max().map_or(0, |m| m + 1);
        if let Some(v) = first_disconnected_vertex(self, vertex_bound) {
            out.push(Violation::DisconnectedVertex(v));
        }
        out
    }

    /// Repeatedly contracts a tree edge whose one bag is contained in the
    /// other. The result is still a decomposition of the same graph with the
    /// same width and at most as many nodes as the graph has vertices (plus
    /// one when the graph is empty).
    pub fn compacted(&self) -> TreeDecomposition {
        let n = self.bags.len();
        if n <= 1 {
            return self.clone();
        }
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; n];
        let mut work: Vec<usize> = (0..n).rev().collect();
        while let Some(a) = work.pop() {
            if !alive[a] {
                continue;
            }
            let target = adj[a]
                .iter()
                .copied()
                .find(|b| is_subset(&self.bags[a], &self.bags[*b]));
            if let Some(b) = target {
                alive[a] = false;
                let ns: Vec<usize> = adj[a].iter().copied().filter(|x| *x != b).collect();
                adj[b].remove(&a);
                for x in ns {
                    adj[x].remove(&a);
                    adj[x].insert(b);
                    adj[b].insert(x);
                    work.push(x);
                }
                adj[a].clear();
                work.push(b);
            }
        }
        let mut renum = vec![usize::MAX; n];
        let mut bags = Vec::new();
        for i in 0..n {
            if alive[i] {
                renum[i] = bags.len();
                bags.push(self.bags[i].clone());
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            if alive[i] {
                for &j in &adj[i] {
                    if i < j {
                        edges.push((renum[i], renum[j]));
                    }
                }
            }
        }
        TreeDecomposition { bags, edges }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

fn tree_violation(td: &TreeDecomposition) -> Option<Violation> {
    let n = td.bags.len();
    if n == 0 {
        return None;
    }
    if let Some(&(a, b)) = td.edges.iter().find(|(a, b)| *a >= n || *b >= n || a == b) {
        return Some(Violation::NotATree(format!("bad tree edge ({a}, {b})")));
    }
    if td.edges.len() != n - 1 {
        return Some(Violation::NotATree(format!(
            "{} nodes but {} edges",
            n,
            td.edges.len()
        )));
    }
    let adj = td.adjacency();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Some(Violation::NotATree("node graph is disconnected".into()));
    }
    None
}

/// In a tree, the nodes holding `v` are connected exactly when the tree
/// edges with `v` on both ends number one less than those nodes.
fn first_disconnected_vertex(td: &TreeDecomposition, vertex_bound: usize) -> Option<usize> {
    let mut holders = vec![0usize; vertex_bound];
    for bag in &td.bags {
        for &v in bag {
            if v < vertex_bound {
                holders[v] += 1;
            }
        }
    }
    let mut shared = vec![0usize; vertex_bound];
    for &(a, b) in &td.edges {
        let (x, y) = (&td.bags[a], &td.bags[b]);
        for &v in x {
            if v < vertex_bound && y.binary_search(&v).is_ok() {
                shared[v] += 1;
            }
        }
    }
    (0..vertex_bound).find(|&v| holders[v] > 0 && shared[v] + 1 != holders[v])
}

/// One failed tree-decomposition condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { node: usize, vertex: usize },
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    DisconnectedVertex(usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "not a tree: {why}"),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} names unknown vertex {vertex}")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge ({u}, {v}) is in no bag"),
            Violation::DisconnectedVertex(v) => {
                write!(f, "the nodes holding vertex {v} are not connected")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub width: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_tree(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotATree(_)))
    }

    pub fn vertex_coverage(&self) -> bool {
        !self.violations.iter().any(|v| {
            matches!(
                v,
                Violation::UncoveredVertex(_) | Violation::VertexOutOfRange { .. }
            )
        })
    }

    pub fn edge_coverage(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UncoveredEdge(..)))
    }

    pub fn connectivity(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DisconnectedVertex(_)))
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
        }
    }
}

/// Checks the three tree-decomposition conditions (plus tree shape), reporting
/// the first witness found for each failed condition.
pub fn validate_decomposition(graph: &UndirectedGraph, td: &TreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let n = graph.vertex_count();
    if let Some(v) = tree_violation(td) {
        violations.push(v);
    }
    if td.bags.is_empty() && n > 0 {
        violations.push(Violation::NotATree("no nodes".into()));
    }
    for (node, bag) in td.bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|v| **v >= n) {
            violations.push(Violation::VertexOutOfRange { node, vertex });
            break;
        }
    }
    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag {
            if v < n {
                covered[v] = true;
            }
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        violations.push(Violation::UncoveredVertex(v));
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v < n {
                holders[v].push(node);
            }
        }
    }
    if let Some((u, v)) = graph.edges().find(|&(u, v)| {
        !holders[u]
            .iter()
            .any(|t| td.bags[*t].binary_search(&v).is_ok())
    }) {
        violations.push(Violation::UncoveredEdge(u, v));
    }
    if violations
        .iter()
        .all(|v| !matches!(v, Violation::NotATree(_)))
    {
        if let Some(v) = first_disconnected_vertex(td, n) {
            violations.push(Violation::DisconnectedVertex(v));
        }
    }
    ValidationReport {
        width: td.width(),
        violations,
    }
}

/// Validates `td` against the 1-skeleton of `complex` and additionally checks
/// that its width is at least the complex's dimension, which every valid
/// decomposition must satisfy since each simplex lies inside some bag.
pub fn validate_for_complex(
    complex: &SimplicialComplex,
    td: &TreeDecomposition,
) -> Result<ValidationReport> {
    let report = validate_decomposition(&complex.skeleton_graph(), td);
    if report.is_valid() {
        if let Some(dim) = complex.dimension() {
            if report.width < dim {
                return Err(Error::InvalidDecomposition(format!(
                    "width {} is below the complex dimension {dim}",
                    report.width
                )));
            }
        }
    }
    Ok(report)
}
