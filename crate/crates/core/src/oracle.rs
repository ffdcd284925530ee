//! Exhaustive reference solvers for small instances.
//!
//! These stay deliberately naive: every candidate chain is enumerated in
//! counter order and the first optimum wins.

use std::collections::BTreeSet;

use crate::complex::{Chain, SimplicialComplex, WeightFunction};
use crate::dp::{ObcpSolution, OhcpSolution, Status, TableStats};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of candidate chains to enumerate.
    pub max_chains: u64,
    /// Largest graph handed to the exact treewidth routine.
    pub max_tw_vertices: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_chains: 1 << 20,
            max_tw_vertices: 10,
        }
    }
}

fn candidate_count(complex: &SimplicialComplex, dim: usize, budget: &OracleBudget) -> Result<u64> {
    let m = complex.count(dim);
    if m >= 63 || (1u64 << m) > budget.max_chains {
        return Err(Error::BudgetExceeded(format!(
            "{m} {dim}-simplices give 2^{m} candidate chains, budget is {}",
            budget.max_chains
        )));
    }
    Ok(1u64 << m)
}

/// Boundary of each d-simplex, as a set of (d-1)-indices.
fn facet_sets(complex: &SimplicialComplex, dim: usize) -> Vec<BTreeSet<usize>> {
    complex
        .simplices(dim)
        .iter()
        .map(|s| {
            s.facets()
                .map(|f| complex.index_of(&f).expect("closed"))
                .collect()
        })
        .collect()
}

fn check(complex: &SimplicialComplex, b: &Chain) -> Result<()> {
    if let Some(index) = b.iter().find(|i| *i >= complex.count(b.dim())) {
        return Err(Error::IndexOutOfRange {
            dim: b.dim(),
            index,
        });
    }
    Ok(())
}

/// `b + ∂c` for the chain `c` encoded by `mask`.
fn residual(b: &Chain, facets: &[BTreeSet<usize>], mask: u64) -> BTreeSet<usize> {
    let mut acc = b.members().clone();
    for (i, f) in facets.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc = acc.symmetric_difference(f).copied().collect();
        }
    }
    acc
}

fn chain_of(dim: usize, mask: u64) -> Chain {
    Chain::from_set(dim, (0..64).filter(|i| mask >> i & 1 == 1).collect())
}

/// Minimum-weight chain with boundary exactly `b`, by trying every chain.
pub fn brute_force_obcp(
    complex: &SimplicialComplex,
    b: &Chain,
    weights: Option<&WeightFunction>,
    budget: &OracleBudget,
) -> Result<ObcpSolution> {
    check(complex, b)?;
    let dim = b.dim() + 1;
    let total = candidate_count(complex, dim, budget)?;
    let facets = facet_sets(complex, dim);
    let mut best: Option<(f64, u32, u64)> = None;
    for mask in 0..total {
        if !residual(b, &facets, mask).is_empty() {
            continue;
        }
        let c = chain_of(dim, mask);
        let w = c.weight(weights);
        let size = mask.count_ones();
        if best.is_none_or(|(bw, bs, _)| w < bw || (w == bw && size < bs)) {
            best = Some((w, size, mask));
        }
    }
    Ok(match best {
        Some((w, _, mask)) => ObcpSolution {
            status: Status::Solved,
            chain: Some(chain_of(dim, mask)),
            weight: Some(w),
            stats: TableStats::default(),
        },
        None => ObcpSolution {
            status: Status::Infeasible,
            chain: None,
            weight: None,
            stats: TableStats::default(),
        },
    })
}

/// Minimum-weight chain homologous to `b`, by trying every witness.
pub fn brute_force_ohcp(
    complex: &SimplicialComplex,
    b: &Chain,
    weights: Option<&WeightFunction>,
    budget: &OracleBudget,
) -> Result<OhcpSolution> {
    check(complex, b)?;
    let dim = b.dim() + 1;
    let total = candidate_count(complex, dim, budget)?;
    let facets = facet_sets(complex, dim);
    let mut best: Option<(f64, usize, u64, BTreeSet<usize>)> = None;
    for mask in 0..total {
        let h = residual(b, &facets, mask);
        let w: f64 = h.iter().map(|i| weights.map_or(1.0, |f| f.get(*i))).sum();
        if best
            .as_ref()
            .is_none_or(|(bw, bs, _, _)| w < *bw || (w == *bw && h.len() < *bs))
        {
            best = Some((w, h.len(), mask, h));
        }
    }
    let (weight, _, mask, h) = best.expect("the empty witness is always a candidate");
    Ok(OhcpSolution {
        homologous: Chain::from_set(b.dim(), h),
        witness: chain_of(dim, mask),
        weight,
        stats: TableStats::default(),
    })
}

/// Exact treewidth by dynamic programming over eliminated vertex sets:
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is the
/// set of vertices outside `S + v` reachable from `v` through `S`.
pub fn brute_force_treewidth(graph: &UndirectedGraph, budget: &OracleBudget) -> Result<usize> {
    let n = graph.vertex_count();
    if n > budget.max_tw_vertices || n > 30 {
        return Err(Error::BudgetExceeded(format!(
            "exact treewidth is limited to {} vertices, graph has {n}",
            budget.max_tw_vertices.min(30)
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    tw[0] = 0;
    for set in 1..=full {
        let mut best = u8::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = set & !(1 << v);
            let q = reach_outside(&adj, before, v).count_ones() as u8;
            best = best.min(tw[before as usize].max(q));
        }
        tw[set as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}

fn reach_outside(adj: &[u32], inside: u32, start: usize) -> u32 {
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    let mut outside = 0u32;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nbrs = adj[u] & !seen;
        seen |= nbrs;
        outside |= nbrs & !inside;
        frontier |= nbrs & inside;
    }
    outside
}
