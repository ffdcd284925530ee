use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

pub const DEFAULT_EXACT_LIMIT: usize = 10;

/// How to pick the elimination order a decomposition is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    MinFill,
    MinDegree,
    /// Optimal order by exhaustive search; refused above `limit` vertices.
    ExactSmall {
        limit: usize,
    },
}

impl Strategy {
    pub fn exact_small() -> Self {
        Strategy::ExactSmall {
            limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-fill" => Ok(Strategy::MinFill),
            "min-degree" => Ok(Strategy::MinDegree),
            "exact-small" => Ok(Strategy::exact_small()),
            other => Err(Error::Unsupported(format!(
                "unknown strategy '{other}' (expected min-fill, min-degree or exact-small)"
            ))),
        }
    }
}

pub fn build_decomposition(
    graph: &UndirectedGraph,
    strategy: Strategy,
) -> Result<TreeDecomposition> {
    let order = match strategy {
        Strategy::MinFill => greedy_order(graph, Greedy::Fill),
        Strategy::MinDegree => greedy_order(graph, Greedy::Degree),
        Strategy::ExactSmall { limit } => exact_elimination_order(graph, limit)?.0,
    };
    Ok(decomposition_from_order(graph, &order))
}

/// Decomposition induced by eliminating vertices in `order`: each vertex's bag
/// is itself plus its neighbours at elimination time, hung below the bag of
/// the earliest-eliminated of those neighbours.
pub fn decomposition_from_order(graph: &UndirectedGraph, order: &[usize]) -> TreeDecomposition {
    let n = graph.vertex_count();
    assert_eq!(
        order.len(),
        n,
        "elimination order must list every vertex once"
    );
    let mut pos = vec![usize::MAX; n];
    for (i, v) in order.iter().enumerate() {
        assert_eq!(pos[*v], usize::MAX, "vertex {v} listed twice");
        pos[*v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nbrs[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        match nbrs.iter().map(|u| pos[*u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges).compacted()
}

enum Greedy {
    Fill,
    Degree,
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn greedy_order(graph: &UndirectedGraph, rule: Greedy) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    let score = |adj: &[BTreeSet<usize>], v: usize| match rule {
        Greedy::Fill => (fill_in(adj, v), adj[v].len()),
        Greedy::Degree => (adj[v].len(), 0),
    };
    let mut current: Vec<(usize, usize)> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<((usize, usize), usize)> = (0..n).map(|v| (current[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nbrs[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        let mut touched: BTreeSet<usize> = nbrs.iter().copied().collect();
        if matches!(rule, Greedy::Fill) {
            for &x in &nbrs {
                touched.extend(adj[x].iter().copied());
            }
        }
        for x in touched {
            if queue.remove(&(current[x], x)) {
                current[x] = score(&adj, x);
                queue.insert((current[x], x));
            }
        }
    }
    order
}

/// An elimination order of minimum width together with that width, found by
/// depth-first search over all orders with branches cut once they cannot
/// beat the best order seen so far.
pub fn exact_elimination_order(
    graph: &UndirectedGraph,
    limit: usize,
) -> Result<(Vec<usize>, usize)> {
    let n = graph.vertex_count();
    if n > limit || n > 64 {
        return Err(Error::BudgetExceeded(format!(
            "exact decomposition is limited to {} vertices, graph has {n}",
            limit.min(64)
        )));
    }
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let adj = graph.adjacency_masks().expect("at most 64 vertices");
    let heuristic = greedy_order(graph, Greedy::Fill);
    let mut search = ExactSearch {
        best_width: order_width(&adj, &heuristic),
        best_order: heuristic,
        prefix: Vec::with_capacity(n),
        reached: HashMap::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.descend(&adj, all, 0);
    Ok((search.best_order, search.best_width))
}

fn order_width(adj: &[u64], order: &[usize]) -> usize {
    let mut adj = adj.to_vec();
    let mut remaining: u64 = order.iter().fold(0, |m, v| m | 1 << v);
    let mut width = 0;
    for &v in order {
        remaining &= !(1 << v);
        let nbrs = adj[v] & remaining;
        width = width.max(nbrs.count_ones() as usize);
        eliminate(&mut adj, v, nbrs);
    }
    width
}

fn eliminate(adj: &mut [u64], v: usize, nbrs: u64) {
    let mut rest = nbrs;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        adj[u] |= nbrs & !(1 << u);
        adj[u] &= !(1 << v);
    }
}

struct ExactSearch {
    best_width: usize,
    best_order: Vec<usize>,
    prefix: Vec<usize>,
    /// Smallest width with which each remaining-vertex set has been reached.
    /// The graph left after eliminating a set does not depend on the order,
    /// so arriving again with no smaller width cannot help.
    reached: HashMap<u64, usize>,
}

impl ExactSearch {
    fn descend(&mut self, adj: &[u64], remaining: u64, width: usize) {
        if remaining == 0 {
            if width < self.best_width {
                self.best_width = width;
                self.best_order = self.prefix.clone();
            }
            return;
        }
        let mut rest = remaining;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let left = remaining & !(1 << v);
            let nbrs = adj[v] & left;
            let w = width.max(nbrs.count_ones() as usize);
            if w >= self.best_width {
                continue;
            }
            match self.reached.get(&left) {
                Some(&seen) if seen <= w => continue,
                _ => {
                    self.reached.insert(left, w);
                }
            }
            let mut next = adj.to_vec();
            eliminate(&mut next, v, nbrs);
            self.prefix.push(v);
            self.descend(&next, left, w);
            self.prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::validate_decomposition;
    use super::*;

    fn all_strategies() -> [Strategy; 3] {
        [
            Strategy::MinFill,
            Strategy::MinDegree,
            Strategy::exact_small(),
        ]
    }

    #[test]
    fn triangle_has_width_two() {
        let g = UndirectedGraph::complete(3);
        for s in all_strategies() {
            let td = build_decomposition(&g, s).unwrap();
            assert!(validate_decomposition(&g, &td).is_valid());
            assert_eq!(td.width(), 2);
        }
    }

    #[test]
    fn edgeless_graph_has_width_zero() {
        let g = UndirectedGraph::new(4);
        for s in all_strategies() {
            let td = build_decomposition(&g, s).unwrap();
            assert!(validate_decomposition(&g, &td).is_valid());
            assert_eq!(td.width(), 0);
        }
    }

    #[test]
    fn exact_widths() {
        assert_eq!(
            exact_elimination_order(&UndirectedGraph::cycle(5), 10)
                .unwrap()
                .1,
            2
        );
        assert_eq!(
            exact_elimination_order(&UndirectedGraph::complete(4), 10)
                .unwrap()
                .1,
            3
        );
        assert_eq!(
            exact_elimination_order(&UndirectedGraph::path(6), 10)
                .unwrap()
                .1,
            1
        );
        assert_eq!(
            exact_elimination_order(&UndirectedGraph::new(0), 10)
                .unwrap()
                .1,
            0
        );
    }

    #[test]
    fn exact_refuses_large_graphs() {
        let g = UndirectedGraph::path(11);
        let err = build_decomposition(&g, Strategy::exact_small()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
        assert!(build_decomposition(&g, Strategy::ExactSmall { limit: 11 }).is_ok());
    }

    #[test]
    fn strategy_names() {
        assert_eq!("min-fill".parse::<Strategy>().unwrap(), Strategy::MinFill);
        assert!("best".parse::<Strategy>().is_err());
    }

    #[test]
    fn disconnected_graph_gives_a_tree() {
        let mut g = UndirectedGraph::new(6);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        let td = build_decomposition(&g, Strategy::MinFill).unwrap();
        assert!(validate_decomposition(&g, &td).is_valid());
        assert_eq!(td.width(), 1);
    }
}
