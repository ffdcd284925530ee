//! Bottom-up dynamic programming over a nice tree decomposition.
//!
//! Both chain problems share one engine. A table at node `t` maps a
//! `(d-1)`-chain `β` supported on `K[X_t]` to the best cost of a `d`-chain in
//! the subtree's scope whose boundary meets the bag in exactly `β`; absent keys
//! stand for infinity. `β` is a bitmask over the `(d-1)`-simplices of
//! `K[X_t]` listed in canonical order, so a bag may hold at most 64 of them.
//!
//! Leaf, introduce and join nodes behave identically for both problems. Only
//! the forget step differs, and it is supplied through [`Objective`].

mod obcp;
mod ohcp;

pub use obcp::{
    is_homologous, is_homologous_with, is_null_homologous, obcp_tables, solve_obcp,
    solve_obcp_with, ObcpSolution, Status,
};
pub use ohcp::{ohcp_tables, solve_ohcp, solve_ohcp_with, OhcpSolution};

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::complex::{Chain, SimplicialComplex, WeightFunction};
use crate::decomposition::{
    build_decomposition, make_nice, validate_decomposition, NiceTreeDecomposition, NodeKind,
    Strategy,
};
use crate::error::{Error, Result};

/// Default cap on the number of table entries a single bag may imply.
pub const DEFAULT_ENTRY_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Refuse instances where some bag allows more than this many keys, or
    /// some forget node more than this many local d-chains.
    pub entry_budget: u64,
    /// Report a bounded-chain instance infeasible straight away when the
    /// target is not a cycle.
    pub check_cycle_first: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            entry_budget: DEFAULT_ENTRY_BUDGET,
            check_cycle_first: false,
        }
    }
}

impl SolverConfig {
    pub fn unlimited() -> Self {
        SolverConfig {
            entry_budget: u64::MAX,
            ..Self::default()
        }
    }
}

/// Objective value of a partial solution: weight first, then number of simplices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cost {
    pub weight: f64,
    pub size: u32,
}

impl Cost {
    pub const ZERO: Cost = Cost {
        weight: 0.0,
        size: 0,
    };

    fn plus(self, other: Cost) -> Cost {
        Cost {
            weight: self.weight + other.weight,
            size: self.size + other.size,
        }
    }

    fn beats(&self, other: &Cost) -> bool {
        self.weight < other.weight || (self.weight == other.weight && self.size < other.size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Leaf,
    Introduce(u64),
    Forget { child: u64, gamma: u64 },
    Join(u64, u64),
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    cost: Cost,
    back: Back,
}

type Table = BTreeMap<u64, Entry>;

/// What the forget step needs to know about the node being processed.
pub(crate) struct ForgetView<'a> {
    /// Global indices of the (d-1)-simplices of the child bag.
    pub child_local: &'a [usize],
}

/// The problem-specific half of the forget recurrence.
pub(crate) trait Objective {
    /// Cost of adding the d-simplex with this global index.
    fn simplex_cost(&self, index: usize) -> Cost;

    /// Given the part of `β' + ∂γ_w` on simplices containing the forgotten
    /// vertex, XORed with the target boundary there, returns the extra cost or
    /// `None` when the combination is not allowed.
    fn residual_cost(&self, residual: u64, view: &ForgetView<'_>) -> Option<Cost>;
}

/// Per-node bookkeeping for one engine run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub kind: &'static str,
    pub bag_size: usize,
    /// Number of (d-1)-simplices in `K[X_t]`, i.e. bits in a table key.
    pub local_simplices: usize,
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableStats {
    pub nodes: Vec<NodeStats>,
}

impl TableStats {
    pub fn peak_entries(&self) -> usize {
        self.nodes.iter().map(|n| n.entries).max().unwrap_or(0)
    }

    pub fn total_entries(&self) -> usize {
        self.nodes.iter().map(|n| n.entries).sum()
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag_size).max().unwrap_or(0)
    }
}

/// Every node's table translated back to chains, for inspection and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct DpTables {
    dim: usize,
    tables: Vec<BTreeMap<Chain, f64>>,
}

impl DpTables {
    /// Dimension of the table keys (one less than the solution dimension).
    pub fn key_dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.tables.len()
    }

    /// Finite entries of a node's table.
    pub fn entries(&self, node: usize) -> &BTreeMap<Chain, f64> {
        &self.tables[node]
    }

    /// `None` is infinity.
    pub fn value(&self, node: usize, key: &Chain) -> Option<f64> {
        self.tables[node].get(key).copied()
    }
}

struct NodeContext {
    children: Vec<usize>,
    local: Vec<usize>,
    /// Forget nodes: d-simplices of the child bag through the forgotten vertex.
    cofaces: Vec<usize>,
}

pub(crate) struct EngineRun {
    dim: usize,
    contexts: Vec<NodeContext>,
    tables: Vec<Table>,
    root: usize,
    pub stats: TableStats,
}

impl EngineRun {
    pub fn root_cost(&self) -> Option<Cost> {
        self.tables[self.root].get(&0).map(|e| e.cost)
    }

    /// Follows back-pointers from the root's empty key and returns the global
    /// indices of the d-simplices in an optimal chain.
    pub fn witness(&self) -> Option<BTreeSet<usize>> {
        self.tables[self.root].get(&0)?;
        let mut chain = BTreeSet::new();
        let mut stack = vec![(self.root, 0u64)];
        while let Some((node, key)) = stack.pop() {
            let entry = &self.tables[node][&key];
            match entry.back {
                Back::Leaf => {}
                Back::Introduce(child) => stack.push((self.contexts[node].children[0], child)),
                Back::Forget { child, gamma } => {
                    let cofaces = &self.contexts[node].cofaces;
                    for bit in bits(gamma) {
                        chain.insert(cofaces[bit]);
                    }
                    stack.push((self.contexts[node].children[0], child));
                }
                Back::Join(left, right) => {
                    let children = &self.contexts[node].children;
                    stack.push((children[1], right));
                    stack.push((children[0], left));
                }
            }
        }
        Some(chain)
    }

    pub fn into_tables(self) -> DpTables {
        DpTables {
            dim: self.dim - 1,
            tables: self
                .tables
                .iter()
                .zip(&self.contexts)
                .map(|(table, ctx)| {
                    table
                        .iter()
                        .map(|(key, e)| {
                            let members = bits(*key).map(|b| ctx.local[b]).collect();
                            (Chain::from_set(self.dim - 1, members), e.cost.weight)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Global indices of the `dim`-simplices inside `bag`, in canonical order.
fn simplices_in_bag(complex: &SimplicialComplex, bag: &[usize], dim: usize) -> Vec<usize> {
    if complex.count(dim) == 0 || bag.len() < dim + 1 {
        return Vec::new();
    }
    bag.iter()
        .copied()
        .combinations(dim + 1)
        .filter_map(|vs| complex.index_of_vertices(&vs))
        .collect()
}

fn position_map(from: &[usize], to: &[usize]) -> Vec<Option<usize>> {
    from.iter().map(|g| to.binary_search(g).ok()).collect()
}

fn remap(mask: u64, positions: &[Option<usize>]) -> u64 {
    bits(mask).fold(0, |acc, b| {
        acc | 1 << positions[b].expect("simplex kept by remap")
    })
}

fn over_budget(bits: usize, budget: u64) -> bool {
    bits >= 64 || (1u64 << bits) > budget
}

/// Uses `ntd` when given (after checking it decomposes the 1-skeleton),
/// otherwise builds one with the min-fill heuristic.
pub(crate) fn decomposition_for(
    complex: &SimplicialComplex,
    ntd: Option<&NiceTreeDecomposition>,
) -> Result<NiceTreeDecomposition> {
    match ntd {
        Some(ntd) => {
            ntd.check_invariants()?;
            validate_decomposition(&complex.skeleton_graph(), &ntd.to_tree_decomposition())
                .into_result()?;
            Ok(ntd.clone())
        }
        None => make_nice(&build_decomposition(
            &complex.skeleton_graph(),
            Strategy::MinFill,
        )?),
    }
}

pub(crate) fn check_chain(complex: &SimplicialComplex, chain: &Chain) -> Result<()> {
    match chain.iter().find(|i| *i >= complex.count(chain.dim())) {
        Some(index) => Err(Error::IndexOutOfRange {
            dim: chain.dim(),
            index,
        }),
        None => Ok(()),
    }
}

pub(crate) fn check_weights(
    weights: Option<&WeightFunction>,
    complex: &SimplicialComplex,
    dim: usize,
) -> Result<()> {
    if let Some(w) = weights {
        if w.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: w.dim(),
            });
        }
        if w.len() != complex.count(dim) {
            return Err(Error::InvalidWeight(format!(
                "weight function covers {} simplices, complex has {}",
                w.len(),
                complex.count(dim)
            )));
        }
    }
    Ok(())
}

/// Runs the table recurrences bottom-up for solution dimension `dim` and
/// target boundary `target` (a `(dim-1)`-chain).
pub(crate) fn run_engine<O: Objective>(
    complex: &SimplicialComplex,
    ntd: &NiceTreeDecomposition,
    target: &Chain,
    objective: &O,
    config: &SolverConfig,
) -> Result<EngineRun> {
    let dim = target.dim() + 1;
    let nodes = ntd.nodes();

    let mut contexts = Vec::with_capacity(nodes.len());
    for node in nodes {
        let local = simplices_in_bag(complex, &node.bag, dim - 1);
        if over_budget(local.len(), config.entry_budget) {
            return Err(Error::BudgetExceeded(format!(
                "a bag of {} vertices holds {} {}-simplices; 2^{} table keys exceed the budget of {}",
                node.bag.len(),
                local.len(),
                dim - 1,
                local.len(),
                config.entry_budget
            )));
        }
        let cofaces = match node.kind {
            NodeKind::Forget(w) => {
                let child_bag = &nodes[node.children[0]].bag;
                simplices_in_bag(complex, child_bag, dim)
                    .into_iter()
                    .filter(|i| complex.simplex(dim, *i).contains_vertex(w))
                    .collect()
            }
            _ => Vec::new(),
        };
        if over_budget(cofaces.len(), config.entry_budget) {
            return Err(Error::BudgetExceeded(format!(
                "forgetting a vertex exposes {} {dim}-simplices; 2^{} local chains exceed the budget of {}",
                cofaces.len(),
                cofaces.len(),
                config.entry_budget
            )));
        }
        contexts.push(NodeContext {
            children: node.children.clone(),
            local,
            cofaces,
        });
    }

    let in_target: BTreeSet<usize> = target.members().clone();
    let mut tables: Vec<Table> = Vec::with_capacity(nodes.len());
    let mut stats = TableStats::default();
    for (id, node) in nodes.iter().enumerate() {
        let ctx = &contexts[id];
        let table = match node.kind {
            NodeKind::Leaf => leaf_table(),
            NodeKind::Introduce(_) => {
                let child = node.children[0];
                introduce_table(&tables[child], &contexts[child].local, &ctx.local)
            }
            NodeKind::Forget(w) => {
                let child = node.children[0];
                forget_table(
                    complex,
                    dim,
                    w,
                    &tables[child],
                    &contexts[child].local,
                    ctx,
                    &in_target,
                    objective,
                )
            }
            NodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                join_table(&tables[a], &tables[b])
            }
        };
        assert!(
            (table.len() as u128) <= 1u128 << ctx.local.len(),
            "node {id}: {} entries exceed 2^{}",
            table.len(),
            ctx.local.len()
        );
        stats.nodes.push(NodeStats {
            kind: node.kind.name(),
            bag_size: node.bag.len(),
            local_simplices: ctx.local.len(),
            entries: table.len(),
        });
        tables.push(table);
    }
    Ok(EngineRun {
        dim,
        contexts,
        tables,
        root: ntd.root(),
        stats,
    })
}

fn leaf_table() -> Table {
    BTreeMap::from([(
        0,
        Entry {
            cost: Cost::ZERO,
            back: Back::Leaf,
        },
    )])
}

fn introduce_table(child: &Table, child_local: &[usize], local: &[usize]) -> Table {
    let positions = position_map(child_local, local);
    child
        .iter()
        .map(|(key, e)| {
            (
                remap(*key, &positions),
                Entry {
                    cost: e.cost,
                    back: Back::Introduce(*key),
                },
            )
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn forget_table<O: Objective>(
    complex: &SimplicialComplex,
    dim: usize,
    forgotten: usize,
    child: &Table,
    child_local: &[usize],
    ctx: &NodeContext,
    target: &BTreeSet<usize>,
    objective: &O,
) -> Table {
    let mut w_mask = 0u64;
    let mut target_w = 0u64;
    for (bit, g) in child_local.iter().enumerate() {
        if complex.simplex(dim - 1, *g).contains_vertex(forgotten) {
            w_mask |= 1 << bit;
            if target.contains(g) {
                target_w |= 1 << bit;
            }
        }
    }
    let keep = position_map(child_local, &ctx.local);

    // boundary mask and cost of every subset of the cofaces
    let n = ctx.cofaces.len();
    let mut subsets: Vec<(u64, Cost)> = Vec::with_capacity(1 << n);
    subsets.push((0, Cost::ZERO));
    let singles: Vec<(u64, Cost)> = ctx
        .cofaces
        .iter()
        .map(|&tau| {
            let mask = complex
                .simplex(dim, tau)
                .facets()
                .map(|f| {
                    let g = complex.index_of(&f).expect("closed under faces");
                    1u64 << child_local
                        .binary_search(&g)
                        .expect("facet lies in the child bag")
                })
                .fold(0, |a, b| a | b);
            (mask, objective.simplex_cost(tau))
        })
        .collect();
    for g in 1u64..(1 << n) {
        let low = g.trailing_zeros() as usize;
        let (m, c) = subsets[(g & (g - 1)) as usize];
        subsets.push((m ^ singles[low].0, c.plus(singles[low].1)));
    }

    let view = ForgetView { child_local };
    let mut table = Table::new();
    for (&key, entry) in child {
        for (gamma, &(boundary, gamma_cost)) in subsets.iter().enumerate() {
            let combined = key ^ boundary;
            let residual = (combined & w_mask) ^ target_w;
            let Some(extra) = objective.residual_cost(residual, &view) else {
                continue;
            };
            let cost = entry.cost.plus(gamma_cost).plus(extra);
            let beta = remap(combined & !w_mask, &keep);
            let candidate = Entry {
                cost,
                back: Back::Forget {
                    child: key,
                    gamma: gamma as u64,
                },
            };
            match table.get(&beta) {
                Some(current) if !cost.beats(&current.cost) => {}
                _ => {
                    table.insert(beta, candidate);
                }
            }
        }
    }
    table
}

fn join_table(left: &Table, right: &Table) -> Table {
    let mut table = Table::new();
    for (&a, ea) in left {
        for (&b, eb) in right {
            let cost = ea.cost.plus(eb.cost);
            match table.get(&(a ^ b)) {
                Some(current) if !cost.beats(&current.cost) => {}
                _ => {
                    table.insert(
                        a ^ b,
                        Entry {
                            cost,
                            back: Back::Join(a, b),
                        },
                    );
                }
            }
        }
    }
    table
}
