use super::{
    bits, check_chain, check_weights, decomposition_for, run_engine, Cost, DpTables, ForgetView,
    Objective, SolverConfig, TableStats,
};
use crate::complex::{boundary, Chain, SimplicialComplex, WeightFunction};
use crate::decomposition::NiceTreeDecomposition;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct OhcpSolution {
    /// Minimum-weight chain homologous to the input.
    pub homologous: Chain,
    /// A chain with `input + ∂witness = homologous`.
    pub witness: Chain,
    pub weight: f64,
    pub stats: TableStats,
}

struct Homologous<'a> {
    weights: Option<&'a WeightFunction>,
}

impl Objective for Homologous<'_> {
    fn simplex_cost(&self, _index: usize) -> Cost {
        Cost::ZERO
    }

    fn residual_cost(&self, residual: u64, view: &ForgetView<'_>) -> Option<Cost> {
        let weight = bits(residual)
            .map(|b| self.weights.map_or(1.0, |w| w.get(view.child_local[b])))
            .sum();
        Some(Cost {
            weight,
            size: residual.count_ones(),
        })
    }
}

fn prepare(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
) -> Result<NiceTreeDecomposition> {
    check_chain(complex, b)?;
    check_weights(weights, complex, b.dim())?;
    decomposition_for(complex, ntd)
}

/// Minimum-weight chain homologous to `b`. Weights, if given, live on the
/// simplices of `b`'s dimension.
pub fn solve_ohcp(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
) -> Result<OhcpSolution> {
    solve_ohcp_with(complex, b, ntd, weights, &SolverConfig::default())
}

pub fn solve_ohcp_with(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
    config: &SolverConfig,
) -> Result<OhcpSolution> {
    let ntd = prepare(complex, b, ntd, weights)?;
    let run = run_engine(complex, &ntd, b, &Homologous { weights }, config)?;
    let members = run.witness().expect("the empty witness is always feasible");
    let weight = run.root_cost().expect("root entry exists").weight;
    let witness = Chain::from_set(b.dim() + 1, members);
    let homologous = if witness.is_empty() {
        b.clone()
    } else {
        b.add(&boundary(complex, &witness)?)?
    };
    Ok(OhcpSolution {
        homologous,
        witness,
        weight,
        stats: run.stats,
    })
}

/// All node tables of the homologous-chain recurrence.
pub fn ohcp_tables(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: &NiceTreeDecomposition,
    weights: Option<&WeightFunction>,
    config: &SolverConfig,
) -> Result<DpTables> {
    let ntd = prepare(complex, b, Some(ntd), weights)?;
    Ok(run_engine(complex, &ntd, b, &Homologous { weights }, config)?.into_tables())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{make_nice, NodeKind, TreeDecomposition};
    use crate::fixtures;

    fn edges(k: &SimplicialComplex, pairs: &[[u64; 2]]) -> Chain {
        let s: Vec<_> = pairs
            .iter()
            .map(|p| k.simplex_from_labels(p).unwrap())
            .collect();
        Chain::from_simplices(k, 1, &s).unwrap()
    }

    #[test]
    fn no_cofaces_means_input_is_optimal() {
        let k = SimplicialComplex::build([[0u64, 1], [1, 2], [0, 2]]).unwrap();
        let b = edges(&k, &[[0, 1], [1, 2]]);
        let sol = solve_ohcp(&k, &b, None, None).unwrap();
        assert_eq!(sol.homologous, b);
        assert!(sol.witness.is_empty());
        assert_eq!(sol.weight, 2.0);
    }

    #[test]
    fn octahedron_equator_is_null() {
        let k = fixtures::octahedron();
        let b = edges(&k, &[[1, 2], [2, 3], [3, 4], [1, 4]]);
        let sol = solve_ohcp(&k, &b, None, None).unwrap();
        assert_eq!(sol.weight, 0.0);
        assert!(sol.homologous.is_empty());
        assert_eq!(sol.witness.len(), 4);
    }

    #[test]
    fn annulus_outer_cycle_shrinks_to_inner() {
        let k = fixtures::annulus();
        let b = edges(&k, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]);
        let sol = solve_ohcp(&k, &b, None, None).unwrap();
        assert_eq!(sol.weight, 3.0);
        assert_eq!(sol.homologous, edges(&k, &[[6, 7], [7, 8], [6, 8]]));
        assert_eq!(
            b.add(&boundary(&k, &sol.witness).unwrap()).unwrap(),
            sol.homologous
        );
    }

    #[test]
    fn forget_zeroes_triangle_residual() {
        let k = SimplicialComplex::build([[0u64, 1, 2]]).unwrap();
        let b = edges(&k, &[[0, 1], [1, 2], [0, 2]]);
        let ntd = make_nice(&TreeDecomposition::trivial(3)).unwrap();
        let tables = ohcp_tables(&k, &b, &ntd, None, &SolverConfig::default()).unwrap();
        let t = ntd
            .nodes()
            .iter()
            .position(|n| matches!(n.kind, NodeKind::Forget(_)))
            .unwrap();
        let kept = Chain::new(&k, 1, [k.index_of_vertices(&ntd.nodes()[t].bag).unwrap()]).unwrap();
        // with the triangle the two edges through the forgotten vertex cancel
        assert_eq!(tables.value(t, &kept), Some(0.0));
        assert_eq!(tables.value(t, &Chain::empty(1)), Some(2.0));
        assert_eq!(solve_ohcp(&k, &b, Some(&ntd), None).unwrap().weight, 0.0);
    }

    #[test]
    fn weights_live_on_the_cycle_dimension() {
        let k = fixtures::annulus();
        let b = edges(&k, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]);
        let inner = edges(&k, &[[6, 7], [7, 8], [6, 8]]);
        let mut w = WeightFunction::uniform(&k, 1);
        for i in inner.iter() {
            w.set(i, 10.0).unwrap();
        }
        let sol = solve_ohcp(&k, &b, None, Some(&w)).unwrap();
        assert_eq!(sol.weight, 6.0);
        assert_eq!(sol.homologous.weight(Some(&w)), 6.0);
        assert!(inner.iter().all(|i| !sol.homologous.contains(i)));
    }
}
