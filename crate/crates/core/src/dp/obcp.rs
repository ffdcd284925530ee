use super::{
    check_chain, check_weights, decomposition_for, run_engine, Cost, DpTables, ForgetView,
    Objective, SolverConfig, TableStats,
};
use crate::complex::{boundary, Chain, SimplicialComplex, WeightFunction};
use crate::decomposition::NiceTreeDecomposition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Solved,
    Infeasible,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Solved => "solved",
            Status::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObcpSolution {
    pub status: Status,
    /// A minimum-weight chain bounded by the target, when one exists.
    pub chain: Option<Chain>,
    /// `None` when infeasible.
    pub weight: Option<f64>,
    pub stats: TableStats,
}

impl ObcpSolution {
    pub fn is_solved(&self) -> bool {
        self.status == Status::Solved
    }

    pub(crate) fn infeasible(stats: TableStats) -> Self {
        ObcpSolution {
            status: Status::Infeasible,
            chain: None,
            weight: None,
            stats,
        }
    }
}

struct Bounded<'a> {
    weights: Option<&'a WeightFunction>,
}

impl Objective for Bounded<'_> {
    fn simplex_cost(&self, index: usize) -> Cost {
        Cost {
            weight: self.weights.map_or(1.0, |w| w.get(index)),
            size: 1,
        }
    }

    fn residual_cost(&self, residual: u64, _view: &ForgetView<'_>) -> Option<Cost> {
        (residual == 0).then_some(Cost::ZERO)
    }
}

fn prepare(
    complex: &SimplicialComplex,
    target: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
) -> Result<NiceTreeDecomposition> {
    check_chain(complex, target)?;
    check_weights(weights, complex, target.dim() + 1)?;
    decomposition_for(complex, ntd)
}

/// Minimum-weight `(b.dim() + 1)`-chain whose boundary is exactly `b`.
///
/// Without `ntd` a decomposition of the 1-skeleton is built with min-fill.
/// Unweighted means every simplex weighs 1.
pub fn solve_obcp(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
) -> Result<ObcpSolution> {
    solve_obcp_with(complex, b, ntd, weights, &SolverConfig::default())
}

pub fn solve_obcp_with(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    weights: Option<&WeightFunction>,
    config: &SolverConfig,
) -> Result<ObcpSolution> {
    let ntd = prepare(complex, b, ntd, weights)?;
    if config.check_cycle_first && b.dim() > 0 && !boundary(complex, b)?.is_empty() {
        return Ok(ObcpSolution::infeasible(TableStats::default()));
    }
    let run = run_engine(complex, &ntd, b, &Bounded { weights }, config)?;
    let Some(members) = run.witness() else {
        return Ok(ObcpSolution::infeasible(run.stats));
    };
    let chain = Chain::from_set(b.dim() + 1, members);
    let weight = run.root_cost().map(|c| c.weight);
    Ok(ObcpSolution {
        status: Status::Solved,
        weight,
        chain: Some(chain),
        stats: run.stats,
    })
}

/// All node tables of the bounded-chain recurrence.
pub fn obcp_tables(
    complex: &SimplicialComplex,
    b: &Chain,
    ntd: &NiceTreeDecomposition,
    weights: Option<&WeightFunction>,
    config: &SolverConfig,
) -> Result<DpTables> {
    let ntd = prepare(complex, b, Some(ntd), weights)?;
    Ok(run_engine(complex, &ntd, b, &Bounded { weights }, config)?.into_tables())
}

/// Whether `b + h` bounds some chain.
pub fn is_homologous(complex: &SimplicialComplex, b: &Chain, h: &Chain) -> Result<bool> {
    is_homologous_with(complex, b, h, None, &SolverConfig::default())
}

pub fn is_homologous_with(
    complex: &SimplicialComplex,
    b: &Chain,
    h: &Chain,
    ntd: Option<&NiceTreeDecomposition>,
    config: &SolverConfig,
) -> Result<bool> {
    if b.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: b.dim(),
            right: h.dim(),
        });
    }
    check_chain(complex, h)?;
    Ok(solve_obcp_with(complex, &b.add(h)?, ntd, None, config)?.is_solved())
}

pub fn is_null_homologous(complex: &SimplicialComplex, b: &Chain) -> Result<bool> {
    is_homologous(complex, b, &Chain::empty(b.dim()))
}
