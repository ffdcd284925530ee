use std::collections::{BTreeMap, BTreeSet};

use boundchain::decomposition::{
    build_decomposition, decomposition_from_order, exact_elimination_order, make_nice, scopes,
    validate_decomposition, NiceTreeDecomposition, Strategy,
};
use boundchain::dp::{
    is_homologous_with, obcp_tables, ohcp_tables, solve_obcp_with, solve_ohcp_with, SolverConfig,
    Status,
};
use boundchain::fixtures::{random_instance, RandomInstance};
use boundchain::hasse::{hasse_level, hasse_td_from_skeleton};
use boundchain::oracle::{brute_force_obcp, brute_force_ohcp, brute_force_treewidth, OracleBudget};
use boundchain::{boundary, Chain, SimplicialComplex, UndirectedGraph, WeightFunction};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, dim: usize) -> RandomInstance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 8, 14, dim)
}

fn random_nice(complex: &SimplicialComplex, seed: u64) -> NiceTreeDecomposition {
    let g = complex.skeleton_graph();
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    make_nice(&decomposition_from_order(&g, &order)).unwrap()
}

fn random_chain(complex: &SimplicialComplex, dim: usize, rng: &mut impl Rng) -> Chain {
    let members: Vec<usize> = (0..complex.count(dim))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Chain::new(complex, dim, members).unwrap()
}

fn random_weights(complex: &SimplicialComplex, dim: usize, rng: &mut impl Rng) -> WeightFunction {
    let pairs: Vec<(usize, f64)> = (0..complex.count(dim))
        .map(|i| (i, rng.gen_range(0..5) as f64))
        .collect();
    WeightFunction::from_pairs(complex, dim, pairs).unwrap()
}

fn big() -> SolverConfig {
    SolverConfig::unlimited()
}

fn inside(bag: &[usize], vs: &[usize]) -> bool {
    vs.iter().all(|v| bag.binary_search(v).is_ok())
}

/// Table contents straight from the definition: for every chain of the
/// subtree's scope, its boundary split into the part on the bag and the rest.
fn tables_by_definition(
    complex: &SimplicialComplex,
    ntd: &NiceTreeDecomposition,
    b: &Chain,
    homologous: bool,
) -> Vec<BTreeMap<Chain, f64>> {
    let d = b.dim() + 1;
    let all = scopes(complex, ntd, b).unwrap();
    all.iter()
        .zip(ntd.nodes())
        .map(|(scope, node)| {
            let tops: Vec<usize> = scope.simplices_of_dim(d).into_iter().collect();
            let mut table: BTreeMap<Chain, f64> = BTreeMap::new();
            for mask in 0u64..1 << tops.len() {
                let gamma = Chain::new(
                    complex,
                    d,
                    (0..tops.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| tops[i]),
                )
                .unwrap();
                let bd = boundary(complex, &gamma).unwrap();
                let (on, off): (BTreeSet<usize>, BTreeSet<usize>) = bd
                    .iter()
                    .partition(|i| inside(&node.bag, complex.simplex(d - 1, *i).vertices()));
                let off = Chain::new(complex, d - 1, off).unwrap();
                let value = if homologous {
                    off.add(&scope.partial_boundary).unwrap().len() as f64
                } else if off == scope.partial_boundary {
                    gamma.len() as f64
                } else {
                    continue;
                };
                let key = Chain::new(complex, d - 1, on).unwrap();
                let slot = table.entry(key).or_insert(f64::INFINITY);
                *slot = slot.min(value);
            }
            table
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(seed: u64, dim in 2usize..=3) {
        let inst = instance(seed, dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let c = random_chain(&inst.complex, dim, &mut rng);
        let bb = boundary(&inst.complex, &boundary(&inst.complex, &c).unwrap()).unwrap();
        prop_assert!(bb.is_empty());
    }

    #[test]
    fn boundary_is_linear(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let a = random_chain(k, dim, &mut rng);
        let b = random_chain(k, dim, &mut rng);
        let lhs = boundary(k, &a.add(&b).unwrap()).unwrap();
        let rhs = boundary(k, &a).unwrap().add(&boundary(k, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_group_laws(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let (a, b, c) = (random_chain(k, dim, &mut rng), random_chain(k, dim, &mut rng), random_chain(k, dim, &mut rng));
        let zero = Chain::empty(dim);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert!(a.add(&a).unwrap().is_empty());
    }

    #[test]
    fn closure_is_idempotent(seed: u64, dim in 1usize..=3) {
        let k = instance(seed, dim).complex;
        let all: Vec<Vec<u64>> = (0..=k.dimension().unwrap())
            .flat_map(|d| k.simplices(d).iter().map(|s| s.vertices().iter().map(|v| k.label(*v)).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect();
        prop_assert_eq!(SimplicialComplex::build(&all).unwrap(), k);
    }

    #[test]
    fn decompositions_are_valid_and_nice(seed: u64, n in 1usize..14, p in 0.1f64..0.7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = UndirectedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        for s in [Strategy::MinFill, Strategy::MinDegree] {
            let td = build_decomposition(&g, s).unwrap();
            let report = validate_decomposition(&g, &td);
            prop_assert!(report.is_valid(), "{:?}", report);
            let nice = make_nice(&td).unwrap();
            prop_assert!(nice.check_invariants().is_ok());
            prop_assert_eq!(nice.width(), td.width());
            prop_assert!(validate_decomposition(&g, &nice.to_tree_decomposition()).is_valid());
            prop_assert!(nice.len() <= 4 * (td.width() + 1) * n.max(1) + 1);
        }
        if n <= 10 {
            let (_, exact) = exact_elimination_order(&g, 10).unwrap();
            let brute = brute_force_treewidth(&g, &OracleBudget::default()).unwrap();
            prop_assert_eq!(exact, brute);
            prop_assert!(build_decomposition(&g, Strategy::MinFill).unwrap().width() >= exact);
        }
    }

    #[test]
    fn obcp_tables_match_definition(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let ntd = random_nice(&inst.complex, seed);
        let tables = obcp_tables(&inst.complex, &inst.target, &ntd, None, &big()).unwrap();
        let expected = tables_by_definition(&inst.complex, &ntd, &inst.target, false);
        for (t, want) in expected.iter().enumerate() {
            prop_assert_eq!(tables.entries(t), want, "node {}", t);
        }
    }

    #[test]
    fn ohcp_tables_match_definition(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let ntd = random_nice(&inst.complex, seed);
        let tables = ohcp_tables(&inst.complex, &inst.target, &ntd, None, &big()).unwrap();
        let expected = tables_by_definition(&inst.complex, &ntd, &inst.target, true);
        for (t, want) in expected.iter().enumerate() {
            prop_assert_eq!(tables.entries(t), want, "node {}", t);
        }
    }

    #[test]
    fn obcp_agrees_with_oracle(seed: u64, dim in 1usize..=3, weighted: bool) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let w = weighted.then(|| random_weights(k, dim, &mut ChaCha8Rng::seed_from_u64(seed ^ 5)));
        let dp = solve_obcp_with(k, &inst.target, None, w.as_ref(), &big()).unwrap();
        let oracle = brute_force_obcp(k, &inst.target, w.as_ref(), &OracleBudget::default()).unwrap();
        prop_assert_eq!(dp.status, oracle.status);
        prop_assert_eq!(dp.weight, oracle.weight);
        if let Some(c) = &dp.chain {
            prop_assert_eq!(&boundary(k, c).unwrap(), &inst.target);
            prop_assert_eq!(Some(c.weight(w.as_ref())), dp.weight);
        }
        let nice = random_nice(k, seed ^ 7);
        let again = solve_obcp_with(k, &inst.target, Some(&nice), w.as_ref(), &big()).unwrap();
        prop_assert_eq!(again.weight, dp.weight);
    }

    #[test]
    fn ohcp_agrees_with_oracle(seed: u64, dim in 1usize..=3, weighted: bool) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let b = &inst.target;
        let w = weighted.then(|| random_weights(k, dim - 1, &mut ChaCha8Rng::seed_from_u64(seed ^ 6)));
        let dp = solve_ohcp_with(k, b, None, w.as_ref(), &big()).unwrap();
        let oracle = brute_force_ohcp(k, b, w.as_ref(), &OracleBudget::default()).unwrap();
        prop_assert_eq!(dp.weight, oracle.weight);
        prop_assert_eq!(&b.add(&boundary(k, &dp.witness).unwrap()).unwrap(), &dp.homologous);
        prop_assert_eq!(dp.homologous.weight(w.as_ref()), dp.weight);
        prop_assert!(dp.weight <= b.weight(w.as_ref()));
        prop_assert!(is_homologous_with(k, b, &dp.homologous, None, &big()).unwrap());
        if w.is_none() {
            let null = is_homologous_with(k, b, &Chain::empty(b.dim()), None, &big()).unwrap();
            prop_assert_eq!(dp.weight == 0.0, null);
        }
        let nice = random_nice(k, seed ^ 8);
        let again = solve_ohcp_with(k, b, Some(&nice), w.as_ref(), &big()).unwrap();
        prop_assert_eq!(again.weight, dp.weight);
    }

    #[test]
    fn homology_test_matches_oracle(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let h = random_chain(k, dim - 1, &mut ChaCha8Rng::seed_from_u64(seed ^ 9));
        let dp = is_homologous_with(k, &inst.target, &h, None, &big()).unwrap();
        let sum = inst.target.add(&h).unwrap();
        let oracle = brute_force_obcp(k, &sum, None, &OracleBudget::default()).unwrap();
        prop_assert_eq!(dp, oracle.status == Status::Solved);
    }

    #[test]
    fn uniform_weights_change_nothing(seed: u64, dim in 1usize..=3) {
        let inst = instance(seed, dim);
        let k = &inst.complex;
        let plain = solve_obcp_with(k, &inst.target, None, None, &big()).unwrap();
        let w = WeightFunction::uniform(k, dim);
        let weighted = solve_obcp_with(k, &inst.target, None, Some(&w), &big()).unwrap();
        prop_assert_eq!(plain, weighted);
    }

    #[test]
    fn hasse_decomposition_is_valid(seed: u64, dim in 1usize..=3) {
        let k = instance(seed, dim).complex;
        let nice = random_nice(&k, seed);
        let td = nice.to_tree_decomposition();
        let s = td.max_bag_size();
        let h = hasse_td_from_skeleton(&k, &td, dim).unwrap();
        prop_assert!(validate_decomposition(&hasse_level(&k, dim).unwrap(), &h).is_valid());
        prop_assert!(h.max_bag_size() <= binomial(s, dim) + 1);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn budget_refusal_is_explained() {
    let k = boundchain::hasse::simplex_delta(9).unwrap();
    let b = Chain::empty(1);
    let tiny = SolverConfig {
        entry_budget: 1 << 10,
        ..SolverConfig::default()
    };
    let err = solve_obcp_with(&k, &b, None, None, &tiny).unwrap_err();
    assert!(err.to_string().contains("budget"), "{err}");
}
