use std::collections::BTreeSet;

use super::NiceTreeDecomposition;
use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// What the subtree below a node has "seen" for a chain problem of dimension
/// `d = boundary.dim() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedScope {
    pub node: usize,
    /// Union of the bags in the subtree.
    pub vertices: BTreeSet<usize>,
    /// `K[vertices]` without the d-simplices inside the node's own bag, as
    /// per-dimension sets of indices into the parent complex.
    pub simplices: Vec<BTreeSet<usize>>,
    /// Members of the boundary chain lying in the scope but outside the bag.
    pub partial_boundary: Chain,
}

impl RootedScope {
    pub fn simplices_of_dim(&self, dim: usize) -> BTreeSet<usize> {
        self.simplices.get(dim).cloned().unwrap_or_default()
    }
}

fn inside(bag: &[usize], s: &Simplex) -> bool {
    s.vertices().iter().all(|v| bag.binary_search(v).is_ok())
}

/// Scopes of every node, built bottom-up from the children's scopes.
pub fn scopes(
    complex: &SimplicialComplex,
    ntd: &NiceTreeDecomposition,
    boundary: &Chain,
) -> Result<Vec<RootedScope>> {
    let d = boundary.dim() + 1;
    if let Some(bad) = boundary
        .iter()
        .find(|i| *i >= complex.count(boundary.dim()))
    {
        return Err(Error::IndexOutOfRange {
            dim: boundary.dim(),
            index: bad,
        });
    }
    let levels = complex.dimension().map_or(0, |m| m + 1);
    // K[V_t] per node, kept alongside the published scopes
    let mut induced: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(ntd.len());
    let mut out: Vec<RootedScope> = Vec::with_capacity(ntd.len());
    for (id, node) in ntd.nodes().iter().enumerate() {
        let mut vertices: BTreeSet<usize> = node.bag.iter().copied().collect();
        let mut seen: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); levels];
        for &c in &node.children {
            vertices.extend(out[c].vertices.iter().copied());
            for (dim, set) in induced[c].iter().enumerate() {
                seen[dim].extend(set.iter().copied());
            }
        }
        for (dim, set) in seen.iter_mut().enumerate() {
            for (i, s) in complex.simplices(dim).iter().enumerate() {
                if inside(&node.bag, s) {
                    set.insert(i);
                }
            }
        }
        let mut simplices = seen.clone();
        if let Some(top) = simplices.get_mut(d) {
            top.retain(|i| !inside(&node.bag, complex.simplex(d, *i)));
        }
        let members = boundary
            .iter()
            .filter(|i| {
                seen.get(d - 1).is_some_and(|s| s.contains(i))
                    && !inside(&node.bag, complex.simplex(d - 1, *i))
            })
            .collect();
        out.push(RootedScope {
            node: id,
            vertices,
            simplices,
            partial_boundary: Chain::from_set(d - 1, members),
        });
        induced.push(seen);
    }
    Ok(out)
}

/// Scope of a single node.
pub fn scope(
    complex: &SimplicialComplex,
    ntd: &NiceTreeDecomposition,
    boundary: &Chain,
    node: usize,
) -> Result<RootedScope> {
    ntd.node(node)?;
    let mut all = scopes(complex, ntd, boundary)?;
    Ok(all.swap_remove(node))
}

/// Some node whose bag contains `simplex` (the lowest id). Also checks that the
/// nodes containing it form a connected subtree.
pub fn simplex_home_node(ntd: &NiceTreeDecomposition, simplex: &Simplex) -> Result<usize> {
    let holders: Vec<usize> = ntd
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, n)| inside(&n.bag, simplex))
        .map(|(i, _)| i)
        .collect();
    let Some(&first) = holders.first() else {
        return Err(Error::InvalidDecomposition(format!(
            "no bag contains simplex {simplex}"
        )));
    };
    let linked = holders
        .iter()
        .filter(|t| {
            ntd.nodes()[**t]
                .parent
                .is_some_and(|p| inside(&ntd.nodes()[p].bag, simplex))
        })
        .count();
    if linked + 1 != holders.len() {
        return Err(Error::InvalidDecomposition(format!(
            "nodes containing simplex {simplex} are not connected"
        )));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::super::{build_decomposition, make_nice, NodeKind, Strategy, TreeDecomposition};
    use super::*;
    use crate::complex::boundary;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::build([[0u64, 1, 2]]).unwrap()
    }

    #[test]
    fn root_sees_everything_and_leaf_nothing() {
        let k = triangle();
        let ntd = make_nice(&TreeDecomposition::trivial(3)).unwrap();
        let b = boundary(&k, &Chain::new(&k, 2, [0]).unwrap()).unwrap();
        let root = scope(&k, &ntd, &b, ntd.root()).unwrap();
        assert_eq!(root.vertices.len(), 3);
        assert_eq!(
            root.simplices,
            vec![
                (0..3).collect::<BTreeSet<_>>(),
                (0..3).collect(),
                [0].into_iter().collect(),
            ]
        );
        assert_eq!(root.partial_boundary, b);

        let leaf = scope(&k, &ntd, &b, 0).unwrap();
        assert!(leaf.vertices.is_empty());
        assert!(leaf.simplices.iter().all(BTreeSet::is_empty));
        assert!(leaf.partial_boundary.is_empty());
    }

    #[test]
    fn triangle_enters_at_first_forget() {
        let k = triangle();
        let ntd = make_nice(&TreeDecomposition::trivial(3)).unwrap();
        let b = Chain::empty(1);
        let all = scopes(&k, &ntd, &b).unwrap();
        let first_forget = ntd
            .nodes()
            .iter()
            .position(|n| matches!(n.kind, NodeKind::Forget(_)))
            .unwrap();
        assert!(all[first_forget - 1].simplices[2].is_empty());
        assert_eq!(all[first_forget].simplices[2], [0].into_iter().collect());
    }

    #[test]
    fn unknown_node() {
        let k = triangle();
        let ntd = make_nice(&TreeDecomposition::trivial(3)).unwrap();
        assert_eq!(
            scope(&k, &ntd, &Chain::empty(1), 99).unwrap_err(),
            Error::UnknownNode(99)
        );
    }

    #[test]
    fn home_nodes() {
        let k = triangle();
        let ntd = make_nice(&TreeDecomposition::trivial(3)).unwrap();
        let edge = k.simplex_from_labels(&[0, 1]).unwrap();
        let t = simplex_home_node(&ntd, &edge).unwrap();
        assert!(inside(&ntd.nodes()[t].bag, &edge));
        let v = k.simplex_from_labels(&[2]).unwrap();
        assert!(ntd.nodes()[simplex_home_node(&ntd, &v).unwrap()]
            .bag
            .contains(&2));

        let g = k.skeleton_graph();
        let td = build_decomposition(&g, Strategy::MinFill).unwrap();
        let ntd = make_nice(&td).unwrap();
        let tri = k.simplex_from_labels(&[0, 1, 2]).unwrap();
        assert!(simplex_home_node(&ntd, &tri).is_ok());
        let missing = Simplex::new(vec![0, 7]).unwrap();
        assert!(simplex_home_node(&ntd, &missing).is_err());
    }
}
