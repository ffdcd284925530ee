//! Small named complexes and a random instance generator.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Chain, SimplicialComplex};

pub fn triangle() -> SimplicialComplex {
    SimplicialComplex::build([[0u64, 1, 2]]).expect("valid simplex")
}

/// Boundary of the cross-polytope: poles 0 and 5 over the square 1-2-3-4.
pub fn octahedron() -> SimplicialComplex {
    SimplicialComplex::build([
        [0u64, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 1, 4],
        [5, 1, 2],
        [5, 2, 3],
        [5, 3, 4],
        [5, 1, 4],
    ])
    .expect("valid simplices")
}

/// An annulus with outer cycle 0..5 and inner cycle 6-7-8.
pub fn annulus() -> SimplicialComplex {
    SimplicialComplex::build([
        [0u64, 1, 6],
        [1, 2, 7],
        [2, 3, 7],
        [3, 4, 8],
        [4, 5, 8],
        [0, 5, 6],
        [1, 6, 7],
        [3, 7, 8],
        [5, 6, 8],
    ])
    .expect("valid simplices")
}

/// The triangulated strip with triangles `{i, i+1, i+2}` on `n` vertices.
pub fn strip(n: usize) -> SimplicialComplex {
    let triangles = (0..n.saturating_sub(2) as u64).map(|i| [i, i + 1, i + 2]);
    SimplicialComplex::build(triangles).expect("valid simplices")
}

/// The 1-chain of the listed edges, by original labels.
pub fn edge_chain(complex: &SimplicialComplex, edges: &[[u64; 2]]) -> Chain {
    let simplices: Vec<_> = edges
        .iter()
        .map(|e| complex.simplex_from_labels(e).expect("edge in complex"))
        .collect();
    Chain::from_simplices(complex, 1, &simplices).expect("edges in complex")
}

/// A random complex together with a chain problem on it.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub complex: SimplicialComplex,
    /// Dimension of the solution chains.
    pub dim: usize,
    pub target: Chain,
}

/// Draws a complex on at most `max_vertices` vertices from random
/// `dim`-simplices (at most `max_top` of them), plus a `(dim-1)`-chain.
///
/// Half of the targets are boundaries of random chains, so bounded-chain
/// instances are not almost always infeasible.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_top: usize,
    dim: usize,
) -> RandomInstance {
    assert!(dim >= 1 && max_vertices > dim);
    let n = rng.gen_range(dim + 1..=max_vertices);
    let mut pool: Vec<Vec<u64>> = (0..n as u64).combinations(dim + 1).collect();
    pool.shuffle(rng);
    let take = rng.gen_range(1..=max_top.min(pool.len()));
    let mut chosen: Vec<Vec<u64>> = pool.into_iter().take(take).collect();
    // some lower-dimensional maximal faces too
    if dim >= 2 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..n as u64);
        let b = rng.gen_range(0..n as u64);
        if a != b {
            chosen.push(vec![a, b]);
        }
    }
    let complex = SimplicialComplex::build(&chosen).expect("valid simplices");
    let target = if rng.gen_bool(0.5) {
        let top = complex.count(dim);
        let members: BTreeSet<usize> = (0..top).filter(|_| rng.gen_bool(0.4)).collect();
        crate::complex::boundary(&complex, &Chain::from_set(dim, members)).expect("dim >= 1")
    } else {
        let lower = complex.count(dim - 1);
        let members: BTreeSet<usize> = (0..lower).filter(|_| rng.gen_bool(0.3)).collect();
        Chain::from_set(dim - 1, members)
    };
    RandomInstance {
        complex,
        dim,
        target,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_vectors() {
        assert_eq!(triangle().f_vector(), vec![3, 3, 1]);
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
        assert_eq!(annulus().f_vector(), vec![9, 18, 9]);
        assert_eq!(strip(5).f_vector(), vec![5, 7, 3]);
    }

    #[test]
    fn random_instances_respect_limits() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=3 {
            for _ in 0..20 {
                let inst = random_instance(&mut rng, 8, 14, dim);
                assert!(inst.complex.vertex_count() <= 8);
                assert!(inst.complex.count(dim) <= 14);
                assert_eq!(inst.target.dim(), dim - 1);
            }
        }
    }
}
