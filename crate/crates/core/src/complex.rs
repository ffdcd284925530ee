//! Simplicial complexes over dense vertex ids, Z2 chains and the boundary map.
//!
//! Vertices are relabelled to `0..n` at build time in increasing order of
//! their original labels, so the lexicographic order of simplices is the same
//! whether it is read in dense ids or in original labels. Simplices of each
//! dimension are stored sorted, and a simplex's index in that list is its
//! identity everywhere else in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Simplices with more vertices than this are refused; closing one under faces
/// would enumerate `2^n` subsets.
pub const MAX_SIMPLEX_VERTICES: usize = 24;

/// A simplex as a strictly increasing list of dense vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; duplicates and the empty set are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedSimplex("empty vertex list".into()));
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(format!("vertex {} repeated", w[0])));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }
}

/// An immutable simplicial complex, closed under taking faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `levels[d]` holds the d-simplices in lexicographic order.
    levels: Vec<Vec<Simplex>>,
    /// Original label of each dense vertex id, strictly increasing.
    labels: Vec<u64>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices, which are lists of original
    /// vertex labels. Listing a face of an already listed simplex is harmless.
    pub fn build<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u64]>,
    {
        let inputs: Vec<Vec<u64>> = simplices.into_iter().map(|s| s.as_ref().to_vec()).collect();
        let mut labels: Vec<u64> = inputs.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let dense: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();

        let mut levels: Vec<BTreeSet<Simplex>> = Vec::new();
        for raw in &inputs {
            if raw.len() > MAX_SIMPLEX_VERTICES {
                return Err(Error::MalformedSimplex(format!(
                    "{} vertices exceeds the limit of {MAX_SIMPLEX_VERTICES}",
                    raw.len()
                )));
            }
            let simplex = Simplex::new(raw.iter().map(|l| dense[l]).collect())
                .map_err(|_| Error::MalformedSimplex(format!("repeated vertex in {raw:?}")))?;
            let verts = simplex.vertices();
            for mask in 1u32..(1u32 << verts.len()) {
                let face: Vec<usize> = (0..verts.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| verts[i])
                    .collect();
                let d = face.len() - 1;
                if levels.len() <= d {
                    levels.resize_with(d + 1, BTreeSet::new);
                }
                levels[d].insert(Simplex::from_sorted(face));
            }
        }
        Ok(SimplicialComplex {
            levels: levels
                .into_iter()
                .map(|l| l.into_iter().collect())
                .collect(),
            labels,
        })
    }

    /// Assembles a complex from already closed, sorted levels.
    pub(crate) fn from_levels(levels: Vec<Vec<Simplex>>, labels: Vec<u64>) -> Self {
        let mut levels = levels;
        while levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        SimplicialComplex { levels, labels }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.levels.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn simplex(&self, dim: usize, index: usize) -> &Simplex {
        &self.levels[dim][index]
    }

    /// `[#vertices, #edges, #triangles, ...]`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, simplex: &Simplex) -> Option<usize> {
        self.simplices(simplex.dim()).binary_search(simplex).ok()
    }

    pub fn index_of_vertices(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.is_empty() {
            return None;
        }
        let level = self.simplices(vertices.len() - 1);
        level.binary_search_by(|s| s.vertices().cmp(vertices)).ok()
    }

    pub fn contains(&self, simplex: &Simplex) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> u64 {
        self.labels[vertex]
    }

    pub fn vertex_of_label(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Translates original labels into a simplex of this complex.
    pub fn simplex_from_labels(&self, labels: &[u64]) -> Result<Simplex> {
        let dense = labels
            .iter()
            .map(|l| {
                self.vertex_of_label(*l)
                    .ok_or_else(|| Error::UnknownSimplex(format_labels(labels)))
            })
            .collect::<Result<Vec<_>>>()?;
        let simplex = Simplex::new(dense)?;
        if !self.contains(&simplex) {
            return Err(Error::UnknownSimplex(format_labels(labels)));
        }
        Ok(simplex)
    }

    /// Original labels of a simplex, space separated.
    pub fn format_simplex(&self, simplex: &Simplex) -> String {
        let labels: Vec<u64> = simplex.vertices().iter().map(|v| self.labels[*v]).collect();
        format_labels(&labels)
    }

    /// Simplices not contained in any other simplex, in dimension then
    /// lexicographic order.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut out = Vec::new();
        for d in 0..self.levels.len() {
            let mut covered = vec![false; self.levels[d].len()];
            if let Some(up) = self.levels.get(d + 1) {
                for s in up {
                    for f in s.facets() {
                        if let Some(i) = self.index_of(&f) {
                            covered[i] = true;
                        }
                    }
                }
            }
            out.extend(
                self.levels[d]
                    .iter()
                    .zip(covered)
                    .filter(|(_, c)| !c)
                    .map(|(s, _)| s),
            );
        }
        out
    }

    /// The 1-skeleton as a graph on the dense vertex ids.
    pub fn skeleton_graph(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.vertex_count());
        for e in self.simplices(1) {
            g.add_edge(e.vertices()[0], e.vertices()[1]);
        }
        g
    }

    /// `K[U]`: the simplices whose vertices all lie in `vertices`. Unknown
    /// vertex ids select nothing.
    pub fn induced_subcomplex(&self, vertices: &BTreeSet<usize>) -> Subcomplex {
        let kept: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| *v < self.vertex_count())
            .collect();
        let mut to_sub = vec![usize::MAX; self.vertex_count()];
        for (i, v) in kept.iter().enumerate() {
            to_sub[*v] = i;
        }
        let mut levels = Vec::with_capacity(self.levels.len());
        let mut index_maps = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let mut simplices = Vec::new();
            let mut map = Vec::new();
            for (i, s) in level.iter().enumerate() {
                if s.vertices().iter().all(|v| to_sub[*v] != usize::MAX) {
                    simplices.push(Simplex::from_sorted(
                        s.vertices().iter().map(|v| to_sub[*v]).collect(),
                    ));
                    map.push(i);
                }
            }
            levels.push(simplices);
            index_maps.push(map);
        }
        let labels = kept.iter().map(|v| self.labels[*v]).collect();
        let complex = SimplicialComplex::from_levels(levels, labels);
        index_maps.truncate(complex.levels.len());
        Subcomplex {
            complex,
            vertex_map: kept,
            index_maps,
        }
    }
}

pub(crate) fn format_labels(labels: &[u64]) -> String {
    labels
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// An induced subcomplex together with the translation back to its parent.
#[derive(Debug, Clone)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    /// Dense vertex id in the subcomplex → dense vertex id in the parent.
    pub vertex_map: Vec<usize>,
    /// `index_maps[d][i]` is the parent index of the subcomplex's i-th d-simplex.
    pub index_maps: Vec<Vec<usize>>,
}

impl Subcomplex {
    /// Parent indices of the d-simplices present in the subcomplex.
    pub fn parent_indices(&self, dim: usize) -> &[usize] {
        self.index_maps.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// A Z2 chain: a set of simplices of one dimension, named by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    dim: usize,
    members: BTreeSet<usize>,
}

impl Chain {
    pub fn empty(dim: usize) -> Self {
        Chain {
            dim,
            members: BTreeSet::new(),
        }
    }

    /// Builds a chain and checks every index against `complex`.
    pub fn new<I>(complex: &SimplicialComplex, dim: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let count = complex.count(dim);
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|i| **i >= count) {
            return Err(Error::IndexOutOfRange { dim, index: *bad });
        }
        Ok(Chain { dim, members })
    }

    pub(crate) fn from_set(dim: usize, members: BTreeSet<usize>) -> Self {
        Chain { dim, members }
    }

    /// Looks up each simplex in `complex`.
    pub fn from_simplices<'a, I>(
        complex: &SimplicialComplex,
        dim: usize,
        simplices: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Simplex>,
    {
        let mut members = BTreeSet::new();
        for s in simplices {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: s.dim(),
                });
            }
            let i = complex
                .index_of(s)
                .ok_or_else(|| Error::UnknownSimplex(complex_format_dense(s)))?;
            members.insert(i);
        }
        Ok(Chain { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    /// Z2 addition: symmetric difference of the member sets.
    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Chain {
            dim: self.dim,
            members: self
                .members
                .symmetric_difference(&other.members)
                .copied()
                .collect(),
        })
    }

    /// Hamming norm without weights, otherwise the sum of member weights.
    pub fn weight(&self, weights: Option<&WeightFunction>) -> f64 {
        match weights {
            None => self.members.len() as f64,
            Some(w) => self.members.iter().map(|i| w.get(*i)).sum(),
        }
    }

    pub(crate) fn toggle(&mut self, index: usize) {
        if !self.members.remove(&index) {
            self.members.insert(index);
        }
    }
}

fn complex_format_dense(s: &Simplex) -> String {
    s.vertices()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Z2 boundary of a chain of dimension at least one.
pub fn boundary(complex: &SimplicialComplex, chain: &Chain) -> Result<Chain> {
    if chain.dim == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let mut out = Chain::empty(chain.dim - 1);
    for i in chain.iter() {
        let simplex = complex
            .simplices(chain.dim)
            .get(i)
            .ok_or(Error::IndexOutOfRange {
                dim: chain.dim,
                index: i,
            })?;
        for facet in simplex.facets() {
            let f = complex
                .index_of(&facet)
                .expect("complex is closed under faces");
            out.toggle(f);
        }
    }
    Ok(out)
}

/// Non-negative weights on the simplices of one dimension. Simplices without
/// an explicit weight weigh 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    dim: usize,
    weights: Vec<f64>,
}

impl WeightFunction {
    pub fn uniform(complex: &SimplicialComplex, dim: usize) -> Self {
        WeightFunction {
            dim,
            weights: vec![1.0; complex.count(dim)],
        }
    }

    pub fn from_pairs<I>(complex: &SimplicialComplex, dim: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut w = Self::uniform(complex, dim);
        for (index, value) in pairs {
            w.set(index, value)?;
        }
        Ok(w)
    }

    pub fn set(&mut self, index: usize, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidWeight(format!(
                "weight {value} of simplex {index} is not a non-negative real"
            )));
        }
        let dim = self.dim;
        *self
            .weights
            .get_mut(index)
            .ok_or(Error::IndexOutOfRange { dim, index })? = value;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, index: usize) -> f64 {
        self.weights[index]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", complex_format_dense(self))
    }
}
