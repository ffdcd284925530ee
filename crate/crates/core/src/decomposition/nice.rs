use std::collections::VecDeque;

use super::TreeDecomposition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

impl NodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Introduce(_) => "introduce",
            NodeKind::Forget(_) => "forget",
            NodeKind::Join => "join",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<usize>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// A rooted decomposition whose nodes are leaves, introduce, forget or
/// (binary) join nodes, with empty bags at the root and at every leaf.
///
/// Node ids are a post-order: every child has a smaller id than its parent
/// and the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> Result<&NiceNode> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Node counts per kind: `[leaf, introduce, forget, join]`.
    pub fn kind_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for n in &self.nodes {
            counts[match n.kind {
                NodeKind::Leaf => 0,
                NodeKind::Introduce(_) => 1,
                NodeKind::Forget(_) => 2,
                NodeKind::Join => 3,
            }] += 1;
        }
        counts
    }

    /// Plain view with the same bags and the parent links as tree edges.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.parent.map(|p| (i, p)))
            .collect();
        TreeDecomposition::new(bags, edges)
    }

    /// Checks the node-kind invariants; `Err` names the first offending node.
    pub fn check_invariants(&self) -> Result<()> {
        let bad =
            |id: usize, why: &str| Err(Error::InvalidDecomposition(format!("node {id}: {why}")));
        if self.nodes.is_empty() {
            return Err(Error::InvalidDecomposition("no nodes".into()));
        }
        let root = self.root();
        if !self.nodes[root].bag.is_empty() || self.nodes[root].parent.is_some() {
            return bad(root, "root must have an empty bag and no parent");
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if node
                .children
                .iter()
                .any(|c| *c >= id || self.nodes[*c].parent != Some(id))
            {
                return bad(id, "child links are inconsistent");
            }
            if id != root && node.parent.is_none() {
                return bad(id, "detached node");
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return bad(id, "leaf must be childless with an empty bag");
                    }
                }
                NodeKind::Introduce(w) => {
                    if node.children.len() != 1 {
                        return bad(id, "introduce node needs one child");
                    }
                    let mut expected = child_bag(0).clone();
                    if expected.contains(&w) {
                        return bad(id, "introduced vertex already in child bag");
                    }
                    expected.push(w);
                    expected.sort_unstable();
                    if expected != node.bag {
                        return bad(id, "bag is not child bag plus introduced vertex");
                    }
                }
                NodeKind::Forget(w) => {
                    if node.children.len() != 1 {
                        return bad(id, "forget node needs one child");
                    }
                    let mut expected = node.bag.clone();
                    if expected.contains(&w) {
                        return bad(id, "forgotten vertex still in bag");
                    }
                    expected.push(w);
                    expected.sort_unstable();
                    if &expected != child_bag(0) {
                        return bad(id, "bag plus forgotten vertex is not the child bag");
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2 {
                        return bad(id, "join node needs two children");
                    }
                    if child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                        return bad(id, "join children must share the node's bag");
                    }
                }
            }
        }
        Ok(())
    }

    fn push(&mut self, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
            parent: None,
        });
        id
    }

    fn introduce(&mut self, below: usize, w: usize) -> usize {
        let mut bag = self.nodes[below].bag.clone();
        let at = bag.binary_search(&w).unwrap_err();
        bag.insert(at, w);
        self.push(bag, NodeKind::Introduce(w), vec![below])
    }

    fn forget(&mut self, below: usize, w: usize) -> usize {
        let mut bag = self.nodes[below].bag.clone();
        let at = bag
            .binary_search(&w)
            .expect("forgotten vertex is in the bag");
        bag.remove(at);
        self.push(bag, NodeKind::Forget(w), vec![below])
    }
}

/// Normalises a tree decomposition to nice form without changing its width.
///
/// The input is first compacted so no bag is contained in a neighbouring bag,
/// which bounds the node count of the result by a constant times
/// `(width + 1) * #vertices`. It is then rooted at node 0; children are visited
/// in decreasing subtree size and glued together by a cascade of binary joins.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if let Some(v) = td.structural_violations().first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    let td = td.compacted();
    let mut nice = NiceTreeDecomposition { nodes: Vec::new() };
    if td.node_count() == 0 {
        nice.push(Vec::new(), NodeKind::Leaf, Vec::new());
        return Ok(nice);
    }

    let adj = td.adjacency();
    let n = td.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut bfs = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    parent[0] = 0;
    while let Some(u) = queue.pop_front() {
        bfs.push(u);
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in bfs.iter().rev().filter(|u| **u != 0) {
        size[parent[u]] += size[u];
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &u in &bfs[1..] {
        children[parent[u]].push(u);
    }
    for c in &mut children {
        c.sort_by(|a, b| size[*b].cmp(&size[*a]).then(a.cmp(b)));
    }

    // top[u]: the nice node whose bag equals td.bag(u)
    let mut top = vec![usize::MAX; n];
    for &u in bfs.iter().rev() {
        let bag = td.bag(u);
        let mut branches = Vec::with_capacity(children[u].len().max(1));
        if children[u].is_empty() {
            let mut cur = nice.push(Vec::new(), NodeKind::Leaf, Vec::new());
            for &w in bag {
                cur = nice.introduce(cur, w);
            }
            branches.push(cur);
        }
        for &c in &children[u] {
            let mut cur = top[c];
            let child_bag = td.bag(c).to_vec();
            for &w in child_bag.iter().filter(|w| bag.binary_search(w).is_err()) {
                cur = nice.forget(cur, w);
            }
            for &w in bag.iter().filter(|w| child_bag.binary_search(w).is_err()) {
                cur = nice.introduce(cur, w);
            }
            branches.push(cur);
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = nice.push(bag.to_vec(), NodeKind::Join, vec![acc, other]);
        }
        top[u] = acc;
    }
    let mut cur = top[0];
    for &w in td.bag(0) {
        cur = nice.forget(cur, w);
    }
    debug_assert_eq!(cur, nice.root());
    debug_assert!(nice.check_invariants().is_ok());
    Ok(nice)
}
