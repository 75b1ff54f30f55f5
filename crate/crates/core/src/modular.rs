//! Modules, maximal modular partitions, the decomposition tree and
//! modular-width.
//!
//! The prime case uses closure under splitters: the smallest module holding
//! `{u, v}` is grown by adding every outside vertex that sees part of it.
//! When both `G` and its complement are connected, `u` and `v` share a
//! maximal strong module exactly when that closure is not all of `V`.
//! This is cubic-ish rather than linear, which is fine at the sizes the
//! solvers handle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Every vertex outside `m` sees all of `m` or none of it.
pub fn is_module(g: &Graph, m: &VertexSet) -> bool {
    let k = m.len();
    (0..g.n()).filter(|&v| !m.contains(v)).all(|v| {
        let c = g.neighbors(v).intersection_len(m);
        c == 0 || c == k
    })
}

/// A validated partition of `V(G)` into modules, blocks sorted by minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPartition {
    blocks: Vec<VertexSet>,
}

impl ModularPartition {
    pub fn new(g: &Graph, mut blocks: Vec<VertexSet>) -> Result<Self> {
        check_partition(g.n(), &blocks)?;
        if let Some(b) = blocks.iter().find(|b| !is_module(g, b)) {
            return Err(Error::invalid(alloc::format!("block {b:?} is not a module")));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(ModularPartition { blocks })
    }

    pub(crate) fn trusted(mut blocks: Vec<VertexSet>) -> Self {
        blocks.sort_by_key(|b| b.first());
        ModularPartition { blocks }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `block_of[v]` = index of the block containing `v`.
    pub fn block_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b.iter() {
                idx[v] = i;
            }
        }
        idx
    }
}

fn check_partition(n: usize, blocks: &[VertexSet]) -> Result<()> {
    let mut seen = VertexSet::new(n);
    for b in blocks {
        if b.universe() != n || b.is_empty() {
            return Err(Error::invalid("partition block empty or over the wrong universe"));
        }
        if !b.is_disjoint(&seen) {
            return Err(Error::invalid("partition blocks overlap"));
        }
        seen.union_with(b);
    }
    if seen.len() != n {
        return Err(Error::invalid("partition does not cover every vertex"));
    }
    Ok(())
}

/// Smallest module of `g` containing `seed`.
pub fn module_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let mut m = seed.clone();
    loop {
        let k = m.len();
        let splitters: Vec<usize> = (0..g.n())
            .filter(|&v| !m.contains(v))
            .filter(|&v| {
                let c = g.neighbors(v).intersection_len(&m);
                c != 0 && c != k
            })
            .collect();
        if splitters.is_empty() {
            return m;
        }
        for v in splitters {
            m.insert(v);
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Maximal strong modules when both `g` and its complement are connected.
fn prime_partition(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in u + 1..n {
            if find(&mut parent, u) == find(&mut parent, v) {
                continue;
            }
            let m = module_closure(g, &VertexSet::from_iter(n, [u, v]));
            if m.len() < n {
                for w in m.iter() {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, w));
                    parent[b] = a;
                }
            }
        }
    }
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(VertexSet::new(n));
        }
        blocks[root_block[r]].insert(v);
    }
    blocks
}

/// How the vertex set splits at the top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Parallel,
    Series,
    Prime,
}

fn top_split(g: &Graph) -> (NodeKind, Vec<VertexSet>) {
    let cc = g.connected_components();
    if cc.len() > 1 {
        return (NodeKind::Parallel, cc);
    }
    let co = g.complement().connected_components();
    if co.len() > 1 {
        return (NodeKind::Series, co);
    }
    (NodeKind::Prime, prime_partition(g))
}

/// Partition into maximal strong modules: `CC(G)`, `CC(co-G)`, or the prime split.
pub fn maximal_modular_partition(g: &Graph) -> Result<ModularPartition> {
    if g.n() < 2 {
        return Err(Error::invalid("maximal modular partition needs at least two vertices"));
    }
    Ok(ModularPartition::trusted(top_split(g).1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdNode {
    pub kind: NodeKind,
    /// Host vertex ids.
    pub vertices: VertexSet,
    pub children: Vec<usize>,
}

/// Modular decomposition tree stored as an arena; `nodes[root]` covers `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdTree {
    pub nodes: Vec<MdNode>,
    pub root: usize,
}

impl MdTree {
    pub fn prime_nodes(&self) -> impl Iterator<Item = &MdNode> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Prime)
    }
}

pub fn md_tree(g: &Graph) -> Result<MdTree> {
    if g.n() == 0 {
        return Err(Error::invalid("md_tree of the empty graph"));
    }
    let mut nodes = Vec::new();
    let root = build(g, &g.vertices(), &mut nodes);
    Ok(MdTree { nodes, root })
}

fn build(host: &Graph, set: &VertexSet, nodes: &mut Vec<MdNode>) -> usize {
    let id = nodes.len();
    nodes.push(MdNode { kind: NodeKind::Leaf, vertices: set.clone(), children: Vec::new() });
    if set.len() == 1 {
        return id;
    }
    let sub = host.induced_subgraph(set);
    let (kind, parts) = top_split(&sub.graph);
    let mut children = Vec::with_capacity(parts.len());
    for p in parts {
        let lifted = sub.lift(&p, host.n());
        children.push(build(host, &lifted, nodes));
    }
    nodes[id].kind = kind;
    nodes[id].children = children;
    id
}

/// Largest prime-node arity; 0 when the tree has no prime node.
pub fn modular_width(g: &Graph) -> usize {
    if g.n() <= 1 {
        return 0;
    }
    md_tree(g)
        .map(|t| t.prime_nodes().map(|p| p.children.len()).max().unwrap_or(0))
        .unwrap_or(0)
}

/// One vertex per block, adjacent when the blocks are (completely) adjacent.
pub fn quotient_graph(g: &Graph, blocks: &[VertexSet]) -> Result<Graph> {
    check_partition(g.n(), blocks)?;
    if let Some(b) = blocks.iter().find(|b| !is_module(g, b)) {
        return Err(Error::invalid(alloc::format!("block {b:?} is not a module")));
    }
    let k = blocks.len();
    let mut q = Graph::edgeless(k);
    for i in 0..k {
        let rep = blocks[i].first().unwrap_or(0);
        for (j, b) in blocks.iter().enumerate().skip(i + 1) {
            if g.neighbors(rep).intersection_len(b) > 0 {
                q.add_edge(i, j);
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn modules_of_p4() {
        let g = p4();
        assert!(!is_module(&g, &VertexSet::from_iter(4, [1, 2])));
        assert!(is_module(&g, &VertexSet::singleton(4, 2)));
        assert!(is_module(&g, &VertexSet::new(4)));
        assert!(is_module(&g, &VertexSet::full(4)));
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert!(is_module(&two_k2, &VertexSet::from_iter(4, [0, 1])));
    }

    #[test]
    fn maximal_partitions() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let p = maximal_modular_partition(&two_k3).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(maximal_modular_partition(&p4()).unwrap().len(), 4);
        // K2 joined with 2K1: the K2 side splits into two co-components
        let g = Graph::complete(2).join(&Graph::edgeless(2));
        let p = maximal_modular_partition(&g).unwrap();
        let blocks: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.to_vec()).collect();
        assert_eq!(blocks, alloc::vec![alloc::vec![0], alloc::vec![1], alloc::vec![2, 3]]);
        assert!(maximal_modular_partition(&Graph::edgeless(1)).is_err());
    }

    #[test]
    fn trees() {
        let t = md_tree(&p4()).unwrap();
        assert_eq!(t.nodes[t.root].kind, NodeKind::Prime);
        assert_eq!(t.nodes[t.root].children.len(), 4);
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        let t = md_tree(&two_k2).unwrap();
        assert_eq!(t.nodes[t.root].kind, NodeKind::Parallel);
        for &c in &t.nodes[t.root].children {
            assert_eq!(t.nodes[c].kind, NodeKind::Series);
            assert_eq!(t.nodes[c].children.len(), 2);
        }
        let t = md_tree(&Graph::edgeless(1)).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::Leaf);
    }

    #[test]
    fn widths() {
        assert_eq!(modular_width(&Graph::edgeless(1)), 0);
        assert_eq!(modular_width(&Graph::complete(3).disjoint_union(&Graph::complete(3))), 0);
        assert_eq!(modular_width(&p4()), 4);
    }

    #[test]
    fn quotients() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let p = maximal_modular_partition(&two_k3).unwrap();
        assert_eq!(quotient_graph(&two_k3, p.blocks()).unwrap(), Graph::edgeless(2));
        let j = Graph::edgeless(2).join(&Graph::edgeless(3));
        let blocks = [VertexSet::from_iter(5, [0, 1]), VertexSet::from_iter(5, [2, 3, 4])];
        assert_eq!(quotient_graph(&j, &blocks).unwrap(), Graph::complete(2));
        let singles: Vec<_> = (0..4).map(|v| VertexSet::singleton(4, v)).collect();
        assert_eq!(quotient_graph(&p4(), &singles).unwrap(), p4());
        let bad = [VertexSet::from_iter(4, [0, 3]), VertexSet::from_iter(4, [1, 2])];
        assert!(quotient_graph(&p4(), &bad).is_err());
    }
}
