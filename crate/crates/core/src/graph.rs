//! Simple undirected graphs on `0..n` with bitset adjacency.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const W: usize = 64;

/// Fixed-universe bitset over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(W)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        Self::from_iter(n, [v])
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range {}", self.n);
        self.words[v / W] |= 1 << (v % W);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / W] &= !(1 << (v % W));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / W] >> (v % W) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * W + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * W + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        Self::full(self.n).difference(self)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// Result of [`Graph::induced_subgraph`]: the subgraph plus id maps.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `to_host[new] = old`
    pub to_host: Vec<usize>,
    /// `from_host[old] = Some(new)` for members of the chosen set
    pub from_host: Vec<Option<usize>>,
}

impl Induced {
    /// Map a set of subgraph vertices back to host ids.
    pub fn lift(&self, s: &VertexSet, host_n: usize) -> VertexSet {
        VertexSet::from_iter(host_n, s.iter().map(|v| self.to_host[v]))
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph { adj: (0..n).map(|_| VertexSet::new(n)).collect() }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(alloc::format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(alloc::format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::invalid(alloc::format!("duplicate edge ({u},{v})")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Adds an edge in place; used by generators. Ignores existing edges.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n() && v < self.n());
        self.link(u, v);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let full = VertexSet::full(n);
        let adj = (0..n)
            .map(|v| {
                let mut s = full.difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph { adj }
    }

    /// Connected components ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Components of `G[s]`, as host-id sets ordered by minimum vertex.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        for start in s.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(n, start);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = VertexSet::new(n);
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next = next.intersection(s).difference(&comp);
                comp.union_with(&next);
                frontier = next;
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `G[s]` with vertices renumbered in ascending host order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Induced {
        let to_host: Vec<usize> = s.iter().collect();
        let mut from_host = vec![None; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            from_host[v] = Some(i);
        }
        let k = to_host.len();
        let adj = to_host
            .iter()
            .map(|&v| VertexSet::from_iter(k, self.adj[v].iter().filter_map(|u| from_host[u])))
            .collect();
        Induced { graph: Graph { adj }, to_host, from_host }
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Maximum degree of `G - x`.
    pub fn max_degree_without(&self, x: &VertexSet) -> usize {
        let keep = x.complement();
        keep.iter().map(|v| self.adj[v].intersection_len(&keep)).max().unwrap_or(0)
    }

    /// `min_{v ∉ x} |N(v) ∩ x|`; errors when `x` is the whole vertex set.
    pub fn min_degree_into(&self, x: &VertexSet) -> Result<usize> {
        (0..self.n())
            .filter(|&v| !x.contains(v))
            .map(|v| self.adj[v].intersection_len(x))
            .min()
            .ok_or_else(|| Error::invalid("min_degree_into: no vertex outside x"))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n() + other.n();
        let off = self.n();
        let mut g = Graph::edgeless(n);
        for (u, v) in self.edges() {
            g.link(u, v);
        }
        for (u, v) in other.edges() {
            g.link(u + off, v + off);
        }
        g
    }

    /// Disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n() {
            for v in 0..other.n() {
                g.link(u, self.n() + v);
            }
        }
        g
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::edgeless(self.n());
        for (u, v) in self.edges() {
            g.link(perm[u], perm[v]);
        }
        g
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.connected_components().len() == self.n()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::edgeless(3));
        assert_eq!(Graph::edgeless(1).complement(), Graph::edgeless(1));
        // 0-1-2-3 becomes 1-3-0-2
        let c = p4().complement();
        assert_eq!(c.edges(), alloc::vec![(0, 2), (0, 3), (1, 3)]);
    }

    #[test]
    fn components() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let cc = two_k3.connected_components();
        assert_eq!(cc.len(), 2);
        assert!(cc.iter().all(|c| c.len() == 3));
        assert_eq!(Graph::edgeless(4).connected_components().len(), 4);
        assert_eq!(p4().connected_components().len(), 1);
    }

    #[test]
    fn induced() {
        let g = p4();
        let k2 = g.induced_subgraph(&VertexSet::from_iter(4, [1, 2]));
        assert_eq!(k2.graph, Graph::complete(2));
        let e2 = g.induced_subgraph(&VertexSet::from_iter(4, [1, 3]));
        assert_eq!(e2.graph, Graph::edgeless(2));
        assert_eq!(e2.to_host, alloc::vec![1, 3]);
        assert_eq!(g.induced_subgraph(&VertexSet::new(4)).graph.n(), 0);
    }

    #[test]
    fn degrees() {
        assert_eq!(Graph::edgeless(0).max_degree(), 0);
        let k3 = Graph::complete(3);
        assert_eq!(k3.min_degree_into(&VertexSet::singleton(3, 0)).unwrap(), 1);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.min_degree_into(&VertexSet::singleton(3, 1)).unwrap(), 1);
        assert_eq!(Graph::edgeless(3).min_degree_into(&VertexSet::singleton(3, 2)).unwrap(), 0);
        assert!(k3.min_degree_into(&VertexSet::full(3)).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn bitset_ops() {
        let a = VertexSet::from_iter(70, [0, 5, 64, 69]);
        let b = VertexSet::from_iter(70, [5, 69]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.difference(&b).to_vec(), alloc::vec![0, 64]);
        assert_eq!(b.complement().len(), 68);
        assert!(b.is_subset(&a));
        assert_eq!(a.first(), Some(0));
    }
}
