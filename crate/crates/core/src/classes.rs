//! Graph classes: recognizers and merges of `𝒢`-joins / `𝒢`-unions.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::modular::{modular_width, ModularPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Edgeless,
    Clique,
    /// Disjoint union of cliques.
    Cluster,
    /// Every component is `K_{1,t}`, `t ≥ 0`.
    Stars,
    Cograph,
    /// Forest with maximum degree ≤ 2.
    LinearForest,
    /// Forest with maximum degree ≤ 3.
    BinaryForest,
    /// Forest with maximum degree ≤ d, d ≥ 1.
    BoundedDegForest(usize),
    /// Clique or edgeless.
    KI,
    /// Member of any listed class.
    Union(Vec<GraphClass>),
}

impl GraphClass {
    pub fn bounded_deg_forest(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("bounded-degree forest needs d >= 1"));
        }
        Ok(GraphClass::BoundedDegForest(d))
    }

    pub fn recognize(&self, g: &Graph) -> bool {
        let n = g.n();
        match self {
            GraphClass::Edgeless => g.m() == 0,
            GraphClass::Clique => g.m() == n * n.saturating_sub(1) / 2,
            GraphClass::Cluster => is_cluster(g),
            GraphClass::Stars => is_stars(g),
            GraphClass::Cograph => n <= 1 || modular_width(g) == 0,
            GraphClass::LinearForest => g.is_forest() && g.max_degree() <= 2,
            GraphClass::BinaryForest => g.is_forest() && g.max_degree() <= 3,
            GraphClass::BoundedDegForest(d) => g.is_forest() && g.max_degree() <= *d,
            GraphClass::KI => GraphClass::Clique.recognize(g) || GraphClass::Edgeless.recognize(g),
            GraphClass::Union(cs) => cs.iter().any(|c| c.recognize(g)),
        }
    }

    /// Recognize `G[s]` without the caller building the subgraph.
    pub fn recognize_within(&self, g: &Graph, s: &VertexSet) -> bool {
        self.recognize(&g.induced_subgraph(s).graph)
    }

    /// Classes for which the trivially-mergeable minimum merge is implemented.
    pub fn is_trivially_mergeable(&self) -> bool {
        matches!(
            self,
            GraphClass::Edgeless | GraphClass::Clique | GraphClass::Cluster | GraphClass::Cograph
        )
    }
}

fn is_cluster(g: &Graph) -> bool {
    g.connected_components().iter().all(|c| {
        let k = c.len();
        c.iter().all(|v| g.neighbors(v).len() == k - 1)
    })
}

fn is_stars(g: &Graph) -> bool {
    g.connected_components().iter().all(|c| {
        let k = c.len();
        if k <= 2 {
            return true;
        }
        let edges: usize = c.iter().map(|v| g.degree(v)).sum::<usize>() / 2;
        edges == k - 1 && c.iter().filter(|&v| g.degree(v) == k - 1).count() == 1
    })
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Edgeless => f.write_str("edgeless"),
            GraphClass::Clique => f.write_str("clique"),
            GraphClass::Cluster => f.write_str("cluster"),
            GraphClass::Stars => f.write_str("stars"),
            GraphClass::Cograph => f.write_str("cograph"),
            GraphClass::LinearForest => f.write_str("linear-forest"),
            GraphClass::BinaryForest => f.write_str("binary-forest"),
            GraphClass::BoundedDegForest(d) => write!(f, "forest-{d}"),
            GraphClass::KI => f.write_str("ki"),
            GraphClass::Union(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `edgeless|clique|cluster|stars|cograph|linear-forest|binary-forest|ki`,
/// `forest-<d>`, and `+`-separated unions such as `cluster+linear-forest`.
impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('+') {
            let parts = s.split('+').map(str::parse).collect::<Result<Vec<GraphClass>>>()?;
            return Ok(GraphClass::Union(parts));
        }
        Ok(match s {
            "edgeless" => GraphClass::Edgeless,
            "clique" => GraphClass::Clique,
            "cluster" => GraphClass::Cluster,
            "stars" => GraphClass::Stars,
            "cograph" => GraphClass::Cograph,
            "linear-forest" => GraphClass::LinearForest,
            "binary-forest" => GraphClass::BinaryForest,
            "ki" => GraphClass::KI,
            other => match other.strip_prefix("forest-").map(str::parse::<usize>) {
                Some(Ok(d)) => GraphClass::bounded_deg_forest(d)?,
                _ => return Err(Error::invalid(unknown(other))),
            },
        })
    }
}

fn unknown(s: &str) -> String {
    alloc::format!("unknown graph class '{s}'")
}

/// How a disconnected graph (or complement) splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// `G` disconnected; parts are components.
    Union,
    /// Complement disconnected; parts are co-components.
    Join,
}

/// Merge the given parts (all inducing members of `class`) into as few
/// `class`-modules as the merge rule allows. Parts are host-id sets of `g`.
///
/// For the four trivially mergeable classes the result is a minimum merge;
/// for every other class it is first-fit, valid but not necessarily minimum.
pub(crate) fn merge_parts(
    class: &GraphClass,
    g: &Graph,
    parts: &[VertexSet],
    split: Split,
) -> Vec<VertexSet> {
    let n = g.n();
    let union_all = || {
        let mut all = VertexSet::new(n);
        for p in parts {
            all.union_with(p);
        }
        all
    };
    if parts.is_empty() {
        return Vec::new();
    }
    match (class, split) {
        (GraphClass::Cograph, _) => alloc::vec![union_all()],
        (GraphClass::Clique, Split::Join) | (GraphClass::Edgeless, Split::Union) => {
            alloc::vec![union_all()]
        }
        (GraphClass::Clique, Split::Union) | (GraphClass::Edgeless, Split::Join) => parts.to_vec(),
        (GraphClass::Cluster, Split::Union) => alloc::vec![union_all()],
        (GraphClass::Cluster, Split::Join) => {
            // co-components with several cliques stay; the single-vertex ones
            // together form one clique
            let mut out: Vec<VertexSet> = parts.iter().filter(|p| p.len() > 1).cloned().collect();
            let mut singles = VertexSet::new(n);
            for p in parts.iter().filter(|p| p.len() == 1) {
                singles.union_with(p);
            }
            if !singles.is_empty() {
                out.push(singles);
            }
            out
        }
        _ => first_fit(class, g, parts),
    }
}

fn first_fit(class: &GraphClass, g: &Graph, parts: &[VertexSet]) -> Vec<VertexSet> {
    let mut blocks: Vec<VertexSet> = Vec::new();
    'parts: for p in parts {
        for b in blocks.iter_mut() {
            let cand = b.union(p);
            if class.recognize_within(g, &cand) {
                *b = cand;
                continue 'parts;
            }
        }
        blocks.push(p.clone());
    }
    blocks
}

/// Minimum `𝒢`-merge of a `𝒢`-join or `𝒢`-union, for the trivially mergeable classes.
pub fn g_merge(class: &GraphClass, g: &Graph) -> Result<ModularPartition> {
    if !class.is_trivially_mergeable() {
        return Err(Error::unsupported(alloc::format!("no merge rule for class {class}")));
    }
    let cc = g.connected_components();
    let (parts, split) = if cc.len() > 1 {
        (cc, Split::Union)
    } else {
        let co = g.complement().connected_components();
        if co.len() < 2 {
            return Err(Error::invalid("graph is neither a join nor a union"));
        }
        (co, Split::Join)
    };
    if !parts.iter().all(|p| class.recognize_within(g, p)) {
        return Err(Error::invalid(alloc::format!("not a {class}-join or {class}-union")));
    }
    Ok(ModularPartition::trusted(merge_parts(class, g, &parts, split)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn recognizers() {
        assert!(!GraphClass::Cluster.recognize(&p3()));
        let star3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let g = star3.disjoint_union(&Graph::complete(2)).disjoint_union(&Graph::edgeless(1));
        assert!(GraphClass::Stars.recognize(&g));
        assert!(!GraphClass::Stars.recognize(&Graph::complete(3)));
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!GraphClass::Cograph.recognize(&p4));
        assert!(GraphClass::LinearForest.recognize(&p4));
        assert!(!GraphClass::LinearForest.recognize(&star3));
        assert!(GraphClass::BinaryForest.recognize(&star3));
        assert!(GraphClass::KI.recognize(&Graph::complete(4)));
        assert!(!GraphClass::KI.recognize(&p3()));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["edgeless", "clique", "cluster", "stars", "cograph", "linear-forest",
            "binary-forest", "ki", "forest-4", "cluster+linear-forest"]
        {
            let c: GraphClass = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("forest-0".parse::<GraphClass>().is_err());
        assert!("trees".parse::<GraphClass>().is_err());
    }

    #[test]
    fn merges() {
        let three = Graph::complete(2).disjoint_union(&Graph::complete(3)).disjoint_union(&Graph::edgeless(1));
        assert_eq!(g_merge(&GraphClass::Cluster, &three).unwrap().len(), 1);

        // (K2 ∪ K1) joined with K2: co-components {0,1,2} and the two K2 vertices
        let left = Graph::complete(2).disjoint_union(&Graph::edgeless(1));
        let g = left.join(&Graph::complete(2));
        let m = g_merge(&GraphClass::Cluster, &g).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.blocks()[0].to_vec(), alloc::vec![0, 1, 2]);
        assert_eq!(m.blocks()[1].to_vec(), alloc::vec![3, 4]);

        let g = Graph::edgeless(2).join(&Graph::edgeless(3));
        let m = g_merge(&GraphClass::Edgeless, &g).unwrap();
        assert_eq!(m.len(), 2);

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(g_merge(&GraphClass::Cluster, &p4).is_err());
        assert!(g_merge(&GraphClass::Stars, &three).is_err());
    }
}
