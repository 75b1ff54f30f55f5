//! Minimum `𝒢`-modular partitions (the recursive merge algorithm), neighborhood
//! diversity, iterated type partition and the modular-width bound check.

use alloc::vec;
use alloc::vec::Vec;

use crate::classes::{merge_parts, GraphClass, Split};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::modular::{is_module, maximal_modular_partition, modular_width, quotient_graph, ModularPartition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmcResult {
    pub partition: ModularPartition,
    pub cardinality: usize,
    pub class: GraphClass,
}

impl GmcResult {
    fn new(class: GraphClass, blocks: Vec<VertexSet>) -> Self {
        let partition = ModularPartition::trusted(blocks);
        GmcResult { cardinality: partition.len(), partition, class }
    }
}

/// Minimum `𝒢`-modular partition for edgeless, clique, cluster or cograph.
pub fn compute_gmc(class: &GraphClass, g: &Graph) -> Result<GmcResult> {
    if !class.is_trivially_mergeable() {
        return Err(Error::unsupported(alloc::format!("compute_gmc for class {class}")));
    }
    if g.n() == 0 {
        return Err(Error::invalid("compute_gmc needs at least one vertex"));
    }
    Ok(GmcResult::new(class.clone(), recursive_partition(class, g)))
}

/// The same recursion for any hereditary class. Merges use first-fit for
/// classes without a merge rule, so the result is a valid `𝒢`-modular
/// partition but minimum only for the trivially mergeable classes.
pub fn recursive_partition(class: &GraphClass, g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if g.n() > 0 {
        recurse(class, g, &g.vertices(), &mut out);
    }
    out
}

fn recurse(class: &GraphClass, host: &Graph, set: &VertexSet, out: &mut Vec<VertexSet>) {
    let sub = host.induced_subgraph(set);
    let h = &sub.graph;
    if class.recognize(h) {
        out.push(set.clone());
        return;
    }
    let lift = |p: &VertexSet| sub.lift(p, host.n());
    let cc = h.connected_components();
    let (parts, split) = if cc.len() > 1 {
        (cc, Split::Union)
    } else {
        let co = h.complement().connected_components();
        if co.len() > 1 {
            (co, Split::Join)
        } else {
            // prime: recurse into each maximal strong module
            let mmp = maximal_modular_partition(h).expect("n >= 2 here");
            for b in mmp.blocks() {
                recurse(class, host, &lift(b), out);
            }
            return;
        }
    };
    let (in_class, rest): (Vec<VertexSet>, Vec<VertexSet>) =
        parts.into_iter().partition(|p| class.recognize_within(h, p));
    for b in merge_parts(class, h, &in_class, split) {
        out.push(lift(&b));
    }
    for p in rest {
        recurse(class, host, &lift(&p), out);
    }
}

/// Minimum `𝒢`-modular partition by subset DP over all modules. Exponential;
/// used for classes without a merge rule (e.g. stars) on small graphs.
pub fn exhaustive_gmc(class: &GraphClass, g: &Graph, cap: usize) -> Result<GmcResult> {
    let n = g.n();
    if n > cap || n > 24 {
        return Err(Error::CapExceeded { what: "exhaustive gmc", size: n, cap: cap.min(24) });
    }
    if n == 0 {
        return Err(Error::invalid("exhaustive_gmc needs at least one vertex"));
    }
    let full = (1usize << n) - 1;
    let to_set = |mask: usize| VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1));
    let good: Vec<bool> = (0..=full)
        .map(|mask| {
            if mask == 0 {
                return false;
            }
            let s = to_set(mask);
            is_module(g, &s) && class.recognize_within(g, &s)
        })
        .collect();
    const INF: u8 = u8::MAX;
    let mut dp = vec![INF; full + 1];
    let mut choice = vec![0usize; full + 1];
    dp[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // submasks of `rest`, each extended by `low`
        let mut sub = rest;
        loop {
            let t = sub | low;
            if good[t] && dp[s ^ t] != INF && dp[s ^ t] + 1 < dp[s] {
                dp[s] = dp[s ^ t] + 1;
                choice[s] = t;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut blocks = Vec::new();
    let mut s = full;
    while s != 0 {
        blocks.push(to_set(choice[s]));
        s ^= choice[s];
    }
    Ok(GmcResult::new(class.clone(), blocks))
}

/// Twin classes: `u ~ v` iff `N(u) \ {v} = N(v) \ {u}`.
pub fn twin_classes(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..n {
        let found = reps.iter().position(|&r| {
            let mut a = g.neighbors(v).clone();
            a.remove(r);
            let mut b = g.neighbors(r).clone();
            b.remove(v);
            a == b
        });
        match found {
            Some(i) => classes[i].insert(v),
            None => {
                reps.push(v);
                classes.push(VertexSet::singleton(n, v));
            }
        }
    }
    classes
}

/// Neighborhood diversity: the `(𝒦 ∪ 𝓘)`-modular cardinality via twin classes.
pub fn neighborhood_diversity(g: &Graph) -> Result<GmcResult> {
    if g.n() == 0 {
        return Err(Error::invalid("neighborhood diversity needs at least one vertex"));
    }
    Ok(GmcResult::new(GraphClass::KI, twin_classes(g)))
}

/// Vertex count of the fixed point of repeated type-graph contraction.
pub fn iterated_type_partition(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::invalid("iterated type partition needs at least one vertex"));
    }
    let mut cur = g.clone();
    loop {
        let classes = twin_classes(&cur);
        if classes.len() == cur.n() {
            return Ok(cur.n());
        }
        cur = quotient_graph(&cur, ModularPartition::trusted(classes).blocks())?;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MwBound {
    pub mw: usize,
    pub gmc: usize,
    pub omega: usize,
    pub holds: bool,
}

/// Registered `ω_𝒢` (largest prime-node arity inside class members).
pub fn omega(class: &GraphClass) -> Option<usize> {
    match class {
        GraphClass::Edgeless
        | GraphClass::Clique
        | GraphClass::Cluster
        | GraphClass::Cograph
        | GraphClass::Stars
        | GraphClass::KI => Some(0),
        _ => None,
    }
}

/// Default vertex cap for the exhaustive stars-mc used by [`check_mw_bound`].
pub const EXHAUSTIVE_GMC_CAP: usize = 16;

/// Evaluates `mw(G) ≤ max(𝒢-mc(G), ω_𝒢)`.
pub fn check_mw_bound(class: &GraphClass, g: &Graph) -> Result<MwBound> {
    let omega = omega(class)
        .ok_or_else(|| Error::unsupported(alloc::format!("no registered omega for {class}")))?;
    let gmc = match class {
        GraphClass::KI => neighborhood_diversity(g)?.cardinality,
        GraphClass::Stars => exhaustive_gmc(class, g, EXHAUSTIVE_GMC_CAP)?.cardinality,
        _ => compute_gmc(class, g)?.cardinality,
    };
    let mw = modular_width(g);
    Ok(MwBound { mw, gmc, omega, holds: mw <= gmc.max(omega) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn gmc_examples() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(compute_gmc(&GraphClass::Cluster, &two_k3).unwrap().cardinality, 1);
        assert_eq!(compute_gmc(&GraphClass::Cluster, &p4()).unwrap().cardinality, 4);
        let r = compute_gmc(&GraphClass::Edgeless, &c4()).unwrap();
        assert_eq!(r.cardinality, 2);
        assert_eq!(r.partition.blocks()[0].to_vec(), alloc::vec![0, 2]);
        assert!(compute_gmc(&GraphClass::Stars, &p4()).is_err());
    }

    #[test]
    fn nd_and_itp() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(neighborhood_diversity(&star).unwrap().cardinality, 2);
        assert_eq!(neighborhood_diversity(&Graph::complete(5)).unwrap().cardinality, 1);
        assert_eq!(neighborhood_diversity(&p4()).unwrap().cardinality, 4);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(iterated_type_partition(&two_k3).unwrap(), 1);
        assert_eq!(iterated_type_partition(&p4()).unwrap(), 4);
        assert_eq!(iterated_type_partition(&c4()).unwrap(), 1);
    }

    #[test]
    fn mw_bound() {
        let b = check_mw_bound(&GraphClass::Cluster, &p4()).unwrap();
        assert_eq!((b.mw, b.gmc, b.omega, b.holds), (4, 4, 0, true));
        let b = check_mw_bound(&GraphClass::Cograph, &Graph::complete(3)).unwrap();
        assert_eq!((b.mw, b.gmc, b.holds), (0, 1, true));
        let b = check_mw_bound(&GraphClass::Edgeless, &c4()).unwrap();
        assert_eq!((b.mw, b.gmc, b.holds), (0, 2, true));
        assert!(check_mw_bound(&GraphClass::LinearForest, &p4()).is_err());
    }

    #[test]
    fn exhaustive_matches_recursion_on_small_cases() {
        for g in [p4(), c4(), Graph::complete(3).join(&Graph::edgeless(2))] {
            for c in [GraphClass::Edgeless, GraphClass::Clique, GraphClass::Cluster, GraphClass::Cograph] {
                assert_eq!(
                    exhaustive_gmc(&c, &g, 16).unwrap().cardinality,
                    compute_gmc(&c, &g).unwrap().cardinality
                );
            }
        }
    }
}
