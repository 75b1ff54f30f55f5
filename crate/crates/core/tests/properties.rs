mod common;

use common::*;
use modcard_core::classes::GraphClass;
use modcard_core::gadgets::{smc_from_graph, sumfree_set};
use modcard_core::gmc::{iterated_type_partition, neighborhood_diversity, twin_classes};
use modcard_core::graph::{Graph, VertexSet};
use modcard_core::modular::{is_module, maximal_modular_partition, md_tree, quotient_graph};
use modcard_core::solvers::{brute_force_ldd, check_ldd, LddInstance, BRUTE_FORCE_CAP};
use modcard_core::Rational;
use rand::Rng;

fn small_graphs() -> Vec<Graph> {
    (1..=6).flat_map(all_graphs).map(|a| from_adj(&a)).collect()
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
}

#[test]
fn recognizers_agree() {
    type Rec = fn(&[u32], u32) -> bool;
    let checks: [(GraphClass, Rec); 6] = [
        (GraphClass::Edgeless, edgeless),
        (GraphClass::Clique, clique),
        (GraphClass::Cluster, cluster),
        (GraphClass::Cograph, cograph),
        (GraphClass::Stars, stars),
        (GraphClass::LinearForest, |a, m| forest_max_deg(a, m, 2)),
    ];
    for g in small_graphs() {
        let a = adj(&g);
        let full = (1u32 << g.n()) - 1;
        for (class, rec) in &checks {
            assert_eq!(class.recognize(&g), rec(&a, full), "{class} on {:?}", g.edges());
        }
    }
}

#[test]
fn module_checks_agree() {
    let mut r = rng(21);
    for _ in 0..200 {
        let n = r.gen_range(2..=7);
        let g = random_graph(&mut r, n, 0.5);
        let a = adj(&g);
        for m in 1u32..1 << n {
            let set = VertexSet::from_iter(n, (0..n).filter(|v| m >> v & 1 == 1));
            assert_eq!(is_module(&g, &set), common::is_module(&a, m));
        }
    }
}

#[test]
fn decomposition_is_consistent() {
    for g in small_graphs().into_iter().filter(|g| g.n() >= 2) {
        let p = maximal_modular_partition(&g).unwrap();
        let q = quotient_graph(&g, p.blocks()).unwrap();
        assert_eq!(q.n(), p.len());
        let t = md_tree(&g).unwrap();
        assert_eq!(t.nodes[t.root].vertices.len(), g.n());
        let leaves = t.nodes.iter().filter(|n| n.children.is_empty()).count();
        assert_eq!(leaves, g.n());
    }
}

#[test]
fn nd_and_itp_bounds() {
    for g in small_graphs() {
        let a = adj(&g);
        let nd = neighborhood_diversity(&g).unwrap().cardinality;
        assert_eq!(nd, twin_classes(&g).len());
        assert_eq!(nd, min_partition(&a, |a, m| edgeless(a, m) || clique(a, m)));
        assert!(iterated_type_partition(&g).unwrap() <= nd);
    }
}

#[test]
fn brute_force_ldd_is_minimum() {
    let mut r = rng(22);
    for i in 0..150 {
        let n = r.gen_range(1..=9);
        let g = random_graph(&mut r, n, 0.4);
        let (p, q) = [(0, 1), (1, 2), (1, 1)][i % 3];
        let beta = r.gen_range(-2..=2);
        let want = min_ldd(&adj(&g), (p, q), beta).unwrap();
        let alpha = Rational::new(p as i128, q as i128);
        let inst = LddInstance::new(g.clone(), alpha, beta, want).unwrap();
        let x = brute_force_ldd(&inst, BRUTE_FORCE_CAP).unwrap().unwrap();
        assert_eq!(x.len(), want);
        assert!(check_ldd(&inst, &x));
        if want > 0 {
            let tight = LddInstance::new(g, alpha, beta, want - 1).unwrap();
            assert!(brute_force_ldd(&tight, BRUTE_FORCE_CAP).unwrap().is_none());
        }
    }
}

#[test]
fn blow_up_cliques_match_graph_cliques() {
    let mut r = rng(23);
    for _ in 0..60 {
        let n = r.gen_range(3..=6);
        let g = random_graph(&mut r, n, 0.5);
        let a = adj(&g);
        let has_triangle = (0..n).any(|u| (u + 1..n).any(|v| a[u] >> v & 1 == 1 && a[u] & a[v] != 0));
        let smc = smc_from_graph(&g, 3).unwrap();
        assert_eq!(smc.find_clique().is_some(), has_triangle, "{:?}", g.edges());
    }
}

#[test]
fn sumfree_prefixes() {
    let long = sumfree_set(30);
    for n in 1..30 {
        assert_eq!(sumfree_set(n), long[..n]);
    }
}
