//! Independent brute-force oracles and graph generators shared by the
//! integration tests. Nothing here calls the algorithms under test; graphs are
//! handled as adjacency bitmasks.

#![allow(dead_code)]

use std::collections::HashMap;

use modcard_core::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adj(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u)).collect()
}

pub fn from_adj(a: &[u32]) -> Graph {
    let n = a.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| a[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

// ------------------------------------------------------------ recognizers

pub fn is_module(a: &[u32], m: u32) -> bool {
    (0..a.len()).filter(|&v| m >> v & 1 == 0).all(|v| {
        let s = a[v] & m;
        s == 0 || s == m
    })
}

pub fn edgeless(a: &[u32], m: u32) -> bool {
    bits(m).all(|v| a[v] & m == 0)
}

pub fn clique(a: &[u32], m: u32) -> bool {
    bits(m).all(|v| a[v] & m == m & !(1 << v))
}

/// No induced `P3`.
pub fn cluster(a: &[u32], m: u32) -> bool {
    bits(m).all(|v| {
        let nb: Vec<usize> = bits(a[v] & m).collect();
        nb.iter().all(|&x| nb.iter().all(|&y| x == y || a[x] >> y & 1 == 1))
    })
}

/// No induced `P4`, checked over all ordered quadruples.
pub fn cograph(a: &[u32], m: u32) -> bool {
    let vs: Vec<usize> = bits(m).collect();
    let e = |x: usize, y: usize| a[x] >> y & 1 == 1;
    for &p in &vs {
        for &q in &vs {
            if q == p || !e(p, q) {
                continue;
            }
            for &r in &vs {
                if r == p || r == q || !e(q, r) || e(p, r) {
                    continue;
                }
                for &s in &vs {
                    if s != p && s != q && s != r && e(r, s) && !e(p, s) && !e(q, s) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every component is a star `K_{1,t}`: acyclic and diameter ≤ 2.
pub fn stars(a: &[u32], m: u32) -> bool {
    let edges: usize = bits(m).map(|v| (a[v] & m).count_ones() as usize).sum::<usize>() / 2;
    let comps = components(a, m);
    if edges + comps.len() != m.count_ones() as usize {
        return false;
    }
    comps.iter().all(|&c| {
        let n = c.count_ones();
        n <= 2 || bits(c).any(|v| (a[v] & c).count_ones() == n - 1)
    })
}

pub fn forest_max_deg(a: &[u32], m: u32, d: u32) -> bool {
    let edges: usize = bits(m).map(|v| (a[v] & m).count_ones() as usize).sum::<usize>() / 2;
    edges + components(a, m).len() == m.count_ones() as usize && bits(m).all(|v| (a[v] & m).count_ones() <= d)
}

pub fn components(a: &[u32], m: u32) -> Vec<u32> {
    let mut left = m;
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grow = bits(comp).fold(comp, |c, v| c | (a[v] & m));
            if grow == comp {
                break;
            }
            comp = grow;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

// ------------------------------------------------------------ modular oracles

/// Minimum number of blocks over all partitions of `V` into modules that
/// satisfy `ok`: subset DP over bitmasks.
pub fn min_partition(a: &[u32], ok: impl Fn(&[u32], u32) -> bool) -> usize {
    let n = a.len();
    let full = (1u32 << n) - 1;
    let good: Vec<bool> = (0..=full).map(|m| m != 0 && is_module(a, m) && ok(a, m)).collect();
    let mut best = vec![usize::MAX; (full + 1) as usize];
    best[0] = 0;
    for m in 1..=full {
        let low = m & m.wrapping_neg();
        let rest = m & !low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if good[block as usize] && best[(m & !block) as usize] != usize::MAX {
                best[m as usize] = best[m as usize].min(best[(m & !block) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Modular-width from first principles: strong modules are the modules that
/// overlap no other module; a strong module's children are the maximal strong
/// modules strictly inside it, and it is prime when its quotient is neither
/// edgeless nor complete.
pub fn modular_width(a: &[u32]) -> usize {
    let n = a.len();
    if n <= 1 {
        return 0;
    }
    let full = (1u32 << n) - 1;
    let modules: Vec<u32> = (1..=full).filter(|&m| is_module(a, m)).collect();
    let overlap = |x: u32, y: u32| x & y != 0 && x & !y != 0 && y & !x != 0;
    let strong: Vec<u32> = modules.iter().copied().filter(|&m| modules.iter().all(|&o| !overlap(m, o))).collect();
    let mut mw = 0;
    for &m in strong.iter().filter(|m| m.count_ones() >= 2) {
        let inner: Vec<u32> = strong.iter().copied().filter(|&c| c != m && c & !m == 0).collect();
        let children: Vec<u32> =
            inner.iter().copied().filter(|&c| !inner.iter().any(|&d| d != c && c & !d == 0)).collect();
        let reps: Vec<usize> = children.iter().map(|c| c.trailing_zeros() as usize).collect();
        let k = reps.len();
        let edges: usize =
            (0..k).map(|i| (i + 1..k).filter(|&j| a[reps[i]] >> reps[j] & 1 == 1).count()).sum();
        if edges != 0 && edges != k * (k - 1) / 2 {
            mw = mw.max(k);
        }
    }
    mw
}

// ------------------------------------------------------------ tables and LDD

/// `f(x) = min_{|X| = x} Δ(G − X)` by exhaustion.
pub fn deletion_table(a: &[u32]) -> Vec<usize> {
    let n = a.len();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut f = vec![usize::MAX; n + 1];
    for x in 0..=full {
        let keep = full & !x;
        let d = bits(keep).map(|v| (a[v] & keep).count_ones() as usize).max().unwrap_or(0);
        let c = x.count_ones() as usize;
        f[c] = f[c].min(d);
    }
    f
}

pub fn ldd_ok(a: &[u32], x: u32, alpha: (i64, i64), beta: i64) -> bool {
    let (p, q) = alpha;
    (0..a.len()).filter(|&v| x >> v & 1 == 0).all(|v| {
        let deg = a[v].count_ones() as i64;
        let inx = (a[v] & x).count_ones() as i64;
        q * inx >= p * deg + q * beta
    })
}

/// Minimum `|X|` of an `(α, β)` linear degree dominating set, if one exists.
pub fn min_ldd(a: &[u32], alpha: (i64, i64), beta: i64) -> Option<usize> {
    let n = a.len();
    let full = (1u32 << n) - 1;
    (0..=full).filter(|&x| ldd_ok(a, x, alpha, beta)).map(|x| x.count_ones() as usize).min()
}

// ------------------------------------------------------------ enumeration

fn invariant(a: &[u32]) -> Vec<(u32, Vec<u32>)> {
    let mut inv: Vec<(u32, Vec<u32>)> = (0..a.len())
        .map(|v| {
            let mut nd: Vec<u32> = bits(a[v]).map(|u| a[u].count_ones()).collect();
            nd.sort_unstable();
            (a[v].count_ones(), nd)
        })
        .collect();
    inv.sort();
    inv
}

fn isomorphic(a: &[u32], b: &[u32]) -> bool {
    let n = a.len();
    let da: Vec<u32> = a.iter().map(|m| m.count_ones()).collect();
    let db: Vec<u32> = b.iter().map(|m| m.count_ones()).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = 0u32;
    fn go(v: usize, a: &[u32], b: &[u32], da: &[u32], db: &[u32], map: &mut [usize], used: &mut u32) -> bool {
        if v == a.len() {
            return true;
        }
        for w in 0..a.len() {
            if *used >> w & 1 == 1 || da[v] != db[w] {
                continue;
            }
            if (0..v).all(|u| (a[v] >> u & 1) == (b[w] >> map[u] & 1)) {
                map[v] = w;
                *used |= 1 << w;
                if go(v + 1, a, b, da, db, map, used) {
                    return true;
                }
                *used &= !(1 << w);
            }
        }
        false
    }
    go(0, a, b, &da, &db, &mut map, &mut used)
}

/// All graphs on `n` vertices up to isomorphism, by adding a vertex to each
/// graph on `n − 1` vertices in every possible way and deduplicating.
pub fn all_graphs(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let prev = all_graphs(n - 1);
    type Invariant = Vec<(u32, Vec<u32>)>;
    let mut buckets: HashMap<Invariant, Vec<Vec<u32>>> = HashMap::new();
    let mut out = Vec::new();
    for g in &prev {
        for nb in 0u32..1 << (n - 1) {
            let mut a: Vec<u32> = g.clone();
            for (v, row) in a.iter_mut().enumerate() {
                if nb >> v & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            a.push(nb);
            let bucket = buckets.entry(invariant(&a)).or_default();
            if bucket.iter().all(|h| !isomorphic(h, &a)) {
                bucket.push(a.clone());
                out.push(a);
            }
        }
    }
    out
}

// ------------------------------------------------------------ random graphs

pub fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::edgeless(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Disjoint union of cliques with sizes drawn from `1..=max_clique` until `n` is reached.
pub fn random_cluster(r: &mut impl Rng, n: usize, max_clique: usize) -> Graph {
    let mut g = Graph::edgeless(0);
    let mut left = n;
    while left > 0 {
        let s = r.gen_range(1..=max_clique.min(left));
        g = g.disjoint_union(&Graph::complete(s));
        left -= s;
    }
    shuffle(r, &g)
}

/// Random forest with every degree ≤ `d`; `d = 0` means unbounded.
pub fn random_forest(r: &mut impl Rng, n: usize, d: usize) -> Graph {
    let mut g = Graph::edgeless(n);
    for v in 1..n {
        if r.gen_bool(0.25) {
            continue;
        }
        let cands: Vec<usize> = (0..v).filter(|&u| d == 0 || g.degree(u) < d).collect();
        if !cands.is_empty() {
            let u = cands[r.gen_range(0..cands.len())];
            g.add_edge(u, v);
        }
    }
    shuffle(r, &g)
}

pub fn random_stars(r: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::edgeless(0);
    let mut left = n;
    while left > 0 {
        let s = r.gen_range(1..=left.min(6));
        let mut star = Graph::edgeless(s);
        for leaf in 1..s {
            star.add_edge(0, leaf);
        }
        g = g.disjoint_union(&star);
        left -= s;
    }
    shuffle(r, &g)
}

pub fn shuffle(r: &mut impl Rng, g: &Graph) -> Graph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    g.relabel(&perm)
}

/// Substitutes `parts[i]` for vertex `i` of `quotient`.
pub fn substitute(quotient: &Graph, parts: &[Graph]) -> Graph {
    let offs: Vec<usize> = parts.iter().scan(0, |s, p| {
        let o = *s;
        *s += p.n();
        Some(o)
    }).collect();
    let n: usize = parts.iter().map(Graph::n).sum();
    let mut g = Graph::edgeless(n);
    for (i, p) in parts.iter().enumerate() {
        for (u, v) in p.edges() {
            g.add_edge(offs[i] + u, offs[i] + v);
        }
    }
    for (i, j) in quotient.edges() {
        for u in 0..parts[i].n() {
            for v in 0..parts[j].n() {
                g.add_edge(offs[i] + u, offs[j] + v);
            }
        }
    }
    g
}
