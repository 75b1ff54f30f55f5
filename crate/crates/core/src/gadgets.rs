//! Hardness artifacts: 2-sumfree sets, star gadgets with prescribed deletion /
//! retention tables, symmetric multicolored clique instances, and the
//! factor-level reduction blueprint with its forward-witness checker.
//!
//! Every size here is a `BigInt`: the padding constants overflow machine words
//! even for two colours. Concrete graphs are only built on request and under a
//! vertex cap.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::GraphClass;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tables::{brute_force_deletion_table, deletion_set};
use crate::Rational;

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn binom2(k: usize) -> usize {
    k * (k - 1) / 2
}

// ---------------------------------------------------------------- sumfree sets

/// Greedy 2-sumfree set: `1, 2, 4, 8, 13, …` — every pair (with repetition)
/// has its own sum. Ascending.
pub fn sumfree_set(n: usize) -> Vec<u64> {
    let mut set: Vec<u64> = Vec::with_capacity(n);
    let mut sums: BTreeSet<u64> = BTreeSet::new();
    let mut c = 0u64;
    while set.len() < n {
        c += 1;
        if set.iter().chain([&c]).any(|&a| sums.contains(&(a + c))) {
            continue;
        }
        for &a in set.iter().chain([&c]) {
            sums.insert(a + c);
        }
        set.push(c);
    }
    set
}

// ---------------------------------------------------------------- triples

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Deletion tables: `c(a_0) = 0 < c(a_1) < …`, all values `> 1`.
    Decreasing,
    /// Retention tables: `c(a_0) > … > c(a_n) = 0`, all values `> 100`.
    Increasing,
}

/// `(a_0, I, c)` with `values = [a_0, a_1, …, a_n]` strictly decreasing and
/// `costs[i] = c(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidTriple {
    pub direction: Direction,
    pub values: Vec<BigInt>,
    pub costs: Vec<BigInt>,
}

impl ValidTriple {
    pub fn new(direction: Direction, values: Vec<BigInt>, costs: Vec<BigInt>) -> Result<Self> {
        if values.len() < 2 || values.len() != costs.len() {
            return Err(Error::invalid("triple needs a0, a non-empty I, and one cost per value"));
        }
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid("triple values must be strictly decreasing"));
        }
        let last = values.last().unwrap();
        match direction {
            Direction::Decreasing => {
                if *last <= BigInt::one() {
                    return Err(Error::invalid("deletion triple values must exceed 1"));
                }
                if !costs[0].is_zero() || costs.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::invalid("deletion costs must start at 0 and strictly increase"));
                }
            }
            Direction::Increasing => {
                if *last <= big(100) {
                    return Err(Error::invalid("retention triple values must exceed 100"));
                }
                if !costs.last().unwrap().is_zero() || costs.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::invalid("retention costs must strictly decrease to 0"));
                }
            }
        }
        Ok(ValidTriple { direction, values, costs })
    }

    pub fn from_u64(direction: Direction, values: &[u64], costs: &[u64]) -> Result<Self> {
        Self::new(direction, values.iter().map(|&v| big(v)).collect(), costs.iter().map(|&v| big(v)).collect())
    }

    pub fn a0(&self) -> &BigInt {
        &self.values[0]
    }

    /// `|I|`.
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(a_0 · c)^10` with `c = c(a_n)` for deletion and `c(a_0)` for retention.
    pub fn size_bound(&self) -> BigInt {
        let c = match self.direction {
            Direction::Decreasing => self.costs.last().unwrap(),
            Direction::Increasing => &self.costs[0],
        };
        (self.a0() * c).pow(10)
    }
}

/// Disjoint stars as `(degree, count)` groups, in construction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarProfile {
    pub groups: Vec<(BigInt, BigInt)>,
}

impl StarProfile {
    pub fn vertices(&self) -> BigInt {
        self.groups.iter().map(|(d, c)| (d + 1u32) * c).sum()
    }

    pub fn leaves(&self) -> BigInt {
        self.groups.iter().map(|(d, c)| d * c).sum()
    }

    fn build(&self, cap: usize) -> Result<Graph> {
        let n = cap_usize("star graph", &self.vertices(), cap)?;
        let mut edges = Vec::new();
        let mut next = 0usize;
        for (d, c) in &self.groups {
            let (d, c) = (d.to_usize().unwrap(), c.to_usize().unwrap());
            for _ in 0..c {
                let centre = next;
                edges.extend((1..=d).map(|i| (centre, centre + i)));
                next += d + 1;
            }
        }
        Graph::from_edges(n, &edges)
    }
}

fn cap_usize(what: &'static str, v: &BigInt, cap: usize) -> Result<usize> {
    match v.to_usize() {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded { what, size: v.to_usize().unwrap_or(usize::MAX), cap }),
    }
}

/// `c(a_i) − c(a_{i−1})` stars of degree `a_{i−1}` for each `i`, plus one star of degree `a_n`.
pub fn deletion_star_profile(t: &ValidTriple) -> Result<StarProfile> {
    if t.direction != Direction::Decreasing {
        return Err(Error::invalid("deletion stars need a decreasing-valid triple"));
    }
    let mut groups: Vec<(BigInt, BigInt)> =
        (1..t.values.len()).map(|i| (t.values[i - 1].clone(), &t.costs[i] - &t.costs[i - 1])).collect();
    groups.push((t.values.last().unwrap().clone(), BigInt::one()));
    Ok(StarProfile { groups })
}

/// `c(a_{i−1}) − c(a_i)` stars of degree `a_i` for each `i`, plus one star of
/// degree `a_0`; `p` is the leaf count and `l = 1`.
pub fn retention_star_profile(t: &ValidTriple) -> Result<(StarProfile, BigInt)> {
    if t.direction != Direction::Increasing {
        return Err(Error::invalid("retention stars need an increasing-valid triple"));
    }
    let mut groups: Vec<(BigInt, BigInt)> =
        (1..t.values.len()).map(|i| (t.values[i].clone(), &t.costs[i - 1] - &t.costs[i])).collect();
    groups.push((t.a0().clone(), BigInt::one()));
    let prof = StarProfile { groups };
    let p = prof.leaves();
    Ok((prof, p))
}

pub const GADGET_CAP: usize = 200_000;

pub fn deletion_star_graph(t: &ValidTriple, cap: usize) -> Result<Graph> {
    deletion_star_profile(t)?.build(cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetentionGadget {
    pub graph: Graph,
    pub p: BigInt,
    pub l: usize,
}

pub fn retention_star_graph(t: &ValidTriple, cap: usize) -> Result<RetentionGadget> {
    let (prof, p) = retention_star_profile(t)?;
    Ok(RetentionGadget { graph: prof.build(cap)?, p, l: 1 })
}

// ---------------------------------------------------------------- verification

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyPath {
    Enumeration,
    Structural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetReport {
    pub path: VerifyPath,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
}

impl GadgetReport {
    pub fn holds(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }

    /// The failing condition numbers.
    pub fn failures(&self) -> Vec<u8> {
        [(1, self.cond1), (2, self.cond2), (3, self.cond3)].into_iter().filter(|c| !c.1).map(|c| c.0).collect()
    }
}

pub const VERIFY_ENUM_CAP: usize = 16;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u)).collect()
}

fn as_index(v: &BigInt) -> Option<usize> {
    if v.is_negative() { None } else { v.to_usize() }
}

/// Star degree per component (`K2` counts as degree 1, `K1` as 0), descending.
fn star_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = g.connected_components().iter().map(|c| c.len() - 1).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

pub fn verify_deletion_graph(g: &Graph, t: &ValidTriple) -> Result<GadgetReport> {
    if t.direction != Direction::Decreasing {
        return Err(Error::invalid("deletion graph check needs a decreasing-valid triple"));
    }
    let n = g.n();
    let cond1 = BigInt::from(g.max_degree()) == *t.a0() && BigInt::from(n) <= t.size_bound();
    let vals = &t.values;
    if n <= VERIFY_ENUM_CAP {
        let f = brute_force_deletion_table(g, VERIFY_ENUM_CAP)?.values;
        let adj = masks(g);
        let full = (1u32 << n) - 1;
        let exact = |x: usize, target: usize| {
            (0..=full).filter(|m| m.count_ones() as usize == x).any(|m| {
                let keep = full & !m;
                (0..n).filter(|v| keep >> v & 1 == 1).map(|v| (adj[v] & keep).count_ones() as usize).max().unwrap_or(0)
                    == target
            })
        };
        let cond2 = (1..vals.len()).all(|i| match (as_index(&t.costs[i]), as_index(&vals[i])) {
            (Some(c), Some(a)) if c <= n => exact(c, a),
            _ => false,
        });
        let cond3 = (1..vals.len()).all(|i| match as_index(&t.costs[i]) {
            Some(c) if c <= n + 1 => BigInt::from(f[c - 1]) >= vals[i - 1],
            _ => BigInt::from(f[n]) >= vals[i - 1],
        });
        return Ok(GadgetReport { path: VerifyPath::Enumeration, cond1, cond2, cond3 });
    }
    if !GraphClass::Stars.recognize(g) {
        return Err(Error::unsupported("deletion graph check: more than 16 vertices and not a stars graph"));
    }
    let d = star_degrees(g);
    let f = |x: usize| d.get(x).copied().unwrap_or(0);
    // exactly `x` deletions can leave maximum degree exactly `dd` iff
    // min_cost(dd) ≤ x ≤ n − (dd + 1)
    let exact = |x: usize, dd: usize| {
        let gt = d.iter().filter(|&&e| e > dd).count();
        let min_cost = if d.contains(&dd) {
            gt
        } else if let Some(shave) = d.iter().filter(|&&e| e > dd).map(|e| e - dd).min() {
            gt - 1 + shave
        } else {
            return false;
        };
        min_cost <= x && x + dd < n
    };
    let cond2 = (1..vals.len()).all(|i| match (as_index(&t.costs[i]), as_index(&vals[i])) {
        (Some(c), Some(a)) => exact(c, a),
        _ => false,
    });
    let cond3 = (1..vals.len()).all(|i| {
        let c = as_index(&t.costs[i]).unwrap_or(usize::MAX);
        BigInt::from(f(c.saturating_sub(1))) >= vals[i - 1]
    });
    Ok(GadgetReport { path: VerifyPath::Structural, cond1, cond2, cond3 })
}

pub fn verify_retention_graph(g: &Graph, t: &ValidTriple, p: &BigInt, l: usize) -> Result<GadgetReport> {
    if t.direction != Direction::Increasing {
        return Err(Error::invalid("retention graph check needs an increasing-valid triple"));
    }
    let n = g.n();
    let low = (0..n).filter(|&v| g.degree(v) <= l).count();
    let cond1 = BigInt::from(g.max_degree()) == *t.a0()
        && BigInt::from(n) <= t.size_bound()
        && BigInt::from(low) == *p;
    let vals = &t.values;
    // a_{n+1} = l
    let next = |i: usize| if i + 1 < vals.len() { vals[i + 1].clone() } else { BigInt::from(l) };
    let size = |i: usize| as_index(&(p + &t.costs[i]));
    if n <= VERIFY_ENUM_CAP {
        let adj = masks(g);
        let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let delta = |m: u32| {
            (0..n).filter(|v| m >> v & 1 == 0).map(|v| (adj[v] & m).count_ones() as usize).min()
        };
        let cond2 = (0..vals.len()).all(|i| match (size(i), as_index(&vals[i])) {
            (Some(x), Some(a)) if x < n => {
                (0..full).filter(|m| m.count_ones() as usize == x).any(|m| delta(m) == Some(a))
            }
            _ => false,
        });
        let cond3 = (0..vals.len()).all(|i| {
            let x = size(i).unwrap_or(usize::MAX).min(n);
            (0..full)
                .filter(|m| (m.count_ones() as usize) < x)
                .all(|m| delta(m).is_none_or(|d| BigInt::from(d) <= next(i)))
        });
        return Ok(GadgetReport { path: VerifyPath::Enumeration, cond1, cond2, cond3 });
    }
    if !GraphClass::Stars.recognize(g) {
        return Err(Error::unsupported("retention graph check: more than 16 vertices and not a stars graph"));
    }
    let d = star_degrees(g);
    // for dd ≥ 2: some X of size x has δ(G − X, X) ≥ dd iff the survivors can
    // be centres of degree ≥ dd only, i.e. n − #{centres ≥ dd} ≤ x ≤ n − 1
    let at_least = |x: usize, dd: usize| {
        let big_centres = d.iter().filter(|&&e| e >= dd).count();
        big_centres > 0 && n - big_centres <= x && x < n
    };
    let exactly = |x: usize, a: usize| a >= 2 && at_least(x, a) && !at_least(x, a + 1);
    let cond2 = (0..vals.len()).all(|i| match (size(i), as_index(&vals[i])) {
        (Some(x), Some(a)) => exactly(x, a),
        _ => false,
    });
    let cond3 = (0..vals.len()).all(|i| {
        let Some(x) = size(i) else { return true };
        if x == 0 {
            return true;
        }
        // f is non-decreasing, so the largest smaller size decides
        let bound = next(i).to_usize().unwrap_or(usize::MAX);
        !at_least(x - 1, bound.max(1) + 1)
    });
    Ok(GadgetReport { path: VerifyPath::Structural, cond1, cond2, cond3 })
}

// ---------------------------------------------------------------- SMC instances

/// Symmetric multicolored clique instance: `k` colour classes of `n`
/// vertices; vertex `(c, r)` has id `c·n + r` when viewed as a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmcInstance {
    pub k: usize,
    pub n: usize,
    /// `(c1, r1, c2, r2)` with `c1 < c2`.
    edges: BTreeSet<(usize, usize, usize, usize)>,
}

impl SmcInstance {
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = (usize, usize, usize, usize)>) -> Result<Self> {
        if k < 2 || n < k {
            return Err(Error::invalid(format!("need n >= k >= 2, got k={k}, n={n}")));
        }
        let mut set = BTreeSet::new();
        for (c1, r1, c2, r2) in edges {
            if c1 >= k || c2 >= k || r1 >= n || r2 >= n {
                return Err(Error::invalid("smc edge out of range"));
            }
            if c1 == c2 {
                return Err(Error::invalid("smc edge inside a colour class"));
            }
            set.insert(if c1 < c2 { (c1, r1, c2, r2) } else { (c2, r2, c1, r1) });
        }
        for &(c1, r1, c2, r2) in &set {
            if !set.contains(&(c1, r2, c2, r1)) {
                return Err(Error::invalid(format!("missing symmetric edge for ({c1},{r1})-({c2},{r2})")));
            }
        }
        Ok(SmcInstance { k, n, edges: set })
    }

    pub fn has_edge(&self, c1: usize, r1: usize, c2: usize, r2: usize) -> bool {
        if c1 < c2 {
            self.edges.contains(&(c1, r1, c2, r2))
        } else {
            self.edges.contains(&(c2, r2, c1, r1))
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// `pick[c]` = chosen vertex index in colour `c`.
    pub fn is_clique(&self, pick: &[usize]) -> bool {
        pick.len() == self.k
            && pick.iter().all(|&r| r < self.n)
            && (0..self.k).all(|i| (i + 1..self.k).all(|j| self.has_edge(i, pick[i], j, pick[j])))
    }

    /// First multicolored clique in lexicographic order, by backtracking.
    pub fn find_clique(&self) -> Option<Vec<usize>> {
        let mut pick = Vec::with_capacity(self.k);
        self.extend(&mut pick).then_some(pick)
    }

    fn extend(&self, pick: &mut Vec<usize>) -> bool {
        let c = pick.len();
        if c == self.k {
            return true;
        }
        for r in 0..self.n {
            if (0..c).all(|i| self.has_edge(i, pick[i], c, r)) {
                pick.push(r);
                if self.extend(pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::edgeless(self.k * self.n);
        for &(c1, r1, c2, r2) in &self.edges {
            g.add_edge(c1 * self.n + r1, c2 * self.n + r2);
        }
        g
    }
}

/// Random symmetric instance with edge density `density` and a planted
/// multicolored clique; returns the instance and the planted picks.
pub fn smc_from_clique(k: usize, n: usize, density: Rational, seed: u64) -> Result<(SmcInstance, Vec<usize>)> {
    if density.is_negative() || density > Rational::one() {
        return Err(Error::invalid("density must lie in [0, 1]"));
    }
    if k < 2 || n < k {
        return Err(Error::invalid(format!("need n >= k >= 2, got k={k}, n={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (num, den) = (*density.numer() as u128, *density.denom() as u128);
    let mut edges = Vec::new();
    for c1 in 0..k {
        for c2 in c1 + 1..k {
            for r1 in 0..n {
                for r2 in r1..n {
                    if rng.gen_range(0..den) < num {
                        edges.push((c1, r1, c2, r2));
                        edges.push((c1, r2, c2, r1));
                    }
                }
            }
        }
    }
    let pick: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, pick[i], j, pick[j]));
            edges.push((i, pick[j], j, pick[i]));
        }
    }
    Ok((SmcInstance::new(k, n, edges)?, pick))
}

/// Blow-up of `g`: colour class `i` is a copy of `V(g)`, and `(i, u)–(j, v)`
/// is an edge for `i ≠ j` whenever `uv ∈ E(g)`. A yes-instance iff `g` has a
/// `k`-clique.
pub fn smc_from_graph(g: &Graph, k: usize) -> Result<SmcInstance> {
    let n = g.n();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for (u, v) in g.edges() {
                edges.push((i, u, j, v));
                edges.push((i, v, j, u));
            }
        }
    }
    SmcInstance::new(k, n, edges)
}

// ---------------------------------------------------------------- reduction blueprint

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// `α = 0`, `β` part of the input.
    Alpha0,
    /// `0 < α < 1` and `β` fixed constants.
    Alpha01 { alpha: Rational, beta: i64 },
    /// `α = 1`, `β` part of the input.
    Alpha1,
}

impl fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionCase::Alpha0 => f.write_str("alpha0"),
            ReductionCase::Alpha01 { alpha, beta } => write!(f, "alpha01({alpha},{beta})"),
            ReductionCase::Alpha1 => f.write_str("alpha1"),
        }
    }
}

/// Desk-scale replacements for the padding constants. Any override marks the
/// blueprint as scaled: the proof inequalities no longer apply to it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub r: Option<BigInt>,
    pub s: Option<BigInt>,
    pub beta_abs: Option<BigInt>,
    pub x: Option<BigInt>,
    pub y: Option<BigInt>,
    pub m: Option<BigInt>,
    pub p_prime: Option<BigInt>,
}

impl Overrides {
    pub fn is_empty(&self) -> bool {
        *self == Overrides::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    N,
    K,
    A(usize),
    B(usize),
    D(usize),
    R(usize),
    S(usize),
    T(usize),
    U(usize, usize),
    Rij(usize, usize),
    Aij(usize, usize),
    Bij(usize, usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::N => f.write_str("N"),
            Role::K => f.write_str("K"),
            Role::A(i) => write!(f, "A_{}", i + 1),
            Role::B(i) => write!(f, "B_{}", i + 1),
            Role::D(i) => write!(f, "D_{}", i + 1),
            Role::R(i) => write!(f, "R_{}", i + 1),
            Role::S(i) => write!(f, "S_{}", i + 1),
            Role::T(i) => write!(f, "T_{}", i + 1),
            Role::U(i, j) => write!(f, "U_{}_{}", i + 1, j + 1),
            Role::Rij(i, j) => write!(f, "R_{}_{}", i + 1, j + 1),
            Role::Aij(i, j) => write!(f, "A_{}_{}", i + 1, j + 1),
            Role::Bij(i, j) => write!(f, "B_{}_{}", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Edgeless,
    DeletionStars(ValidTriple),
    /// An edgeless pad of `pad` vertices beside a retention star graph above `(p, 1)`.
    RetentionStars { triple: ValidTriple, p: BigInt, pad: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub role: Role,
    pub size: BigInt,
    pub kind: FactorKind,
}

/// `I_ij`: sums `a + b` over symmetric edge pairs between colours `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSums {
    pub i: usize,
    pub j: usize,
    /// `(a + b, a, b)` with `a ≥ b`, descending by sum.
    pub sums: Vec<(BigInt, BigInt, BigInt)>,
    pub ell: BigInt,
    pub hbar: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalars {
    /// The row value for `r`.
    pub r: BigInt,
    /// Multiplier actually applied to the greedy sumfree set.
    pub scale: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub l: BigInt,
    pub beta: BigInt,
    pub a0: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub m: BigInt,
    /// Leaf count of the `S_i` retention gadget (α = 0 only, else 0).
    pub p: BigInt,
    pub p_prime: BigInt,
    pub q1: BigInt,
    pub q2: BigInt,
    pub q: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionBlueprint {
    pub case: ReductionCase,
    pub k: usize,
    pub n: usize,
    pub scaled: bool,
    /// `a_1 > … > a_n` after scaling.
    pub sumfree: Vec<BigInt>,
    pub scalars: Scalars,
    pub pairs: Vec<PairSums>,
    pub factors: Vec<Factor>,
    /// Factor index pairs joined completely.
    pub adjacency: Vec<(usize, usize)>,
}

impl ReductionBlueprint {
    pub fn factor(&self, role: Role) -> Option<usize> {
        self.factors.iter().position(|f| f.role == role)
    }

    /// `α` as `(numerator, denominator)`.
    pub fn alpha(&self) -> (BigInt, BigInt) {
        match &self.case {
            ReductionCase::Alpha0 => (BigInt::zero(), BigInt::one()),
            ReductionCase::Alpha1 => (BigInt::one(), BigInt::one()),
            ReductionCase::Alpha01 { alpha, .. } => frac(alpha),
        }
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.factors.len()];
        for &(a, b) in &self.adjacency {
            nb[a].push(b);
            nb[b].push(a);
        }
        nb
    }

    pub fn total_vertices(&self) -> BigInt {
        self.factors.iter().map(|f| &f.size).sum()
    }
}

// Padding constants run to hundreds of thousands of digits; rational
// normalisation (gcd) on them is far too slow, so stay in integers.
fn frac(r: &Rational) -> (BigInt, BigInt) {
    (BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn mul_floor(v: &BigInt, num: &BigInt, den: &BigInt) -> BigInt {
    (v * num).div_floor(den)
}

fn mul_ceil(v: &BigInt, num: &BigInt, den: &BigInt) -> BigInt {
    -(-(v * num)).div_floor(den)
}

/// The blueprint for the given case: Table-style scalars, the factor roster
/// with exact sizes and star triples, and the factor adjacency.
pub fn build_reduction(smc: &SmcInstance, case: &ReductionCase, ov: &Overrides) -> Result<ReductionBlueprint> {
    let (k, n) = (smc.k, smc.n);
    let c2 = binom2(k);
    let kb = BigInt::from(k);
    let nb = BigInt::from(n);
    let cb = BigInt::from(c2);
    let base = sumfree_set(n);
    let pick = |o: &Option<BigInt>, d: BigInt| o.clone().unwrap_or(d);
    let two_k1 = BigInt::from(2 * (k - 1));

    // r and the scale applied to the greedy set
    let r_table = 2 * (k - 1) * (k - 1) * k * k * k;
    let (r, scale) = match case {
        ReductionCase::Alpha1 => {
            let r = pick(&ov.r, big(r_table as u64));
            (r.clone(), r)
        }
        ReductionCase::Alpha0 => {
            let r = pick(&ov.r, big(r_table as u64));
            // every element must exceed 100; the smallest greedy element is 1
            let mult = big(100) / &r + 1u32;
            (r.clone(), &r * mult)
        }
        ReductionCase::Alpha01 { alpha, beta } => {
            if *alpha <= Rational::zero() || *alpha >= Rational::one() {
                return Err(Error::invalid("alpha01 needs 0 < alpha < 1"));
            }
            let (p, q) = frac(alpha);
            let inner = big(10) * &kb * BigInt::from(beta.unsigned_abs() + 10);
            let r = pick(&ov.r, mul_ceil(&inner, &(&q * &q), &(&p * (&q - &p))).pow(10));
            let den = BigInt::from(*alpha.denom());
            let scale = r.lcm(&(BigInt::from(2) * den * &BigInt::from(k - 1)));
            (r, scale)
        }
    };
    let mut items: Vec<BigInt> = base.iter().rev().map(|&a| big(a) * &scale).collect();
    items.dedup();
    let a1 = items[0].clone();
    let an = items.last().unwrap().clone();

    let x = pick(&ov.x, (big(10) * &a1).pow(5));
    let nka1 = &nb * &kb * &a1;
    let y = pick(&ov.y, nka1.pow(10_000));
    let m = match case {
        // only the α(1 − α) terms use m; skip the 20000th power when they vanish
        ReductionCase::Alpha01 { .. } => pick(&ov.m, nka1.pow(20_000)),
        _ => pick(&ov.m, BigInt::zero()),
    };

    // I_ij from symmetric edge pairs
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut sums: Vec<(BigInt, BigInt, BigInt)> = Vec::new();
            for ra in 0..n {
                for rb in ra..n {
                    if smc.has_edge(i, ra, j, rb) {
                        let (a, b) = (items[ra].clone(), items[rb].clone());
                        sums.push((&a + &b, a, b));
                    }
                }
            }
            if sums.is_empty() {
                return Err(Error::invalid(format!(
                    "colours {} and {} share no edge: trivially a no-instance",
                    i + 1,
                    j + 1
                )));
            }
            sums.sort_by(|u, v| v.0.cmp(&u.0));
            let ell = sums.last().unwrap().0.clone();
            let hbar = sums[0].0.clone();
            pairs.push(PairSums { i, j, sums, ell, hbar });
        }
    }

    let mut factors: Vec<Factor> = Vec::new();
    let mut adjacency: Vec<(usize, usize)> = Vec::new();
    let edgeless = |role: Role, size: BigInt| -> Result<Factor> {
        if size.is_negative() {
            return Err(Error::invalid(format!("factor {role} would have negative size {size}")));
        }
        Ok(Factor { role, size, kind: FactorKind::Edgeless })
    };
    let deletion = |role: Role, t: ValidTriple| -> Result<Factor> {
        let size = deletion_star_profile(&t)?.vertices();
        Ok(Factor { role, size, kind: FactorKind::DeletionStars(t) })
    };
    let retention = |role: Role, t: ValidTriple, pad: BigInt| -> Result<Factor> {
        if pad.is_negative() {
            return Err(Error::invalid(format!("factor {role} would have a negative pad")));
        }
        let (prof, p) = retention_star_profile(&t)?;
        Ok(Factor { role, size: prof.vertices() + &pad, kind: FactorKind::RetentionStars { triple: t, p, pad } })
    };

    let scalars = match case {
        ReductionCase::Alpha1 => {
            let s = pick(&ov.s, nb.pow(10));
            let beta_abs = pick(&ov.beta_abs, (&nb * &kb).pow(10_000));
            let q2 = (&kb + &cb) * &s;
            let a0 = &q2 + 1u32;
            // S_i: (a0, I ∪ {a_n − 1}, c(a) = s − a/2, c(a_n − 1) = a0)
            let mut vals = vec![a0.clone()];
            let mut costs = vec![BigInt::zero()];
            for a in &items {
                if a.is_odd() {
                    return Err(Error::invalid("alpha1 needs even sumfree elements"));
                }
                vals.push(a.clone());
                costs.push(&s - a / 2u32);
            }
            vals.push(&an - 1u32);
            costs.push(a0.clone());
            let s_triple = ValidTriple::new(Direction::Decreasing, vals, costs)?;
            for i in 0..k {
                factors.push(edgeless(Role::R(i), &beta_abs - &s)?);
                factors.push(deletion(Role::S(i), s_triple.clone())?);
                factors.push(edgeless(Role::T(i), s.clone())?);
            }
            for ps in &pairs {
                let mut vals = vec![a0.clone()];
                let mut costs = vec![BigInt::zero()];
                for (sum, _, _) in &ps.sums {
                    let (q, rem) = sum.div_rem(&two_k1);
                    if !rem.is_zero() {
                        return Err(Error::invalid("pair sum not divisible by 2(k-1)"));
                    }
                    vals.push(sum.clone());
                    costs.push(&s - q);
                }
                vals.push(&ps.ell - 1u32);
                costs.push(a0.clone());
                factors.push(deletion(Role::U(ps.i, ps.j), ValidTriple::new(Direction::Decreasing, vals, costs)?)?);
                factors.push(edgeless(Role::Rij(ps.i, ps.j), &beta_abs - BigInt::from(2) * &s)?);
            }
            Scalars {
                r,
                scale,
                t: s.clone(),
                s,
                l: BigInt::zero(),
                beta: -beta_abs,
                a0,
                x,
                y,
                m,
                p: BigInt::zero(),
                p_prime: BigInt::zero(),
                q1: BigInt::zero(),
                q: q2.clone(),
                q2,
            }
        }
        ReductionCase::Alpha0 => {
            let s = pick(&ov.s, nb.pow(10));
            let l = BigInt::one();
            let beta = pick(&ov.beta_abs, (&nb * &kb).pow(50));
            let p_prime = pick(&ov.p_prime, nb.pow(210));
            let a0 = &a1 + 1u32;
            let ks = &kb * &s;
            let sl = &s + &l;
            // S_i: retention (a0, I, c(a) = (a − a_n)/2, c(a0) = ks)
            let mut vals = vec![a0.clone()];
            let mut costs = vec![ks.clone()];
            for a in &items {
                let d = a - &an;
                if d.is_odd() {
                    return Err(Error::invalid("alpha0 needs a_i − a_n even"));
                }
                vals.push(a.clone());
                costs.push(d / 2u32);
            }
            let s_triple = ValidTriple::new(Direction::Increasing, vals, costs)?;
            let (_, p) = retention_star_profile(&s_triple)?;
            factors.push(edgeless(Role::N, BigInt::from(2) * &sl)?);
            factors.push(edgeless(Role::K, sl.clone())?);
            for i in 0..k {
                factors.push(edgeless(Role::A(i), y.clone())?);
                factors.push(edgeless(Role::B(i), BigInt::zero())?);
                factors.push(edgeless(Role::D(i), y.clone())?);
                factors.push(edgeless(Role::R(i), &beta - &sl)?);
                factors.push(retention(Role::S(i), s_triple.clone(), BigInt::zero())?);
                factors.push(edgeless(Role::T(i), s.clone())?);
            }
            for ps in &pairs {
                // (2a1 + 1, I_ij, c_ij(a + b) = (a + b − ℓ)/(2(k−1)), c(2a1 + 1) = ks)
                let mut vals = vec![BigInt::from(2) * &a1 + 1u32];
                let mut costs = vec![ks.clone()];
                for (sum, _, _) in &ps.sums {
                    let (q, rem) = (sum - &ps.ell).div_rem(&two_k1);
                    if !rem.is_zero() {
                        return Err(Error::invalid("pair sum gap not divisible by 2(k-1)"));
                    }
                    vals.push(sum.clone());
                    costs.push(q);
                }
                let t = ValidTriple::new(Direction::Increasing, vals, costs)?;
                let (_, p_ij) = retention_star_profile(&t)?;
                let (shift, rem) = (&ps.ell - BigInt::from(2) * &an).div_rem(&two_k1);
                if !rem.is_zero() {
                    return Err(Error::invalid("pad offset not divisible by 2(k-1)"));
                }
                let pad = &p_prime - &p_ij + shift;
                factors.push(retention(Role::U(ps.i, ps.j), t, pad)?);
                factors.push(edgeless(Role::Rij(ps.i, ps.j), &beta - BigInt::from(2) * &sl)?);
                factors.push(edgeless(Role::Aij(ps.i, ps.j), y.clone())?);
                factors.push(edgeless(Role::Bij(ps.i, ps.j), BigInt::zero())?);
            }
            let q1 = &kb * &y + (&kb + &cb) * &beta - (&kb + BigInt::from(2) * &cb - 3u32) * &sl;
            let q2 = &kb * &p + &cb * &p_prime + &kb * (&sl - &an);
            Scalars {
                r,
                scale,
                t: s.clone(),
                s,
                l,
                beta,
                a0,
                x,
                y,
                m,
                p,
                p_prime,
                q: &q1 + &q2,
                q1,
                q2,
            }
        }
        ReductionCase::Alpha01 { alpha, beta } => {
            let (p, q) = frac(alpha);
            let qm = &q - &p;
            let q3 = q.pow(3);
            let beta_abs = pick(&ov.beta_abs, BigInt::from(beta.unsigned_abs()));
            let a0 = x.pow(10);
            let t = mul_floor(&x, &(&qm * &qm * &p), &q3);
            let half_ceil = |v: &BigInt| mul_ceil(v, &p, &(BigInt::from(2) * &q));
            let nk_size = mul_floor(&m, &(&p * &qm), &(&q * &q));
            let ay = mul_floor(&y, &qm, &q);
            let b_i = mul_ceil(&x, &(&p * &p * &qm), &q3);
            let b_ij = mul_ceil(&x, &(BigInt::from(2) * &p * &p * &qm), &q3);
            // S_i: (a0, I ∪ {a_n − 1}, c(a) = t − ⌈αa/2⌉, c(a_n − 1) = a0)
            let mut vals = vec![a0.clone()];
            let mut costs = vec![BigInt::zero()];
            for v in &items {
                vals.push(v.clone());
                costs.push(&t - half_ceil(v));
            }
            vals.push(&an - 1u32);
            costs.push(a0.clone());
            let s_triple = ValidTriple::new(Direction::Decreasing, vals, costs)?;
            factors.push(edgeless(Role::N, nk_size.clone())?);
            factors.push(edgeless(Role::K, nk_size)?);
            for i in 0..k {
                factors.push(edgeless(Role::A(i), ay.clone())?);
                factors.push(edgeless(Role::B(i), b_i.clone())?);
                factors.push(edgeless(Role::D(i), ay.clone())?);
                factors.push(edgeless(Role::R(i), beta_abs.clone())?);
                factors.push(deletion(Role::S(i), s_triple.clone())?);
                factors.push(edgeless(Role::T(i), t.clone())?);
            }
            let k1 = BigInt::from(k - 1);
            for ps in &pairs {
                let mut vals = vec![a0.clone()];
                let mut costs = vec![BigInt::zero()];
                for (sum, va, vb) in &ps.sums {
                    let (q, rem) = (half_ceil(va) + half_ceil(vb)).div_rem(&k1);
                    if !rem.is_zero() {
                        return Err(Error::invalid("pair cost not divisible by k-1"));
                    }
                    vals.push(sum.clone());
                    costs.push(&t - q);
                }
                vals.push(&ps.ell - 1u32);
                costs.push(a0.clone());
                factors.push(deletion(Role::U(ps.i, ps.j), ValidTriple::new(Direction::Decreasing, vals, costs)?)?);
                factors.push(edgeless(Role::Rij(ps.i, ps.j), beta_abs.clone())?);
                factors.push(edgeless(Role::Aij(ps.i, ps.j), ay.clone())?);
                factors.push(edgeless(Role::Bij(ps.i, ps.j), b_ij.clone())?);
            }
            let q1 = &cb * (&ay + &b_ij) + &kb * (&b_i + BigInt::from(2) * &ay);
            let q2 = (&kb + &cb) * &t + BigInt::from(2) * &kb * &beta_abs;
            Scalars {
                r,
                scale,
                s: BigInt::zero(),
                t,
                l: BigInt::zero(),
                beta: BigInt::from(*beta),
                a0,
                x,
                y,
                m,
                p: BigInt::zero(),
                p_prime: BigInt::zero(),
                q: &q1 + &q2,
                q1,
                q2,
            }
        }
    };

    // adjacency among the factors that exist in this roster
    let idx = |role: Role| factors.iter().position(|f| f.role == role);
    let mut link = |a: Role, b: Role| {
        if let (Some(x), Some(y)) = (idx(a), idx(b)) {
            adjacency.push((x.min(y), x.max(y)));
        }
    };
    for i in 0..k {
        for other in [Role::A(i), Role::B(i), Role::D(i)] {
            link(Role::K, other);
        }
        link(Role::R(i), Role::A(i));
        for other in [Role::R(i), Role::B(i), Role::T(i)] {
            link(Role::S(i), other);
        }
        link(Role::T(i), Role::D(i));
    }
    for ps in &pairs {
        let (i, j) = (ps.i, ps.j);
        for other in [Role::T(i), Role::T(j), Role::Bij(i, j), Role::Rij(i, j)] {
            link(Role::U(i, j), other);
        }
        link(Role::Aij(i, j), Role::Rij(i, j));
        link(Role::Aij(i, j), Role::N);
        link(Role::Bij(i, j), Role::K);
    }
    adjacency.sort_unstable();

    Ok(ReductionBlueprint {
        case: case.clone(),
        k,
        n,
        scaled: !ov.is_empty(),
        sumfree: items,
        scalars,
        pairs,
        factors,
        adjacency,
    })
}

/// Non-empty factors: each is a stars (or edgeless) module, so this bounds the
/// stars-modular cardinality of the instance from above.
pub fn blueprint_stars_mc(bp: &ReductionBlueprint) -> usize {
    bp.factors.iter().filter(|f| !f.size.is_zero()).count()
}

// ---------------------------------------------------------------- forward witness

/// Per-factor deletion counts `χ`, aligned with `bp.factors`.
pub fn witness_from_clique(bp: &ReductionBlueprint, smc: &SmcInstance, pick: &[usize]) -> Result<Vec<BigInt>> {
    if smc.k != bp.k || smc.n != bp.n {
        return Err(Error::invalid("instance does not match the blueprint"));
    }
    if !smc.is_clique(pick) {
        return Err(Error::invalid("picked vertices are not a multicolored clique"));
    }
    let sc = &bp.scalars;
    let hat: Vec<&BigInt> = pick.iter().map(|&r| &bp.sumfree[r]).collect();
    let mut chi = vec![BigInt::zero(); bp.factors.len()];
    let two = BigInt::from(2);
    let (p, q) = bp.alpha();
    let half_ceil = |v: &BigInt| mul_ceil(v, &p, &(&two * &q));
    let sum_cost = |t: &ValidTriple, target: &BigInt| -> Result<BigInt> {
        t.values
            .iter()
            .position(|v| v == target)
            .map(|i| t.costs[i].clone())
            .ok_or_else(|| Error::invalid(format!("value {target} missing from a factor triple")))
    };
    for (fi, f) in bp.factors.iter().enumerate() {
        chi[fi] = match (&bp.case, f.role, &f.kind) {
            (_, Role::S(i), FactorKind::DeletionStars(t)) => sum_cost(t, hat[i])?,
            (_, Role::S(i), FactorKind::RetentionStars { triple, p, .. }) => p + sum_cost(triple, hat[i])?,
            (_, Role::U(i, j), FactorKind::DeletionStars(t)) => sum_cost(t, &(hat[i] + hat[j]))?,
            (_, Role::U(i, j), FactorKind::RetentionStars { triple, p, pad }) => {
                pad + p + sum_cost(triple, &(hat[i] + hat[j]))?
            }
            (ReductionCase::Alpha1, Role::T(i), _) => two.clone() * half_ceil(hat[i]),
            (ReductionCase::Alpha0, Role::T(i), _) => &sc.s + &sc.l - hat[i],
            (ReductionCase::Alpha01 { .. }, Role::T(i), _) => {
                two.clone() * (sc.beta.abs() + half_ceil(hat[i]))
            }
            (ReductionCase::Alpha0, Role::N | Role::K | Role::R(_) | Role::D(_) | Role::Rij(..), _) => {
                f.size.clone()
            }
            (
                ReductionCase::Alpha01 { .. },
                Role::A(_) | Role::B(_) | Role::D(_) | Role::Aij(..) | Role::Bij(..),
                _,
            ) => f.size.clone(),
            _ => BigInt::zero(),
        };
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub total: BigInt,
    pub q: BigInt,
    /// One entry per violated bound or inequality, naming the factor.
    pub violations: Vec<String>,
}

impl WitnessReport {
    pub fn sum_ok(&self) -> bool {
        self.total == self.q
    }

    pub fn passed(&self) -> bool {
        self.sum_ok() && self.violations.is_empty()
    }
}

/// Factor-level check of a deletion-count vector: `Σχ = q`, `0 ≤ χ ≤ |M|`,
/// and for every factor with survivors the worst-case survivor inequality
/// `|N(v) ∩ X| ≥ α|N(v)| + β`, using the star gadgets' table guarantees for
/// the neighbours inside the factor.
pub fn check_witness(bp: &ReductionBlueprint, chi: &[BigInt]) -> Result<WitnessReport> {
    if chi.len() != bp.factors.len() {
        return Err(Error::invalid(format!("expected {} counts, got {}", bp.factors.len(), chi.len())));
    }
    let total: BigInt = chi.iter().sum();
    let mut violations = Vec::new();
    let (p, q) = bp.alpha();
    let beta = &bp.scalars.beta;
    let nb = bp.neighbours();
    for (fi, f) in bp.factors.iter().enumerate() {
        let c = &chi[fi];
        if c.is_negative() || *c > f.size {
            violations.push(format!("{}: count {c} outside [0, {}]", f.role, f.size));
        }
    }
    if !violations.is_empty() {
        return Ok(WitnessReport { total, q: bp.scalars.q.clone(), violations });
    }
    // survivor sees ext_x + inner_x of ext + inner neighbours; α ≤ 1 makes
    // extra deleted inner neighbours harmless, so only the guaranteed ones count
    let holds = |ext_x: &BigInt, ext: &BigInt, inner_kept: &BigInt, inner_x: &BigInt| {
        &q * (ext_x + inner_x) >= &p * (ext + inner_kept + inner_x) + &q * beta
    };
    for (fi, f) in bp.factors.iter().enumerate() {
        let c = &chi[fi];
        if *c == f.size {
            continue;
        }
        let ext: BigInt = nb[fi].iter().map(|&j| &bp.factors[j].size).sum();
        let ext_x: BigInt = nb[fi].iter().map(|&j| &chi[j]).sum();
        let zero = BigInt::zero();
        let ok = match &f.kind {
            FactorKind::Edgeless => holds(&ext_x, &ext, &zero, &zero),
            FactorKind::DeletionStars(t) => {
                // Δ after c deletions is at most a_j for the last j with c(a_j) ≤ c
                let j = (0..t.values.len()).rev().find(|&j| t.costs[j] <= *c).unwrap_or(0);
                holds(&ext_x, &ext, &t.values[j], &zero)
            }
            FactorKind::RetentionStars { triple, p, pad } => {
                if c < pad {
                    holds(&ext_x, &ext, &zero, &zero)
                } else {
                    let inner = c - pad;
                    // min degree into X is at least the first a with p + c(a) ≤ inner
                    let b = (0..triple.values.len())
                        .find(|&i| p + &triple.costs[i] <= inner)
                        .map(|i| triple.values[i].clone())
                        .unwrap_or_default();
                    holds(&ext_x, &ext, &zero, &b)
                }
            }
        };
        if !ok {
            violations.push(format!("{}: survivor inequality fails", f.role));
        }
    }
    Ok(WitnessReport { total, q: bp.scalars.q.clone(), violations })
}

// ---------------------------------------------------------------- materialization

pub const MATERIALIZE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Materialized {
    pub graph: Graph,
    pub q: usize,
    pub beta: i64,
    /// Vertex set of each factor, aligned with `bp.factors`.
    pub factor_sets: Vec<VertexSet>,
}

/// Builds the concrete `(H, q, β)`: factors placed consecutively, adjacent
/// factors joined completely.
pub fn materialize(bp: &ReductionBlueprint, cap: usize) -> Result<Materialized> {
    let total = cap_usize("materialization", &bp.total_vertices(), cap)?;
    let q = cap_usize("materialization q", &bp.scalars.q, usize::MAX)?;
    let beta = bp
        .scalars
        .beta
        .to_i64()
        .ok_or_else(|| Error::invalid("beta does not fit in i64"))?;
    let mut g = Graph::edgeless(total);
    let mut sets = Vec::with_capacity(bp.factors.len());
    let mut next = 0usize;
    for f in &bp.factors {
        let inner = match &f.kind {
            FactorKind::Edgeless => Graph::edgeless(f.size.to_usize().unwrap()),
            FactorKind::DeletionStars(t) => deletion_star_graph(t, cap)?,
            FactorKind::RetentionStars { triple, pad, .. } => {
                Graph::edgeless(pad.to_usize().unwrap()).disjoint_union(&retention_star_graph(triple, cap)?.graph)
            }
        };
        for (u, v) in inner.edges() {
            g.add_edge(next + u, next + v);
        }
        sets.push(VertexSet::from_iter(total, next..next + inner.n()));
        next += inner.n();
    }
    for &(a, b) in &bp.adjacency {
        for u in sets[a].iter() {
            for v in sets[b].iter() {
                g.add_edge(u, v);
            }
        }
    }
    Ok(Materialized { graph: g, q, beta, factor_sets: sets })
}

/// Concrete deletion set realising `χ` on a materialized blueprint: edgeless
/// factors lose their first vertices, deletion gadgets their optimal sets,
/// retention gadgets pad, then leaves, then centres of the smallest stars.
pub fn realize_witness(bp: &ReductionBlueprint, mat: &Materialized, chi: &[BigInt]) -> Result<VertexSet> {
    let h = &mat.graph;
    let mut x = VertexSet::new(h.n());
    for (fi, f) in bp.factors.iter().enumerate() {
        let set = &mat.factor_sets[fi];
        let want = chi[fi].to_usize().filter(|&c| c <= set.len()).ok_or_else(|| Error::invalid("bad count"))?;
        let members = set.to_vec();
        let chosen: Vec<usize> = match &f.kind {
            FactorKind::Edgeless => members[..want].to_vec(),
            FactorKind::DeletionStars(_) => {
                let sub = h.induced_subgraph(set).graph;
                deletion_set(&sub, want, 0)?.iter().map(|v| members[v]).collect()
            }
            FactorKind::RetentionStars { pad, .. } => {
                let pad = pad.to_usize().unwrap();
                let sub = h.induced_subgraph(set).graph;
                let mut order: Vec<usize> = (0..pad).collect();
                let rest: Vec<usize> = (pad..members.len()).collect();
                order.extend(rest.iter().copied().filter(|&v| sub.degree(v) <= 1));
                let mut centres: Vec<usize> = rest.into_iter().filter(|&v| sub.degree(v) > 1).collect();
                centres.sort_by_key(|&v| (sub.degree(v), v));
                order.extend(centres);
                order[..want].iter().map(|&v| members[v]).collect()
            }
        };
        for v in chosen {
            x.insert(v);
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumfree() {
        assert_eq!(sumfree_set(1), vec![1]);
        assert_eq!(sumfree_set(3), vec![1, 2, 4]);
        assert_eq!(sumfree_set(5), vec![1, 2, 4, 8, 13]);
    }

    #[test]
    fn triples_validate() {
        assert!(ValidTriple::from_u64(Direction::Decreasing, &[4, 2], &[0, 1]).is_ok());
        assert!(ValidTriple::from_u64(Direction::Decreasing, &[4], &[0]).is_err());
        assert!(ValidTriple::from_u64(Direction::Decreasing, &[4, 1], &[0, 1]).is_err());
        assert!(ValidTriple::from_u64(Direction::Increasing, &[300, 150], &[1, 0]).is_ok());
        assert!(ValidTriple::from_u64(Direction::Increasing, &[300, 100], &[1, 0]).is_err());
    }

    #[test]
    fn deletion_gadget() {
        let t = ValidTriple::from_u64(Direction::Decreasing, &[4, 2], &[0, 1]).unwrap();
        let g = deletion_star_graph(&t, GADGET_CAP).unwrap();
        assert_eq!(g.n(), 8);
        let r = verify_deletion_graph(&g, &t).unwrap();
        assert_eq!(r.path, VerifyPath::Enumeration);
        assert!(r.holds());
        let bad = ValidTriple::from_u64(Direction::Decreasing, &[4, 2], &[0, 2]).unwrap();
        let r = verify_deletion_graph(&g, &bad).unwrap();
        assert_eq!(r.failures(), vec![3]);
        assert!(!verify_deletion_graph(&Graph::edgeless(3), &t).unwrap().holds());
    }

    #[test]
    fn retention_gadget() {
        let t = ValidTriple::from_u64(Direction::Increasing, &[300, 150], &[1, 0]).unwrap();
        let r = retention_star_graph(&t, GADGET_CAP).unwrap();
        assert_eq!(r.p, big(450));
        assert_eq!(r.graph.n(), 452);
        let rep = verify_retention_graph(&r.graph, &t, &r.p, r.l).unwrap();
        assert_eq!(rep.path, VerifyPath::Structural);
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn smc() {
        let (inst, pick) = smc_from_clique(2, 2, Rational::new(0, 1), 1).unwrap();
        assert!(inst.is_clique(&pick));
        assert!(inst.edges().count() >= 1);
        let k3 = Graph::complete(3);
        assert!(smc_from_graph(&k3, 3).unwrap().find_clique().is_some());
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(smc_from_graph(&p3, 3).unwrap().find_clique().is_none());
        assert!(smc_from_clique(3, 2, Rational::new(1, 2), 0).is_err());
    }

    #[test]
    fn alpha1_scalars() {
        let (inst, pick) = smc_from_clique(3, 3, Rational::new(1, 3), 7).unwrap();
        let bp = build_reduction(&inst, &ReductionCase::Alpha1, &Overrides::default()).unwrap();
        assert_eq!(bp.scalars.s, big(59049));
        assert_eq!(bp.scalars.q, big(354294));
        assert_eq!(bp.scalars.r, big(216));
        assert_eq!(bp.factors.len(), 15);
        assert_eq!(blueprint_stars_mc(&bp), 15);
        let chi = witness_from_clique(&bp, &inst, &pick).unwrap();
        let rep = check_witness(&bp, &chi).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let t1 = bp.factor(Role::T(0)).unwrap();
        let mut bad = chi.clone();
        bad[t1] -= 1;
        let rep = check_witness(&bp, &bad).unwrap();
        assert!(rep.violations.iter().any(|v| v.starts_with("S_1")), "{rep:?}");
        assert!(matches!(materialize(&bp, MATERIALIZE_CAP), Err(Error::CapExceeded { .. })));
    }
}

#[cfg(test)]
mod witness_tests {
    use super::*;

    fn planted(k: usize, n: usize) -> (SmcInstance, Vec<usize>) {
        smc_from_clique(k, n, Rational::new(1, 2), 11).unwrap()
    }

    #[test]
    fn alpha1_two_colours() {
        let (inst, pick) = planted(2, 2);
        let bp = build_reduction(&inst, &ReductionCase::Alpha1, &Overrides::default()).unwrap();
        assert_eq!(bp.scalars.q, big(3) * &bp.scalars.s);
        assert_eq!(blueprint_stars_mc(&bp), 8);
        let chi = witness_from_clique(&bp, &inst, &pick).unwrap();
        assert!(check_witness(&bp, &chi).unwrap().passed());
    }

    #[test]
    fn alpha0_and_alpha01_witnesses() {
        let (inst, pick) = planted(3, 3);
        let cases = [
            ReductionCase::Alpha0,
            ReductionCase::Alpha01 { alpha: Rational::new(1, 2), beta: 0 },
            ReductionCase::Alpha01 { alpha: Rational::new(1, 3), beta: -2 },
            ReductionCase::Alpha01 { alpha: Rational::new(2, 3), beta: 3 },
        ];
        for case in cases {
            let bp = build_reduction(&inst, &case, &Overrides::default()).unwrap();
            let chi = witness_from_clique(&bp, &inst, &pick).unwrap();
            let rep = check_witness(&bp, &chi).unwrap();
            assert!(rep.passed(), "{case}: {:?}", rep.violations);
        }
    }

    #[test]
    fn scaled_materialization() {
        let (inst, pick) = planted(2, 2);
        let ov = Overrides { r: Some(big(4)), s: Some(big(10)), beta_abs: Some(big(20)), ..Default::default() };
        let bp = build_reduction(&inst, &ReductionCase::Alpha1, &ov).unwrap();
        assert!(bp.scaled);
        let mat = materialize(&bp, MATERIALIZE_CAP).unwrap();
        assert_eq!(BigInt::from(mat.graph.n()), bp.total_vertices());
        assert_eq!(mat.q, bp.scalars.q.to_usize().unwrap());
        let chi = witness_from_clique(&bp, &inst, &pick).unwrap();
        let x = realize_witness(&bp, &mat, &chi).unwrap();
        assert_eq!(x.len(), mat.q);
    }
}
