//! (α,β)-linear degree domination: the constraint checker, an exhaustive
//! oracle, a finite-domain integer feasibility engine, and the two module-based
//! solvers (bounded degree deletion over 𝒢-modular partitions, and the
//! neighborhood-diversity program).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::classes::GraphClass;
use crate::error::{Error, Result};
use crate::gmc::{compute_gmc, recursive_partition, twin_classes};
use crate::graph::{Graph, VertexSet};
use crate::modular::quotient_graph;
use crate::tables::{
    cluster_piecewise, compress_step_table, deletion_set, deletion_table_with_cap, PiecewiseLinearFn,
    DELETION_CAP,
};
use crate::Rational;

fn rat(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LddInstance {
    pub graph: Graph,
    pub alpha: Rational,
    pub beta: i64,
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degenerate {
    /// `α = 0, β ≤ 0`: the empty set always works.
    AlwaysYes,
    /// `α = 1, β ≥ 1`: no survivor can ever be satisfied.
    AlwaysNo,
}

impl LddInstance {
    pub fn new(graph: Graph, alpha: Rational, beta: i64, q: usize) -> Result<Self> {
        if alpha.is_negative() || alpha > Rational::one() {
            return Err(Error::invalid(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(LddInstance { graph, alpha, beta, q })
    }

    pub fn degenerate(&self) -> Option<Degenerate> {
        if self.alpha.is_zero() && self.beta <= 0 {
            Some(Degenerate::AlwaysYes)
        } else if self.alpha.is_one() && self.beta >= 1 {
            Some(Degenerate::AlwaysNo)
        } else {
            None
        }
    }

    /// `⌈α·deg(v) + β⌉`: the integer threshold each survivor must meet.
    pub fn need(&self, v: usize) -> i64 {
        let r = self.alpha * rat(self.graph.degree(v) as i64) + rat(self.beta);
        r.ceil().to_integer() as i64
    }
}

pub fn check_ldd(inst: &LddInstance, x: &VertexSet) -> bool {
    let g = &inst.graph;
    x.len() <= inst.q
        && (0..g.n())
            .filter(|&v| !x.contains(v))
            .all(|v| g.neighbors(v).intersection_len(x) as i64 >= inst.need(v))
}

/// `λ(v) = (|N(v) ∩ X| − β) / |N(v)|`.
pub fn dominating_coefficient(g: &Graph, x: &VertexSet, v: usize, beta: i64) -> Result<Rational> {
    if x.contains(v) {
        return Err(Error::invalid("dominating coefficient of a deleted vertex"));
    }
    let d = g.degree(v);
    if d == 0 {
        return Err(Error::invalid(format!("vertex {v} is isolated")));
    }
    let hit = g.neighbors(v).intersection_len(x) as i64;
    Ok(Rational::new((hit - beta) as i128, d as i128))
}

/// `Λ` over a vertex set: the minimum coefficient, 1 for the empty set.
pub fn dominating_coefficient_set(g: &Graph, x: &VertexSet, s: &VertexSet, beta: i64) -> Result<Rational> {
    let mut best = Rational::one();
    for (i, v) in s.iter().enumerate() {
        let l = dominating_coefficient(g, x, v, beta)?;
        if i == 0 || l < best {
            best = l;
        }
    }
    Ok(best)
}

pub const BRUTE_FORCE_CAP: usize = 20;

/// Lexicographically least minimum-size solution of size ≤ q, by enumeration.
pub fn brute_force_ldd(inst: &LddInstance, cap: usize) -> Result<Option<VertexSet>> {
    let g = &inst.graph;
    let n = g.n();
    if n > cap.min(30) {
        return Err(Error::CapExceeded { what: "brute-force LDD", size: n, cap: cap.min(30) });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u)).collect();
    let need: Vec<i64> = (0..n).map(|v| inst.need(v)).collect();
    let ok = |mask: u32| {
        (0..n).all(|v| mask >> v & 1 == 1 || (adj[v] & mask).count_ones() as i64 >= need[v])
    };
    for size in 0..=inst.q.min(n) {
        // combinations in lexicographic order
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &v| m | 1 << v);
            if ok(mask) {
                return Ok(Some(VertexSet::from_iter(n, idx.iter().copied())));
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else { break };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- feasibility engine

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Linear { var: usize, coef: Rational },
    /// `f(x_var)` evaluated in the function's own mode.
    Piecewise { var: usize, f: PiecewiseLinearFn },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<Term>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(terms: Vec<Term>, rhs: Rational) -> Self {
        Constraint { terms, cmp: Cmp::Le, rhs }
    }

    pub fn ge(terms: Vec<Term>, rhs: Rational) -> Self {
        Constraint { terms, cmp: Cmp::Ge, rhs }
    }
}

/// Integer variables with inclusive bounds and a conjunction of constraints.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntFeasibilityProblem {
    pub bounds: Vec<(i64, i64)>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub assignment: Option<Vec<i64>>,
    /// Search nodes visited.
    pub nodes: u64,
}

impl IntFeasibilityProblem {
    pub fn add_var(&mut self, lo: i64, hi: i64) -> usize {
        self.bounds.push((lo, hi));
        self.bounds.len() - 1
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    fn is_satisfied(&self, x: &[i64]) -> bool {
        self.constraints.iter().all(|c| {
            let (lo, _) = range(c, x, x);
            match c.cmp {
                Cmp::Le => lo <= c.rhs,
                Cmp::Ge => lo >= c.rhs,
            }
        })
    }
}

/// Range of a term over integer `x ∈ [lo, hi]`.
fn term_range(t: &Term, lo: &[i64], hi: &[i64]) -> (Rational, Rational) {
    match t {
        Term::Linear { var, coef } => {
            let (a, b) = (*coef * rat(lo[*var]), *coef * rat(hi[*var]));
            if a <= b { (a, b) } else { (b, a) }
        }
        Term::Piecewise { var, f } => {
            let (l, h) = (lo[*var], hi[*var]);
            if l == h {
                let v = f.eval(l);
                return (v, v);
            }
            let vals = f.critical_points(l, h).into_iter().map(|x| f.eval(x));
            let mut mn = f.eval(l);
            let mut mx = mn;
            for v in vals {
                if v < mn {
                    mn = v;
                }
                if v > mx {
                    mx = v;
                }
            }
            (mn, mx)
        }
    }
}

fn range(c: &Constraint, lo: &[i64], hi: &[i64]) -> (Rational, Rational) {
    c.terms.iter().fold((Rational::zero(), Rational::zero()), |(a, b), t| {
        let (l, h) = term_range(t, lo, hi);
        (a + l, b + h)
    })
}

/// Exact depth-first search over the finite box with interval pruning.
pub fn int_feasible(p: &IntFeasibilityProblem) -> Feasibility {
    let k = p.bounds.len();
    let mut lo: Vec<i64> = p.bounds.iter().map(|b| b.0).collect();
    let mut hi: Vec<i64> = p.bounds.iter().map(|b| b.1).collect();
    let mut nodes = 0;
    if (0..k).any(|i| lo[i] > hi[i]) {
        return Feasibility { assignment: None, nodes };
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (hi[i] - lo[i], i));
    let found = dfs(p, &order, 0, &mut lo, &mut hi, &mut nodes);
    let assignment = found.then(|| lo.clone());
    debug_assert!(assignment.as_ref().is_none_or(|a| p.is_satisfied(a)));
    Feasibility { assignment, nodes }
}

fn dfs(p: &IntFeasibilityProblem, order: &[usize], depth: usize, lo: &mut [i64], hi: &mut [i64], nodes: &mut u64) -> bool {
    *nodes += 1;
    for c in &p.constraints {
        let (mn, mx) = range(c, lo, hi);
        let dead = match c.cmp {
            Cmp::Le => mn > c.rhs,
            Cmp::Ge => mx < c.rhs,
        };
        if dead {
            return false;
        }
    }
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let (l, h) = (lo[v], hi[v]);
    for val in l..=h {
        lo[v] = val;
        hi[v] = val;
        if dfs(p, order, depth + 1, lo, hi, nodes) {
            return true;
        }
    }
    lo[v] = l;
    hi[v] = h;
    false
}

// ---------------------------------------------------------------- shared plumbing

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub witness: Option<VertexSet>,
    /// Guard/segment branches handed to the feasibility engine.
    pub branches_explored: u64,
}

/// Guard subsets (bit i = module i fully deleted) whose forced deletions fit in `q`,
/// in ascending order.
fn guard_subsets(sizes: &[usize], q: usize) -> impl Iterator<Item = u32> + '_ {
    (0u32..1 << sizes.len()).filter(move |g| {
        let forced: usize = (0..sizes.len()).filter(|i| g >> i & 1 == 1).map(|i| sizes[i]).sum();
        forced <= q
    })
}

/// Variables `x_i` with the guard applied, plus `Σ x ≤ q`.
fn base_problem(sizes: &[usize], guard: u32, q: usize) -> IntFeasibilityProblem {
    let mut p = IntFeasibilityProblem::default();
    for (i, &s) in sizes.iter().enumerate() {
        if guard >> i & 1 == 1 {
            p.add_var(s as i64, s as i64);
        } else {
            p.add_var(0, s as i64 - 1);
        }
    }
    let all = (0..sizes.len()).map(|var| Term::Linear { var, coef: Rational::one() }).collect();
    p.push(Constraint::le(all, rat(q as i64)));
    p
}

// ---------------------------------------------------------------- BDD over 𝒢-modular partitions

/// How cluster modules enter the program.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClusterForm {
    /// Ceiling of the convex closed form, linearised piece by piece.
    #[default]
    Convex,
    /// The compressed step table, like every other module.
    Step,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BddOptions {
    pub cluster_form: ClusterForm,
    pub table_cap: usize,
}

impl Default for BddOptions {
    fn default() -> Self {
        BddOptions { cluster_form: ClusterForm::Convex, table_cap: DELETION_CAP }
    }
}

fn bdd_class_supported(c: &GraphClass) -> bool {
    match c {
        GraphClass::Cograph => false,
        GraphClass::Union(cs) => cs.iter().all(bdd_class_supported),
        _ => true,
    }
}

enum ModTable {
    Convex(PiecewiseLinearFn),
    Step(PiecewiseLinearFn),
}

/// A set `X`, `|X| ≤ q`, with `Δ(G − X) ≤ −β`, or `None`.
///
/// The graph is cut into a 𝒢-modular partition; each module contributes its
/// deletion table, and one program per (fully-deleted guard, type-1 segment
/// choice) is handed to [`int_feasible`]. The first feasible branch in
/// ascending order is materialised module by module.
pub fn solve_bdd_gmc(g: &Graph, q: usize, beta: i64, class: &GraphClass, opts: &BddOptions) -> Result<SolveOutcome> {
    if beta > 0 {
        return Err(Error::invalid("bounded degree deletion needs beta <= 0"));
    }
    if !bdd_class_supported(class) {
        return Err(Error::unsupported(format!("bounded degree deletion over class {class}")));
    }
    let n = g.n();
    let d = -beta;
    if n == 0 {
        return Ok(SolveOutcome { witness: Some(VertexSet::new(0)), branches_explored: 0 });
    }
    let modules = if class.is_trivially_mergeable() {
        compute_gmc(class, g)?.partition.blocks().to_vec()
    } else {
        recursive_partition(class, g)
    };
    let quotient = quotient_graph(g, &modules)?;
    let k = modules.len();
    let sizes: Vec<usize> = modules.iter().map(VertexSet::len).collect();
    let subs: Vec<Graph> = modules.iter().map(|m| g.induced_subgraph(m).graph).collect();
    let mut tables = Vec::with_capacity(k);
    for h in &subs {
        let t = if opts.cluster_form == ClusterForm::Convex && GraphClass::Cluster.recognize(h) {
            ModTable::Convex(cluster_piecewise(h)?)
        } else {
            ModTable::Step(compress_step_table(&deletion_table_with_cap(h, opts.table_cap)?))
        };
        tables.push(t);
    }
    // type-1 modules branch over segments, fewest segments first
    let mut stepped: Vec<usize> = (0..k).filter(|&i| matches!(tables[i], ModTable::Step(_))).collect();
    stepped.sort_by_key(|&i| match &tables[i] {
        ModTable::Step(f) => (f.segment_count(), i),
        ModTable::Convex(_) => unreachable!(),
    });

    let mut branches = 0u64;
    for guard in guard_subsets(&sizes, q) {
        let live: Vec<usize> = stepped.iter().copied().filter(|&i| guard >> i & 1 == 0).collect();
        let counts: Vec<usize> = live
            .iter()
            .map(|&i| match &tables[i] {
                ModTable::Step(f) => f.segment_count(),
                ModTable::Convex(_) => 1,
            })
            .collect();
        let mut choice = vec![0usize; live.len()];
        loop {
            branches += 1;
            let mut p = base_problem(&sizes, guard, q);
            let mut empty = false;
            for i in (0..k).filter(|&i| guard >> i & 1 == 0) {
                // f_i(x_i) − Σ_{j ∈ N(i)} x_j ≤ d − Σ_{j ∈ N(i)} |M_j|
                let nb: Vec<usize> = quotient.neighbors(i).iter().collect();
                let outside: i64 = nb.iter().map(|&j| sizes[j] as i64).sum();
                let minus = |terms: &mut Vec<Term>| {
                    terms.extend(nb.iter().map(|&j| Term::Linear { var: j, coef: -Rational::one() }))
                };
                match &tables[i] {
                    ModTable::Convex(f) => {
                        // ⌈g(x)⌉ ≤ R with R integral  ⇔  every piece line ≤ R
                        for s in f.segments() {
                            let mut terms = vec![Term::Linear { var: i, coef: s.slope() }];
                            minus(&mut terms);
                            p.push(Constraint::le(terms, rat(d - outside) - s.intercept()));
                        }
                        let last = f.breakpoints.last().unwrap().1;
                        let mut terms = Vec::new();
                        minus(&mut terms);
                        p.push(Constraint::le(terms, rat(d - outside) - last));
                    }
                    ModTable::Step(f) => {
                        let pos = live.iter().position(|&j| j == i).unwrap();
                        let s = f.segments()[choice[pos]];
                        let (lo, hi) = &mut p.bounds[i];
                        *lo = (*lo).max(s.x0.ceil().to_integer() as i64);
                        *hi = (*hi).min(s.x1.floor().to_integer() as i64);
                        if lo > hi {
                            empty = true;
                        }
                        let mut terms = vec![Term::Linear { var: i, coef: s.slope() }];
                        minus(&mut terms);
                        p.push(Constraint::le(terms, rat(d - outside) - s.intercept()));
                    }
                }
            }
            if !empty {
                if let Some(x) = int_feasible(&p).assignment {
                    let w = materialize(g, &modules, &subs, &x, opts.table_cap)?;
                    debug_assert!(g.max_degree_without(&w) as i64 <= d && w.len() <= q);
                    return Ok(SolveOutcome { witness: Some(w), branches_explored: branches });
                }
            }
            // odometer over segment choices
            let Some(pos) = (0..live.len()).rev().find(|&p| choice[p] + 1 < counts[p]) else { break };
            choice[pos] += 1;
            for c in choice.iter_mut().skip(pos + 1) {
                *c = 0;
            }
        }
    }
    Ok(SolveOutcome { witness: None, branches_explored: branches })
}

fn materialize(g: &Graph, modules: &[VertexSet], subs: &[Graph], x: &[i64], cap: usize) -> Result<VertexSet> {
    let mut w = VertexSet::new(g.n());
    for (i, m) in modules.iter().enumerate() {
        let local = deletion_set(&subs[i], x[i] as usize, cap)?;
        let members = m.to_vec();
        for v in local.iter() {
            w.insert(members[v]);
        }
    }
    Ok(w)
}

/// Smallest `q` for which [`solve_bdd_gmc`] succeeds, with its witness.
pub fn min_bdd(g: &Graph, beta: i64, class: &GraphClass, opts: &BddOptions) -> Result<(usize, VertexSet)> {
    for q in 0..=g.n() {
        if let Some(w) = solve_bdd_gmc(g, q, beta, class, opts)?.witness {
            return Ok((q, w));
        }
    }
    Err(Error::invalid("deleting every vertex always works; unreachable"))
}

// ---------------------------------------------------------------- LDD by neighborhood diversity

pub const ND_CAP: usize = 12;

/// Program over twin classes: each class is a clique or an independent set.
/// A surviving vertex of module `i` sees `Σ_{j ∈ N(i)} x_j` (plus `x_i` for a
/// clique module) deleted neighbours out of `Σ_{j ∈ N(i)} |M_j|` (plus
/// `|M_i| − 1`), which must reach `⌈α·deg⌉ + β`.
pub fn solve_ldd_nd(inst: &LddInstance, nd_cap: usize) -> Result<SolveOutcome> {
    let g = &inst.graph;
    let n = g.n();
    if n == 0 {
        return Ok(SolveOutcome { witness: Some(VertexSet::new(0)), branches_explored: 0 });
    }
    let modules = twin_classes(g);
    let k = modules.len();
    if k > nd_cap {
        return Err(Error::CapExceeded { what: "neighborhood diversity", size: k, cap: nd_cap });
    }
    let quotient = quotient_graph(g, &modules)?;
    let sizes: Vec<usize> = modules.iter().map(VertexSet::len).collect();
    let clique: Vec<bool> = modules
        .iter()
        .map(|m| m.len() > 1 && {
            let v = m.first().unwrap();
            m.iter().all(|u| u == v || g.has_edge(u, v))
        })
        .collect();
    let mut branches = 0u64;
    for guard in guard_subsets(&sizes, inst.q) {
        branches += 1;
        let mut p = base_problem(&sizes, guard, inst.q);
        for i in (0..k).filter(|&i| guard >> i & 1 == 0) {
            let mut terms: Vec<Term> =
                quotient.neighbors(i).iter().map(|var| Term::Linear { var, coef: Rational::one() }).collect();
            let mut deg: i64 = quotient.neighbors(i).iter().map(|j| sizes[j] as i64).sum();
            if clique[i] {
                terms.push(Term::Linear { var: i, coef: Rational::one() });
                deg += sizes[i] as i64 - 1;
            }
            let rhs = (inst.alpha * rat(deg)).ceil() + rat(inst.beta);
            p.push(Constraint::ge(terms, rhs));
        }
        if let Some(x) = int_feasible(&p).assignment {
            let w = VertexSet::from_iter(
                n,
                modules.iter().zip(&x).flat_map(|(m, &xi)| m.iter().take(xi as usize).collect::<Vec<_>>()),
            );
            debug_assert!(check_ldd(inst, &w));
            return Ok(SolveOutcome { witness: Some(w), branches_explored: branches });
        }
    }
    Ok(SolveOutcome { witness: None, branches_explored: branches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn k23() -> Graph {
        Graph::edgeless(2).join(&Graph::edgeless(3))
    }

    #[test]
    fn checker() {
        let k3 = Graph::complete(3);
        let i = LddInstance::new(k3.clone(), r(1, 1), -1, 1).unwrap();
        assert!(check_ldd(&i, &VertexSet::singleton(3, 0)));
        let i = LddInstance::new(k3, r(0, 1), 0, 0).unwrap();
        assert!(check_ldd(&i, &VertexSet::new(3)));
        assert_eq!(i.degenerate(), Some(Degenerate::AlwaysYes));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let i = LddInstance::new(star, r(1, 2), 0, 1).unwrap();
        assert!(check_ldd(&i, &VertexSet::singleton(4, 0)));
        assert!(LddInstance::new(Graph::complete(2), r(3, 2), 0, 1).is_err());
    }

    #[test]
    fn coefficients() {
        let k3 = Graph::complete(3);
        let x = VertexSet::singleton(3, 0);
        assert_eq!(dominating_coefficient(&k3, &x, 1, -1).unwrap(), r(1, 1));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dominating_coefficient(&p3, &VertexSet::singleton(3, 0), 1, 0).unwrap(), r(1, 2));
        assert_eq!(dominating_coefficient(&p3, &VertexSet::singleton(3, 1), 0, 0).unwrap(), r(1, 1));
        assert!(dominating_coefficient(&Graph::edgeless(2), &VertexSet::new(2), 0, 0).is_err());
        assert_eq!(dominating_coefficient_set(&k3, &x, &VertexSet::new(3), 0).unwrap(), r(1, 1));
    }

    #[test]
    fn brute_force() {
        let k3 = Graph::complete(3);
        let i = LddInstance::new(k3.clone(), r(1, 1), -1, 3).unwrap();
        assert_eq!(brute_force_ldd(&i, 20).unwrap().unwrap().to_vec(), vec![0]);
        let i = LddInstance::new(k3, r(1, 1), -3, 0).unwrap();
        assert!(brute_force_ldd(&i, 20).unwrap().unwrap().is_empty());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let i = LddInstance::new(c4, r(1, 1), 0, 1).unwrap();
        assert_eq!(brute_force_ldd(&i, 20).unwrap(), None);
    }

    #[test]
    fn engine() {
        let mut p = IntFeasibilityProblem::default();
        let x = p.add_var(0, 1);
        p.push(Constraint::ge(vec![Term::Linear { var: x, coef: r(1, 1) }], r(2, 1)));
        assert_eq!(int_feasible(&p).assignment, None);

        let mut p = IntFeasibilityProblem::default();
        let (x, y) = (p.add_var(0, 5), p.add_var(0, 5));
        let one = r(1, 1);
        p.push(Constraint::le(vec![Term::Linear { var: x, coef: one }, Term::Linear { var: y, coef: one }], r(4, 1)));
        p.push(Constraint::ge(vec![Term::Linear { var: x, coef: one }], r(3, 1)));
        let a = int_feasible(&p).assignment.unwrap();
        assert!(a[0] >= 3 && a[0] + a[1] <= 4);

        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let f = cluster_piecewise(&two_k3).unwrap();
        let feasible_at = |v: i64| {
            let mut p = IntFeasibilityProblem::default();
            let x = p.add_var(0, 6);
            p.push(Constraint::le(vec![Term::Piecewise { var: x, f: f.clone() }], r(1, 1)));
            p.push(Constraint::le(vec![Term::Linear { var: x, coef: one }], r(v as i128, 1)));
            int_feasible(&p).assignment
        };
        assert_eq!(feasible_at(1), None);
        assert_eq!(feasible_at(2), Some(vec![2]));
    }

    #[test]
    fn bdd_joined_cluster() {
        // (K3 ∪ K3) joined with K2: removing the K2 side leaves Δ = 2
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3)).join(&Graph::complete(2));
        let opts = BddOptions::default();
        let (q, w) = min_bdd(&g, -3, &GraphClass::Cluster, &opts).unwrap();
        assert_eq!(q, 2);
        assert_eq!(w.to_vec(), vec![6, 7]);
        let step = BddOptions { cluster_form: ClusterForm::Step, ..opts };
        assert_eq!(min_bdd(&g, -3, &GraphClass::Cluster, &step).unwrap().0, 2);
        assert!(solve_bdd_gmc(&g, 1, -3, &GraphClass::Cluster, &opts).unwrap().witness.is_none());
        let i = LddInstance::new(g, r(1, 1), -3, 8).unwrap();
        assert_eq!(brute_force_ldd(&i, 20).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn bdd_single_module() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (q, w) = min_bdd(&p5, -1, &GraphClass::LinearForest, &BddOptions::default()).unwrap();
        assert_eq!(q, 1);
        assert!(p5.max_degree_without(&w) <= 1);
        assert!(solve_bdd_gmc(&p5, 1, -1, &GraphClass::Cograph, &BddOptions::default()).is_err());
    }

    #[test]
    fn nd_solver() {
        let i = LddInstance::new(k23(), r(1, 2), 0, 2).unwrap();
        assert_eq!(solve_ldd_nd(&i, ND_CAP).unwrap().witness.unwrap().to_vec(), vec![0, 1]);
        let i = LddInstance::new(k23(), r(1, 2), 0, 1).unwrap();
        assert_eq!(solve_ldd_nd(&i, ND_CAP).unwrap().witness, None);
        let i = LddInstance::new(Graph::complete(5), r(0, 1), 1, 1).unwrap();
        let w = solve_ldd_nd(&i, ND_CAP).unwrap().witness.unwrap();
        assert_eq!(w.len(), 1);
        assert!(check_ldd(&i, &w));
    }
}
