//! Degree deletion / retention tables, their piecewise-linear forms, and the
//! class-specific closed forms (stars, cluster, bounded-degree forests).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::classes::GraphClass;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::Rational;

/// Default vertex cap for brute-force deletion tables.
pub const DELETION_CAP: usize = 18;
/// Default vertex cap for brute-force retention tables.
pub const RETENTION_CAP: usize = 16;
/// Hard ceiling on any subset enumeration, whatever cap is requested.
const HARD_CAP: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Deletion,
    Retention,
}

/// `f(0..=n)` for deletion, `f(0..n)` for retention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTable {
    pub kind: TableKind,
    pub values: Vec<usize>,
}

impl StepTable {
    /// Non-increasing for deletion tables, non-decreasing for retention tables.
    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| match self.kind {
            TableKind::Deletion => w[0] >= w[1],
            TableKind::Retention => w[0] <= w[1],
        })
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.values.get(x).copied()
    }

    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        let mut d = self.values.len().min(1);
        d += self.values.windows(2).filter(|w| w[0] != w[1]).count();
        d
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { what, size: n, cap });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u)).collect()
}

fn mask_to_set(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// Exhaustive deletion table plus, for each `x`, the first optimal set found.
fn brute_deletion(g: &Graph, cap: usize) -> Result<(StepTable, Vec<u64>)> {
    let n = g.n();
    check_cap("deletion table", n, cap)?;
    let adj = masks(g);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut best = vec![usize::MAX; n + 1];
    let mut arg = vec![0u64; n + 1];
    for x in 0..=full {
        let keep = full & !x;
        let mut d = 0;
        let mut k = keep;
        while k != 0 {
            let v = k.trailing_zeros() as usize;
            k &= k - 1;
            d = d.max((adj[v] & keep).count_ones() as usize);
        }
        let size = x.count_ones() as usize;
        if d < best[size] {
            best[size] = d;
            arg[size] = x;
        }
    }
    Ok((StepTable { kind: TableKind::Deletion, values: best }, arg))
}

pub fn brute_force_deletion_table(g: &Graph, cap: usize) -> Result<StepTable> {
    brute_deletion(g, cap).map(|(t, _)| t)
}

/// `f(x) = min_{|X| = x} Δ(G − X)`, dispatching to a closed form for stars,
/// cluster graphs and forests, and to enumeration otherwise.
pub fn deletion_table(g: &Graph) -> Result<StepTable> {
    deletion_table_with_cap(g, DELETION_CAP)
}

pub fn deletion_table_with_cap(g: &Graph, cap: usize) -> Result<StepTable> {
    if GraphClass::Stars.recognize(g) {
        stars_deletion_table(g)
    } else if GraphClass::Cluster.recognize(g) {
        cluster_deletion_table(g)
    } else if g.is_forest() {
        forest_deletion_table(g)
    } else {
        brute_force_deletion_table(g, cap)
    }
}

/// `f(x) = max_{|X| = x} min_{v ∉ X} |N(v) ∩ X|` for `x < n`, by enumeration.
pub fn retention_table(g: &Graph) -> Result<StepTable> {
    retention_table_with_cap(g, RETENTION_CAP)
}

pub fn retention_table_with_cap(g: &Graph, cap: usize) -> Result<StepTable> {
    let n = g.n();
    check_cap("retention table", n, cap)?;
    let adj = masks(g);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut best = vec![0usize; n];
    for x in 0..full {
        let keep = full & !x;
        let mut d = usize::MAX;
        let mut k = keep;
        while k != 0 {
            let v = k.trailing_zeros() as usize;
            k &= k - 1;
            d = d.min((adj[v] & x).count_ones() as usize);
        }
        let size = x.count_ones() as usize;
        best[size] = best[size].max(d);
    }
    Ok(StepTable { kind: TableKind::Retention, values: best })
}

// ---------------------------------------------------------------- stars

/// Per component: (star degree, chosen centre). `K1` has degree 0, `K2` degree 1.
fn star_centres(g: &Graph) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = g
        .connected_components()
        .iter()
        .map(|c| {
            let centre = c.iter().max_by_key(|&v| (g.degree(v), usize::MAX - v)).unwrap();
            (c.len() - 1, centre)
        })
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    out
}

/// Stars closed form: with star degrees `d_1 ≥ … ≥ d_k`, `f(x) = d_{x+1}` (0 past `k`).
pub fn stars_deletion_table(g: &Graph) -> Result<StepTable> {
    if !GraphClass::Stars.recognize(g) {
        return Err(Error::invalid("stars_deletion_table: graph is not a disjoint union of stars"));
    }
    let degs: Vec<usize> = star_centres(g).into_iter().map(|(d, _)| d).collect();
    let values = (0..=g.n()).map(|x| degs.get(x).copied().unwrap_or(0)).collect();
    Ok(StepTable { kind: TableKind::Deletion, values })
}

// ---------------------------------------------------------------- cluster

/// Clique components as sorted vertex lists.
fn cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    if !GraphClass::Cluster.recognize(g) {
        return Err(Error::invalid("graph is not a cluster graph"));
    }
    Ok(g.connected_components().iter().map(VertexSet::to_vec).collect())
}

/// Convex piecewise-linear `g` with `⌈g(x)⌉ = f(x)` on a cluster graph.
///
/// Levels `a_1 > … > a_{r+1} = 0` are the distinct values `|clique| − 1`
/// (plus 0), `b_i` the multiplicity of level `a_i`, and the breakpoints are
/// `(x_i, a_i)` with `x_i = Σ_{j ≤ i} (a_j − a_i) b_j`.
pub fn cluster_piecewise(g: &Graph) -> Result<PiecewiseLinearFn> {
    let cl = cliques(g)?;
    let mut levels: Vec<(usize, usize)> = Vec::new(); // (a, b)
    let mut sizes: Vec<usize> = cl.iter().map(|c| c.len() - 1).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    for a in sizes {
        match levels.last_mut() {
            Some((la, b)) if *la == a => *b += 1,
            _ => levels.push((a, 1)),
        }
    }
    if levels.last().is_none_or(|&(a, _)| a != 0) {
        levels.push((0, 0));
    }
    let bps = levels
        .iter()
        .map(|&(ai, _)| {
            let xi: usize = levels.iter().take_while(|&&(aj, _)| aj >= ai).map(|&(aj, bj)| (aj - ai) * bj).sum();
            (Rational::from_integer(xi as i128), Rational::from_integer(ai as i128))
        })
        .collect();
    PiecewiseLinearFn::new(bps, EvalMode::Ceiling)
}

pub fn cluster_deletion_table(g: &Graph) -> Result<StepTable> {
    let pw = cluster_piecewise(g)?;
    let values = (0..=g.n())
        .map(|x| pw.eval(x as i64).to_integer() as usize)
        .collect();
    Ok(StepTable { kind: TableKind::Deletion, values })
}

/// Removes one vertex (the largest id) from every maximum-size clique.
/// Returns the residual graph and the number of removed vertices `b`.
pub fn strip_max_cliques(g: &Graph) -> Result<(Graph, usize)> {
    let cl = cliques(g)?;
    let Some(a) = cl.iter().map(Vec::len).max() else {
        return Ok((Graph::edgeless(0), 0));
    };
    let mut keep = g.vertices();
    let mut b = 0;
    for c in cl.iter().filter(|c| c.len() == a) {
        keep.remove(*c.last().unwrap());
        b += 1;
    }
    Ok((g.induced_subgraph(&keep).graph, b))
}

// ---------------------------------------------------------------- forests

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Copy, PartialEq, Eq)]
enum St {
    Deleted,
    /// kept, parent deleted or absent: up to `t` kept children
    Free,
    /// kept with a kept parent: up to `t − 1` kept children
    Tied,
}

struct ForestDp {
    order: Vec<usize>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl ForestDp {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut children = vec![Vec::new(); n];
        for r in 0..n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut stack = vec![r];
            while let Some(v) = stack.pop() {
                order.push(v);
                for u in g.neighbors(v).iter() {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = v;
                        children[v].push(u);
                        stack.push(u);
                    }
                }
            }
        }
        ForestDp { order, parent, children }
    }

    /// Children of `v` kept (tied) when `v` is kept with `budget` slots.
    fn pick(&self, v: usize, budget: i64, del: &[i64], tied: &[i64]) -> Vec<usize> {
        if budget <= 0 {
            return Vec::new();
        }
        let mut gains: Vec<(i64, usize)> = self.children[v]
            .iter()
            .map(|&c| (tied[c].saturating_sub(del[c]), c))
            .filter(|&(d, _)| d < 0)
            .collect();
        gains.sort_unstable();
        gains.truncate(budget as usize);
        gains.into_iter().map(|(_, c)| c).collect()
    }

    /// Minimum deletions so that the maximum degree is at most `t`, with a witness.
    fn solve(&self, n: usize, t: usize) -> (usize, VertexSet) {
        let t = t as i64;
        let mut del = vec![INF; n];
        let mut free = vec![INF; n];
        let mut tied = vec![INF; n];
        for &v in self.order.iter().rev() {
            let ch = &self.children[v];
            del[v] = 1 + ch.iter().map(|&c| del[c].min(free[c])).sum::<i64>();
            let base: i64 = ch.iter().map(|&c| del[c]).sum();
            let keep = |b: i64| -> i64 {
                if b < 0 {
                    return INF;
                }
                base + self.pick(v, b, &del, &tied).iter().map(|&c| tied[c] - del[c]).sum::<i64>()
            };
            free[v] = keep(t);
            tied[v] = keep(t - 1);
        }
        let mut state = vec![St::Deleted; n];
        let mut total = 0;
        for &v in &self.order {
            if self.parent[v] == usize::MAX {
                state[v] = if del[v] <= free[v] { St::Deleted } else { St::Free };
                total += del[v].min(free[v]);
            }
            match state[v] {
                St::Deleted => {
                    for &c in &self.children[v] {
                        state[c] = if del[c] <= free[c] { St::Deleted } else { St::Free };
                    }
                }
                St::Free | St::Tied => {
                    let budget = if state[v] == St::Free { t } else { t - 1 };
                    for &c in &self.children[v] {
                        state[c] = St::Deleted;
                    }
                    for c in self.pick(v, budget, &del, &tied) {
                        state[c] = St::Tied;
                    }
                }
            }
        }
        let x = VertexSet::from_iter(n, (0..n).filter(|&v| state[v] == St::Deleted));
        debug_assert_eq!(x.len() as i64, total);
        (total as usize, x)
    }
}

/// Forest table via tree DP: for each target degree `t`, the minimum number
/// of deletions reaching `Δ ≤ t`; then `f(x) = min{t : cost(t) ≤ x}`.
pub fn forest_deletion_table(g: &Graph) -> Result<StepTable> {
    if !g.is_forest() {
        return Err(Error::invalid("forest_deletion_table: graph has a cycle"));
    }
    let n = g.n();
    let dp = ForestDp::new(g);
    let delta = g.max_degree();
    let cost: Vec<usize> = (0..=delta).map(|t| dp.solve(n, t).0).collect();
    let values = (0..=n)
        .map(|x| (0..=delta).find(|&t| cost[t] <= x).unwrap_or(0))
        .collect();
    Ok(StepTable { kind: TableKind::Deletion, values })
}

// ---------------------------------------------------------------- witnesses

fn pad(g: &Graph, mut x: VertexSet, size: usize) -> VertexSet {
    for v in 0..g.n() {
        if x.len() >= size {
            break;
        }
        x.insert(v);
    }
    x
}

/// A set of exactly `x` vertices with `Δ(G − X) = f(x)`, built with the same
/// class dispatch as [`deletion_table_with_cap`].
pub fn deletion_set(g: &Graph, x: usize, cap: usize) -> Result<VertexSet> {
    let n = g.n();
    if x > n {
        return Err(Error::invalid("deletion_set: x exceeds the vertex count"));
    }
    if GraphClass::Stars.recognize(g) {
        // largest stars first
        let s = VertexSet::from_iter(n, star_centres(g).into_iter().take(x).map(|(_, c)| c));
        return Ok(pad(g, s, x));
    }
    if let Ok(mut cl) = cliques(g) {
        // repeatedly shave a vertex off a largest remaining clique
        let mut s = VertexSet::new(n);
        for _ in 0..x {
            let i = (0..cl.len()).max_by_key(|&i| (cl[i].len(), usize::MAX - i)).unwrap();
            s.insert(cl[i].pop().unwrap());
        }
        return Ok(s);
    }
    if g.is_forest() {
        let t = forest_deletion_table(g)?.values[x];
        let (_, s) = ForestDp::new(g).solve(n, t);
        return Ok(pad(g, s, x));
    }
    let (_, arg) = brute_deletion(g, cap)?;
    Ok(mask_to_set(n, arg[x]))
}

// ---------------------------------------------------------------- piecewise

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// `f(x) = g(x)`; the constant-piece (type 1) representation.
    Exact,
    /// `f(x) = ⌈g(x)⌉`; the convex (type 2) representation.
    Ceiling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub x0: Rational,
    pub y0: Rational,
    pub x1: Rational,
    pub y1: Rational,
}

impl Segment {
    /// Slope; zero for a degenerate (single-point) segment.
    pub fn slope(&self) -> Rational {
        if self.x1 == self.x0 {
            Rational::zero()
        } else {
            (self.y1 - self.y0) / (self.x1 - self.x0)
        }
    }

    pub fn intercept(&self) -> Rational {
        self.y0 - self.slope() * self.x0
    }

    pub fn at(&self, x: Rational) -> Rational {
        self.y0 + self.slope() * (x - self.x0)
    }
}

/// Continuous piecewise-linear function through rational breakpoints with
/// strictly increasing `x`. Outside the breakpoint range it extends flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearFn {
    pub breakpoints: Vec<(Rational, Rational)>,
    pub mode: EvalMode,
    pub convex: bool,
}

impl PiecewiseLinearFn {
    pub fn new(breakpoints: Vec<(Rational, Rational)>, mode: EvalMode) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::invalid("piecewise function needs at least one breakpoint"));
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::invalid("breakpoint x values must be strictly increasing"));
        }
        let mut f = PiecewiseLinearFn { breakpoints, mode, convex: false };
        let slopes: Vec<Rational> = f.segments().iter().map(Segment::slope).collect();
        f.convex = slopes.windows(2).all(|w| w[0] <= w[1]);
        Ok(f)
    }

    /// Segments between consecutive breakpoints; one degenerate segment when
    /// there is a single breakpoint.
    pub fn segments(&self) -> Vec<Segment> {
        if self.breakpoints.len() == 1 {
            let (x, y) = self.breakpoints[0];
            return vec![Segment { x0: x, y0: y, x1: x, y1: y }];
        }
        self.breakpoints
            .windows(2)
            .map(|w| Segment { x0: w[0].0, y0: w[0].1, x1: w[1].0, y1: w[1].1 })
            .collect()
    }

    pub fn segment_count(&self) -> usize {
        self.breakpoints.len().saturating_sub(1).max(1)
    }

    /// The underlying real-valued function.
    pub fn value(&self, x: Rational) -> Rational {
        let bp = &self.breakpoints;
        if x <= bp[0].0 {
            return bp[0].1;
        }
        if x >= bp[bp.len() - 1].0 {
            return bp[bp.len() - 1].1;
        }
        let i = bp.partition_point(|p| p.0 <= x);
        let s = Segment { x0: bp[i - 1].0, y0: bp[i - 1].1, x1: bp[i].0, y1: bp[i].1 };
        s.at(x)
    }

    /// Value at integer `x` with the evaluation mode applied.
    pub fn eval(&self, x: i64) -> Rational {
        let v = self.value(Rational::from_integer(x as i128));
        match self.mode {
            EvalMode::Exact => v,
            EvalMode::Ceiling => v.ceil(),
        }
    }

    /// Integer points where the function can attain an extreme over `[lo, hi]`.
    pub fn critical_points(&self, lo: i64, hi: i64) -> Vec<i64> {
        let mut pts = vec![lo, hi];
        for &(x, _) in &self.breakpoints {
            for c in [x.floor().to_integer(), x.ceil().to_integer()] {
                if c > lo as i128 && c < hi as i128 {
                    pts.push(c as i64);
                }
            }
        }
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

/// Exact-mode compression of a step table: one horizontal run per distinct
/// value joined by connectors, at most `2t − 1` segments for `t` values.
pub fn compress_step_table(t: &StepTable) -> PiecewiseLinearFn {
    let r = |v: usize| Rational::from_integer(v as i128);
    let mut bps: Vec<(Rational, Rational)> = Vec::new();
    let vals = &t.values;
    let mut start = 0;
    while start < vals.len() {
        let mut end = start;
        while end + 1 < vals.len() && vals[end + 1] == vals[start] {
            end += 1;
        }
        bps.push((r(start), r(vals[start])));
        if end > start {
            bps.push((r(end), r(vals[start])));
        }
        start = end + 1;
    }
    if bps.is_empty() {
        bps.push((Rational::zero(), Rational::zero()));
    }
    PiecewiseLinearFn::new(bps, EvalMode::Exact).expect("runs have increasing x")
}
