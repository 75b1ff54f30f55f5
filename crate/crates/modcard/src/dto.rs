//! JSON shapes for everything the CLI reads or writes. Big integers travel as
//! decimal strings, rationals as `"p/q"`, piecewise breakpoints as
//! `[xn, xd, yn, yd]`.

use std::str::FromStr;

use modcard_core::gadgets::{
    Direction, Factor, FactorKind, Overrides, PairSums, ReductionBlueprint, ReductionCase, Role, Scalars, ValidTriple,
    WitnessReport,
};
use modcard_core::graph::VertexSet;
use modcard_core::modular::{MdTree, NodeKind};
use modcard_core::tables::{EvalMode, PiecewiseLinearFn, StepTable, TableKind};
use modcard_core::Rational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i128 = p.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    let q: i128 = q.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    if q == 0 {
        return Err(bad(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn big(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s).map_err(|_| bad(format!("bad integer {s:?}")))
}

fn bigs(v: &[String]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(|s| big(s)).collect()
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

// ------------------------------------------------------------ partitions, trees

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDto {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<String>,
    pub cardinality: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionDto {
    pub fn new(class: Option<String>, blocks: &[VertexSet]) -> Self {
        PartitionDto { class, cardinality: blocks.len(), blocks: blocks.iter().map(VertexSet::to_vec).collect() }
    }

    pub fn to_sets(&self, n: usize) -> Result<Vec<VertexSet>, CliError> {
        if self.cardinality != self.blocks.len() {
            return Err(bad("cardinality disagrees with block count"));
        }
        self.blocks
            .iter()
            .map(|b| match b.iter().find(|&&v| v >= n) {
                Some(v) => Err(bad(format!("vertex {v} out of range"))),
                None => Ok(VertexSet::from_iter(n, b.iter().copied())),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDto {
    pub kind: String,
    pub vertices: Vec<usize>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDto {
    pub modular_width: usize,
    pub root: usize,
    pub nodes: Vec<NodeDto>,
}

fn kind_name(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Leaf => "leaf",
        NodeKind::Parallel => "parallel",
        NodeKind::Series => "series",
        NodeKind::Prime => "prime",
    }
}

impl TreeDto {
    pub fn new(t: &MdTree, modular_width: usize) -> Self {
        let nodes = t
            .nodes
            .iter()
            .map(|n| NodeDto { kind: kind_name(n.kind).into(), vertices: n.vertices.to_vec(), children: n.children.clone() })
            .collect();
        TreeDto { modular_width, root: t.root, nodes }
    }

    /// Structural check: known kinds, children partition their parent, leaves
    /// are singletons, and the width matches the prime arities.
    pub fn validate(&self) -> Result<(), CliError> {
        let root = self.nodes.get(self.root).ok_or_else(|| bad("root out of range"))?;
        let n = root.vertices.len();
        let mut width = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind.as_str() {
                "leaf" if node.children.is_empty() && node.vertices.len() == 1 => continue,
                "leaf" => return Err(bad(format!("node {i}: malformed leaf"))),
                "parallel" | "series" | "prime" if node.children.len() >= 2 => {}
                _ => return Err(bad(format!("node {i}: bad kind or arity"))),
            }
            if node.kind == "prime" {
                width = width.max(node.children.len());
            }
            let mut union: Vec<usize> = Vec::new();
            for &c in &node.children {
                let child = self.nodes.get(c).ok_or_else(|| bad(format!("node {i}: child {c} out of range")))?;
                union.extend(&child.vertices);
            }
            union.sort_unstable();
            let mut own = node.vertices.clone();
            own.sort_unstable();
            if union != own {
                return Err(bad(format!("node {i}: children do not partition its vertices")));
            }
        }
        if root.vertices.iter().any(|&v| v >= n) {
            return Err(bad("root must cover 0..n"));
        }
        if width != self.modular_width {
            return Err(bad(format!("modular_width {} but prime arity {width}", self.modular_width)));
        }
        Ok(())
    }
}

// ------------------------------------------------------------ tables

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDto {
    pub kind: String,
    pub values: Vec<usize>,
}

impl From<&StepTable> for TableDto {
    fn from(t: &StepTable) -> Self {
        let kind = match t.kind {
            TableKind::Deletion => "deletion",
            TableKind::Retention => "retention",
        };
        TableDto { kind: kind.into(), values: t.values.clone() }
    }
}

impl TryFrom<&TableDto> for StepTable {
    type Error = CliError;

    fn try_from(d: &TableDto) -> Result<Self, CliError> {
        let kind = match d.kind.as_str() {
            "deletion" => TableKind::Deletion,
            "retention" => TableKind::Retention,
            k => return Err(bad(format!("unknown table kind {k:?}"))),
        };
        let t = StepTable { kind, values: d.values.clone() };
        if !t.is_monotone() {
            return Err(bad(format!("{} table is not monotone", d.kind)));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseDto {
    pub mode: String,
    pub convex: bool,
    pub breakpoints: Vec<[i128; 4]>,
}

impl From<&PiecewiseLinearFn> for PiecewiseDto {
    fn from(f: &PiecewiseLinearFn) -> Self {
        let mode = match f.mode {
            EvalMode::Exact => "exact",
            EvalMode::Ceiling => "ceiling",
        };
        let breakpoints = f.breakpoints.iter().map(|(x, y)| [*x.numer(), *x.denom(), *y.numer(), *y.denom()]).collect();
        PiecewiseDto { mode: mode.into(), convex: f.convex, breakpoints }
    }
}

impl TryFrom<&PiecewiseDto> for PiecewiseLinearFn {
    type Error = CliError;

    fn try_from(d: &PiecewiseDto) -> Result<Self, CliError> {
        let mode = match d.mode.as_str() {
            "exact" => EvalMode::Exact,
            "ceiling" => EvalMode::Ceiling,
            m => return Err(bad(format!("unknown mode {m:?}"))),
        };
        let mut bps = Vec::with_capacity(d.breakpoints.len());
        for &[xn, xd, yn, yd] in &d.breakpoints {
            if xd == 0 || yd == 0 {
                return Err(bad("zero denominator in a breakpoint"));
            }
            bps.push((Rational::new(xn, xd), Rational::new(yn, yd)));
        }
        let f = PiecewiseLinearFn::new(bps, mode)?;
        if f.convex != d.convex {
            return Err(bad(format!("convex flag {} disagrees with the breakpoints", d.convex)));
        }
        Ok(f)
    }
}

// ------------------------------------------------------------ solver results

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveDto {
    pub feasible: bool,
    pub witness: Option<Vec<usize>>,
    pub branches_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDto {
    pub feasible: bool,
    pub minimum: Option<usize>,
    pub witness: Option<Vec<usize>>,
}

// ------------------------------------------------------------ gadgets

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDto {
    pub direction: String,
    /// `a_0, a_1, …, a_n`
    pub values: Vec<String>,
    /// `c(a_0), …, c(a_n)`
    pub costs: Vec<String>,
}

impl From<&ValidTriple> for TripleDto {
    fn from(t: &ValidTriple) -> Self {
        let direction = match t.direction {
            Direction::Decreasing => "decreasing",
            Direction::Increasing => "increasing",
        };
        TripleDto { direction: direction.into(), values: strs(&t.values), costs: strs(&t.costs) }
    }
}

impl TryFrom<&TripleDto> for ValidTriple {
    type Error = CliError;

    fn try_from(d: &TripleDto) -> Result<Self, CliError> {
        let dir = match d.direction.as_str() {
            "decreasing" => Direction::Decreasing,
            "increasing" => Direction::Increasing,
            o => return Err(bad(format!("unknown direction {o:?}"))),
        };
        Ok(ValidTriple::new(dir, bigs(&d.values)?, bigs(&d.costs)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetDto {
    pub kind: String,
    pub holds: bool,
    pub path: String,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<usize>,
}

// ------------------------------------------------------------ blueprints

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarsDto {
    pub r: String,
    pub scale: String,
    pub s: String,
    pub t: String,
    pub l: String,
    pub beta: String,
    pub a0: String,
    pub x: String,
    pub y: String,
    pub m: String,
    pub p: String,
    pub p_prime: String,
    pub q1: String,
    pub q2: String,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDto {
    pub i: usize,
    pub j: usize,
    /// `[a + b, a, b]`
    pub sums: Vec<[String; 3]>,
    pub ell: String,
    pub hbar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDto {
    pub role: String,
    pub size: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triple: Option<TripleDto>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pad: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueprintDto {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<i64>,
    pub k: usize,
    pub n: usize,
    pub scaled: bool,
    pub sumfree: Vec<String>,
    pub scalars: ScalarsDto,
    pub pairs: Vec<PairDto>,
    pub factors: Vec<FactorDto>,
    pub adjacency: Vec<[usize; 2]>,
}

pub fn parse_role(s: &str) -> Result<Role, CliError> {
    let parts: Vec<&str> = s.split('_').collect();
    let idx = |p: &str| -> Result<usize, CliError> {
        match p.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(bad(format!("bad role index in {s:?}"))),
        }
    };
    Ok(match parts.as_slice() {
        ["N"] => Role::N,
        ["K"] => Role::K,
        [c, i] => {
            let i = idx(i)?;
            match *c {
                "A" => Role::A(i),
                "B" => Role::B(i),
                "D" => Role::D(i),
                "R" => Role::R(i),
                "S" => Role::S(i),
                "T" => Role::T(i),
                _ => return Err(bad(format!("unknown role {s:?}"))),
            }
        }
        [c, i, j] => {
            let (i, j) = (idx(i)?, idx(j)?);
            match *c {
                "U" => Role::U(i, j),
                "R" => Role::Rij(i, j),
                "A" => Role::Aij(i, j),
                "B" => Role::Bij(i, j),
                _ => return Err(bad(format!("unknown role {s:?}"))),
            }
        }
        _ => return Err(bad(format!("unknown role {s:?}"))),
    })
}

pub fn case_name(c: &ReductionCase) -> &'static str {
    match c {
        ReductionCase::Alpha0 => "alpha0",
        ReductionCase::Alpha01 { .. } => "alpha01",
        ReductionCase::Alpha1 => "alpha1",
    }
}

impl From<&ReductionBlueprint> for BlueprintDto {
    fn from(bp: &ReductionBlueprint) -> Self {
        let sc = &bp.scalars;
        let (alpha, beta) = match &bp.case {
            ReductionCase::Alpha01 { alpha, beta } => (Some(format_rational(alpha)), Some(*beta)),
            _ => (None, None),
        };
        let factors = bp
            .factors
            .iter()
            .map(|f| {
                let mut d = FactorDto {
                    role: f.role.to_string(),
                    size: f.size.to_string(),
                    kind: "edgeless".into(),
                    triple: None,
                    p: None,
                    pad: None,
                };
                match &f.kind {
                    FactorKind::Edgeless => {}
                    FactorKind::DeletionStars(t) => {
                        d.kind = "deletion-stars".into();
                        d.triple = Some(t.into());
                    }
                    FactorKind::RetentionStars { triple, p, pad } => {
                        d.kind = "retention-stars".into();
                        d.triple = Some(triple.into());
                        d.p = Some(p.to_string());
                        d.pad = Some(pad.to_string());
                    }
                }
                d
            })
            .collect();
        BlueprintDto {
            case: case_name(&bp.case).into(),
            alpha,
            beta,
            k: bp.k,
            n: bp.n,
            scaled: bp.scaled,
            sumfree: strs(&bp.sumfree),
            scalars: ScalarsDto {
                r: sc.r.to_string(),
                scale: sc.scale.to_string(),
                s: sc.s.to_string(),
                t: sc.t.to_string(),
                l: sc.l.to_string(),
                beta: sc.beta.to_string(),
                a0: sc.a0.to_string(),
                x: sc.x.to_string(),
                y: sc.y.to_string(),
                m: sc.m.to_string(),
                p: sc.p.to_string(),
                p_prime: sc.p_prime.to_string(),
                q1: sc.q1.to_string(),
                q2: sc.q2.to_string(),
                q: sc.q.to_string(),
            },
            pairs: bp
                .pairs
                .iter()
                .map(|p| PairDto {
                    i: p.i,
                    j: p.j,
                    sums: p.sums.iter().map(|(s, a, b)| [s.to_string(), a.to_string(), b.to_string()]).collect(),
                    ell: p.ell.to_string(),
                    hbar: p.hbar.to_string(),
                })
                .collect(),
            factors,
            adjacency: bp.adjacency.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<&BlueprintDto> for ReductionBlueprint {
    type Error = CliError;

    fn try_from(d: &BlueprintDto) -> Result<Self, CliError> {
        let case = match (d.case.as_str(), &d.alpha, d.beta) {
            ("alpha0", None, None) => ReductionCase::Alpha0,
            ("alpha1", None, None) => ReductionCase::Alpha1,
            ("alpha01", Some(a), Some(beta)) => ReductionCase::Alpha01 { alpha: parse_rational(a)?, beta },
            _ => return Err(bad(format!("bad case {:?} (alpha01 needs alpha and beta, others neither)", d.case))),
        };
        let s = &d.scalars;
        let scalars = Scalars {
            r: big(&s.r)?,
            scale: big(&s.scale)?,
            s: big(&s.s)?,
            t: big(&s.t)?,
            l: big(&s.l)?,
            beta: big(&s.beta)?,
            a0: big(&s.a0)?,
            x: big(&s.x)?,
            y: big(&s.y)?,
            m: big(&s.m)?,
            p: big(&s.p)?,
            p_prime: big(&s.p_prime)?,
            q1: big(&s.q1)?,
            q2: big(&s.q2)?,
            q: big(&s.q)?,
        };
        let mut factors = Vec::with_capacity(d.factors.len());
        for f in &d.factors {
            let triple = || -> Result<ValidTriple, CliError> {
                f.triple.as_ref().ok_or_else(|| bad(format!("{}: missing triple", f.role)))?.try_into()
            };
            let kind = match f.kind.as_str() {
                "edgeless" => FactorKind::Edgeless,
                "deletion-stars" => FactorKind::DeletionStars(triple()?),
                "retention-stars" => {
                    let field = |v: &Option<String>, name: &str| {
                        v.as_deref().ok_or_else(|| bad(format!("{}: missing {name}", f.role))).and_then(big)
                    };
                    FactorKind::RetentionStars { triple: triple()?, p: field(&f.p, "p")?, pad: field(&f.pad, "pad")? }
                }
                k => return Err(bad(format!("unknown factor kind {k:?}"))),
            };
            factors.push(Factor { role: parse_role(&f.role)?, size: big(&f.size)?, kind });
        }
        if d.adjacency.iter().any(|&[a, b]| a >= factors.len() || b >= factors.len() || a == b) {
            return Err(bad("adjacency refers to a missing factor"));
        }
        let mut pairs = Vec::with_capacity(d.pairs.len());
        for p in &d.pairs {
            let sums = p
                .sums
                .iter()
                .map(|[s, a, b]| Ok((big(s)?, big(a)?, big(b)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            pairs.push(PairSums { i: p.i, j: p.j, sums, ell: big(&p.ell)?, hbar: big(&p.hbar)? });
        }
        Ok(ReductionBlueprint {
            case,
            k: d.k,
            n: d.n,
            scaled: d.scaled,
            sumfree: bigs(&d.sumfree)?,
            scalars,
            pairs,
            factors,
            adjacency: d.adjacency.iter().map(|&[a, b]| (a, b)).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDto {
    /// Per-factor deletion counts, aligned with the blueprint's factors.
    pub counts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub clique: Option<Vec<usize>>,
}

impl WitnessDto {
    pub fn counts(&self) -> Result<Vec<BigInt>, CliError> {
        bigs(&self.counts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReportDto {
    pub passed: bool,
    pub sum_ok: bool,
    pub total: String,
    pub q: String,
    pub violations: Vec<String>,
}

impl From<&WitnessReport> for WitnessReportDto {
    fn from(r: &WitnessReport) -> Self {
        WitnessReportDto {
            passed: r.passed(),
            sum_ok: r.sum_ok(),
            total: r.total.to_string(),
            q: r.q.to_string(),
            violations: r.violations.clone(),
        }
    }
}

/// Override flags as decimal strings; any present value marks the blueprint scaled.
#[derive(Clone, Debug, Default)]
pub struct OverrideArgs {
    pub r: Option<String>,
    pub s: Option<String>,
    pub beta_abs: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub m: Option<String>,
    pub p_prime: Option<String>,
}

impl OverrideArgs {
    pub fn parse(&self) -> Result<Overrides, CliError> {
        let f = |v: &Option<String>| v.as_deref().map(big).transpose();
        Ok(Overrides {
            r: f(&self.r)?,
            s: f(&self.s)?,
            beta_abs: f(&self.beta_abs)?,
            x: f(&self.x)?,
            y: f(&self.y)?,
            m: f(&self.m)?,
            p_prime: f(&self.p_prime)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use modcard_core::gadgets::{build_reduction, smc_from_clique};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn roles() {
        for r in [Role::N, Role::K, Role::S(0), Role::U(0, 2), Role::Rij(1, 2), Role::Bij(0, 1)] {
            assert_eq!(parse_role(&r.to_string()).unwrap(), r);
        }
        assert!(parse_role("Q_1").is_err());
        assert!(parse_role("S_0").is_err());
    }

    #[test]
    fn blueprint_round_trip() {
        let (smc, _) = smc_from_clique(2, 2, Rational::new(1, 2), 3).unwrap();
        for case in [ReductionCase::Alpha1, ReductionCase::Alpha01 { alpha: Rational::new(1, 2), beta: 0 }] {
            let bp = build_reduction(&smc, &case, &Overrides::default()).unwrap();
            let dto = BlueprintDto::from(&bp);
            let back = ReductionBlueprint::try_from(&dto).unwrap();
            assert_eq!(back, bp);
        }
    }

    #[test]
    fn piecewise_round_trip() {
        let f = PiecewiseLinearFn::new(
            vec![(Rational::from_integer(0), Rational::from_integer(2)), (Rational::new(3, 2), Rational::from_integer(0))],
            EvalMode::Ceiling,
        )
        .unwrap();
        let d = PiecewiseDto::from(&f);
        assert_eq!(PiecewiseLinearFn::try_from(&d).unwrap(), f);
    }
}
