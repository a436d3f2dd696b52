//! Closed forms for the theorems, the matching bound for `P_4`-saturated
//! bipartite graphs, essential-path statistics and the `C_4` bound constant.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::{FamilyError, ForbiddenFamily};
use crate::graph::{ComponentClass, GameGraph, HostGraph, Part, Vertex};
use crate::solver::PlayerRole;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("{theorem} is not stated for {params}")]
    OutOfTheoremRange { theorem: &'static str, params: String },
    #[error("host {0} is not bipartite")]
    HostNotBipartite(HostGraph),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("bound parameters must be positive")]
    NonPositiveParameter,
}

/// A theorem value with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Odd cycles on `K_{2k}`.
    OddCycles { k: u64, first: PlayerRole },
    /// Spanning trees on `K_n`.
    Trees { n: u64, first: PlayerRole },
    /// `K_{1,3}` on `K_n`.
    Claw { n: u64, first: PlayerRole },
    /// `P_4` on `K_n`; only bounds are known.
    P4Kn { n: u64, first: PlayerRole },
    /// `P_4` on `K_{m,n}`.
    P4Kmn { m: u64, n: u64, first: PlayerRole },
    /// The saturation number of `P_4` in `K_{m,n}`.
    SatP4Kmn { m: u64, n: u64 },
    /// Extremal number of odd cycles on `2k` vertices.
    ExOdd { k: u64 },
    /// Extremal number of spanning trees on `n` vertices.
    ExTrees { n: u64 },
    /// Extremal number of `K_{1,r+1}` on `n` vertices.
    ExStar { r: u64, n: u64 },
    /// The computer-checked star game value, Max-start.
    StarConjecture { r: u64, n: u64 },
}

pub const THEOREM_IDS: [&str; 10] = [
    "odd-cycles",
    "trees",
    "claw",
    "p4-kn",
    "p4-kmn",
    "sat-p4-kmn",
    "ex-odd",
    "ex-trees",
    "ex-star",
    "star-conjecture",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Exact { value: u64 },
    Interval { lo: u64, hi: u64 },
}

impl Value {
    pub fn contains(&self, v: u64) -> bool {
        match *self {
            Value::Exact { value } => v == value,
            Value::Interval { lo, hi } => (lo..=hi).contains(&v),
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            Value::Exact { value } => Some(value),
            Value::Interval { .. } => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact { value } => write!(f, "{value}"),
            Value::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    #[serde(flatten)]
    pub value: Value,
    /// True when the value at these parameters is only conjectured.
    pub conjectured: bool,
}

impl ClosedForm {
    pub fn theorem(&self) -> &'static str {
        match self {
            ClosedForm::OddCycles { .. } => "odd-cycles",
            ClosedForm::Trees { .. } => "trees",
            ClosedForm::Claw { .. } => "claw",
            ClosedForm::P4Kn { .. } => "p4-kn",
            ClosedForm::P4Kmn { .. } => "p4-kmn",
            ClosedForm::SatP4Kmn { .. } => "sat-p4-kmn",
            ClosedForm::ExOdd { .. } => "ex-odd",
            ClosedForm::ExTrees { .. } => "ex-trees",
            ClosedForm::ExStar { .. } => "ex-star",
            ClosedForm::StarConjecture { .. } => "star-conjecture",
        }
    }

    /// Builds a form from a theorem id and optional parameters, as the CLI does.
    pub fn from_parts(
        theorem: &str,
        n: Option<u64>,
        m: Option<u64>,
        k: Option<u64>,
        r: Option<u64>,
        first: Option<PlayerRole>,
    ) -> Result<Self, AnalysisError> {
        let missing = |what: &str| AnalysisError::OutOfTheoremRange {
            theorem: THEOREM_IDS.iter().find(|&&t| t == theorem).copied().unwrap_or("theorem"),
            params: format!("missing {what}"),
        };
        let n_ = || n.ok_or_else(|| missing("n"));
        let m_ = || m.ok_or_else(|| missing("m"));
        let k_ = || k.ok_or_else(|| missing("k"));
        let r_ = || r.ok_or_else(|| missing("r"));
        let first_ = || first.ok_or_else(|| missing("first"));
        Ok(match theorem {
            "odd-cycles" => ClosedForm::OddCycles {
                k: k_()?,
                first: first_()?,
            },
            "trees" => ClosedForm::Trees {
                n: n_()?,
                first: first_()?,
            },
            "claw" => ClosedForm::Claw {
                n: n_()?,
                first: first_()?,
            },
            "p4-kn" => ClosedForm::P4Kn {
                n: n_()?,
                first: first_()?,
            },
            "p4-kmn" => ClosedForm::P4Kmn {
                m: m_()?,
                n: n_()?,
                first: first_()?,
            },
            "sat-p4-kmn" => ClosedForm::SatP4Kmn { m: m_()?, n: n_()? },
            "ex-odd" => ClosedForm::ExOdd { k: k_()? },
            "ex-trees" => ClosedForm::ExTrees { n: n_()? },
            "ex-star" => ClosedForm::ExStar { r: r_()?, n: n_()? },
            "star-conjecture" => ClosedForm::StarConjecture { r: r_()?, n: n_()? },
            other => return Err(AnalysisError::UnknownTheorem(other.to_string())),
        })
    }
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// The value a theorem states, or an interval where only bounds are proved.
pub fn closed_form(cf: ClosedForm) -> Result<FormulaValue, AnalysisError> {
    let out_of_range = |params: String| AnalysisError::OutOfTheoremRange {
        theorem: cf.theorem(),
        params,
    };
    let exact = |value| FormulaValue {
        value: Value::Exact { value },
        conjectured: false,
    };
    use PlayerRole::{Max, Min};
    Ok(match cf {
        ClosedForm::OddCycles { k, .. } | ClosedForm::ExOdd { k } => {
            if k == 0 {
                return Err(out_of_range("k = 0".into()));
            }
            exact(k * k)
        }
        ClosedForm::Trees { n, first } => {
            if n < 3 {
                return Err(out_of_range(format!("n = {n}")));
            }
            match (n, first) {
                (5, Max) => exact(6),
                (4, Min) => exact(3),
                _ => exact(binom2(n - 2) + 1),
            }
        }
        ClosedForm::Claw { n, first } => {
            if n == 0 {
                return Err(out_of_range("n = 0".into()));
            }
            let even = n % 2 == 0;
            let max_wins = match first {
                Max => n == 3 || n == 7 || (even && n != 2),
                // Below three vertices there is no claw and the outcome is the
                // whole host: n = 1 ends at 0 edges.
                Min => !(even && n != 4),
            };
            if n == 1 {
                exact(0)
            } else {
                exact(if max_wins { n } else { n - 1 })
            }
        }
        ClosedForm::P4Kn { n, first } => {
            if n < 4 {
                return Err(out_of_range(format!("n = {n}")));
            }
            let (lo, hi) = match first {
                Max => ((4 * n - 6).div_ceil(5), (4 * n + 4) / 5),
                Min => ((4 * n - 3).div_ceil(5), (4 * n + 3) / 5),
            };
            FormulaValue {
                value: Value::Interval { lo, hi },
                conjectured: false,
            }
        }
        ClosedForm::P4Kmn { m, n, first } => {
            let (m, n) = (m.max(n), m.min(n));
            if n == 0 {
                return Err(out_of_range("empty part".into()));
            }
            let odd = m % 2 == 1 && n % 2 == 1;
            exact(match first {
                Max if n % 2 == 0 => n,
                Max if m % 2 == 0 => m,
                Max => m + n / 2,
                Min if n <= 2 => m,
                Min if !odd => m + n / 2,
                Min => m + n / 2 - 1,
            })
        }
        ClosedForm::SatP4Kmn { m, n } => {
            if m.min(n) == 0 {
                return Err(out_of_range("empty part".into()));
            }
            exact(m.min(n))
        }
        ClosedForm::ExTrees { n } => {
            if n < 2 {
                return Err(out_of_range(format!("n = {n}")));
            }
            exact(binom2(n - 1))
        }
        ClosedForm::ExStar { r, n } => {
            if r == 0 || n <= r {
                return Err(out_of_range(format!("r = {r}, n = {n}")));
            }
            exact(r * n / 2)
        }
        ClosedForm::StarConjecture { r, n } => {
            if r <= 2 || n <= r {
                return Err(out_of_range(format!("r = {r}, n = {n}")));
            }
            FormulaValue {
                value: Value::Exact { value: (r * n - 1) / 2 },
                conjectured: n > 8,
            }
        }
    })
}

/// CSV rows `theorem,params,value,conjectured` for a sweep of forms.
pub fn closed_form_csv(forms: &[ClosedForm]) -> String {
    let mut out = String::from("theorem,params,value,conjectured\n");
    for &cf in forms {
        let params = format!("{cf:?}");
        let params = params
            .split_once('{')
            .map(|(_, p)| p.trim_end_matches('}').trim().replace(", ", ";"))
            .unwrap_or_default();
        match closed_form(cf) {
            Ok(v) => out.push_str(&format!("{},{},{},{}\n", cf.theorem(), params, v.value, v.conjectured)),
            Err(e) => out.push_str(&format!("{},{},error: {},false\n", cf.theorem(), params, e)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub matching: usize,
    pub bound: usize,
    pub edges: usize,
    pub equality: bool,
    /// Contains both an X-star and a Y-star.
    pub full: bool,
    pub isolated_edge: bool,
}

fn require_bipartite(g: &GameGraph) -> Result<(usize, usize), AnalysisError> {
    g.host().parts().ok_or(AnalysisError::HostNotBipartite(g.host()))
}

/// Star types present in `g`: `(has X-star, has Y-star, has isolated edge)`.
///
/// An X-star is a star component with at least two leaves in X.
fn star_types(g: &GameGraph) -> (bool, bool, bool) {
    let host = g.host();
    let mut out = (false, false, false);
    for c in g.components() {
        let center = match c.class {
            ComponentClass::SingleEdge => {
                out.2 = true;
                continue;
            }
            ComponentClass::Path { vertices: 3 } => c.vertices.iter().copied().find(|&v| g.degree(v) == 2),
            ComponentClass::Star { center, .. } => Some(center),
            _ => None,
        };
        match center.and_then(|v| host.part_of(v)) {
            Some(Part::Y) => out.0 = true,
            Some(Part::X) => out.1 = true,
            None => {}
        }
    }
    out
}

pub fn match_bound_report(g: &GameGraph) -> Result<MatchReport, AnalysisError> {
    let (m, n) = require_bipartite(g)?;
    let matching = g.max_matching();
    let (x_star, y_star, isolated_edge) = star_types(g);
    let bound = m + n - matching;
    Ok(MatchReport {
        matching,
        bound,
        edges: g.edge_count(),
        equality: g.edge_count() == bound,
        full: x_star && y_star,
        isolated_edge,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EssentialPathReport {
    pub sx: usize,
    pub sy: usize,
    /// Pairs `x in S_X`, `y in S_Y` with `xy` not an edge.
    pub nonadjacent_cross_pairs: usize,
    /// Those pairs that are the ends of some `P_4`.
    pub joined_by_p4: usize,
    /// `max_v |N(v) ∩ S|`.
    pub max_s_neighbors: usize,
    /// Largest number of essential paths sharing one central edge.
    pub max_central_edge_paths: usize,
    /// Vertices with degree at least `N^{5/12}`, `N` the larger part size.
    pub high_degree_count: usize,
}

/// Statistics of the `P_4`s joining nonadjacent pairs of `S` across the parts.
///
/// An essential path is `x b a y` with `x, a` in X, `b, y` in Y, `x, y` in
/// `S` and `xy` not an edge; `ab` is its central edge.
pub fn essential_path_report(g: &GameGraph, s: &[Vertex]) -> Result<EssentialPathReport, AnalysisError> {
    let (m, n) = require_bipartite(g)?;
    let mut in_s = vec![false; g.order()];
    for &v in s {
        if v < g.order() {
            in_s[v] = true;
        }
    }
    let sx: Vec<Vertex> = (0..m).filter(|&v| in_s[v]).collect();
    let sy: Vec<Vertex> = (m..m + n).filter(|&v| in_s[v]).collect();

    let mut nonadjacent = 0;
    let mut joined = 0;
    let mut reach = vec![false; m];
    for &x in &sx {
        // X vertices two steps from x.
        reach.iter_mut().for_each(|r| *r = false);
        for b in g.neighbors(x) {
            for a in g.neighbors(b) {
                reach[a] = true;
            }
        }
        reach[x] = false;
        for &y in &sy {
            if g.has_edge(x, y) {
                continue;
            }
            nonadjacent += 1;
            if g.neighbors(y).any(|a| reach[a]) {
                joined += 1;
            }
        }
    }

    let max_s_neighbors = (0..g.order())
        .map(|v| g.neighbors(v).filter(|&w| in_s[w]).count())
        .max()
        .unwrap_or(0);

    let mut max_central = 0;
    for e in g.edges() {
        let (a, b) = e.endpoints();
        let mut count = 0;
        for x in g.neighbors(b).filter(|&x| x != a && in_s[x]) {
            count += g.neighbors(a).filter(|&y| y != b && in_s[y] && !g.has_edge(x, y)).count();
        }
        max_central = max_central.max(count);
    }

    let big = m.max(n) as u128;
    let high_degree_count = (0..g.order())
        .filter(|&v| (g.degree(v) as u128).pow(12) >= big.pow(5))
        .count();

    Ok(EssentialPathReport {
        sx: sx.len(),
        sy: sy.len(),
        nonadjacent_cross_pairs: nonadjacent,
        joined_by_p4: joined,
        max_s_neighbors,
        max_central_edge_paths: max_central,
        high_degree_count,
    })
}

/// Parameters `c` and `d` of the `C_4` bound. `d` is held through `d²` so
/// that `d = 1/√3` stays exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C4BoundParams {
    pub c: BigRational,
    pub d_squared: BigRational,
}

impl C4BoundParams {
    pub fn new(c: BigRational, d_squared: BigRational) -> Result<Self, AnalysisError> {
        if !c.is_positive() || !d_squared.is_positive() {
            return Err(AnalysisError::NonPositiveParameter);
        }
        Ok(C4BoundParams { c, d_squared })
    }

    pub fn with_d(c: BigRational, d: BigRational) -> Result<Self, AnalysisError> {
        if !d.is_positive() {
            return Err(AnalysisError::NonPositiveParameter);
        }
        Self::new(c, &d * &d)
    }

    /// `d` as an exact rational, when `d²` is a rational square.
    pub fn d(&self) -> Option<BigRational> {
        rational_root(&self.d_squared, 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `½ (c²/2d²)^{2/3}` is smaller.
    Power,
    /// `c²/2d` is smaller.
    Linear,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C4Bound {
    pub a: f64,
    /// `a` as a fraction when it is rational.
    #[serde(serialize_with = "ser_opt_rational")]
    pub a_exact: Option<BigRational>,
    pub branch: Branch,
    /// `(c²/2d²)^{2/3}`.
    pub b: f64,
    pub n: u64,
    /// `⌊a n^{13/12}⌋`.
    pub bound: u64,
}

fn ser_opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Exact `k`-th root of a positive rational, if there is one.
fn rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    let root = |x: &BigInt| {
        let r = x.nth_root(k);
        (r.pow(k) == *x).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// `a = min{½ (c²/2d²)^{2/3}, c²/(2d)}` and the resulting `⌊a n^{13/12}⌋`.
///
/// The branch is decided exactly: with `q = c²/2d²` the power branch is no
/// larger iff `q⁴ ≤ c¹²/(d²)³`, a comparison of rationals.
pub fn c4_bound_constant(p: &C4BoundParams, n: u64) -> C4Bound {
    let c2 = &p.c * &p.c;
    let two = BigRational::from_integer(2.into());
    let q = &c2 / (&two * &p.d_squared);
    let lhs = q.pow(4);
    let rhs = c2.pow(6) / p.d_squared.pow(3);
    let branch = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Branch::Power,
        std::cmp::Ordering::Equal => Branch::Equal,
        std::cmp::Ordering::Greater => Branch::Linear,
    };
    let b = to_f64(&q).powf(2.0 / 3.0);
    let linear = to_f64(&c2) / (2.0 * to_f64(&p.d_squared).sqrt());
    let a = match branch {
        Branch::Power => b / 2.0,
        Branch::Linear | Branch::Equal => linear,
    };
    let a_exact = match branch {
        Branch::Power => rational_root(&q, 3).map(|r| r.pow(2) / &two),
        Branch::Linear | Branch::Equal => p.d().map(|d| &c2 / (&two * d)),
    };
    let a = a_exact.as_ref().map(to_f64).unwrap_or(a);
    let bound = (a * (n as f64).powf(13.0 / 12.0)).floor() as u64;
    C4Bound {
        a,
        a_exact,
        branch,
        b,
        n,
        bound,
    }
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

/// Parses `p/q`, an integer, or a decimal into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
        return Some(BigRational::new(digits, scale));
    }
    Some(BigRational::from_integer(t.parse().ok()?))
}

/// Every `F`-saturated subgraph of `host`, by depth-first search over edge
/// indices (each free subgraph is visited once).
pub fn saturated_subgraphs(f: ForbiddenFamily, host: HostGraph) -> Result<Vec<GameGraph>, FamilyError> {
    let mut out = Vec::new();
    walk(f, &GameGraph::empty(host), 0, &mut out)?;
    Ok(out)
}

fn walk(f: ForbiddenFamily, g: &GameGraph, from: usize, out: &mut Vec<GameGraph>) -> Result<(), FamilyError> {
    let legal = f.legal_moves(g)?;
    if legal.is_empty() {
        out.push(g.clone());
    }
    let host = g.host();
    for e in legal {
        if host.edge_index(e).expect("host edge") < from {
            continue;
        }
        let child = g.add_edge(e).expect("legal move");
        walk(f, &child, host.edge_index(e).unwrap() + 1, out)?;
    }
    Ok(())
}

/// `(sat, ex)`: fewest and most edges over the saturated subgraphs of `host`.
pub fn saturation_range(f: ForbiddenFamily, host: HostGraph) -> Result<(usize, usize), FamilyError> {
    let all = saturated_subgraphs(f, host)?;
    let sizes = all.iter().map(GameGraph::edge_count);
    Ok((sizes.clone().min().unwrap_or(0), sizes.max().unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use PlayerRole::{Max, Min};

    fn value(cf: ClosedForm) -> Value {
        closed_form(cf).unwrap().value
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(value(ClosedForm::Trees { n: 5, first: Max }), Value::Exact { value: 6 });
        assert_eq!(value(ClosedForm::Claw { n: 6, first: Min }), Value::Exact { value: 5 });
        assert_eq!(value(ClosedForm::P4Kmn { m: 4, n: 4, first: Min }), Value::Exact { value: 6 });
        assert_eq!(value(ClosedForm::P4Kmn { m: 3, n: 3, first: Min }), Value::Exact { value: 3 });
        assert_eq!(value(ClosedForm::P4Kn { n: 10, first: Max }), Value::Interval { lo: 7, hi: 8 });
    }

    #[test]
    fn claw_sequences() {
        let seq = |first| (3..=8).map(|n| value(ClosedForm::Claw { n, first }).exact().unwrap()).collect::<Vec<_>>();
        assert_eq!(seq(Max), [3, 4, 4, 6, 7, 8]);
        assert_eq!(seq(Min), [3, 4, 5, 5, 7, 7]);
    }

    #[test]
    fn p4_kmn_is_symmetric_in_the_parts() {
        for m in 1..8 {
            for n in 1..8 {
                for first in [Max, Min] {
                    assert_eq!(
                        value(ClosedForm::P4Kmn { m, n, first }),
                        value(ClosedForm::P4Kmn { m: n, n: m, first })
                    );
                }
            }
        }
    }

    #[test]
    fn odd_cycles_meet_the_extremal_number() {
        for k in 1..20 {
            assert_eq!(
                value(ClosedForm::OddCycles { k, first: Max }),
                value(ClosedForm::ExOdd { k })
            );
        }
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(closed_form(ClosedForm::Trees { n: 2, first: Max }).is_err());
        assert!(closed_form(ClosedForm::P4Kn { n: 3, first: Max }).is_err());
        assert!(closed_form(ClosedForm::StarConjecture { r: 2, n: 5 }).is_err());
        assert!(closed_form(ClosedForm::StarConjecture { r: 3, n: 9 }).unwrap().conjectured);
        assert!(!closed_form(ClosedForm::StarConjecture { r: 3, n: 8 }).unwrap().conjectured);
    }

    #[test]
    fn match_report_examples() {
        let h = HostGraph::bipartite(3, 3).unwrap();
        let g = GameGraph::from_edges(h, [(0, 3), (1, 4), (2, 5)]).unwrap();
        let r = match_bound_report(&g).unwrap();
        assert_eq!((r.matching, r.bound, r.edges, r.equality), (3, 3, 3, true));
        assert!(r.isolated_edge && !r.full);

        // A Y-centred star covering all of X in K_{4,2}.
        let h = HostGraph::bipartite(4, 2).unwrap();
        let g = GameGraph::from_edges(h, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        let r = match_bound_report(&g).unwrap();
        assert_eq!((r.matching, r.bound), (1, 5));

        let k4 = GameGraph::empty(HostGraph::complete(4).unwrap());
        assert!(matches!(match_bound_report(&k4), Err(AnalysisError::HostNotBipartite(_))));
    }

    #[test]
    fn essential_paths_on_p4() {
        let h = HostGraph::bipartite(2, 2).unwrap();
        // 0 - 2 - 1 - 3 spans K_{2,2}.
        let g = GameGraph::from_edges(h, [(0, 2), (1, 2), (1, 3)]).unwrap();
        let r = essential_path_report(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.nonadjacent_cross_pairs, 1);
        assert_eq!(r.joined_by_p4, 1);
        assert_eq!(r.max_central_edge_paths, 1);
        let r = essential_path_report(&g, &[]).unwrap();
        assert_eq!(
            (r.sx, r.sy, r.nonadjacent_cross_pairs, r.joined_by_p4, r.max_s_neighbors, r.max_central_edge_paths),
            (0, 0, 0, 0, 0, 0)
        );
    }

    #[test]
    fn bound_constant_examples() {
        let p = C4BoundParams::new(rational(1, 3), rational(1, 3)).unwrap();
        let r = c4_bound_constant(&p, 1000);
        assert_eq!(r.branch, Branch::Linear);
        assert!((r.a - 3f64.sqrt() / 18.0).abs() < 1e-12);
        assert!((r.a - 1.0 / 10.4).abs() < 1e-3);
        assert!(r.a_exact.is_none());

        let p = C4BoundParams::with_d(rational(1, 1), rational(1, 4)).unwrap();
        let r = c4_bound_constant(&p, 1);
        assert_eq!(r.branch, Branch::Equal);
        assert_eq!(r.a_exact, Some(rational(2, 1)));

        let p = C4BoundParams::with_d(rational(1, 1), rational(1, 1)).unwrap();
        let r = c4_bound_constant(&p, 1);
        assert_eq!(r.branch, Branch::Power);
        assert!((r.a - 0.5 * 0.5f64.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!((r.a - 0.3150).abs() < 1e-4);
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("1/3"), Some(rational(1, 3)));
        assert_eq!(parse_rational("0.25"), Some(rational(1, 4)));
        assert_eq!(parse_rational("2"), Some(rational(2, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn p4_saturation_number_of_small_bipartite_hosts() {
        for (m, n) in [(2, 2), (3, 2), (3, 3)] {
            let h = HostGraph::bipartite(m, n).unwrap();
            let (sat, _) = saturation_range(ForbiddenFamily::path(4).unwrap(), h).unwrap();
            assert_eq!(sat as u64, value(ClosedForm::SatP4Kmn { m: m as u64, n: n as u64 }).exact().unwrap());
        }
    }
}
