//! Closed-form antimagic labelings of `K_{1,s} x P_n` and the dispatcher that
//! picks one per `(s, n)`.
//!
//! Each family writes labels through the vertex roles of
//! [`product_star_path`], so the formulas read like their role-level
//! definitions. Every family checks that it produced a bijection onto
//! `{1..|E|}`; [`construct`] additionally re-verifies antimagicness before it
//! reports success.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::graph::{product_star_path, Graph, GraphError, ProductParams, VertexRole};
use crate::labeling::{
    bijection_defect, is_antimagic_labeling, BijectionDefect, Defect, EdgeLabeling, Label,
    LabelingError, Verdict,
};
use crate::search::{
    find_antimagic, BudgetReport, NonAntimagicCertificate, SearchBudget, SearchError,
    SearchMode, SearchOutcome, EXHAUSTIVE_EDGE_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{family} needs {requirement} (got s = {s}, m = {m})")]
    OutOfRange { family: MethodTag, requirement: &'static str, s: usize, m: usize },
    #[error("epsilon {value} is outside 0..={max}")]
    EpsilonOutOfRange { value: u64, max: u64 },
    #[error("{family}: edge {a}-{b} is missing from the product graph")]
    MissingEdge { family: MethodTag, a: VertexRole, b: VertexRole },
    #[error("{family}: edge {a}-{b} labeled twice")]
    Relabeled { family: MethodTag, a: VertexRole, b: VertexRole },
    #[error("{family}: {count} edges left unlabeled")]
    Unlabeled { family: MethodTag, count: usize },
    #[error("{family}: labels are not a bijection ({defect})")]
    NotBijection { family: MethodTag, defect: BijectionDefect },
    #[error("{family} labeling of {params} failed verification: {defect}")]
    VerificationFailed { family: MethodTag, params: ProductParams, defect: Defect },
    #[error("no epsilon in 0..={max} gives an antimagic labeling for s = {s}, m = {m}")]
    EpsilonExhausted { s: usize, m: usize, max: u64 },
    #[error("search found an antimagic labeling of the exceptional graph {0}")]
    ExceptionRefuted(ProductParams),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Which construction produced a labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    EvenS2,
    EvenGeneral,
    OddP3,
    OddP5,
    OddGeneral,
    TwoStars,
    SearchFallback,
}

impl MethodTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodTag::EvenS2 => "even-s2",
            MethodTag::EvenGeneral => "even-general",
            MethodTag::OddP3 => "odd-p3",
            MethodTag::OddP5 => "odd-p5",
            MethodTag::OddGeneral => "odd-general",
            MethodTag::TwoStars => "two-stars",
            MethodTag::SearchFallback => "search-fallback",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shift of the pendant-label sum, `0 <= value <= s^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Epsilon(u64);

impl Epsilon {
    pub fn new(value: u64, s: usize) -> Result<Self, ConstructionError> {
        let max = (s * s) as u64;
        if value > max {
            return Err(ConstructionError::EpsilonOutOfRange { value, max });
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A verified antimagic labeling of `product_star_path(params)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub params: ProductParams,
    pub labeling: EdgeLabeling,
    pub method: MethodTag,
    pub epsilon: Option<Epsilon>,
    /// Set when `select_epsilon` had to look beyond `0..=3`.
    pub epsilon_fallback: bool,
    /// Closed-form family that was tried first and rejected by the verifier.
    pub superseded: Option<MethodTag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionOutcome {
    Antimagic(Construction),
    NotAntimagic(NonAntimagicCertificate),
    Unknown(BudgetReport),
}

impl ConstructionOutcome {
    pub fn verdict_word(&self) -> &'static str {
        match self {
            ConstructionOutcome::Antimagic(_) => "antimagic",
            ConstructionOutcome::NotAntimagic(_) => "not-antimagic",
            ConstructionOutcome::Unknown(_) => "unknown",
        }
    }

    pub fn construction(&self) -> Option<&Construction> {
        match self {
            ConstructionOutcome::Antimagic(c) => Some(c),
            _ => None,
        }
    }
}

/// Collects labels by role pair and checks totality and bijectivity.
struct RoleLabeler<'g> {
    family: MethodTag,
    graph: &'g Graph,
    labels: Vec<Option<Label>>,
}

impl<'g> RoleLabeler<'g> {
    fn new(family: MethodTag, graph: &'g Graph) -> Self {
        Self { family, graph, labels: vec![None; graph.edge_count()] }
    }

    fn set(&mut self, a: VertexRole, b: VertexRole, label: Label) -> Result<(), ConstructionError> {
        let family = self.family;
        let edge = self
            .graph
            .edge_between_roles(a, b)
            .ok_or(ConstructionError::MissingEdge { family, a, b })?;
        if self.labels[edge].replace(label).is_some() {
            return Err(ConstructionError::Relabeled { family, a, b });
        }
        Ok(())
    }

    fn finish(self) -> Result<EdgeLabeling, ConstructionError> {
        let family = self.family;
        let count = self.labels.iter().filter(|l| l.is_none()).count();
        if count > 0 {
            return Err(ConstructionError::Unlabeled { family, count });
        }
        let labeling = EdgeLabeling::new(self.labels.into_iter().flatten().collect());
        if let Some(defect) = bijection_defect(self.graph, &labeling)? {
            return Err(ConstructionError::NotBijection { family, defect });
        }
        Ok(labeling)
    }
}

fn require(
    ok: bool,
    family: MethodTag,
    requirement: &'static str,
    s: usize,
    m: usize,
) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::OutOfRange { family, requirement, s, m })
    }
}

fn params(s: usize, n: usize) -> Result<ProductParams, ConstructionError> {
    Ok(ProductParams::new(s, n)?)
}

/// Canonical `s`-subset of `{1..2s}` whose sum is `s(s+1)/2 + eps`, ascending.
///
/// With `eps = q*s + r`, `0 <= r < s`: the top `q` elements of `{1..s}` move
/// up by `s`, and element `s - q` moves up by `r`.
pub fn pendant_subset(s: usize, eps: Epsilon) -> Result<Vec<Label>, ConstructionError> {
    require(s >= 2, MethodTag::EvenGeneral, "s >= 2 for pendant subsets", s, 0)?;
    let eps = Epsilon::new(eps.value(), s)?.value();
    let s64 = s as u64;
    let (q, r) = (eps / s64, eps % s64);
    let mut subset: Vec<Label> = (1..s64 - q).collect();
    if q < s64 {
        subset.push(s64 - q + r);
    }
    subset.extend(2 * s64 - q + 1..=2 * s64);
    Ok(subset)
}

/// `{1..2s}` split into the canonical pendant subset and its complement.
fn pendant_split(s: usize, eps: Epsilon) -> Result<(Vec<Label>, Vec<Label>), ConstructionError> {
    let chosen = pendant_subset(s, eps)?;
    let rest = (1..=2 * s as u64).filter(|l| !chosen.contains(l)).collect();
    Ok((chosen, rest))
}

/// `K_{1,2} x P_{2m+2}`, `m >= 1`.
pub fn label_even_s2(m: usize) -> Result<EdgeLabeling, ConstructionError> {
    require(m >= 1, MethodTag::EvenS2, "m >= 1", 2, m)?;
    let g = product_star_path(params(2, 2 * m + 2)?);
    even_s2_on(&g, m)
}

fn even_s2_on(g: &Graph, m: usize) -> Result<EdgeLabeling, ConstructionError> {
    use VertexRole as R;
    let mut f = RoleLabeler::new(MethodTag::EvenS2, g);
    let m64 = m as u64;
    for j in 1..=2usize {
        let j64 = j as u64;
        f.set(R::a(0, j), R::v(0), 2 + j64)?;
        f.set(R::b(0, j), R::u(0), j64)?;
        for i in 1..=m {
            let i64 = i as u64;
            f.set(R::b(i, j), R::u(i - 1), 3 + 2 * i64 + 4 * m64 * (j64 - 1))?;
            f.set(R::b(i, j), R::u(i), 4 + 2 * i64 + 4 * m64 * (j64 - 1))?;
            f.set(R::a(i, j), R::v(i - 1), 3 + 2 * i64 + 2 * m64 * (2 * j64 - 1))?;
            f.set(R::a(i, j), R::v(i), 4 + 2 * i64 + 2 * m64 * (2 * j64 - 1))?;
        }
    }
    f.finish()
}

/// The `f_eps` family on `K_{1,s} x P_{2m+2}`, `s >= 3`, `m >= 1`. Always a
/// bijection; antimagic only for suitable `eps`.
pub fn label_even_general(s: usize, m: usize, eps: Epsilon) -> Result<EdgeLabeling, ConstructionError> {
    check_even_general(s, m)?;
    let g = product_star_path(params(s, 2 * m + 2)?);
    even_general_on(&g, s, m, eps)
}

fn check_even_general(s: usize, m: usize) -> Result<(), ConstructionError> {
    require(s >= 3 && m >= 1, MethodTag::EvenGeneral, "s >= 3 and m >= 1", s, m)
}

fn even_general_on(g: &Graph, s: usize, m: usize, eps: Epsilon) -> Result<EdgeLabeling, ConstructionError> {
    use VertexRole as R;
    let mut f = RoleLabeler::new(MethodTag::EvenGeneral, g);
    let (a_side, b_side) = pendant_split(s, eps)?;
    for j in 1..=s {
        f.set(R::a(0, j), R::v(0), a_side[j - 1])?;
        f.set(R::b(0, j), R::u(0), b_side[j - 1])?;
    }
    let (s64, shift) = (s as u64, 2 * (m * s) as u64);
    for i in 1..=m {
        let base = 2 * (i * s) as u64;
        for j in 1..=s {
            // (label into a_i^j from v_{i-1}, label from a_i^j to v_i)
            let odd = 2 * j as u64 - 1 + base;
            let even = 2 * j as u64 + base;
            let (entering, leaving) = if i % 2 == 1 { (odd, even) } else { (even, odd) };
            f.set(R::a(i, j), R::v(i - 1), entering)?;
            f.set(R::a(i, j), R::v(i), leaving)?;
            f.set(R::b(i, j), R::u(i - 1), entering + shift)?;
            f.set(R::b(i, j), R::u(i), leaving + shift)?;
        }
    }
    debug_assert_eq!(g.edge_count() as u64, 4 * m as u64 * s64 + 2 * s64);
    f.finish()
}

/// `K_{1,s} x P_3`, `s >= 2`.
pub fn label_odd_p3(s: usize) -> Result<EdgeLabeling, ConstructionError> {
    require(s >= 2, MethodTag::OddP3, "s >= 2", s, 1)?;
    use VertexRole as R;
    let g = product_star_path(params(s, 3)?);
    let mut f = RoleLabeler::new(MethodTag::OddP3, &g);
    let s64 = s as u64;
    for j in 1..=s {
        let j64 = j as u64;
        f.set(R::a(0, j), R::v(0), j64)?;
        f.set(R::v(0), R::a(1, j), s64 + j64)?;
        f.set(R::u(1), R::b(1, j), 2 * s64 + 2 * j64 - 1)?;
        f.set(R::u(0), R::b(1, j), 2 * s64 + 2 * j64)?;
    }
    f.finish()
}

/// `K_{1,s} x P_5`, `s >= 2`. At `s = 2` this labeling gives `v_1` and
/// `b_1^1` the same weight (19), so the dispatcher rejects it there.
pub fn label_odd_p5(s: usize) -> Result<EdgeLabeling, ConstructionError> {
    require(s >= 2, MethodTag::OddP5, "s >= 2", s, 2)?;
    use VertexRole as R;
    let g = product_star_path(params(s, 5)?);
    let mut f = RoleLabeler::new(MethodTag::OddP5, &g);
    let s64 = s as u64;
    for j in 1..=s {
        let j64 = j as u64;
        f.set(R::a(0, j), R::v(0), j64)?;
        f.set(R::v(1), R::a(2, j), s64 + j64)?;
        f.set(R::v(1), R::a(1, j), 2 * s64 + 2 * j64 - 1)?;
        f.set(R::v(0), R::a(1, j), 2 * s64 + 2 * j64)?;
        f.set(R::u(1), R::b(1, j), 4 * s64 + 2 * j64 - 1)?;
        f.set(R::u(0), R::b(1, j), 4 * s64 + 2 * j64)?;
        f.set(R::u(1), R::b(2, j), 6 * s64 + 2 * j64 - 1)?;
        f.set(R::u(2), R::b(2, j), 6 * s64 + 2 * j64)?;
    }
    f.finish()
}

/// The `f_eps` family on `K_{1,s} x P_{2m+1}`, `s >= 2`, `m >= 3`.
pub fn label_odd_general(s: usize, m: usize, eps: Epsilon) -> Result<EdgeLabeling, ConstructionError> {
    check_odd_general(s, m)?;
    let g = product_star_path(params(s, 2 * m + 1)?);
    odd_general_on(&g, s, m, eps)
}

fn check_odd_general(s: usize, m: usize) -> Result<(), ConstructionError> {
    require(s >= 2 && m >= 3, MethodTag::OddGeneral, "s >= 2 and m >= 3", s, m)
}

fn odd_general_on(g: &Graph, s: usize, m: usize, eps: Epsilon) -> Result<EdgeLabeling, ConstructionError> {
    use VertexRole as R;
    let mut f = RoleLabeler::new(MethodTag::OddGeneral, g);
    let (first, last) = pendant_split(s, eps)?;
    for j in 1..=s {
        f.set(R::a(0, j), R::v(0), first[j - 1])?;
        f.set(R::v(m - 1), R::a(m, j), last[j - 1])?;
    }
    let shift = 2 * ((m - 1) * s) as u64;
    for i in 1..=m {
        let base = 2 * (i * s) as u64;
        for j in 1..=s {
            let even = 2 * j as u64 + base;
            let odd = even - 1;
            // (label on the edge towards index i-1, label on the edge towards i)
            let (back, forward) = if i % 2 == 1 { (even, odd) } else { (odd, even) };
            if i < m {
                f.set(R::v(i - 1), R::a(i, j), back)?;
                f.set(R::a(i, j), R::v(i), forward)?;
            }
            f.set(R::u(i - 1), R::b(i, j), back + shift)?;
            f.set(R::b(i, j), R::u(i), forward + shift)?;
        }
    }
    f.finish()
}

/// `K_{1,s} x P_2 = 2 K_{1,s}`, `s >= 3`: the star around `v_0` takes
/// `{1..s-1, 2s}`, the star around `u_0` takes `{s..2s-1}`.
///
/// Leaf weights are the labels themselves, all at most `2s`. The hubs weigh
/// `s(s+3)/2` and `s(3s-1)/2`; both exceed `2s` for `s >= 3` and they are equal
/// only at `s = 2`.
pub fn label_two_stars(s: usize) -> Result<EdgeLabeling, ConstructionError> {
    require(s >= 3, MethodTag::TwoStars, "s >= 3", s, 0)?;
    use VertexRole as R;
    let p = params(s, 2)?;
    let g = product_star_path(p);
    let mut f = RoleLabeler::new(MethodTag::TwoStars, &g);
    let s64 = s as u64;
    for j in 1..=s {
        let j64 = j as u64;
        let first = if j < s { j64 } else { 2 * s64 };
        f.set(R::a(0, j), R::v(0), first)?;
        f.set(R::b(0, j), R::u(0), s64 - 1 + j64)?;
    }
    let labeling = f.finish()?;
    verified(MethodTag::TwoStars, p, &g, labeling)
}

fn verified(
    family: MethodTag,
    params: ProductParams,
    g: &Graph,
    labeling: EdgeLabeling,
) -> Result<EdgeLabeling, ConstructionError> {
    match is_antimagic_labeling(g, &labeling)? {
        Verdict::Pass => Ok(labeling),
        Verdict::Fail(defect) => Err(ConstructionError::VerificationFailed { family, params, defect }),
    }
}

/// Outcome of the epsilon scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonChoice {
    pub epsilon: Epsilon,
    pub labeling: EdgeLabeling,
    /// `true` if no value in `0..=3` worked and the scan went on to `4..=s^2`.
    pub fallback_fired: bool,
}

/// Tries `eps = 0, 1, 2, 3` (concurrently under [`Execution::Parallel`]) and
/// returns the first antimagic one, then scans `4..=s^2`.
pub fn select_epsilon(s: usize, m: usize, parity: Parity) -> Result<EpsilonChoice, ConstructionError> {
    select_epsilon_with(s, m, parity, Execution::default())
}

pub fn select_epsilon_with(
    s: usize,
    m: usize,
    parity: Parity,
    execution: Execution,
) -> Result<EpsilonChoice, ConstructionError> {
    let n = match parity {
        Parity::Even => {
            check_even_general(s, m)?;
            2 * m + 2
        }
        Parity::Odd => {
            check_odd_general(s, m)?;
            2 * m + 1
        }
    };
    let g = product_star_path(params(s, n)?);
    let attempt = |value: &u64| -> Result<Option<EdgeLabeling>, ConstructionError> {
        let eps = Epsilon::new(*value, s)?;
        let labeling = match parity {
            Parity::Even => even_general_on(&g, s, m, eps)?,
            Parity::Odd => odd_general_on(&g, s, m, eps)?,
        };
        Ok(is_antimagic_labeling(&g, &labeling)?.is_pass().then_some(labeling))
    };

    let max = (s * s) as u64;
    let primary: Vec<u64> = (0..=3.min(max)).collect();
    for (value, result) in primary.iter().zip(exec::map(&primary, execution, attempt)) {
        if let Some(labeling) = result? {
            return Ok(EpsilonChoice { epsilon: Epsilon(*value), labeling, fallback_fired: false });
        }
    }
    for value in 4..=max {
        if let Some(labeling) = attempt(&value)? {
            return Ok(EpsilonChoice { epsilon: Epsilon(value), labeling, fallback_fired: true });
        }
    }
    Err(ConstructionError::EpsilonExhausted { s, m, max })
}

fn is_exception(p: ProductParams) -> bool {
    matches!((p.s(), p.n()), (1, 2) | (1, 3) | (2, 2))
}

fn search_fallback(
    p: ProductParams,
    g: &Graph,
    budget: SearchBudget,
    superseded: Option<MethodTag>,
) -> Result<ConstructionOutcome, ConstructionError> {
    let budget = if g.edge_count() > EXHAUSTIVE_EDGE_LIMIT {
        budget.with_mode(SearchMode::Backtracking)
    } else {
        budget
    };
    Ok(match find_antimagic(g, budget)? {
        SearchOutcome::Antimagic { labeling, .. } => ConstructionOutcome::Antimagic(Construction {
            params: p,
            labeling,
            method: MethodTag::SearchFallback,
            epsilon: None,
            epsilon_fallback: false,
            superseded,
        }),
        SearchOutcome::NotAntimagic(cert) => ConstructionOutcome::NotAntimagic(cert),
        SearchOutcome::Unknown(report) => ConstructionOutcome::Unknown(report),
    })
}

/// Builds an antimagic labeling of `K_{1,s} x P_n`, or certifies that none
/// exists for the three exceptional graphs.
///
/// | region                      | method                         |
/// |-----------------------------|--------------------------------|
/// | (1,2), (1,3), (2,2)         | exhaustive certificate         |
/// | s = 1, n >= 4               | search                         |
/// | s >= 3, n = 2               | two stars                      |
/// | s = 2, n even >= 4          | `label_even_s2`                |
/// | s >= 3, n even >= 4         | `label_even_general` + epsilon |
/// | s >= 2, n = 3               | `label_odd_p3`                 |
/// | s >= 2, n = 5               | `label_odd_p5`                 |
/// | s >= 2, n odd >= 7          | `label_odd_general` + epsilon  |
///
/// `budget` only matters for the search regions. A closed-form labeling the
/// verifier rejects is replaced by a search result with `superseded` set.
pub fn construct(p: ProductParams, budget: SearchBudget) -> Result<ConstructionOutcome, ConstructionError> {
    let g = product_star_path(p);
    let (s, m) = (p.s(), p.m());

    if is_exception(p) {
        return match find_antimagic(&g, SearchBudget::exhaustive(u64::MAX))? {
            SearchOutcome::NotAntimagic(cert) => Ok(ConstructionOutcome::NotAntimagic(cert)),
            _ => Err(ConstructionError::ExceptionRefuted(p)),
        };
    }
    if s == 1 {
        return search_fallback(p, &g, budget, None);
    }

    let (method, labeling, choice) = match (p.is_even(), s, p.n()) {
        (true, _, 2) => (MethodTag::TwoStars, label_two_stars(s)?, None),
        (true, 2, _) => (MethodTag::EvenS2, even_s2_on(&g, m)?, None),
        (true, _, _) => {
            let choice = select_epsilon(s, m, Parity::Even)?;
            (MethodTag::EvenGeneral, choice.labeling.clone(), Some(choice))
        }
        (false, _, 3) => (MethodTag::OddP3, label_odd_p3(s)?, None),
        (false, _, 5) => (MethodTag::OddP5, label_odd_p5(s)?, None),
        (false, _, _) => {
            let choice = select_epsilon(s, m, Parity::Odd)?;
            (MethodTag::OddGeneral, choice.labeling.clone(), Some(choice))
        }
    };

    if !is_antimagic_labeling(&g, &labeling)?.is_pass() {
        return search_fallback(p, &g, budget, Some(method));
    }
    Ok(ConstructionOutcome::Antimagic(Construction {
        params: p,
        labeling,
        method,
        epsilon: choice.as_ref().map(|c| c.epsilon),
        epsilon_fallback: choice.is_some_and(|c| c.fallback_fired),
        superseded: None,
    }))
}
