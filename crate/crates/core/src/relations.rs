//! Trade-off theorems and pure-state identities as signed slacks, plus
//! ensemble verification over Haar-random states.
//!
//! Sign convention: an inequality slack is nonnegative when the bound
//! holds; an equality reports its absolute residual.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::parameter_grid;
use crate::linalg::{Pair, Qubit};
use crate::measures::{profile, ResourceProfile};
use crate::states::{Family, HaarStream, PureState3, SamplerConfig, RNG_ALGORITHM};
use crate::{Error, Result};

/// Coherence value at which the Theorem-5 branches meet and the quartic
/// lower bound on fill stops applying.
pub const CRITICAL_COHERENCE: f64 = 0.577_350_269_189_625_8; // 1/√3

/// Number of worst states retained per relation in an ensemble run.
pub const WORST_CAPACITY: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationId {
    #[serde(rename = "T1_ellipse")]
    T1Ellipse,
    #[serde(rename = "T2_upper")]
    T2Upper,
    #[serde(rename = "T2_lower")]
    T2Lower,
    #[serde(rename = "T3_upper")]
    T3Upper,
    #[serde(rename = "T3_lower")]
    T3Lower,
    #[serde(rename = "T4")]
    T4,
    #[serde(rename = "T5_low_D")]
    T5LowD,
    #[serde(rename = "T5_high_D")]
    T5HighD,
    #[serde(rename = "ID_side_duality")]
    IdSideDuality,
    #[serde(rename = "ID_purity_duality")]
    IdPurityDuality,
    #[serde(rename = "ID_sum_rule")]
    IdSumRule,
    #[serde(rename = "ID_schmidt_purity")]
    IdSchmidtPurity,
    #[serde(rename = "ID_gmc_shortest_side")]
    IdGmcShortestSide,
    #[serde(rename = "ID_D_vs_Q")]
    IdDVsQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Equality,
    Inequality,
}

impl RelationId {
    pub const ALL: [RelationId; 14] = [
        RelationId::T1Ellipse,
        RelationId::T2Upper,
        RelationId::T2Lower,
        RelationId::T3Upper,
        RelationId::T3Lower,
        RelationId::T4,
        RelationId::T5LowD,
        RelationId::T5HighD,
        RelationId::IdSideDuality,
        RelationId::IdPurityDuality,
        RelationId::IdSumRule,
        RelationId::IdSchmidtPurity,
        RelationId::IdGmcShortestSide,
        RelationId::IdDVsQ,
    ];

    pub fn kind(self) -> RelationKind {
        use RelationId::*;
        match self {
            T2Upper | T2Lower | T3Upper | T3Lower | T4 | T5LowD | T5HighD => {
                RelationKind::Inequality
            }
            _ => RelationKind::Equality,
        }
    }

    pub fn name(self) -> &'static str {
        use RelationId::*;
        match self {
            T1Ellipse => "T1_ellipse",
            T2Upper => "T2_upper",
            T2Lower => "T2_lower",
            T3Upper => "T3_upper",
            T3Lower => "T3_lower",
            T4 => "T4",
            T5LowD => "T5_low_D",
            T5HighD => "T5_high_D",
            IdSideDuality => "ID_side_duality",
            IdPurityDuality => "ID_purity_duality",
            IdSumRule => "ID_sum_rule",
            IdSchmidtPurity => "ID_schmidt_purity",
            IdGmcShortestSide => "ID_gmc_shortest_side",
            IdDVsQ => "ID_D_vs_Q",
        }
    }

    /// Whether `value` (a slack or a residual) satisfies the relation.
    pub fn passes(self, value: f64, tol: f64) -> bool {
        match self.kind() {
            RelationKind::Equality => value.abs() <= tol,
            RelationKind::Inequality => value >= -tol,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(2G − 1)² + C² − 1`; zero for every pure state.
pub fn t1_from_profile(p: &ResourceProfile) -> f64 {
    (2.0 * p.ggm - 1.0).powi(2) + p.gmc * p.gmc - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T2Slacks {
    /// `1 − C² − D²`
    pub upper: f64,
    /// `C² + 3D² − 1`
    pub lower: f64,
}

pub fn t2_from_profile(p: &ResourceProfile) -> T2Slacks {
    let (c2, d2) = (p.gmc * p.gmc, p.coherence * p.coherence);
    T2Slacks {
        upper: 1.0 - c2 - d2,
        lower: c2 + 3.0 * d2 - 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T3Slacks {
    /// `1 − F − D²`
    pub upper: f64,
    /// `F⁴ + (3D² − 1)²(3D⁴ − 2D² − 1)`
    pub lower: f64,
    /// The quartic bound only holds for `D ≤ 1/√3`.
    pub lower_applicable: bool,
}

pub fn t3_from_profile(p: &ResourceProfile, tol: f64) -> T3Slacks {
    let d2 = p.coherence * p.coherence;
    T3Slacks {
        upper: 1.0 - p.fill - d2,
        lower: p.fill.powi(4) + (3.0 * d2 - 1.0).powi(2) * (3.0 * d2 * d2 - 2.0 * d2 - 1.0),
        lower_applicable: p.coherence <= CRITICAL_COHERENCE + tol,
    }
}

/// `−[48F⁴ + (S − 3)²(S + 1)(S − 7)]`
pub fn t4_from_profile(p: &ResourceProfile) -> f64 {
    let s = p.steering_max;
    -(48.0 * p.fill.powi(4) + (s - 3.0).powi(2) * (s + 1.0) * (s - 7.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum T5Branch {
    /// `D < 1/√3`
    Low,
    /// `D ≥ 1/√3`
    High,
    /// `D` within `tol` of `1/√3`; both bounds are checked and the more
    /// permissive one decides.
    Collar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T5Slacks {
    /// `1 + 6D² − S`
    pub low: f64,
    /// `4 − 3D² − S`
    pub high: f64,
    pub branch: T5Branch,
}

impl T5Slacks {
    /// The slack that decides the verdict for the selected branch.
    pub fn governing(&self) -> f64 {
        match self.branch {
            T5Branch::Low => self.low,
            T5Branch::High => self.high,
            T5Branch::Collar => self.low.max(self.high),
        }
    }
}

pub fn t5_from_profile(p: &ResourceProfile, tol: f64) -> T5Slacks {
    let d = p.coherence;
    let d2 = d * d;
    let branch = if (d - CRITICAL_COHERENCE).abs() <= tol {
        T5Branch::Collar
    } else if d < CRITICAL_COHERENCE {
        T5Branch::Low
    } else {
        T5Branch::High
    };
    T5Slacks {
        low: 1.0 + 6.0 * d2 - p.steering_max,
        high: 4.0 - 3.0 * d2 - p.steering_max,
        branch,
    }
}

/// Absolute residuals of the pure-state identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    /// `S_XY = s_X + s_Y − 2 s_Z + 1`, worst over the three pairs.
    pub side_duality: f64,
    /// `S_XY = 4 Tr ρ_Z² − 2 Tr ρ_X² − 2 Tr ρ_Y² + 1`, worst over pairs.
    pub purity_duality: f64,
    /// `S_AB + S_AC + S_BC = 3`
    pub sum_rule: f64,
    /// `Tr ρ_i² = Tr ρ_jk²`, worst over the three cuts.
    pub schmidt_purity: f64,
    /// `min(a, b, c) = min_i 2(1 − Tr ρ_i²)`, the shortest side against GMC
    /// evaluated through marginal purities.
    pub gmc_shortest_side: f64,
    /// `D² = 1 − (2/3) Q`
    pub d_vs_q: f64,
}

impl IdentityResiduals {
    pub fn get(&self, id: RelationId) -> Option<f64> {
        Some(match id {
            RelationId::IdSideDuality => self.side_duality,
            RelationId::IdPurityDuality => self.purity_duality,
            RelationId::IdSumRule => self.sum_rule,
            RelationId::IdSchmidtPurity => self.schmidt_purity,
            RelationId::IdGmcShortestSide => self.gmc_shortest_side,
            RelationId::IdDVsQ => self.d_vs_q,
            _ => return None,
        })
    }
}

pub fn identities_from_profile(p: &ResourceProfile) -> IdentityResiduals {
    let mut side_duality = 0.0f64;
    let mut purity_duality = 0.0f64;
    for pair in Pair::ALL {
        let (x, y) = pair.qubits();
        let z = pair.complement();
        let s = p.steering_pairs.get(pair);
        let by_sides = p.sides.get(x) + p.sides.get(y) - 2.0 * p.sides.get(z) + 1.0;
        let pu = &p.marginal_purities;
        let by_purities = 4.0 * pu.get(z) - 2.0 * pu.get(x) - 2.0 * pu.get(y) + 1.0;
        side_duality = side_duality.max((s - by_sides).abs());
        purity_duality = purity_duality.max((s - by_purities).abs());
    }
    let schmidt_purity = Qubit::ALL
        .iter()
        .map(|&q| (p.marginal_purities.get(q) - p.pair_purities.get(q.complement())).abs())
        .fold(0.0, f64::max);
    let s = &p.steering_pairs;
    IdentityResiduals {
        side_duality,
        purity_duality,
        sum_rule: (s.ab + s.ac + s.bc - 3.0).abs(),
        schmidt_purity,
        gmc_shortest_side: (p.gmc * p.gmc - 2.0 * (1.0 - p.marginal_purities.max())).abs(),
        d_vs_q: (p.coherence * p.coherence - (1.0 - 2.0 / 3.0 * p.half_perimeter)).abs(),
    }
}

/// One relation evaluated on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub id: RelationId,
    /// Signed slack for inequalities, absolute residual for equalities.
    pub value: f64,
    pub applicable: bool,
}

impl Evaluation {
    pub fn passes(&self, tol: f64) -> bool {
        !self.applicable || self.id.passes(self.value, tol)
    }
}

/// Evaluates every relation on a precomputed profile, in [`RelationId::ALL`]
/// order.
pub fn evaluate_profile(p: &ResourceProfile, tol: f64) -> [Evaluation; 14] {
    let t2 = t2_from_profile(p);
    let t3 = t3_from_profile(p, tol);
    let t5 = t5_from_profile(p, tol);
    let ids = identities_from_profile(p);
    RelationId::ALL.map(|id| {
        let (value, applicable) = match id {
            RelationId::T1Ellipse => (t1_from_profile(p).abs(), true),
            RelationId::T2Upper => (t2.upper, true),
            RelationId::T2Lower => (t2.lower, true),
            RelationId::T3Upper => (t3.upper, true),
            RelationId::T3Lower => (t3.lower, t3.lower_applicable),
            RelationId::T4 => (t4_from_profile(p), true),
            RelationId::T5LowD => (t5.governing(), t5.branch != T5Branch::High),
            RelationId::T5HighD => (t5.governing(), t5.branch != T5Branch::Low),
            other => (ids.get(other).expect("identity relation"), true),
        };
        Evaluation {
            id,
            value,
            applicable,
        }
    })
}

/// `(2G − 1)² + C² − 1` for a state.
pub fn t1_slack(state: &PureState3) -> Result<f64> {
    Ok(t1_from_profile(&profile(state)?))
}

pub fn t2_slacks(state: &PureState3) -> Result<T2Slacks> {
    Ok(t2_from_profile(&profile(state)?))
}

pub fn t3_slacks(state: &PureState3, tol: f64) -> Result<T3Slacks> {
    Ok(t3_from_profile(&profile(state)?, tol))
}

pub fn t4_slack(state: &PureState3) -> Result<f64> {
    Ok(t4_from_profile(&profile(state)?))
}

pub fn t5_slacks(state: &PureState3, tol: f64) -> Result<T5Slacks> {
    Ok(t5_from_profile(&profile(state)?, tol))
}

pub fn identity_slacks(state: &PureState3) -> Result<IdentityResiduals> {
    Ok(identities_from_profile(&profile(state)?))
}

/// A retained extreme case from an ensemble run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorstCase {
    pub index: u64,
    pub value: f64,
    pub state: PureState3,
}

/// Ensemble outcome for one relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSummary {
    pub id: RelationId,
    /// Minimum slack (inequalities) or maximum residual (equalities) over
    /// applicable samples; `None` when no sample was applicable.
    pub statistic: Option<f64>,
    pub n_applicable: u64,
    pub n_failed: u64,
    pub pass: bool,
    /// Worst cases, most extreme first.
    pub worst: Vec<WorstCase>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub relations: Vec<RelationSummary>,
    pub n_samples: u64,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub tol: f64,
    /// Samples whose GGM fell outside `[0, 1/2]`; counted against T1.
    pub ggm_domain_violations: u64,
    /// Samples whose measures could not be evaluated, `(index, message)`.
    pub evaluation_errors: Vec<(u64, String)>,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.evaluation_errors.is_empty() && self.relations.iter().all(|r| r.pass)
    }

    pub fn get(&self, id: RelationId) -> &RelationSummary {
        &self.relations[id.index()]
    }
}

/// "More extreme" key: larger residual, or more negative slack.
fn badness(id: RelationId, value: f64) -> f64 {
    match id.kind() {
        RelationKind::Equality => value,
        RelationKind::Inequality => -value,
    }
}

#[derive(Debug, Clone)]
struct RelationAcc {
    worst_badness: f64,
    n_applicable: u64,
    n_failed: u64,
    worst: Vec<WorstCase>,
}

impl RelationAcc {
    fn new() -> Self {
        Self {
            worst_badness: f64::NEG_INFINITY,
            n_applicable: 0,
            n_failed: 0,
            worst: Vec::new(),
        }
    }
}

fn order_worst(id: RelationId) -> impl Fn(&WorstCase, &WorstCase) -> Ordering {
    move |x, y| {
        badness(id, y.value)
            .total_cmp(&badness(id, x.value))
            .then(x.index.cmp(&y.index))
    }
}

/// Per-worker partial result; merging is associative and commutative, so
/// the final report does not depend on how samples were split.
#[derive(Debug, Clone)]
struct Accumulator {
    tol: f64,
    relations: Vec<RelationAcc>,
    ggm_domain_violations: u64,
    errors: Vec<(u64, String)>,
}

impl Accumulator {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            relations: vec![RelationAcc::new(); RelationId::ALL.len()],
            ggm_domain_violations: 0,
            errors: Vec::new(),
        }
    }

    fn observe(&mut self, index: u64, state: &PureState3) {
        match profile(state) {
            Ok(p) => self.observe_profile(index, state, &p),
            Err(e) => self.errors.push((index, e.to_string())),
        }
    }

    fn observe_profile(&mut self, index: u64, state: &PureState3, p: &ResourceProfile) {
        if !(-self.tol..=0.5 + self.tol).contains(&p.ggm) {
            self.ggm_domain_violations += 1;
        }
        for ev in evaluate_profile(p, self.tol) {
            if !ev.applicable {
                continue;
            }
            let acc = &mut self.relations[ev.id.index()];
            acc.n_applicable += 1;
            if !ev.passes(self.tol) {
                acc.n_failed += 1;
            }
            let b = badness(ev.id, ev.value);
            acc.worst_badness = acc.worst_badness.max(b);
            let full = acc.worst.len() >= WORST_CAPACITY;
            if !full
                || acc
                    .worst
                    .last()
                    .is_some_and(|w| b > badness(ev.id, w.value))
            {
                acc.worst.push(WorstCase {
                    index,
                    value: ev.value,
                    state: *state,
                });
                acc.worst.sort_by(order_worst(ev.id));
                acc.worst.truncate(WORST_CAPACITY);
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for ((mine, theirs), id) in self
            .relations
            .iter_mut()
            .zip(other.relations)
            .zip(RelationId::ALL)
        {
            mine.worst_badness = mine.worst_badness.max(theirs.worst_badness);
            mine.n_applicable += theirs.n_applicable;
            mine.n_failed += theirs.n_failed;
            mine.worst.extend(theirs.worst);
            mine.worst.sort_by(order_worst(id));
            mine.worst.truncate(WORST_CAPACITY);
        }
        self.ggm_domain_violations += other.ggm_domain_violations;
        self.errors.extend(other.errors);
        self.errors.sort_by_key(|e| e.0);
        self
    }

    fn into_report(self, config: SamplerConfig) -> TheoremReport {
        let ggm_domain_violations = self.ggm_domain_violations;
        let relations = self
            .relations
            .into_iter()
            .zip(RelationId::ALL)
            .map(|(acc, id)| {
                let statistic = (acc.n_applicable > 0).then(|| match id.kind() {
                    RelationKind::Equality => acc.worst_badness,
                    RelationKind::Inequality => -acc.worst_badness,
                });
                let domain_ok = id != RelationId::T1Ellipse || ggm_domain_violations == 0;
                RelationSummary {
                    id,
                    statistic,
                    n_applicable: acc.n_applicable,
                    n_failed: acc.n_failed,
                    pass: acc.n_failed == 0 && domain_ok,
                    worst: acc.worst,
                }
            })
            .collect();
        TheoremReport {
            relations,
            n_samples: config.count() as u64,
            seed: config.seed(),
            rng_algorithm: RNG_ALGORITHM,
            tol: self.tol,
            ggm_domain_violations,
            evaluation_errors: self.errors,
        }
    }
}

/// Checks every relation on `config.count()` Haar samples in parallel.
///
/// Relation failures are reported in the returned report, not as errors.
pub fn verify_ensemble(config: SamplerConfig, tol: f64) -> Result<TheoremReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let stream = HaarStream::new(config.seed());
    let acc = (0..config.count() as u64)
        .into_par_iter()
        .fold(
            || Accumulator::new(tol),
            |mut acc, i| {
                acc.observe(i, &stream.state(i));
                acc
            },
        )
        .reduce(|| Accumulator::new(tol), Accumulator::merge);
    Ok(acc.into_report(config))
}

/// Verification over explicit `(state, profile)` pairs, bypassing the
/// sampler. Lets callers inject hand-built or deliberately inconsistent
/// profiles.
pub fn verify_profiles<'a>(
    items: impl IntoIterator<Item = (&'a PureState3, &'a ResourceProfile)>,
    tol: f64,
) -> Result<TheoremReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut acc = Accumulator::new(tol);
    let mut n = 0usize;
    for (i, (state, p)) in items.into_iter().enumerate() {
        acc.observe_profile(i as u64, state, p);
        n += 1;
    }
    Ok(acc.into_report(SamplerConfig::new(0, n.max(1))?))
}

/// The relations a boundary family saturates with equality.
pub fn saturated_relations(family: Family) -> &'static [RelationId] {
    match family {
        Family::Alpha => &[RelationId::T2Upper, RelationId::T3Upper],
        Family::M => &[
            RelationId::T2Lower,
            RelationId::T3Lower,
            RelationId::T4,
            RelationId::T5LowD,
        ],
        Family::Theta => &[RelationId::T5HighD],
    }
}

/// Largest `|slack|` of each saturated relation over an `n_points` grid of
/// numerically evaluated family states.
pub fn saturation_residuals(family: Family, n_points: usize) -> Result<Vec<(RelationId, f64)>> {
    let mut worst: Vec<(RelationId, f64)> = saturated_relations(family)
        .iter()
        .map(|&id| (id, 0.0))
        .collect();
    for t in parameter_grid(family, n_points)? {
        let state = crate::states::BoundaryParam::new(family, t)?.state();
        let p = profile(&state)?;
        let t2 = t2_from_profile(&p);
        let t3 = t3_from_profile(&p, 0.0);
        let t5 = t5_from_profile(&p, 0.0);
        for (id, w) in worst.iter_mut() {
            let v = match id {
                RelationId::T2Upper => t2.upper,
                RelationId::T2Lower => t2.lower,
                RelationId::T3Upper => t3.upper,
                RelationId::T3Lower => t3.lower,
                RelationId::T4 => t4_from_profile(&p),
                RelationId::T5LowD => t5.low,
                RelationId::T5HighD => t5.high,
                _ => unreachable!("not a saturated relation"),
            };
            *w = w.max(v.abs());
        }
    }
    Ok(worst)
}
