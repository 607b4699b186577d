//! Pareto dominance and frontiers, welfare maxima, and the three-player audit.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{CorrelatedStrategy, Game, MixedProfile, MixedStrategy, PayoffVector, PureProfile};
use crate::geometry::pure_set::pure_payoff_set;
use crate::geometry::sampling::{simplex_lattice, SampleCloud};
use crate::geometry::support::support_value;
use crate::numeric::quad::QuadScalar;
use crate::numeric::rational::{self, Rational};
use crate::numeric::simplex::{LinearProgram, LpOutcome};
use crate::numeric::Sign;

/// `w != v` and `w >= v` coordinatewise, exactly.
pub fn pareto_dominates(w: &PayoffVector, v: &PayoffVector) -> Result<bool> {
    if w.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            actual: w.dim(),
        });
    }
    let mut strict = false;
    for (a, b) in w.0.iter().zip(&v.0) {
        match a.checked_sub(b)?.sign() {
            Sign::Negative => return Ok(false),
            Sign::Positive => strict = true,
            Sign::Zero => {}
        }
    }
    Ok(strict)
}

/// Float dominance with a per-coordinate slack and a strict margin on one coordinate.
pub fn dominates_f64(w: &[f64], v: &[f64], slack: f64, margin: f64) -> bool {
    w.iter().zip(v).all(|(a, b)| *a >= b - slack) && w.iter().zip(v).any(|(a, b)| *a > b + margin)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frontier {
    pub members: Vec<PayoffVector>,
    /// Excluded points with a dominating frontier member.
    pub excluded: Vec<(PayoffVector, PayoffVector)>,
}

pub fn pareto_frontier_finite(points: &[PayoffVector]) -> Result<Frontier> {
    if points.is_empty() {
        return Err(Error::InvalidInput("frontier of an empty set".into()));
    }
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut members = Vec::new();
    let mut dominated = Vec::new();
    for p in &distinct {
        let mut hit = false;
        for q in &distinct {
            if pareto_dominates(q, p)? {
                hit = true;
                break;
            }
        }
        if hit {
            dominated.push(p.clone());
        } else {
            members.push(p.clone());
        }
    }
    let mut excluded = Vec::with_capacity(dominated.len());
    for p in dominated {
        let mut witness = None;
        for m in &members {
            if pareto_dominates(m, &p)? {
                witness = Some(m.clone());
                break;
            }
        }
        let witness = witness.expect("a finite poset has a maximal element above every point");
        excluded.push((p, witness));
    }
    Ok(Frontier { members, excluded })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Noncooperative,
    Cooperative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoConfig {
    /// Strict improvement required of a sampled dominator on some coordinate.
    pub margin: f64,
    /// Allowed shortfall of a sampled dominator on the other coordinates.
    pub slack: f64,
    /// Cloud profiles re-solved exactly as bases for unilateral LPs.
    pub top_k: usize,
    pub max_denominator: i64,
    /// Float evaluations allowed in the rational-grid search.
    pub grid_budget: usize,
}

impl Default for ParetoConfig {
    fn default() -> Self {
        ParetoConfig {
            margin: 1e-9,
            slack: 1e-12,
            top_k: 16,
            max_denominator: 64,
            grid_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DominatorSource {
    Pure(PureProfile),
    /// `player` plays `weights` against `base`; weights may be irrational.
    Unilateral {
        base: MixedProfile,
        player: usize,
        weights: Vec<QuadScalar>,
    },
    /// Correlated weights over the listed pure profiles.
    Correlated {
        profiles: Vec<PureProfile>,
        weights: Vec<QuadScalar>,
    },
    Sampled {
        index: usize,
        profile: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dominator {
    pub point: Vec<f64>,
    /// Present when the dominance was verified exactly.
    pub exact_point: Option<PayoffVector>,
    pub source: DominatorSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParetoVerdict {
    OnFrontierSampled,
    Dominated(Box<Dominator>),
}

impl ParetoVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ParetoVerdict::OnFrontierSampled => "ON_FRONTIER_SAMPLED",
            ParetoVerdict::Dominated(_) => "DOMINATED",
        }
    }

    pub fn is_dominated(&self) -> bool {
        matches!(self, ParetoVerdict::Dominated(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoReport {
    pub target: PayoffVector,
    pub region: RegionKind,
    pub verdict: ParetoVerdict,
}

/// Searches the region for a point dominating `v`.
pub fn pareto_membership_region(
    game: &Game,
    v: &PayoffVector,
    cloud: Option<&SampleCloud>,
    region: RegionKind,
    config: &ParetoConfig,
) -> Result<ParetoReport> {
    if v.dim() != game.num_players() {
        return Err(Error::DimensionMismatch {
            expected: game.num_players(),
            actual: v.dim(),
        });
    }
    let report = |verdict| ParetoReport {
        target: v.clone(),
        region,
        verdict,
    };
    for (idx, u) in game.payoff_table().iter().enumerate() {
        if pareto_dominates(u, v)? {
            return Ok(report(ParetoVerdict::Dominated(Box::new(Dominator {
                point: u.to_f64(),
                exact_point: Some(u.clone()),
                source: DominatorSource::Pure(game.profile_at(idx)),
            }))));
        }
    }
    let found = match region {
        RegionKind::Cooperative => cooperative_dominator(game, v)?,
        RegionKind::Noncooperative => noncooperative_dominator(game, v, cloud, config)?,
    };
    Ok(report(match found {
        Some(d) => ParetoVerdict::Dominated(Box::new(d)),
        None => ParetoVerdict::OnFrontierSampled,
    }))
}

/// Maximize total slack over `sum_t lambda_t w_t >= v`; positive optimum dominates.
fn slack_lp(points: &[PayoffVector], v: &PayoffVector) -> Result<Option<(Vec<QuadScalar>, PayoffVector)>> {
    let n = v.dim();
    let k = points.len();
    let mut rows = Vec::with_capacity(n + 1);
    for c in 0..n {
        let mut row: Vec<QuadScalar> = points.iter().map(|p| p.0[c].clone()).collect();
        row.extend((0..n).map(|s| if s == c { -QuadScalar::one() } else { QuadScalar::zero() }));
        rows.push(row);
    }
    let mut simplex_row = vec![QuadScalar::one(); k];
    simplex_row.extend(vec![QuadScalar::zero(); n]);
    rows.push(simplex_row);
    let mut rhs = v.0.clone();
    rhs.push(QuadScalar::one());
    let mut objective = vec![QuadScalar::zero(); k];
    objective.extend(vec![QuadScalar::one(); n]);
    match LinearProgram::maximize(rows, rhs, objective).solve()? {
        LpOutcome::Optimal { x, value } if value.sign() == Sign::Positive => {
            let lambda = x[..k].to_vec();
            let point = PayoffVector(
                (0..n)
                    .map(|c| {
                        points
                            .iter()
                            .zip(&lambda)
                            .fold(QuadScalar::zero(), |acc, (p, l)| acc + &p.0[c] * l)
                    })
                    .collect(),
            );
            Ok(Some((lambda, point)))
        }
        _ => Ok(None),
    }
}

fn cooperative_dominator(game: &Game, v: &PayoffVector) -> Result<Option<Dominator>> {
    let set = pure_payoff_set(game);
    let points: Vec<PayoffVector> = set.payoffs().cloned().collect();
    let Some((lambda, point)) = slack_lp(&points, v)? else {
        return Ok(None);
    };
    let (profiles, weights): (Vec<_>, Vec<_>) = set
        .points
        .iter()
        .zip(lambda)
        .filter(|(_, l)| !l.is_zero())
        .map(|(p, l)| (p.generators[0].clone(), l))
        .unzip();
    Ok(Some(Dominator {
        point: point.to_f64(),
        exact_point: Some(point),
        source: DominatorSource::Correlated { profiles, weights },
    }))
}

fn noncooperative_dominator(
    game: &Game,
    v: &PayoffVector,
    cloud: Option<&SampleCloud>,
    config: &ParetoConfig,
) -> Result<Option<Dominator>> {
    let target = v.to_f64();
    let mut bases: Vec<MixedProfile> = game
        .profiles()
        .map(|a| MixedProfile::pure(game.strategy_counts(), &a))
        .collect();
    bases.push(MixedProfile(
        game.strategy_counts().iter().map(|&m| MixedStrategy::uniform(m)).collect(),
    ));
    let mut ranked: Vec<(f64, usize)> = Vec::new();
    if let Some(cl) = cloud {
        ranked = cl
            .payoffs()
            .enumerate()
            .map(|(i, w)| {
                let worst = w.iter().zip(&target).map(|(a, b)| a - b).fold(f64::INFINITY, f64::min);
                (worst, i)
            })
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, i) in ranked.iter().take(config.top_k) {
            bases.push(cl.exact_profile(i)?);
        }
    }
    for base in &bases {
        for player in 0..game.num_players() {
            let dev = game.deviation_payoffs(base, player)?;
            if let Some((weights, point)) = slack_lp(&dev, v)? {
                return Ok(Some(Dominator {
                    point: point.to_f64(),
                    exact_point: Some(point),
                    source: DominatorSource::Unilateral {
                        base: base.clone(),
                        player,
                        weights,
                    },
                }));
            }
        }
    }
    let Some(cl) = cloud else {
        return Ok(None);
    };
    for &(_, i) in &ranked {
        let w = cl.payoff(i);
        if !dominates_f64(w, &target, config.slack, config.margin) {
            continue;
        }
        let exact = cl
            .exact_profile(i)
            .and_then(|p| game.evaluate_mixed(&p))
            .ok()
            .filter(|u| pareto_dominates(u, v).unwrap_or(false));
        return Ok(Some(Dominator {
            point: w.to_vec(),
            exact_point: exact,
            source: DominatorSource::Sampled {
                index: i,
                profile: cl.profile(i),
            },
        }));
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangentOrientation {
    /// `v1 > v1*`, `v2 < v2*`, horizontal tangent.
    Horizontal,
    /// `v1 < v1*`, `v2 > v2*`, vertical tangent.
    Vertical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentConfig {
    pub final_ratio: f64,
    pub min_tail: usize,
}

impl Default for TangentConfig {
    fn default() -> Self {
        TangentConfig {
            final_ratio: 1e-3,
            min_tail: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentReport {
    pub orientation: TangentOrientation,
    pub ratios: Vec<f64>,
    pub tail_length: usize,
    pub pareto: ParetoReport,
    /// The target is dominated, as the hypotheses predict.
    pub conclusion_holds: bool,
}

/// Checks the tangent-sequence hypotheses for payoffs of `sequence`
/// approaching `v_star`, then requires `v_star` to be dominated.
pub fn tangent_sequence_check(
    game: &Game,
    sequence: &[MixedProfile],
    v_star: &PayoffVector,
    cloud: Option<&SampleCloud>,
    config: &TangentConfig,
    pareto: &ParetoConfig,
) -> Result<TangentReport> {
    if game.num_players() != 2 {
        return Err(Error::UnsupportedArity {
            expected: 2,
            actual: game.num_players(),
        });
    }
    let points: Vec<PayoffVector> = sequence
        .iter()
        .map(|s| game.evaluate_mixed(s))
        .collect::<Result<_>>()?;
    let sign_of = |p: &PayoffVector, c: usize| p.0[c].checked_sub(&v_star.0[c]).map(|x| x.sign());
    let mut orientation = None;
    for (candidate, s1, s2) in [
        (TangentOrientation::Horizontal, Sign::Positive, Sign::Negative),
        (TangentOrientation::Vertical, Sign::Negative, Sign::Positive),
    ] {
        let mut all = !points.is_empty();
        for p in &points {
            all &= sign_of(p, 0)? == s1 && sign_of(p, 1)? == s2;
        }
        if all {
            orientation = Some(candidate);
        }
    }
    let Some(orientation) = orientation else {
        return Err(Error::HypothesesNotMet(
            "sequence does not approach the target from one strict quadrant".into(),
        ));
    };
    let star = v_star.to_f64();
    let ratios: Vec<f64> = points
        .iter()
        .map(|p| {
            let f = p.to_f64();
            let (d1, d2) = (f[0] - star[0], f[1] - star[1]);
            match orientation {
                TangentOrientation::Horizontal => d2 / d1,
                TangentOrientation::Vertical => d1 / d2,
            }
        })
        .collect();
    let mut tail = 1;
    for k in (1..ratios.len()).rev() {
        if ratios[k].abs() < ratios[k - 1].abs() {
            tail += 1;
        } else {
            break;
        }
    }
    if tail < config.min_tail {
        return Err(Error::HypothesesNotMet(format!(
            "ratio magnitudes decrease over a tail of {tail}, need {}",
            config.min_tail
        )));
    }
    let last = ratios.last().map(|r| r.abs()).unwrap_or(f64::INFINITY);
    if !(last < config.final_ratio) {
        return Err(Error::HypothesesNotMet(format!(
            "final ratio {last:e} is not below {:e}",
            config.final_ratio
        )));
    }
    let report = pareto_membership_region(game, v_star, cloud, RegionKind::Noncooperative, pareto)?;
    Ok(TangentReport {
        orientation,
        ratios,
        tail_length: tail,
        conclusion_holds: report.verdict.is_dominated(),
        pareto: report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum RationalFrontierVerdict {
    /// The target was not found dominated; nothing to check.
    Vacuous,
    FoundRationalDominator {
        profile: MixedProfile,
        payoff: PayoffVector,
        denominator: i64,
    },
    /// A dominated target with no small-denominator dominator: a violation candidate.
    RationalDominatorNotFound,
}

impl RationalFrontierVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            RationalFrontierVerdict::Vacuous => "VACUOUS",
            RationalFrontierVerdict::FoundRationalDominator { .. } => "FOUND_RATIONAL_DOMINATOR",
            RationalFrontierVerdict::RationalDominatorNotFound => "RATIONAL_DOMINATOR_NOT_FOUND",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFrontierReport {
    pub target: PayoffVector,
    pub pareto: ParetoReport,
    pub verdict: RationalFrontierVerdict,
}

/// If `u(sigma)` is dominated, looks for a dominator generated by a
/// rational profile with denominators up to the configured bound.
pub fn rational_frontier_check(
    game: &Game,
    sigma: &MixedProfile,
    cloud: Option<&SampleCloud>,
    config: &ParetoConfig,
) -> Result<RationalFrontierReport> {
    if game.num_players() != 2 {
        return Err(Error::UnsupportedArity {
            expected: 2,
            actual: game.num_players(),
        });
    }
    let v = game.evaluate_mixed(sigma)?;
    let pareto = pareto_membership_region(game, &v, cloud, RegionKind::Noncooperative, config)?;
    let verdict = if pareto.verdict.is_dominated() {
        rational_grid_dominator(game, &v, config)?
    } else {
        RationalFrontierVerdict::Vacuous
    };
    Ok(RationalFrontierReport {
        target: v,
        pareto,
        verdict,
    })
}

fn rational_grid_dominator(game: &Game, v: &PayoffVector, config: &ParetoConfig) -> Result<RationalFrontierVerdict> {
    let counts = game.strategy_counts();
    let target = v.to_f64();
    let mut spent = 0usize;
    let mut scratch = Vec::new();
    let mut out = vec![0.0; 2];
    for d in 1..=config.max_denominator {
        let l1 = simplex_lattice(counts[0], d as usize);
        let l2 = simplex_lattice(counts[1], d as usize);
        for p in &l1 {
            for q in &l2 {
                spent += 1;
                if spent > config.grid_budget {
                    return Ok(RationalFrontierVerdict::RationalDominatorNotFound);
                }
                let flat: Vec<f64> = p.iter().chain(q).copied().collect();
                game.eval_flat_f64(&flat, &mut scratch, &mut out);
                if !dominates_f64(&out, &target, 1e-9, -1e-9) {
                    continue;
                }
                let to_exact = |w: &[f64]| {
                    MixedStrategy::new(w.iter().map(|x| rational::ratio((x * d as f64).round() as i64, d)).collect())
                };
                let profile = MixedProfile(vec![to_exact(p)?, to_exact(q)?]);
                let payoff = game.evaluate_mixed(&profile)?;
                if pareto_dominates(&payoff, v)? {
                    return Ok(RationalFrontierVerdict::FoundRationalDominator {
                        profile,
                        payoff,
                        denominator: d,
                    });
                }
            }
        }
    }
    Ok(RationalFrontierVerdict::RationalDominatorNotFound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    U1Negative,
    U2Negative,
    U3BelowTarget,
    EqualToTarget,
}

impl FailedCondition {
    pub fn label(&self) -> &'static str {
        match self {
            FailedCondition::U1Negative => "u1<0",
            FailedCondition::U2Negative => "u2<0",
            FailedCondition::U3BelowTarget => "u3<-1",
            FailedCondition::EqualToTarget => "equal-to-target",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceAudit {
    pub weights: Vec<Rational>,
    pub payoff: PayoffVector,
    /// Mass on `(a11, a21, *)` and `(a12, a22, *)`.
    pub m11: Rational,
    pub m22: Rational,
    pub dominating: bool,
    pub failed: Option<FailedCondition>,
    pub trace: Vec<String>,
}

/// Audits whether a rational correlated strategy of the built-in
/// three-player game dominates `(0, 0, -1)`.
pub fn counterexample_audit(weights: &[QuadScalar]) -> Result<DominanceAudit> {
    let game = crate::fixtures::counterexample_3p();
    if weights.len() != game.num_profiles() {
        return Err(Error::InvalidInput(format!(
            "expected {} weights, got {}",
            game.num_profiles(),
            weights.len()
        )));
    }
    let rational: Option<Vec<Rational>> = weights.iter().map(|w| w.as_rational().cloned()).collect();
    let Some(rational) = rational else {
        return Err(Error::InvalidInput("the audit covers rational strategies only".into()));
    };
    let phi = CorrelatedStrategy::new(game.strategy_counts().to_vec(), rational.clone())
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let u = game.evaluate_correlated(&phi)?;
    let m11 = &rational[0] + &rational[1];
    let m22 = &rational[6] + &rational[7];

    let s2 = QuadScalar::sqrt(2)?;
    let q = |r: &Rational| QuadScalar::rational(r.clone());
    let two = QuadScalar::int(2);
    let formula = [
        &(&s2 * &q(&m11)) - &(&two * &q(&m22)),
        &(&s2 * &q(&m22)) - &q(&m11),
        &(&two * &q(&(&m11 + &m22))) - &QuadScalar::one(),
    ];
    if u.0 != formula {
        return Err(Error::InvalidInput("payoff does not match the closed form".into()));
    }
    let target = PayoffVector::from_i64(&[0, 0, -1]);
    let mut trace = vec![
        format!("m11 = {}, m22 = {}", rational::format_rational(&m11), rational::format_rational(&m22)),
        format!("u = {u}"),
    ];
    let failed = if u.0[0].sign() == Sign::Negative {
        trace.push(format!("u1 = {} < 0", u.0[0]));
        Some(FailedCondition::U1Negative)
    } else if u.0[1].sign() == Sign::Negative {
        trace.push(format!("u2 = {} < 0", u.0[1]));
        Some(FailedCondition::U2Negative)
    } else if (&u.0[2] + &QuadScalar::one()).sign() == Sign::Negative {
        trace.push(format!("u3 = {} < -1", u.0[2]));
        Some(FailedCondition::U3BelowTarget)
    } else {
        trace.push("u1 >= 0 gives sqrt(2)*m11 >= 2*m22".into());
        trace.push("u2 >= 0 gives sqrt(2)*m22 >= m11, so 2*m22 >= sqrt(2)*m11".into());
        trace.push("hence m11 = sqrt(2)*m22".into());
        if m11.is_zero() && m22.is_zero() {
            trace.push("m11 and m22 are rational, so m11 = m22 = 0".into());
        }
        if u == target {
            trace.push("u = (0, 0, -1), equal to the target".into());
            Some(FailedCondition::EqualToTarget)
        } else {
            None
        }
    };
    Ok(DominanceAudit {
        weights: rational,
        dominating: failed.is_none() && pareto_dominates(&u, &target)?,
        payoff: u,
        m11,
        m22,
        failed,
        trace,
    })
}

/// `strategy` is strictly better for `player` against every opposing profile.
pub fn strictly_dominant(game: &Game, player: usize, strategy: usize) -> bool {
    game.profiles().all(|a| {
        if a.0[player] == strategy {
            return true;
        }
        let mut b = a.clone();
        b.0[player] = strategy;
        let better = game.evaluate_pure(&b).expect("valid profile").0[player].clone();
        let worse = game.evaluate_pure(&a).expect("valid profile").0[player].clone();
        (&better - &worse).sign() == Sign::Positive
    })
}

/// The player's own choice never changes their payoff.
pub fn payoff_irrelevant(game: &Game, player: usize) -> bool {
    game.profiles().all(|a| {
        (0..game.strategy_counts()[player]).all(|k| {
            let mut b = a.clone();
            b.0[player] = k;
            game.evaluate_pure(&b).expect("valid profile").0[player]
                == game.evaluate_pure(&a).expect("valid profile").0[player]
        })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WelfareResult {
    pub weights: Vec<Rational>,
    pub value: QuadScalar,
    pub argmax: Vec<PureProfile>,
}

/// Maximum of `sum alpha_i v_i`, attained over `S_pu`.
pub fn welfare_max(game: &Game, alpha: &[Rational]) -> Result<WelfareResult> {
    if alpha.iter().all(Zero::is_zero) {
        return Err(Error::InvalidWeights(alpha.len()));
    }
    let s = support_value(game, alpha)?;
    Ok(WelfareResult {
        weights: alpha.to_vec(),
        value: s.value,
        argmax: s.argmax,
    })
}
