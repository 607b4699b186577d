//! Extreme points of the noncooperative region and mixability of payoffs.
//!
//! Only pure payoff points can be extreme, so classification runs over
//! `S_pu`. Hull vertices are certified exactly; other candidates are
//! refuted by a segment witness or reported as numerically extreme.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile, MixedStrategy, PayoffVector, PureProfile};
use crate::geometry::directions::unit_directions;
use crate::geometry::hull::hull_vertices_of;
use crate::geometry::local::{multistart, LocalConfig};
use crate::geometry::membership::{MembershipConfig, MembershipSolver, MembershipWitness};
use crate::geometry::pure_set::pure_payoff_set;
use crate::geometry::sampling::SampleCloud;
use crate::numeric::quad::QuadScalar;
use crate::numeric::rational::{self, Rational};
use crate::numeric::simplex::{lp_feasible, LinearProgram, LpOutcome};
use crate::numeric::SeparationCertificate;
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityConfig {
    pub directions: usize,
    pub r0: f64,
    pub halvings: usize,
    /// Interior samples checked per swept segment.
    pub interior_samples: usize,
    /// Interior points recorded on an exact unilateral witness.
    pub witness_points: usize,
    pub tol: f64,
    pub delta: f64,
    pub seed: u64,
    /// Smallest off-peak mass counted as non-degenerate in numeric searches.
    pub min_mix_mass: f64,
    pub membership: MembershipConfig,
}

impl Default for ExtremalityConfig {
    fn default() -> Self {
        ExtremalityConfig {
            directions: 720,
            r0: 1e-2,
            halvings: 5,
            interior_samples: 9,
            witness_points: 11,
            tol: 1e-9,
            delta: 1e-3,
            seed: 0,
            min_mix_mass: 1e-3,
            membership: MembershipConfig::default(),
        }
    }
}

/// One sampled point of a segment and its membership witness.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentPoint {
    /// Position along the segment, `0` at `endpoints[1]`, `1` at `endpoints[0]`.
    pub s: f64,
    pub witness: MembershipWitness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentWitness {
    pub endpoints: [Vec<f64>; 2],
    /// Exact endpoints when the segment was built from unilateral deviations.
    pub exact_endpoints: Option<[PayoffVector; 2]>,
    /// `v = theta * endpoints[0] + (1 - theta) * endpoints[1]`.
    pub theta: f64,
    pub exact_theta: Option<Rational>,
    pub points: Vec<SegmentPoint>,
}

impl SegmentWitness {
    /// Endpoint separation, convex-combination residual and per-point residuals.
    pub fn verify(&self, game: &Game, v: &[f64], tol: f64) -> bool {
        let [a, b] = &self.endpoints;
        let sep = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        if sep <= 1e-6 || !(self.theta > 0.0 && self.theta < 1.0) {
            return false;
        }
        let comb = a
            .iter()
            .zip(b)
            .zip(v)
            .fold(0.0f64, |m, ((x, y), z)| m.max((self.theta * x + (1.0 - self.theta) * y - z).abs()));
        if comb > 1e-9 {
            return false;
        }
        self.points.iter().all(|p| {
            let expected: Vec<f64> = a.iter().zip(b).map(|(x, y)| p.s * x + (1.0 - p.s) * y).collect();
            let close = expected
                .iter()
                .zip(&p.witness.target)
                .all(|(x, y)| (x - y).abs() <= 1e-9);
            close && p.witness.verify(game, tol)
        })
    }

    pub fn interior_count(&self) -> usize {
        self.points.iter().filter(|p| p.s > 0.0 && p.s < 1.0).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalityStatus {
    ExtremeCertified(SeparationCertificate),
    ExtremeNumeric { epsilon: f64, directions: usize },
    NotExtreme(Box<SegmentWitness>),
}

impl ExtremalityStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ExtremalityStatus::ExtremeCertified(_) => "EXTREME_CERTIFIED",
            ExtremalityStatus::ExtremeNumeric { .. } => "EXTREME_NUMERIC",
            ExtremalityStatus::NotExtreme(_) => "NOT_EXTREME",
        }
    }

    pub fn is_extreme(&self) -> bool {
        !matches!(self, ExtremalityStatus::NotExtreme(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub point: PayoffVector,
    pub generators: Vec<PureProfile>,
    pub status: ExtremalityStatus,
}

pub fn classify_extreme_points(game: &Game, config: &ExtremalityConfig) -> Result<Vec<Classification>> {
    let set = pure_payoff_set(game);
    let hull = hull_vertices_of(&set)?;
    let solver = MembershipSolver::new(game, membership_config(config))?;
    let statuses = par::map_range(set.len(), |i| -> Result<ExtremalityStatus> {
        let point = &set.points[i];
        if let Some(h) = hull.vertices.iter().find(|h| h.payoff == point.payoff) {
            return Ok(ExtremalityStatus::ExtremeCertified(h.certificate.clone()));
        }
        let preimages: Vec<MixedProfile> = point
            .generators
            .iter()
            .map(|a| MixedProfile::pure(game.strategy_counts(), a))
            .collect();
        Ok(match search_with(game, &solver, &point.payoff, &preimages, config)? {
            Some(w) => ExtremalityStatus::NotExtreme(Box::new(w)),
            None => ExtremalityStatus::ExtremeNumeric {
                epsilon: config.r0 * 0.5f64.powi(config.halvings as i32),
                directions: config.directions,
            },
        })
    });
    set.points
        .iter()
        .zip(statuses)
        .map(|(p, s)| {
            Ok(Classification {
                point: p.payoff.clone(),
                generators: p.generators.clone(),
                status: s?,
            })
        })
        .collect()
}

fn membership_config(config: &ExtremalityConfig) -> MembershipConfig {
    MembershipConfig {
        tol: config.tol,
        local: LocalConfig {
            seed: config.seed,
            ..config.membership.local.clone()
        },
        ..config.membership.clone()
    }
}

/// Segment through `v` inside `S_nc`. Preimages default to the pure
/// generators of `v`, or an exact membership witness when there are none.
pub fn segment_witness_search(
    game: &Game,
    v: &PayoffVector,
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let solver = MembershipSolver::new(game, membership_config(config))?;
    let mut preimages: Vec<MixedProfile> = pure_payoff_set(game)
        .find(v)
        .map(|p| {
            p.generators
                .iter()
                .map(|a| MixedProfile::pure(game.strategy_counts(), a))
                .collect()
        })
        .unwrap_or_default();
    if preimages.is_empty() {
        match solver.solve_exact(v)? {
            Some(w) => {
                if game.evaluate_mixed(&w.profile)? == *v {
                    preimages.push(w.profile);
                }
            }
            None => return Ok(None),
        }
    }
    search_with(game, &solver, v, &preimages, config)
}

/// Segment search through the exact payoff of a given profile.
pub fn segment_through_profile(
    game: &Game,
    profile: &MixedProfile,
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let v = game.evaluate_mixed(profile)?;
    let solver = MembershipSolver::new(game, membership_config(config))?;
    search_with(game, &solver, &v, std::slice::from_ref(profile), config)
}

fn search_with(
    game: &Game,
    solver: &MembershipSolver<'_>,
    v: &PayoffVector,
    preimages: &[MixedProfile],
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    for sigma in preimages {
        if let Some(w) = unilateral_segment(game, v, sigma, config)? {
            return Ok(Some(w));
        }
    }
    direction_sweep(game, solver, &v.to_f64(), config)
}

/// Rays `u(e_j, sigma_-i) - v` of one player, paired with an opposite ray in
/// the cone of some player's deviations.
fn unilateral_segment(
    game: &Game,
    v: &PayoffVector,
    sigma: &MixedProfile,
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let n = game.num_players();
    let deviations: Vec<Vec<PayoffVector>> = (0..n)
        .map(|i| game.deviation_payoffs(sigma, i))
        .collect::<Result<_>>()?;
    for i in 0..n {
        for (j, w) in deviations[i].iter().enumerate() {
            if w == v {
                continue;
            }
            let r = w.sub(v);
            for (k, dev_k) in deviations.iter().enumerate() {
                let rows: Vec<Vec<QuadScalar>> = (0..n)
                    .map(|c| dev_k.iter().map(|x| &x.0[c] - &v.0[c]).collect())
                    .collect();
                let rhs: Vec<QuadScalar> = r.0.iter().map(|x| -x.clone()).collect();
                let Some(mu) = lp_feasible(rows, rhs)? else {
                    continue;
                };
                let Some(mu) = mu.iter().map(|x| x.as_rational().cloned()).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let total: Rational = mu.iter().sum();
                if total.is_zero() {
                    continue;
                }
                let nu = MixedStrategy::new(mu.iter().map(|x| x / &total).collect())?;
                let theta = Rational::one() / (&total + Rational::one());
                let a_end = w.clone();
                let b_end = PayoffVector(
                    v.0.iter()
                        .zip(&r.0)
                        .map(|(x, y)| x - &y.scale(&(Rational::one() / &total)))
                        .collect(),
                );
                let dev = MixedStrategy::pure(game.strategy_counts()[i], j);
                return build_exact_segment(game, sigma, (i, dev), (k, nu), [a_end, b_end], theta, config)
                    .map(Some);
            }
        }
    }
    Ok(None)
}

fn build_exact_segment(
    game: &Game,
    sigma: &MixedProfile,
    (i, toward_a): (usize, MixedStrategy),
    (k, toward_b): (usize, MixedStrategy),
    ends: [PayoffVector; 2],
    theta: Rational,
    config: &ExtremalityConfig,
) -> Result<SegmentWitness> {
    let count = config.witness_points + 1;
    let mut params: Vec<Rational> = (0..=count)
        .map(|t| rational::ratio(t as i64, count as i64))
        .collect();
    params.push(theta.clone());
    params.sort();
    params.dedup();
    let mut points = Vec::with_capacity(params.len());
    for s in params {
        let profile = if s >= theta {
            let t = if theta.is_one() {
                Rational::zero()
            } else {
                (&s - &theta) / (Rational::one() - &theta)
            };
            sigma.with_player(i, toward_a.mix(&sigma.0[i], &t))
        } else {
            let tau = (&theta - &s) / &theta;
            sigma.with_player(k, toward_b.mix(&sigma.0[k], &tau))
        };
        let expected = PayoffVector(
            ends[0]
                .0
                .iter()
                .zip(&ends[1].0)
                .map(|(x, y)| &x.scale(&s) + &y.scale(&(Rational::one() - &s)))
                .collect(),
        );
        let actual = game.evaluate_mixed(&profile)?;
        if actual != expected {
            return Err(Error::InvalidInput("unilateral segment failed exact check".into()));
        }
        points.push(SegmentPoint {
            s: rational::to_f64(&s),
            witness: MembershipWitness {
                target: expected.to_f64(),
                profile,
                residual: 0.0,
                exact: true,
            },
        });
    }
    Ok(SegmentWitness {
        endpoints: [ends[0].to_f64(), ends[1].to_f64()],
        exact_endpoints: Some(ends),
        theta: rational::to_f64(&theta),
        exact_theta: Some(theta),
        points,
    })
}

fn direction_sweep(
    game: &Game,
    solver: &MembershipSolver<'_>,
    v: &[f64],
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let dirs = unit_directions(game.num_players(), config.directions, config.seed, true);
    for d in &dirs {
        let mut r = config.r0;
        for _ in 0..=config.halvings {
            if let Some(w) = try_segment(solver, v, d, r, config)? {
                return Ok(Some(w));
            }
            r *= 0.5;
        }
    }
    Ok(None)
}

fn try_segment(
    solver: &MembershipSolver<'_>,
    v: &[f64],
    d: &[f64],
    r: f64,
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let at = |t: f64| -> Vec<f64> { v.iter().zip(d).map(|(x, y)| x + t * y).collect() };
    let (a, b) = (at(r), at(-r));
    let Some(wa) = solver.solve(&a)? else {
        return Ok(None);
    };
    let Some(wb) = solver.solve(&b)? else {
        return Ok(None);
    };
    let mut points = vec![
        SegmentPoint { s: 1.0, witness: wa },
        SegmentPoint { s: 0.0, witness: wb },
    ];
    let k = config.interior_samples + 1;
    for step in 1..k {
        let s = step as f64 / k as f64;
        let target: Vec<f64> = a.iter().zip(&b).map(|(x, y)| s * x + (1.0 - s) * y).collect();
        match solver.solve(&target)? {
            Some(w) => points.push(SegmentPoint { s, witness: w }),
            None => return Ok(None),
        }
    }
    points.sort_by(|p, q| p.s.total_cmp(&q.s));
    Ok(Some(SegmentWitness {
        endpoints: [a, b],
        exact_endpoints: None,
        theta: 0.5,
        exact_theta: None,
        points,
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum MixabilityStatus {
    Mixable {
        witness: MixedProfile,
        /// Found by an exact unilateral solve; the payoff matches exactly.
        exact: bool,
        residual: f64,
    },
    NoWitnessFound {
        starts: usize,
        tol: f64,
        min_mix_mass: f64,
    },
}

impl MixabilityStatus {
    pub fn label(&self) -> &'static str {
        match self {
            MixabilityStatus::Mixable { .. } => "MIXABLE",
            MixabilityStatus::NoWitnessFound { .. } => "NO_WITNESS_FOUND",
        }
    }
}

fn off_peak_mass(profile: &[Vec<f64>]) -> f64 {
    profile
        .iter()
        .map(|s| 1.0 - s.iter().fold(0.0f64, |m, x| m.max(*x)))
        .fold(0.0, f64::max)
}

/// Searches for a non-degenerate profile with payoff `v`.
pub fn mixability(game: &Game, v: &PayoffVector, config: &ExtremalityConfig) -> Result<MixabilityStatus> {
    if v.dim() != game.num_players() {
        return Err(Error::DimensionMismatch {
            expected: game.num_players(),
            actual: v.dim(),
        });
    }
    let set = pure_payoff_set(game);
    if let Some(point) = set.find(v) {
        for a in &point.generators {
            for i in 0..game.num_players() {
                if let Some(w) = unilateral_mix(game, v, a, i)? {
                    return Ok(MixabilityStatus::Mixable {
                        witness: w,
                        exact: true,
                        residual: 0.0,
                    });
                }
            }
        }
    }
    let target = v.to_f64();
    let local = LocalConfig {
        seed: config.seed,
        ..config.membership.local.clone()
    };
    let min_mass = config.min_mix_mass;
    let (sol, _) = multistart(game, &target, config.tol, &local, &[], |s| {
        off_peak_mass(&s.profile) >= min_mass
    });
    if let Some(s) = sol {
        let witness = MixedProfile::from_f64(&s.profile)?;
        let u = game.evaluate_mixed(&witness)?.to_f64();
        let residual = u.iter().zip(&target).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        if residual <= config.tol && !witness.is_degenerate() {
            return Ok(MixabilityStatus::Mixable {
                witness,
                exact: false,
                residual,
            });
        }
    }
    Ok(MixabilityStatus::NoWitnessFound {
        starts: local.starts,
        tol: config.tol,
        min_mix_mass: min_mass,
    })
}

/// Player `i` alone re-mixes at the pure profile `a`, maximizing mass off `a_i`.
fn unilateral_mix(game: &Game, v: &PayoffVector, a: &PureProfile, i: usize) -> Result<Option<MixedProfile>> {
    let base = MixedProfile::pure(game.strategy_counts(), a);
    let dev = game.deviation_payoffs(&base, i)?;
    let m = dev.len();
    if m < 2 {
        return Ok(None);
    }
    let mut rows: Vec<Vec<QuadScalar>> = (0..game.num_players())
        .map(|c| dev.iter().map(|w| w.0[c].clone()).collect())
        .collect();
    rows.push(vec![QuadScalar::one(); m]);
    let mut rhs = v.0.clone();
    rhs.push(QuadScalar::one());
    let objective: Vec<QuadScalar> = (0..m)
        .map(|j| if j == a.0[i] { QuadScalar::zero() } else { QuadScalar::one() })
        .collect();
    let LpOutcome::Optimal { x, value } = LinearProgram::maximize(rows, rhs, objective).solve()? else {
        return Ok(None);
    };
    if value.is_zero() {
        return Ok(None);
    }
    let Some(y) = x.iter().map(|q| q.as_rational().cloned()).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let y = MixedStrategy::new(y)?;
    let y = match y.point_mass() {
        None => y,
        Some(k) => MixedStrategy::pure(m, a.0[i]).mix(&MixedStrategy::pure(m, k), &rational::ratio(1, 2)),
    };
    Ok(Some(base.with_player(i, y)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessConfig {
    /// Occupancy grid cells per axis.
    pub grid_cells: usize,
    pub max_probes: usize,
}

impl Default for FlatnessConfig {
    fn default() -> Self {
        FlatnessConfig {
            grid_cells: 48,
            max_probes: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessReport {
    pub probed: Vec<Vec<f64>>,
    /// Probed points with no flat segment found; expected empty.
    pub failures: Vec<Vec<f64>>,
    pub extreme_count: usize,
    pub pure_count: usize,
    pub finiteness_ok: bool,
}

/// Boundary-adjacent cloud points away from every extreme point must sit on
/// a flat segment of the region.
pub fn boundary_flatness_probe(
    game: &Game,
    cloud: &SampleCloud,
    classification: &[Classification],
    config: &ExtremalityConfig,
    flat: &FlatnessConfig,
) -> Result<FlatnessReport> {
    if game.num_players() != 2 {
        return Err(Error::PlanarOnly(game.num_players()));
    }
    let extremes: Vec<Vec<f64>> = classification
        .iter()
        .filter(|c| c.status.is_extreme())
        .map(|c| c.point.to_f64())
        .collect();
    let candidates = boundary_indices(cloud, flat.grid_cells);
    let far: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| {
            let p = cloud.payoff(i);
            extremes
                .iter()
                .all(|e| ((e[0] - p[0]).powi(2) + (e[1] - p[1]).powi(2)).sqrt() > config.delta)
        })
        .collect();
    let stride = (far.len() / flat.max_probes.max(1)).max(1);
    let picks: Vec<usize> = far.iter().step_by(stride).take(flat.max_probes).copied().collect();
    let results = par::map_slice(&picks, |&i| -> Result<bool> {
        let profile = cloud.exact_profile(i)?;
        Ok(segment_through_profile(game, &profile, config)?.is_some())
    });
    let mut probed = Vec::new();
    let mut failures = Vec::new();
    for (&i, ok) in picks.iter().zip(results) {
        let p = cloud.payoff(i).to_vec();
        if !ok? {
            failures.push(p.clone());
        }
        probed.push(p);
    }
    let pure_count = pure_payoff_set(game).len();
    Ok(FlatnessReport {
        probed,
        failures,
        extreme_count: extremes.len(),
        pure_count,
        finiteness_ok: extremes.len() <= pure_count,
    })
}

/// Flat-segment probe at one point, excluded when within `delta` of an extreme point.
pub fn probe_point(
    game: &Game,
    point: &PayoffVector,
    classification: &[Classification],
    config: &ExtremalityConfig,
) -> Result<Option<SegmentWitness>> {
    let p = point.to_f64();
    let near = classification.iter().filter(|c| c.status.is_extreme()).any(|c| {
        let e = c.point.to_f64();
        e.iter().zip(&p).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt() <= config.delta
    });
    if near {
        return Ok(None);
    }
    segment_witness_search(game, point, config)
}

fn boundary_indices(cloud: &SampleCloud, cells: usize) -> Vec<usize> {
    if cloud.is_empty() {
        return Vec::new();
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in cloud.payoffs() {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let cell_of = |p: &[f64]| -> [usize; 2] {
        let mut c = [0; 2];
        for k in 0..2 {
            let span = (hi[k] - lo[k]).max(1e-12);
            c[k] = (((p[k] - lo[k]) / span * cells as f64) as usize).min(cells - 1);
        }
        c
    };
    let mut occupied = vec![false; cells * cells];
    for p in cloud.payoffs() {
        let c = cell_of(p);
        occupied[c[0] * cells + c[1]] = true;
    }
    let boundary = |c: [usize; 2]| -> bool {
        for dx in -1i64..=1 {
            for dy in -1i64..=1 {
                let (x, y) = (c[0] as i64 + dx, c[1] as i64 + dy);
                if x < 0 || y < 0 || x >= cells as i64 || y >= cells as i64 {
                    return true;
                }
                if !occupied[x as usize * cells + y as usize] {
                    return true;
                }
            }
        }
        false
    };
    (0..cloud.len()).filter(|&i| boundary(cell_of(cloud.payoff(i)))).collect()
}
