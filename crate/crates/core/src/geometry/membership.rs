//! Witnesses for `t in S_nc`: a mixed profile whose payoff is within `tol`.
//!
//! Two players: the player with fewer strategies is swept over a lattice of
//! its simplex, then by best-first simplex bisection with a Lipschitz bound
//! on `p -> dist(t, conv_j u(p, j))`. The opponent's mixture comes from the
//! nearest point of that planar hull, or from an exact LP for exact targets.
//! More players: seeded multistart damped Gauss-Newton.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile, MixedStrategy, PayoffVector};
use crate::numeric::quad::QuadScalar;
use crate::numeric::rational::{ratio, Rational};
use crate::numeric::separation::hull_coefficients;

use super::local::{multistart, LocalConfig};
use super::pure_set::pure_payoff_set;
use super::sampling::simplex_lattice;

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipConfig {
    pub tol: f64,
    /// Lattice points on the swept simplex (about this many).
    pub p_grid: usize,
    /// Maximum hull-distance evaluations during bisection.
    pub cell_budget: usize,
    pub local: LocalConfig,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            tol: 1e-9,
            p_grid: 2048,
            cell_budget: 4096,
            local: LocalConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipWitness {
    pub target: Vec<f64>,
    pub profile: MixedProfile,
    /// `|u(profile) - target|_inf`, from the exact payoff.
    pub residual: f64,
    /// The exact payoff equals an exact target.
    pub exact: bool,
}

impl MembershipWitness {
    fn from_profile(game: &Game, target: &[f64], profile: MixedProfile) -> Result<Self> {
        let u = game.evaluate_mixed(&profile)?.to_f64();
        let residual = inf_dist(&u, target);
        Ok(MembershipWitness {
            target: target.to_vec(),
            profile,
            residual,
            exact: false,
        })
    }

    /// Recomputes the residual from the exact payoff.
    pub fn verify(&self, game: &Game, tol: f64) -> bool {
        game.evaluate_mixed(&self.profile)
            .map(|u| inf_dist(&u.to_f64(), &self.target) <= tol)
            .unwrap_or(false)
    }
}

fn inf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Nearest point of `conv(points)` to `t` in the plane: `(distance, weights)`.
pub fn nearest_in_hull_2d(points: &[[f64; 2]], t: [f64; 2]) -> (f64, Vec<f64>) {
    let k = points.len();
    let mut best = (f64::INFINITY, vec![0.0; k]);
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let (pa, pb, pc) = (points[a], points[b], points[c]);
                let det = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pc[0] - pa[0]) * (pb[1] - pa[1]);
                if det.abs() < 1e-300 {
                    continue;
                }
                let l1 = ((pb[0] - t[0]) * (pc[1] - t[1]) - (pc[0] - t[0]) * (pb[1] - t[1])) / det;
                let l2 = ((pc[0] - t[0]) * (pa[1] - t[1]) - (pa[0] - t[0]) * (pc[1] - t[1])) / det;
                let l3 = 1.0 - l1 - l2;
                if l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0 {
                    let mut w = vec![0.0; k];
                    w[a] = l1;
                    w[b] = l2;
                    w[c] = l3;
                    return (0.0, w);
                }
            }
        }
    }
    for a in 0..k {
        let pa = points[a];
        let d = ((pa[0] - t[0]).powi(2) + (pa[1] - t[1]).powi(2)).sqrt();
        if d < best.0 {
            let mut w = vec![0.0; k];
            w[a] = 1.0;
            best = (d, w);
        }
        for b in a + 1..k {
            let pb = points[b];
            let (ex, ey) = (pb[0] - pa[0], pb[1] - pa[1]);
            let len2 = ex * ex + ey * ey;
            if len2 == 0.0 {
                continue;
            }
            let s = (((t[0] - pa[0]) * ex + (t[1] - pa[1]) * ey) / len2).clamp(0.0, 1.0);
            let (x, y) = (pa[0] + s * ex, pa[1] + s * ey);
            let d = ((x - t[0]).powi(2) + (y - t[1]).powi(2)).sqrt();
            if d < best.0 {
                let mut w = vec![0.0; k];
                w[a] = 1.0 - s;
                w[b] = s;
                best = (d, w);
            }
        }
    }
    best
}

struct Cell {
    vertices: Vec<Vec<f64>>,
    bound: f64,
    dist: f64,
    seq: usize,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    // min-heap on the lower bound, then on insertion order
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(other.seq.cmp(&self.seq))
    }
}

/// Reusable membership oracle for one game.
pub struct MembershipSolver<'g> {
    game: &'g Game,
    config: MembershipConfig,
    lo: Vec<f64>,
    hi: Vec<f64>,
    planar: Option<Planar>,
}

struct Planar {
    swept: usize,
    ms: usize,
    mo: usize,
    /// `u(i, j)` with the swept player on `i`, flattened `[i][j]`.
    table: Vec<[f64; 2]>,
    lipschitz: f64,
    lattice: Vec<Vec<f64>>,
    lattice_steps: usize,
}

impl Planar {
    fn new(game: &Game, p_grid: usize) -> Self {
        let counts = game.strategy_counts();
        let swept = if counts[1] < counts[0] { 1 } else { 0 };
        let (ms, mo) = (counts[swept], counts[1 - swept]);
        let f = game.float_table();
        let mut table = Vec::with_capacity(ms * mo);
        for i in 0..ms {
            for j in 0..mo {
                let idx = if swept == 0 { i * mo + j } else { j * ms + i };
                table.push([f[2 * idx], f[2 * idx + 1]]);
            }
        }
        let mut lipschitz: f64 = 0.0;
        for j in 0..mo {
            for a in 0..ms {
                for b in 0..ms {
                    let (x, y) = (table[a * mo + j], table[b * mo + j]);
                    lipschitz = lipschitz.max(((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt());
                }
            }
        }
        let mut steps = 1;
        if ms > 1 {
            while lattice_size(ms, steps + 1) <= p_grid as u128 + 1 {
                steps += 1;
            }
        }
        Planar {
            swept,
            ms,
            mo,
            table,
            lipschitz: 0.5 * lipschitz,
            lattice: simplex_lattice(ms, steps),
            lattice_steps: steps,
        }
    }

    fn columns(&self, p: &[f64], out: &mut Vec<[f64; 2]>) {
        out.clear();
        for j in 0..self.mo {
            let mut c = [0.0; 2];
            for (i, pi) in p.iter().enumerate() {
                let u = self.table[i * self.mo + j];
                c[0] += pi * u[0];
                c[1] += pi * u[1];
            }
            out.push(c);
        }
    }

    fn dist(&self, p: &[f64], t: [f64; 2], buf: &mut Vec<[f64; 2]>) -> (f64, Vec<f64>) {
        self.columns(p, buf);
        nearest_in_hull_2d(buf, t)
    }

    fn cell(&self, vertices: Vec<Vec<f64>>, t: [f64; 2], seq: usize, buf: &mut Vec<[f64; 2]>) -> Cell {
        let k = vertices.len() as f64;
        let center: Vec<f64> = (0..self.ms)
            .map(|i| vertices.iter().map(|v| v[i]).sum::<f64>() / k)
            .collect();
        let rad = vertices
            .iter()
            .map(|v| v.iter().zip(&center).map(|(a, b)| (a - b).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let dist = self.dist(&center, t, buf).0;
        Cell {
            vertices,
            bound: dist - self.lipschitz * rad,
            dist,
            seq,
        }
    }

    fn profile(&self, p: MixedStrategy, q: MixedStrategy) -> MixedProfile {
        if self.swept == 0 {
            MixedProfile(vec![p, q])
        } else {
            MixedProfile(vec![q, p])
        }
    }
}

fn lattice_size(m: usize, steps: usize) -> u128 {
    let (n, k) = ((steps + m - 1) as u128, (m - 1) as u128);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn center_of(vertices: &[Vec<f64>]) -> Vec<f64> {
    let k = vertices.len() as f64;
    (0..vertices[0].len())
        .map(|i| vertices.iter().map(|v| v[i]).sum::<f64>() / k)
        .collect()
}

impl<'g> MembershipSolver<'g> {
    pub fn new(game: &'g Game, config: MembershipConfig) -> Result<Self> {
        if !(config.tol > 0.0) || !config.tol.is_finite() {
            return Err(Error::InvalidTolerance(config.tol));
        }
        let (lo, hi) = pure_payoff_set(game).bounding_box();
        let planar = (game.num_players() == 2).then(|| Planar::new(game, config.p_grid));
        Ok(MembershipSolver {
            game,
            config,
            lo,
            hi,
            planar,
        })
    }

    pub fn config(&self) -> &MembershipConfig {
        &self.config
    }

    fn outside_box(&self, t: &[f64]) -> bool {
        let tol = self.config.tol;
        t.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .any(|(x, (l, h))| *x < l - tol || *x > h + tol)
    }

    fn check_target(&self, t: &[f64]) -> Result<()> {
        if t.len() != self.game.num_players() {
            return Err(Error::DimensionMismatch {
                expected: self.game.num_players(),
                actual: t.len(),
            });
        }
        Ok(())
    }

    /// Witness for a float target, or `None` at this resolution.
    pub fn solve(&self, target: &[f64]) -> Result<Option<MembershipWitness>> {
        self.check_target(target)?;
        if self.outside_box(target) {
            return Ok(None);
        }
        match &self.planar {
            Some(pl) => self.solve_planar(pl, target, None),
            None => self.solve_local(target),
        }
    }

    /// Like [`solve`](Self::solve), attempting an exact witness first.
    pub fn solve_exact(&self, target: &PayoffVector) -> Result<Option<MembershipWitness>> {
        let t = target.to_f64();
        self.check_target(&t)?;
        if self.outside_box(&t) {
            return Ok(None);
        }
        match &self.planar {
            Some(pl) => self.solve_planar(pl, &t, Some(target)),
            None => self.solve_local(&t),
        }
    }

    fn solve_local(&self, t: &[f64]) -> Result<Option<MembershipWitness>> {
        let (sol, _) = multistart(self.game, t, self.config.tol, &self.config.local, &[], |_| true);
        match sol {
            Some(s) => {
                let w = MembershipWitness::from_profile(
                    self.game,
                    t,
                    MixedProfile::from_f64(&s.profile)?,
                )?;
                Ok((w.residual <= self.config.tol).then_some(w))
            }
            None => Ok(None),
        }
    }

    /// Exact LP over the opponent's mixture with the swept mixture fixed.
    fn exact_opponent(&self, pl: &Planar, p: &MixedStrategy, target: &PayoffVector) -> Result<Option<MixedProfile>> {
        let counts = self.game.strategy_counts();
        let cols: Vec<Vec<QuadScalar>> = (0..pl.mo)
            .map(|j| {
                let probe = pl.profile(p.clone(), MixedStrategy::pure(pl.mo, j));
                self.game.evaluate_mixed(&probe).map(|u| u.0)
            })
            .collect::<Result<_>>()?;
        debug_assert_eq!(counts[1 - pl.swept], pl.mo);
        let Some(q) = hull_coefficients(&target.0, &cols)? else {
            return Ok(None);
        };
        let q: Option<Vec<Rational>> = q.iter().map(|x| x.as_rational().cloned()).collect();
        let Some(q) = q else {
            return Ok(None);
        };
        Ok(Some(pl.profile(p.clone(), MixedStrategy::new(q)?)))
    }

    fn finish(
        &self,
        pl: &Planar,
        t: &[f64],
        exact: Option<&PayoffVector>,
        p: MixedStrategy,
        q: &[f64],
    ) -> Result<Option<MembershipWitness>> {
        if let Some(target) = exact {
            if self.game.is_rational() && target.is_rational() {
                if let Some(profile) = self.exact_opponent(pl, &p, target)? {
                    return Ok(Some(MembershipWitness {
                        target: t.to_vec(),
                        profile,
                        residual: 0.0,
                        exact: true,
                    }));
                }
            }
        }
        let profile = pl.profile(p, MixedStrategy::from_f64(q)?);
        let w = MembershipWitness::from_profile(self.game, t, profile)?;
        Ok((w.residual <= self.config.tol).then_some(w))
    }

    fn solve_planar(
        &self,
        pl: &Planar,
        t: &[f64],
        exact: Option<&PayoffVector>,
    ) -> Result<Option<MembershipWitness>> {
        let tol = self.config.tol;
        let tt = [t[0], t[1]];
        let mut buf = Vec::with_capacity(pl.mo);
        let steps = pl.lattice_steps as i64;
        let mut exact_tries = 0;
        let mut fallback: Option<MembershipWitness> = None;
        for p in &pl.lattice {
            let (d, q) = pl.dist(p, tt, &mut buf);
            if d > tol * 0.5 {
                continue;
            }
            let weights: Vec<Rational> = p
                .iter()
                .map(|x| ratio((x * steps as f64).round() as i64, steps))
                .collect();
            let ps = MixedStrategy::new(weights)?;
            if exact.is_some() && exact_tries < 8 {
                exact_tries += 1;
                if let Some(w) = self.finish(pl, t, exact, ps, &q)? {
                    if w.exact {
                        return Ok(Some(w));
                    }
                    fallback.get_or_insert(w);
                }
                continue;
            }
            if let Some(w) = self.finish(pl, t, None, ps, &q)? {
                return Ok(Some(w));
            }
        }
        if fallback.is_some() {
            return Ok(fallback);
        }

        let root: Vec<Vec<f64>> = (0..pl.ms)
            .map(|i| (0..pl.ms).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
            .collect();
        let mut heap = BinaryHeap::new();
        let mut seq = 0;
        heap.push(pl.cell(root, tt, seq, &mut buf));
        let mut evaluations = 1;
        let mut best: Vec<(f64, Vec<f64>)> = Vec::new();
        while let Some(cell) = heap.pop() {
            if cell.bound > tol * 0.5 {
                return Ok(None);
            }
            let center = center_of(&cell.vertices);
            if cell.dist <= tol * 0.5 {
                let (_, q) = pl.dist(&center, tt, &mut buf);
                if let Some(w) = self.finish(pl, t, exact, MixedStrategy::from_f64(&center)?, &q)? {
                    return Ok(Some(w));
                }
            }
            best.push((cell.dist, center));
            if evaluations >= self.config.cell_budget || pl.ms < 2 {
                break;
            }
            let (mut ea, mut eb, mut len) = (0, 1, -1.0);
            for a in 0..cell.vertices.len() {
                for b in a + 1..cell.vertices.len() {
                    let l: f64 = cell.vertices[a]
                        .iter()
                        .zip(&cell.vertices[b])
                        .map(|(x, y)| (x - y).abs())
                        .sum();
                    if l > len {
                        (ea, eb, len) = (a, b, l);
                    }
                }
            }
            let mid: Vec<f64> = cell.vertices[ea]
                .iter()
                .zip(&cell.vertices[eb])
                .map(|(x, y)| 0.5 * (x + y))
                .collect();
            for replace in [ea, eb] {
                let mut vs = cell.vertices.clone();
                vs[replace] = mid.clone();
                seq += 1;
                evaluations += 1;
                let child = pl.cell(vs, tt, seq, &mut buf);
                if child.bound <= tol * 0.5 {
                    heap.push(child);
                }
            }
        }
        // budget exhausted: polish the closest centers locally
        best.sort_by(|a, b| a.0.total_cmp(&b.0));
        let starts: Vec<Vec<Vec<f64>>> = best
            .iter()
            .take(4)
            .map(|(_, p)| {
                let (_, q) = pl.dist(p, tt, &mut buf);
                if pl.swept == 0 {
                    vec![p.clone(), q]
                } else {
                    vec![q, p.clone()]
                }
            })
            .collect();
        let cfg = LocalConfig {
            starts: 0,
            ..self.config.local.clone()
        };
        let (sol, _) = multistart(self.game, t, tol * 0.5, &cfg, &starts, |_| true);
        match sol {
            Some(s) => {
                let w = MembershipWitness::from_profile(self.game, t, MixedProfile::from_f64(&s.profile)?)?;
                Ok((w.residual <= tol).then_some(w))
            }
            None => Ok(None),
        }
    }
}

pub fn membership(game: &Game, target: &[f64], config: &MembershipConfig) -> Result<Option<MembershipWitness>> {
    MembershipSolver::new(game, config.clone())?.solve(target)
}

pub fn membership_exact(
    game: &Game,
    target: &PayoffVector,
    config: &MembershipConfig,
) -> Result<Option<MembershipWitness>> {
    MembershipSolver::new(game, config.clone())?.solve_exact(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg() -> MembershipConfig {
        MembershipConfig::default()
    }

    #[test]
    fn exact_witnesses_on_fixtures() {
        let g = fixtures::example4();
        let w = membership_exact(&g, &PayoffVector::from_i64(&[2, 2]), &cfg())
            .unwrap()
            .unwrap();
        assert!(w.exact && w.residual == 0.0);
        assert_eq!(g.evaluate_mixed(&w.profile).unwrap(), PayoffVector::from_i64(&[2, 2]));

        let g = fixtures::example2();
        let w = membership_exact(&g, &PayoffVector::from_i64(&[0, 1]), &cfg())
            .unwrap()
            .unwrap();
        assert!(w.exact);
        assert_eq!(w.profile.0[0], MixedStrategy::pure(2, 0));
        assert_eq!(g.evaluate_mixed(&w.profile).unwrap(), PayoffVector::from_i64(&[0, 1]));
    }

    #[test]
    fn outside_box_and_bad_tol() {
        let g = fixtures::example1();
        assert!(membership(&g, &[9.0, 9.0], &cfg()).unwrap().is_none());
        let bad = MembershipConfig { tol: 0.0, ..cfg() };
        assert!(matches!(
            membership(&g, &[1.0, 1.0], &bad),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn float_targets_in_and_out() {
        let g = fixtures::example4();
        let w = membership(&g, &[1.2345, 1.2345], &cfg()).unwrap().unwrap();
        assert!(w.verify(&g, 1e-9));
        // just beyond the corner of the mixed region
        assert!(membership(&g, &[4.001, 4.001], &cfg()).unwrap().is_none());
        let g = fixtures::example1();
        let t = g.payoff_f64(&[vec![0.3, 0.7], vec![0.8, 0.2]]);
        assert!(membership(&g, &t, &cfg()).unwrap().unwrap().verify(&g, 1e-9));
    }

    #[test]
    fn three_players_use_local_search() {
        let g = fixtures::counterexample_3p();
        let t = g.payoff_f64(&[vec![0.5, 0.5], vec![0.25, 0.75], vec![1.0, 0.0]]);
        let w = membership(&g, &t, &cfg()).unwrap().unwrap();
        assert!(w.verify(&g, 1e-9));
    }

    #[test]
    fn hull_nearest_point() {
        let pts = [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]];
        assert_eq!(nearest_in_hull_2d(&pts, [0.5, 0.5]).0, 0.0);
        let (d, w) = nearest_in_hull_2d(&pts, [2.0, 2.0]);
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        assert!((w[1] - 0.5).abs() < 1e-12 && (w[2] - 0.5).abs() < 1e-12);
    }
}
