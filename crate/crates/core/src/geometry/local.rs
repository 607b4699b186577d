//! Damped Gauss-Newton on `|u(sigma) - t|^2` over a product of simplices.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::game::Game;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalConfig {
    pub starts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for LocalConfig {
    fn default() -> Self {
        LocalConfig {
            starts: 48,
            max_iters: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSolution {
    pub profile: Vec<Vec<f64>>,
    /// `|u(profile) - target|_inf`.
    pub residual: f64,
}

/// Euclidean projection onto the probability simplex.
pub fn project_simplex(v: &mut [f64]) {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, x) in s.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}

fn residual(game: &Game, flat: &[f64], target: &[f64], scratch: &mut Vec<f64>) -> Vec<f64> {
    let mut out = vec![0.0; target.len()];
    game.eval_flat_f64(flat, scratch, &mut out);
    out.iter_mut().zip(target).for_each(|(u, t)| *u -= t);
    out
}

fn sq(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

fn inf(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// One local descent from `start`.
pub fn descend(game: &Game, target: &[f64], start: &[Vec<f64>], max_iters: usize, tol: f64) -> LocalSolution {
    let counts = game.strategy_counts();
    let n = game.num_players();
    let dim: usize = counts.iter().sum();
    let mut x: Vec<f64> = start.iter().flatten().copied().collect();
    let mut scratch = Vec::new();
    let mut r = residual(game, &x, target, &mut scratch);
    let mut mu = 1e-3;
    let mut jac = DMatrix::<f64>::zeros(n, dim);
    let mut probe = x.clone();
    let mut col = vec![0.0; n];
    for _ in 0..max_iters {
        if inf(&r) <= tol {
            break;
        }
        // multilinearity: the partial in x_{i,j} is the deviation payoff u(j, sigma_-i)
        let mut off = 0;
        for &m in counts {
            probe.copy_from_slice(&x);
            for j in 0..m {
                for k in 0..m {
                    probe[off + k] = if k == j { 1.0 } else { 0.0 };
                }
                game.eval_flat_f64(&probe, &mut scratch, &mut col);
                for (c, v) in col.iter().enumerate() {
                    jac[(c, off + j)] = *v;
                }
            }
            off += m;
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * DVector::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..12 {
            let a = &jtj + DMatrix::<f64>::identity(dim, dim) * mu;
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                mu *= 10.0;
                continue;
            };
            let mut cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let mut off = 0;
            for &m in counts {
                project_simplex(&mut cand[off..off + m]);
                off += m;
            }
            let rc = residual(game, &cand, target, &mut scratch);
            if sq(&rc) < sq(&r) {
                x = cand;
                r = rc;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let mut profile = Vec::with_capacity(counts.len());
    let mut off = 0;
    for &m in counts {
        profile.push(x[off..off + m].to_vec());
        off += m;
    }
    LocalSolution {
        residual: inf(&r),
        profile,
    }
}

/// Seeded Dirichlet(1) starting profiles.
pub fn random_starts(game: &Game, count: usize, seed: u64) -> Vec<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = Gamma::new(1.0, 1.0).expect("positive shape");
    (0..count)
        .map(|_| {
            game.strategy_counts()
                .iter()
                .map(|&m| {
                    let w: Vec<f64> = (0..m).map(|_| gamma.sample(&mut rng)).collect();
                    let s: f64 = w.iter().sum();
                    w.into_iter().map(|x| x / s).collect()
                })
                .collect()
        })
        .collect()
}

/// First descent (seeded starts after `extra`) whose result satisfies
/// `accept` with residual at most `tol`; otherwise the best residual seen.
pub fn multistart<F>(
    game: &Game,
    target: &[f64],
    tol: f64,
    config: &LocalConfig,
    extra: &[Vec<Vec<f64>>],
    accept: F,
) -> (Option<LocalSolution>, f64)
where
    F: Fn(&LocalSolution) -> bool,
{
    let mut best = f64::INFINITY;
    let starts = random_starts(game, config.starts, config.seed);
    for start in extra.iter().chain(&starts) {
        let sol = descend(game, target, start, config.max_iters, tol * 0.01);
        if sol.residual <= tol && accept(&sol) {
            let r = sol.residual;
            return (Some(sol), r);
        }
        best = best.min(sol.residual);
    }
    (None, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn projection_lands_on_simplex() {
        let mut v = [0.7, 0.8, -0.2];
        project_simplex(&mut v);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(v.iter().all(|x| *x >= 0.0));
        let mut w = [0.25, 0.75];
        project_simplex(&mut w);
        assert_eq!(w, [0.25, 0.75]);
    }

    #[test]
    fn finds_interior_target() {
        let g = fixtures::counterexample_3p();
        let t = g.payoff_f64(&[vec![0.3, 0.7], vec![0.6, 0.4], vec![0.5, 0.5]]);
        let (sol, _) = multistart(&g, &t, 1e-10, &LocalConfig::default(), &[], |_| true);
        let sol = sol.expect("target is attainable");
        let u = g.payoff_f64(&sol.profile);
        for (a, b) in u.iter().zip(&t) {
            assert!((a - b).abs() <= 1e-10);
        }
    }
}
