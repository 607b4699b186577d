//! Seeded float clouds of `S_nc`: a lattice over every player's simplex plus
//! Dirichlet rounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile};
use crate::par;

const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Lattice points per simplex edge; 2 gives only the pure corners.
    pub grid_resolution: usize,
    pub samples_per_round: usize,
    /// Round `r` draws from `Dirichlet(2^-r)`, pushing mass toward faces.
    pub refinement_rounds: usize,
    pub max_samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            grid_resolution: 11,
            samples_per_round: 4096,
            refinement_rounds: 3,
            max_samples: 2_000_000,
        }
    }
}

/// Float payoffs of sampled mixed profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleCloud {
    pub config: SampleConfig,
    strategy_counts: Vec<usize>,
    /// Concatenated per-player weights, stride `sum m_i`.
    profiles: Vec<f64>,
    /// Stride `n`.
    payoffs: Vec<f64>,
}

impl SampleCloud {
    pub fn empty(game: &Game, config: SampleConfig) -> Self {
        SampleCloud {
            config,
            strategy_counts: game.strategy_counts().to_vec(),
            profiles: Vec::new(),
            payoffs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn len(&self) -> usize {
        self.payoffs.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.payoffs.is_empty()
    }

    pub fn payoff(&self, i: usize) -> &[f64] {
        let n = self.dim();
        &self.payoffs[i * n..(i + 1) * n]
    }

    pub fn payoffs(&self) -> impl Iterator<Item = &[f64]> {
        self.payoffs.chunks(self.dim())
    }

    pub fn flat_profile(&self, i: usize) -> &[f64] {
        let stride: usize = self.strategy_counts.iter().sum();
        &self.profiles[i * stride..(i + 1) * stride]
    }

    pub fn profile(&self, i: usize) -> Vec<Vec<f64>> {
        split_profile(&self.strategy_counts, self.flat_profile(i))
    }

    /// The sampled profile as exact rationals.
    pub fn exact_profile(&self, i: usize) -> Result<MixedProfile> {
        MixedProfile::from_f64(&self.profile(i))
    }

    /// `(max c.v, index)` over the cloud.
    pub fn max_dot(&self, c: &[f64]) -> Option<(f64, usize)> {
        self.payoffs()
            .enumerate()
            .map(|(i, v)| (dot(c, v), i))
            .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn split_profile(counts: &[usize], flat: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(counts.len());
    let mut off = 0;
    for &m in counts {
        out.push(flat[off..off + m].to_vec());
        off += m;
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Lattice points of `Delta(m)` with denominator `steps`, lexicographic.
pub fn simplex_lattice(m: usize, steps: usize) -> Vec<Vec<f64>> {
    fn rec(m: usize, left: usize, steps: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == m - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&k| k as f64 / steps as f64).collect());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(m, left - k, steps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, steps, steps.max(1), &mut Vec::with_capacity(m), &mut out);
    out
}

pub fn sample_region(game: &Game, config: &SampleConfig) -> Result<SampleCloud> {
    if config.grid_resolution < 2 {
        return Err(Error::InvalidInput("grid resolution must be at least 2".into()));
    }
    let counts = game.strategy_counts();
    let steps = config.grid_resolution - 1;
    let grid_total = counts.iter().fold(1u128, |acc, &m| {
        acc.saturating_mul(binomial((steps + m - 1) as u128, (m - 1) as u128))
    });
    let random_total = (config.samples_per_round as u128) * (config.refinement_rounds as u128 + 1);
    let requested = grid_total.saturating_add(random_total);
    if requested > config.max_samples as u128 {
        return Err(Error::ResolutionOverflow {
            requested,
            cap: config.max_samples,
        });
    }
    let grid_total = grid_total as usize;
    let lattices: Vec<Vec<Vec<f64>>> = counts.iter().map(|&m| simplex_lattice(m, steps)).collect();
    let stride: usize = counts.iter().sum();
    let n = game.num_players();

    let mut cloud = SampleCloud::empty(game, config.clone());
    cloud.profiles.reserve(requested as usize * stride);
    cloud.payoffs.reserve(requested as usize * n);

    let grid_chunks = grid_total.div_ceil(CHUNK);
    let blocks = par::map_range(grid_chunks, |c| {
        let mut profiles = Vec::with_capacity(CHUNK * stride);
        let mut payoffs = vec![0.0; CHUNK.min(grid_total - c * CHUNK) * n];
        let mut scratch = Vec::new();
        for (k, out) in payoffs.chunks_mut(n).enumerate() {
            let start = profiles.len();
            let mut idx = c * CHUNK + k;
            let mut picks = vec![0; counts.len()];
            for (p, lat) in lattices.iter().enumerate().rev() {
                picks[p] = idx % lat.len();
                idx /= lat.len();
            }
            for (p, lat) in lattices.iter().enumerate() {
                profiles.extend_from_slice(&lat[picks[p]]);
            }
            game.eval_flat_f64(&profiles[start..], &mut scratch, out);
        }
        (profiles, payoffs)
    });
    for (p, u) in blocks {
        cloud.profiles.extend(p);
        cloud.payoffs.extend(u);
    }

    for round in 0..=config.refinement_rounds {
        let alpha = 0.5f64.powi(round as i32);
        let total = config.samples_per_round;
        let chunks = total.div_ceil(CHUNK);
        let blocks = par::map_range(chunks, |c| {
            let len = CHUNK.min(total - c * CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((round as u64) << 32) | c as u64);
            let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
            let mut profiles = Vec::with_capacity(len * stride);
            let mut payoffs = vec![0.0; len * n];
            let mut scratch = Vec::new();
            for out in payoffs.chunks_mut(n) {
                let start = profiles.len();
                for &m in counts {
                    dirichlet_into(&mut rng, &gamma, m, &mut profiles);
                }
                game.eval_flat_f64(&profiles[start..], &mut scratch, out);
            }
            (profiles, payoffs)
        });
        for (p, u) in blocks {
            cloud.profiles.extend(p);
            cloud.payoffs.extend(u);
        }
    }
    Ok(cloud)
}

fn dirichlet_into<R: Rng>(rng: &mut R, gamma: &Gamma<f64>, m: usize, out: &mut Vec<f64>) {
    let start = out.len();
    let mut total = 0.0;
    for _ in 0..m {
        let g: f64 = gamma.sample(rng);
        total += g;
        out.push(g);
    }
    if total > 0.0 && total.is_finite() {
        for w in &mut out[start..] {
            *w /= total;
        }
    } else {
        let k = rng.random_range(0..m);
        for (j, w) in out[start..].iter_mut().enumerate() {
            *w = if j == k { 1.0 } else { 0.0 };
        }
    }
}
