//! Reproducible unit-direction sets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::numeric::rational::{ratio, Rational};

/// `count` unit directions in `R^n`: evenly spaced angles for `n = 2`
/// (over `[0, pi)` when `half`, else `[0, 2pi)`), a Fibonacci sphere for
/// `n = 3`, seeded normalized Gaussians beyond.
pub fn unit_directions(n: usize, count: usize, seed: u64, half: bool) -> Vec<Vec<f64>> {
    match n {
        0 => Vec::new(),
        1 => {
            if half {
                vec![vec![1.0]]
            } else {
                vec![vec![1.0], vec![-1.0]]
            }
        }
        2 => {
            let span = if half { std::f64::consts::PI } else { std::f64::consts::TAU };
            (0..count)
                .map(|k| {
                    let t = span * k as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * k as f64;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| loop {
                    let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        break v.into_iter().map(|x| x / norm).collect();
                    }
                })
                .collect()
        }
    }
}

/// Rounds a float direction to rationals with denominator `denom`; `None` if
/// every coordinate rounds to zero.
pub fn rational_direction(c: &[f64], denom: i64) -> Option<Vec<Rational>> {
    let out: Vec<Rational> = c
        .iter()
        .map(|x| ratio((x * denom as f64).round() as i64, denom))
        .collect();
    out.iter().any(|x| *x != ratio(0, 1)).then_some(out)
}
