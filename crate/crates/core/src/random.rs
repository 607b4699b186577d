//! Seeded generators for random games and rational strategies.

use num_traits::Zero;
use rand::Rng;

use crate::game::{CorrelatedStrategy, Game, MixedProfile, MixedStrategy, PayoffVector};
use crate::numeric::rational::{self, Rational};

/// Integer weights in `0..=max_weight`, normalized; never all zero.
pub fn random_weights<R: Rng>(rng: &mut R, len: usize, max_weight: i64) -> Vec<Rational> {
    let mut raw: Vec<i64> = (0..len).map(|_| rng.random_range(0..=max_weight)).collect();
    if raw.iter().all(|&w| w == 0) {
        raw[rng.random_range(0..len)] = 1;
    }
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| rational::ratio(w, total)).collect()
}

pub fn random_profile<R: Rng>(rng: &mut R, counts: &[usize], max_weight: i64) -> MixedProfile {
    MixedProfile(
        counts
            .iter()
            .map(|&m| MixedStrategy::new(random_weights(rng, m, max_weight)).expect("normalized weights"))
            .collect(),
    )
}

pub fn random_correlated<R: Rng>(rng: &mut R, counts: &[usize], max_weight: i64) -> CorrelatedStrategy {
    let total = counts.iter().product();
    CorrelatedStrategy::new(counts.to_vec(), random_weights(rng, total, max_weight)).expect("normalized weights")
}

/// Strictly positive weights with denominators up to `max_den`.
pub fn random_positive<R: Rng>(rng: &mut R, len: usize, max_den: i64) -> Vec<Rational> {
    (0..len)
        .map(|_| rational::ratio(rng.random_range(1..=4 * max_den), rng.random_range(1..=max_den)))
        .collect()
}

/// A game with `players` players, `2..=max_strategies` strategies each, and
/// payoffs `p/q` with `|p| <= 10`, `1 <= q <= 4`.
pub fn random_game<R: Rng>(rng: &mut R, players: usize, max_strategies: usize) -> Game {
    let counts: Vec<usize> = (0..players).map(|_| rng.random_range(2..=max_strategies)).collect();
    let total: usize = counts.iter().product();
    let payoffs = (0..total)
        .map(|_| {
            PayoffVector::from_rationals(
                &(0..players)
                    .map(|_| rational::ratio(rng.random_range(-10..=10), rng.random_range(1..=4)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Game::new(counts, payoffs, 2).expect("valid random game")
}

/// True when every weight is positive.
pub fn is_full_support(w: &[Rational]) -> bool {
    w.iter().all(|x| x > &Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        let g = random_game(&mut a, 3, 4);
        assert_eq!(g, random_game(&mut b, 3, 4));
        let p = random_profile(&mut a, g.strategy_counts(), 6);
        assert_eq!(p.shape(), g.strategy_counts());
        assert!(g.evaluate_mixed(&p).is_ok());
        assert!(is_full_support(&random_positive(&mut a, 5, 7)));
    }
}
