//! Finite strategic games and payoff evaluation under pure, mixed and
//! correlated play.
//!
//! Profiles are flattened row-major: player 1 varies slowest, the last
//! player fastest, matching how payoff tables are read.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::quad::{is_squarefree, QuadScalar, DEFAULT_DISCRIMINANT};
use crate::numeric::rational::{self, Rational};

/// A point of `R^n` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PayoffVector(pub Vec<QuadScalar>);

impl PayoffVector {
    pub fn from_i64(v: &[i64]) -> Self {
        PayoffVector(v.iter().map(|&x| QuadScalar::int(x)).collect())
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        PayoffVector(v.iter().cloned().map(QuadScalar::rational).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[QuadScalar] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(QuadScalar::to_f64).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(QuadScalar::is_rational)
    }

    pub fn dot(&self, c: &[Rational]) -> QuadScalar {
        self.0
            .iter()
            .zip(c)
            .fold(QuadScalar::zero(), |acc, (x, ci)| acc + x.scale(ci))
    }

    pub fn sub(&self, other: &PayoffVector) -> PayoffVector {
        PayoffVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn zero(n: usize) -> Self {
        PayoffVector(vec![QuadScalar::zero(); n])
    }

    fn add_scaled(&mut self, other: &PayoffVector, w: &Rational) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x = &*x + &y.scale(w);
        }
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// One pure strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile(pub Vec<usize>);

impl PureProfile {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "a{}{}", i + 1, r + 1)?;
        }
        f.write_str(")")
    }
}

/// A probability vector over one player's pure strategies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty mixed strategy".into()));
        }
        if weights.iter().any(|w| *w < Rational::zero()) {
            return Err(Error::InvalidDistribution("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(MixedStrategy { weights })
    }

    pub fn pure(count: usize, index: usize) -> Self {
        let mut weights = vec![Rational::zero(); count];
        weights[index] = Rational::one();
        MixedStrategy { weights }
    }

    pub fn uniform(count: usize) -> Self {
        let w = rational::ratio(1, count as i64);
        MixedStrategy {
            weights: vec![w; count],
        }
    }

    /// Exact rationals nearest to float weights; the last positive entry absorbs
    /// the rounding so the sum is exactly one.
    pub fn from_f64(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "float weights must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("float weights sum to zero".into()));
        }
        let mut exact: Vec<Rational> = weights
            .iter()
            .map(|&w| rational::from_f64(w / total))
            .collect();
        let pivot = (0..weights.len())
            .max_by(|&a, &b| weights[a].total_cmp(&weights[b]))
            .expect("nonempty");
        let rest: Rational = exact
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, w)| w.clone())
            .sum();
        exact[pivot] = Rational::one() - rest;
        MixedStrategy::new(exact)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The index carrying all mass, if this is a point mass.
    pub fn point_mass(&self) -> Option<usize> {
        self.weights.iter().position(One::is_one)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational::to_f64).collect()
    }

    /// `t * self + (1 - t) * other`.
    pub fn mix(&self, other: &MixedStrategy, t: &Rational) -> MixedStrategy {
        let s = Rational::one() - t;
        MixedStrategy {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a * t + b * &s)
                .collect(),
        }
    }
}

/// Independent mixed strategies, one per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedProfile(pub Vec<MixedStrategy>);

impl MixedProfile {
    pub fn new(strategies: Vec<MixedStrategy>) -> Self {
        MixedProfile(strategies)
    }

    pub fn pure(shape: &[usize], profile: &PureProfile) -> Self {
        MixedProfile(
            shape
                .iter()
                .zip(&profile.0)
                .map(|(&m, &r)| MixedStrategy::pure(m, r))
                .collect(),
        )
    }

    pub fn from_f64(weights: &[Vec<f64>]) -> Result<Self> {
        weights
            .iter()
            .map(|w| MixedStrategy::from_f64(w))
            .collect::<Result<Vec<_>>>()
            .map(MixedProfile)
    }

    pub fn strategies(&self) -> &[MixedStrategy] {
        &self.0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.0.iter().map(MixedStrategy::len).collect()
    }

    /// The pure profile this is a point mass at, if degenerate.
    pub fn as_pure(&self) -> Option<PureProfile> {
        self.0
            .iter()
            .map(MixedStrategy::point_mass)
            .collect::<Option<Vec<_>>>()
            .map(PureProfile)
    }

    pub fn is_degenerate(&self) -> bool {
        self.as_pure().is_some()
    }

    pub fn with_player(&self, player: usize, strategy: MixedStrategy) -> MixedProfile {
        let mut out = self.clone();
        out.0[player] = strategy;
        out
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.0.iter().map(MixedStrategy::to_f64).collect()
    }
}

/// A joint distribution over pure profiles, stored in flat profile order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorrelatedStrategy {
    shape: Vec<usize>,
    weights: Vec<Rational>,
}

impl CorrelatedStrategy {
    pub fn new(shape: Vec<usize>, weights: Vec<Rational>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if shape.is_empty() || shape.contains(&0) || weights.len() != expected {
            return Err(Error::InvalidDistribution(format!(
                "expected {expected} weights for shape {shape:?}, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w < Rational::zero()) {
            return Err(Error::InvalidDistribution("negative weight".into()));
        }
        if !weights.iter().sum::<Rational>().is_one() {
            return Err(Error::InvalidDistribution("weights do not sum to 1".into()));
        }
        Ok(CorrelatedStrategy { shape, weights })
    }

    pub fn point_mass(shape: Vec<usize>, profile: &PureProfile) -> Result<Self> {
        let idx = flat_index(&shape, profile)?;
        let mut weights = vec![Rational::zero(); shape.iter().product()];
        weights[idx] = Rational::one();
        CorrelatedStrategy::new(shape, weights)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, profile: &PureProfile) -> Result<&Rational> {
        Ok(&self.weights[flat_index(&self.shape, profile)?])
    }

    /// Per-player marginal distributions.
    pub fn marginals(&self) -> MixedProfile {
        let mut out: Vec<Vec<Rational>> =
            self.shape.iter().map(|&m| vec![Rational::zero(); m]).collect();
        for (idx, w) in self.weights.iter().enumerate() {
            let p = profile_at(&self.shape, idx);
            for (player, &r) in p.0.iter().enumerate() {
                out[player][r] += w;
            }
        }
        MixedProfile(
            out.into_iter()
                .map(|weights| MixedStrategy { weights })
                .collect(),
        )
    }
}

pub fn flat_index(shape: &[usize], profile: &PureProfile) -> Result<usize> {
    if profile.0.len() != shape.len() {
        return Err(Error::InvalidProfile(format!(
            "profile has {} entries, game has {} players",
            profile.0.len(),
            shape.len()
        )));
    }
    let mut idx = 0usize;
    for (player, (&r, &m)) in profile.0.iter().zip(shape).enumerate() {
        if r >= m {
            return Err(Error::InvalidProfile(format!(
                "player {} index {r} out of range 0..{m}",
                player + 1
            )));
        }
        idx = idx * m + r;
    }
    Ok(idx)
}

pub fn profile_at(shape: &[usize], mut idx: usize) -> PureProfile {
    let mut out = vec![0; shape.len()];
    for (slot, &m) in out.iter_mut().zip(shape).rev() {
        *slot = idx % m;
        idx /= m;
    }
    PureProfile(out)
}

/// `phi(a) = prod_i sigma_i(a_i)`.
pub fn induced_correlated(profile: &MixedProfile) -> CorrelatedStrategy {
    let shape = profile.shape();
    let total: usize = shape.iter().product();
    let weights = (0..total)
        .map(|idx| {
            let p = profile_at(&shape, idx);
            p.0.iter()
                .zip(&profile.0)
                .fold(Rational::one(), |acc, (&r, s)| acc * &s.weights[r])
        })
        .collect();
    CorrelatedStrategy { shape, weights }
}

/// Inverse of [`induced_correlated`] on product distributions.
pub fn recover_mixed(phi: &CorrelatedStrategy) -> Result<MixedProfile> {
    let sigma = phi.marginals();
    if induced_correlated(&sigma) == *phi {
        Ok(sigma)
    } else {
        Err(Error::NotProduct)
    }
}

/// A finite strategic game with jointly stored payoff vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    strategy_counts: Vec<usize>,
    payoffs: Vec<PayoffVector>,
    discriminant: u32,
    names: Vec<Vec<String>>,
    float_payoffs: Vec<f64>,
}

impl Game {
    pub fn new(
        strategy_counts: Vec<usize>,
        payoffs: Vec<PayoffVector>,
        discriminant: u32,
    ) -> Result<Self> {
        let names = default_names(&strategy_counts);
        Game::with_names(strategy_counts, payoffs, discriminant, names)
    }

    pub fn with_names(
        strategy_counts: Vec<usize>,
        payoffs: Vec<PayoffVector>,
        discriminant: u32,
        names: Vec<Vec<String>>,
    ) -> Result<Self> {
        let n = strategy_counts.len();
        if n == 0 {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        if strategy_counts.contains(&0) {
            return Err(Error::InvalidGame("every player needs a strategy".into()));
        }
        if !is_squarefree(discriminant) {
            return Err(Error::InvalidGame(format!(
                "discriminant {discriminant} is not squarefree >= 2"
            )));
        }
        let total = strategy_counts
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidGame("profile space too large".into()))?;
        if payoffs.len() != total {
            return Err(Error::InvalidGame(format!(
                "expected {total} payoff vectors, got {}",
                payoffs.len()
            )));
        }
        for (idx, v) in payoffs.iter().enumerate() {
            if v.dim() != n {
                return Err(Error::InvalidGame(format!(
                    "payoff vector {idx} has length {}, expected {n}",
                    v.dim()
                )));
            }
            if let Some(x) = v.0.iter().find(|x| !x.is_rational() && x.d() != discriminant) {
                return Err(Error::FieldMismatch(discriminant, x.d()));
            }
        }
        if names.len() != n || names.iter().zip(&strategy_counts).any(|(s, &m)| s.len() != m) {
            return Err(Error::InvalidGame("strategy names do not match counts".into()));
        }
        let float_payoffs = payoffs.iter().flat_map(PayoffVector::to_f64).collect();
        Ok(Game {
            strategy_counts,
            payoffs,
            discriminant,
            names,
            float_payoffs,
        })
    }

    /// Convenience constructor from integer payoffs in flat profile order.
    pub fn from_i64(strategy_counts: Vec<usize>, payoffs: &[&[i64]]) -> Result<Self> {
        Game::new(
            strategy_counts,
            payoffs.iter().map(|v| PayoffVector::from_i64(v)).collect(),
            DEFAULT_DISCRIMINANT,
        )
    }

    pub fn num_players(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs.len()
    }

    pub fn discriminant(&self) -> u32 {
        self.discriminant
    }

    pub fn strategy_names(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn is_rational(&self) -> bool {
        self.payoffs.iter().all(PayoffVector::is_rational)
    }

    pub fn payoff_table(&self) -> &[PayoffVector] {
        &self.payoffs
    }

    pub fn float_table(&self) -> &[f64] {
        &self.float_payoffs
    }

    pub fn profile_at(&self, idx: usize) -> PureProfile {
        profile_at(&self.strategy_counts, idx)
    }

    pub fn profiles(&self) -> impl Iterator<Item = PureProfile> + '_ {
        (0..self.num_profiles()).map(|i| self.profile_at(i))
    }

    pub fn evaluate_pure(&self, profile: &PureProfile) -> Result<&PayoffVector> {
        Ok(&self.payoffs[flat_index(&self.strategy_counts, profile)?])
    }

    fn check_mixed(&self, profile: &MixedProfile) -> Result<()> {
        if profile.shape() != self.strategy_counts {
            return Err(Error::InvalidDistribution(format!(
                "profile shape {:?} does not match game {:?}",
                profile.shape(),
                self.strategy_counts
            )));
        }
        Ok(())
    }

    /// `sum_a phi(a) u(a)`.
    pub fn evaluate_correlated(&self, phi: &CorrelatedStrategy) -> Result<PayoffVector> {
        if phi.shape != self.strategy_counts {
            return Err(Error::InvalidDistribution(format!(
                "distribution shape {:?} does not match game {:?}",
                phi.shape, self.strategy_counts
            )));
        }
        let mut acc = PayoffVector::zero(self.num_players());
        for (w, u) in phi.weights.iter().zip(&self.payoffs) {
            if !w.is_zero() {
                acc.add_scaled(u, w);
            }
        }
        Ok(acc)
    }

    /// Multilinear expectation, contracting one player at a time.
    pub fn evaluate_mixed(&self, profile: &MixedProfile) -> Result<PayoffVector> {
        self.check_mixed(profile)?;
        let n = self.num_players();
        let mut cur: Vec<PayoffVector> = self.payoffs.clone();
        for (player, &m) in self.strategy_counts.iter().enumerate().rev() {
            let w = &profile.0[player].weights;
            cur = cur
                .chunks(m)
                .map(|block| {
                    let mut acc = PayoffVector::zero(n);
                    for (u, wj) in block.iter().zip(w) {
                        if !wj.is_zero() {
                            acc.add_scaled(u, wj);
                        }
                    }
                    acc
                })
                .collect();
        }
        Ok(cur.pop().expect("contraction leaves one vector"))
    }

    /// `u(j, sigma_{-i})` for every pure strategy `j` of `player`.
    pub fn deviation_payoffs(
        &self,
        profile: &MixedProfile,
        player: usize,
    ) -> Result<Vec<PayoffVector>> {
        self.check_mixed(profile)?;
        (0..self.strategy_counts[player])
            .map(|j| {
                let dev = profile.with_player(
                    player,
                    MixedStrategy::pure(self.strategy_counts[player], j),
                );
                self.evaluate_mixed(&dev)
            })
            .collect()
    }

    /// Float multilinear evaluation; `weights` concatenates every player's
    /// mixed strategy. `scratch` is resized as needed.
    pub fn eval_flat_f64(&self, weights: &[f64], scratch: &mut Vec<f64>, out: &mut [f64]) {
        let n = self.num_players();
        scratch.clear();
        scratch.extend_from_slice(&self.float_payoffs);
        let mut len = self.num_profiles();
        let mut offset = weights.len();
        for &m in self.strategy_counts.iter().rev() {
            offset -= m;
            let w = &weights[offset..offset + m];
            let rows = len / m;
            for i in 0..rows {
                for c in 0..n {
                    let mut s = 0.0;
                    for (j, wj) in w.iter().enumerate() {
                        s += wj * scratch[(i * m + j) * n + c];
                    }
                    scratch[i * n + c] = s;
                }
            }
            len = rows;
        }
        out.copy_from_slice(&scratch[..n]);
    }

    pub fn payoff_f64(&self, profile: &[Vec<f64>]) -> Vec<f64> {
        let flat: Vec<f64> = profile.iter().flatten().copied().collect();
        let mut scratch = Vec::with_capacity(self.float_payoffs.len());
        let mut out = vec![0.0; self.num_players()];
        self.eval_flat_f64(&flat, &mut scratch, &mut out);
        out
    }

    /// Float `u(j, sigma_{-i})` for each `j`.
    pub fn deviation_payoffs_f64(&self, profile: &[Vec<f64>], player: usize) -> Vec<Vec<f64>> {
        let m = self.strategy_counts[player];
        (0..m)
            .map(|j| {
                let mut p = profile.to_vec();
                p[player] = (0..m).map(|k| if k == j { 1.0 } else { 0.0 }).collect();
                self.payoff_f64(&p)
            })
            .collect()
    }
}

fn default_names(counts: &[usize]) -> Vec<Vec<String>> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &m)| (0..m).map(|j| format!("a{}{}", i + 1, j + 1)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numeric::rational::{int, ratio};

    fn strat(w: &[(i64, i64)]) -> MixedStrategy {
        MixedStrategy::new(w.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    #[test]
    fn pure_lookup() {
        let g = fixtures::example1();
        assert_eq!(
            g.evaluate_pure(&PureProfile(vec![0, 1])).unwrap(),
            &PayoffVector::from_i64(&[5, 2])
        );
        let cx = fixtures::counterexample_3p();
        let s2 = QuadScalar::sqrt(2).unwrap();
        assert_eq!(
            cx.evaluate_pure(&PureProfile(vec![0, 0, 0])).unwrap().0,
            vec![s2, QuadScalar::int(-1), QuadScalar::int(1)]
        );
        assert!(matches!(
            g.evaluate_pure(&PureProfile(vec![0, 2])),
            Err(Error::InvalidProfile(_))
        ));
        assert_eq!(
            g.evaluate_pure(&PureProfile(vec![0, 0])).unwrap(),
            &g.payoff_table()[0]
        );
    }

    #[test]
    fn induced_product_weights() {
        let sigma = MixedProfile(vec![strat(&[(1, 2), (1, 2)]), strat(&[(1, 3), (2, 3)])]);
        let phi = induced_correlated(&sigma);
        assert_eq!(
            phi.weights(),
            &[ratio(1, 6), ratio(1, 3), ratio(1, 6), ratio(1, 3)]
        );
        let sigma = MixedProfile(vec![strat(&[(1, 1), (0, 1)]), strat(&[(1, 4), (3, 4)])]);
        let phi = induced_correlated(&sigma);
        assert_eq!(phi.weights(), &[ratio(1, 4), ratio(3, 4), int(0), int(0)]);
    }

    #[test]
    fn correlated_and_mixed_values() {
        let g = fixtures::example1();
        let uniform = CorrelatedStrategy::new(vec![2, 2], vec![ratio(1, 4); 4]).unwrap();
        assert_eq!(
            g.evaluate_correlated(&uniform).unwrap(),
            PayoffVector::from_i64(&[2, 2])
        );
        let half = MixedProfile(vec![MixedStrategy::uniform(2), MixedStrategy::uniform(2)]);
        assert_eq!(g.evaluate_mixed(&half).unwrap(), PayoffVector::from_i64(&[2, 2]));

        let g2 = fixtures::example2();
        let sigma = MixedProfile(vec![
            MixedStrategy::pure(2, 0),
            strat(&[(1, 2), (0, 1), (1, 2)]),
        ]);
        assert_eq!(g2.evaluate_mixed(&sigma).unwrap(), PayoffVector::from_i64(&[0, 1]));
    }

    #[test]
    fn counterexample_uniform_correlated() {
        let g = fixtures::counterexample_3p();
        let phi = CorrelatedStrategy::new(vec![2, 2, 2], vec![ratio(1, 8); 8]).unwrap();
        let u = g.evaluate_correlated(&phi).unwrap();
        let s2 = QuadScalar::sqrt(2).unwrap();
        let q = |x: i64| QuadScalar::int(x);
        let four = q(4);
        assert_eq!(u.0[0], (s2.clone() - q(2)) / four.clone());
        assert_eq!(u.0[1], (s2 - q(1)) / four);
        assert_eq!(u.0[2], q(0));
    }

    #[test]
    fn recover_round_trip_and_not_product() {
        let sigma = MixedProfile(vec![strat(&[(1, 2), (1, 2)]), strat(&[(1, 3), (2, 3)])]);
        assert_eq!(recover_mixed(&induced_correlated(&sigma)).unwrap(), sigma);
        let phi = CorrelatedStrategy::new(
            vec![2, 2],
            vec![ratio(1, 2), int(0), int(0), ratio(1, 2)],
        )
        .unwrap();
        assert_eq!(recover_mixed(&phi), Err(Error::NotProduct));
        let a = PureProfile(vec![1, 0]);
        let point = CorrelatedStrategy::point_mass(vec![2, 2], &a).unwrap();
        assert_eq!(recover_mixed(&point).unwrap().as_pure(), Some(a));
    }

    #[test]
    fn distribution_validation() {
        assert!(MixedStrategy::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(MixedStrategy::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(CorrelatedStrategy::new(vec![2, 2], vec![int(1)]).is_err());
        let g = fixtures::example1();
        let phi = CorrelatedStrategy::new(vec![4], vec![ratio(1, 4); 4]).unwrap();
        assert!(matches!(
            g.evaluate_correlated(&phi),
            Err(Error::InvalidDistribution(_))
        ));
    }

    #[test]
    fn float_from_weights_sums_to_one() {
        let s = MixedStrategy::from_f64(&[0.1, 0.2, 0.7]).unwrap();
        assert!(s.weights().iter().sum::<Rational>().is_one());
        assert!(MixedStrategy::from_f64(&[-0.1, 1.1]).is_err());
    }

    #[test]
    fn float_eval_matches_exact() {
        let g = fixtures::example4();
        let sigma = MixedProfile(vec![
            strat(&[(1, 5), (2, 5), (2, 5)]),
            strat(&[(1, 7), (3, 7), (3, 7)]),
        ]);
        let exact = g.evaluate_mixed(&sigma).unwrap().to_f64();
        let float = g.payoff_f64(&sigma.to_f64());
        for (a, b) in exact.iter().zip(&float) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_games() {
        assert!(Game::from_i64(vec![2], &[&[1], &[2], &[3]]).is_err());
        assert!(Game::from_i64(vec![2, 1], &[&[1, 2], &[3]]).is_err());
        assert!(Game::from_i64(vec![], &[]).is_err());
        let bad_field = PayoffVector(vec![QuadScalar::sqrt(3).unwrap()]);
        assert!(matches!(
            Game::new(vec![1], vec![bad_field], 2),
            Err(Error::FieldMismatch(2, 3))
        ));
    }
}
