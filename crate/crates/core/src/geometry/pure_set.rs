use std::collections::BTreeMap;

use crate::game::{Game, PayoffVector, PureProfile};

/// A distinct pure payoff point and every profile producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct PurePoint {
    pub payoff: PayoffVector,
    pub generators: Vec<PureProfile>,
}

/// `S_pu`, sorted lexicographically by exact payoff.
#[derive(Debug, Clone, PartialEq)]
pub struct PurePayoffSet {
    pub points: Vec<PurePoint>,
}

impl PurePayoffSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, v: &PayoffVector) -> Option<&PurePoint> {
        self.points
            .binary_search_by(|p| p.payoff.cmp(v))
            .ok()
            .map(|i| &self.points[i])
    }

    pub fn payoffs(&self) -> impl Iterator<Item = &PayoffVector> {
        self.points.iter().map(|p| &p.payoff)
    }

    pub fn float_points(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.payoff.to_f64()).collect()
    }

    /// Per-coordinate float bounds `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let pts = self.float_points();
        let n = pts[0].len();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for p in &pts {
            for k in 0..n {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }
}

pub fn pure_payoff_set(game: &Game) -> PurePayoffSet {
    let mut map: BTreeMap<PayoffVector, Vec<PureProfile>> = BTreeMap::new();
    for (idx, u) in game.payoff_table().iter().enumerate() {
        map.entry(u.clone()).or_default().push(game.profile_at(idx));
    }
    PurePayoffSet {
        points: map
            .into_iter()
            .map(|(payoff, generators)| PurePoint { payoff, generators })
            .collect(),
    }
}
