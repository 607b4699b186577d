use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{Game, PayoffVector, PureProfile};
use crate::numeric::quad::QuadScalar;
use crate::numeric::rational::{self, Rational};
use crate::numeric::Sign;

use super::hull::HullVertexSet;
use super::sampling::SampleCloud;

/// `{x : c.x = offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: QuadScalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportValue {
    pub value: QuadScalar,
    /// Every pure profile attaining `value`, in flat order.
    pub argmax: Vec<PureProfile>,
    /// Distinct attaining payoff points, sorted.
    pub argmax_points: Vec<PayoffVector>,
}

impl SupportValue {
    pub fn hyperplane(&self, normal: &[Rational]) -> Hyperplane {
        Hyperplane {
            normal: normal.to_vec(),
            offset: self.value.clone(),
        }
    }
}

/// `max_{v in S_pu} c.v`, exactly.
pub fn support_value(game: &Game, c: &[Rational]) -> Result<SupportValue> {
    check_direction(game, c)?;
    let mut best: Option<QuadScalar> = None;
    let mut argmax = Vec::new();
    for (idx, u) in game.payoff_table().iter().enumerate() {
        let val = u.dot(c);
        let better = match &best {
            None => Some(true),
            Some(b) => match (&val - b).sign() {
                Sign::Positive => Some(true),
                Sign::Zero => Some(false),
                Sign::Negative => None,
            },
        };
        match better {
            Some(true) => {
                best = Some(val);
                argmax = vec![idx];
            }
            Some(false) => argmax.push(idx),
            None => {}
        }
    }
    let mut argmax_points: Vec<PayoffVector> =
        argmax.iter().map(|&i| game.payoff_table()[i].clone()).collect();
    argmax_points.sort();
    argmax_points.dedup();
    Ok(SupportValue {
        value: best.expect("games have at least one profile"),
        argmax: argmax.into_iter().map(|i| game.profile_at(i)).collect(),
        argmax_points,
    })
}

/// [`support_value`] for a float direction, converted exactly.
pub fn support_value_f64(game: &Game, c: &[f64]) -> Result<SupportValue> {
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidDirection(game.num_players()));
    }
    let exact: Vec<Rational> = c.iter().map(|&x| rational::from_f64(x)).collect();
    support_value(game, &exact)
}

fn check_direction(game: &Game, c: &[Rational]) -> Result<()> {
    if c.len() != game.num_players() {
        return Err(Error::DimensionMismatch {
            expected: game.num_players(),
            actual: c.len(),
        });
    }
    if c.iter().all(Zero::is_zero) {
        return Err(Error::InvalidDirection(c.len()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneReport {
    pub supports: bool,
    /// Pure payoff points on the hyperplane.
    pub touching: Vec<PayoffVector>,
    /// A hull vertex on the hyperplane, when it supports.
    pub touching_extreme_point: Option<PayoffVector>,
    /// `max c.v - offset` over the cloud, if one was given.
    pub cloud_excess: Option<f64>,
    pub cloud_ok: bool,
}

pub const CLOUD_SLACK: f64 = 1e-9;

pub fn supporting_hyperplane_check(
    game: &Game,
    hyperplane: &Hyperplane,
    hull: &HullVertexSet,
    cloud: Option<&SampleCloud>,
) -> Result<HyperplaneReport> {
    check_direction(game, &hyperplane.normal)?;
    let mut below = true;
    let mut touching = Vec::new();
    for u in game.payoff_table() {
        match (&u.dot(&hyperplane.normal) - &hyperplane.offset).sign() {
            Sign::Positive => below = false,
            Sign::Zero => touching.push(u.clone()),
            Sign::Negative => {}
        }
    }
    touching.sort();
    touching.dedup();
    let supports = below && !touching.is_empty();
    let touching_extreme_point = if supports {
        touching.iter().find(|t| hull.contains(t)).cloned()
    } else {
        None
    };
    let cloud_excess = cloud.and_then(|cl| {
        let c: Vec<f64> = hyperplane.normal.iter().map(rational::to_f64).collect();
        cl.max_dot(&c).map(|(m, _)| m - hyperplane.offset.to_f64())
    });
    let cloud_ok = !supports || cloud_excess.is_none_or(|e| e <= CLOUD_SLACK);
    Ok(HyperplaneReport {
        supports,
        touching,
        touching_extreme_point,
        cloud_excess,
        cloud_ok,
    })
}
