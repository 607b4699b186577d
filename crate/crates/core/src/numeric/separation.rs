//! Strict separation of a point from the convex hull of a finite point set.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::ExactField;
use super::quad::QuadScalar;
use super::rational::{Rational, Sign};
use super::simplex::{lp_feasible, LinearProgram};
use crate::error::{Error, Result};

/// A rational normal `c` with `c.v >= c.w + margin` for every certified `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub normal: Vec<Rational>,
    pub margin: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Separation {
    Separated(SeparationCertificate),
    /// `v = sum lambda_t w_t` with `lambda` in the simplex.
    Inside { lambda: Vec<QuadScalar> },
}

impl Separation {
    pub fn certificate(&self) -> Option<&SeparationCertificate> {
        match self {
            Separation::Separated(c) => Some(c),
            Separation::Inside { .. } => None,
        }
    }
}

fn dot_rational(c: &[Rational], x: &[QuadScalar]) -> QuadScalar {
    c.iter()
        .zip(x)
        .fold(QuadScalar::zero(), |acc, (ci, xi)| acc + xi.scale(ci))
}

impl SeparationCertificate {
    /// Exact re-verification against every point of `others`.
    pub fn verify(&self, v: &[QuadScalar], others: &[Vec<QuadScalar>]) -> bool {
        if self.margin <= Rational::zero() || self.normal.iter().all(Zero::is_zero) {
            return false;
        }
        if self.normal.len() != v.len() {
            return false;
        }
        let cv = dot_rational(&self.normal, v);
        let margin = QuadScalar::rational(self.margin.clone());
        others.iter().all(|w| {
            w.len() == v.len()
                && (&cv - &(dot_rational(&self.normal, w) + margin.clone())).sign() != Sign::Negative
        })
    }
}

/// Exact check that `lambda` writes `v` as a convex combination of `others`.
pub fn verify_convex_combination(
    v: &[QuadScalar],
    others: &[Vec<QuadScalar>],
    lambda: &[QuadScalar],
) -> bool {
    if lambda.len() != others.len() || lambda.iter().any(|l| l.sign() == Sign::Negative) {
        return false;
    }
    let total = lambda.iter().fold(QuadScalar::zero(), |a, l| a + l.clone());
    if total != QuadScalar::one() {
        return false;
    }
    (0..v.len()).all(|k| {
        let s = others
            .iter()
            .zip(lambda)
            .fold(QuadScalar::zero(), |acc, (w, l)| acc + &w[k] * l);
        s == v[k]
    })
}

/// Rational within roughly `2^-bits` (relative to `|b|`) of `x`.
pub fn approx_rational(x: &QuadScalar, bits: u32) -> Rational {
    if x.is_rational() {
        return x.a().clone();
    }
    let scale = BigInt::one() << bits;
    let root = (BigInt::from(x.d()) * &scale * &scale).sqrt();
    x.a() + x.b() * Rational::new(root, scale)
}

/// Decides whether `v` is a vertex of `conv(others ∪ {v})`.
///
/// Returns a rational strictly-separating normal, or the convex coefficients
/// exhibiting `v ∈ conv(others)`. With no other points the separation is vacuous.
pub fn separate_point(v: &[QuadScalar], others: &[Vec<QuadScalar>]) -> Result<Separation> {
    let n = v.len();
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if let Some(w) = others.iter().find(|w| w.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    if others.is_empty() {
        let mut normal = vec![Rational::zero(); n];
        normal[0] = Rational::one();
        return Ok(Separation::Separated(SeparationCertificate {
            normal,
            margin: Rational::one(),
        }));
    }
    let rational = v.iter().chain(others.iter().flatten()).all(QuadScalar::is_rational);
    if rational {
        let vr: Vec<Rational> = v.iter().map(|x| x.a().clone()).collect();
        let wr: Vec<Vec<Rational>> = others
            .iter()
            .map(|w| w.iter().map(|x| x.a().clone()).collect())
            .collect();
        if let Some(lambda) = hull_coefficients(&vr, &wr)? {
            return Ok(Separation::Inside {
                lambda: lambda.into_iter().map(QuadScalar::rational).collect(),
            });
        }
        let normal = separating_normal(&vr, &wr)?;
        let margin = wr
            .iter()
            .map(|w| dot(&normal, &vr) - dot(&normal, w))
            .min()
            .expect("others is nonempty");
        return Ok(Separation::Separated(SeparationCertificate { normal, margin }));
    }
    if let Some(lambda) = hull_coefficients(v, others)? {
        return Ok(Separation::Inside { lambda });
    }
    let exact_normal = separating_normal(v, others)?;
    let diffs: Vec<Vec<QuadScalar>> = others
        .iter()
        .map(|w| v.iter().zip(w).map(|(a, b)| a - b).collect())
        .collect();
    for bits in [64u32, 128, 256, 512] {
        let normal: Vec<Rational> = exact_normal.iter().map(|c| approx_rational(c, bits)).collect();
        let values: Vec<QuadScalar> = diffs.iter().map(|d| dot_rational(&normal, d)).collect();
        let Some(min) = values.iter().min().cloned() else {
            continue;
        };
        if min.sign() != Sign::Positive {
            continue;
        }
        let mut margin = approx_rational(&min, bits) / Rational::from_integer(BigInt::from(2));
        while margin > Rational::zero()
            && (&min - &QuadScalar::rational(margin.clone())).sign() == Sign::Negative
        {
            margin /= Rational::from_integer(BigInt::from(2));
        }
        if margin > Rational::zero() {
            return Ok(Separation::Separated(SeparationCertificate { normal, margin }));
        }
    }
    Err(Error::InvalidInput(
        "separating normal could not be rationalized".into(),
    ))
}

fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `lambda >= 0` with `sum lambda = 1`, `sum lambda_t w_t = v`, if any.
pub fn hull_coefficients<F: ExactField>(v: &[F], others: &[Vec<F>]) -> Result<Option<Vec<F>>> {
    let mut rows: Vec<Vec<F>> = (0..v.len())
        .map(|k| others.iter().map(|w| w[k].clone()).collect())
        .collect();
    rows.push(vec![F::one(); others.len()]);
    let mut rhs = v.to_vec();
    rhs.push(F::one());
    lp_feasible(rows, rhs)
}

/// Normal `c` with `c.(v - w) >= 1` for all `w`; callers guarantee existence.
fn separating_normal<F: ExactField>(v: &[F], others: &[Vec<F>]) -> Result<Vec<F>> {
    let n = v.len();
    let k = others.len();
    let mut rows = Vec::with_capacity(k);
    for (t, w) in others.iter().enumerate() {
        let mut row = Vec::with_capacity(2 * n + k);
        for i in 0..n {
            row.push(v[i].clone() - w[i].clone());
        }
        for i in 0..n {
            row.push(w[i].clone() - v[i].clone());
        }
        for s in 0..k {
            row.push(if s == t { -F::one() } else { F::zero() });
        }
        rows.push(row);
    }
    let lp = LinearProgram::feasibility(rows, vec![F::one(); k]);
    match lp.solve()? {
        super::simplex::LpOutcome::Optimal { x, .. } => {
            Ok((0..n).map(|i| x[i].clone() - x[n + i].clone()).collect())
        }
        _ => Err(Error::InvalidInput(
            "point is neither inside the hull nor separable".into(),
        )),
    }
}
