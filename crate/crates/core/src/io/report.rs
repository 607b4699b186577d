//! Report documents. Witness profiles are written as exact weight arrays so a
//! reader holding only the game file can re-check them.

use serde_json::{json, Map, Value};

use crate::efficiency::{
    DominanceAudit, DominatorSource, ParetoReport, ParetoVerdict, RationalFrontierReport,
    RationalFrontierVerdict, RegionKind, TangentOrientation, TangentReport, WelfareResult,
};
use crate::error::{Error, Result};
use crate::extremality::{Classification, ExtremalityStatus, MixabilityStatus, SegmentWitness};
use crate::game::{Game, MixedProfile, MixedStrategy, PayoffVector, PureProfile};
use crate::geometry::{HullVertexSet, HyperplaneReport, PurePayoffSet, SupportValue};
use crate::io::game_file::{parse_scalar, scalar_json};
use crate::numeric::quad::QuadScalar;
use crate::numeric::rational::{self, Rational};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub seed: u64,
    pub config: Value,
}

pub fn document(kind: &str, provenance: &Provenance, body: Value) -> Value {
    json!({
        "schemaVersion": 1,
        "kind": kind,
        "provenance": {
            "seed": provenance.seed,
            "config": provenance.config,
            "toolVersion": TOOL_VERSION,
        },
        "result": body,
    })
}

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::Null
    }
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float).collect())
}

pub fn rational_str(r: &Rational) -> Value {
    Value::String(rational::format_rational(r))
}

pub fn vector(v: &PayoffVector) -> Value {
    Value::Array(v.0.iter().map(scalar_json).collect())
}

fn scalars(v: &[QuadScalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn pure(game: &Game, p: &PureProfile) -> Value {
    let names = game.strategy_names();
    Value::Array(
        p.0.iter()
            .enumerate()
            .map(|(i, &k)| Value::String(names[i][k].clone()))
            .collect(),
    )
}

fn pures(game: &Game, ps: &[PureProfile]) -> Value {
    Value::Array(ps.iter().map(|p| pure(game, p)).collect())
}

pub fn mixed(p: &MixedProfile) -> Value {
    Value::Array(
        p.0.iter()
            .map(|s| Value::Array(s.weights().iter().map(rational_str).collect()))
            .collect(),
    )
}

/// Reads a `mixed` array back.
pub fn read_mixed(v: &Value) -> Result<MixedProfile> {
    let bad = || Error::InvalidInput("expected an array of weight arrays".into());
    let players = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::with_capacity(players.len());
    for p in players {
        let weights = p
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|w| w.as_str().ok_or_else(bad).and_then(rational::parse_rational))
            .collect::<Result<Vec<_>>>()?;
        out.push(MixedStrategy::new(weights)?);
    }
    Ok(MixedProfile(out))
}

/// Reads a `vector` array back.
pub fn read_vector(v: &Value, d: u32) -> Result<PayoffVector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected a payoff array".into()))?;
    Ok(PayoffVector(
        items
            .iter()
            .map(|x| parse_scalar(x, d, "$"))
            .collect::<Result<_>>()?,
    ))
}

pub fn regions(game: &Game, set: &PurePayoffSet, hull: &HullVertexSet) -> Value {
    let pure_points: Vec<Value> = set
        .points
        .iter()
        .map(|p| {
            json!({
                "payoff": vector(&p.payoff),
                "generators": pures(game, &p.generators),
                "hullVertex": hull.contains(&p.payoff),
            })
        })
        .collect();
    let vertices: Vec<Value> = hull
        .vertices
        .iter()
        .map(|v| {
            json!({
                "payoff": vector(&v.payoff),
                "certificate": {
                    "normal": v.certificate.normal.iter().map(rational_str).collect::<Vec<_>>(),
                    "margin": rational_str(&v.certificate.margin),
                },
            })
        })
        .collect();
    json!({ "purePayoffSet": pure_points, "hullVertices": vertices })
}

fn segment(w: &SegmentWitness) -> Value {
    let points: Vec<Value> = w
        .points
        .iter()
        .map(|p| {
            json!({
                "s": float(p.s),
                "target": floats(&p.witness.target),
                "profile": mixed(&p.witness.profile),
                "residual": float(p.witness.residual),
                "exact": p.witness.exact,
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("endpoints".into(), Value::Array(w.endpoints.iter().map(|e| floats(e)).collect()));
    if let Some(ex) = &w.exact_endpoints {
        obj.insert("exactEndpoints".into(), Value::Array(ex.iter().map(vector).collect()));
    }
    obj.insert("theta".into(), float(w.theta));
    if let Some(t) = &w.exact_theta {
        obj.insert("exactTheta".into(), rational_str(t));
    }
    obj.insert("points".into(), Value::Array(points));
    Value::Object(obj)
}

pub fn classification(game: &Game, c: &Classification) -> Value {
    let mut obj = Map::new();
    obj.insert("point".into(), vector(&c.point));
    obj.insert("generators".into(), pures(game, &c.generators));
    obj.insert("status".into(), Value::String(c.status.label().into()));
    match &c.status {
        ExtremalityStatus::ExtremeCertified(cert) => {
            obj.insert(
                "certificate".into(),
                json!({
                    "normal": cert.normal.iter().map(rational_str).collect::<Vec<_>>(),
                    "margin": rational_str(&cert.margin),
                }),
            );
        }
        ExtremalityStatus::ExtremeNumeric { epsilon, directions } => {
            obj.insert("epsilon".into(), float(*epsilon));
            obj.insert("directions".into(), Value::from(*directions));
        }
        ExtremalityStatus::NotExtreme(w) => {
            obj.insert("segment".into(), segment(w));
        }
    }
    Value::Object(obj)
}

pub fn mixability(point: &PayoffVector, m: &MixabilityStatus) -> Value {
    let mut obj = Map::new();
    obj.insert("point".into(), vector(point));
    obj.insert("status".into(), Value::String(m.label().into()));
    match m {
        MixabilityStatus::Mixable {
            witness,
            exact,
            residual,
        } => {
            obj.insert("witness".into(), mixed(witness));
            obj.insert("exact".into(), Value::Bool(*exact));
            obj.insert("residual".into(), float(*residual));
        }
        MixabilityStatus::NoWitnessFound {
            starts,
            tol,
            min_mix_mass,
        } => {
            obj.insert("starts".into(), Value::from(*starts));
            obj.insert("tol".into(), float(*tol));
            obj.insert("minMixMass".into(), float(*min_mix_mass));
        }
    }
    Value::Object(obj)
}

pub fn hyperplane(game: &Game, normal: &[Rational], support: &SupportValue, check: &HyperplaneReport) -> Value {
    json!({
        "normal": normal.iter().map(rational_str).collect::<Vec<_>>(),
        "offset": scalar_json(&support.value),
        "argmax": pures(game, &support.argmax),
        "supports": check.supports,
        "touching": check.touching.iter().map(vector).collect::<Vec<_>>(),
        "touchingExtremePoint": check.touching_extreme_point.as_ref().map(vector),
        "cloudExcess": check.cloud_excess.map(float),
        "cloudOk": check.cloud_ok,
    })
}

pub fn pareto(game: &Game, r: &ParetoReport) -> Value {
    let mut obj = Map::new();
    obj.insert("target".into(), vector(&r.target));
    obj.insert(
        "region".into(),
        Value::String(
            match r.region {
                RegionKind::Noncooperative => "noncooperative",
                RegionKind::Cooperative => "cooperative",
            }
            .into(),
        ),
    );
    obj.insert("verdict".into(), Value::String(r.verdict.label().into()));
    if let ParetoVerdict::Dominated(d) = &r.verdict {
        let source = match &d.source {
            DominatorSource::Pure(p) => json!({ "kind": "pure", "profile": pure(game, p) }),
            DominatorSource::Unilateral { base, player, weights } => json!({
                "kind": "unilateral",
                "base": mixed(base),
                "player": player,
                "weights": scalars(weights),
            }),
            DominatorSource::Correlated { profiles, weights } => json!({
                "kind": "correlated",
                "profiles": pures(game, profiles),
                "weights": scalars(weights),
            }),
            DominatorSource::Sampled { index, profile } => json!({
                "kind": "sampled",
                "index": index,
                "profile": profile.iter().map(|w| floats(w)).collect::<Vec<_>>(),
            }),
        };
        obj.insert(
            "dominator".into(),
            json!({
                "point": floats(&d.point),
                "exactPoint": d.exact_point.as_ref().map(vector),
                "source": source,
            }),
        );
    }
    Value::Object(obj)
}

pub fn rational_frontier(game: &Game, r: &RationalFrontierReport) -> Value {
    let mut obj = Map::new();
    obj.insert("target".into(), vector(&r.target));
    obj.insert("pareto".into(), pareto(game, &r.pareto));
    obj.insert("verdict".into(), Value::String(r.verdict.label().into()));
    if let RationalFrontierVerdict::FoundRationalDominator {
        profile,
        payoff,
        denominator,
    } = &r.verdict
    {
        obj.insert("profile".into(), mixed(profile));
        obj.insert("payoff".into(), vector(payoff));
        obj.insert("denominator".into(), Value::from(*denominator));
    }
    Value::Object(obj)
}

pub fn tangent(game: &Game, r: &TangentReport) -> Value {
    json!({
        "orientation": match r.orientation {
            TangentOrientation::Horizontal => "horizontal",
            TangentOrientation::Vertical => "vertical",
        },
        "ratios": floats(&r.ratios),
        "tailLength": r.tail_length,
        "pareto": pareto(game, &r.pareto),
        "conclusionHolds": r.conclusion_holds,
    })
}

pub fn welfare(game: &Game, w: &WelfareResult) -> Value {
    json!({
        "weights": w.weights.iter().map(rational_str).collect::<Vec<_>>(),
        "value": scalar_json(&w.value),
        "argmax": pures(game, &w.argmax),
    })
}

pub fn audit(a: &DominanceAudit) -> Value {
    json!({
        "weights": a.weights.iter().map(rational_str).collect::<Vec<_>>(),
        "payoff": vector(&a.payoff),
        "m11": rational_str(&a.m11),
        "m22": rational_str(&a.m22),
        "verdict": if a.dominating { "DOMINATING" } else { "NOT_DOMINATING" },
        "failedCondition": a.failed.map(|f| f.label()),
        "trace": a.trace,
    })
}
