//! Acceptance criteria. Each prints one PASS/FAIL line with its time budget;
//! the process exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use payreg_core::efficiency::{
    counterexample_audit, pareto_membership_region, rational_frontier_check, tangent_sequence_check, welfare_max,
    DominatorSource, FailedCondition, ParetoConfig, ParetoVerdict, RationalFrontierVerdict, RegionKind,
    TangentConfig,
};
use payreg_core::extremality::{
    classify_extreme_points, mixability, ExtremalityConfig, ExtremalityStatus, MixabilityStatus,
};
use payreg_core::fixtures;
use payreg_core::game::{
    induced_correlated, recover_mixed, Game, MixedProfile, MixedStrategy, PayoffVector,
};
use payreg_core::geometry::directions::{rational_direction, unit_directions};
use payreg_core::geometry::{
    hull_vertices, pure_payoff_set, sample_region, support_value, SampleCloud, SampleConfig,
};
use payreg_core::io::report::{self, Provenance};
use payreg_core::io::{parse_game_str, plot_svg, render, serialize_game, PlotSpec};
use payreg_core::numeric::rational::{int, ratio, to_f64};
use payreg_core::numeric::separation::{separate_point, Separation};
use payreg_core::numeric::{QuadScalar, Sign};
use payreg_core::random::{random_correlated, random_game, random_positive, random_profile};

const SUPPORT_SLACK: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;
const WELFARE_TOL: f64 = 1e-9;
const COOPERATIVE_U3_TOL: f64 = 1e-6;
const CLOUD_POINTS: usize = 100_000;

fn pv(v: &[i64]) -> PayoffVector {
    PayoffVector::from_i64(v)
}

fn sorted(mut v: Vec<PayoffVector>) -> Vec<PayoffVector> {
    v.sort();
    v
}

fn status_of<'a>(classes: &'a [payreg_core::extremality::Classification], v: &PayoffVector) -> &'a ExtremalityStatus {
    &classes.iter().find(|c| &c.point == v).expect("classified point").status
}

fn c1() -> Result<String, String> {
    let g = fixtures::example1();
    // table of Example 1
    let expected = sorted(vec![pv(&[0, 1]), pv(&[5, 2]), pv(&[2, 5]), pv(&[1, 0])]);
    let pure = sorted(pure_payoff_set(&g).payoffs().cloned().collect());
    let hull = sorted(hull_vertices(&g).map_err(|e| e.to_string())?.vertices.into_iter().map(|v| v.payoff).collect());
    let classes = classify_extreme_points(&g, &ExtremalityConfig::default()).map_err(|e| e.to_string())?;
    let extreme = sorted(classes.iter().filter(|c| c.status.is_extreme()).map(|c| c.point.clone()).collect());
    check(pure == expected, "S_pu differs from the table")?;
    check(hull == expected, "hull vertices differ")?;
    check(extreme == expected, "extreme set differs")?;
    check(
        classes.iter().all(|c| c.status.label() == "EXTREME_CERTIFIED"),
        "a status is not certified",
    )?;
    Ok("4 certified vertices".into())
}

fn c2() -> Result<String, String> {
    let g = fixtures::example2();
    let cfg = ExtremalityConfig::default();
    let hull = sorted(hull_vertices(&g).map_err(|e| e.to_string())?.vertices.into_iter().map(|v| v.payoff).collect());
    check(
        hull == sorted(vec![pv(&[0, 0]), pv(&[3, 0]), pv(&[3, 2]), pv(&[0, 2])]),
        "hull vertices differ",
    )?;
    let classes = classify_extreme_points(&g, &cfg).map_err(|e| e.to_string())?;
    check(
        status_of(&classes, &pv(&[2, 2])).label() == "EXTREME_NUMERIC",
        "(2,2) is not EXTREME_NUMERIC",
    )?;
    let ExtremalityStatus::NotExtreme(w) = status_of(&classes, &pv(&[0, 1])) else {
        return Err("(0,1) is not NOT_EXTREME".into());
    };
    check(w.verify(&g, &[0.0, 1.0], RESIDUAL_TOL), "segment witness fails re-verification")?;
    let m = mixability(&g, &pv(&[0, 1]), &cfg).map_err(|e| e.to_string())?;
    let MixabilityStatus::Mixable { witness, exact, .. } = m else {
        return Err("(0,1) not mixable".into());
    };
    let expected = MixedProfile(vec![
        MixedStrategy::pure(2, 0),
        MixedStrategy::new(vec![ratio(1, 2), int(0), ratio(1, 2)]).unwrap(),
    ]);
    check(exact && witness == expected, "mixability witness is not (a11, (1/2, 0, 1/2))")?;
    // half of (0,2) plus half of (0,0)
    check(g.evaluate_mixed(&witness).unwrap() == pv(&[0, 1]), "witness payoff differs")?;
    Ok(format!("segment with {} points", w.points.len()))
}

fn c3() -> Result<String, String> {
    let cfg = ExtremalityConfig::default();
    let origin = pv(&[0, 0]);
    let g1 = fixtures::g1();
    check(
        mixability(&g1, &origin, &cfg).map_err(|e| e.to_string())?.label() == "MIXABLE",
        "G1 (0,0) not mixable",
    )?;
    let g2 = fixtures::g2();
    check(
        mixability(&g2, &origin, &cfg).map_err(|e| e.to_string())?.label() == "NO_WITNESS_FOUND",
        "G2 (0,0) unexpectedly mixable",
    )?;
    let classes = classify_extreme_points(&g2, &cfg).map_err(|e| e.to_string())?;
    let ExtremalityStatus::NotExtreme(w) = status_of(&classes, &origin) else {
        return Err("G2 (0,0) is not NOT_EXTREME".into());
    };
    let ends = w.exact_endpoints.clone().ok_or("segment endpoints are not exact")?;
    check(sorted(ends.to_vec()) == vec![pv(&[-1, 0]), pv(&[1, 0])], "segment is not (-1,0)-(1,0)")?;
    check(w.interior_count() >= 11, "fewer than 11 interior points")?;
    check(
        w.points.iter().all(|p| p.witness.residual <= RESIDUAL_TOL),
        "a residual exceeds the tolerance",
    )?;
    check(w.verify(&g2, &[0.0, 0.0], RESIDUAL_TOL), "segment fails re-verification")?;
    Ok(format!("{} interior points", w.interior_count()))
}

fn c4() -> Result<String, String> {
    let g = fixtures::example4();
    let target = pv(&[4, 4]);
    let classes = classify_extreme_points(&g, &ExtremalityConfig::default()).map_err(|e| e.to_string())?;
    check(
        status_of(&classes, &target).label() == "EXTREME_NUMERIC",
        "(4,4) is not EXTREME_NUMERIC",
    )?;
    let set = pure_payoff_set(&g);
    let others: Vec<Vec<QuadScalar>> = set.payoffs().filter(|p| **p != target).map(|p| p.0.clone()).collect();
    check(
        matches!(separate_point(&target.0, &others), Ok(Separation::Inside { .. })),
        "(4,4) is separable",
    )?;
    let mut count = 0;
    for c in unit_directions(2, 720, 0, false) {
        let Some(c) = rational_direction(&c, 1_000_000) else { continue };
        let s = support_value(&g, &c).map_err(|e| e.to_string())?;
        check(!s.argmax_points.contains(&target), "a supporting hyperplane touches (4,4)")?;
        // direct comparison with the other three payoffs
        let cf: Vec<f64> = c.iter().map(to_f64).collect();
        let at = 4.0 * (cf[0] + cf[1]);
        let best = [0.0, 8.0 * cf[0] + 2.0 * cf[1], 2.0 * cf[0] + 8.0 * cf[1]]
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        check(at < best, "(4,4) attains the maximum")?;
        count += 1;
    }
    check(count == 720, "direction count")?;
    Ok("720 directions".into())
}

fn big_cloud(g: &Game, seed: u64) -> SampleCloud {
    let grid = 3;
    let grid_total: usize = g
        .strategy_counts()
        .iter()
        .map(|&m| if m == 1 { 1 } else { (1..m).fold(1, |acc, k| acc * (grid - 1 + k) / k) })
        .product();
    let rounds = 3;
    let cfg = SampleConfig {
        seed,
        grid_resolution: grid,
        samples_per_round: (CLOUD_POINTS - grid_total) / (rounds + 1),
        refinement_rounds: rounds,
        max_samples: 2 * CLOUD_POINTS,
    };
    sample_region(g, &cfg).expect("cloud within budget")
}

fn support_theorem(g: &Game, seed: u64) -> Result<usize, String> {
    let cloud = big_cloud(g, seed);
    if cloud.len() + 4 < CLOUD_POINTS {
        return Err(format!("cloud has {} points", cloud.len()));
    }
    for c in unit_directions(g.num_players(), 200, seed, false) {
        let c = rational_direction(&c, 1_000_000).ok_or("degenerate direction")?;
        let s = support_value(g, &c).map_err(|e| e.to_string())?;
        let cf: Vec<f64> = c.iter().map(to_f64).collect();
        let (m, _) = cloud.max_dot(&cf).unwrap();
        if m > s.value.to_f64() + SUPPORT_SLACK {
            return Err(format!("cloud exceeds support by {:e}", m - s.value.to_f64()));
        }
        let attained = g.evaluate_pure(&s.argmax[0]).map_err(|e| e.to_string())?.dot(&c);
        if attained != s.value {
            return Err("support not attained by its argmax profile".into());
        }
    }
    Ok(cloud.len())
}

fn c5() -> Result<String, String> {
    let mut games: Vec<Game> = fixtures::all().into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..100 {
        games.push(random_game(&mut rng, 2 + k % 2, 4));
    }
    let results: Vec<Result<usize, String>> = games
        .par_iter()
        .enumerate()
        .map(|(i, g)| support_theorem(g, i as u64))
        .collect();
    for r in &results {
        r.clone()?;
    }
    Ok(format!("{} games x 200 directions", games.len()))
}

fn c6() -> Result<String, String> {
    let g = fixtures::counterexample_3p();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let phi = random_correlated(&mut rng, g.strategy_counts(), 8);
        let w = phi.weights();
        let q: Vec<QuadScalar> = w.iter().cloned().map(QuadScalar::rational).collect();
        let a = counterexample_audit(&q).map_err(|e| e.to_string())?;
        // u1 < 0 iff m11^2 < 2 m22^2, u2 < 0 iff 2 m22^2 < m11^2
        let m11 = &w[0] + &w[1];
        let m22 = &w[6] + &w[7];
        let two = int(2);
        let expected = if &m11 * &m11 < &two * &m22 * &m22 {
            FailedCondition::U1Negative
        } else if &two * &m22 * &m22 < &m11 * &m11 {
            FailedCondition::U2Negative
        } else {
            FailedCondition::EqualToTarget
        };
        check(!a.dominating, "an audit reports dominance")?;
        check(a.failed == Some(expected), "failed condition differs from the oracle")?;
    }
    let mut point = vec![QuadScalar::zero(); 8];
    point[2] = QuadScalar::one();
    let a = counterexample_audit(&point).map_err(|e| e.to_string())?;
    let trace = a.trace.join("\n");
    check(
        trace.contains("m11 = sqrt(2)*m22") && trace.contains("m11 = m22 = 0") && trace.contains("(0, 0, -1)"),
        "forced-equality trace missing",
    )?;
    let r = pareto_membership_region(&g, &pv(&[0, 0, -1]), None, RegionKind::Cooperative, &ParetoConfig::default())
        .map_err(|e| e.to_string())?;
    let ParetoVerdict::Dominated(d) = r.verdict else {
        return Err("(0,0,-1) not dominated in the cooperative region".into());
    };
    check(d.point[2] >= 1.0 - COOPERATIVE_U3_TOL, "dominator has u3 < 1")?;
    check(d.exact_point == Some(pv(&[0, 0, 1])), "dominator is not (0,0,1)")?;
    let DominatorSource::Correlated { weights, .. } = &d.source else {
        return Err("dominator is not correlated".into());
    };
    let lambda = QuadScalar::int(2) - QuadScalar::sqrt(2).unwrap();
    check(weights.contains(&lambda), "lambda = 2 - sqrt(2) missing")?;
    Ok("1000 audits".into())
}

fn two_player() -> Vec<(&'static str, Game)> {
    fixtures::all().into_iter().filter(|(_, g)| g.num_players() == 2).collect()
}

fn c7() -> Result<String, String> {
    let cfg = ParetoConfig::default();
    let mut dominated = 0;
    for (k, (name, g)) in two_player().into_iter().enumerate() {
        let cloud = sample_region(&g, &SampleConfig::default()).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(70 + k as u64);
        let sigmas: Vec<MixedProfile> = (0..50).map(|_| random_profile(&mut rng, g.strategy_counts(), 8)).collect();
        let reports: Vec<_> = sigmas
            .par_iter()
            .map(|s| rational_frontier_check(&g, s, Some(&cloud), &cfg))
            .collect();
        for r in reports {
            let r = r.map_err(|e| e.to_string())?;
            match (&r.pareto.verdict, &r.verdict) {
                (ParetoVerdict::OnFrontierSampled, RationalFrontierVerdict::Vacuous) => {}
                (ParetoVerdict::Dominated(_), RationalFrontierVerdict::FoundRationalDominator { profile, payoff, denominator }) => {
                    check(*denominator <= 64, "denominator above 64")?;
                    check(g.evaluate_mixed(profile).unwrap() == *payoff, "dominator payoff differs")?;
                    let diffs: Vec<Sign> = payoff.0.iter().zip(&r.target.0).map(|(a, b)| (a - b).sign()).collect();
                    check(
                        diffs.iter().all(|s| *s != Sign::Negative) && diffs.contains(&Sign::Positive),
                        "found point does not dominate",
                    )?;
                    dominated += 1;
                }
                _ => return Err(format!("{name}: {} with {}", r.pareto.verdict.label(), r.verdict.label())),
            }
        }
    }
    Ok(format!("{dominated} dominated profiles, all with rational dominators"))
}

fn c8() -> Result<String, String> {
    let mut n = 0;
    for (k, (_, g)) in fixtures::all().into_iter().enumerate() {
        let cloud = sample_region(&g, &SampleConfig::default()).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(80 + k as u64);
        for _ in 0..100 {
            let alpha = random_positive(&mut rng, g.num_players(), 9);
            let w = welfare_max(&g, &alpha).map_err(|e| e.to_string())?;
            let af: Vec<f64> = alpha.iter().map(to_f64).collect();
            let (m, _) = cloud.max_dot(&af).unwrap();
            check((m - w.value.to_f64()).abs() <= WELFARE_TOL, "welfare differs from the cloud maximum")?;
            for a in &w.argmax {
                check(g.evaluate_pure(a).unwrap().dot(&alpha) == w.value, "argmax does not attain")?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} weight vectors"))
}

fn c9() -> Result<String, String> {
    let g = fixtures::tangent();
    let seq: Vec<MixedProfile> = (1..=12)
        .map(|t| {
            let e = ratio(1, 1 << t);
            MixedProfile(vec![
                MixedStrategy::new(vec![int(1) - &e, e.clone()]).unwrap(),
                MixedStrategy::new(vec![e.clone(), int(1) - &e]).unwrap(),
            ])
        })
        .collect();
    let tc = TangentConfig::default();
    let pc = ParetoConfig::default();
    let r = tangent_sequence_check(&g, &seq, &pv(&[-2, 2]), None, &tc, &pc).map_err(|e| e.to_string())?;
    let last = r.ratios.last().unwrap().abs();
    check(last < 1e-3 && r.tail_length >= 5, "hypotheses do not validate")?;
    check(r.conclusion_holds, "conclusion fails")?;
    // closed form of the ratio: eps / (2 (1 - eps)) at eps = 2^-12
    let eps = 0.5f64.powi(12);
    check((last - eps / (2.0 * (1.0 - eps))).abs() < 1e-12, "final ratio differs from the closed form")?;
    let g1 = fixtures::g1();
    let edge: Vec<MixedProfile> = (1..=12)
        .map(|t| {
            let e = ratio(1, 1 << t);
            MixedProfile(vec![MixedStrategy::new(vec![int(1) - &e, e]).unwrap(), MixedStrategy::pure(2, 1)])
        })
        .collect();
    let control = tangent_sequence_check(&g1, &edge, &pv(&[0, 0]), None, &tc, &pc);
    check(
        matches!(control, Err(payreg_core::Error::HypothesesNotMet(_))),
        "straight-edge control not rejected",
    )?;
    Ok(format!("final ratio {last:.3e}, tail {}", r.tail_length))
}

fn artifacts(name: &str) -> (String, String) {
    let g = fixtures::by_name(name).unwrap();
    let cfg = ExtremalityConfig::default();
    let classes = classify_extreme_points(&g, &cfg).unwrap();
    let rows: Vec<_> = classes.iter().map(|c| report::classification(&g, c)).collect();
    let prov = Provenance {
        seed: 0,
        config: json!({}),
    };
    let doc = render(&report::document("extreme", &prov, json!({ "points": rows })));
    let cloud = sample_region(&g, &SampleConfig::default()).unwrap();
    let svg = plot_svg(&g, Some(&cloud), &classes, &PlotSpec::default()).unwrap();
    (doc, svg)
}

fn c10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..1000 {
        let g = random_game(&mut rng, 2 + k % 2, 4);
        let sigma = random_profile(&mut rng, g.strategy_counts(), 12);
        let phi = induced_correlated(&sigma);
        check(recover_mixed(&phi).as_ref() == Ok(&sigma), "product round trip fails")?;
        check(
            g.evaluate_correlated(&phi).unwrap() == g.evaluate_mixed(&sigma).unwrap(),
            "induced payoff differs",
        )?;
    }
    let mut games: Vec<Game> = fixtures::all().into_iter().map(|(_, g)| g).collect();
    for k in 0..100 {
        games.push(random_game(&mut rng, 2 + k % 2, 4));
    }
    for g in &games {
        let text = serialize_game(g);
        let back = parse_game_str(&text).map_err(|e| e.to_string())?;
        check(&back == g && serialize_game(&back) == text, "game file round trip fails")?;
    }
    for name in ["ex2", "ex4", "g2"] {
        let first = artifacts(name);
        check(first == artifacts(name), "artifacts differ across runs")?;
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            check(pool.install(|| artifacts(name)) == first, "artifacts differ across thread counts")?;
        }
    }
    Ok("1000 profiles, 107 files, 3 artifact sets".into())
}

fn check(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

type Criterion = (u32, &'static str, u64, fn() -> Result<String, String>);

const CRITERIA: [Criterion; 10] = [
    (1, "ex1 extreme points equal the pure set", 1, c1),
    (2, "ex2 classification and mixability", 5, c2),
    (3, "G1 mixable, G2 segment witness", 5, c3),
    (4, "ex4 extreme point inside the hull", 5, c4),
    (5, "support function over sampled clouds", 60, c5),
    (6, "three-player dominance audit", 30, c6),
    (7, "rational dominators for two players", 60, c7),
    (8, "welfare maxima at pure profiles", 30, c8),
    (9, "tangent-sequence check and control", 5, c9),
    (10, "round trips and deterministic artifacts", 120, c10),
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, title, limit, run) in CRITERIA {
        let tag = format!("C{id}");
        if !filter.is_empty() && !filter.iter().any(|f| f == &tag) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(limit);
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > budget => ("FAIL", "over time budget".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "acceptance {tag:<3} {verdict} {title} ({:.2}s, limit {limit}s): {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
