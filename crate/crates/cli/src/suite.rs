use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use payreg_core::efficiency::{
    counterexample_audit, pareto_membership_region, payoff_irrelevant, rational_frontier_check, strictly_dominant,
    tangent_sequence_check, welfare_max, ParetoConfig, RationalFrontierVerdict, RegionKind, TangentConfig,
};
use payreg_core::extremality::{classify_extreme_points, ExtremalityStatus};
use payreg_core::fixtures;
use payreg_core::game::{induced_correlated, recover_mixed, Game, MixedProfile, MixedStrategy, PayoffVector};
use payreg_core::geometry::directions::{rational_direction, unit_directions};
use payreg_core::geometry::{hull_vertices_of, pure_payoff_set, support_value};
use payreg_core::io::{parse_game_str, serialize_game};
use payreg_core::numeric::quad::QuadScalar;
use payreg_core::numeric::rational::{self, ratio};
use payreg_core::random::{random_correlated, random_positive, random_profile};
use payreg_core::Result;

use crate::commands::{cloud, extremality_config};
use crate::Global;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn same_table(a: &Game, b: &Game) -> bool {
    a.strategy_counts() == b.strategy_counts() && a.payoff_table() == b.payoff_table()
}

pub fn run(g: &Global, game: &Game) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);

    let back = parse_game_str(&serialize_game(game))?;
    out.push(check("round-trip", &back == game, "parse(serialize(game)) = game"));

    let set = pure_payoff_set(game);
    let hull = hull_vertices_of(&set)?;
    out.push(check(
        "hull-certificates",
        !hull.is_empty() && hull.verify(&set),
        format!("{} vertices", hull.len()),
    ));

    let mut round_trip = true;
    for _ in 0..100 {
        let sigma = random_profile(&mut rng, game.strategy_counts(), 9);
        let phi = induced_correlated(&sigma);
        round_trip &= recover_mixed(&phi).as_ref() == Ok(&sigma)
            && game.evaluate_correlated(&phi)? == game.evaluate_mixed(&sigma)?;
    }
    out.push(check("product-round-trip", round_trip, "100 random rational profiles"));

    let cloud = cloud(g, game)?;
    let mut worst = f64::NEG_INFINITY;
    let mut attained = true;
    let dirs = unit_directions(game.num_players(), 64, g.seed, false);
    for c in dirs.iter().filter_map(|c| rational_direction(c, 10_000)) {
        let s = support_value(game, &c)?;
        let cf: Vec<f64> = c.iter().map(rational::to_f64).collect();
        let (m, _) = cloud.max_dot(&cf).expect("nonempty cloud");
        worst = worst.max(m - s.value.to_f64());
        attained &= !s.argmax.is_empty()
            && s.argmax_points.iter().all(|p| p.dot(&c) == s.value);
    }
    out.push(check(
        "support-function",
        worst <= 1e-9 && attained,
        format!("max cloud excess {worst:e} over 64 directions"),
    ));

    let mut welfare_gap = 0.0f64;
    for _ in 0..20 {
        let alpha = random_positive(&mut rng, game.num_players(), 6);
        let w = welfare_max(game, &alpha)?;
        let af: Vec<f64> = alpha.iter().map(rational::to_f64).collect();
        let (m, _) = cloud.max_dot(&af).expect("nonempty cloud");
        welfare_gap = welfare_gap.max(m - w.value.to_f64());
    }
    out.push(check(
        "welfare",
        welfare_gap <= 1e-9,
        format!("max cloud excess {welfare_gap:e} over 20 weights"),
    ));

    let cfg = extremality_config(g)?;
    let classes = classify_extreme_points(game, &cfg)?;
    let mut witnesses = true;
    let mut consistent = true;
    for c in &classes {
        let certified = matches!(c.status, ExtremalityStatus::ExtremeCertified(_));
        consistent &= certified == hull.contains(&c.point);
        if let ExtremalityStatus::NotExtreme(w) = &c.status {
            witnesses &= w.verify(game, &c.point.to_f64(), cfg.tol);
        }
    }
    out.push(check(
        "extremality",
        witnesses && consistent,
        format!("{} points classified", classes.len()),
    ));

    let pareto = ParetoConfig::default();
    if game.num_players() == 2 {
        let mut missing = 0;
        let mut dominated = 0;
        for _ in 0..20 {
            let sigma = random_profile(&mut rng, game.strategy_counts(), 8);
            let r = rational_frontier_check(game, &sigma, Some(&cloud), &pareto)?;
            match r.verdict {
                RationalFrontierVerdict::FoundRationalDominator { .. } => dominated += 1,
                RationalFrontierVerdict::RationalDominatorNotFound => missing += 1,
                RationalFrontierVerdict::Vacuous => {}
            }
        }
        out.push(check(
            "rational-frontier",
            missing == 0,
            format!("{dominated} dominated profiles, {missing} without a rational dominator"),
        ));
    }

    if same_table(game, &fixtures::counterexample_3p()) {
        let mut all = true;
        for _ in 0..200 {
            let phi = random_correlated(&mut rng, game.strategy_counts(), 8);
            let q: Vec<QuadScalar> = phi.weights().iter().cloned().map(QuadScalar::rational).collect();
            let a = counterexample_audit(&q)?;
            all &= !a.dominating && a.failed.is_some();
        }
        out.push(check("audit", all, "200 rational correlated strategies"));
        let nash = strictly_dominant(game, 0, 0) && strictly_dominant(game, 1, 1) && payoff_irrelevant(game, 2);
        out.push(check("equilibrium", nash, "strictly dominant a11, a22; player 3 indifferent"));
        let v = PayoffVector::from_i64(&[0, 0, -1]);
        let r = pareto_membership_region(game, &v, None, RegionKind::Cooperative, &pareto)?;
        out.push(check(
            "cooperative-dominator",
            r.verdict.is_dominated(),
            format!("(0,0,-1) {}", r.verdict.label()),
        ));
    }

    if same_table(game, &fixtures::tangent()) {
        let seq: Vec<MixedProfile> = (1..=12)
            .map(|t| {
                let e = ratio(1, 1 << t);
                MixedProfile(vec![
                    MixedStrategy::new(vec![rational::int(1) - &e, e.clone()]).expect("distribution"),
                    MixedStrategy::new(vec![e.clone(), rational::int(1) - &e]).expect("distribution"),
                ])
            })
            .collect();
        let r = tangent_sequence_check(
            game,
            &seq,
            &PayoffVector::from_i64(&[-2, 2]),
            Some(&cloud),
            &TangentConfig::default(),
            &pareto,
        );
        let passed = matches!(&r, Ok(rep) if rep.conclusion_holds);
        out.push(check("tangent", passed, "12-term sequence toward (-2,2)"));
    }
    Ok(out)
}
