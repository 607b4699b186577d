use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use payreg_core::efficiency::{pareto_dominates, pareto_frontier_finite};
use payreg_core::game::{induced_correlated, recover_mixed, MixedProfile, PayoffVector};
use payreg_core::geometry::{hull_vertices_of, pure_payoff_set, sample_region, support_value, SampleConfig};
use payreg_core::io::{parse_game_str, serialize_game};
use payreg_core::numeric::rational::{int, ratio, to_f64, Rational};
use payreg_core::numeric::separation::{separate_point, verify_convex_combination, Separation};
use payreg_core::numeric::simplex::{LinearProgram, LpOutcome};
use payreg_core::numeric::{QuadScalar, Sign};
use payreg_core::random::{random_game, random_profile};

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn quad() -> impl Strategy<Value = QuadScalar> {
    (rat(), rat()).prop_map(|(a, b)| QuadScalar::new(a, b, 2).unwrap())
}

fn small_vec(n: usize) -> impl Strategy<Value = PayoffVector> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| PayoffVector::from_i64(&v))
}

fn game_seed() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 2usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &QuadScalar::zero(), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), QuadScalar::one());
        }
    }

    #[test]
    fn comparison_agrees_with_floats(x in quad(), y in quad()) {
        let diff = x.to_f64() - y.to_f64();
        let sign = (&x - &y).sign();
        if diff > 1e-9 {
            prop_assert_eq!(sign, Sign::Positive);
        } else if diff < -1e-9 {
            prop_assert_eq!(sign, Sign::Negative);
        }
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
    }

    #[test]
    fn product_distributions_round_trip((seed, n) in game_seed()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game = random_game(&mut rng, n, 4);
        let sigma = random_profile(&mut rng, game.strategy_counts(), 9);
        let phi = induced_correlated(&sigma);
        prop_assert_eq!(recover_mixed(&phi).unwrap(), sigma.clone());
        prop_assert_eq!(game.evaluate_correlated(&phi).unwrap(), game.evaluate_mixed(&sigma).unwrap());
    }

    #[test]
    fn payoffs_are_multilinear((seed, n) in game_seed(), t in rat().prop_map(|r| {
        let r = if r < Rational::zero() { -r } else { r };
        r.clone() / (r + Rational::one())
    })) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game = random_game(&mut rng, n, 3);
        let a = random_profile(&mut rng, game.strategy_counts(), 5);
        let b = random_profile(&mut rng, game.strategy_counts(), 5);
        let i = (seed as usize) % n;
        let mixed = a.with_player(i, a.0[i].mix(&b.0[i], &t));
        let other = a.with_player(i, b.0[i].clone());
        let lhs = game.evaluate_mixed(&mixed).unwrap();
        let ua = game.evaluate_mixed(&a).unwrap();
        let ub = game.evaluate_mixed(&other).unwrap();
        let one_minus = Rational::one() - &t;
        for k in 0..n {
            prop_assert_eq!(&lhs.0[k], &(ua.0[k].scale(&t) + ub.0[k].scale(&one_minus)));
        }
    }

    #[test]
    fn dominance_is_a_strict_partial_order(a in small_vec(3), b in small_vec(3), c in small_vec(3)) {
        prop_assert!(!pareto_dominates(&a, &a).unwrap());
        if pareto_dominates(&a, &b).unwrap() {
            prop_assert!(!pareto_dominates(&b, &a).unwrap());
            if pareto_dominates(&b, &c).unwrap() {
                prop_assert!(pareto_dominates(&a, &c).unwrap());
            }
        }
    }

    #[test]
    fn frontier_is_coherent(points in prop::collection::vec(small_vec(2), 1..20)) {
        let f = pareto_frontier_finite(&points).unwrap();
        for m in &f.members {
            prop_assert!(points.contains(m));
            for other in &points {
                prop_assert!(!pareto_dominates(other, m).unwrap());
            }
        }
        for (p, w) in &f.excluded {
            prop_assert!(f.members.contains(w));
            prop_assert!(pareto_dominates(w, p).unwrap());
        }
    }

    #[test]
    fn separation_is_sound(points in prop::collection::vec(small_vec(2), 2..10)) {
        let coords: Vec<Vec<QuadScalar>> = points.iter().map(|p| p.0.clone()).collect();
        let v = &coords[0];
        let others = &coords[1..];
        match separate_point(v, others).unwrap() {
            Separation::Separated(cert) => prop_assert!(cert.verify(v, others)),
            Separation::Inside { lambda } => prop_assert!(verify_convex_combination(v, others, &lambda)),
        }
    }

    #[test]
    fn lp_solutions_substitute_back(rows in prop::collection::vec(prop::collection::vec(rat(), 4), 1..4),
                                     x0 in prop::collection::vec((0i64..5).prop_map(int), 4),
                                     obj in prop::collection::vec(rat(), 4)) {
        let rhs: Vec<Rational> = rows
            .iter()
            .map(|r| r.iter().zip(&x0).map(|(a, b)| a * b).sum())
            .collect();
        let mut bounded = rows.clone();
        bounded.push(vec![Rational::one(); 4]);
        let mut rhs_b = rhs.clone();
        rhs_b.push(x0.iter().sum());
        let lp = LinearProgram::maximize(bounded, rhs_b, obj.clone());
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, value } => {
                prop_assert!(lp.is_feasible_point(&x));
                let v: Rational = x.iter().zip(&obj).map(|(a, b)| a * b).sum();
                prop_assert_eq!(v.clone(), value);
                let at_x0: Rational = x0.iter().zip(&obj).map(|(a, b)| a * b).sum();
                prop_assert!(v >= at_x0);
            }
            other => prop_assert!(false, "feasible bounded program returned {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn game_files_round_trip((seed, n) in game_seed()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game = random_game(&mut rng, n, 4);
        let text = serialize_game(&game);
        let back = parse_game_str(&text).unwrap();
        prop_assert_eq!(serialize_game(&back), text);
        prop_assert_eq!(back, game);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn regions_are_sandwiched((seed, n) in game_seed()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game = random_game(&mut rng, n, 3);
        let set = pure_payoff_set(&game);
        let hull = hull_vertices_of(&set).unwrap();
        prop_assert!(!hull.is_empty() && hull.verify(&set));
        for v in &hull.vertices {
            prop_assert!(set.find(&v.payoff).is_some());
        }
        let cfg = SampleConfig { seed, grid_resolution: 5, samples_per_round: 500, refinement_rounds: 2, ..SampleConfig::default() };
        let cloud = sample_region(&game, &cfg).unwrap();
        for p in set.float_points() {
            prop_assert!(cloud.payoffs().any(|q| q == p.as_slice()));
        }
        for k in 0..n {
            let mut c = vec![Rational::zero(); n];
            c[k] = Rational::one();
            let s = support_value(&game, &c).unwrap();
            let (m, _) = cloud.max_dot(&c.iter().map(to_f64).collect::<Vec<_>>()).unwrap();
            prop_assert!(m <= s.value.to_f64() + 1e-9);
            let top = game.evaluate_mixed(&MixedProfile::pure(game.strategy_counts(), &s.argmax[0])).unwrap();
            prop_assert_eq!(top.dot(&c), s.value);
        }
    }
}
