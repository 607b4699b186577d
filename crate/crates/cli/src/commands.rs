use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use payreg_core::efficiency::{
    pareto_frontier_finite, pareto_membership_region, rational_frontier_check, welfare_max, ParetoConfig,
    RationalFrontierVerdict, RegionKind,
};
use payreg_core::extremality::{classify_extreme_points, mixability, ExtremalityConfig};
use payreg_core::game::{Game, PayoffVector};
use payreg_core::geometry::directions::{rational_direction, unit_directions};
use payreg_core::geometry::{
    hull_vertices_of, pure_payoff_set, sample_region, support_value, supporting_hyperplane_check, SampleCloud,
    SampleConfig,
};
use payreg_core::io::report::{self, Provenance};
use payreg_core::io::{parse_game, plot_svg, render, PlotSpec};
use payreg_core::numeric::rational::{parse_rational, Rational};
use payreg_core::random::random_profile;
use payreg_core::{Error, Result};

use crate::{suite, Global};

pub struct Outcome {
    pub kind: &'static str,
    pub text: String,
    pub body: Value,
    pub config: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn emit(self, g: &Global) -> Result<bool> {
        print!("{}", self.text);
        if let Some(path) = &g.json {
            let mut config = json!({ "grid": g.grid, "tol": g.tol });
            if let (Value::Object(base), Value::Object(extra)) = (&mut config, self.config) {
                base.extend(extra);
            }
            let doc = report::document(self.kind, &Provenance { seed: g.seed, config }, self.body);
            std::fs::write(path, render(&doc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(self.ok)
    }
}

fn outcome(kind: &'static str, text: String, body: Value) -> Outcome {
    Outcome {
        kind,
        text,
        body,
        config: json!({}),
        ok: true,
    }
}

pub fn sample_config(g: &Global) -> SampleConfig {
    SampleConfig {
        seed: g.seed,
        grid_resolution: g.grid,
        ..SampleConfig::default()
    }
}

pub fn cloud(g: &Global, game: &Game) -> Result<SampleCloud> {
    sample_region(game, &sample_config(g))
}

pub fn extremality_config(g: &Global) -> Result<ExtremalityConfig> {
    if !(g.tol > 0.0) {
        return Err(Error::InvalidTolerance(g.tol));
    }
    let mut cfg = ExtremalityConfig {
        seed: g.seed,
        tol: g.tol,
        ..ExtremalityConfig::default()
    };
    cfg.membership.tol = g.tol;
    cfg.membership.local.seed = g.seed;
    Ok(cfg)
}

fn rationals(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

fn load(path: &Path) -> Result<Game> {
    parse_game(path)
}

pub fn regions(_g: &Global, path: &Path) -> Result<Outcome> {
    let game = load(path)?;
    let set = pure_payoff_set(&game);
    let hull = hull_vertices_of(&set)?;
    let mut text = format!("pure payoff set: {} points, {} hull vertices\n", set.len(), hull.len());
    for p in &set.points {
        let gens: Vec<String> = p.generators.iter().map(|a| names(&game, a)).collect();
        let tag = if hull.contains(&p.payoff) { "  vertex" } else { "" };
        text += &format!("  {}  {}{tag}\n", p.payoff, gens.join(" "));
    }
    Ok(outcome("regions", text, report::regions(&game, &set, &hull)))
}

fn names(game: &Game, a: &payreg_core::game::PureProfile) -> String {
    let n = game.strategy_names();
    let parts: Vec<&str> = a.0.iter().enumerate().map(|(i, &k)| n[i][k].as_str()).collect();
    format!("({})", parts.join(","))
}

pub fn extreme(g: &Global, path: &Path, with_mixability: bool) -> Result<Outcome> {
    let game = load(path)?;
    let cfg = extremality_config(g)?;
    let classes = classify_extreme_points(&game, &cfg)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &classes {
        let mut row = report::classification(&game, c);
        text += &format!("{}  {}", c.point, c.status.label());
        if with_mixability {
            let m = mixability(&game, &c.point, &cfg)?;
            text += &format!("  {}", m.label());
            row["mixability"] = report::mixability(&c.point, &m);
        }
        text.push('\n');
        rows.push(row);
    }
    let mut out = outcome("extreme", text, json!({ "points": rows }));
    out.config = json!({ "directions": cfg.directions, "mixability": with_mixability });
    Ok(out)
}

pub fn hyperplanes(g: &Global, path: &Path, direction: Option<&str>, sweep: Option<usize>) -> Result<Outcome> {
    let game = load(path)?;
    let n = game.num_players();
    let normals: Vec<Vec<Rational>> = match (direction, sweep) {
        (Some(d), _) => vec![rationals(d)?],
        (None, Some(k)) => unit_directions(n, k, g.seed, false)
            .iter()
            .filter_map(|c| rational_direction(c, 10_000))
            .collect(),
        (None, None) => return Err(Error::InvalidInput("pass --direction or --sweep".into())),
    };
    let set = pure_payoff_set(&game);
    let hull = hull_vertices_of(&set)?;
    let cloud = cloud(g, &game)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for c in &normals {
        let s = support_value(&game, c)?;
        let check = supporting_hyperplane_check(&game, &s.hyperplane(c), &hull, Some(&cloud))?;
        ok &= check.supports && check.cloud_ok;
        let dir: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let argmax: Vec<String> = s.argmax.iter().map(|a| names(&game, a)).collect();
        text += &format!(
            "c=({}) alpha={} argmax={} supports={} cloud_ok={}\n",
            dir.join(","),
            s.value,
            argmax.join(" "),
            check.supports,
            check.cloud_ok
        );
        rows.push(report::hyperplane(&game, c, &s, &check));
    }
    let mut out = outcome("hyperplanes", text, json!({ "hyperplanes": rows }));
    out.ok = ok;
    out.config = json!({ "directions": normals.len() });
    Ok(out)
}

pub fn pareto(
    g: &Global,
    path: &Path,
    point: Option<&str>,
    cooperative: bool,
    rational_check: bool,
    samples: usize,
) -> Result<Outcome> {
    let game = load(path)?;
    let cfg = ParetoConfig::default();
    let region = if cooperative {
        RegionKind::Cooperative
    } else {
        RegionKind::Noncooperative
    };
    if rational_check {
        let cloud = cloud(g, &game)?;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let mut rows = Vec::new();
        let mut counts = [0usize; 3];
        for _ in 0..samples {
            let sigma = random_profile(&mut rng, game.strategy_counts(), 8);
            let r = rational_frontier_check(&game, &sigma, Some(&cloud), &cfg)?;
            counts[match r.verdict {
                RationalFrontierVerdict::Vacuous => 0,
                RationalFrontierVerdict::FoundRationalDominator { .. } => 1,
                RationalFrontierVerdict::RationalDominatorNotFound => 2,
            }] += 1;
            let mut row = report::rational_frontier(&game, &r);
            row["sigma"] = report::mixed(&sigma);
            rows.push(row);
        }
        let text = format!(
            "rational check over {samples} profiles: {} vacuous, {} found, {} not found\n",
            counts[0], counts[1], counts[2]
        );
        let mut out = outcome("pareto-rational", text, json!({ "checks": rows }));
        out.ok = counts[2] == 0;
        out.config = json!({ "samples": samples, "maxDenominator": cfg.max_denominator });
        return Ok(out);
    }
    if let Some(p) = point {
        let v = PayoffVector::from_rationals(&rationals(p)?);
        let cloud = match region {
            RegionKind::Noncooperative => Some(cloud(g, &game)?),
            RegionKind::Cooperative => None,
        };
        let r = pareto_membership_region(&game, &v, cloud.as_ref(), region, &cfg)?;
        let text = format!("{}  {}\n", v, r.verdict.label());
        return Ok(outcome("pareto", text, report::pareto(&game, &r)));
    }
    let set = pure_payoff_set(&game);
    let points: Vec<PayoffVector> = set.payoffs().cloned().collect();
    let frontier = pareto_frontier_finite(&points)?;
    let mut text = format!("pure Pareto frontier: {} points\n", frontier.members.len());
    for m in &frontier.members {
        text += &format!("  {m}\n");
    }
    for (p, w) in &frontier.excluded {
        text += &format!("  {p} dominated by {w}\n");
    }
    let body = json!({
        "frontier": frontier.members.iter().map(report::vector).collect::<Vec<_>>(),
        "excluded": frontier.excluded.iter().map(|(p, w)| json!({
            "point": report::vector(p),
            "dominator": report::vector(w),
        })).collect::<Vec<_>>(),
    });
    Ok(outcome("pareto-frontier", text, body))
}

pub fn welfare(_g: &Global, path: &Path, weights: &str) -> Result<Outcome> {
    let game = load(path)?;
    let alpha = rationals(weights)?;
    let w = welfare_max(&game, &alpha)?;
    let argmax: Vec<String> = w.argmax.iter().map(|a| names(&game, a)).collect();
    let text = format!("max welfare {} at {}\n", w.value, argmax.join(" "));
    Ok(outcome("welfare", text, report::welfare(&game, &w)))
}

pub fn verify(g: &Global, path: &Path) -> Result<Outcome> {
    let game = load(path)?;
    let checks = suite::run(g, &game)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for c in &checks {
        ok &= c.passed;
        text += &format!("{} {} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        rows.push(json!({ "name": c.name, "passed": c.passed, "detail": c.detail }));
    }
    let mut out = outcome("verify", text, json!({ "checks": rows, "passed": ok }));
    out.ok = ok;
    Ok(out)
}

pub fn plot(g: &Global, path: &Path, out: &Path, with_cloud: bool, width: u32, height: u32) -> Result<Outcome> {
    let game = load(path)?;
    if game.num_players() != 2 {
        return Err(Error::PlanarOnly(game.num_players()));
    }
    let classes = classify_extreme_points(&game, &extremality_config(g)?)?;
    let cloud = if with_cloud { Some(cloud(g, &game)?) } else { None };
    let spec = PlotSpec {
        width,
        height,
        cloud: with_cloud,
        ..PlotSpec::default()
    };
    let svg = plot_svg(&game, cloud.as_ref(), &classes, &spec)?;
    std::fs::write(out, &svg).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let text = format!("wrote {} ({} bytes)\n", out.display(), svg.len());
    let mut o = outcome("plot", text, json!({ "bytes": svg.len() }));
    o.config = json!({ "width": width, "height": height, "cloud": with_cloud });
    Ok(o)
}
