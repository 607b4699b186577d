//! JSON game files.
//!
//! ```json
//! {"players": 2, "strategies": [["T","B"],["L","R"]], "discriminant": 2,
//!  "payoffs": [[[0,1],[5,2]],[[2,5],[1,0]]], "schemaVersion": 1}
//! ```
//!
//! A scalar is a JSON number, a string `"p/q"`, or `{"a": "p/q", "b": "p/q"}`
//! for `a + b*sqrt(d)`.

use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::game::{Game, PayoffVector};
use crate::numeric::quad::{QuadScalar, DEFAULT_DISCRIMINANT};
use crate::numeric::rational::{self, Rational};

pub const SCHEMA_VERSION: u64 = 1;

pub fn parse_game(path: impl AsRef<Path>) -> Result<Game> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_game_str(&text)
}

pub fn parse_game_str(text: &str) -> Result<Game> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let root = doc.as_object().ok_or_else(|| Error::parse("$", "expected an object"))?;
    for key in root.keys() {
        if !matches!(
            key.as_str(),
            "schemaVersion" | "players" | "strategies" | "discriminant" | "payoffs"
        ) {
            return Err(Error::parse(format!("$.{key}"), "unknown field"));
        }
    }
    if let Some(v) = root.get("schemaVersion") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            return Err(Error::parse("$.schemaVersion", format!("unsupported version {v}")));
        }
    }
    let n = root
        .get("players")
        .and_then(Value::as_u64)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::parse("$.players", "expected a positive integer"))? as usize;
    let strategies = root
        .get("strategies")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("$.strategies", "expected an array"))?;
    if strategies.len() != n {
        return Err(Error::parse(
            "$.strategies",
            format!("{} entries for {n} players", strategies.len()),
        ));
    }
    let mut names = Vec::with_capacity(n);
    for (i, s) in strategies.iter().enumerate() {
        let at = format!("$.strategies[{i}]");
        let list = s.as_array().filter(|a| !a.is_empty()).ok_or_else(|| {
            Error::parse(&at, "expected a nonempty array of names")
        })?;
        let mut row = Vec::with_capacity(list.len());
        for (j, name) in list.iter().enumerate() {
            row.push(
                name.as_str()
                    .ok_or_else(|| Error::parse(format!("{at}[{j}]"), "expected a string"))?
                    .to_string(),
            );
        }
        names.push(row);
    }
    let counts: Vec<usize> = names.iter().map(Vec::len).collect();
    let d = match root.get("discriminant") {
        None => DEFAULT_DISCRIMINANT,
        Some(v) => v
            .as_u64()
            .and_then(|d| u32::try_from(d).ok())
            .ok_or_else(|| Error::parse("$.discriminant", "expected a positive integer"))?,
    };
    let payoffs = root.get("payoffs").ok_or_else(|| Error::parse("$.payoffs", "missing"))?;
    let mut table = Vec::new();
    collect_payoffs(payoffs, &counts, d, "$.payoffs".to_string(), &mut table)?;
    Game::with_names(counts, table, d, names).map_err(|e| Error::parse("$", e.to_string()))
}

fn collect_payoffs(v: &Value, counts: &[usize], d: u32, at: String, out: &mut Vec<PayoffVector>) -> Result<()> {
    let arr = v.as_array().ok_or_else(|| Error::parse(&at, "expected an array"))?;
    match counts.split_first() {
        Some((&m, rest)) => {
            if arr.len() != m {
                return Err(Error::parse(&at, format!("expected {m} entries, got {}", arr.len())));
            }
            for (k, child) in arr.iter().enumerate() {
                collect_payoffs(child, rest, d, format!("{at}[{k}]"), out)?;
            }
        }
        None => {
            let mut vec = Vec::with_capacity(arr.len());
            for (k, s) in arr.iter().enumerate() {
                vec.push(parse_scalar(s, d, &format!("{at}[{k}]"))?);
            }
            out.push(PayoffVector(vec));
        }
    }
    Ok(())
}

fn rational_value(v: &Value, at: &str) -> Result<Rational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::parse(at, "expected a number or a \"p/q\" string")),
    };
    rational::parse_rational(&text).map_err(|e| Error::parse(at, e.to_string()))
}

pub fn parse_scalar(v: &Value, d: u32, at: &str) -> Result<QuadScalar> {
    match v {
        Value::Object(obj) => {
            if let Some(k) = obj.keys().find(|k| *k != "a" && *k != "b") {
                return Err(Error::parse(format!("{at}.{k}"), "unknown field"));
            }
            let part = |k: &str| match obj.get(k) {
                Some(x) => rational_value(x, &format!("{at}.{k}")),
                None => Ok(Rational::from_integer(0.into())),
            };
            QuadScalar::new(part("a")?, part("b")?, d).map_err(|e| Error::parse(at, e.to_string()))
        }
        _ => Ok(QuadScalar::rational(rational_value(v, at)?)),
    }
}

fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        Value::Number(r.numer().to_string().parse::<Number>().expect("integer literal"))
    } else {
        Value::String(rational::format_rational(r))
    }
}

/// Integers as numbers, other rationals as `"p/q"`, irrationals as objects.
pub fn scalar_json(x: &QuadScalar) -> Value {
    match x.as_rational() {
        Some(r) => rational_json(r),
        None => {
            let mut obj = Map::new();
            obj.insert("a".into(), Value::String(rational::format_rational(x.a())));
            obj.insert("b".into(), Value::String(rational::format_rational(x.b())));
            Value::Object(obj)
        }
    }
}

pub fn game_json(game: &Game) -> Value {
    fn nest(game: &Game, depth: usize, prefix: usize) -> Value {
        let counts = game.strategy_counts();
        if depth == counts.len() {
            return Value::Array(game.payoff_table()[prefix].0.iter().map(scalar_json).collect());
        }
        Value::Array(
            (0..counts[depth])
                .map(|k| nest(game, depth + 1, prefix * counts[depth] + k))
                .collect(),
        )
    }
    let mut obj = Map::new();
    obj.insert("schemaVersion".into(), Value::from(SCHEMA_VERSION));
    obj.insert("players".into(), Value::from(game.num_players()));
    obj.insert(
        "strategies".into(),
        Value::Array(
            game.strategy_names()
                .iter()
                .map(|row| Value::Array(row.iter().cloned().map(Value::String).collect()))
                .collect(),
        ),
    );
    obj.insert("discriminant".into(), Value::from(game.discriminant()));
    obj.insert("payoffs".into(), nest(game, 0, 0));
    Value::Object(obj)
}

pub fn serialize_game(game: &Game) -> String {
    render(&game_json(game))
}

/// Canonical text: sorted keys, two-space indent, short containers on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out.push('\n');
    out
}

const INLINE_WIDTH: usize = 80;

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let compact = serde_json::to_string(v).expect("values serialize");
    if compact.len() + indent <= INLINE_WIDTH || !matches!(v, Value::Array(_) | Value::Object(_)) {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                render_into(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(key).expect("keys serialize"));
                out.push_str(": ");
                render_into(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
        }
        _ => unreachable!(),
    }
    out.push_str(&"  ".repeat(indent));
    out.push(if matches!(v, Value::Array(_)) { ']' } else { '}' });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numeric::rational::ratio;

    #[test]
    fn round_trips_fixtures() {
        for (_, g) in fixtures::all() {
            let text = serialize_game(&g);
            let back = parse_game_str(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(serialize_game(&back), text);
        }
    }

    #[test]
    fn scalar_forms() {
        let text = r#"{"players": 1, "strategies": [["x", "y", "z"]],
            "payoffs": [["1/3"], [{"a": "0/1", "b": "1/1"}], [0.25]]}"#;
        let g = parse_game_str(text).unwrap();
        let t = g.payoff_table();
        assert_eq!(t[0].0[0], QuadScalar::rational(ratio(1, 3)));
        assert_eq!(t[1].0[0], QuadScalar::sqrt(2).unwrap());
        assert_eq!(t[2].0[0], QuadScalar::rational(ratio(1, 4)));
    }

    fn location(text: &str) -> String {
        match parse_game_str(text) {
            Err(Error::Parse { location, .. }) => location,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        assert_eq!(location("{\n  \"players\": 2,\n  oops\n}"), "line 3, column 3");
        let shape = r#"{"players": 2, "strategies": [["a","b"],["c","d"]],
            "payoffs": [[[0,1],[5,2]],[[2,5]]]}"#;
        assert_eq!(location(shape), "$.payoffs[1]");
        let neg = r#"{"players": 1, "strategies": [["a"]], "payoffs": [["1/-3"]]}"#;
        assert_eq!(location(neg), "$.payoffs[0][0]");
        let zero = r#"{"players": 1, "strategies": [["a"]], "payoffs": [["1/0"]]}"#;
        assert_eq!(location(zero), "$.payoffs[0][0]");
        let len = r#"{"players": 2, "strategies": [["a"],["b"]], "payoffs": [[[1]]]}"#;
        assert_eq!(location(len), "$");
    }
}
