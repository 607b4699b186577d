//! Built-in games used throughout the tests, benches and the CLI.

use crate::game::{Game, PayoffVector};
use crate::numeric::quad::{QuadScalar, DEFAULT_DISCRIMINANT};

fn table(counts: Vec<usize>, rows: &[&[i64]]) -> Game {
    Game::from_i64(counts, rows).expect("fixture tables are well formed")
}

/// Two players, four distinct pure payoffs, all of them hull vertices.
pub fn example1() -> Game {
    table(vec![2, 2], &[&[0, 1], &[5, 2], &[2, 5], &[1, 0]])
}

/// 2x3 game whose region has a notch at `(2,2)` and a mixable point `(0,1)`.
pub fn example2() -> Game {
    table(
        vec![2, 3],
        &[&[0, 2], &[0, 1], &[0, 0], &[3, 0], &[3, 2], &[2, 2]],
    )
}

/// `(0,0)` is mixable: row `a11` pays zero against every column.
pub fn g1() -> Game {
    table(vec![2, 2], &[&[0, 0], &[0, 0], &[-1, -1], &[1, -1]])
}

/// `(0,0)` is reachable only by a pure profile, yet lies inside a segment.
pub fn g2() -> Game {
    table(vec![2, 2], &[&[-1, 0], &[0, -1], &[0, 0], &[1, 0]])
}

/// Coordination game: `(4,4)` is extreme for mixed play but interior to the hull.
pub fn example4() -> Game {
    table(
        vec![3, 3],
        &[
            &[4, 4],
            &[0, 0],
            &[0, 0],
            &[0, 0],
            &[8, 2],
            &[0, 0],
            &[0, 0],
            &[0, 0],
            &[2, 8],
        ],
    )
}

/// Three players over `Q(sqrt 2)`; both slices of player 3 are identical.
pub fn counterexample_3p() -> Game {
    let s2 = QuadScalar::sqrt(2).expect("2 is squarefree");
    let q = QuadScalar::int;
    let slice = [
        vec![s2.clone(), q(-1), q(1)],
        vec![q(0), q(0), q(-1)],
        vec![q(0), q(0), q(-1)],
        vec![q(-2), s2, q(1)],
    ];
    // flat order: (r1, r2, r3) with r3 fastest
    let mut payoffs = Vec::with_capacity(8);
    for cell in &slice {
        payoffs.push(PayoffVector(cell.clone()));
        payoffs.push(PayoffVector(cell.clone()));
    }
    Game::new(vec![2, 2, 2], payoffs, DEFAULT_DISCRIMINANT).expect("fixture is well formed")
}

/// 2x2 game whose boundary curve meets `(-2,2)` with a horizontal tangent
/// while `(0,2)` dominates it.
pub fn tangent() -> Game {
    table(vec![2, 2], &[&[0, 2], &[-2, 2], &[-2, 0], &[0, 2]])
}

/// Every built-in fixture with its file stem.
pub fn all() -> Vec<(&'static str, Game)> {
    vec![
        ("ex1", example1()),
        ("ex2", example2()),
        ("g1", g1()),
        ("g2", g2()),
        ("ex4", example4()),
        ("counterexample3p", counterexample_3p()),
        ("tangent", tangent()),
    ]
}

pub fn by_name(name: &str) -> Option<Game> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}
