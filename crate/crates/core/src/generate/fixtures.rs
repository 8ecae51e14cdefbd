use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{ExplicitPreferences, UtilityMatrix};
use crate::graph::{Graph, DEFAULT_SUBSET_CAP};
use crate::Game;

use super::int;

pub const FIXTURES: [&str; 3] = ["parliament3", "parliament3_enemy_variant", "parliament5"];

fn path_game(names: &[&str], entries: &[(usize, usize, i64)], symmetric: bool) -> Game {
    let graph = Graph::path(names.to_vec()).expect("fixture graph");
    let utilities = UtilityMatrix::from_entries(
        names.len(),
        entries.iter().map(|&(i, j, v)| (i, j, int(v))),
        symmetric,
    )
    .expect("fixture utilities");
    Game::additive(graph, utilities).expect("fixture game")
}

/// The three-party and five-party parliament games on a path.
pub fn fixture(name: &str) -> Result<Game> {
    match name {
        // l - c - r
        "parliament3" => Ok(path_game(
            &["l", "c", "r"],
            &[(0, 1, 1), (0, 2, -2), (1, 0, 2), (2, 1, 2)],
            false,
        )),
        "parliament3_enemy_variant" => Ok(path_game(
            &["l", "c", "r"],
            &[(0, 1, 1), (1, 2, 1), (0, 2, -3)],
            true,
        )),
        // el - l - c - r - er
        "parliament5" => Ok(path_game(
            &["el", "l", "c", "r", "er"],
            &[
                (0, 1, -1),
                (0, 2, 2),
                (1, 3, -10),
                (2, 0, -2),
                (2, 1, 2),
                (2, 3, 2),
                (2, 4, -2),
                (3, 1, -10),
                (4, 2, 2),
                (4, 3, -1),
            ],
            false,
        )),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

/// A game on the `k`-cycle with no individually stable feasible partition.
///
/// With `d` the smallest number not dividing `k`, player `i_h` ranks the
/// arcs of at most `d` players through her that also contain `i_{h+1}`
/// above those that do not, and everything else below both.
pub fn cycle_no_is(k: usize) -> Result<Game> {
    if k < 3 {
        return Err(Error::BadParameter(format!("cycle length {k} is below 3")));
    }
    let d = (2..)
        .find(|d| !k.is_multiple_of(*d))
        .expect("some number does not divide k");
    let names: Vec<String> = (1..=k).map(|h| format!("i{h}")).collect();
    let edges: Vec<(usize, usize)> = (0..k).map(|h| (h, (h + 1) % k)).collect();
    let graph = Graph::new(names, &edges)?;

    let mut tiers = Vec::with_capacity(k);
    for h in 0..k {
        let next = (h + 1) % k;
        let near: Vec<Coalition> = graph
            .connected_subsets(Some(h), None, DEFAULT_SUBSET_CAP)?
            .into_iter()
            .filter(|x| x.len() <= d)
            .collect();
        let (with_next, without): (Vec<_>, Vec<_>) =
            near.into_iter().partition(|x| x.contains(next));
        tiers.push(vec![with_next, without]);
    }
    let preferences = ExplicitPreferences::new(&graph, tiers)?;
    Game::explicit(graph, preferences)
}
