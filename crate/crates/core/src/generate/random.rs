use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{ExplicitPreferences, UtilityMatrix};
use crate::graph::{Graph, DEFAULT_SUBSET_CAP};
use crate::Game;

use super::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RandomKind {
    Tree,
    Path,
    Star,
    Cycle,
    /// A random tree with each edge dropped with probability 1/3.
    Forest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreferenceKind {
    Additive,
    SymmetricAdditive,
    /// Symmetric, every pair either friends (1) or enemies (-n).
    Enemy,
    /// A random weak order over each player's feasible coalitions, possibly
    /// leaving the worst tier implicit.
    Explicit,
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(RandomKind::Tree),
            "path" => Ok(RandomKind::Path),
            "star" => Ok(RandomKind::Star),
            "cycle" => Ok(RandomKind::Cycle),
            "forest" => Ok(RandomKind::Forest),
            other => Err(Error::BadParameter(format!("unknown graph kind {other:?}"))),
        }
    }
}

impl FromStr for PreferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "additive" => Ok(PreferenceKind::Additive),
            "symmetric-additive" | "symmetric_additive" | "symmetric" => {
                Ok(PreferenceKind::SymmetricAdditive)
            }
            "enemy" => Ok(PreferenceKind::Enemy),
            "explicit" => Ok(PreferenceKind::Explicit),
            other => Err(Error::BadParameter(format!(
                "unknown preference kind {other:?}"
            ))),
        }
    }
}

fn random_edges(kind: RandomKind, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges = match kind {
        RandomKind::Tree | RandomKind::Forest => {
            let mut edges: Vec<(usize, usize)> = (1..n)
                .map(|k| (order[rng.gen_range(0..k)], order[k]))
                .collect();
            if kind == RandomKind::Forest {
                edges.retain(|_| rng.gen_range(0..3) != 0);
            }
            edges
        }
        RandomKind::Path => order.windows(2).map(|w| (w[0], w[1])).collect(),
        RandomKind::Star => (1..n).map(|k| (order[0], order[k])).collect(),
        RandomKind::Cycle => {
            if n < 3 {
                return Err(Error::BadParameter(format!(
                    "a cycle needs 3 players, got {n}"
                )));
            }
            (0..n).map(|k| (order[k], order[(k + 1) % n])).collect()
        }
    };
    Ok(edges)
}

fn random_tiers(graph: &Graph, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Vec<Coalition>>>> {
    let mut all = Vec::with_capacity(graph.len());
    for i in graph.players() {
        let mut feasible = graph.connected_subsets(Some(i), None, DEFAULT_SUBSET_CAP)?;
        feasible.shuffle(rng);
        let levels = rng.gen_range(1..=feasible.len());
        let mut tiers: Vec<Vec<Coalition>> = vec![Vec::new(); levels];
        // every tier gets one coalition, the rest land anywhere
        for (k, x) in feasible.into_iter().enumerate() {
            let slot = if k < levels {
                k
            } else {
                rng.gen_range(0..levels)
            };
            tiers[slot].push(x);
        }
        if levels > 1 && rng.gen_bool(0.5) {
            tiers.pop();
        }
        all.push(tiers);
    }
    Ok(all)
}

/// A seeded random game; identical parameters give identical games.
/// Additive utilities are integers in `[-9, 9]`.
pub fn random_instance(
    kind: RandomKind,
    n: usize,
    preferences: PreferenceKind,
    seed: u64,
) -> Result<Game> {
    if n == 0 {
        return Err(Error::BadParameter(
            "a game needs at least one player".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_edges(kind, n, &mut rng)?;
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let graph = Graph::new(names, &edges)?;

    match preferences {
        PreferenceKind::Explicit => {
            let tiers = random_tiers(&graph, &mut rng)?;
            let explicit = ExplicitPreferences::new(&graph, tiers)?;
            Game::explicit(graph, explicit)
        }
        PreferenceKind::Additive => {
            let mut u = UtilityMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        u.set(i, j, int(rng.gen_range(-9..=9)));
                    }
                }
            }
            Game::additive(graph, u)
        }
        PreferenceKind::SymmetricAdditive | PreferenceKind::Enemy => {
            let enemy = -i64::try_from(n).expect("size fits in i64");
            let mut u = UtilityMatrix::zeros(n);
            for i in 0..n {
                for j in i + 1..n {
                    let value = if preferences == PreferenceKind::Enemy {
                        if rng.gen_bool(0.5) {
                            1
                        } else {
                            enemy
                        }
                    } else {
                        rng.gen_range(-9..=9)
                    };
                    u.set_mutual(i, j, int(value));
                }
            }
            u.mark_symmetric()?;
            Game::additive(graph, u)
        }
    }
}
