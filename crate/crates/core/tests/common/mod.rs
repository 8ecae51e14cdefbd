#![allow(dead_code)]

use std::collections::VecDeque;

use hedonic_core::{
    random_instance, Coalition, Comparison, Game, Partition, PreferenceKind, RandomKind,
    StabilityConcept,
};

pub fn co(v: &[usize]) -> Coalition {
    Coalition::new(v.iter().copied()).unwrap()
}

fn connected(game: &Game, members: &[usize]) -> bool {
    let inside = |v: usize| members.contains(&v);
    let mut seen = vec![members[0]];
    let mut queue = VecDeque::from([members[0]]);
    while let Some(v) = queue.pop_front() {
        for &u in game.graph().neighbors(v) {
            if inside(u) && !seen.contains(&u) {
                seen.push(u);
                queue.push_back(u);
            }
        }
    }
    seen.len() == members.len()
}

fn cmp(game: &Game, i: usize, x: &Coalition, y: &Coalition) -> Comparison {
    game.compare(i, x, y).unwrap()
}

fn ge(game: &Game, i: usize, x: &Coalition, y: &Coalition) -> bool {
    cmp(game, i, x, y) != Comparison::Worse
}

fn gt(game: &Game, i: usize, x: &Coalition, y: &Coalition) -> bool {
    cmp(game, i, x, y) == Comparison::Better
}

fn is_ir(game: &Game, x: &Coalition) -> bool {
    x.iter().all(|j| ge(game, j, x, &Coalition::singleton(j)))
}

/// Straight from the definitions: is `pi` stable under `concept`?
pub fn naive_stable(game: &Game, pi: &Partition, concept: StabilityConcept) -> bool {
    let n = game.len();
    let graph = game.graph();
    match concept {
        StabilityConcept::IR => pi.blocks().iter().all(|b| is_ir(game, b)),
        StabilityConcept::CR | StabilityConcept::SCR => {
            if concept == StabilityConcept::SCR && !pi.blocks().iter().all(|b| is_ir(game, b)) {
                // a singleton blocks weakly
                return false;
            }
            for mask in 1u32..1 << n {
                let members: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).collect();
                if !connected(game, &members) {
                    continue;
                }
                let x = co(&members);
                let blocks = if concept == StabilityConcept::CR {
                    members.iter().all(|&i| gt(game, i, &x, pi.block_of(i)))
                } else {
                    members.iter().all(|&i| ge(game, i, &x, pi.block_of(i)))
                        && members.iter().any(|&i| gt(game, i, &x, pi.block_of(i)))
                };
                if blocks {
                    return false;
                }
            }
            true
        }
        _ => {
            for i in 0..n {
                let cur = pi.block_of(i);
                let alone = Coalition::singleton(i);
                if cur.len() > 1 && gt(game, i, &alone, cur) {
                    return false;
                }
                for target in pi.blocks() {
                    if target.contains(i) {
                        continue;
                    }
                    if !target.iter().any(|j| graph.has_edge(i, j)) {
                        continue;
                    }
                    let joined = target.with(i);
                    if !gt(game, i, &joined, cur) {
                        continue;
                    }
                    let everyone = target.iter().all(|j| ge(game, j, &joined, target));
                    let neighbours = target
                        .iter()
                        .filter(|&j| graph.has_edge(i, j))
                        .all(|j| ge(game, j, &joined, target));
                    let rational = target
                        .iter()
                        .all(|j| ge(game, j, &joined, &Coalition::singleton(j)));
                    let deviates = match concept {
                        StabilityConcept::NS => true,
                        StabilityConcept::IS => everyone,
                        StabilityConcept::INS => neighbours,
                        StabilityConcept::IrIns => neighbours && rational,
                        _ => unreachable!(),
                    };
                    if deviates {
                        return false;
                    }
                }
            }
            true
        }
    }
}

pub const ACYCLIC: [RandomKind; 4] = [
    RandomKind::Tree,
    RandomKind::Path,
    RandomKind::Star,
    RandomKind::Forest,
];

pub const PREFS: [PreferenceKind; 4] = [
    PreferenceKind::Additive,
    PreferenceKind::SymmetricAdditive,
    PreferenceKind::Enemy,
    PreferenceKind::Explicit,
];

/// A deterministic mix of acyclic games indexed by `seed`.
pub fn forest_game(seed: u64, max_n: usize) -> Game {
    let kind = ACYCLIC[(seed % 4) as usize];
    let prefs = PREFS[(seed / 4 % 4) as usize];
    let n = 1 + (seed / 16) as usize % max_n;
    random_instance(kind, n, prefs, seed).unwrap()
}
