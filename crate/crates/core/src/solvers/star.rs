//! Greedy constructions on stars.
//!
//! On a star every non-singleton block contains the center, so a partition
//! is one coalition around the center plus singletons.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::scalar::Utility;
use crate::stability::{is_deviation, DeviationClass, Partition};

fn assemble(n: usize, center_block: Coalition) -> Partition {
    let mut blocks: Vec<Coalition> = (0..n)
        .filter(|&p| !center_block.contains(p))
        .map(Coalition::singleton)
        .collect();
    blocks.push(center_block);
    Partition::new(n, blocks).expect("center block plus singletons")
}

/// An IR-in-neighbor stable partition of a star game.
///
/// Seeds the center's coalition with the center's favourite pair among the
/// leaves that would accept it, provided the center weakly prefers that
/// pair to being alone, and otherwise with the center alone. Then admits,
/// lowest index first, any leaf whose move from its singleton into the
/// coalition is an IR-in-neighbor deviation, until none is left.
pub fn star_greedy_ir_ins<T: Utility>(game: &HedonicGame<T>) -> Result<Partition> {
    let graph = game.graph();
    let s = graph.star_center().ok_or(Error::NotAStar)?;
    let n = game.len();
    let center = Coalition::singleton(s);

    let mut seed: Option<Coalition> = None;
    for j in graph.neighbors(s).iter().copied() {
        let pair = center.with(j);
        if !game.weakly_prefers(j, &pair, &Coalition::singleton(j)) {
            continue;
        }
        if !game.weakly_prefers(s, &pair, &center) {
            continue;
        }
        if seed
            .as_ref()
            .is_none_or(|best| game.strictly_prefers(s, &pair, best))
        {
            seed = Some(pair);
        }
    }

    let mut block = seed.unwrap_or(center);
    loop {
        let joiner = (0..n).find(|&k| {
            !block.contains(k)
                && is_deviation(
                    game,
                    DeviationClass::IrIns,
                    k,
                    &Coalition::singleton(k),
                    Some(&block),
                )
        });
        match joiner {
            Some(k) => block = block.with(k),
            None => break,
        }
    }
    Ok(assemble(n, block))
}

/// A Nash stable partition of a star game with symmetric enemy-oriented
/// utilities: the center together with a greedily grown group of mutual
/// friends.
pub fn star_greedy_enemy_ns<T: Utility>(game: &HedonicGame<T>) -> Result<Partition> {
    let graph = game.graph();
    let s = graph.star_center().ok_or(Error::NotAStar)?;
    let u = game.utilities().ok_or(Error::NotEnemyOriented)?;
    if !u.check_symmetric() || !u.is_enemy_oriented() {
        return Err(Error::NotEnemyOriented);
    }
    let n = game.len();
    let friend = T::one();
    let mut block = Coalition::singleton(s);
    loop {
        let joiner =
            (0..n).find(|&k| !block.contains(k) && block.iter().all(|m| *u.get(k, m) == friend));
        match joiner {
            Some(k) => block = block.with(k),
            None => break,
        }
    }
    Ok(assemble(n, block))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::UtilityMatrix;
    use crate::generate::reduce_clique_enemy_star;
    use crate::graph::{Graph, DEFAULT_SUBSET_CAP};
    use crate::stability::{verify, StabilityConcept};

    fn star(leaves: usize) -> Graph {
        let names: Vec<String> = (0..=leaves).map(|i| format!("p{i}")).collect();
        let edges: Vec<(usize, usize)> = (1..=leaves).map(|j| (0, j)).collect();
        Graph::new(names, &edges).unwrap()
    }

    #[test]
    fn center_hating_everyone_stays_alone() {
        let mut u = UtilityMatrix::<i64>::zeros(4);
        for j in 1..4 {
            u.set(0, j, -1);
            u.set(j, 0, 1);
        }
        let g = HedonicGame::additive(star(3), u).unwrap();
        assert_eq!(star_greedy_ir_ins(&g).unwrap(), Partition::singletons(4));
    }

    #[test]
    fn leaf_rejecting_center_is_not_paired() {
        // the center loves the leaf, the leaf dislikes the center
        let mut u = UtilityMatrix::<i64>::zeros(2);
        u.set(0, 1, 1);
        u.set(1, 0, -1);
        let g = HedonicGame::additive(Graph::path(vec!["s", "j"]).unwrap(), u).unwrap();
        let p = star_greedy_ir_ins(&g).unwrap();
        assert_eq!(p, Partition::singletons(2));
        assert!(verify(&g, &p, StabilityConcept::IrIns, DEFAULT_SUBSET_CAP)
            .unwrap()
            .is_stable());
    }

    #[test]
    fn enemy_star_of_triangle() {
        let k3 = Graph::new(vec!["x", "y", "z"], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let game = reduce_clique_enemy_star(&k3);
        let p = star_greedy_enemy_ns(&game).unwrap();
        let s = game.graph().index_of("s").unwrap();
        assert_eq!(p.block_of(s).len(), 4);
        assert!(verify(&game, &p, StabilityConcept::NS, DEFAULT_SUBSET_CAP)
            .unwrap()
            .is_stable());
        let q = star_greedy_ir_ins(&game).unwrap();
        assert!(
            verify(&game, &q, StabilityConcept::IrIns, DEFAULT_SUBSET_CAP)
                .unwrap()
                .is_stable()
        );
    }

    #[test]
    fn enemy_ns_requires_enemy_utilities() {
        let g = HedonicGame::additive(star(2), UtilityMatrix::<i64>::zeros(3)).unwrap();
        assert_eq!(
            star_greedy_enemy_ns(&g).unwrap_err(),
            Error::NotEnemyOriented
        );
        let path = Graph::path(vec!["a", "b", "c", "d"]).unwrap();
        let g = HedonicGame::additive(path, UtilityMatrix::<i64>::zeros(4)).unwrap();
        assert_eq!(star_greedy_ir_ins(&g).unwrap_err(), Error::NotAStar);
    }
}
