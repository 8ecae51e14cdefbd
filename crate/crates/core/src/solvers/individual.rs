//! Individually stable partitions of forests.
//!
//! Bottom-up over a rooted orientation, every node `i` settles a tentative
//! block `B(i)` inside its subtree: it may attach itself to the block of a
//! child whose members all welcome it, picks its favourite such option (or
//! staying alone), and then lets children of the block join as long as the
//! joiner strictly gains and no current member loses.

use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{Comparison, HedonicGame};
use crate::graph::RootedTree;
use crate::scalar::Utility;
use crate::stability::Partition;

/// A tentative block grew: `player` went from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockChange {
    pub player: usize,
    pub from: Coalition,
    pub to: Coalition,
}

/// Per-node solver state after the sweep.
#[derive(Clone, Debug)]
pub struct IsSolverState {
    pub tree: RootedTree,
    /// `B(i)`, the block node `i` settled on within its subtree.
    pub best: Vec<Coalition>,
    /// `C(i)`, children whose block would accept `i`.
    pub admissible: Vec<Vec<usize>>,
}

impl IsSolverState {
    /// `π^(i)`: `B(i)` plus the sub-partitions hanging below it.
    pub fn subtree_partition(&self, node: usize) -> Vec<Coalition> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(i) = stack.pop() {
            let block = &self.best[i];
            stack.extend(self.tree.children_of_set(block).into_iter().rev());
            out.push(block.clone());
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IsReport {
    pub partition: Partition,
    pub state: IsSolverState,
    pub events: Vec<BlockChange>,
}

/// An individually stable feasible partition of a forest game.
///
/// `root` roots its own component; the others are rooted at their lowest
/// index.
pub fn solve_is<T: Utility>(game: &HedonicGame<T>, root: Option<usize>) -> Result<Partition> {
    Ok(solve_is_report(game, root)?.partition)
}

pub fn solve_is_report<T: Utility>(game: &HedonicGame<T>, root: Option<usize>) -> Result<IsReport> {
    let tree = RootedTree::forest(game.graph(), root)?;
    let n = game.len();
    let mut best: Vec<Coalition> = (0..n).map(Coalition::singleton).collect();
    let mut admissible = vec![Vec::new(); n];
    let mut events = Vec::new();

    for i in tree.bottom_up() {
        let alone = Coalition::singleton(i);

        let admitted: Vec<usize> = tree
            .children(i)
            .iter()
            .copied()
            .filter(|&k| game.m_compare(&best[k].with(i), &best[k]))
            .collect();

        let mut chosen = alone.clone();
        let mut chosen_child = None;
        for &k in &admitted {
            let option = best[k].with(i);
            let better = match game.query(i, &option, &chosen) {
                Comparison::Better => true,
                Comparison::Equal => option.tie_break(&chosen).is_lt(),
                Comparison::Worse => false,
            };
            if better {
                chosen = option;
                chosen_child = Some(k);
            }
        }
        if let Some(k) = chosen_child {
            for m in best[k].iter() {
                events.push(BlockChange {
                    player: m,
                    from: best[k].clone(),
                    to: chosen.clone(),
                });
            }
            events.push(BlockChange {
                player: i,
                from: alone,
                to: chosen.clone(),
            });
        }

        loop {
            let joiner = tree.children_of_set(&chosen).into_iter().find(|&j| {
                let grown = chosen.with(j);
                game.strictly_prefers(j, &grown, &best[j]) && game.m_compare(&grown, &chosen)
            });
            let Some(j) = joiner else { break };
            let grown = chosen.with(j);
            for m in chosen.iter() {
                events.push(BlockChange {
                    player: m,
                    from: chosen.clone(),
                    to: grown.clone(),
                });
            }
            events.push(BlockChange {
                player: j,
                from: best[j].clone(),
                to: grown.clone(),
            });
            chosen = grown;
        }

        best[i] = chosen;
        admissible[i] = admitted;
    }

    let state = IsSolverState {
        tree,
        best,
        admissible,
    };
    let blocks: Vec<Coalition> = state
        .tree
        .roots()
        .iter()
        .flat_map(|&r| state.subtree_partition(r))
        .collect();
    let partition = Partition::new(n, blocks).expect("sweep yields a partition");
    Ok(IsReport {
        partition,
        state,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::game::UtilityMatrix;
    use crate::generate::fixture;
    use crate::graph::Graph;

    fn co(v: &[usize]) -> Coalition {
        Coalition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn parliament3_from_center_and_from_end() {
        let g = fixture("parliament3").unwrap();
        let pi1 = Partition::new(3, vec![co(&[0, 1]), co(&[2])]).unwrap();
        assert_eq!(solve_is(&g, Some(1)).unwrap(), pi1);
        assert_eq!(solve_is(&g, None).unwrap(), pi1);
    }

    #[test]
    fn single_player() {
        let graph = Graph::new(vec!["x"], &[]).unwrap();
        let g = HedonicGame::additive(graph, UtilityMatrix::<i64>::zeros(1)).unwrap();
        assert_eq!(solve_is(&g, None).unwrap(), Partition::singletons(1));
    }

    #[test]
    fn mutual_friends_pair_up() {
        let graph = Graph::path(vec!["a", "b"]).unwrap();
        let u = UtilityMatrix::from_entries(2, [(0, 1, 1i64), (1, 0, 1)], false).unwrap();
        let g = HedonicGame::additive(graph, u).unwrap();
        for root in [0, 1] {
            assert_eq!(
                solve_is(&g, Some(root)).unwrap(),
                Partition::new(2, vec![co(&[0, 1])]).unwrap()
            );
        }
    }

    #[test]
    fn cyclic_graph_rejected() {
        let graph = Graph::new(vec!["a", "b", "c"], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let g = HedonicGame::additive(graph, UtilityMatrix::<i64>::zeros(3)).unwrap();
        assert_eq!(solve_is(&g, None).unwrap_err(), Error::NotAForest);
    }

    #[test]
    fn report_exposes_state() {
        let g = fixture("parliament3").unwrap();
        let report = solve_is_report(&g, Some(1)).unwrap();
        assert_eq!(report.state.best[1], co(&[0, 1]));
        assert_eq!(report.state.admissible[1], vec![0, 2]);
        assert_eq!(report.state.subtree_partition(1).len(), 2);
    }
}
