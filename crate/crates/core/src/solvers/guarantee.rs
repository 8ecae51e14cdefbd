//! Core stable partitions of forests via guarantee levels.
//!
//! Bottom-up, node `i` looks at every connected coalition that has `i` as
//! its top node and in which every other member does at least as well as
//! her own guarantee; `i`'s guarantee `G(i)` is her favourite among those.
//! Top-down, each root's guarantee becomes a block and the construction
//! repeats below it.
//!
//! Every player then ends up weakly above her guarantee, and a coalition
//! that strongly blocked would have been a candidate of its top node,
//! preferred by it to that node's guarantee; so no such coalition exists.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Comparison, HedonicGame};
use crate::graph::RootedTree;
use crate::scalar::Utility;
use crate::stability::{verify, Partition, StabilityConcept};

#[derive(Clone, Debug)]
pub struct GuaranteeTable {
    pub tree: RootedTree,
    /// `G(i)` per node.
    pub guarantee: Vec<Coalition>,
    /// Connected coalitions examined while building the table.
    pub examined: usize,
}

pub fn guarantee_levels<T: Utility>(
    game: &HedonicGame<T>,
    root: Option<usize>,
    subset_cap: usize,
) -> Result<GuaranteeTable> {
    let graph = game.graph();
    let tree = RootedTree::forest(graph, root)?;
    let n = game.len();
    let mut guarantee: Vec<Coalition> = (0..n).map(Coalition::singleton).collect();
    let mut examined = 0usize;

    for i in tree.bottom_up() {
        let remaining = subset_cap.saturating_sub(examined);
        let subtree = tree.subtree(i);
        let candidates = graph
            .connected_subsets(Some(i), Some(&subtree), remaining)
            .map_err(|_| Error::CapExceeded { limit: subset_cap })?;
        examined += candidates.len();

        let mut chosen: Option<Coalition> = None;
        for x in candidates {
            let acceptable = x
                .iter()
                .filter(|&j| j != i)
                .all(|j| game.weakly_prefers(j, &x, &guarantee[j]));
            if !acceptable {
                continue;
            }
            let better = match &chosen {
                None => true,
                Some(c) => match game.query(i, &x, c) {
                    Comparison::Better => true,
                    Comparison::Equal => x.tie_break(c).is_lt(),
                    Comparison::Worse => false,
                },
            };
            if better {
                chosen = Some(x);
            }
        }
        // {i} always qualifies, so something was chosen
        guarantee[i] = chosen.expect("singleton is a candidate");
    }
    Ok(GuaranteeTable {
        tree,
        guarantee,
        examined,
    })
}

impl GuaranteeTable {
    pub fn assemble(&self) -> Partition {
        let mut blocks = Vec::new();
        let mut stack: Vec<usize> = self.tree.roots().to_vec();
        while let Some(top) = stack.pop() {
            let block = &self.guarantee[top];
            stack.extend(self.tree.children_of_set(block));
            blocks.push(block.clone());
        }
        Partition::new(self.guarantee.len(), blocks).expect("guarantees tile the forest")
    }
}

/// A core stable feasible partition of a forest game.
pub fn solve_core<T: Utility>(
    game: &HedonicGame<T>,
    root: Option<usize>,
    subset_cap: usize,
) -> Result<Partition> {
    let partition = guarantee_levels(game, root, subset_cap)?.assemble();
    if cfg!(debug_assertions) {
        let calls = game.oracle_calls();
        let verdict = verify(game, &partition, StabilityConcept::CR, subset_cap)?;
        debug_assert!(verdict.is_stable(), "core solver produced {verdict:?}");
        game.restore_oracle_calls(calls);
    }
    Ok(partition)
}

/// A feasible partition of a forest game that is both core stable and
/// individually stable: the core of the game whose preferences are refined
/// to strict orders favouring supersets among indifferent coalitions.
pub fn solve_core_is<T: Utility>(
    game: &HedonicGame<T>,
    root: Option<usize>,
    subset_cap: usize,
) -> Result<Partition> {
    if !game.graph().is_forest() {
        return Err(Error::NotAForest);
    }
    let refined = game.refine(subset_cap)?;
    solve_core(&refined, root, subset_cap)
}
