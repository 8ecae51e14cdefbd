//! Existence and construction of NS, INS and IR-INS partitions on forests.
//!
//! For a connected coalition `X` with top node `i`, `f(X)` says whether the
//! subtree of `i` has a stable partition containing `X` as a block. Only
//! edges between `X` and a child `j` of `X` cross blocks, and a move across
//! such an edge is made either by `j` leaving its block for `X` or by the
//! parent of `j` leaving `X` for `j`'s block. So `f(X)` holds iff `X` is
//! individually rational and every child `j` has some block `X_j` (top `j`,
//! `f(X_j)` true) against which neither crossing move is a deviation.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::graph::RootedTree;
use crate::scalar::Utility;
use crate::stability::{is_deviation, DeviationClass, Partition, StabilityConcept};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpEntry {
    pub coalition: Coalition,
    pub stable: bool,
    /// For a stable entry, one compatible `(child, entry index)` per child
    /// of the coalition.
    pub witnesses: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct DpTable {
    pub tree: RootedTree,
    pub concept: StabilityConcept,
    /// Per node, every connected coalition with that node on top, in
    /// canonical order.
    pub entries: Vec<Vec<DpEntry>>,
}

fn deviation_class(concept: StabilityConcept) -> Result<DeviationClass> {
    match concept {
        StabilityConcept::NS => Ok(DeviationClass::NS),
        StabilityConcept::INS => Ok(DeviationClass::INS),
        StabilityConcept::IrIns => Ok(DeviationClass::IrIns),
        other => Err(Error::BadParameter(format!(
            "the dynamic program handles ns, ins and ir-ins, not {other}"
        ))),
    }
}

pub fn dp_table<T: Utility>(
    game: &HedonicGame<T>,
    concept: StabilityConcept,
    root: Option<usize>,
    subset_cap: usize,
) -> Result<DpTable> {
    let class = deviation_class(concept)?;
    let graph = game.graph();
    let tree = RootedTree::forest(graph, root)?;
    let n = game.len();
    let mut entries: Vec<Vec<DpEntry>> = vec![Vec::new(); n];
    let mut examined = 0usize;

    for i in tree.bottom_up() {
        let subtree = tree.subtree(i);
        let sets = graph
            .connected_subsets(Some(i), Some(&subtree), subset_cap.saturating_sub(examined))
            .map_err(|_| Error::CapExceeded { limit: subset_cap })?;
        examined += sets.len();

        let mut row = Vec::with_capacity(sets.len());
        for x in sets {
            let mut witnesses = Vec::new();
            let mut stable = game.individually_rational(&x);
            if stable {
                for j in tree.children_of_set(&x) {
                    let parent = tree.parent(j).expect("child has a parent");
                    let found = entries[j].iter().position(|e| {
                        e.stable
                            && !is_deviation(game, class, j, &e.coalition, Some(&x))
                            && !is_deviation(game, class, parent, &x, Some(&e.coalition))
                    });
                    match found {
                        Some(idx) => witnesses.push((j, idx)),
                        None => {
                            stable = false;
                            witnesses.clear();
                            break;
                        }
                    }
                }
            }
            row.push(DpEntry {
                coalition: x,
                stable,
                witnesses,
            });
        }
        entries[i] = row;
    }
    Ok(DpTable {
        tree,
        concept,
        entries,
    })
}

impl DpTable {
    /// `f(X)`, or `None` when `X` is not a connected coalition of the
    /// forest.
    pub fn value(&self, x: &Coalition) -> Option<bool> {
        if x.iter().any(|p| p >= self.entries.len()) {
            return None;
        }
        let top = self.tree.top(x);
        self.entries[top]
            .binary_search_by(|e| e.coalition.cmp(x))
            .ok()
            .map(|idx| self.entries[top][idx].stable)
    }

    /// Every component root has at least one stable coalition.
    pub fn exists(&self) -> bool {
        self.tree
            .roots()
            .iter()
            .all(|&r| self.entries[r].iter().any(|e| e.stable))
    }

    /// The partition obtained from the first stable coalition of every root
    /// and the stored witnesses below it.
    pub fn partition(&self) -> Option<Partition> {
        let mut blocks = Vec::new();
        let mut stack = Vec::new();
        for &r in self.tree.roots() {
            stack.push((r, self.entries[r].iter().position(|e| e.stable)?));
        }
        while let Some((node, idx)) = stack.pop() {
            let entry = &self.entries[node][idx];
            stack.extend(entry.witnesses.iter().copied());
            blocks.push(entry.coalition.clone());
        }
        Some(Partition::new(self.entries.len(), blocks).expect("witnesses tile the forest"))
    }
}

/// A feasible `concept`-stable partition of a forest game, or `None` if the
/// game has none. `concept` is one of NS, INS and IR-INS.
pub fn solve_dp<T: Utility>(
    game: &HedonicGame<T>,
    concept: StabilityConcept,
    root: Option<usize>,
    subset_cap: usize,
) -> Result<Option<Partition>> {
    Ok(dp_table(game, concept, root, subset_cap)?.partition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fixture;
    use crate::graph::DEFAULT_SUBSET_CAP;
    use crate::stability::verify;

    fn co(v: &[usize]) -> Coalition {
        Coalition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn parliament3() {
        let g = fixture("parliament3").unwrap();
        for concept in [StabilityConcept::NS, StabilityConcept::INS] {
            assert_eq!(
                solve_dp(&g, concept, None, DEFAULT_SUBSET_CAP).unwrap(),
                None
            );
        }
        let p = solve_dp(&g, StabilityConcept::IrIns, None, DEFAULT_SUBSET_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(p, Partition::new(3, vec![co(&[0, 1]), co(&[2])]).unwrap());
        assert!(verify(&g, &p, StabilityConcept::IrIns, DEFAULT_SUBSET_CAP)
            .unwrap()
            .is_stable());
    }

    #[test]
    fn parliament5_has_no_ir_ins_partition() {
        let g = fixture("parliament5").unwrap();
        for concept in StabilityConcept::ALL
            .into_iter()
            .filter(|c| deviation_class(*c).is_ok())
        {
            assert_eq!(
                solve_dp(&g, concept, None, DEFAULT_SUBSET_CAP).unwrap(),
                None
            );
        }
        let table = dp_table(&g, StabilityConcept::IrIns, Some(2), DEFAULT_SUBSET_CAP).unwrap();
        assert!(!table.exists());
    }

    #[test]
    fn value_lookup() {
        let g = fixture("parliament3").unwrap();
        let table = dp_table(&g, StabilityConcept::IrIns, None, DEFAULT_SUBSET_CAP).unwrap();
        // {l,c,r}: l strictly prefers being alone
        assert_eq!(table.value(&co(&[0, 1, 2])), Some(false));
        assert_eq!(table.value(&co(&[0, 1])), Some(true));
        assert_eq!(table.value(&co(&[0, 2])), None);
    }

    #[test]
    fn rejects_other_concepts() {
        let g = fixture("parliament3").unwrap();
        assert!(matches!(
            solve_dp(&g, StabilityConcept::CR, None, DEFAULT_SUBSET_CAP),
            Err(Error::BadParameter(_))
        ));
    }
}
