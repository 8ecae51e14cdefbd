//! Brute-force ground truth at desk scale: every feasible partition, every
//! stable one, maximum cliques and local max cuts.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::generate::WeightedGraph;
use crate::graph::Graph;
use crate::scalar::Utility;
use crate::stability::{verify, Partition, StabilityConcept};

pub const DEFAULT_CLIQUE_LIMIT: usize = 16;
pub const DEFAULT_CUT_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_partitions: usize,
    /// Also the cap handed to every connected-subset enumeration.
    pub max_subsets: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_partitions: 1_000_000,
            max_subsets: 1_000_000,
        }
    }
}

fn budget_error(err: Error, budget: &EnumerationBudget) -> Error {
    match err {
        Error::CapExceeded { .. } => Error::BudgetExceeded {
            limit: budget.max_subsets,
        },
        other => other,
    }
}

/// Calls `visit` on every feasible partition of `graph` exactly once,
/// stopping early if it breaks. Returns the number of partitions visited.
pub fn for_each_feasible_partition<F>(
    graph: &Graph,
    budget: &EnumerationBudget,
    mut visit: F,
) -> Result<usize>
where
    F: FnMut(&Partition) -> ControlFlow<()>,
{
    let mut state = Walk {
        graph,
        budget,
        assigned: vec![false; graph.len()],
        blocks: Vec::new(),
        visited: 0,
    };
    let _ = state.descend(&mut visit)?;
    Ok(state.visited)
}

struct Walk<'a> {
    graph: &'a Graph,
    budget: &'a EnumerationBudget,
    assigned: Vec<bool>,
    blocks: Vec<Coalition>,
    visited: usize,
}

impl Walk<'_> {
    fn descend<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Partition) -> ControlFlow<()>,
    {
        let Some(first) = self.assigned.iter().position(|&a| !a) else {
            self.visited += 1;
            if self.visited > self.budget.max_partitions {
                return Err(Error::BudgetExceeded {
                    limit: self.budget.max_partitions,
                });
            }
            let partition = Partition::new(self.graph.len(), self.blocks.clone())
                .expect("blocks cover every player once");
            return Ok(visit(&partition));
        };
        let free = Coalition::new(
            self.assigned
                .iter()
                .enumerate()
                .filter(|(_, &a)| !a)
                .map(|(p, _)| p),
        )
        .expect("at least one free player");
        let options = self
            .graph
            .connected_subsets(Some(first), Some(&free), self.budget.max_subsets)
            .map_err(|e| budget_error(e, self.budget))?;
        for block in options {
            for p in block.iter() {
                self.assigned[p] = true;
            }
            self.blocks.push(block);
            let flow = self.descend(visit)?;
            let block = self.blocks.pop().expect("pushed above");
            for p in block.iter() {
                self.assigned[p] = false;
            }
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

pub fn enumerate_feasible_partitions(
    graph: &Graph,
    budget: &EnumerationBudget,
) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_feasible_partition(graph, budget, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Every feasible partition that is `concept`-stable, in enumeration order.
pub fn find_stable_exhaustive<T: Utility>(
    game: &HedonicGame<T>,
    concept: StabilityConcept,
    budget: &EnumerationBudget,
) -> Result<Vec<Partition>> {
    let all = enumerate_feasible_partitions(game.graph(), budget)?;
    let verdicts: Vec<bool> = all
        .par_iter()
        .map(|p| verify(game, p, concept, budget.max_subsets).map(|v| v.is_stable()))
        .collect::<Result<_>>()
        .map_err(|e| budget_error(e, budget))?;
    Ok(all
        .into_iter()
        .zip(verdicts)
        .filter_map(|(p, stable)| stable.then_some(p))
        .collect())
}

/// The first `concept`-stable feasible partition in enumeration order.
pub fn first_stable_exhaustive<T: Utility>(
    game: &HedonicGame<T>,
    concept: StabilityConcept,
    budget: &EnumerationBudget,
) -> Result<Option<Partition>> {
    let mut found = None;
    let mut failure = None;
    for_each_feasible_partition(game.graph(), budget, |p| {
        match verify(game, p, concept, budget.max_subsets) {
            Ok(v) if v.is_stable() => found = Some(p.clone()),
            Ok(_) => return ControlFlow::Continue(()),
            Err(e) => failure = Some(e),
        }
        ControlFlow::Break(())
    })?;
    match failure {
        Some(e) => Err(budget_error(e, budget)),
        None => Ok(found),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueReport {
    pub size: usize,
    /// The lexicographically first maximum clique.
    pub clique: Vec<usize>,
    pub unique: bool,
}

fn adjacency_masks(graph: &Graph) -> Vec<u64> {
    graph
        .players()
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Every maximum clique of `graph`, by subset enumeration. A graph with no
/// vertices has the empty clique.
pub fn maximum_cliques(graph: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = graph.len();
    if n > limit.min(63) {
        return Err(Error::BudgetExceeded { limit });
    }
    let adj = adjacency_masks(graph);
    let mut best = 0u32;
    let mut found: Vec<u64> = vec![0];
    for mask in 1u64..1 << n {
        let size = mask.count_ones();
        if size < best {
            continue;
        }
        let is_clique = members(mask)
            .into_iter()
            .all(|v| (mask & !(1 << v)) & !adj[v] == 0);
        if !is_clique {
            continue;
        }
        if size > best {
            best = size;
            found.clear();
        }
        found.push(mask);
    }
    let mut cliques: Vec<Vec<usize>> = found.into_iter().map(members).collect();
    cliques.sort();
    Ok(cliques)
}

pub fn max_clique_bruteforce(graph: &Graph, limit: usize) -> Result<CliqueReport> {
    let cliques = maximum_cliques(graph, limit)?;
    Ok(CliqueReport {
        size: cliques[0].len(),
        clique: cliques[0].clone(),
        unique: cliques.len() == 1,
    })
}

/// One side of a bipartition, normalized so that node 0 is not in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    side: Vec<usize>,
}

impl Cut {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, side: I) -> Self {
        let mut mark = vec![false; n];
        for v in side {
            mark[v] = true;
        }
        if n > 0 && mark[0] {
            mark.iter_mut().for_each(|m| *m = !*m);
        }
        Cut {
            side: (0..n).filter(|&v| mark[v]).collect(),
        }
    }

    /// The side without node 0.
    pub fn side(&self) -> &[usize] {
        &self.side
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut mark = vec![false; n];
        for &v in &self.side {
            mark[v] = true;
        }
        mark
    }
}

/// Is no single-node move able to strictly increase the cut weight?
pub fn is_local_max_cut(wg: &WeightedGraph, side: &[bool]) -> bool {
    let n = wg.len();
    let mut same = vec![0u64; n];
    let mut across = vec![0u64; n];
    for (u, v, w) in wg.weighted_edges() {
        let bucket = if side[u] == side[v] {
            &mut same
        } else {
            &mut across
        };
        bucket[u] += w;
        bucket[v] += w;
    }
    (0..n).all(|v| same[v] <= across[v])
}

/// All locally optimal cuts, each unordered bipartition listed once.
pub fn local_maxcut_bruteforce(wg: &WeightedGraph, limit: usize) -> Result<Vec<Cut>> {
    let n = wg.len();
    if n > limit.min(63) {
        return Err(Error::BudgetExceeded { limit });
    }
    let mut cuts = Vec::new();
    if n == 0 {
        return Ok(cuts);
    }
    // node 0 stays on the unmarked side
    for mask in (0u64..1 << n).step_by(2) {
        let side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if is_local_max_cut(wg, &side) {
            cuts.push(Cut::new(n, members(mask)));
        }
    }
    cuts.sort();
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_no_is, fixture};

    fn co(v: &[usize]) -> Coalition {
        Coalition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let budget = EnumerationBudget::default();
        let path = Graph::path(vec!["l", "c", "r"]).unwrap();
        let all = enumerate_feasible_partitions(&path, &budget).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.contains(&Partition::new(3, vec![co(&[0, 1]), co(&[2])]).unwrap()));
        let single = Graph::new(vec!["x"], &[]).unwrap();
        assert_eq!(
            enumerate_feasible_partitions(&single, &budget)
                .unwrap()
                .len(),
            1
        );
        let star = Graph::new(vec!["s", "a", "b", "c"], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            enumerate_feasible_partitions(&star, &budget).unwrap().len(),
            8
        );
        let long = Graph::path((0..7).map(|i| i.to_string()).collect()).unwrap();
        assert_eq!(
            enumerate_feasible_partitions(&long, &budget).unwrap().len(),
            64
        );
    }

    #[test]
    fn budget_is_loud() {
        let long = Graph::path((0..7).map(|i| i.to_string()).collect()).unwrap();
        let budget = EnumerationBudget {
            max_partitions: 10,
            max_subsets: 100,
        };
        assert_eq!(
            enumerate_feasible_partitions(&long, &budget).unwrap_err(),
            Error::BudgetExceeded { limit: 10 }
        );
    }

    #[test]
    fn parliament3_by_exhaustion() {
        let g = fixture("parliament3").unwrap();
        let budget = EnumerationBudget::default();
        assert!(find_stable_exhaustive(&g, StabilityConcept::NS, &budget)
            .unwrap()
            .is_empty());
        let pi1 = Partition::new(3, vec![co(&[0, 1]), co(&[2])]).unwrap();
        assert!(find_stable_exhaustive(&g, StabilityConcept::CR, &budget)
            .unwrap()
            .contains(&pi1));
        assert_eq!(
            first_stable_exhaustive(&g, StabilityConcept::IrIns, &budget).unwrap(),
            Some(pi1)
        );
        let cycle = cycle_no_is(3).unwrap();
        assert!(
            find_stable_exhaustive(&cycle, StabilityConcept::IS, &budget)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn cliques() {
        let k3 = Graph::new(vec!["a", "b", "c"], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = max_clique_bruteforce(&k3, 16).unwrap();
        assert_eq!(
            (r.size, r.clique.clone(), r.unique),
            (3, vec![0, 1, 2], true)
        );
        let c4 = Graph::new(vec!["a", "b", "c", "d"], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = max_clique_bruteforce(&c4, 16).unwrap();
        assert_eq!((r.size, r.unique), (2, false));
        let empty = Graph::new(vec!["a", "b", "c"], &[]).unwrap();
        let r = max_clique_bruteforce(&empty, 16).unwrap();
        assert_eq!((r.size, r.unique), (1, false));
    }

    #[test]
    fn cuts() {
        let tri =
            WeightedGraph::new(vec!["a", "b", "c"], &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let cuts = local_maxcut_bruteforce(&tri, 20).unwrap();
        assert_eq!(cuts.len(), 3);
        assert!(cuts.iter().all(|c| tri.cut_weight(&c.indicator(3)) == 2));
        let edge = WeightedGraph::new(vec!["a", "b"], &[(0, 1, 5)]).unwrap();
        assert_eq!(
            local_maxcut_bruteforce(&edge, 20).unwrap(),
            vec![Cut::new(2, [1])]
        );
        let zero = WeightedGraph::new(vec!["a", "b", "c"], &[(0, 1, 0)]).unwrap();
        assert_eq!(local_maxcut_bruteforce(&zero, 20).unwrap().len(), 4);
        assert_eq!(Cut::new(3, [0, 2]), Cut::new(3, [1]));
    }
}
