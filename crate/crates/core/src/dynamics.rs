//! Better-response dynamics: players move one at a time along NS or INS
//! deviations until nobody wants to, or a step limit is hit.
//!
//! In symmetric additive games every such move raises the sum of all
//! players' values for their own coalitions, so the dynamics converge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::scalar::Utility;
use crate::stability::{is_deviation, DeviationClass, Partition, StabilityConcept};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeviationRule {
    NS,
    INS,
}

impl DeviationRule {
    pub fn concept(self) -> StabilityConcept {
        match self {
            DeviationRule::NS => StabilityConcept::NS,
            DeviationRule::INS => StabilityConcept::INS,
        }
    }

    fn class(self) -> DeviationClass {
        match self {
            DeviationRule::NS => DeviationClass::NS,
            DeviationRule::INS => DeviationClass::INS,
        }
    }
}

/// Which deviation to apply when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Lowest player index, then leaving alone, then target blocks in
    /// canonical order.
    First,
    /// Uniform among all available deviations, seeded.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<T> {
    pub player: usize,
    pub source: Coalition,
    /// `None` when the player leaves to be alone.
    pub target: Option<Coalition>,
    /// Potentials are recorded for additive games only.
    pub potential_before: Option<T>,
    pub potential_after: Option<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicsOutcome {
    Converged,
    StepLimit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsTrace<T> {
    pub steps: Vec<Step<T>>,
    pub terminal: Partition,
    pub outcome: DynamicsOutcome,
}

/// `sum_i sum_{j in π(i)} U(i,j)`.
pub fn potential<T: Utility>(game: &HedonicGame<T>, partition: &Partition) -> Result<T> {
    if partition.players() != game.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} players, game has {}",
            partition.players(),
            game.len()
        )));
    }
    let u = game.utilities().ok_or(Error::NotAdditive)?;
    let values: Vec<T> = partition
        .blocks()
        .iter()
        .flat_map(|x| x.iter().map(move |i| u.value_of(i, x)))
        .collect();
    Ok(T::total(&values))
}

fn deviations<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    class: DeviationClass,
    first_only: bool,
) -> Vec<(usize, Option<Coalition>)> {
    let graph = game.graph();
    let mut found = Vec::new();
    for i in graph.players() {
        let current = partition.block_of(i);
        if current.len() > 1 && is_deviation(game, class, i, current, None) {
            found.push((i, None));
            if first_only {
                return found;
            }
        }
        for target in partition.canonical_blocks() {
            if target.contains(i) || !graph.neighbors(i).iter().any(|&j| target.contains(j)) {
                continue;
            }
            if is_deviation(game, class, i, current, Some(target)) {
                found.push((i, Some(target.clone())));
                if first_only {
                    return found;
                }
            }
        }
    }
    found
}

/// Runs the dynamics from `start` for at most `max_steps` moves. A block
/// left disconnected by a departure splits into its connected parts.
pub fn run_dynamics<T: Utility>(
    game: &HedonicGame<T>,
    start: &Partition,
    rule: DeviationRule,
    max_steps: usize,
    selection: Selection,
) -> Result<DynamicsTrace<T>> {
    if start.players() != game.len() || !start.is_feasible(game.graph()) {
        return Err(Error::InfeasibleStart);
    }
    let mut rng = match selection {
        Selection::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Selection::First => None,
    };
    let additive = game.utilities().is_some();
    let mut current = start.clone();
    let mut steps = Vec::new();
    loop {
        let mut options = deviations(game, &current, rule.class(), rng.is_none());
        if options.is_empty() {
            return Ok(DynamicsTrace {
                steps,
                terminal: current,
                outcome: DynamicsOutcome::Converged,
            });
        }
        if steps.len() == max_steps {
            return Ok(DynamicsTrace {
                steps,
                terminal: current,
                outcome: DynamicsOutcome::StepLimit,
            });
        }
        let pick = match rng.as_mut() {
            Some(r) => r.gen_range(0..options.len()),
            None => 0,
        };
        let (player, target) = options.swap_remove(pick);
        let next = current.apply_move(game.graph(), player, target.as_ref());
        let (before, after) = if additive {
            (
                Some(potential(game, &current)?),
                Some(potential(game, &next)?),
            )
        } else {
            (None, None)
        };
        steps.push(Step {
            player,
            source: current.block_of(player).clone(),
            target,
            potential_before: before,
            potential_after: after,
        });
        current = next;
    }
}
