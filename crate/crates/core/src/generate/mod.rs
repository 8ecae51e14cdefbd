//! Game families: worked fixtures, a cycle game without individually
//! stable outcomes, hardness-reduction constructions, and seeded random
//! instances.

mod fixtures;
mod random;
mod reductions;

pub use fixtures::{cycle_no_is, fixture, FIXTURES};
pub use random::{random_instance, PreferenceKind, RandomKind};
pub use reductions::{
    reduce_clique_enemy_star, reduce_clique_ins_star, reduce_clique_irins_tree,
    reduce_clique_scr_star, reduce_maxcut_star, unique_clique_family, WeightedGraph,
};

use std::collections::HashSet;

use crate::Rational;

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// `base`, primed until it clashes with none of `taken`.
fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}
