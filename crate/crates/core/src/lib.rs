//! Hedonic games on communication graphs.
//!
//! Players form coalitions, but only connected ones: a coalition is
//! feasible when it induces a connected subgraph of the communication
//! graph. This crate models such games (additively separable utilities or
//! explicit rankings), checks partitions against the usual stability
//! notions, builds stable partitions on forests and stars, and provides
//! brute-force oracles, instance generators and deviation dynamics.
//!
//! The algorithms are generic over the utility scalar through [`Utility`];
//! [`Rational`] is the exact type used by the generators and file formats.
//!
//! ```
//! use hedonic_core::{fixture, solve_is, verify, StabilityConcept, DEFAULT_SUBSET_CAP};
//!
//! let game = fixture("parliament3").unwrap();
//! let partition = solve_is(&game, None).unwrap();
//! assert!(verify(&game, &partition, StabilityConcept::IS, DEFAULT_SUBSET_CAP)
//!     .unwrap()
//!     .is_stable());
//! ```

pub mod coalition;
pub mod dynamics;
pub mod error;
pub mod exhaustive;
pub mod game;
pub mod generate;
pub mod graph;
pub mod scalar;
pub mod solvers;
pub mod stability;

pub use coalition::Coalition;
pub use dynamics::{
    potential, run_dynamics, DeviationRule, DynamicsOutcome, DynamicsTrace, Selection, Step,
};
pub use error::{Error, Result};
pub use exhaustive::{
    enumerate_feasible_partitions, find_stable_exhaustive, first_stable_exhaustive,
    local_maxcut_bruteforce, max_clique_bruteforce, Cut, EnumerationBudget,
};
pub use game::{Comparison, ExplicitPreferences, HedonicGame, Preferences, UtilityMatrix};
pub use generate::{
    cycle_no_is, fixture, random_instance, reduce_clique_enemy_star, reduce_clique_ins_star,
    reduce_clique_irins_tree, reduce_clique_scr_star, reduce_maxcut_star, unique_clique_family,
    PreferenceKind, RandomKind, WeightedGraph,
};
pub use graph::{Graph, RootedTree, Topology, DEFAULT_SUBSET_CAP};
pub use scalar::Utility;
pub use solvers::{
    solve_core, solve_core_is, solve_dp, solve_is, star_greedy_enemy_ns, star_greedy_ir_ins,
};
pub use stability::{
    deviation_kind, verify, witness_holds, BlockKind, DeviationClass, DeviationClasses, Partition,
    StabilityConcept, Verdict, Witness,
};

/// Exact rational utilities.
pub type Rational = num_rational::Ratio<i64>;
/// A game with exact rational utilities.
pub type Game = HedonicGame<Rational>;
/// A utility matrix over [`Rational`].
pub type Utilities = UtilityMatrix<Rational>;
/// A game with floating-point utilities.
pub type FloatGame = HedonicGame<f64>;
