mod common;

use common::{forest_game, naive_stable};
use hedonic_core::{
    enumerate_feasible_partitions, random_instance, verify, witness_holds, EnumerationBudget,
    PreferenceKind, RandomKind, StabilityConcept, Verdict, DEFAULT_SUBSET_CAP,
};
use proptest::prelude::*;

fn check_all_partitions(game: &hedonic_core::Game) -> Result<(), TestCaseError> {
    let partitions =
        enumerate_feasible_partitions(game.graph(), &EnumerationBudget::default()).unwrap();
    for pi in &partitions {
        for concept in StabilityConcept::ALL {
            let verdict = verify(game, pi, concept, DEFAULT_SUBSET_CAP).unwrap();
            prop_assert_eq!(
                verdict.is_stable(),
                naive_stable(game, pi, concept),
                "{} on {:?}",
                concept,
                pi
            );
            if let Verdict::Unstable(w) = &verdict {
                prop_assert!(witness_holds(game, pi, concept, w));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn verifier_agrees_with_definitions_on_forests(seed in any::<u64>()) {
        check_all_partitions(&forest_game(seed, 6))?;
    }

    #[test]
    fn verifier_agrees_with_definitions_on_cycles(seed in any::<u64>(), n in 3usize..6) {
        let prefs = [PreferenceKind::Additive, PreferenceKind::Explicit][(seed % 2) as usize];
        check_all_partitions(&random_instance(RandomKind::Cycle, n, prefs, seed).unwrap())?;
    }
}
