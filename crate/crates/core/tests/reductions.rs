use std::collections::BTreeSet;

use hedonic_core::exhaustive::{first_stable_exhaustive, maximum_cliques};
use hedonic_core::{
    cycle_no_is, find_stable_exhaustive, local_maxcut_bruteforce, max_clique_bruteforce,
    reduce_clique_enemy_star, reduce_clique_ins_star, reduce_clique_irins_tree,
    reduce_clique_scr_star, reduce_maxcut_star, solve_core, unique_clique_family, Cut,
    EnumerationBudget, Graph, StabilityConcept, WeightedGraph, DEFAULT_SUBSET_CAP,
};

fn graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new((0..n).map(|i| format!("v{i}")).collect(), &edges).unwrap()
    })
}

fn k3() -> Graph {
    Graph::new(vec!["x", "y", "z"], &[(0, 1), (1, 2), (0, 2)]).unwrap()
}

fn exists(game: &hedonic_core::Game, concept: StabilityConcept) -> bool {
    first_stable_exhaustive(game, concept, &EnumerationBudget::default())
        .unwrap()
        .is_some()
}

#[test]
fn enemy_star_core_blocks_are_maximum_cliques() {
    let budget = EnumerationBudget::default();
    for n in 1..=4 {
        for g in graphs(n) {
            let game = reduce_clique_enemy_star(&g);
            let cliques: BTreeSet<Vec<usize>> =
                maximum_cliques(&g, 16).unwrap().into_iter().collect();
            let centre_blocks: BTreeSet<Vec<usize>> =
                find_stable_exhaustive(&game, StabilityConcept::CR, &budget)
                    .unwrap()
                    .iter()
                    .map(|p| {
                        p.block_of(0)
                            .iter()
                            .filter(|&v| v != 0)
                            .map(|v| v - 1)
                            .collect()
                    })
                    .collect();
            assert_eq!(centre_blocks, cliques, "{:?}", g.edges());

            let solved = solve_core(&game, None, DEFAULT_SUBSET_CAP).unwrap();
            let block: Vec<usize> = solved
                .block_of(0)
                .iter()
                .filter(|&v| v != 0)
                .map(|v| v - 1)
                .collect();
            assert!(cliques.contains(&block));

            let unique = max_clique_bruteforce(&g, 16).unwrap().unique;
            assert_eq!(
                exists(&game, StabilityConcept::SCR),
                unique,
                "{:?}",
                g.edges()
            );
        }
    }
}

#[test]
fn clique_threshold_reductions() {
    for n in 1..=4 {
        for g in graphs(n) {
            let omega = max_clique_bruteforce(&g, 16).unwrap().size;
            for t in 2..=4 {
                let yes = omega >= t;
                let scr = reduce_clique_scr_star(&g, t).unwrap();
                assert_eq!(
                    exists(&scr, StabilityConcept::SCR),
                    yes,
                    "scr {:?} t={t}",
                    g.edges()
                );
                let ins = reduce_clique_ins_star(&g, t).unwrap();
                assert_eq!(
                    exists(&ins, StabilityConcept::INS),
                    yes,
                    "ins {:?} t={t}",
                    g.edges()
                );
                assert_eq!(
                    exists(&ins, StabilityConcept::NS),
                    yes,
                    "ns {:?} t={t}",
                    g.edges()
                );
                let tree = reduce_clique_irins_tree(&g, t).unwrap();
                assert_eq!(
                    exists(&tree, StabilityConcept::IrIns),
                    yes,
                    "irins {:?} t={t}",
                    g.edges()
                );
            }
        }
    }
}

#[test]
fn published_reduction_examples() {
    let scr = reduce_clique_scr_star(&k3(), 3).unwrap();
    let stable =
        find_stable_exhaustive(&scr, StabilityConcept::SCR, &EnumerationBudget::default()).unwrap();
    // {a}, {c}, {b,x,y,z}
    assert_eq!(stable.len(), 1);
    assert_eq!(stable[0].block_of(1).len(), 4);
    assert!(!exists(
        &reduce_clique_scr_star(&k3(), 4).unwrap(),
        StabilityConcept::SCR
    ));
    let edge = Graph::new(vec!["x", "y"], &[(0, 1)]).unwrap();
    assert!(exists(
        &reduce_clique_irins_tree(&edge, 2).unwrap(),
        StabilityConcept::IrIns
    ));
    let isolated = Graph::new(vec!["x", "y"], &[]).unwrap();
    assert!(!exists(
        &reduce_clique_scr_star(&isolated, 2).unwrap(),
        StabilityConcept::SCR
    ));
    let cr = find_stable_exhaustive(
        &reduce_clique_enemy_star(&isolated),
        StabilityConcept::CR,
        &EnumerationBudget::default(),
    )
    .unwrap();
    assert!(cr.iter().all(|p| p.block_of(0).len() == 2));
}

fn induced_cuts(wg: &WeightedGraph) -> BTreeSet<Cut> {
    let game = reduce_maxcut_star(wg);
    find_stable_exhaustive(&game, StabilityConcept::INS, &EnumerationBudget::default())
        .unwrap()
        .iter()
        .map(|p| {
            Cut::new(
                wg.len(),
                p.block_of(0).iter().filter(|&v| v != 0).map(|v| v - 1),
            )
        })
        .collect()
}

#[test]
fn maxcut_star_maps_onto_local_max_cuts() {
    for n in 1..=4 {
        for (k, g) in graphs(n).enumerate() {
            let edges: Vec<(usize, usize, u64)> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| (u, v, ((k + 3 * e) % 4) as u64))
                .collect();
            let wg = WeightedGraph::new(g.names().to_vec(), &edges).unwrap();
            let cuts: BTreeSet<Cut> = local_maxcut_bruteforce(&wg, 20)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(induced_cuts(&wg), cuts, "{edges:?}");
        }
    }
    let tri = WeightedGraph::new(vec!["a", "b", "c"], &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    assert!(induced_cuts(&tri)
        .iter()
        .all(|c| tri.cut_weight(&c.indicator(3)) == 2));
}

#[test]
fn unique_clique_family_examples() {
    let h3 = unique_clique_family(&k3(), 3).unwrap();
    assert!(!max_clique_bruteforce(&h3, 16).unwrap().unique);
    let h4 = unique_clique_family(&k3(), 4).unwrap();
    let r = max_clique_bruteforce(&h4, 16).unwrap();
    assert!(r.unique && r.size == 4);
    let single = Graph::new(vec!["x"], &[]).unwrap();
    assert!(
        !max_clique_bruteforce(&unique_clique_family(&single, 1).unwrap(), 16)
            .unwrap()
            .unique
    );
}

#[test]
fn cycles_without_individual_stability() {
    for k in 3..=6 {
        let game = cycle_no_is(k).unwrap();
        assert!(!exists(&game, StabilityConcept::IS), "k={k}");
    }
}
