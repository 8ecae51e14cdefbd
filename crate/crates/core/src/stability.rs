//! Partitions, stability concepts, and the verifier that either certifies a
//! partition or hands back a re-checkable witness of instability.

use std::fmt;
use std::str::FromStr;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::graph::Graph;
use crate::scalar::Utility;

/// A disjoint cover of all players by coalitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    // sorted by smallest member
    blocks: Vec<Coalition>,
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(players: usize, blocks: Vec<Coalition>) -> Result<Self> {
        let mut owner = vec![usize::MAX; players];
        let mut blocks = blocks;
        blocks.sort_by_key(Coalition::min_member);
        for (b, block) in blocks.iter().enumerate() {
            for p in block.iter() {
                if p >= players {
                    return Err(Error::InvalidPartition(format!("unknown player {p}")));
                }
                if owner[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "player {p} appears in two blocks"
                    )));
                }
                owner[p] = b;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "player {p} is not covered"
            )));
        }
        Ok(Partition { blocks, owner })
    }

    pub fn singletons(players: usize) -> Self {
        Partition {
            blocks: (0..players).map(Coalition::singleton).collect(),
            owner: (0..players).collect(),
        }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn players(&self) -> usize {
        self.owner.len()
    }

    /// `π(i)`.
    pub fn block_of(&self, player: usize) -> &Coalition {
        &self.blocks[self.owner[player]]
    }

    pub fn contains_block(&self, x: &Coalition) -> bool {
        self.block_of(x.min_member()) == x
    }

    pub fn is_feasible(&self, graph: &Graph) -> bool {
        self.blocks.iter().all(|b| graph.is_connected(b))
    }

    /// Blocks in canonical coalition order.
    pub fn canonical_blocks(&self) -> Vec<&Coalition> {
        let mut v: Vec<&Coalition> = self.blocks.iter().collect();
        v.sort();
        v
    }

    /// Moves `player` into `target` (or alone, for `None`) and splits
    /// whatever is left of her old block into its connected parts.
    pub fn apply_move(&self, graph: &Graph, player: usize, target: Option<&Coalition>) -> Self {
        let source = self.block_of(player);
        let mut blocks: Vec<Coalition> = self
            .blocks
            .iter()
            .filter(|b| *b != source && Some(*b) != target)
            .cloned()
            .collect();
        if let Some(rest) = source.without(player) {
            blocks.extend(graph.connected_parts(&rest));
        }
        blocks.push(match target {
            Some(t) => t.with(player),
            None => Coalition::singleton(player),
        });
        Partition::new(self.players(), blocks).expect("moves keep a partition")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabilityConcept {
    /// Individual rationality.
    IR,
    /// Individual stability.
    IS,
    /// Nash stability.
    NS,
    /// In-neighbor stability.
    INS,
    /// IR-in-neighbor stability.
    IrIns,
    /// Core stability.
    CR,
    /// Strict core stability.
    SCR,
}

impl StabilityConcept {
    pub const ALL: [StabilityConcept; 7] = [
        StabilityConcept::IR,
        StabilityConcept::IS,
        StabilityConcept::NS,
        StabilityConcept::INS,
        StabilityConcept::IrIns,
        StabilityConcept::CR,
        StabilityConcept::SCR,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StabilityConcept::IR => "ir",
            StabilityConcept::IS => "is",
            StabilityConcept::NS => "ns",
            StabilityConcept::INS => "ins",
            StabilityConcept::IrIns => "ir-ins",
            StabilityConcept::CR => "cr",
            StabilityConcept::SCR => "scr",
        }
    }

    fn deviation_class(self) -> Option<DeviationClass> {
        match self {
            StabilityConcept::NS => Some(DeviationClass::NS),
            StabilityConcept::IS => Some(DeviationClass::IS),
            StabilityConcept::INS => Some(DeviationClass::INS),
            StabilityConcept::IrIns => Some(DeviationClass::IrIns),
            _ => None,
        }
    }
}

impl fmt::Display for StabilityConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StabilityConcept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ir" => StabilityConcept::IR,
            "is" => StabilityConcept::IS,
            "ns" => StabilityConcept::NS,
            "ins" => StabilityConcept::INS,
            "ir-ins" | "irins" => StabilityConcept::IrIns,
            "cr" | "core" => StabilityConcept::CR,
            "scr" => StabilityConcept::SCR,
            other => return Err(Error::BadParameter(format!("unknown concept `{other}`"))),
        };
        Ok(c)
    }
}

/// Kinds of unilateral deviation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeviationClass {
    NS,
    IS,
    INS,
    IrIns,
}

impl DeviationClass {
    fn bit(self) -> u8 {
        match self {
            DeviationClass::NS => 1,
            DeviationClass::IS => 2,
            DeviationClass::INS => 4,
            DeviationClass::IrIns => 8,
        }
    }
}

/// Set of [`DeviationClass`]es one move satisfies.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DeviationClasses(u8);

impl DeviationClasses {
    pub fn contains(self, class: DeviationClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    fn insert(&mut self, class: DeviationClass) {
        self.0 |= class.bit();
    }
}

impl fmt::Debug for DeviationClasses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all = [
            DeviationClass::NS,
            DeviationClass::IS,
            DeviationClass::INS,
            DeviationClass::IrIns,
        ];
        f.debug_set()
            .entries(all.iter().filter(|c| self.contains(**c)))
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Strong,
    Weak,
}

/// Evidence that a partition violates a stability concept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `player` profits from joining `target` (`None`: going alone).
    IndividualDeviation {
        player: usize,
        target: Option<Coalition>,
    },
    BlockingCoalition {
        coalition: Coalition,
        kind: BlockKind,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Unstable(Witness),
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Stable => None,
            Verdict::Unstable(w) => Some(w),
        }
    }
}

/// Whether moving `player` from `current` to `target` is a deviation of
/// `class`. The joined coalition must already be known to be feasible.
pub(crate) fn is_deviation<T: Utility>(
    game: &HedonicGame<T>,
    class: DeviationClass,
    player: usize,
    current: &Coalition,
    target: Option<&Coalition>,
) -> bool {
    let joined = match target {
        Some(t) => t.with(player),
        None => Coalition::singleton(player),
    };
    if !game.strictly_prefers(player, &joined, current) {
        return false;
    }
    let Some(target) = target else {
        return true;
    };
    let graph = game.graph();
    match class {
        DeviationClass::NS => true,
        DeviationClass::IS => target
            .iter()
            .all(|j| game.weakly_prefers(j, &joined, target)),
        DeviationClass::INS => in_neighbours_accept(game, graph, player, &joined, target),
        DeviationClass::IrIns => {
            in_neighbours_accept(game, graph, player, &joined, target)
                && target
                    .iter()
                    .all(|j| game.weakly_prefers(j, &joined, &Coalition::singleton(j)))
        }
    }
}

fn in_neighbours_accept<T: Utility>(
    game: &HedonicGame<T>,
    graph: &Graph,
    player: usize,
    joined: &Coalition,
    target: &Coalition,
) -> bool {
    graph
        .neighbors(player)
        .iter()
        .filter(|&&j| target.contains(j))
        .all(|&j| game.weakly_prefers(j, joined, target))
}

/// Every deviation class the move of `player` to `target` belongs to.
pub fn deviation_kind<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    player: usize,
    target: Option<&Coalition>,
) -> Result<DeviationClasses> {
    let mut out = DeviationClasses::default();
    let current = partition.block_of(player);
    if let Some(t) = target {
        if !partition.contains_block(t) {
            return Err(Error::TargetNotInPartition);
        }
        if t == current || !game.graph().is_connected(&t.with(player)) {
            return Ok(out);
        }
    }
    let joined = match target {
        Some(t) => t.with(player),
        None => Coalition::singleton(player),
    };
    if !game.strictly_prefers(player, &joined, current) {
        return Ok(out);
    }
    out.insert(DeviationClass::NS);
    let Some(target) = target else {
        out.insert(DeviationClass::IS);
        out.insert(DeviationClass::INS);
        out.insert(DeviationClass::IrIns);
        return Ok(out);
    };
    if target
        .iter()
        .all(|j| game.weakly_prefers(j, &joined, target))
    {
        out.insert(DeviationClass::IS);
    }
    if in_neighbours_accept(game, game.graph(), player, &joined, target) {
        out.insert(DeviationClass::INS);
        if target
            .iter()
            .all(|j| game.weakly_prefers(j, &joined, &Coalition::singleton(j)))
        {
            out.insert(DeviationClass::IrIns);
        }
    }
    Ok(out)
}

/// Checks `partition` against `concept`.
///
/// Individual concepts scan players by index and, per player, going alone
/// first and then the other blocks in canonical order; the core concepts
/// scan connected coalitions in canonical order. The first violation found
/// is returned, so the answer is a pure function of the inputs.
pub fn verify<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    concept: StabilityConcept,
    subset_cap: usize,
) -> Result<Verdict> {
    let graph = game.graph();
    if partition.players() != graph.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} players, game has {}",
            partition.players(),
            graph.len()
        )));
    }
    if !partition.is_feasible(graph) {
        return Err(Error::InfeasiblePartition);
    }
    match concept {
        StabilityConcept::IR => Ok(verify_ir(game, partition)),
        StabilityConcept::CR => verify_core(game, partition, BlockKind::Strong, subset_cap),
        StabilityConcept::SCR => verify_core(game, partition, BlockKind::Weak, subset_cap),
        _ => {
            let class = concept.deviation_class().expect("individual concept");
            Ok(verify_individual(game, partition, class))
        }
    }
}

fn verify_ir<T: Utility>(game: &HedonicGame<T>, partition: &Partition) -> Verdict {
    for i in game.graph().players() {
        if game.strictly_prefers(i, &Coalition::singleton(i), partition.block_of(i)) {
            return Verdict::Unstable(Witness::IndividualDeviation {
                player: i,
                target: None,
            });
        }
    }
    Verdict::Stable
}

fn verify_individual<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    class: DeviationClass,
) -> Verdict {
    let graph = game.graph();
    let targets = partition.canonical_blocks();
    for i in graph.players() {
        let current = partition.block_of(i);
        if is_deviation(game, class, i, current, None) {
            return Verdict::Unstable(Witness::IndividualDeviation {
                player: i,
                target: None,
            });
        }
        for &t in &targets {
            if t == current || !graph.neighbors(i).iter().any(|&j| t.contains(j)) {
                continue;
            }
            if is_deviation(game, class, i, current, Some(t)) {
                return Verdict::Unstable(Witness::IndividualDeviation {
                    player: i,
                    target: Some(t.clone()),
                });
            }
        }
    }
    Verdict::Stable
}

fn blocks<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    x: &Coalition,
    kind: BlockKind,
) -> bool {
    match kind {
        BlockKind::Strong => x
            .iter()
            .all(|i| game.strictly_prefers(i, x, partition.block_of(i))),
        BlockKind::Weak => {
            let mut strict = false;
            for i in x.iter() {
                match game.query(i, x, partition.block_of(i)) {
                    crate::game::Comparison::Worse => return false,
                    crate::game::Comparison::Better => strict = true,
                    crate::game::Comparison::Equal => {}
                }
            }
            strict
        }
    }
}

fn verify_core<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    kind: BlockKind,
    subset_cap: usize,
) -> Result<Verdict> {
    for x in game.graph().connected_subsets(None, None, subset_cap)? {
        if blocks(game, partition, &x, kind) {
            return Ok(Verdict::Unstable(Witness::BlockingCoalition {
                coalition: x,
                kind,
            }));
        }
    }
    Ok(Verdict::Stable)
}

/// Replays a witness: true iff it still demonstrates a violation of
/// `concept` against `partition`.
pub fn witness_holds<T: Utility>(
    game: &HedonicGame<T>,
    partition: &Partition,
    concept: StabilityConcept,
    witness: &Witness,
) -> bool {
    let graph = game.graph();
    match (concept, witness) {
        (
            StabilityConcept::IR,
            Witness::IndividualDeviation {
                player,
                target: None,
            },
        ) => game.strictly_prefers(
            *player,
            &Coalition::singleton(*player),
            partition.block_of(*player),
        ),
        (
            StabilityConcept::CR | StabilityConcept::SCR,
            Witness::BlockingCoalition { coalition, kind },
        ) => {
            let wanted = if concept == StabilityConcept::CR {
                BlockKind::Strong
            } else {
                BlockKind::Weak
            };
            // a strong block is in particular a weak one
            let kind_ok =
                *kind == wanted || (*kind == BlockKind::Strong && wanted == BlockKind::Weak);
            kind_ok && graph.is_connected(coalition) && blocks(game, partition, coalition, *kind)
        }
        (_, Witness::IndividualDeviation { player, target }) => {
            let Some(class) = concept.deviation_class() else {
                return false;
            };
            deviation_kind(game, partition, *player, target.as_ref())
                .is_ok_and(|k| k.contains(class))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fixture;
    use crate::graph::DEFAULT_SUBSET_CAP;

    const L: usize = 0;
    const C: usize = 1;
    const R: usize = 2;

    fn co(v: &[usize]) -> Coalition {
        Coalition::new(v.iter().copied()).unwrap()
    }

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| co(b)).collect()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![co(&[0, 1])]).is_err());
        assert!(Partition::new(3, vec![co(&[0, 1]), co(&[1, 2])]).is_err());
        assert!(Partition::new(2, vec![co(&[0, 1, 2])]).is_err());
        let p = part(3, &[&[2], &[0, 1]]);
        assert_eq!(p.block_of(1), &co(&[0, 1]));
        assert_eq!(p.blocks()[0], co(&[0, 1]));
    }

    #[test]
    fn r_joining_lc_is_accepted_by_c_only() {
        // c, r's only neighbour in {l,c}, is indifferent; l objects
        let g = fixture("parliament3").unwrap();
        let pi1 = part(3, &[&[L, C], &[R]]);
        let k = deviation_kind(&g, &pi1, R, Some(&co(&[L, C]))).unwrap();
        assert!(k.contains(DeviationClass::NS));
        assert!(!k.contains(DeviationClass::IS));
        assert!(k.contains(DeviationClass::INS));
        assert!(!k.contains(DeviationClass::IrIns));
    }

    #[test]
    fn c_joining_l_is_every_kind() {
        let g = fixture("parliament3").unwrap();
        let pi3 = Partition::singletons(3);
        let k = deviation_kind(&g, &pi3, C, Some(&co(&[L]))).unwrap();
        for class in [
            DeviationClass::NS,
            DeviationClass::IS,
            DeviationClass::INS,
            DeviationClass::IrIns,
        ] {
            assert!(k.contains(class));
        }
    }

    #[test]
    fn infeasible_or_foreign_targets() {
        let g = fixture("parliament3").unwrap();
        let pi3 = Partition::singletons(3);
        assert!(deviation_kind(&g, &pi3, L, Some(&co(&[R])))
            .unwrap()
            .is_empty());
        assert_eq!(
            deviation_kind(&g, &pi3, L, Some(&co(&[C, R]))),
            Err(Error::TargetNotInPartition)
        );
        assert!(deviation_kind(&g, &pi3, L, Some(&co(&[L])))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn parliament3_verdicts() {
        let g = fixture("parliament3").unwrap();
        let pi1 = part(3, &[&[L, C], &[R]]);
        let cap = DEFAULT_SUBSET_CAP;
        assert!(verify(&g, &pi1, StabilityConcept::CR, cap)
            .unwrap()
            .is_stable());
        assert!(verify(&g, &pi1, StabilityConcept::IS, cap)
            .unwrap()
            .is_stable());
        assert!(verify(&g, &pi1, StabilityConcept::IrIns, cap)
            .unwrap()
            .is_stable());
        assert_eq!(
            verify(&g, &pi1, StabilityConcept::NS, cap).unwrap(),
            Verdict::Unstable(Witness::IndividualDeviation {
                player: R,
                target: Some(co(&[L, C]))
            })
        );
        let bad = part(3, &[&[L, C, R]]);
        assert_eq!(
            verify(&g, &bad, StabilityConcept::IR, cap).unwrap(),
            Verdict::Unstable(Witness::IndividualDeviation {
                player: L,
                target: None
            })
        );
    }

    #[test]
    fn enemy_variant_strict_core_witness() {
        let g = fixture("parliament3_enemy_variant").unwrap();
        let pi1 = part(3, &[&[L, C], &[R]]);
        assert_eq!(
            verify(&g, &pi1, StabilityConcept::SCR, DEFAULT_SUBSET_CAP).unwrap(),
            Verdict::Unstable(Witness::BlockingCoalition {
                coalition: co(&[C, R]),
                kind: BlockKind::Weak
            })
        );
        assert!(verify(&g, &pi1, StabilityConcept::CR, DEFAULT_SUBSET_CAP)
            .unwrap()
            .is_stable());
    }

    #[test]
    fn parliament5_ir_ins_witness() {
        let g = fixture("parliament5").unwrap();
        // el, l, c, r, er
        let pi3 = part(5, &[&[0, 1, 2], &[3], &[4]]);
        assert_eq!(
            verify(&g, &pi3, StabilityConcept::IrIns, DEFAULT_SUBSET_CAP).unwrap(),
            Verdict::Unstable(Witness::IndividualDeviation {
                player: 2,
                target: Some(co(&[3]))
            })
        );
    }

    #[test]
    fn infeasible_partition_rejected() {
        let g = fixture("parliament3").unwrap();
        let p = part(3, &[&[L, R], &[C]]);
        assert_eq!(
            verify(&g, &p, StabilityConcept::IS, DEFAULT_SUBSET_CAP),
            Err(Error::InfeasiblePartition)
        );
    }

    #[test]
    fn apply_move_splits_disconnected_remainder() {
        let g = Graph::path(vec!["a", "b", "c"]).unwrap();
        let whole = part(3, &[&[0, 1, 2]]);
        let moved = whole.apply_move(&g, 1, None);
        assert_eq!(moved, Partition::singletons(3));
        let p = part(3, &[&[0, 1], &[2]]);
        assert_eq!(
            p.apply_move(&g, 1, Some(&co(&[2]))),
            part(3, &[&[0], &[1, 2]])
        );
    }

    #[test]
    fn concept_names_round_trip() {
        for c in StabilityConcept::ALL {
            assert_eq!(c.as_str().parse::<StabilityConcept>(), Ok(c));
        }
    }
}
