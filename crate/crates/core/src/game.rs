//! Preference profiles and the preference oracle.
//!
//! Every solver and verifier in this crate reads preferences through
//! [`HedonicGame::compare`] (or the helpers built on it), so the counter
//! behind [`HedonicGame::oracle_calls`] measures oracle queries exactly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Utility;

/// Outcome of asking a player how two coalitions compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Better,
    Equal,
    Worse,
}

impl Comparison {
    pub fn at_least(self) -> bool {
        self != Comparison::Worse
    }

    pub fn strictly_better(self) -> bool {
        self == Comparison::Better
    }

    pub fn reverse(self) -> Self {
        match self {
            Comparison::Better => Comparison::Worse,
            Comparison::Equal => Comparison::Equal,
            Comparison::Worse => Comparison::Better,
        }
    }
}

/// Dense utility matrix with an implicit zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityMatrix<T> {
    n: usize,
    values: Vec<T>,
    symmetric: bool,
}

impl<T: Utility> UtilityMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        UtilityMatrix {
            n,
            values: vec![T::zero(); n * n],
            symmetric: false,
        }
    }

    /// Builds a matrix from `(i, j, value)` entries; absent pairs are zero.
    ///
    /// With `symmetric` set, an entry given for only one orientation is
    /// mirrored, and disagreeing orientations are rejected.
    pub fn from_entries<I>(n: usize, entries: I, symmetric: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = Self::zeros(n);
        let mut given = vec![false; n * n];
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidPreferences(format!(
                    "utility entry ({i}, {j}) out of range"
                )));
            }
            if i == j {
                return Err(Error::InvalidPreferences(
                    "diagonal utilities are fixed at zero".into(),
                ));
            }
            if !v.is_comparable() {
                return Err(Error::InvalidPreferences(format!(
                    "utility ({i}, {j}) is not comparable"
                )));
            }
            if given[i * n + j] {
                return Err(Error::InvalidPreferences(format!(
                    "utility ({i}, {j}) given twice"
                )));
            }
            given[i * n + j] = true;
            m.values[i * n + j] = v;
        }
        if symmetric {
            for i in 0..n {
                for j in (i + 1)..n {
                    match (given[i * n + j], given[j * n + i]) {
                        (true, false) => m.values[j * n + i] = m.values[i * n + j].clone(),
                        (false, true) => m.values[i * n + j] = m.values[j * n + i].clone(),
                        (true, true) if m.values[i * n + j] != m.values[j * n + i] => {
                            return Err(Error::InvalidPreferences(format!(
                                "symmetric matrix disagrees on ({i}, {j})"
                            )));
                        }
                        _ => {}
                    }
                }
            }
            m.symmetric = true;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.values[i * self.n + j]
    }

    /// Overwrites `U(i, j)`. Clears the symmetric flag if the write breaks it.
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i != j, "diagonal utilities are fixed at zero");
        self.values[i * self.n + j] = value;
        if self.symmetric && self.values[i * self.n + j] != self.values[j * self.n + i] {
            self.symmetric = false;
        }
    }

    /// Sets `U(i, j) = U(j, i) = value`.
    pub fn set_mutual(&mut self, i: usize, j: usize, value: T) {
        self.set(i, j, value.clone());
        self.set(j, i, value);
    }

    /// Declares the matrix symmetric after checking that it is.
    pub fn mark_symmetric(&mut self) -> Result<()> {
        if !self.check_symmetric() {
            return Err(Error::InvalidPreferences("matrix is not symmetric".into()));
        }
        self.symmetric = true;
        Ok(())
    }

    /// The declared flag.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Entry-by-entry symmetry, regardless of the flag.
    pub fn check_symmetric(&self) -> bool {
        (0..self.n).all(|i| ((i + 1)..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Every off-diagonal entry is `1` or `-n`.
    pub fn is_enemy_oriented(&self) -> bool {
        let friend = T::one();
        let enemy = -(0..self.n).fold(T::zero(), |acc, _| acc + T::one());
        (0..self.n).all(|i| {
            (0..self.n)
                .filter(|&j| j != i)
                .all(|j| *self.get(i, j) == friend || *self.get(i, j) == enemy)
        })
    }

    /// `sum_{j in x} U(i, j)`.
    pub fn value_of(&self, i: usize, x: &Coalition) -> T {
        let row = &self.values[i * self.n..(i + 1) * self.n];
        x.iter().fold(T::zero(), |acc, j| acc + row[j].clone())
    }
}

/// Explicit weak orders: for each player, tiers of coalitions listed best
/// first. Feasible coalitions a player does not list share one implicit
/// tier below everything listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitPreferences {
    tiers: Vec<Vec<Vec<Coalition>>>,
    rank: Vec<HashMap<Coalition, usize>>,
}

impl ExplicitPreferences {
    pub fn new(graph: &Graph, tiers: Vec<Vec<Vec<Coalition>>>) -> Result<Self> {
        if tiers.len() != graph.len() {
            return Err(Error::InvalidPreferences(format!(
                "rankings given for {} players, graph has {}",
                tiers.len(),
                graph.len()
            )));
        }
        let mut rank = Vec::with_capacity(tiers.len());
        for (i, player_tiers) in tiers.iter().enumerate() {
            let mut map = HashMap::new();
            for (t, tier) in player_tiers.iter().enumerate() {
                for x in tier {
                    if x.members().last().is_some_and(|&m| m >= graph.len()) {
                        return Err(Error::InvalidPreferences(format!(
                            "player {i} ranks a coalition with unknown members"
                        )));
                    }
                    if !x.contains(i) {
                        return Err(Error::InvalidPreferences(format!(
                            "player `{}` ranks a coalition without herself",
                            graph.name(i)
                        )));
                    }
                    if !graph.is_connected(x) {
                        return Err(Error::InvalidPreferences(format!(
                            "player `{}` ranks a disconnected coalition",
                            graph.name(i)
                        )));
                    }
                    if map.insert(x.clone(), t).is_some() {
                        return Err(Error::InvalidPreferences(format!(
                            "player `{}` ranks a coalition twice",
                            graph.name(i)
                        )));
                    }
                }
            }
            rank.push(map);
        }
        Ok(ExplicitPreferences { tiers, rank })
    }

    pub fn tiers(&self, player: usize) -> &[Vec<Coalition>] {
        &self.tiers[player]
    }

    /// Tier index of `x` for `player`; unlisted coalitions sit one below
    /// the last listed tier.
    pub fn tier_of(&self, player: usize, x: &Coalition) -> usize {
        self.rank[player]
            .get(x)
            .copied()
            .unwrap_or(self.tiers[player].len())
    }

    /// True iff every player's listed tiers are singletons and together
    /// cover all of that player's feasible coalitions.
    pub fn is_strict_and_complete(&self, graph: &Graph, cap: usize) -> Result<bool> {
        for i in graph.players() {
            if self.tiers[i].iter().any(|t| t.len() != 1) {
                return Ok(false);
            }
            let feasible = graph.connected_subsets(Some(i), None, cap)?.len();
            if feasible != self.tiers[i].len() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Preferences<T> {
    Additive(UtilityMatrix<T>),
    Explicit(ExplicitPreferences),
}

/// A hedonic game whose feasible coalitions are the connected subsets of a
/// communication graph.
#[derive(Debug)]
pub struct HedonicGame<T> {
    graph: Graph,
    preferences: Preferences<T>,
    calls: AtomicU64,
}

impl<T: Clone> Clone for HedonicGame<T> {
    fn clone(&self) -> Self {
        HedonicGame {
            graph: self.graph.clone(),
            preferences: self.preferences.clone(),
            calls: AtomicU64::new(0),
        }
    }
}

impl<T: PartialEq> PartialEq for HedonicGame<T> {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.preferences == other.preferences
    }
}

impl<T: Utility> HedonicGame<T> {
    pub fn new(graph: Graph, preferences: Preferences<T>) -> Result<Self> {
        let players = match &preferences {
            Preferences::Additive(u) => u.len(),
            Preferences::Explicit(e) => e.tiers.len(),
        };
        if players != graph.len() {
            return Err(Error::InvalidPreferences(format!(
                "preferences cover {players} players, graph has {}",
                graph.len()
            )));
        }
        Ok(HedonicGame {
            graph,
            preferences,
            calls: AtomicU64::new(0),
        })
    }

    pub fn additive(graph: Graph, utilities: UtilityMatrix<T>) -> Result<Self> {
        Self::new(graph, Preferences::Additive(utilities))
    }

    pub fn explicit(graph: Graph, preferences: ExplicitPreferences) -> Result<Self> {
        Self::new(graph, Preferences::Explicit(preferences))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn preferences(&self) -> &Preferences<T> {
        &self.preferences
    }

    pub fn utilities(&self) -> Option<&UtilityMatrix<T>> {
        match &self.preferences {
            Preferences::Additive(u) => Some(u),
            Preferences::Explicit(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Number of preference queries answered since construction or the
    /// last reset.
    pub fn oracle_calls(&self) -> u64 {
        self.calls.load(AtomicOrdering::Relaxed)
    }

    pub fn reset_oracle_calls(&self) {
        self.calls.store(0, AtomicOrdering::Relaxed);
    }

    pub(crate) fn restore_oracle_calls(&self, calls: u64) {
        self.calls.store(calls, AtomicOrdering::Relaxed);
    }

    /// How `player` ranks `x` against `y`.
    pub fn compare(&self, player: usize, x: &Coalition, y: &Coalition) -> Result<Comparison> {
        if !x.contains(player) || !y.contains(player) {
            return Err(Error::PlayerNotMember { player });
        }
        Ok(self.query(player, x, y))
    }

    /// The oracle itself. Membership is the caller's responsibility.
    pub(crate) fn query(&self, player: usize, x: &Coalition, y: &Coalition) -> Comparison {
        debug_assert!(x.contains(player) && y.contains(player));
        self.calls.fetch_add(1, AtomicOrdering::Relaxed);
        let ord = match &self.preferences {
            Preferences::Additive(u) => {
                let (vx, vy) = (u.value_of(player, x), u.value_of(player, y));
                vx.partial_cmp(&vy).unwrap_or(std::cmp::Ordering::Equal)
            }
            Preferences::Explicit(e) => e.tier_of(player, y).cmp(&e.tier_of(player, x)),
        };
        match ord {
            std::cmp::Ordering::Greater => Comparison::Better,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Less => Comparison::Worse,
        }
    }

    pub(crate) fn weakly_prefers(&self, player: usize, x: &Coalition, y: &Coalition) -> bool {
        self.query(player, x, y).at_least()
    }

    pub(crate) fn strictly_prefers(&self, player: usize, x: &Coalition, y: &Coalition) -> bool {
        self.query(player, x, y).strictly_better()
    }

    /// `x` dominates `y`: they overlap and every shared member weakly
    /// prefers `x`.
    pub fn m_compare(&self, x: &Coalition, y: &Coalition) -> bool {
        let shared = x.intersection(y);
        !shared.is_empty() && shared.iter().all(|&p| self.weakly_prefers(p, x, y))
    }

    /// Every member weakly prefers `x` to being alone.
    pub fn individually_rational(&self, x: &Coalition) -> bool {
        x.iter()
            .all(|p| self.weakly_prefers(p, x, &Coalition::singleton(p)))
    }

    /// Additive value `sum_{j in x} U(player, j)`, or `None` for explicit
    /// preferences. Does not count as an oracle query.
    pub fn value(&self, player: usize, x: &Coalition) -> Option<T> {
        self.utilities().map(|u| u.value_of(player, x))
    }

    /// A game with strict total preferences refining these ones, where ties
    /// are broken in favour of larger coalitions and then lexicographically.
    /// Since `y ⊊ x` implies `|y| < |x|`, an indifferent superset always
    /// ends up strictly above its subset.
    pub fn refine(&self, cap: usize) -> Result<HedonicGame<T>> {
        let mut tiers = Vec::with_capacity(self.len());
        for i in self.graph.players() {
            let mut feasible = self.graph.connected_subsets(Some(i), None, cap)?;
            feasible.sort_by(|x, y| match self.query(i, y, x) {
                Comparison::Better => std::cmp::Ordering::Greater,
                Comparison::Worse => std::cmp::Ordering::Less,
                Comparison::Equal => x.tie_break(y),
            });
            tiers.push(feasible.into_iter().map(|x| vec![x]).collect());
        }
        let explicit = ExplicitPreferences::new(&self.graph, tiers)?;
        HedonicGame::explicit(self.graph.clone(), explicit)
    }
}
