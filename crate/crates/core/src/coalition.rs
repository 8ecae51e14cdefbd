use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A non-empty set of player indices, kept sorted and duplicate-free.
///
/// The `Ord` impl is the canonical coalition order used everywhere for
/// enumeration and tie-breaking: smaller coalitions first, equal sizes
/// compared lexicographically on their sorted members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coalition(Vec<usize>);

impl Coalition {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        members.sort_unstable();
        members.dedup();
        Ok(Coalition(members))
    }

    /// Caller guarantees `members` is sorted, duplicate-free and non-empty.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Coalition(members)
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(vec![player])
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn min_member(&self) -> usize {
        self.0[0]
    }

    pub fn contains(&self, player: usize) -> bool {
        self.0.binary_search(&player).is_ok()
    }

    /// `self ∪ {player}`.
    pub fn with(&self, player: usize) -> Self {
        match self.0.binary_search(&player) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut members = Vec::with_capacity(self.0.len() + 1);
                members.extend_from_slice(&self.0[..pos]);
                members.push(player);
                members.extend_from_slice(&self.0[pos..]);
                Coalition(members)
            }
        }
    }

    /// `self ∖ {player}`, or `None` when that would leave nothing.
    pub fn without(&self, player: usize) -> Option<Self> {
        let members: Vec<usize> = self.0.iter().copied().filter(|&p| p != player).collect();
        if members.is_empty() {
            None
        } else {
            Some(Coalition(members))
        }
    }

    pub fn union(&self, other: &Coalition) -> Self {
        let mut members = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            match self.0[a].cmp(&other.0[b]) {
                Ordering::Less => {
                    members.push(self.0[a]);
                    a += 1;
                }
                Ordering::Greater => {
                    members.push(other.0[b]);
                    b += 1;
                }
                Ordering::Equal => {
                    members.push(self.0[a]);
                    a += 1;
                    b += 1;
                }
            }
        }
        members.extend_from_slice(&self.0[a..]);
        members.extend_from_slice(&other.0[b..]);
        Coalition(members)
    }

    /// Members shared with `other`, in ascending order.
    pub fn intersection(&self, other: &Coalition) -> Vec<usize> {
        self.0
            .iter()
            .copied()
            .filter(|&p| other.contains(p))
            .collect()
    }

    pub fn intersects(&self, other: &Coalition) -> bool {
        self.0.iter().any(|&p| other.contains(p))
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&p| other.contains(p))
    }

    /// Order used when a solver must pick one of several equally preferred
    /// coalitions: larger first, then lexicographically smaller.
    pub fn tie_break(&self, other: &Coalition) -> Ordering {
        other
            .0
            .len()
            .cmp(&self.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}
