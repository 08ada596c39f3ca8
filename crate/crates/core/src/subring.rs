//! Fusion subrings: basis subsets containing the unit that are closed under
//! duals and under taking constituents of products.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{check_index, FusionRing, UNIT};

#[derive(Debug, Clone)]
pub struct Subring<'r> {
    ring: &'r FusionRing,
    members: Vec<usize>,
}

impl PartialEq for Subring<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.members == other.members
    }
}

impl Eq for Subring<'_> {}

impl<'r> Subring<'r> {
    /// Validates `members` against the subring invariants.
    pub fn new(ring: &'r FusionRing, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        for &i in &set {
            check_index(i, ring.rank())?;
        }
        if let Some(reason) = closure_defect(ring, &set) {
            return Err(Error::InvalidSubring(reason));
        }
        Ok(Self {
            ring,
            members: set.into_iter().collect(),
        })
    }

    /// `{unit}`, the ring of `Vec`.
    pub fn trivial(ring: &'r FusionRing) -> Self {
        Self {
            ring,
            members: vec![UNIT],
        }
    }

    pub fn full(ring: &'r FusionRing) -> Self {
        Self {
            ring,
            members: (0..ring.rank()).collect(),
        }
    }

    pub fn ring(&self) -> &'r FusionRing {
        self.ring
    }

    /// Sorted ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [UNIT]
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ring.rank()
    }

    pub fn labels(&self) -> Vec<&'r str> {
        self.members.iter().map(|&i| self.ring.label(i)).collect()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Why `set` is not a subring, if it is not.
fn closure_defect(ring: &FusionRing, set: &BTreeSet<usize>) -> Option<String> {
    if !set.contains(&UNIT) {
        return Some("unit is missing".into());
    }
    for &i in set {
        if !set.contains(&ring.dual(i)) {
            return Some(format!("dual of {} is missing", ring.label(i)));
        }
        for &j in set {
            if let Some(&(k, _)) = ring.product(i, j).iter().find(|(k, _)| !set.contains(k)) {
                return Some(format!(
                    "{} ⊗ {} contains {}",
                    ring.label(i),
                    ring.label(j),
                    ring.label(k)
                ));
            }
        }
    }
    None
}

pub fn is_subring(ring: &FusionRing, members: &[usize]) -> bool {
    members.iter().all(|&i| i < ring.rank())
        && closure_defect(ring, &members.iter().copied().collect()).is_none()
}

/// Smallest subring containing `generators`.
pub fn close_generated<'r>(
    ring: &'r FusionRing,
    generators: impl IntoIterator<Item = usize>,
) -> Result<Subring<'r>> {
    let mut members = BTreeSet::from([UNIT]);
    let mut pending = vec![UNIT];
    for g in generators {
        check_index(g, ring.rank())?;
        pending.push(g);
    }
    while let Some(x) = pending.pop() {
        if !members.insert(x) && x != UNIT {
            continue;
        }
        let mut found = vec![ring.dual(x)];
        for &y in &members {
            found.extend(ring.product(x, y).iter().map(|&(k, _)| k));
            found.extend(ring.product(y, x).iter().map(|&(k, _)| k));
        }
        pending.extend(found.into_iter().filter(|k| !members.contains(k)));
    }
    Ok(Subring {
        ring,
        members: members.into_iter().collect(),
    })
}

/// The subring generated by all constituents of `X ⊗ X*`.
pub fn adjoint_subring(ring: &FusionRing) -> Subring<'_> {
    let gens: BTreeSet<usize> = (0..ring.rank())
        .flat_map(|i| ring.product(i, ring.dual(i)).iter().map(|&(k, _)| k))
        .collect();
    close_generated(ring, gens).expect("indices come from the ring")
}

pub fn intersect<'r>(a: &Subring<'r>, b: &Subring<'r>) -> Result<Subring<'r>> {
    a.same_ring(b)?;
    let members = a
        .members
        .iter()
        .copied()
        .filter(|&i| b.contains(i))
        .collect();
    Ok(Subring {
        ring: a.ring,
        members,
    })
}

pub fn join<'r>(a: &Subring<'r>, b: &Subring<'r>) -> Result<Subring<'r>> {
    a.same_ring(b)?;
    close_generated(a.ring, a.members.iter().chain(&b.members).copied())
}

/// A basis subset that may or may not be a subring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    pub members: Vec<usize>,
    pub is_subring: bool,
}

impl IndexSet {
    fn new(ring: &FusionRing, members: Vec<usize>) -> Self {
        let is_subring = is_subring(ring, &members);
        Self {
            members,
            is_subring,
        }
    }
}

/// `{X : every constituent of X^{⊗n} lies in d, for some n ≥ 1}`.
///
/// The supports of successive powers form an eventually periodic sequence;
/// iteration stops at the first repeated support.
pub fn radical(ring: &FusionRing, d: &Subring<'_>) -> IndexSet {
    let members = (0..ring.rank())
        .filter(|&x| {
            let x_set = BTreeSet::from([x]);
            let mut power = x_set.clone();
            let mut seen = HashSet::new();
            loop {
                if power.iter().all(|&k| d.contains(k)) {
                    return true;
                }
                if !seen.insert(power.clone()) {
                    return false;
                }
                power = ring.support_product(&power, &x_set);
            }
        })
        .collect();
    IndexSet::new(ring, members)
}

/// `{X : X ⊗ X* is supported in d}`.
pub fn commutator(ring: &FusionRing, d: &Subring<'_>) -> IndexSet {
    let members = (0..ring.rank())
        .filter(|&x| {
            ring.product(x, ring.dual(x))
                .iter()
                .all(|&(k, _)| d.contains(k))
        })
        .collect();
    IndexSet::new(ring, members)
}

/// Every subring containing `base`, sorted by member list.
pub fn subrings_containing<'r>(ring: &'r FusionRing, base: &Subring<'r>) -> Vec<Subring<'r>> {
    let start = close_generated(ring, base.members.iter().copied()).expect("valid base");
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([start.members.clone()]);
    let mut frontier = vec![start];
    while let Some(s) = frontier.pop() {
        for i in (0..ring.rank()).filter(|&i| !s.contains(i)) {
            let next =
                close_generated(ring, s.members.iter().copied().chain([i])).expect("valid index");
            if found.insert(next.members.clone()) {
                frontier.push(next);
            }
        }
    }
    found
        .into_iter()
        .map(|members| Subring { ring, members })
        .collect()
}

/// Every subring of `ring`.
pub fn all_subrings(ring: &FusionRing) -> Vec<Subring<'_>> {
    subrings_containing(ring, &Subring::trivial(ring))
}
