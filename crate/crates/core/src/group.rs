//! Finite groups given by multiplication tables, their group rings, and the
//! brute-force group oracles used to cross-check the coset machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::format::FunctorSpec;
use crate::partition::Partition;
use crate::ring::FusionRing;

/// A finite group with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    labels: Vec<String>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, table: Vec<usize>) -> Result<Self> {
        let order = (table.len() as f64).sqrt().round() as usize;
        Self::with_labels(name, table, Self::default_labels(order))
    }

    pub fn with_labels(
        name: impl Into<String>,
        table: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let order = labels.len();
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries for {order} labels",
                table.len()
            )));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!("entry {x} out of range")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::InvalidGroup(format!("0 is not an identity for {a}")));
            }
            let row: BTreeSet<usize> = (0..order).map(|b| mul(a, b)).collect();
            let col: BTreeSet<usize> = (0..order).map(|b| mul(b, a)).collect();
            if row.len() != order || col.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mul(a, b) == 0).expect("latin square"))
            .collect();
        Ok(Self {
            name: name.into(),
            order,
            table,
            labels,
            inverse,
        })
    }

    pub fn default_labels(order: usize) -> Vec<String> {
        (0..order)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("g{i}")
                }
            })
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&0)
            && s.iter().all(|&a| a < self.order)
            && s.iter().all(|&a| {
                s.contains(&self.inverse(a)) && s.iter().all(|&b| s.contains(&self.mul(a, b)))
            })
    }

    pub fn is_normal_subgroup(&self, set: &[usize]) -> bool {
        self.is_subgroup(set)
            && (0..self.order).all(|g| set.iter().all(|&x| set.contains(&self.conjugate(g, x))))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set = BTreeSet::from([0]);
        let mut pending: Vec<usize> = gens.into_iter().collect();
        while let Some(x) = pending.pop() {
            if !set.insert(x) {
                continue;
            }
            let members: Vec<usize> = set.iter().copied().collect();
            for y in members {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !set.contains(&z) {
                        pending.push(z);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Every subgroup, as sorted element lists in lexicographic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::from([vec![0]]);
        let mut frontier = vec![vec![0]];
        while let Some(h) = frontier.pop() {
            for g in (0..self.order).filter(|g| h.binary_search(g).is_err()) {
                let next = self.generated(h.iter().copied().chain([g]));
                if found.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        found.into_iter().collect()
    }

    /// The pointed fusion ring `Z[G]`: `N_{ij}^k = δ_{ij,k}`, `dual(i) = i⁻¹`.
    pub fn group_ring(&self) -> FusionRing {
        let constants = (0..self.order)
            .flat_map(|i| (0..self.order).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.mul(i, j), 1))
            .collect::<Vec<_>>();
        FusionRing::new(
            format!("Z[{}]", self.name),
            self.labels.clone(),
            self.inverse.clone(),
            constants,
        )
        .expect("group tables give well-formed rings")
    }

    /// Partition of `G` into double cosets `K x L`, by direct enumeration.
    pub fn double_cosets(&self, k: &[usize], l: &[usize]) -> Result<Partition> {
        for s in [k, l] {
            if !self.is_subgroup(s) {
                return Err(Error::NotSubgroup(s.to_vec()));
            }
        }
        let blocks: BTreeSet<Vec<usize>> = (0..self.order)
            .map(|x| {
                let set: BTreeSet<usize> = k
                    .iter()
                    .flat_map(|&a| l.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| self.mul(self.mul(a, x), b))
                    .collect();
                set.into_iter().collect()
            })
            .collect();
        Ok(Partition::from_blocks(blocks.into_iter().collect()))
    }

    /// `G/N` with cosets ordered by least member, plus the coset index of every element.
    pub fn quotient(&self, n: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal_subgroup(n) {
            return Err(if self.is_subgroup(n) {
                Error::NotNormalSubgroup(n.to_vec())
            } else {
                Error::NotSubgroup(n.to_vec())
            });
        }
        let cosets = self.double_cosets(n, &[0])?;
        let mut coset_of = vec![0; self.order];
        for (c, block) in cosets.blocks().iter().enumerate() {
            for &g in block {
                coset_of[g] = c;
            }
        }
        let m = cosets.len();
        let reps: Vec<usize> = cosets.blocks().iter().map(|b| b[0]).collect();
        let table = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| coset_of[self.mul(reps[a], reps[b])])
            .collect();
        let labels = reps
            .iter()
            .map(|&r| {
                if r == 0 {
                    "e".to_string()
                } else {
                    format!("{}N", self.labels[r])
                }
            })
            .collect();
        let q = FiniteGroup::with_labels(format!("{}/N{}", self.name, n.len()), table, labels)?;
        Ok((q, coset_of))
    }
}

/// The functor `Z[G] → Z[G/N]` sending `g` to its coset, with the target ring.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub target: FusionRing,
    pub coset_of: Vec<usize>,
    pub spec: FunctorSpec,
}

pub fn quotient_functor(g: &FiniteGroup, n: &[usize]) -> Result<Quotient> {
    let (group, coset_of) = g.quotient(n)?;
    let target = group.group_ring();
    let spec = FunctorSpec {
        name: format!("{}->{}", g.group_ring().name(), target.name()),
        source: g.group_ring().name().to_string(),
        target: target.name().to_string(),
        entries: coset_of
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, c, 1))
            .collect(),
    };
    Ok(Quotient {
        group,
        target,
        coset_of,
        spec,
    })
}
