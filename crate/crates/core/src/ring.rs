//! Fusion rings as finite integer data.
//!
//! A [`FusionRing`] is a based ring with basis `X_0 .. X_{n-1}`, unit `X_0`,
//! a duality permutation and nonnegative structure constants
//! `N_{ij}^k = mult(X_k, X_i X_j)`. Construction only checks that the data is
//! structurally well formed; the based-ring axioms are checked by
//! [`FusionRing::validate`], which returns the violations as data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of the unit object. Fixed by the file format.
pub const UNIT: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    labels: Vec<String>,
    dual: Vec<usize>,
    constants: BTreeMap<(usize, usize, usize), u32>,
    /// `products[i * n + j]` lists the nonzero `(k, N_{ij}^k)`, sorted by `k`.
    products: Vec<Vec<(usize, u32)>>,
    grades: Option<Vec<String>>,
}

impl FusionRing {
    pub fn new<I>(
        name: impl Into<String>,
        labels: Vec<String>,
        dual: Vec<usize>,
        constants: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, u32)>,
    {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Structure("rank must be positive".into()));
        }
        if dual.len() != rank {
            return Err(Error::Structure(format!(
                "dual has {} entries, rank is {rank}",
                dual.len()
            )));
        }
        for &d in &dual {
            check_index(d, rank)?;
        }
        let mut map = BTreeMap::new();
        for (i, j, k, v) in constants {
            check_index(i, rank)?;
            check_index(j, rank)?;
            check_index(k, rank)?;
            if v == 0 {
                continue;
            }
            if map.insert((i, j, k), v).is_some() {
                return Err(Error::DuplicateConstant(i, j, k));
            }
        }
        let mut products = vec![Vec::new(); rank * rank];
        for (&(i, j, k), &v) in &map {
            products[i * rank + j].push((k, v));
        }
        Ok(Self {
            name: name.into(),
            labels,
            dual,
            constants: map,
            products,
            grades: None,
        })
    }

    /// Attaches an explicit grading assignment (one component label per basis element).
    pub fn with_grades(mut self, grades: Vec<String>) -> Result<Self> {
        if grades.len() != self.rank() {
            return Err(Error::Structure(format!(
                "{} grade labels for rank {}",
                grades.len(),
                self.rank()
            )));
        }
        self.grades = Some(grades);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn grades(&self) -> Option<&[String]> {
        self.grades.as_deref()
    }

    /// `N_{ij}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.constants.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// Nonzero terms of `X_i X_j` as `(k, N_{ij}^k)`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank() + j]
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        self.constants.iter().map(|(&(i, j, k), &v)| (i, j, k, v))
    }

    /// Dense matrix of left multiplication by `X_i`: entry `(j, k)` is `N_{ij}^k`.
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for (j, row) in m.iter_mut().enumerate() {
            for &(k, v) in self.product(i, j) {
                row[k] = v;
            }
        }
        m
    }

    /// Integer product of two coefficient vectors.
    pub fn mul_int(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (i, &ai) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, c)| **c != 0) {
                for &(k, v) in self.product(i, j) {
                    out[k] += ai * bj * v as i64;
                }
            }
        }
        out
    }

    /// Floating-point product of two coefficient vectors.
    pub fn mul_f64(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.rank();
        let mut out = vec![0.0; n];
        for (i, &ai) in a.iter().enumerate().filter(|(_, c)| **c != 0.0) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, c)| **c != 0.0) {
                for &(k, v) in self.product(i, j) {
                    out[k] += ai * bj * v as f64;
                }
            }
        }
        out
    }

    /// Support of the product of two nonnegative elements given by their supports.
    pub fn support_product(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &i in a {
            for &j in b {
                out.extend(self.product(i, j).iter().map(|&(k, _)| k));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Checks the based-ring axioms and returns every violation found.
    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut violations = Vec::new();

        for i in 0..n {
            if self.dual[self.dual[i]] != i {
                violations.push(Violation::DualNotInvolution { index: i });
            }
        }

        for j in 0..n {
            for k in 0..n {
                let expected = u32::from(j == k);
                let left = self.n(UNIT, j, k);
                if left != expected {
                    violations.push(Violation::UnitLaw {
                        side: Side::Left,
                        j,
                        k,
                        found: left,
                    });
                }
                let right = self.n(j, UNIT, k);
                if right != expected {
                    violations.push(Violation::UnitLaw {
                        side: Side::Right,
                        j,
                        k,
                        found: right,
                    });
                }
            }
        }

        // (X_i X_j) X_k against X_i (X_j X_k), one coefficient vector per triple.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut left = vec![0u64; n];
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            left[l] += a as u64 * b as u64;
                        }
                    }
                    let mut right = vec![0u64; n];
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            right[l] += a as u64 * b as u64;
                        }
                    }
                    for l in 0..n {
                        if left[l] != right[l] {
                            violations.push(Violation::Associativity {
                                i,
                                j,
                                k,
                                l,
                                left: left[l],
                                right: right[l],
                            });
                        }
                    }
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                let expected = u32::from(j == self.dual[i]);
                let found = self.n(i, j, UNIT);
                if found != expected {
                    violations.push(Violation::Rigidity {
                        i,
                        j,
                        expected,
                        found,
                    });
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.n(i, j, k);
                    let rotated = self.n(j, self.dual[k], self.dual[i]);
                    let rotated_twice = self.n(self.dual[k], i, self.dual[j]);
                    if v != rotated || v != rotated_twice {
                        violations.push(Violation::FrobeniusReciprocity { i, j, k });
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    /// The ring spanned by `members` with indices renumbered in ascending order.
    /// `members` must be a subring (see [`crate::subring::Subring`]).
    pub fn restrict(&self, members: &[usize], name: impl Into<String>) -> Result<FusionRing> {
        let mut position = vec![None; self.rank()];
        for (new, &old) in members.iter().enumerate() {
            check_index(old, self.rank())?;
            position[old] = Some(new);
        }
        if members.first() != Some(&UNIT) {
            return Err(Error::InvalidSubring(
                "restriction must start at the unit".into(),
            ));
        }
        let remap = |old: usize| {
            position[old].ok_or_else(|| {
                Error::InvalidSubring(format!("{} escapes the member set", self.label(old)))
            })
        };
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let dual = members
            .iter()
            .map(|&i| remap(self.dual[i]))
            .collect::<Result<Vec<_>>>()?;
        let mut constants = Vec::new();
        for &i in members {
            for &j in members {
                for &(k, v) in self.product(i, j) {
                    constants.push((remap(i)?, remap(j)?, remap(k)?, v));
                }
            }
        }
        FusionRing::new(name, labels, dual, constants)
    }
}

pub(crate) fn check_index(index: usize, rank: usize) -> Result<()> {
    if index < rank {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, rank })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    DualInvolution,
    UnitLaw,
    Associativity,
    Rigidity,
    FrobeniusReciprocity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::DualInvolution => "dual-involution",
            Axiom::UnitLaw => "unit-law",
            Axiom::Associativity => "associativity",
            Axiom::Rigidity => "rigidity",
            Axiom::FrobeniusReciprocity => "frobenius-reciprocity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One failed axiom instance with its witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    DualNotInvolution {
        index: usize,
    },
    UnitLaw {
        side: Side,
        j: usize,
        k: usize,
        found: u32,
    },
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        left: u64,
        right: u64,
    },
    Rigidity {
        i: usize,
        j: usize,
        expected: u32,
        found: u32,
    },
    FrobeniusReciprocity {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::DualNotInvolution { .. } => Axiom::DualInvolution,
            Violation::UnitLaw { .. } => Axiom::UnitLaw,
            Violation::Associativity { .. } => Axiom::Associativity,
            Violation::Rigidity { .. } => Axiom::Rigidity,
            Violation::FrobeniusReciprocity { .. } => Axiom::FrobeniusReciprocity,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DualNotInvolution { index } => {
                write!(f, "dual-involution: dual(dual({index})) != {index}")
            }
            Violation::UnitLaw { side, j, k, found } => {
                let (a, b) = match side {
                    Side::Left => (UNIT, j),
                    Side::Right => (j, UNIT),
                };
                write!(f, "unit-law: N[{a},{b}]^{k} = {found}")
            }
            Violation::Associativity {
                i,
                j,
                k,
                l,
                left,
                right,
            } => write!(
                f,
                "associativity at ({i},{j},{k},{l}): ((X{i}X{j})X{k}) has {left}, (X{i}(X{j}X{k})) has {right}"
            ),
            Violation::Rigidity {
                i,
                j,
                expected,
                found,
            } => write!(f, "rigidity: N[{i},{j}]^0 = {found}, expected {expected}"),
            Violation::FrobeniusReciprocity { i, j, k } => {
                write!(f, "frobenius-reciprocity fails at ({i},{j},{k})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct violated axioms, in declaration order.
    pub fn axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(Violation::axiom).collect()
    }
}
