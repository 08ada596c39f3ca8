//! Tensor functors at the level of Grothendieck rings.
//!
//! A functor `F: C → D` is stored as its multiplicity matrix
//! `M[i][j] = m(Y_j, F(X_i))`. The right adjoint `R` is the transpose, so
//! `R(Y_j) = Σ_i M[i][j] X_i` and `R(1)` is column 0.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosets::{coset_partition, left_cosets, right_cosets};
use crate::error::{Error, Result};
use crate::format::FunctorSpec;
use crate::fp::FPData;
use crate::partition::Partition;
use crate::ring::{check_index, FusionRing, UNIT};
use crate::subring::{close_generated, Subring};
use crate::tol;

/// `(source, target, multiplicity)`.
pub type Entry = (usize, usize, u32);

#[derive(Debug, Clone)]
pub struct RingFunctor<'r> {
    name: String,
    source: &'r FusionRing,
    target: &'r FusionRing,
    matrix: Vec<Vec<u32>>,
}

impl<'r> RingFunctor<'r> {
    pub fn new(
        name: impl Into<String>,
        source: &'r FusionRing,
        target: &'r FusionRing,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut matrix = vec![vec![0; target.rank()]; source.rank()];
        let mut seen = BTreeSet::new();
        for (i, j, v) in entries {
            check_index(i, source.rank())?;
            check_index(j, target.rank())?;
            if !seen.insert((i, j)) {
                return Err(Error::InvalidFunctor(format!("duplicate entry ({i}, {j})")));
            }
            matrix[i][j] = v;
        }
        Ok(Self {
            name: name.into(),
            source,
            target,
            matrix,
        })
    }

    /// Builds the functor described by a parsed file; ring names must match.
    pub fn from_spec(
        spec: &FunctorSpec,
        source: &'r FusionRing,
        target: &'r FusionRing,
    ) -> Result<Self> {
        if spec.source != source.name() {
            return Err(Error::UnknownRing(spec.source.clone()));
        }
        if spec.target != target.name() {
            return Err(Error::UnknownRing(spec.target.clone()));
        }
        Self::new(
            spec.name.clone(),
            source,
            target,
            spec.entries.iter().copied(),
        )
    }

    pub fn identity(ring: &'r FusionRing) -> Self {
        Self::new(
            format!("id_{}", ring.name()),
            ring,
            ring,
            (0..ring.rank()).map(|i| (i, i, 1)),
        )
        .expect("diagonal indices are in range")
    }

    pub fn to_spec(&self) -> FunctorSpec {
        let mut entries = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    entries.push((i, j, v));
                }
            }
        }
        FunctorSpec {
            name: self.name.clone(),
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
            entries,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &'r FusionRing {
        self.source
    }

    pub fn target(&self) -> &'r FusionRing {
        self.target
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    /// `F(X_i)` as a target coefficient vector.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.matrix[i]
    }

    /// `X^F`: the simple constituents of `F(X_i)`.
    pub fn row_support(&self, i: usize) -> BTreeSet<usize> {
        (0..self.target.rank())
            .filter(|&j| self.matrix[i][j] > 0)
            .collect()
    }

    /// `Y_F`: the simple constituents of `R(Y_j)`.
    pub fn column_support(&self, j: usize) -> BTreeSet<usize> {
        (0..self.source.rank())
            .filter(|&i| self.matrix[i][j] > 0)
            .collect()
    }

    /// `F` on a source element.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.target.rank()];
        for (i, &c) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &m) in self.matrix[i].iter().enumerate() {
                out[j] += c * m as i64;
            }
        }
        out
    }

    /// `R` on a target element.
    pub fn adjoint(&self, y: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(y).map(|(&m, &c)| m as i64 * c).sum())
            .collect()
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.target.rank()];
        for (i, &c) in x.iter().enumerate() {
            for (j, &m) in self.matrix[i].iter().enumerate() {
                out[j] += c * m as f64;
            }
        }
        out
    }

    pub fn adjoint_f64(&self, y: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(y).map(|(&m, &c)| m as f64 * c).sum())
            .collect()
    }

    /// The class of `R(1)` in the source ring.
    pub fn r1(&self) -> Vec<i64> {
        self.matrix.iter().map(|row| row[UNIT] as i64).collect()
    }

    /// The class of `F(R(1))` in the target ring.
    pub fn f_r1(&self) -> Vec<i64> {
        self.apply(&self.r1())
    }

    /// Checks unit preservation, the homomorphism property, compatibility
    /// with duals and `R(F(X)) = X ⊗ R(1)`, all exactly.
    pub fn validate(&self) -> FunctorReport {
        let (src, tgt) = (self.source, self.target);
        let mut violations = Vec::new();
        let unit_row: Vec<u32> = (0..tgt.rank()).map(|j| u32::from(j == UNIT)).collect();
        if self.matrix[UNIT] != unit_row {
            violations.push(FunctorViolation::UnitNotPreserved);
        }
        let rows: Vec<Vec<i64>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&m| m as i64).collect())
            .collect();
        for i in 0..src.rank() {
            for j in 0..src.rank() {
                let mut lhs = vec![0i64; tgt.rank()];
                for &(k, n) in src.product(i, j) {
                    for (t, &m) in rows[k].iter().enumerate() {
                        lhs[t] += n as i64 * m;
                    }
                }
                if lhs != tgt.mul_int(&rows[i], &rows[j]) {
                    violations.push(FunctorViolation::NotHomomorphism { i, j });
                }
            }
        }
        for i in 0..src.rank() {
            for j in 0..tgt.rank() {
                if self.matrix[src.dual(i)][j] != self.matrix[i][tgt.dual(j)] {
                    violations.push(FunctorViolation::DualIncompatible { i, j });
                }
            }
        }
        let r1 = self.r1();
        for i in 0..src.rank() {
            let mut x = vec![0; src.rank()];
            x[i] = 1;
            if self.adjoint(&rows[i]) != src.mul_int(&x, &r1) {
                violations.push(FunctorViolation::AdjunctionIdentity { i });
            }
        }
        FunctorReport { violations }
    }

    /// Pairs `(i, j)` where `R(F(X_i) Y_j) ≠ X_i R(Y_j)`.
    pub fn projection_formula_failures(&self) -> Vec<(usize, usize)> {
        let (src, tgt) = (self.source, self.target);
        let mut failures = Vec::new();
        for i in 0..src.rank() {
            let fx: Vec<i64> = self.matrix[i].iter().map(|&m| m as i64).collect();
            let mut x = vec![0; src.rank()];
            x[i] = 1;
            for j in 0..tgt.rank() {
                let mut y = vec![0; tgt.rank()];
                y[j] = 1;
                if self.adjoint(&tgt.mul_int(&fx, &y)) != src.mul_int(&x, &self.adjoint(&y)) {
                    failures.push((i, j));
                }
            }
        }
        failures
    }

    /// The ring of the dominant image and the entries of the corestricted functor.
    pub fn dominant_corestriction(&self) -> Result<(FusionRing, Vec<Entry>)> {
        let image = dominant_image(self)?;
        let ring = self
            .target
            .restrict(image.members(), format!("{}_image", self.target.name()))?;
        let mut entries = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (new, &old) in image.members().iter().enumerate() {
                if row[old] > 0 {
                    entries.push((i, new, row[old]));
                }
            }
        }
        Ok((ring, entries))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctorViolation {
    UnitNotPreserved,
    NotHomomorphism { i: usize, j: usize },
    DualIncompatible { i: usize, j: usize },
    AdjunctionIdentity { i: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::UnitNotPreserved => f.write_str("unit: F(1) is not the unit"),
            FunctorViolation::NotHomomorphism { i, j } => {
                write!(f, "ring-hom: F(X{i} X{j}) != F(X{i}) F(X{j})")
            }
            FunctorViolation::DualIncompatible { i, j } => {
                write!(f, "duality: m(Y{j}, F(X{i}*)) != m(Y{j}*, F(X{i}))")
            }
            FunctorViolation::AdjunctionIdentity { i } => {
                write!(f, "adjunction: R(F(X{i})) != X{i} R(1)")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `{X : F(X) is a multiple of the unit}`, checked to be a subring.
pub fn kernel<'r>(f: &RingFunctor<'r>) -> Result<Subring<'r>> {
    let members = (0..f.source.rank()).filter(|&i| f.row_support(i).iter().all(|&j| j == UNIT));
    Subring::new(f.source, members)
        .map_err(|e| Error::InvalidFunctor(format!("kernel is not a subring: {e}")))
}

/// Target simples occurring in some `F(X)`, checked to be a subring.
pub fn dominant_image<'r>(f: &RingFunctor<'r>) -> Result<Subring<'r>> {
    let members: BTreeSet<usize> = (0..f.source.rank())
        .flat_map(|i| f.row_support(i))
        .collect();
    Subring::new(f.target, members)
        .map_err(|e| Error::InvalidFunctor(format!("image is not a subring: {e}")))
}

pub fn uncovered_targets(f: &RingFunctor<'_>) -> Vec<usize> {
    (0..f.target.rank())
        .filter(|&j| f.column_support(j).is_empty())
        .collect()
}

pub fn is_dominant(f: &RingFunctor<'_>) -> bool {
    uncovered_targets(f).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    /// `sim[a][b]`.
    pub sim: Vec<Vec<bool>>,
    /// Classes of the transitive closure.
    pub classes: Partition,
    /// Whether `sim` is already an equivalence relation.
    pub transitive: bool,
}

impl Relation {
    fn from_sim(sim: Vec<Vec<bool>>) -> Self {
        let n = sim.len();
        let classes = Partition::components(n, |a, b| sim[a][b]);
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| {
                let same = classes.block_of(a) == classes.block_of(b);
                // Elements with empty sim rows are not related even to themselves.
                sim[a][b] == same || (a == b && !sim[a].iter().any(|&s| s))
            })
        });
        Self {
            sim,
            classes,
            transitive,
        }
    }
}

/// `X ~^F X'` iff `F(X)` and `F(X')` share a constituent, i.e. `(M Mᵀ)_{XX'} > 0`.
pub fn up_relation(f: &RingFunctor<'_>) -> Relation {
    let n = f.source.rank();
    let sim = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    f.matrix[a]
                        .iter()
                        .zip(&f.matrix[b])
                        .any(|(&x, &y)| x > 0 && y > 0)
                })
                .collect()
        })
        .collect();
    Relation::from_sim(sim)
}

/// `Y ~_F Y'` iff `R(Y)` and `R(Y')` share a constituent, i.e. `(Mᵀ M)_{YY'} > 0`.
///
/// The class of the unit is cross-checked against the stable support of
/// the powers of `F(R(1))`.
pub fn down_relation(f: &RingFunctor<'_>) -> Result<Relation> {
    let n = f.target.rank();
    let sim: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| f.matrix.iter().any(|row| row[a] > 0 && row[b] > 0))
                .collect()
        })
        .collect();
    let relation = Relation::from_sim(sim);
    let class = &relation.classes.blocks()[relation.classes.block_of(UNIT).expect("covered")];
    if !power_closure(f, UNIT)
        .iter()
        .copied()
        .eq(class.iter().copied())
    {
        return Err(Error::DownRelationMismatch(UNIT));
    }
    Ok(relation)
}

/// Stable support of `F(R(1))^n ⊗ Y`.
pub fn power_closure(f: &RingFunctor<'_>, y: usize) -> BTreeSet<usize> {
    let fr1: BTreeSet<usize> = f
        .f_r1()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, _)| j)
        .collect();
    let mut reach = BTreeSet::from([y]);
    loop {
        let next = f.target.support_product(&fr1, &reach);
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

/// Dominant-image elements whose `≈_F` class differs from their
/// `F(R(1))`-power closure. Always excludes the unit.
pub fn power_closure_mismatches(f: &RingFunctor<'_>) -> Result<Vec<usize>> {
    let relation = down_relation(f)?;
    Ok(dominant_image(f)?
        .members()
        .iter()
        .copied()
        .filter(|&y| {
            let class = &relation.classes.blocks()[relation.classes.block_of(y).expect("covered")];
            !power_closure(f, y)
                .iter()
                .copied()
                .eq(class.iter().copied())
        })
        .collect())
}

/// The two normality witnesses: the definition (`1 ∈ F(X)` forces `F(X)`
/// to be a multiple of `1`) and the unit being alone in its `≈_F` class.
pub fn normality_witnesses(f: &RingFunctor<'_>) -> Result<(bool, bool)> {
    let definition = (0..f.source.rank())
        .filter(|&i| f.matrix[i][UNIT] > 0)
        .all(|i| f.row_support(i).iter().all(|&j| j == UNIT));
    let down = down_relation(f)?;
    let unit_class = &down.classes.blocks()[down.classes.block_of(UNIT).expect("covered")];
    Ok((definition, unit_class.as_slice() == [UNIT]))
}

/// Normality, with a hard failure if the two witnesses disagree.
pub fn is_normal(f: &RingFunctor<'_>) -> Result<bool> {
    let (definition, unit_class) = normality_witnesses(f)?;
    if definition != unit_class {
        return Err(Error::WitnessDisagreement {
            definition,
            unit_class,
        });
    }
    Ok(definition)
}

fn pairwise_disjoint_or_equal(sets: &[BTreeSet<usize>]) -> bool {
    sets.iter()
        .all(|a| sets.iter().all(|b| a == b || a.is_disjoint(b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointOrEqualReport {
    pub normal: bool,
    /// The sets `X^F` are pairwise disjoint or equal.
    pub images: bool,
    /// The sets `Y_F` are pairwise disjoint or equal.
    pub preimages: bool,
    /// For normal functors, `(up class, down class)` pairs of the induced bijection.
    pub bijection: Option<Vec<(usize, usize)>>,
    pub passed: bool,
}

pub fn disjoint_or_equal_check(f: &RingFunctor<'_>) -> Result<DisjointOrEqualReport> {
    let normal = is_normal(f)?;
    let images: Vec<_> = (0..f.source.rank()).map(|i| f.row_support(i)).collect();
    let preimages: Vec<_> = (0..f.target.rank()).map(|j| f.column_support(j)).collect();
    let images_ok = pairwise_disjoint_or_equal(&images);
    let preimages_ok = pairwise_disjoint_or_equal(&preimages);
    let mut passed = normal == images_ok && normal == preimages_ok;
    let mut bijection = None;
    if normal {
        let up = up_relation(f);
        let down = down_relation(f)?;
        let image = dominant_image(f)?;
        let mut pairs = Vec::new();
        let mut hit = BTreeSet::new();
        for (c, block) in up.classes.blocks().iter().enumerate() {
            let union: BTreeSet<usize> = block
                .iter()
                .flat_map(|&i| images[i].iter().copied())
                .collect();
            let first = *union.iter().next().expect("rows are nonzero");
            let d = down.classes.block_of(first).expect("covered");
            passed &= union
                .iter()
                .copied()
                .eq(down.classes.blocks()[d].iter().copied());
            passed &= hit.insert(d);
            pairs.push((c, d));
        }
        let image_classes = down
            .classes
            .blocks()
            .iter()
            .filter(|b| image.contains(b[0]))
            .count();
        passed &= hit.len() == image_classes;
        bijection = Some(pairs);
    }
    Ok(DisjointOrEqualReport {
        normal,
        images: images_ok,
        preimages: preimages_ok,
        bijection,
        passed,
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageReport {
    /// Up classes equal the left cosets of the kernel.
    pub up_classes_are_left_cosets: bool,
    /// Left and right cosets of the kernel coincide.
    pub left_equals_right: bool,
    /// Max deviation of `F(X)/FPdim(X)` within an up class.
    pub row_defect: f64,
    /// Max deviation of `R(Y)/FPdim(Y)` within a down class.
    pub column_defect: f64,
    pub up_transitive: bool,
    pub passed: bool,
}

/// Image description for a normal functor.
pub fn normal_image_description(
    f: &RingFunctor<'_>,
    fp_src: &FPData,
    fp_tgt: &FPData,
) -> Result<ImageReport> {
    if !is_normal(f)? {
        return Err(Error::NotNormal(f.name.clone()));
    }
    let ker = kernel(f)?;
    let up = up_relation(f);
    let down = down_relation(f)?;
    let left = left_cosets(f.source, &ker)?;
    let right = right_cosets(f.source, &ker)?;

    let scaled_row = |i: usize| -> Vec<f64> {
        f.matrix[i]
            .iter()
            .map(|&m| m as f64 / fp_src.dims[i])
            .collect()
    };
    let scaled_col = |j: usize| -> Vec<f64> {
        f.matrix
            .iter()
            .map(|row| row[j] as f64 / fp_tgt.dims[j])
            .collect()
    };
    let mut row_defect: f64 = 0.0;
    for block in up.classes.blocks() {
        let base = scaled_row(block[0]);
        for &i in &block[1..] {
            row_defect = row_defect.max(max_abs_diff(&base, &scaled_row(i)));
        }
    }
    let mut column_defect: f64 = 0.0;
    for block in down.classes.blocks() {
        let base = scaled_col(block[0]);
        for &j in &block[1..] {
            column_defect = column_defect.max(max_abs_diff(&base, &scaled_col(j)));
        }
    }
    let up_classes_are_left_cosets = up.classes == left;
    let left_equals_right = left == right;
    let passed = up_classes_are_left_cosets
        && left_equals_right
        && row_defect <= tol::ASSERT
        && column_defect <= tol::ASSERT
        && up.transitive;
    Ok(ImageReport {
        up_classes_are_left_cosets,
        left_equals_right,
        row_defect,
        column_defect,
        up_transitive: up.transitive,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominantReport {
    /// `FPdim(C) / FPdim(D)`.
    pub index: f64,
    pub up_classes: usize,
    pub down_classes: usize,
    /// Down class matched to each up class.
    pub matching: Vec<usize>,
    /// Per up class, `‖F(A_i) − index · B_σ(i)‖_∞`.
    pub image_defects: Vec<f64>,
    /// `‖R(R_D) − R_C‖_∞`.
    pub regular_defect: f64,
    /// Per up class, the scalar `c_i` with `R(B_σ(i)) = c_i A_i`.
    pub adjoint_constants: Vec<f64>,
    pub adjoint_defects: Vec<f64>,
    pub passed: bool,
}

/// Class-vector identities for a dominant functor.
pub fn dominant_analysis(
    f: &RingFunctor<'_>,
    fp_src: &FPData,
    fp_tgt: &FPData,
) -> Result<DominantReport> {
    let uncovered = uncovered_targets(f);
    if !uncovered.is_empty() {
        return Err(Error::NotDominant(uncovered));
    }
    let up = up_relation(f);
    let down = down_relation(f)?;
    let index = fp_src.ring_dim / fp_tgt.ring_dim;

    let mut matching = Vec::new();
    for (c, block) in up.classes.blocks().iter().enumerate() {
        let support: BTreeSet<usize> = block.iter().flat_map(|&i| f.row_support(i)).collect();
        let classes: BTreeSet<usize> = support
            .iter()
            .map(|&j| down.classes.block_of(j).expect("covered"))
            .collect();
        if classes.len() != 1 {
            return Err(Error::ClassStraddle(c));
        }
        matching.push(*classes.iter().next().expect("nonempty"));
    }

    let mut image_defects = Vec::new();
    let mut adjoint_constants = Vec::new();
    let mut adjoint_defects = Vec::new();
    for (c, block) in up.classes.blocks().iter().enumerate() {
        let a = fp_src.weighted(block);
        let b = fp_tgt.weighted(&down.classes.blocks()[matching[c]]);
        let fa = f.apply_f64(&a);
        let scaled_b: Vec<f64> = b.iter().map(|x| index * x).collect();
        image_defects.push(max_abs_diff(&fa, &scaled_b));
        let rb = f.adjoint_f64(&b);
        let constant = rb[block[0]] / a[block[0]];
        let scaled_a: Vec<f64> = a.iter().map(|x| constant * x).collect();
        adjoint_constants.push(constant);
        adjoint_defects.push(max_abs_diff(&rb, &scaled_a));
    }
    let all_src: Vec<usize> = (0..f.source.rank()).collect();
    let all_tgt: Vec<usize> = (0..f.target.rank()).collect();
    let regular_defect = max_abs_diff(
        &f.adjoint_f64(&fp_tgt.weighted(&all_tgt)),
        &fp_src.weighted(&all_src),
    );

    let distinct: BTreeSet<usize> = matching.iter().copied().collect();
    let passed = up.classes.len() == down.classes.len()
        && distinct.len() == matching.len()
        && image_defects.iter().all(|&d| d <= tol::ASSERT)
        && regular_defect <= tol::ASSERT
        && adjoint_defects.iter().all(|&d| d <= tol::ASSERT)
        && adjoint_constants.iter().all(|&c| c > 0.0);
    Ok(DominantReport {
        index,
        up_classes: up.classes.len(),
        down_classes: down.classes.len(),
        matching,
        image_defects,
        regular_defect,
        adjoint_constants,
        adjoint_defects,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfTrivializingReport {
    /// `FPdim(R(1))`.
    pub dim: f64,
    /// `‖R(1)² − FPdim(R(1)) R(1)‖_∞`.
    pub defect: f64,
    pub passed: bool,
}

/// `R(1)² = FPdim(R(1)) R(1)` for a normal functor.
pub fn self_trivializing_check(
    f: &RingFunctor<'_>,
    fp_src: &FPData,
) -> Result<SelfTrivializingReport> {
    if !is_normal(f)? {
        return Err(Error::NotNormal(f.name.clone()));
    }
    let r1 = f.r1();
    let square = f.source.mul_int(&r1, &r1);
    let dim = fp_src.element_dim(&r1.iter().map(|&c| c as f64).collect::<Vec<_>>());
    let defect = square
        .iter()
        .zip(&r1)
        .map(|(&s, &r)| (s as f64 - dim * r as f64).abs())
        .fold(0.0, f64::max);
    Ok(SelfTrivializingReport {
        dim,
        defect,
        passed: defect <= tol::ASSERT,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    /// Supports of `R_D X` and `X R_D` agree for every basis `X`.
    pub supports_agree: bool,
    pub max_defect: f64,
    pub central: bool,
}

/// Whether `R_D` commutes with every basis element.
pub fn centrality_check(
    ring: &FusionRing,
    d: &Subring<'_>,
    fp: &FPData,
) -> Result<CentralityReport> {
    if !std::ptr::eq(ring, d.ring()) {
        return Err(Error::RingMismatch);
    }
    let n = ring.rank();
    let members: BTreeSet<usize> = d.members().iter().copied().collect();
    let rd = fp.weighted(d.members());
    let mut supports_agree = true;
    let mut max_defect: f64 = 0.0;
    for x in 0..n {
        let single = BTreeSet::from([x]);
        supports_agree &=
            ring.support_product(&members, &single) == ring.support_product(&single, &members);
        let mut e = vec![0.0; n];
        e[x] = 1.0;
        max_defect = max_defect.max(max_abs_diff(&ring.mul_f64(&rd, &e), &ring.mul_f64(&e, &rd)));
    }
    Ok(CentralityReport {
        supports_agree,
        max_defect,
        central: supports_agree && max_defect <= tol::ASSERT,
    })
}

/// Summary of a functor: kernel, image, both relations and the numeric invariants.
#[derive(Debug, Clone)]
pub struct FunctorAnalysis<'r> {
    pub kernel: Subring<'r>,
    pub dominant_image: Subring<'r>,
    pub up: Relation,
    pub down: Relation,
    pub is_normal: bool,
    pub is_dominant: bool,
    /// `FPdim(C) / FPdim(D')` with `D'` the dominant image.
    pub index: f64,
    /// `≈^F` equals the right cosets of `⟨R(1)⟩`.
    pub up_classes_are_r1_cosets: bool,
}

pub fn analyze<'r>(
    f: &RingFunctor<'r>,
    fp_src: &FPData,
    fp_tgt: &FPData,
) -> Result<FunctorAnalysis<'r>> {
    let kernel = kernel(f)?;
    let dominant_image = dominant_image(f)?;
    let up = up_relation(f);
    let down = down_relation(f)?;
    let is_normal = is_normal(f)?;
    let r1_support = f
        .r1()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    let generated = close_generated(f.source, r1_support)?;
    let up_classes_are_r1_cosets =
        coset_partition(f.source, &Subring::trivial(f.source), &generated)? == up.classes;
    Ok(FunctorAnalysis {
        index: fp_src.ring_dim / fp_tgt.span_dim(dominant_image.members()),
        is_dominant: dominant_image.is_full(),
        kernel,
        dominant_image,
        up,
        down,
        is_normal,
        up_classes_are_r1_cosets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ring;
    use crate::fp::compute_fp_dims;

    fn rep_s3() -> FusionRing {
        parse_ring(
            "ring rep_s3\nrank 3\nlabels 1 s ρ\ndual 0 1 2\n\
             nz 0 0 0 1\nnz 0 1 1 1\nnz 0 2 2 1\nnz 1 0 1 1\nnz 2 0 2 1\n\
             nz 1 1 0 1\nnz 1 2 2 1\nnz 2 1 2 1\nnz 2 2 0 1\nnz 2 2 1 1\nnz 2 2 2 1\nend\n",
        )
        .unwrap()
    }

    fn cyclic_rep(n: usize, name: &str) -> FusionRing {
        let mut c = vec![];
        for i in 0..n {
            for j in 0..n {
                c.push((i, j, (i + j) % n, 1));
            }
        }
        let labels = (0..n).map(|i| format!("χ{i}")).collect();
        let dual = (0..n).map(|i| (n - i) % n).collect();
        FusionRing::new(name, labels, dual, c).unwrap()
    }

    fn fp(r: &FusionRing) -> FPData {
        compute_fp_dims(r, tol::ITERATION, tol::MAX_ITER).unwrap()
    }

    #[test]
    fn s3_to_z3() {
        let s3 = rep_s3();
        let z3 = cyclic_rep(3, "rep_z3");
        let f = RingFunctor::new(
            "res",
            &s3,
            &z3,
            [(0, 0, 1), (1, 0, 1), (2, 1, 1), (2, 2, 1)],
        )
        .unwrap();
        assert!(f.validate().is_valid());
        assert!(f.projection_formula_failures().is_empty());
        assert_eq!(kernel(&f).unwrap().members(), [0, 1]);
        let up = up_relation(&f);
        assert_eq!(up.classes.blocks(), [vec![0, 1], vec![2]]);
        assert!(up.transitive);
        assert_eq!(
            down_relation(&f).unwrap().classes.blocks(),
            [vec![0], vec![1, 2]]
        );
        // F(R(1)) = 2·1, so its powers never link ω with ω².
        assert_eq!(power_closure_mismatches(&f).unwrap(), [1, 2]);
        assert!(is_normal(&f).unwrap());
        let d = disjoint_or_equal_check(&f).unwrap();
        assert!(d.passed && d.images && d.preimages);
        assert_eq!(d.bijection, Some(vec![(0, 0), (1, 1)]));

        let (fs, ft) = (fp(&s3), fp(&z3));
        assert!(normal_image_description(&f, &fs, &ft).unwrap().passed);
        let dom = dominant_analysis(&f, &fs, &ft).unwrap();
        assert!((dom.index - 2.0).abs() < 1e-12);
        assert!(dom.passed, "{dom:?}");
        for c in &dom.adjoint_constants {
            assert!((c - 1.0).abs() < 1e-12);
        }
        let st = self_trivializing_check(&f, &fs).unwrap();
        assert!((st.dim - 2.0).abs() < 1e-12 && st.passed);
    }

    #[test]
    fn s3_to_z2() {
        let s3 = rep_s3();
        let z2 = cyclic_rep(2, "rep_z2");
        let f = RingFunctor::new(
            "res",
            &s3,
            &z2,
            [(0, 0, 1), (1, 1, 1), (2, 0, 1), (2, 1, 1)],
        )
        .unwrap();
        assert!(f.validate().is_valid());
        assert_eq!(kernel(&f).unwrap().members(), [0]);
        assert_eq!(down_relation(&f).unwrap().classes.blocks(), [vec![0, 1]]);
        assert!(!is_normal(&f).unwrap());
        let d = disjoint_or_equal_check(&f).unwrap();
        assert!(d.passed && !d.normal && !d.images && !d.preimages);
        assert!(matches!(
            normal_image_description(&f, &fp(&s3), &fp(&z2)),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn broken_rho_row() {
        let s3 = rep_s3();
        let z3 = cyclic_rep(3, "rep_z3");
        let f = RingFunctor::new("bad", &s3, &z3, [(0, 0, 1), (1, 0, 1), (2, 1, 2)]).unwrap();
        let report = f.validate();
        assert!(report
            .violations
            .contains(&FunctorViolation::NotHomomorphism { i: 2, j: 2 }));
    }

    #[test]
    fn identity_functor() {
        let s3 = rep_s3();
        let f = RingFunctor::identity(&s3);
        let fs = fp(&s3);
        assert!(f.validate().is_valid());
        assert_eq!(kernel(&f).unwrap().members(), [0]);
        assert_eq!(up_relation(&f).classes, Partition::singletons(3));
        assert_eq!(down_relation(&f).unwrap().classes, Partition::singletons(3));
        assert!(is_normal(&f).unwrap());
        assert!(disjoint_or_equal_check(&f).unwrap().passed);
        assert!(normal_image_description(&f, &fs, &fs).unwrap().passed);
        let dom = dominant_analysis(&f, &fs, &fs).unwrap();
        assert!(dom.passed && (dom.index - 1.0).abs() < 1e-12);
        assert!(self_trivializing_check(&f, &fs).unwrap().passed);
    }

    #[test]
    fn non_dominant_input_is_reported() {
        let z2 = cyclic_rep(2, "rep_z2");
        let z4 = cyclic_rep(4, "rep_z4");
        // Z/4 → Z/2 on characters: inflation Rep(Z/2) → Rep(Z/4), χ1 ↦ χ2.
        let f = RingFunctor::new("infl", &z2, &z4, [(0, 0, 1), (1, 2, 1)]).unwrap();
        assert!(f.validate().is_valid());
        let err = dominant_analysis(&f, &fp(&z2), &fp(&z4)).unwrap_err();
        assert!(matches!(err, Error::NotDominant(ref u) if u == &vec![1, 3]));
        let (image, entries) = f.dominant_corestriction().unwrap();
        assert_eq!(image.rank(), 2);
        let g = RingFunctor::new("infl'", &z2, &image, entries).unwrap();
        assert!(g.validate().is_valid() && is_dominant(&g));
    }

    #[test]
    fn centrality_in_rep_s3() {
        let s3 = rep_s3();
        let fs = fp(&s3);
        for members in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            let d = Subring::new(&s3, members).unwrap();
            assert!(centrality_check(&s3, &d, &fs).unwrap().central);
        }
    }
}
