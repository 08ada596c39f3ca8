//! Double cosets of a fusion ring relative to two subrings `D` and `E`.
//!
//! `X ~ Y` when `Y` is a constituent of `D ⊗ X ⊗ E`, i.e. when
//! `m([X], R_D [Y] R_E) > 0`. The classes are the connected components of
//! the support graph of `T = L_{R_D} ∘ R_{R_E}`; the support is taken from
//! the exact integer matrix `Σ_{a ∈ D, b ∈ E} m(X_j, X_a X_i X_b)`, so the
//! partition never depends on floating point. FP data only enters the class
//! vectors `A_i = Σ_{X ∈ B_i} FPdim(X)[X]` and the eigenvalue checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{power_iterate, FPData, Start};
use crate::partition::Partition;
use crate::ring::FusionRing;
use crate::subring::{close_generated, Subring};
use crate::tol;

#[derive(Debug, Clone)]
pub struct CosetDecomposition<'r> {
    ring: &'r FusionRing,
    left: Subring<'r>,
    right: Subring<'r>,
    classes: Partition,
    class_vectors: Vec<Vec<f64>>,
    support: Vec<Vec<u64>>,
    t_matrix: Vec<Vec<f64>>,
}

fn check_operands<'r>(ring: &'r FusionRing, d: &Subring<'r>, e: &Subring<'r>) -> Result<()> {
    if std::ptr::eq(ring, d.ring()) && std::ptr::eq(ring, e.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Row `i` holds the coefficients of `Σ_{a ∈ D, b ∈ E} w_a w_b X_a X_i X_b`.
fn triple_products<T>(
    ring: &FusionRing,
    d: &Subring<'_>,
    e: &Subring<'_>,
    weight: impl Fn(usize) -> T,
) -> Vec<Vec<T>>
where
    T: Copy + Default + std::ops::AddAssign + std::ops::Mul<Output = T> + From<u32>,
{
    let n = ring.rank();
    let mut out = vec![vec![T::default(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for &a in d.members() {
            for &(m, x) in ring.product(a, i) {
                for &b in e.members() {
                    for &(j, y) in ring.product(m, b) {
                        row[j] += weight(a) * weight(b) * T::from(x * y);
                    }
                }
            }
        }
    }
    out
}

/// The exact integer support matrix: entry `(i, j)` is `Σ_{a ∈ D, b ∈ E} m(X_j, X_a X_i X_b)`.
pub fn support_matrix(ring: &FusionRing, d: &Subring<'_>, e: &Subring<'_>) -> Vec<Vec<u64>> {
    triple_products(ring, d, e, |_| 1u64)
}

/// The partition of the basis into `D`-`E` double cosets, computed exactly.
pub fn coset_partition<'r>(
    ring: &'r FusionRing,
    d: &Subring<'r>,
    e: &Subring<'r>,
) -> Result<Partition> {
    check_operands(ring, d, e)?;
    let s = support_matrix(ring, d, e);
    Ok(Partition::components(ring.rank(), |i, j| s[i][j] > 0))
}

/// Left cosets `D X`, the classes of `r_{D,Vec}`.
pub fn left_cosets<'r>(ring: &'r FusionRing, d: &Subring<'r>) -> Result<Partition> {
    coset_partition(ring, d, &Subring::trivial(ring))
}

/// Right cosets `X E`, the classes of `r_{Vec,E}`.
pub fn right_cosets<'r>(ring: &'r FusionRing, e: &Subring<'r>) -> Result<Partition> {
    coset_partition(ring, &Subring::trivial(ring), e)
}

pub fn double_cosets<'r>(
    ring: &'r FusionRing,
    d: &Subring<'r>,
    e: &Subring<'r>,
    fp: &FPData,
) -> Result<CosetDecomposition<'r>> {
    check_operands(ring, d, e)?;
    if fp.dims.len() != ring.rank() {
        return Err(Error::LengthMismatch {
            expected: ring.rank(),
            found: fp.dims.len(),
        });
    }
    let support = support_matrix(ring, d, e);
    let classes = Partition::components(ring.rank(), |i, j| support[i][j] > 0);
    let class_vectors = classes.blocks().iter().map(|b| fp.weighted(b)).collect();
    let t_matrix = triple_products(ring, d, e, |i| fp.dims[i]);
    Ok(CosetDecomposition {
        ring,
        left: d.clone(),
        right: e.clone(),
        classes,
        class_vectors,
        support,
        t_matrix,
    })
}

/// Double cosets relative to the subrings generated by `a` and by `b`.
pub fn object_generated_relation<'r>(
    ring: &'r FusionRing,
    a: usize,
    b: usize,
    fp: &FPData,
) -> Result<CosetDecomposition<'r>> {
    let d = close_generated(ring, [a])?;
    let e = close_generated(ring, [b])?;
    double_cosets(ring, &d, &e, fp)
}

impl<'r> CosetDecomposition<'r> {
    pub fn ring(&self) -> &'r FusionRing {
        self.ring
    }

    pub fn left(&self) -> &Subring<'r> {
        &self.left
    }

    pub fn right(&self) -> &Subring<'r> {
        &self.right
    }

    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn class_vectors(&self) -> &[Vec<f64>] {
        &self.class_vectors
    }

    /// Exact integer matrix with the same support as `T`.
    pub fn support_matrix(&self) -> &[Vec<u64>] {
        &self.support
    }

    /// `T` in the basis: row `i` holds the coefficients of `R_D [X_i] R_E`.
    pub fn t_matrix(&self) -> &[Vec<f64>] {
        &self.t_matrix
    }

    /// `m([x], R_D [y] R_E) > 0`.
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.support[y][x] > 0
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.classes.block_of(x).expect("classes cover the basis")
    }

    /// `T(v) = R_D v R_E`.
    pub fn apply_t(&self, v: &[f64]) -> Vec<f64> {
        let n = self.ring.rank();
        let mut out = vec![0.0; n];
        for (i, &vi) in v.iter().enumerate().filter(|(_, c)| **c != 0.0) {
            for (o, t) in out.iter_mut().zip(&self.t_matrix[i]) {
                *o += vi * t;
            }
        }
        out
    }

    /// Exact symmetry of the integer support matrix.
    pub fn is_symmetric(&self) -> bool {
        let n = self.ring.rank();
        (0..n).all(|i| (0..i).all(|j| self.support[i][j] == self.support[j][i]))
    }

    /// `FPdim(D) · FPdim(E)`.
    pub fn principal_eigenvalue(&self, fp: &FPData) -> f64 {
        fp.span_dim(self.left.members()) * fp.span_dim(self.right.members())
    }

    /// Each class is stable under `R_D (−) R_E`.
    pub fn blocks_are_stable(&self) -> bool {
        self.classes
            .blocks()
            .iter()
            .zip(&self.class_vectors)
            .all(|(block, a)| {
                self.apply_t(a)
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0.0 || block.binary_search(&j).is_ok())
            })
    }

    /// Each diagonal block of the support matrix is indecomposable.
    pub fn blocks_are_irreducible(&self) -> bool {
        self.classes.blocks().iter().all(|block| {
            Partition::components(block.len(), |a, b| self.support[block[a]][block[b]] > 0).len()
                == 1
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    /// `FPdim(D) FPdim(E)`.
    pub expected: f64,
    /// Rayleigh quotient of the power-iteration limit.
    pub eigenvalue: f64,
    /// Per class, `‖T A_i − λ A_i‖_∞ / ‖A_i‖_∞`.
    pub class_defects: Vec<f64>,
    pub symmetric: bool,
    pub irreducible_blocks: bool,
    pub iterations: usize,
    pub passed: bool,
}

/// Checks that every `A_i` is a `T`-eigenvector for `FPdim(D) FPdim(E)`,
/// that this is the principal eigenvalue, and that the eigenspace has one
/// dimension per class.
pub fn verify_principal_eigendata(
    dec: &CosetDecomposition<'_>,
    fp: &FPData,
    tol: f64,
    start: Start,
) -> Result<EigenReport> {
    let expected = dec.principal_eigenvalue(fp);
    let class_defects: Vec<f64> = dec
        .class_vectors
        .iter()
        .map(|a| {
            let ta = dec.apply_t(a);
            let norm = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            ta.iter()
                .zip(a)
                .map(|(x, y)| (x - expected * y).abs())
                .fold(0.0, f64::max)
                / norm
        })
        .collect();
    let n = dec.ring.rank();
    let pi = power_iterate(|v| dec.apply_t(v), n, start, tol::ITERATION, tol::MAX_ITER)?;
    let tv = dec.apply_t(&pi.vector);
    let num: f64 = pi.vector.iter().zip(&tv).map(|(a, b)| a * b).sum();
    let den: f64 = pi.vector.iter().map(|a| a * a).sum();
    let eigenvalue = num / den;
    let symmetric = dec.is_symmetric();
    let irreducible_blocks = dec.blocks_are_irreducible();
    let passed = symmetric
        && irreducible_blocks
        && (eigenvalue - expected).abs() <= tol
        && class_defects.iter().all(|&d| d <= tol);
    Ok(EigenReport {
        expected,
        eigenvalue,
        class_defects,
        symmetric,
        irreducible_blocks,
        iterations: pi.iterations,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub class: usize,
    /// `FPdim(D) FPdim(X) FPdim(E) / FPdim(A_i)`.
    pub scalar: f64,
    /// `‖R_D [X] R_E − scalar · A_i‖_∞`.
    pub defect: f64,
    pub passed: bool,
}

/// Checks `R_D [X] R_E = (FPdim(D) FPdim(X) FPdim(E) / FPdim(A_i)) A_i` for `X` in class `i`.
pub fn coset_product_formula(
    dec: &CosetDecomposition<'_>,
    fp: &FPData,
    x: usize,
) -> Result<FormulaCheck> {
    crate::ring::check_index(x, dec.ring.rank())?;
    let class = dec.block_of(x);
    let a = &dec.class_vectors[class];
    let scalar = dec.principal_eigenvalue(fp) * fp.dims[x] / fp.element_dim(a);
    let defect = dec.t_matrix[x]
        .iter()
        .zip(a)
        .map(|(p, q)| (p - scalar * q).abs())
        .fold(0.0, f64::max);
    Ok(FormulaCheck {
        class,
        scalar,
        defect,
        passed: defect <= tol::RESIDUAL,
    })
}
