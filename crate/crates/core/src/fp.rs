//! Frobenius–Perron dimensions and regular elements.
//!
//! FP dimensions are the unique positive ring character of a fusion ring.
//! They are obtained as the Perron eigenvector of `M = Σ_i N_i`, which is
//! entrywise positive for a fusion ring, and then gated by the homomorphism
//! residual `max |Σ_k N_{ij}^k d_k − d_i d_j|`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{FusionRing, UNIT};
use crate::subring::Subring;
use crate::tol;

/// Starting vector for power iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Ones,
    /// Uniform in `[0.5, 1.5)` from a ChaCha8 stream with this seed.
    Random(u64),
}

impl Start {
    fn vector(self, n: usize) -> Vec<f64> {
        match self {
            Start::Ones => vec![1.0; n],
            Start::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n).map(|_| rng.gen_range(0.5..1.5)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    pub eigenvalue: f64,
    /// Normalized to unit max-norm.
    pub vector: Vec<f64>,
    pub iterations: usize,
}

/// Power iteration for a nonnegative operator with a positive start vector.
///
/// Stops when the max-norm change of the normalized iterate drops to `tol`.
pub fn power_iterate<F>(
    apply: F,
    n: usize,
    start: Start,
    tol: f64,
    max_iter: usize,
) -> Result<PowerIteration>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let mut v = normalize(start.vector(n));
    let mut change = f64::INFINITY;
    for iteration in 1..=max_iter {
        let w = normalize(apply(&v));
        change = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = w;
        if change <= tol {
            let eigenvalue = max_norm(&apply(&v));
            return Ok(PowerIteration {
                eigenvalue,
                vector: v,
                iterations: iteration,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        change,
    })
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let norm = max_norm(&v);
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FPData {
    pub dims: Vec<f64>,
    pub ring_dim: f64,
    pub residual: f64,
}

impl FPData {
    /// `Σ c_i FPdim(X_i)`.
    pub fn element_dim(&self, coeffs: &[f64]) -> f64 {
        coeffs.iter().zip(&self.dims).map(|(c, d)| c * d).sum()
    }

    /// FP dimension of the span of `members`: `Σ FPdim(X)²`.
    pub fn span_dim(&self, members: &[usize]) -> f64 {
        members.iter().map(|&i| self.dims[i] * self.dims[i]).sum()
    }

    /// `Σ_{X ∈ members} FPdim(X)[X]` as a full coefficient vector.
    pub fn weighted(&self, members: &[usize]) -> Vec<f64> {
        let mut v = vec![0.0; self.dims.len()];
        for &i in members {
            v[i] = self.dims[i];
        }
        v
    }
}

pub fn compute_fp_dims(ring: &FusionRing, tol: f64, max_iter: usize) -> Result<FPData> {
    compute_fp_dims_from(ring, Start::Ones, tol, max_iter)
}

pub fn compute_fp_dims_from(
    ring: &FusionRing,
    start: Start,
    tol: f64,
    max_iter: usize,
) -> Result<FPData> {
    let n = ring.rank();
    // (M)_{jk} = Σ_i N_{ij}^k
    let mut m = vec![vec![0.0; n]; n];
    for (_, j, k, v) in ring.constants() {
        m[j][k] += v as f64;
    }
    let apply = |x: &[f64]| -> Vec<f64> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };
    let pi = power_iterate(apply, n, start, tol, max_iter)?;
    let scale = pi.vector[UNIT];
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::FpResidual {
            residual: f64::INFINITY,
            limit: tol::RESIDUAL,
        });
    }
    let dims: Vec<f64> = pi.vector.iter().map(|x| x / scale).collect();

    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs: f64 = ring
                .product(i, j)
                .iter()
                .map(|&(k, v)| v as f64 * dims[k])
                .sum();
            residual = residual.max((lhs - dims[i] * dims[j]).abs());
        }
    }
    if residual > tol::RESIDUAL {
        return Err(Error::FpResidual {
            residual,
            limit: tol::RESIDUAL,
        });
    }
    let ring_dim = dims.iter().map(|d| d * d).sum();
    Ok(FPData {
        dims,
        ring_dim,
        residual,
    })
}

/// `R_S = Σ_{X ∈ S} FPdim(X)[X]` with its exact support.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularElement {
    pub support: Vec<usize>,
    pub coeffs: Vec<f64>,
}

impl RegularElement {
    pub fn dim(&self, fp: &FPData) -> f64 {
        fp.element_dim(&self.coeffs)
    }
}

pub fn regular_element(
    ring: &FusionRing,
    sub: &Subring<'_>,
    fp: &FPData,
) -> Result<RegularElement> {
    if !std::ptr::eq(ring, sub.ring()) {
        return Err(Error::RingMismatch);
    }
    if fp.dims.len() != ring.rank() {
        return Err(Error::LengthMismatch {
            expected: ring.rank(),
            found: fp.dims.len(),
        });
    }
    Ok(RegularElement {
        support: sub.members().to_vec(),
        coeffs: fp.weighted(sub.members()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionReport {
    /// Per basis element, `‖X R − FPdim(X) R‖_∞`.
    pub left_defects: Vec<f64>,
    /// Per basis element, `‖R X − FPdim(X) R‖_∞`.
    pub right_defects: Vec<f64>,
    /// `‖R² − FPdim(C) R‖_∞`.
    pub square_defect: f64,
    pub passed: bool,
}

impl AbsorptionReport {
    pub fn max_defect(&self) -> f64 {
        self.left_defects
            .iter()
            .chain(&self.right_defects)
            .fold(self.square_defect, |m, &x| m.max(x))
    }
}

/// Checks `[X] R_C = R_C [X] = FPdim(X) R_C` for every basis element and `R_C² = FPdim(C) R_C`.
pub fn check_regular_absorption(ring: &FusionRing, fp: &FPData) -> AbsorptionReport {
    let n = ring.rank();
    let all: Vec<usize> = (0..n).collect();
    let reg = fp.weighted(&all);
    let defect = |a: &[f64], b: &[f64], s: f64| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - s * y).abs())
            .fold(0.0, f64::max)
    };
    let mut left_defects = Vec::with_capacity(n);
    let mut right_defects = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        left_defects.push(defect(&ring.mul_f64(&x, &reg), &reg, fp.dims[i]));
        right_defects.push(defect(&ring.mul_f64(&reg, &x), &reg, fp.dims[i]));
    }
    let square_defect = defect(&ring.mul_f64(&reg, &reg), &reg, fp.ring_dim);
    let mut report = AbsorptionReport {
        left_defects,
        right_defects,
        square_defect,
        passed: false,
    };
    report.passed = report.max_defect() <= tol::RESIDUAL;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::{fibonacci, ising};

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn fibonacci_dims() {
        let fp = compute_fp_dims(&fibonacci(), tol::ITERATION, tol::MAX_ITER).unwrap();
        assert_eq!(fp.dims[0], 1.0);
        let t = fp.dims[1];
        assert!((t * t - t - 1.0).abs() <= 1e-9);
        assert!((t - PHI).abs() <= 1e-9);
        assert!(fp.residual <= tol::RESIDUAL);
    }

    #[test]
    fn ising_dims() {
        let fp = compute_fp_dims(&ising(), tol::ITERATION, tol::MAX_ITER).unwrap();
        assert!((fp.dims[1] - 1.0).abs() <= 1e-9);
        assert!((fp.dims[2] - 2f64.sqrt()).abs() <= 1e-9);
        assert!((fp.ring_dim - 4.0).abs() <= 1e-9);
    }

    #[test]
    fn start_vector_does_not_matter() {
        let r = ising();
        let a = compute_fp_dims(&r, tol::ITERATION, tol::MAX_ITER).unwrap();
        for seed in 0..5 {
            let b = compute_fp_dims_from(&r, Start::Random(seed), tol::ITERATION, tol::MAX_ITER)
                .unwrap();
            for (x, y) in a.dims.iter().zip(&b.dims) {
                assert!((x - y).abs() <= 10.0 * tol::ITERATION);
            }
        }
    }

    #[test]
    fn non_fusion_ring_is_rejected() {
        // x² = 2x: positive eigenvector exists but the unit row is broken.
        let r = FusionRing::new(
            "bad",
            vec!["1".into(), "x".into()],
            vec![0, 1],
            [
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (1, 1, 1, 2),
                (0, 0, 1, 1),
            ],
        )
        .unwrap();
        assert!(matches!(
            compute_fp_dims(&r, tol::ITERATION, tol::MAX_ITER),
            Err(Error::FpResidual { .. })
        ));
    }

    #[test]
    fn iteration_budget_is_enforced() {
        assert!(matches!(
            compute_fp_dims_from(&fibonacci(), Start::Random(1), 0.0, 3),
            Err(Error::NoConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn regular_elements() {
        let r = ising();
        let fp = compute_fp_dims(&r, tol::ITERATION, tol::MAX_ITER).unwrap();
        let full = regular_element(&r, &Subring::full(&r), &fp).unwrap();
        assert_eq!(full.support, vec![0, 1, 2]);
        assert!((full.coeffs[2] - 2f64.sqrt()).abs() <= 1e-9);
        let vec = regular_element(&r, &Subring::trivial(&r), &fp).unwrap();
        assert_eq!(vec.coeffs, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn absorption() {
        for r in [fibonacci(), ising()] {
            let fp = compute_fp_dims(&r, tol::ITERATION, tol::MAX_ITER).unwrap();
            assert!(check_regular_absorption(&r, &fp).passed);
        }
        let t = FusionRing::new("vec", vec!["1".into()], vec![0], [(0, 0, 0, 1)]).unwrap();
        let fp = compute_fp_dims(&t, tol::ITERATION, tol::MAX_ITER).unwrap();
        assert!(check_regular_absorption(&t, &fp).passed);
    }
}
