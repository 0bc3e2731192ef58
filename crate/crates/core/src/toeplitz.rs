//! Hermitian Toeplitz covariance models.
//!
//! A transmit-side covariance is represented by its first-row
//! autocovariance sequence `sigma(0), sigma(1), ...` with
//! `[Sigma]_{mn} = sigma(n-m)` above the diagonal and the conjugate
//! mirror below. The single-parameter exponential (Kac-Murdock-Szego)
//! model `sigma(k) = rho^k` gets dedicated closed forms: its tridiagonal
//! inverse, its analytic eigenvalues, and its spectral density.

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Hermitian Toeplitz matrix stored as its first-row autocovariance
/// sequence; the matrix order equals the sequence length.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianToeplitz {
    autocov: Vec<Complex64>,
}

impl HermitianToeplitz {
    /// Requires a nonempty sequence with `sigma(0)` real and positive.
    pub fn new(autocov: Vec<Complex64>) -> Result<Self> {
        if autocov.is_empty() {
            return Err(Error::Dimension("autocovariance sequence is empty".into()));
        }
        let head = autocov[0];
        if head.im.abs() > 1e-12 || head.re <= 0.0 {
            return Err(Error::Domain(format!(
                "sigma(0) must be real and positive, got {head}"
            )));
        }
        Ok(Self { autocov })
    }

    pub fn order(&self) -> usize {
        self.autocov.len()
    }

    pub fn autocov(&self) -> &[Complex64] {
        &self.autocov
    }

    /// Dense matrix, built by mirroring the upper triangle so the result
    /// is Hermitian exactly.
    pub fn materialize(&self) -> CMatrix {
        let n = self.order();
        let mut m = CMatrix::zeros(n, n);
        for r in 0..n {
            m[(r, r)] = Complex64::new(self.autocov[0].re, 0.0);
            for c in (r + 1)..n {
                let v = self.autocov[c - r];
                m[(r, c)] = v;
                m[(c, r)] = v.conj();
            }
        }
        m
    }

    /// Truncated spectral density
    /// `s(omega) = sigma(0) + 2 Re sum_{k>=1} sigma(k) e^{-jk omega}`.
    ///
    /// The sum uses exactly the stored sequence; no extrapolation. Errors
    /// if the truncated value is nonpositive, since every consumer of the
    /// density requires a strictly positive symbol.
    pub fn psd(&self, omega: f64) -> Result<f64> {
        let mut acc = self.autocov[0].re;
        for (k, sigma) in self.autocov.iter().enumerate().skip(1) {
            acc += 2.0 * (sigma * Complex64::from_polar(1.0, -(k as f64) * omega)).re;
        }
        if acc <= 0.0 {
            return Err(Error::NonpositivePsd { omega, value: acc });
        }
        Ok(acc)
    }
}

/// Exponential (Kac-Murdock-Szego) correlation model with complex
/// coefficient `rho`, `|rho| < 1`. `rho = 0` is the uncorrelated
/// (identity) case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmsModel {
    rho: Complex64,
}

impl KmsModel {
    pub fn new(rho: Complex64) -> Result<Self> {
        let mag = rho.norm();
        if !(mag < 1.0) {
            return Err(Error::InvalidCorrelation(mag));
        }
        Ok(Self { rho })
    }

    /// Convenience constructor from magnitude and phase in radians.
    pub fn from_polar(mag: f64, phase_rad: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(mag, phase_rad))
    }

    pub fn rho(&self) -> Complex64 {
        self.rho
    }

    pub fn magnitude(&self) -> f64 {
        self.rho.norm()
    }

    /// Autocovariance sequence `sigma(k) = rho^k`, `k = 0..n-1`.
    pub fn covariance(&self, n: usize) -> Result<HermitianToeplitz> {
        if n == 0 {
            return Err(Error::Dimension("matrix order must be >= 1".into()));
        }
        let mut autocov = Vec::with_capacity(n);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            autocov.push(acc);
            acc *= self.rho;
        }
        HermitianToeplitz::new(autocov)
    }

    /// Tridiagonal inverse of the order-`n` covariance: scale
    /// `1/(1-|rho|^2)`, corner diagonal entries `1`, interior diagonal
    /// entries `1+|rho|^2`, super-diagonal `-rho`, sub-diagonal `-rho*`.
    pub fn inverse(&self, n: usize) -> Result<CMatrix> {
        if n < 2 {
            return Err(Error::Dimension(format!(
                "the tridiagonal inverse needs order >= 2, got {n}"
            )));
        }
        let mag2 = self.rho.norm_sqr();
        let scale = 1.0 / (1.0 - mag2);
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            let d = if i == 0 || i == n - 1 { 1.0 } else { 1.0 + mag2 };
            m[(i, i)] = Complex64::new(scale * d, 0.0);
            if i + 1 < n {
                let off = -self.rho * scale;
                m[(i, i + 1)] = off;
                m[(i + 1, i)] = off.conj();
            }
        }
        Ok(m)
    }

    /// Analytic eigenvalues of the order-`n` covariance, ascending.
    ///
    /// Each eigenvalue is
    /// `zeta_k = (1-|rho|^2) / (1+|rho|^2 + 2|rho| cos(theta_k))` where the
    /// `theta_k` are the `n` roots in `(0, pi)` of
    /// `sin((n+1)t) + 2|rho| sin(nt) + |rho|^2 sin((n-1)t) = 0`,
    /// located by bisection on `4n` uniform brackets (tolerance `1e-12`
    /// in `theta`). Only `|rho|` enters: the complex phase is a unitary
    /// diagonal similarity of the covariance.
    pub fn eigenvalues(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Dimension("matrix order must be >= 1".into()));
        }
        let r = self.magnitude();
        if r == 0.0 {
            return Ok(vec![1.0; n]);
        }
        let f = |t: f64| {
            ((n as f64 + 1.0) * t).sin()
                + 2.0 * r * ((n as f64) * t).sin()
                + r * r * ((n as f64 - 1.0) * t).sin()
        };
        let brackets = 4 * n;
        let step = PI / brackets as f64;
        let mut thetas = Vec::with_capacity(n);
        let mut prev_t = step * 1e-9;
        let mut prev_f = f(prev_t);
        for i in 1..=brackets {
            let t = if i == brackets {
                PI - step * 1e-9
            } else {
                i as f64 * step
            };
            let ft = f(t);
            if prev_f == 0.0 {
                thetas.push(prev_t);
            } else if prev_f * ft < 0.0 {
                let (mut lo, mut hi) = (prev_t, t);
                let mut flo = prev_f;
                while hi - lo > 1e-12 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                thetas.push(0.5 * (lo + hi));
            }
            prev_t = t;
            prev_f = ft;
        }
        if thetas.len() != n {
            return Err(Error::Bracketing {
                lo: 0.0,
                hi: PI,
                expected: n,
                found: thetas.len(),
            });
        }
        // theta ascending already gives zeta ascending: the denominator
        // decreases as cos(theta) falls.
        let vals: Vec<f64> = thetas
            .iter()
            .map(|&t| (1.0 - r * r) / (1.0 + r * r + 2.0 * r * t.cos()))
            .collect();
        Ok(vals)
    }

    /// Closed-form spectral density
    /// `s(omega) = (1-|rho|^2) / (1+|rho|^2 - 2 Re[rho e^{j omega}])`.
    pub fn psd(&self, omega: f64) -> f64 {
        let mag2 = self.rho.norm_sqr();
        (1.0 - mag2) / (1.0 + mag2 - 2.0 * (self.rho * Complex64::from_polar(1.0, omega)).re)
    }

    /// Range of the spectral density: `((1-|rho|)/(1+|rho|), (1+|rho|)/(1-|rho|))`.
    pub fn psd_bounds(&self) -> (f64, f64) {
        let r = self.magnitude();
        ((1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r))
    }
}

/// A covariance model selectable at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum CovarianceModel {
    Kms(KmsModel),
    Toeplitz(HermitianToeplitz),
}

impl CovarianceModel {
    /// Dense covariance of order `n`. A general Toeplitz model carries its
    /// own order, which must match.
    pub fn materialize(&self, n: usize) -> Result<CMatrix> {
        match self {
            CovarianceModel::Kms(kms) => Ok(kms.covariance(n)?.materialize()),
            CovarianceModel::Toeplitz(t) => {
                if t.order() != n {
                    return Err(Error::Dimension(format!(
                        "Toeplitz model has order {}, requested {n}",
                        t.order()
                    )));
                }
                Ok(t.materialize())
            }
        }
    }

    pub fn psd(&self, omega: f64) -> Result<f64> {
        match self {
            CovarianceModel::Kms(kms) => Ok(kms.psd(omega)),
            CovarianceModel::Toeplitz(t) => t.psd(omega),
        }
    }

    pub fn kms(&self) -> Option<&KmsModel> {
        match self {
            CovarianceModel::Kms(kms) => Some(kms),
            CovarianceModel::Toeplitz(_) => None,
        }
    }
}

/// Minimum eigenvalue of a dense Hermitian matrix; convenience used by
/// positivity checks.
pub fn min_eigenvalue(a: &CMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(a)?;
    Ok(values.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kms_zero_rho_is_identity() {
        let kms = KmsModel::new(c(0.0, 0.0)).unwrap();
        let m = kms.covariance(3).unwrap().materialize();
        assert!(m.max_abs_diff(&CMatrix::identity(3)) == 0.0);
    }

    #[test]
    fn kms_real_two_by_two() {
        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        let m = kms.covariance(2).unwrap().materialize();
        let expected = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.5, 0.0)], vec![c(0.5, 0.0), c(1.0, 0.0)]]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn kms_complex_entries_and_unit_diagonal() {
        let rho = Complex64::from_polar(0.1, 0.5);
        let kms = KmsModel::new(rho).unwrap();
        let m = kms.covariance(50).unwrap().materialize();
        assert!((m[(0, 1)] - rho).norm() < 1e-15);
        assert!((m[(1, 0)] - rho.conj()).norm() < 1e-15);
        for i in 0..50 {
            assert!((m[(i, i)] - c(1.0, 0.0)).norm() == 0.0);
        }
    }

    #[test]
    fn kms_rejects_unit_correlation() {
        assert!(matches!(
            KmsModel::new(c(1.0, 0.0)),
            Err(Error::InvalidCorrelation(_))
        ));
        assert!(matches!(
            KmsModel::from_polar(1.2, 0.3),
            Err(Error::InvalidCorrelation(_))
        ));
    }

    #[test]
    fn materialize_examples() {
        let t = HermitianToeplitz::new(vec![c(1.0, 0.0)]).unwrap();
        assert!(t.materialize().max_abs_diff(&CMatrix::identity(1)) == 0.0);

        let t = HermitianToeplitz::new(vec![c(1.0, 0.0), c(0.0, 0.5)]).unwrap();
        let m = t.materialize();
        assert_eq!(m[(0, 1)], c(0.0, 0.5));
        assert_eq!(m[(1, 0)], c(0.0, -0.5));
        assert!(m.hermitian_residual() == 0.0);

        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        let m = kms.covariance(3).unwrap().materialize();
        let expected = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.0), c(0.25, 0.0)],
            vec![c(0.5, 0.0), c(1.0, 0.0), c(0.5, 0.0)],
            vec![c(0.25, 0.0), c(0.5, 0.0), c(1.0, 0.0)],
        ]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let kms = KmsModel::new(c(0.0, 0.0)).unwrap();
        assert!(kms.inverse(3).unwrap().max_abs_diff(&CMatrix::identity(3)) < 1e-15);

        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        let inv = kms.inverse(2).unwrap();
        let expected = CMatrix::from_rows(&[
            vec![c(1.0 / 0.75, 0.0), c(-0.5 / 0.75, 0.0)],
            vec![c(-0.5 / 0.75, 0.0), c(1.0 / 0.75, 0.0)],
        ]);
        assert!(inv.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn inverse_times_covariance_is_identity() {
        let kms = KmsModel::from_polar(0.5, 0.5).unwrap();
        let n = 8;
        let product = &kms.covariance(n).unwrap().materialize() * &kms.inverse(n).unwrap();
        assert!(product.max_abs_diff(&CMatrix::identity(n)) < 1e-10);
    }

    #[test]
    fn analytic_eigenvalues_match_dense_solver() {
        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        let analytic = kms.eigenvalues(16).unwrap();
        let dense = hermitian_eig(&kms.covariance(16).unwrap().materialize()).unwrap();
        for (a, d) in analytic.iter().zip(&dense.values) {
            assert!((a - d).abs() < 1e-8, "analytic {a} vs dense {d}");
        }
    }

    #[test]
    fn analytic_eigenvalues_grid() {
        for &mag in &[0.1, 0.5, 0.9] {
            for &n in &[4usize, 16, 64] {
                let kms = KmsModel::from_polar(mag, 0.5).unwrap();
                let analytic = kms.eigenvalues(n).unwrap();
                let dense =
                    hermitian_eigenvalues(&kms.covariance(n).unwrap().materialize()).unwrap();
                let floor = (1.0 - mag) / (1.0 + mag);
                let sum: f64 = analytic.iter().sum();
                assert!((sum - n as f64).abs() < 1e-6 * n as f64, "trace {sum} != {n}");
                assert!(analytic[0] >= floor - 1e-9);
                for (a, d) in analytic.iter().zip(&dense) {
                    assert!((a - d).abs() < 1e-8, "mag={mag} n={n}: {a} vs {d}");
                }
            }
        }
    }

    #[test]
    fn kms_min_eigenvalue_floor_at_64() {
        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        let eig = hermitian_eigenvalues(&kms.covariance(64).unwrap().materialize()).unwrap();
        assert!(eig[0] >= (1.0 - 0.5) / (1.0 + 0.5) - 1e-10);
    }

    #[test]
    fn psd_examples() {
        let kms = KmsModel::new(c(0.0, 0.0)).unwrap();
        for w in [0.0, 1.0, 3.0] {
            assert!((kms.psd(w) - 1.0).abs() < 1e-15);
        }
        let kms = KmsModel::new(c(0.5, 0.0)).unwrap();
        assert!((kms.psd(0.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn psd_truncated_matches_geometric_partial_sum() {
        // General-Toeplitz route against a directly summed oracle.
        let rho = Complex64::from_polar(0.5, 0.5);
        let n = 40;
        let kms = KmsModel::new(rho).unwrap();
        let t = kms.covariance(n).unwrap();
        for &w in &[0.0, 0.7, 2.0, 5.5] {
            let mut oracle = Complex64::new(0.0, 0.0);
            for k in 1..n {
                oracle += rho.powu(k as u32) * Complex64::from_polar(1.0, -(k as f64) * w);
            }
            let expected = 1.0 + 2.0 * oracle.re;
            assert!((t.psd(w).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn psd_bounds_on_grid() {
        for &mag in &[0.1, 0.5, 0.9] {
            let kms = KmsModel::from_polar(mag, 0.5).unwrap();
            let (lo, hi) = kms.psd_bounds();
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for i in 0..4096 {
                let w = 2.0 * PI * i as f64 / 4096.0;
                let s = kms.psd(w);
                min = min.min(s);
                max = max.max(s);
            }
            assert!(min >= lo - 1e-12, "min {min} below floor {lo}");
            assert!(max <= hi + 1e-12, "max {max} above ceiling {hi}");
        }
    }

    #[test]
    fn truncated_psd_can_reject_nonpositive() {
        let t = HermitianToeplitz::new(vec![c(1.0, 0.0), c(0.6, 0.0), c(0.6, 0.0)]).unwrap();
        // s(2*pi/3) = 1 + 1.2 cos(2pi/3) + 1.2 cos(4pi/3) = -0.2
        match t.psd(2.0 * PI / 3.0) {
            Err(Error::NonpositivePsd { .. }) => {}
            other => panic!("expected NonpositivePsd, got {other:?}"),
        }
    }
}
