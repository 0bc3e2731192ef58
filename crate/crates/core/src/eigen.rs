//! Hermitian eigendecomposition by cyclic-by-row complex Jacobi rotations.
//!
//! The solver favors determinism over speed: a fixed sweep order, a fixed
//! stopping criterion, and a fixed eigenvector phase convention mean that
//! identical inputs produce bit-identical output on every run. Jacobi is
//! also backward stable for Hermitian matrices, which keeps the
//! reconstruction and unitarity residuals well below the tolerances the
//! rest of the crate relies on.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use num_complex::Complex64;

/// Maximum asymmetry accepted in an allegedly Hermitian input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Sweep budget; with quadratic convergence this is generous even at
/// order 1024.
const MAX_SWEEPS: usize = 30;

/// Stop once the off-diagonal Frobenius norm falls below this multiple of
/// the input Frobenius norm.
const OFF_DIAGONAL_FACTOR: f64 = 1e-13;

/// Eigenvalues and eigenvectors of a Hermitian matrix.
///
/// `values` are sorted ascending and `basis` is unitary with column `k`
/// the eigenvector of `values[k]`. Each eigenvector is normalized so that
/// its first component of magnitude above `1e-12` is real and positive,
/// pinning the free phase.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub basis: CMatrix,
}

impl EigenSystem {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `W diag(f(lambda)) W^H`, assembled Hermitian by mirroring.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.order();
        let w = &self.basis;
        let fv: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += fv[k] * w[(i, k)] * w[(j, k)].conj();
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    /// Diagonal of `(W diag(lambda) W^H)^{-1}`, i.e. of the inverse of the
    /// matrix this system decomposes. Real by symmetry.
    pub fn inverse_diagonal(&self) -> Vec<f64> {
        let n = self.order();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| self.basis[(i, k)].norm_sqr() / self.values[k])
                    .sum()
            })
            .collect()
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be square and Hermitian within [`HERMITIAN_TOLERANCE`]
/// (measured as `max |a[m,n] - conj(a[n,m])|`); it is exactly symmetrized
/// before the sweeps so roundoff in the caller cannot leak through.
pub fn hermitian_eig(a: &CMatrix) -> Result<EigenSystem> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let residual = a.hermitian_residual();
    if residual > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian {
            residual,
            tolerance: HERMITIAN_TOLERANCE,
        });
    }

    let n = a.rows();
    let mut work = a.clone();
    for i in 0..n {
        work[(i, i)] = Complex64::new(work[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (work[(i, j)] + work[(j, i)].conj()) * 0.5;
            work[(i, j)] = avg;
            work[(j, i)] = avg.conj();
        }
    }

    let norm = work.frobenius_norm();
    let stop = OFF_DIAGONAL_FACTOR * norm;

    // Eigenvector accumulator, stored transposed so that the rotation
    // touches two contiguous rows instead of two strided columns.
    let mut wt = CMatrix::identity(n);

    let mut converged = norm == 0.0 || n == 1;
    if !converged {
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_norm(&work) <= stop {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut work, &mut wt, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&work) <= stop {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "Jacobi eigensolver",
            limit: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("non-NaN eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut basis = CMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let row = wt.row(src);
        let phase = row
            .iter()
            .find(|z| z.norm() > 1e-12)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(Complex64::new(1.0, 0.0));
        for j in 0..n {
            basis[(j, k)] = row[j] * phase;
        }
    }

    Ok(EigenSystem { values, basis })
}

/// Eigenvalues only; same sweeps without accumulating the basis.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eig(a).map(|e| e.values)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += a[(i, j)].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`, applied as `A <- J^H A J`
/// and accumulated into the transposed basis `wt <- J^T wt`.
fn rotate(a: &mut CMatrix, wt: &mut CMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let u = apq / mag;
    let cu = u.conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Rows p and q of A (contiguous), then mirror into the columns.
    {
        let data = a.data_mut();
        let (pr, qr) = split_rows(data, n, p, q);
        for j in 0..n {
            if j == p || j == q {
                continue;
            }
            let apj = pr[j];
            let aqj = qr[j];
            pr[j] = c * apj - s * u * aqj;
            qr[j] = s * apj + c * u * aqj;
        }
    }
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        a[(j, p)] = a[(p, j)].conj();
        a[(j, q)] = a[(q, j)].conj();
    }
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    // wt <- J^T wt: combines rows p and q of the transposed basis.
    {
        let data = wt.data_mut();
        let (pr, qr) = split_rows(data, n, p, q);
        for j in 0..n {
            let wp = pr[j];
            let wq = qr[j];
            pr[j] = c * wp - s * cu * wq;
            qr[j] = s * wp + c * cu * wq;
        }
    }
}

/// Disjoint mutable views of rows `p` and `q` (`p < q`) of a row-major
/// `n x n` buffer.
fn split_rows(data: &mut [Complex64], n: usize, p: usize, q: usize) -> (&mut [Complex64], &mut [Complex64]) {
    debug_assert!(p < q);
    let (head, tail) = data.split_at_mut(q * n);
    (&mut head[p * n..p * n + n], &mut tail[..n])
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are treated as roundoff and clamped to
/// zero; anything below `-1e-6` is rejected as genuinely indefinite.
pub fn hermitian_sqrt(a: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eig(a)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -1e-6 {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    Ok(eig.reconstruct_with(|v| v.max(0.0).sqrt()))
}
