//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

pub const MAX_SWEEPS: usize = 100;
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const CONVERGENCE_TOLERANCE: f64 = 1e-12;

/// All eigenvalues of `m`, ascending.
///
/// Sweeps visit `(p, q)` pairs in row-major order and stop once the
/// off-diagonal Frobenius norm drops below `1e-12 · (1 + ‖diag‖)`.
pub fn eigenvalues_symmetric(m: &RealMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "eigenvalues of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let asym = m.max_asymmetry();
    if asym >= SYMMETRY_TOLERANCE {
        return Err(Error::NotSymmetric(asym));
    }
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();

    let mut converged = false;
    let mut residual = 0.0;
    for _ in 0..=MAX_SWEEPS {
        let (off, diag) = norms(&a);
        residual = off;
        if off < CONVERGENCE_TOLERANCE * (1.0 + diag) {
            converged = true;
            break;
        }
        sweep(&mut a);
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, residual });
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn norms(a: &[Vec<f64>]) -> (f64, f64) {
    let mut off = 0.0;
    let mut diag = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                diag += v * v;
            } else {
                off += v * v;
            }
        }
    }
    (off.sqrt(), diag.sqrt())
}

#[allow(clippy::needless_range_loop)]
fn sweep(a: &mut [Vec<f64>]) {
    let n = a.len();
    for p in 0..n {
        for q in p + 1..n {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let (app, aqq) = (a[p][p], a[q][q]);
            // Rotation angle annihilating a[p][q]; |t| <= 1 picks the smaller angle.
            let theta = (aqq - app) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
            let c = 1.0 / t.hypot(1.0);
            let s = t * c;

            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            for k in 0..n {
                if k == p || k == q {
                    continue;
                }
                let akp = a[k][p];
                let akq = a[k][q];
                let new_kp = c * akp - s * akq;
                let new_kq = s * akp + c * akq;
                a[k][p] = new_kp;
                a[p][k] = new_kp;
                a[k][q] = new_kq;
                a[q][k] = new_kq;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let v = eigenvalues_symmetric(&RealMatrix::identity(3)).unwrap();
        assert_eq!(v, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn one_by_one_and_empty() {
        assert_eq!(eigenvalues_symmetric(&RealMatrix::from_rows(vec![vec![3.0]])).unwrap(), vec![3.0]);
        assert!(eigenvalues_symmetric(&RealMatrix::zeros(0, 0)).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_laplacian() {
        // K4 Laplacian: 4I - J has spectrum (0, 4, 4, 4).
        let m = RealMatrix::from_rows(
            (0..4).map(|i| (0..4).map(|j| if i == j { 3.0 } else { -1.0 }).collect()).collect(),
        );
        let v = eigenvalues_symmetric(&m).unwrap();
        for (got, want) in v.iter().zip([0.0, 4.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, c) = (2.0, -1.5, 5.0);
        let m = RealMatrix::from_rows(vec![vec![a, b], vec![b, c]]);
        let v = eigenvalues_symmetric(&m).unwrap();
        let mid = (a + c) / 2.0;
        let rad = ((a - c) / 2.0).hypot(b);
        assert!((v[0] - (mid - rad)).abs() < 1e-13);
        assert!((v[1] - (mid + rad)).abs() < 1e-13);
    }

    #[test]
    fn path_graph_laplacian_matches_cosine_formula() {
        // Path on n vertices: eigenvalues 2 - 2cos(pi k / n), k = 0..n-1.
        let n = 30;
        let mut m = RealMatrix::zeros(n, n);
        for i in 0..n - 1 {
            m[(i, i)] += 1.0;
            m[(i + 1, i + 1)] += 1.0;
            m[(i, i + 1)] = -1.0;
            m[(i + 1, i)] = -1.0;
        }
        let v = eigenvalues_symmetric(&m).unwrap();
        for (k, got) in v.iter().enumerate() {
            let want = 2.0 - 2.0 * (std::f64::consts::PI * k as f64 / n as f64).cos();
            assert!((got - want).abs() < 1e-11, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn rejects_asymmetric_and_non_square() {
        let m = RealMatrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(eigenvalues_symmetric(&m), Err(Error::NotSymmetric(_))));
        assert!(eigenvalues_symmetric(&RealMatrix::zeros(2, 3)).is_err());
    }
}
