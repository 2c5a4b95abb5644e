//! Spectra of the Gram Laplacians and the quantities derived from them:
//! `λ(T)` (smallest positive eigenvalue of `δ₁ᵀδ₁`), `τ(T)`, and the smallest
//! positive eigenvalues of the graph Laplacian and of the total edge Laplacian.
//!
//! The kernel dimension is never read off the floating-point spectrum. It is
//! `dim − rank(factor)` with the rank computed exactly; the eigenvalue at
//! index `nullity` of the ascending spectrum is then `λ_min⁺`. A band of
//! `1e-7·(1 + λ_max)` around zero is only used to cross-check that split.

use serde::{Serialize, Serializer};

use crate::eigen::eigenvalues_symmetric;
use crate::error::{Error, Result};
use crate::family::TriangleFamily;
use crate::incidence::{Coboundaries, LaplacianKind};
use crate::matrix::IntMatrix;
use crate::rank::exact_rank;

pub fn zero_band(lambda_max: f64) -> f64 {
    1e-7 * (1.0 + lambda_max.abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Exact kernel dimension.
    pub nullity: usize,
    pub source_dim: usize,
}

impl Spectrum {
    pub fn positive(&self) -> &[f64] {
        &self.eigenvalues[self.nullity..]
    }

    pub fn rank(&self) -> usize {
        self.source_dim - self.nullity
    }

    pub fn lambda_min_plus(&self) -> Option<f64> {
        self.positive().first().copied()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    fn check_kernel_split(&self, what: &str) -> Result<()> {
        let band = zero_band(self.max());
        if let Some(last_zero) = self.eigenvalues[..self.nullity].last() {
            if last_zero.abs() >= band {
                return Err(Error::Numerical(format!(
                    "{what}: kernel eigenvalue {last_zero:e} outside zero band {band:e}"
                )));
            }
        }
        if let Some(&first_pos) = self.positive().first() {
            if first_pos <= band {
                return Err(Error::Numerical(format!(
                    "{what}: positive eigenvalue {first_pos:e} inside zero band {band:e}"
                )));
            }
        }
        Ok(())
    }
}

/// Spectrum of a PSD Gram matrix whose factor has exact rank `rank`.
pub fn gram_spectrum(gram: &IntMatrix, rank: usize) -> Result<Spectrum> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric(f64::NAN));
    }
    let dim = gram.rows();
    if rank > dim {
        return Err(Error::Internal(format!("rank {rank} exceeds dimension {dim}")));
    }
    let spectrum = Spectrum {
        eigenvalues: eigenvalues_symmetric(&gram.to_real())?,
        nullity: dim - rank,
        source_dim: dim,
    };
    spectrum.check_kernel_split("gram spectrum")?;
    Ok(spectrum)
}

/// `λ_min⁺` of `gram`, where `rank(gram) = rank(factor)`.
pub fn lambda_min_plus(gram: &IntMatrix, factor: &IntMatrix) -> Result<f64> {
    let rank = exact_rank(factor);
    if rank == 0 {
        return Err(Error::NoPositiveEigenvalue);
    }
    let spectrum = gram_spectrum(gram, rank)?;
    Ok(spectrum.positive()[0])
}

/// `λ_min⁺` of a PSD matrix whose factor is not at hand.
pub fn lambda_min_plus_of_psd(gram: &IntMatrix) -> Result<f64> {
    lambda_min_plus(gram, gram)
}

/// Positive eigenvalues of one edge-connected block, computed on whichever of
/// `δ₁δ₁ᵀ` and `δ₁ᵀδ₁` is smaller. Returns `(rank, positive eigenvalues)`.
fn block_positive_spectrum(block: &TriangleFamily) -> Result<(usize, Vec<f64>)> {
    let cob = Coboundaries::new(block)?;
    let rank = exact_rank(&cob.delta1.matrix);
    let kind = if block.len() <= cob.graph.edge_count() {
        LaplacianKind::L2Down
    } else {
        LaplacianKind::L1Up
    };
    let spectrum = gram_spectrum(&cob.laplacian(kind).matrix, rank)?;
    Ok((rank, spectrum.positive().to_vec()))
}

/// Spectrum of `L₂^down` of the whole family, assembled from its diagonal
/// blocks. Kernel eigenvalues of blocks solved on the edge side are reported
/// as exact zeros.
pub fn down_spectrum(family: &TriangleFamily) -> Result<Spectrum> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut positive = Vec::new();
    let mut rank = 0;
    for block in family.edge_components() {
        let (r, pos) = block_positive_spectrum(&block)?;
        rank += r;
        positive.extend(pos);
    }
    positive.sort_by(f64::total_cmp);
    let nullity = family.len() - rank;
    let mut eigenvalues = vec![0.0; nullity];
    eigenvalues.extend(positive);
    Ok(Spectrum { eigenvalues, nullity, source_dim: family.len() })
}

/// `λ(T)`.
pub fn lambda(family: &TriangleFamily) -> Result<f64> {
    down_spectrum(family)?.lambda_min_plus().ok_or(Error::NoPositiveEigenvalue)
}

/// `λ(T)` computed on one full, unblocked Laplacian (`L1Up` or `L2Down`).
pub fn lambda_via(family: &TriangleFamily, kind: LaplacianKind) -> Result<f64> {
    if !matches!(kind, LaplacianKind::L1Up | LaplacianKind::L2Down) {
        return Err(Error::InvalidArgument(format!("λ(T) is not defined on {kind}")));
    }
    let cob = Coboundaries::new(family)?;
    lambda_min_plus(&cob.laplacian(kind).matrix, &cob.factor(kind))
}

/// Full spectrum of any of the five Laplacians, without block splitting.
pub fn laplacian_spectrum(family: &TriangleFamily, kind: LaplacianKind) -> Result<Spectrum> {
    let cob = Coboundaries::new(family)?;
    let rank = exact_rank(&cob.factor(kind));
    gram_spectrum(&cob.laplacian(kind).matrix, rank)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub lambda: f64,
    pub tau: Option<f64>,
    /// Kernel dimension of `L₂^down`.
    pub nullity: usize,
    #[serde(rename = "spectrum", serialize_with = "eigenvalues_only")]
    pub full_spectrum: Spectrum,
    #[serde(rename = "lambda_min_plus_L0")]
    pub lambda_min_plus_l0: f64,
    #[serde(rename = "lambda_min_plus_L1_total")]
    pub lambda_min_plus_l1_total: f64,
    pub dims: Dims,
}

fn eigenvalues_only<S: Serializer>(s: &Spectrum, ser: S) -> std::result::Result<S::Ok, S::Error> {
    s.eigenvalues.serialize(ser)
}

impl SpectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Smallest positive eigenvalues of `L₀` and `L₁` (total), split over the
/// connected components of the support graph.
fn graph_and_total_gaps(family: &TriangleFamily) -> Result<(f64, f64)> {
    let mut l0 = f64::INFINITY;
    let mut l1 = f64::INFINITY;
    for part in family.vertex_components() {
        let cob = Coboundaries::new(&part)?;
        for (kind, slot) in [(LaplacianKind::L0Up, &mut l0), (LaplacianKind::L1Total, &mut l1)] {
            let gap = lambda_min_plus(&cob.laplacian(kind).matrix, &cob.factor(kind))?;
            *slot = slot.min(gap);
        }
    }
    Ok((l0, l1))
}

pub fn spectral_report(family: &TriangleFamily) -> Result<SpectralReport> {
    let full_spectrum = down_spectrum(family)?;
    let positive = full_spectrum.positive();
    let lambda = *positive.first().ok_or(Error::NoPositiveEigenvalue)?;
    let tau = (positive.len() > 1).then(|| positive[1]);
    let (lambda_min_plus_l0, lambda_min_plus_l1_total) = graph_and_total_gaps(family)?;
    Ok(SpectralReport {
        lambda,
        tau,
        nullity: full_spectrum.nullity,
        full_spectrum,
        lambda_min_plus_l0,
        lambda_min_plus_l1_total,
        dims: Dims {
            vertices: family.vertices().len(),
            edges: family.edges().len(),
            triangles: family.len(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinGapCheck {
    pub lambda_min_plus_l1_total: f64,
    pub lambda_min_plus_l0: f64,
    pub lambda: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks `λ_min⁺(L₁) = min(λ_min⁺(L₀), λ(T))`.
pub fn verify_min_gap(family: &TriangleFamily) -> Result<MinGapCheck> {
    let lambda = lambda(family)?;
    let (l0, l1) = graph_and_total_gaps(family)?;
    let residual = (l1 - l0.min(lambda)).abs();
    let tolerance = 1e-7 * lambda.max(1.0);
    Ok(MinGapCheck {
        lambda_min_plus_l1_total: l1,
        lambda_min_plus_l0: l0,
        lambda,
        residual,
        tolerance,
        pass: residual <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(t: &[[u32; 3]]) -> TriangleFamily {
        TriangleFamily::from_triples(t).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-8
    }

    #[test]
    fn four_vertex_examples() {
        let t1 = fam(&[[1, 2, 3]]);
        let t2 = fam(&[[1, 2, 3], [1, 2, 4]]);
        let t3 = fam(&[[1, 2, 3], [1, 2, 4], [1, 3, 4]]);
        let t4 = fam(&[[1, 2, 3], [1, 2, 4], [2, 3, 4], [1, 3, 4]]);
        for (f, want) in [(&t1, 3.0), (&t2, 2.0), (&t3, 1.0), (&t4, 4.0)] {
            assert!(close(lambda(f).unwrap(), want), "{f}");
            assert!(close(lambda_via(f, LaplacianKind::L1Up).unwrap(), want));
            assert!(close(lambda_via(f, LaplacianKind::L2Down).unwrap(), want));
        }
        let r = spectral_report(&t1).unwrap();
        assert_eq!(r.nullity, 0);
        assert_eq!(r.tau, None);
    }

    #[test]
    fn report_on_k4() {
        let r = spectral_report(&fam(&[[1, 2, 3], [1, 2, 4], [2, 3, 4], [1, 3, 4]])).unwrap();
        assert!(close(r.lambda, 4.0));
        assert_eq!(r.nullity, 1);
        assert!(close(r.tau.unwrap(), 4.0));
        assert!(close(r.lambda_min_plus_l0, 4.0));
        assert!(close(r.lambda_min_plus_l1_total, 4.0));
        assert_eq!(r.dims, Dims { vertices: 4, edges: 6, triangles: 4 });
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["lambda", "tau", "nullity", "spectrum", "lambda_min_plus_L0", "lambda_min_plus_L1_total", "dims"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["spectrum"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn rank_zero_has_no_positive_eigenvalue() {
        let z = IntMatrix::zeros(3, 3);
        assert!(matches!(lambda_min_plus(&z, &z), Err(Error::NoPositiveEigenvalue)));
        assert!(matches!(lambda(&TriangleFamily::empty()), Err(Error::EmptyFamily)));
        assert!(lambda_via(&fam(&[[1, 2, 3]]), LaplacianKind::L0Up).is_err());
    }

    #[test]
    fn min_gap_on_two_triangles() {
        let c = verify_min_gap(&fam(&[[1, 2, 3], [1, 2, 4]])).unwrap();
        // Support graph: K4 minus {3,4}; its Laplacian has λ₂ = 2.
        assert!(close(c.lambda_min_plus_l0, 2.0));
        assert!(close(c.lambda, 2.0));
        assert!(c.pass);
    }

    #[test]
    fn blocked_spectrum_matches_direct() {
        let f = fam(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [4, 5, 6], [5, 6, 7], [8, 9, 10]]);
        let blocked = down_spectrum(&f).unwrap();
        let direct = laplacian_spectrum(&f, LaplacianKind::L2Down).unwrap();
        assert_eq!(blocked.nullity, direct.nullity);
        for (a, b) in blocked.eigenvalues.iter().zip(&direct.eigenvalues) {
            assert!((a - b).abs() < 1e-9, "{blocked:?} vs {direct:?}");
        }
    }
}
