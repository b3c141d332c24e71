//! Spectra of target graphs. Everything here is floating point and only
//! feeds cross-checks and lower bounds, never an exact verdict.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::target::TargetGraph;

/// Tolerance used for eigenvalue comparisons and positivity checks.
pub const SPECTRAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    /// All eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Unit Perron eigenvector; present only for connected targets.
    pub top_eigenvector: Option<Vec<f64>>,
    /// `Σ y_i² ln(1 / y_i²)` for the Perron vector `y`.
    pub entropy: Option<f64>,
}

impl SpectralData {
    pub fn top_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

pub fn spectral_data(g: &TargetGraph) -> SpectralData {
    let k = g.k();
    if k == 0 {
        return SpectralData {
            eigenvalues: Vec::new(),
            top_eigenvector: None,
            entropy: None,
        };
    }
    let w = g.to_f64_matrix();
    let m = DMatrix::from_fn(k, k, |i, j| w[i][j]);
    let eig = SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = idx.iter().map(|&i| eig.eigenvalues[i]).collect();

    let (top_eigenvector, entropy) = if g.is_connected() {
        let col = eig.eigenvectors.column(idx[0]);
        let sign = if col.sum() < 0.0 { -1.0 } else { 1.0 };
        let norm = col.norm();
        let y: Vec<f64> = col.iter().map(|x| sign * x / norm).collect();
        let entropy = y
            .iter()
            .map(|x| x * x)
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum();
        (Some(y), Some(entropy))
    } else {
        (None, None)
    };

    SpectralData {
        eigenvalues,
        top_eigenvector,
        entropy,
    }
}

/// `Σ λ_i^len`, the number of closed walks of length `len`.
pub fn cycle_hom_spectral(len: u32, g: &TargetGraph) -> Result<f64> {
    if len < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {len} < 3")));
    }
    Ok(spectral_data(g)
        .eigenvalues
        .iter()
        .map(|l| l.powi(len as i32))
        .sum())
}

/// `exp(H_λ(G)) λ^{n-1}`, a lower bound on homomorphism counts of any tree
/// on `n` vertices into a connected target.
pub fn tree_hom_lower_bound(n: u32, g: &TargetGraph) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "tree needs at least one vertex".into(),
        ));
    }
    let data = spectral_data(g);
    let entropy = data.entropy.ok_or(Error::Disconnected)?;
    Ok(entropy.exp() * data.top_eigenvalue().powi(n as i32 - 1))
}
