//! Baseline divergences between histogram densities.
//!
//! Reference implementations used for comparison and axiom testing: the KL
//! and Pearson divergences are asymmetric and need smoothing near empty bins;
//! the L² distance is a true symmetric metric and needs none. All three
//! operate on identically binned [`HistogramDensity`] values and approximate
//! the continuous integrals by bin sums.

use crate::distributions::HistogramDensity;
use crate::error::{Error, Result};

fn check_pair(p: &HistogramDensity, q: &HistogramDensity) -> Result<()> {
    if !p.same_binning(q) {
        return Err(Error::BinningMismatch);
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(())
}

/// Adds `epsilon` to every bin and renormalizes so the density still
/// integrates to one. Both arguments of a divergence get the same treatment
/// so smoothing cannot bias asymmetry comparisons.
fn smoothed(density: &HistogramDensity, epsilon: f64) -> Vec<f64> {
    let width = density.bin_width;
    let total: f64 = density.bins.iter().map(|b| (b + epsilon) * width).sum();
    density.bins.iter().map(|b| (b + epsilon) / total).collect()
}

/// `∫ p ln(p/q)`, natural log, over smoothed densities.
pub fn kl_divergence(p: &HistogramDensity, q: &HistogramDensity, epsilon: f64) -> Result<f64> {
    check_pair(p, q)?;
    check_epsilon(epsilon)?;
    let ps = smoothed(p, epsilon);
    let qs = smoothed(q, epsilon);
    Ok(ps
        .iter()
        .zip(&qs)
        .map(|(&pi, &qi)| pi * (pi / qi).ln() * p.bin_width)
        .sum())
}

/// `∫ q (p/q - 1)²`, over smoothed densities.
pub fn pearson_divergence(p: &HistogramDensity, q: &HistogramDensity, epsilon: f64) -> Result<f64> {
    check_pair(p, q)?;
    check_epsilon(epsilon)?;
    let ps = smoothed(p, epsilon);
    let qs = smoothed(q, epsilon);
    Ok(ps
        .iter()
        .zip(&qs)
        .map(|(&pi, &qi)| {
            let ratio = pi / qi - 1.0;
            qi * ratio * ratio * p.bin_width
        })
        .sum())
}

/// `∫ (p - q)²`. The difference of finite densities is finite, so no
/// smoothing is applied.
pub fn l2_distance(p: &HistogramDensity, q: &HistogramDensity) -> Result<f64> {
    check_pair(p, q)?;
    Ok(p.bins
        .iter()
        .zip(&q.bins)
        .map(|(&pi, &qi)| (pi - qi) * (pi - qi) * p.bin_width)
        .sum())
}
