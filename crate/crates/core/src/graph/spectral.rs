use super::{CirculantSpec, Graph};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Minimum pairwise gap for the values of f to count as distinct.
pub const INJECTIVE_F_TOLERANCE: f64 = 1e-6;
/// Equality tolerance for eigenvalue ratios and differences.
pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InjectiveF {
    pub injective: bool,
    /// `f(s)` for `s = 1..=n/2`.
    pub values: Vec<f64>,
    pub min_gap: f64,
}

/// Evaluates `f(s) = sum_i cos(2 pi k_i s / n)` over the connection set
/// `{1} ∪ chords` and tests it for injectivity.
pub fn injective_f_check(spec: &CirculantSpec) -> Result<InjectiveF> {
    spec.validate()?;
    if spec.n == 4 {
        return Err(Error::NotApplicable("criterion excludes n = 4".into()));
    }
    let n = spec.n as f64;
    let values: Vec<f64> = (1..=spec.n / 2)
        .map(|s| {
            spec.offsets()
                .iter()
                .map(|&k| (2.0 * PI * k as f64 * s as f64 / n).cos())
                .sum()
        })
        .collect();
    let mut min_gap = f64::INFINITY;
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            min_gap = min_gap.min((values[a] - values[b]).abs());
        }
    }
    Ok(InjectiveF { injective: min_gap > INJECTIVE_F_TOLERANCE, values, min_gap })
}

/// Eigenvalues of the adjacency matrix, ascending.
pub fn spectrum(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| if g.adjacent(i, j) { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

fn distinct(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        if out.last().is_none_or(|&last| (v - last).abs() > SPECTRAL_TOLERANCE) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductSpectra {
    /// False when either factor has eigenvalue 0, which the ratio test excludes.
    pub direct_applicable: bool,
    /// Ratio sets meet only in 1.
    pub direct_ok: bool,
    /// Difference sets meet only in 0.
    pub cartesian_ok: bool,
}

/// Spectral conditions under which the quantum automorphism group of a
/// product splits as the product of the factors' groups.
pub fn product_spectra_conditions(g: &Graph, h: &Graph) -> Result<ProductSpectra> {
    for x in [g, h] {
        if !x.is_connected() {
            return Err(Error::NotApplicable("factor is disconnected".into()));
        }
        if x.regular_degree().is_none() {
            return Err(Error::NotApplicable("factor is not regular".into()));
        }
    }
    let sg = distinct(&spectrum(g));
    let sh = distinct(&spectrum(h));
    let nonzero = |s: &[f64]| s.iter().all(|v| v.abs() > SPECTRAL_TOLERANCE);
    let direct_applicable = nonzero(&sg) && nonzero(&sh);

    let meets = |a: &[f64], b: &[f64], op: fn(f64, f64) -> f64| {
        let mut va = Vec::new();
        for i in 0..a.len() {
            for j in 0..a.len() {
                if i != j {
                    va.push(op(a[i], a[j]));
                }
            }
        }
        (0..b.len()).any(|k| {
            (0..b.len()).any(|l| {
                k != l && va.iter().any(|&x| (x - op(b[k], b[l])).abs() <= SPECTRAL_TOLERANCE)
            })
        })
    };
    let direct_ok = direct_applicable && !meets(&sg, &sh, |x, y| x / y);
    let cartesian_ok = !meets(&sg, &sh, |x, y| x - y);
    Ok(ProductSpectra { direct_applicable, direct_ok, cartesian_ok })
}
