//! Radial projections onto `ℍ^n` and `S^n` and the lift identities
//!
//! ```text
//! τ(f)∘π = λ⁻²·τ̂(f̂),      τ^k(f)∘π = λ⁻²·τ̂(τ^{k−1}(f)∘π)
//! ```
//!
//! with `λ⁻² = −(y, y)_L`, `τ̂ = □` on `U^{n+1} ⊂ M^{n+1}`, and `λ⁻² = |y|²`,
//! `τ̂ = Δ` on `ℝ^{n+1} ∖ {0}`. The right-hand side is built as nested jet
//! transformations (operator, then weight) starting from a jet of order `2r`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{euclidean_norm_sq_jet, lorentz_inner, minus_lorentz_norm_jet, phi_map, phi_map_jet};
use crate::geometry::{flat_operator_jet, tension_levels, MetricChart, ScalarField, TensionLevels};
use crate::jet::{Jet, Scalar};

/// One instance of a lift identity at an ambient point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub point: Vec<f64>,
    /// Intrinsic side `τ^k(f)(π(y))`.
    pub lhs: Scalar,
    /// Ambient side built from the flat operator and the dilation weight.
    pub rhs: Scalar,
    pub scale: f64,
    pub rel_residual: f64,
}

impl LiftReport {
    pub fn new(point: &[f64], lhs: Scalar, rhs: Scalar, scale: f64) -> Self {
        LiftReport {
            point: point.to_vec(),
            lhs,
            rhs,
            scale,
            rel_residual: (lhs - rhs).norm() / scale.max(1.0),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// The two ambient geometries carrying a radial harmonic morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `U^{n+1} → ℍ^n`, operator `□`, weight `−(y, y)_L`.
    Hyperbolic,
    /// `ℝ^{n+1} ∖ {0} → S^n`, operator `Δ`, weight `|y|²`.
    Spherical,
}

impl Ambient {
    fn chart(self, dim: usize) -> Result<MetricChart> {
        match self {
            Ambient::Hyperbolic => MetricChart::minkowski(dim),
            Ambient::Spherical => MetricChart::euclidean(dim),
        }
    }

    fn weight(self, y: &[Jet]) -> Jet {
        match self {
            Ambient::Hyperbolic => minus_lorentz_norm_jet(y),
            Ambient::Spherical => euclidean_norm_sq_jet(y),
        }
    }

    fn admissible(self, y: &[f64]) -> bool {
        if y.len() < 2 || y.iter().any(|v| !v.is_finite()) {
            return false;
        }
        match self {
            Ambient::Hyperbolic => lorentz_inner(y, y) < 0.0 && y[0] > 0.0,
            Ambient::Spherical => y.iter().any(|&v| v != 0.0),
        }
    }
}

/// `π(y) = y/√(−(y, y)_L)` on `U^{n+1}`.
pub fn project_hyperbolic(y: &[f64]) -> Result<Vec<f64>> {
    if !Ambient::Hyperbolic.admissible(y) {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let s = (-lorentz_inner(y, y)).sqrt();
    Ok(y.iter().map(|v| v / s).collect())
}

/// `π(y) = y/|y|`.
pub fn project_sphere(y: &[f64]) -> Result<Vec<f64>> {
    if !Ambient::Spherical.admissible(y) {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let s = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(y.iter().map(|v| v / s).collect())
}

fn project_jet(kind: Ambient, y: &[Jet]) -> Result<Vec<Jet>> {
    let inv = kind.weight(y).sqrt()?.recip()?;
    Ok(y.iter().map(|v| v * &inv).collect())
}

/// `f̂ = f∘π` for an ambient representative `f` of a function on `S^n`.
pub fn sphere_pullback(f: &ScalarField) -> ScalarField {
    f.compose(f.dim(), |y| project_jet(Ambient::Spherical, y))
}

/// `f̂ = f∘π` for an ambient representative `f` of a function on `ℍ^n`.
pub fn hyperbolic_pullback(f: &ScalarField) -> ScalarField {
    f.compose(f.dim(), |y| project_jet(Ambient::Hyperbolic, y))
}

/// Ambient values `F_0 = f̂(y)`, `F_k = λ⁻²·τ̂(F_{k−1})` for `k ≤ r`.
pub fn ambient_levels(kind: Ambient, f_hat: &ScalarField, y: &[f64], r: usize) -> Result<TensionLevels> {
    if !kind.admissible(y) {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let chart = kind.chart(f_hat.dim())?;
    let signs = chart.flat_signature().expect("flat ambient chart");
    let order = 2 * r;
    let x = Jet::variables(y, order)?;
    let mut current = f_hat.evaluate(&x)?;
    let mut values = vec![current.value()];
    let mut scale = current.max_abs_coeff();
    for k in 1..=r {
        let low = order - 2 * k;
        let coords: Vec<Jet> = x.iter().map(|v| v.truncate(low)).collect::<Result<_>>()?;
        current = &kind.weight(&coords) * &flat_operator_jet(&current, &signs)?;
        values.push(current.value());
        scale = scale.max(current.max_abs_coeff());
    }
    Ok(TensionLevels { values, scale })
}

/// Lift reports for `k = 1, …, r` on the hyperboloid. `f` is the function
/// in the upper-half model; the intrinsic side is `τ^k` there at `Φ(y)`,
/// the ambient side is the weighted `□` recursion on `f∘Φ`.
pub fn lift_levels_hyperbolic(f: &ScalarField, y: &[f64], r: usize) -> Result<Vec<LiftReport>> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if f.dim() + 1 != y.len() {
        return Err(Error::DimensionMismatch(f.dim() + 1, y.len()));
    }
    let chart = MetricChart::upper_half(f.dim())?;
    let image = phi_map(y)?;
    let intrinsic = tension_levels(&chart, f, &image, r)?;
    let f_hat = f.compose(y.len(), phi_map_jet);
    let ambient = ambient_levels(Ambient::Hyperbolic, &f_hat, y, r)?;
    let scale = intrinsic.scale.max(ambient.scale);
    Ok((1..=r)
        .map(|k| LiftReport::new(y, intrinsic.level(k), ambient.level(k), scale))
        .collect())
}

/// The level-`r` hyperbolic lift report.
pub fn check_lift_hyperbolic(f: &ScalarField, y: &[f64], r: usize) -> Result<LiftReport> {
    Ok(lift_levels_hyperbolic(f, y, r)?.pop().expect("r >= 1"))
}

/// Ambient recursion on the sphere for the representative `f`
/// (pulled back through `π` first).
pub fn sphere_levels(f: &ScalarField, y: &[f64], r: usize) -> Result<TensionLevels> {
    ambient_levels(Ambient::Spherical, &sphere_pullback(f), y, r)
}

/// Certifies `τ^r(f)∘π ≈ 0` on the sphere: `lhs` is the claimed value 0,
/// `rhs` the ambient expression.
pub fn check_lift_sphere(f: &ScalarField, y: &[f64], r: usize) -> Result<LiftReport> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let levels = sphere_levels(f, y, r)?;
    Ok(LiftReport::new(y, Scalar::new(0.0, 0.0), levels.level(r), levels.scale))
}
