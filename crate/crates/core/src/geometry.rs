//! Coordinate charts and the Laplace–Beltrami operator on jets.
//!
//! For a chart with inverse metric `g^{ij}` and density `√|g|` the operator
//!
//! ```text
//! τ(f) = Σ_{ij} (1/√|g|) ∂_j (g^{ij} √|g| ∂_i f)
//!      = Σ_{ij} g^{ij} ∂_i∂_j f + (∂_j g^{ij}) ∂_i f + g^{ij} (∂_j √|g| / √|g|) ∂_i f
//! ```
//!
//! is evaluated in the expanded form on the right, with the metric data
//! supplied as closed-form jets. Applying it to a jet of order `N` yields a
//! jet of order `N − 2`, so `τ^r` needs order `2r`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};

/// Which of the built-in model geometries a chart describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// `(t, x₁, …, x_{n−1})`, `t > 0`, metric `(dt² + |dx|²)/t²`.
    UpperHalf { n: usize },
    /// Flat `ℝ^m`.
    Euclidean { m: usize },
    /// Flat Minkowski space `M^m` with signature `(−, +, …, +)`.
    Minkowski { m: usize },
}

/// A chart carrying `g^{ij}` and `√|g|` as jet-evaluable closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricChart {
    kind: ChartKind,
}

impl MetricChart {
    pub fn upper_half(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("upper half space needs n >= 2, got {n}")));
        }
        Ok(MetricChart {
            kind: ChartKind::UpperHalf { n },
        })
    }

    pub fn euclidean(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("euclidean chart needs m >= 1".into()));
        }
        Ok(MetricChart {
            kind: ChartKind::Euclidean { m },
        })
    }

    /// Minkowski space of total dimension `m` (one time-like coordinate first).
    pub fn minkowski(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter("minkowski chart needs m >= 2".into()));
        }
        Ok(MetricChart {
            kind: ChartKind::Minkowski { m },
        })
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            ChartKind::UpperHalf { n } => n,
            ChartKind::Euclidean { m } | ChartKind::Minkowski { m } => m,
        }
    }

    /// Chart domain test on a real point.
    pub fn admissible(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && point.iter().all(|v| v.is_finite())
            && match self.kind {
                ChartKind::UpperHalf { .. } => point[0] > 0.0,
                _ => true,
            }
    }

    fn check_coords(&self, x: &[Jet]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        Ok(())
    }

    /// Signature of a flat chart, `None` for curved ones.
    pub fn flat_signature(&self) -> Option<Vec<f64>> {
        match self.kind {
            ChartKind::UpperHalf { .. } => None,
            ChartKind::Euclidean { m } => Some(vec![1.0; m]),
            ChartKind::Minkowski { m } => {
                let mut s = vec![1.0; m];
                s[0] = -1.0;
                Some(s)
            }
        }
    }

    /// `g^{ij}` at the jet point `x`.
    pub fn inverse_metric(&self, x: &[Jet]) -> Result<Vec<Vec<Jet>>> {
        self.check_coords(x)?;
        let (dim, order) = (x[0].dim(), x[0].order());
        let zero = Jet::constant(dim, order, Scalar::new(0.0, 0.0))?;
        let mut g = vec![vec![zero; self.dim()]; self.dim()];
        match self.kind {
            ChartKind::UpperHalf { .. } => {
                let t2 = &x[0] * &x[0];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = t2.clone();
                }
            }
            _ => {
                let signs = self.flat_signature().expect("flat chart");
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = Jet::constant(dim, order, Scalar::new(signs[i], 0.0))?;
                }
            }
        }
        Ok(g)
    }

    /// `√|g|` at the jet point `x`.
    pub fn volume_density(&self, x: &[Jet]) -> Result<Jet> {
        self.check_coords(x)?;
        match self.kind {
            ChartKind::UpperHalf { n } => x[0].powi(-(n as i32)),
            _ => Jet::constant(x[0].dim(), x[0].order(), Scalar::new(1.0, 0.0)),
        }
    }
}

type FieldFn = dyn Fn(&[Jet]) -> Result<Jet> + Send + Sync;

/// A complex function of `dim` coordinates that can be evaluated on jets.
#[derive(Clone)]
pub struct ScalarField {
    dim: usize,
    f: Arc<FieldFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField").field("dim", &self.dim).finish()
    }
}

impl ScalarField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[Jet]) -> Result<Jet> + Send + Sync + 'static,
    {
        ScalarField { dim, f: Arc::new(f) }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        ScalarField::new(dim, move |x| Jet::constant(x[0].dim(), x[0].order(), value))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn evaluate(&self, x: &[Jet]) -> Result<Jet> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(x.len(), self.dim));
        }
        (self.f)(x)
    }

    /// Jet of the field at `point` with the given order.
    pub fn jet_at(&self, point: &[f64], order: usize) -> Result<Jet> {
        self.evaluate(&Jet::variables(point, order)?)
    }

    /// Plain value at a real point.
    pub fn value_at(&self, point: &[f64]) -> Result<Scalar> {
        Ok(self.jet_at(point, 0)?.value())
    }

    /// `α·self + β·other`.
    pub fn linear_combination(&self, alpha: Scalar, other: &ScalarField, beta: Scalar) -> Result<ScalarField> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let (f, g) = (self.clone(), other.clone());
        Ok(ScalarField::new(self.dim, move |x| {
            Ok(&f.evaluate(x)?.scale(alpha) + &g.evaluate(x)?.scale(beta))
        }))
    }

    /// `self ∘ map`, where `map` sends jets of `inner_dim` coordinates to
    /// jets of this field's coordinates.
    pub fn compose<M>(&self, inner_dim: usize, map: M) -> ScalarField
    where
        M: Fn(&[Jet]) -> Result<Vec<Jet>> + Send + Sync + 'static,
    {
        let outer = self.clone();
        ScalarField::new(inner_dim, move |x| outer.evaluate(&map(x)?))
    }
}

fn is_zero_jet(j: &Jet) -> bool {
    j.coeffs().iter().all(|c| *c == Scalar::new(0.0, 0.0))
}

/// Applies the Laplace–Beltrami operator of `chart` to the jet `f`, where
/// `x` are the coordinate jets `f` was built from. The result has order
/// `f.order() − 2`.
pub fn tension_jet(chart: &MetricChart, x: &[Jet], f: &Jet) -> Result<Jet> {
    chart.check_coords(x)?;
    let order = f.order();
    if order < 2 {
        return Err(Error::InsufficientOrder { have: order, need: 2 });
    }
    if let Some(signs) = chart.flat_signature() {
        return flat_operator_jet(f, &signs);
    }
    let low = order - 2;
    let ginv = chart.inverse_metric(x)?;
    let vol = chart.volume_density(x)?;
    let vol_low = vol.truncate(order - 1)?;
    let dim = chart.dim();

    let grad: Vec<Jet> = (0..dim).map(|i| f.derivative(i)).collect::<Result<_>>()?;
    let log_vol_grad: Vec<Jet> = (0..dim)
        .map(|j| vol.derivative(j)?.try_div(&vol_low)?.truncate(low))
        .collect::<Result<_>>()?;

    let mut acc = Jet::constant(f.dim(), low, Scalar::new(0.0, 0.0))?;
    for i in 0..dim {
        let grad_i = grad[i].truncate(low)?;
        for j in 0..dim {
            let gij = &ginv[i][j];
            if is_zero_jet(gij) {
                continue;
            }
            let gij_low = gij.truncate(low)?;
            let hess = grad[i].derivative(j)?;
            // first-order coefficient: ∂_j g^{ij} + g^{ij} ∂_j log √|g|
            let drift = &gij.derivative(j)?.truncate(low)? + &(&gij_low * &log_vol_grad[j]);
            acc = &acc + &(&(&gij_low * &hess) + &(&drift * &grad_i));
        }
    }
    Ok(acc)
}

/// `Σ_i signs[i] · ∂²f/∂x_i²`, order drops by two.
pub fn flat_operator_jet(f: &Jet, signs: &[f64]) -> Result<Jet> {
    if signs.len() != f.dim() {
        return Err(Error::DimensionMismatch(signs.len(), f.dim()));
    }
    if f.order() < 2 {
        return Err(Error::InsufficientOrder { have: f.order(), need: 2 });
    }
    let mut acc = Jet::constant(f.dim(), f.order() - 2, Scalar::new(0.0, 0.0))?;
    for (i, &s) in signs.iter().enumerate() {
        acc = &acc + &(f.derivative(i)?.derivative(i)? * s);
    }
    Ok(acc)
}

fn check_point(chart: &MetricChart, f: &ScalarField, point: &[f64]) -> Result<()> {
    if f.dim() != chart.dim() {
        return Err(Error::DimensionMismatch(f.dim(), chart.dim()));
    }
    if !chart.admissible(point) {
        return Err(Error::Inadmissible(point.to_vec()));
    }
    Ok(())
}

/// `τ(f)` at `point`.
pub fn laplace_beltrami(chart: &MetricChart, f: &ScalarField, point: &[f64]) -> Result<Scalar> {
    check_point(chart, f, point)?;
    let x = Jet::variables(point, 2)?;
    Ok(tension_jet(chart, &x, &f.evaluate(&x)?)?.value())
}

/// Values `τ⁰(f), …, τ^r(f)` at one point together with the largest
/// coefficient magnitude met in any intermediate jet.
#[derive(Clone, Debug, PartialEq)]
pub struct TensionLevels {
    pub values: Vec<Scalar>,
    pub scale: f64,
}

impl TensionLevels {
    /// `τ^k(f)` at the point.
    pub fn level(&self, k: usize) -> Scalar {
        self.values[k]
    }
}

/// Runs `τ` repeatedly on a jet of order `2r`, treating each `τ^k` as a
/// field for the next application.
pub fn tension_levels(chart: &MetricChart, f: &ScalarField, point: &[f64], r: usize) -> Result<TensionLevels> {
    check_point(chart, f, point)?;
    let order = 2 * r;
    let x = Jet::variables(point, order)?;
    let mut current = f.evaluate(&x)?;
    let mut values = vec![current.value()];
    let mut scale = current.max_abs_coeff();
    for k in 1..=r {
        let coords: Vec<Jet> = x
            .iter()
            .map(|xi| xi.truncate(order - 2 * (k - 1)))
            .collect::<Result<_>>()?;
        current = tension_jet(chart, &coords, &current)?;
        values.push(current.value());
        scale = scale.max(current.max_abs_coeff());
    }
    Ok(TensionLevels { values, scale })
}

/// `[τ¹(f), …, τ^r(f)]` at `point`.
pub fn iterated_tension(chart: &MetricChart, f: &ScalarField, point: &[f64], r: usize) -> Result<Vec<Scalar>> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(tension_levels(chart, f, point, r)?.values[1..].to_vec())
}

/// The wave operator `□f = −∂²f/∂y₀² + Σ_k ∂²f/∂y_k²` at `point`.
pub fn dalembert(f: &ScalarField, point: &[f64]) -> Result<Scalar> {
    let chart = MetricChart::minkowski(f.dim())?;
    laplace_beltrami(&chart, f, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn upper_half_metric_data() {
        let chart = MetricChart::upper_half(2).unwrap();
        let x = Jet::variables(&[2.0, 0.0], 0).unwrap();
        let g = chart.inverse_metric(&x).unwrap();
        assert_eq!(g[0][0].value(), c(4.0));
        assert_eq!(g[1][1].value(), c(4.0));
        assert_eq!(g[0][1].value(), c(0.0));
        assert_eq!(chart.volume_density(&x).unwrap().value(), c(0.25));

        let chart4 = MetricChart::upper_half(4).unwrap();
        let x = Jet::variables(&[1.0, 3.0, -2.0, 7.0], 0).unwrap();
        assert_eq!(chart4.volume_density(&x).unwrap().value(), c(1.0));
        assert!(MetricChart::upper_half(1).is_err());
        assert!(MetricChart::euclidean(0).is_err());
        assert!(!chart4.admissible(&[0.0, 0.0, 0.0, 0.0]));
        assert!(!chart4.admissible(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn upper_half_examples() {
        let t_squared = ScalarField::new(3, |x| Ok(&x[0] * &x[0]));
        let chart3 = MetricChart::upper_half(3).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let v = laplace_beltrami(&chart3, &t_squared, &[t, 0.2, -0.1]).unwrap();
            assert!(v.norm() < 1e-13, "{v}");
        }

        let chart4 = MetricChart::upper_half(4).unwrap();
        let t_cubed = ScalarField::new(4, |x| x[0].powi(3));
        let v = laplace_beltrami(&chart4, &t_cubed, &[1.7, 0.3, 2.0, -1.0]).unwrap();
        assert!(v.norm() < 1e-12);

        let t = ScalarField::new(3, |x| Ok(x[0].clone()));
        let v = laplace_beltrami(&chart3, &t, &[2.0, 0.0, 0.0]).unwrap();
        assert!(close(v, c(-2.0), 1e-14));

        let err = laplace_beltrami(&chart3, &t, &[-1.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
    }

    #[test]
    fn euclidean_examples() {
        let chart = MetricChart::euclidean(2).unwrap();
        let p = [0.3, -1.1];
        let sq = ScalarField::new(2, |x| Ok(&x[0] * &x[0]));
        assert!(close(laplace_beltrami(&chart, &sq, &p).unwrap(), c(2.0), 1e-15));
        let xy = ScalarField::new(2, |x| Ok(&x[0] * &x[1]));
        assert_eq!(laplace_beltrami(&chart, &xy, &p).unwrap(), c(0.0));
        let diff = ScalarField::new(2, |x| Ok(&(&x[0] * &x[0]) - &(&x[1] * &x[1])));
        assert_eq!(laplace_beltrami(&chart, &diff, &p).unwrap(), c(0.0));
    }

    #[test]
    fn constants_are_harmonic() {
        let charts = [
            MetricChart::upper_half(5).unwrap(),
            MetricChart::euclidean(5).unwrap(),
            MetricChart::minkowski(5).unwrap(),
        ];
        for chart in charts {
            let k = ScalarField::constant(5, Scalar::new(2.0, -1.0));
            let p = [1.5, 0.1, 0.2, 0.3, 0.4];
            assert_eq!(laplace_beltrami(&chart, &k, &p).unwrap(), c(0.0));
            assert_eq!(iterated_tension(&chart, &k, &p, 3).unwrap(), vec![c(0.0); 3]);
        }
    }

    #[test]
    fn golden_biharmonic_example() {
        // n = 4, f = (1 + t³)·log t·x₁ at (2, 3, 0, 0): τ¹ = −3(1 − 8)·3 = 63, τ² = 0
        let chart = MetricChart::upper_half(4).unwrap();
        let f = ScalarField::new(4, |x| {
            Ok(&(&x[0].powi(3)? + c(1.0)) * &(&x[0].log()? * &x[1]))
        });
        let tau = iterated_tension(&chart, &f, &[2.0, 3.0, 0.0, 0.0], 2).unwrap();
        assert!(close(tau[0], c(63.0), 1e-13), "{}", tau[0]);
        assert!(tau[1].norm() < 1e-11, "{}", tau[1]);
    }

    #[test]
    fn flat_iterate() {
        let chart = MetricChart::euclidean(2).unwrap();
        let f = ScalarField::new(2, |x| x[0].powi(4));
        let tau = iterated_tension(&chart, &f, &[1.0, 0.0], 2).unwrap();
        assert_eq!(tau, vec![c(12.0), c(24.0)]);
        assert!(iterated_tension(&chart, &f, &[1.0, 0.0], 0).is_err());
    }

    #[test]
    fn insufficient_order_is_an_error() {
        let chart = MetricChart::upper_half(2).unwrap();
        let x = Jet::variables(&[1.0, 0.0], 1).unwrap();
        let err = tension_jet(&chart, &x, &x[0]).unwrap_err();
        assert_eq!(err, Error::InsufficientOrder { have: 1, need: 2 });
    }

    #[test]
    fn dalembert_examples() {
        let p = [0.7, -0.4, 1.3];
        let y0 = ScalarField::new(3, |x| Ok(&x[0] * &x[0]));
        let y1 = ScalarField::new(3, |x| Ok(&x[1] * &x[1]));
        let both = ScalarField::new(3, |x| Ok(&(&x[0] * &x[0]) + &(&x[1] * &x[1])));
        assert_eq!(dalembert(&y0, &p).unwrap(), c(-2.0));
        assert_eq!(dalembert(&y1, &p).unwrap(), c(2.0));
        assert_eq!(dalembert(&both, &p).unwrap(), c(0.0));
    }

    /// `Σ c·t^k·(log t)^m·x₁^j·x₂^l` style field in `n` variables.
    fn poly_log_field(n: usize, terms: Vec<(i32, u32, u32, f64, f64)>) -> ScalarField {
        ScalarField::new(n, move |x| {
            let log_t = x[0].log()?;
            let mut acc = Jet::constant(x[0].dim(), x[0].order(), c(0.0))?;
            for &(k, m, j, re, im) in &terms {
                let xi = &x[1 + (j as usize) % (n - 1)];
                let term = &(&x[0].powi(k)? * &log_t.powi(m as i32)?) * &xi.powi((j % 3) as i32)?;
                acc = &acc + &term.scale(Scalar::new(re, im));
            }
            Ok(acc)
        })
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(i32, u32, u32, f64, f64)>> {
        prop::collection::vec((-2i32..5, 0u32..3, 0u32..6, -1.0..1.0f64, -1.0..1.0f64), 1..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_explicit_upper_half_formula(n in 2usize..=6, terms in arb_terms(),
                                                t in 0.2..4.0f64, xs in prop::collection::vec(-2.0..2.0f64, 5)) {
            let chart = MetricChart::upper_half(n).unwrap();
            let f = poly_log_field(n, terms);
            let mut point = vec![t];
            point.extend_from_slice(&xs[..n - 1]);
            let got = laplace_beltrami(&chart, &f, &point).unwrap();

            let jet = f.jet_at(&point, 2).unwrap();
            let mut alpha = vec![0u32; n];
            alpha[0] = 1;
            let ft = jet.partial(&alpha).unwrap();
            alpha[0] = 2;
            let ftt = jet.partial(&alpha).unwrap();
            alpha[0] = 0;
            let mut lap_x = c(0.0);
            let mut mag = (t * t * ftt).norm() + (t * ft).norm() * (n as f64);
            for i in 1..n {
                alpha[i] = 2;
                let d = jet.partial(&alpha).unwrap();
                lap_x += d;
                mag += (t * t * d).norm();
                alpha[i] = 0;
            }
            let want = t * t * lap_x + t * t * ftt - (n as f64 - 2.0) * t * ft;
            prop_assert!((got - want).norm() <= 1e-12 * mag.max(1.0), "{} vs {}", got, want);
        }

        #[test]
        fn linearity(terms_f in arb_terms(), terms_g in arb_terms(),
                     a in (-2.0..2.0f64, -2.0..2.0f64), b in (-2.0..2.0f64, -2.0..2.0f64),
                     t in 0.2..4.0f64, x1 in -2.0..2.0f64, x2 in -2.0..2.0f64) {
            let chart = MetricChart::upper_half(3).unwrap();
            let f = poly_log_field(3, terms_f);
            let g = poly_log_field(3, terms_g);
            let (alpha, beta) = (Scalar::new(a.0, a.1), Scalar::new(b.0, b.1));
            let combo = f.linear_combination(alpha, &g, beta).unwrap();
            let p = [t, x1, x2];
            let lhs = laplace_beltrami(&chart, &combo, &p).unwrap();
            let tf = laplace_beltrami(&chart, &f, &p).unwrap();
            let tg = laplace_beltrami(&chart, &g, &p).unwrap();
            let rhs = alpha * tf + beta * tg;
            let mag = (alpha * tf).norm() + (beta * tg).norm();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * mag.max(1.0));
        }

        #[test]
        fn null_direction_is_wave_harmonic(y in prop::collection::vec(-2.0..2.0f64, 4),
                                           coeffs in prop::collection::vec(-1.0..1.0f64, 4)) {
            // any function of y₀ + y₁ alone
            let f = ScalarField::new(4, move |x| {
                let u = &x[0] + &x[1];
                let mut acc = (&u * coeffs[0]).exp()?;
                acc = &acc + &(u.powi(3)? * coeffs[1]);
                acc = &acc + &((&u * &u) + 5.0).sqrt()?.scale(Scalar::new(coeffs[2], coeffs[3]));
                Ok(acc)
            });
            let v = dalembert(&f, &y).unwrap();
            prop_assert!(v.norm() <= 1e-10, "{}", v);
        }
    }
}
