//! The explicit function families: harmonic seeds `h`, the products
//! `p_r(t)·h(x)` on the upper half space, their pullbacks to the hyperboloid,
//! and the dual functions on the sphere.
//!
//! Coordinates:
//! - upper half space `H^n`: `(t, x₁, …, x_{n−1})`;
//! - Minkowski space `M^{n+1}`: `(y₀, y₁, …, y_n)`, `y₀` time-like;
//! - Euclidean `ℝ^{n+1}`: `(y₁, …, y_{n+1})`, stored zero-based.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::format_complex;
use crate::error::{Error, Result};
use crate::geometry::ScalarField;
use crate::jet::{on_branch_cut, Jet, MultiIndex, Scalar};
use crate::log_poly::LogPolynomial;

/// Tolerance for points claimed to lie on `ℍ^n` or `S^n`.
pub const ON_MANIFOLD_TOL: f64 = 1e-10;

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

/// A non-constant complex polynomial on `ℝ^vars` with vanishing Euclidean
/// Laplacian. Evaluating it at complex arguments is its analytic extension.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicSeed {
    id: String,
    vars: usize,
    poly: BTreeMap<MultiIndex, Scalar>,
}

impl HarmonicSeed {
    /// Builds a seed, rejecting constant or non-harmonic polynomials.
    pub fn new<I>(id: impl Into<String>, vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        if vars == 0 {
            return Err(Error::InvalidParameter("a seed needs at least one variable".into()));
        }
        let mut poly: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.len() != vars {
                return Err(Error::BadMultiIndex(alpha));
            }
            *poly.entry(alpha).or_insert_with(zero) += c;
        }
        poly.retain(|_, c| *c != zero());
        let seed = HarmonicSeed {
            id: id.into(),
            vars,
            poly,
        };
        if seed.poly.keys().all(|a| a.iter().all(|&e| e == 0)) {
            return Err(Error::InvalidParameter(format!("seed '{}' is constant", seed.id)));
        }
        let scale = seed.poly.values().map(|c| c.norm()).fold(0.0, f64::max);
        if seed.laplacian().values().any(|c| c.norm() > 1e-12 * scale) {
            return Err(Error::InvalidParameter(format!("seed '{}' is not harmonic", seed.id)));
        }
        Ok(seed)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.poly.iter()
    }

    /// Exact `Σ_i ∂²h/∂x_i²` as a monomial map (zero entries dropped).
    pub fn laplacian(&self) -> BTreeMap<MultiIndex, Scalar> {
        let mut out: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (alpha, &c) in &self.poly {
            for i in 0..self.vars {
                let e = alpha[i];
                if e >= 2 {
                    let mut beta = alpha.clone();
                    beta[i] -= 2;
                    *out.entry(beta).or_insert_with(zero) += c * f64::from(e * (e - 1));
                }
            }
        }
        out.retain(|_, c| *c != zero());
        out
    }

    /// Value at complex arguments.
    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch(x.len(), self.vars));
        }
        Ok(self
            .poly
            .iter()
            .map(|(alpha, &c)| {
                alpha
                    .iter()
                    .zip(x)
                    .fold(c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum())
    }

    /// Composition with jet arguments.
    pub fn evaluate_jet(&self, x: &[Jet]) -> Result<Jet> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch(x.len(), self.vars));
        }
        let max_deg = self.poly.keys().flatten().copied().max().unwrap_or(0);
        let one = Jet::constant(x[0].dim(), x[0].order(), Scalar::new(1.0, 0.0))?;
        let powers: Vec<Vec<Jet>> = x
            .iter()
            .map(|xi| {
                let mut row = vec![one.clone()];
                for e in 1..=max_deg as usize {
                    row.push(&row[e - 1] * xi);
                }
                row
            })
            .collect();
        let mut acc = Jet::constant(x[0].dim(), x[0].order(), zero())?;
        for (alpha, &c) in &self.poly {
            let mut term = one.scale(c);
            for (i, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for HarmonicSeed {
    /// Monomials in lexicographic exponent order, e.g. `1*x1^2 + -1*x2^2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (alpha, &c) in &self.poly {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_complex(c))?;
            for (i, &e) in alpha.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

fn binomial(k: u32, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, s| acc * f64::from(k - s) / f64::from(s + 1))
}

type Monomials = Vec<(MultiIndex, Scalar)>;

/// Real and imaginary parts of `(x₁ + i·x₂)^k` as monomial lists.
fn complex_power_parts(vars: usize, k: u32) -> (Monomials, Monomials) {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for j in 0..=k {
        let mut alpha = vec![0u32; vars];
        alpha[0] = k - j;
        alpha[1] = j;
        // i^j cycles through 1, i, −1, −i
        let c = binomial(k, j);
        match j % 4 {
            0 => re.push((alpha, Scalar::new(c, 0.0))),
            1 => im.push((alpha, Scalar::new(c, 0.0))),
            2 => re.push((alpha, Scalar::new(-c, 0.0))),
            _ => im.push((alpha, Scalar::new(-c, 0.0))),
        }
    }
    (re, im)
}

/// Harmonic polynomials on `ℝ^{n−1}` addressable by stable ids:
/// `coord:i`, `sq_diff`, `prod`, `re_zk:k`, `im_zk:k` (`k ≤ 4`).
pub fn seed_catalog(n: usize) -> Result<Vec<HarmonicSeed>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let vars = n - 1;
    let one = Scalar::new(1.0, 0.0);
    let mut seeds = Vec::new();
    for i in 0..vars {
        let mut alpha = vec![0u32; vars];
        alpha[i] = 1;
        seeds.push(HarmonicSeed::new(format!("coord:{}", i + 1), vars, [(alpha, one)])?);
    }
    if vars >= 2 {
        let mono = |a: u32, b: u32| {
            let mut alpha = vec![0u32; vars];
            alpha[0] = a;
            alpha[1] = b;
            alpha
        };
        seeds.push(HarmonicSeed::new("sq_diff", vars, [(mono(2, 0), one), (mono(0, 2), -one)])?);
        seeds.push(HarmonicSeed::new("prod", vars, [(mono(1, 1), one)])?);
        for k in 1..=4 {
            let (re, im) = complex_power_parts(vars, k);
            seeds.push(HarmonicSeed::new(format!("re_zk:{k}"), vars, re)?);
            seeds.push(HarmonicSeed::new(format!("im_zk:{k}"), vars, im)?);
        }
    }
    Ok(seeds)
}

/// Looks up a catalog seed by id.
pub fn find_seed(n: usize, id: &str) -> Result<HarmonicSeed> {
    seed_catalog(n)?
        .into_iter()
        .find(|s| s.id() == id)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown seed id '{id}' for n = {n}")))
}

/// One member `(n, r, a, b, h)` of the families.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    n: usize,
    r: usize,
    a: Scalar,
    b: Scalar,
    seed: Arc<HarmonicSeed>,
}

impl FamilySpec {
    pub fn new(n: usize, r: usize, a: Scalar, b: Scalar, seed: HarmonicSeed) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        if r < 1 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        if a == zero() && b == zero() {
            return Err(Error::InvalidParameter("coefficient pair (a, b) must be non-zero".into()));
        }
        if seed.vars() != n - 1 {
            return Err(Error::InvalidParameter(format!(
                "seed has {} variables, expected {}",
                seed.vars(),
                n - 1
            )));
        }
        Ok(FamilySpec {
            n,
            r,
            a,
            b,
            seed: Arc::new(seed),
        })
    }

    /// Convenience constructor that picks the seed from the catalog.
    pub fn with_seed_id(n: usize, r: usize, a: Scalar, b: Scalar, seed_id: &str) -> Result<Self> {
        Self::new(n, r, a, b, find_seed(n, seed_id)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn a(&self) -> Scalar {
        self.a
    }

    pub fn b(&self) -> Scalar {
        self.b
    }

    pub fn seed(&self) -> &HarmonicSeed {
        &self.seed
    }

    /// The radial factor `p_r`.
    pub fn radial(&self) -> LogPolynomial {
        LogPolynomial::build_pr(self.n, self.r, self.a, self.b).expect("validated spec")
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        format!(
            "n={} r={} a={} b={} seed={}",
            self.n,
            self.r,
            format_complex(self.a),
            format_complex(self.b),
            self.seed.id()
        )
    }
}

/// `f_r(t, x) = p_r(t)·h(x)` on the upper half space.
pub fn upper_half_field(spec: &FamilySpec) -> ScalarField {
    let p = spec.radial();
    let seed = spec.seed.clone();
    ScalarField::new(spec.n, move |x| {
        let t0 = x[0].value();
        if t0.re <= 0.0 || t0.im != 0.0 {
            return Err(Error::Inadmissible(vec![t0.re]));
        }
        Ok(&p.evaluate_jet(&x[0])? * &seed.evaluate_jet(&x[1..])?)
    })
}

/// Lorentzian inner product `(x, y)_L = −x₀y₀ + Σ x_k y_k`.
pub fn lorentz_inner(x: &[f64], y: &[f64]) -> f64 {
    -x[0] * y[0] + x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<f64>()
}

fn check_ambient(y: &[f64], n_min: usize) -> Result<()> {
    if y.len() < n_min || y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    Ok(())
}

/// The isometry `Ψ: ℍ^n → H^n`, `y ↦ 2·(1, y₂, …, y_n)/(y₀ + y₁)`.
pub fn psi_isometry(y: &[f64]) -> Result<Vec<f64>> {
    check_ambient(y, 3)?;
    if (lorentz_inner(y, y) + 1.0).abs() > ON_MANIFOLD_TOL || y[0] <= 0.0 {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let s = y[0] + y[1];
    if s == 0.0 {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let mut out = vec![2.0 / s];
    out.extend(y[2..].iter().map(|v| 2.0 * v / s));
    Ok(out)
}

/// Inverse of [`psi_isometry`]: the hyperboloid point over `(t, x)`.
pub fn psi_inverse(point: &[f64]) -> Result<Vec<f64>> {
    if point.len() < 2 || point[0] <= 0.0 || point.iter().any(|v| !v.is_finite()) {
        return Err(Error::Inadmissible(point.to_vec()));
    }
    let t = point[0];
    let sum = 2.0 / t;
    let tail: Vec<f64> = point[1..].iter().map(|x| x / t).collect();
    let diff = (1.0 + tail.iter().map(|v| v * v).sum::<f64>()) / sum;
    let mut y = vec![(sum + diff) / 2.0, (sum - diff) / 2.0];
    y.extend(tail);
    Ok(y)
}

/// `Φ = Ψ∘π` on `U^{n+1}`, real points.
pub fn phi_map(y: &[f64]) -> Result<Vec<f64>> {
    check_ambient(y, 3)?;
    let q = -lorentz_inner(y, y);
    let s = y[0] + y[1];
    if q <= 0.0 || y[0] <= 0.0 || s == 0.0 {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let mut out = vec![2.0 * q.sqrt() / s];
    out.extend(y[2..].iter().map(|v| 2.0 * v / s));
    Ok(out)
}

/// `−(y, y)_L = y₀² − Σ_{k≥1} y_k²` on jets.
pub fn minus_lorentz_norm_jet(y: &[Jet]) -> Jet {
    y[1..].iter().fold(&y[0] * &y[0], |acc, v| &acc - &(v * v))
}

/// `|y|²` on jets.
pub fn euclidean_norm_sq_jet(y: &[Jet]) -> Jet {
    y[1..].iter().fold(&y[0] * &y[0], |acc, v| &acc + &(v * v))
}

/// `Φ` on jets, for composing fields.
pub fn phi_map_jet(y: &[Jet]) -> Result<Vec<Jet>> {
    let q = minus_lorentz_norm_jet(y);
    let s = &y[0] + &y[1];
    let y0 = y[0].value();
    if q.value().re <= 0.0 || y0.re <= 0.0 || s.value() == zero() {
        return Err(Error::Inadmissible(y.iter().map(|j| j.value().re).collect()));
    }
    let inv = s.recip()?;
    let mut out = vec![&q.sqrt()? * &inv * 2.0];
    out.extend(y[2..].iter().map(|v| v * &inv * 2.0));
    Ok(out)
}

/// The hyperboloid function as an ambient field on `U^{n+1}`:
/// `upper_half_field ∘ Φ`, constant along rays.
pub fn hyperboloid_field(spec: &FamilySpec) -> ScalarField {
    upper_half_field(spec).compose(spec.n + 1, phi_map_jet)
}

/// Complex arguments of the sphere function at an ambient point:
/// `2|y|/(y₂ + i·y₁)` and `2y_k/(y₂ + i·y₁)` for `k = 3, …, n+1`.
pub fn sphere_arguments(y: &[f64]) -> Result<(Scalar, Vec<Scalar>)> {
    check_ambient(y, 3)?;
    let d = Scalar::new(y[1], y[0]);
    if d == zero() {
        return Err(Error::Inadmissible(y.to_vec()));
    }
    let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let radial = 2.0 * norm / d;
    if on_branch_cut(radial) {
        return Err(Error::BranchCut(radial.to_string()));
    }
    Ok((radial, y[2..].iter().map(|v| 2.0 * v / d).collect()))
}

/// The sphere function `p_r(2|y|/(y₂+i·y₁))·h(2y₃/(y₂+i·y₁), …)` on the
/// ambient `ℝ^{n+1}` minus the branch locus; the extensions are the
/// principal-branch log polynomial and polynomial substitution.
pub fn sphere_field(spec: &FamilySpec) -> ScalarField {
    let p = spec.radial();
    let seed = spec.seed.clone();
    ScalarField::new(spec.n + 1, move |y| {
        let d = &y[1] + &y[0].scale(Scalar::i());
        if d.value() == zero() {
            return Err(Error::Inadmissible(y.iter().map(|j| j.value().re).collect()));
        }
        let inv = d.recip()?;
        let radial = &euclidean_norm_sq_jet(y).sqrt()? * &inv * 2.0;
        if on_branch_cut(radial.value()) {
            return Err(Error::BranchCut(radial.value().to_string()));
        }
        let args: Vec<Jet> = y[2..].iter().map(|v| v * &inv * 2.0).collect();
        Ok(&p.evaluate_jet(&radial)? * &seed.evaluate_jet(&args)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{laplace_beltrami, MetricChart};

    fn c(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    #[test]
    fn catalog_contents() {
        let two = seed_catalog(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].id(), "coord:1");
        assert_eq!(two[0].evaluate(&[c(3.0)]).unwrap(), c(3.0));

        let four = seed_catalog(4).unwrap();
        let sq = four.iter().find(|s| s.id() == "sq_diff").unwrap();
        assert!(sq.laplacian().is_empty());
        assert_eq!(sq.evaluate(&[c(3.0), c(2.0), c(9.0)]).unwrap(), c(5.0));
        for id in ["coord:1", "coord:2", "coord:3", "prod", "re_zk:4", "im_zk:3"] {
            assert!(four.iter().any(|s| s.id() == id), "{id}");
        }
        assert!(seed_catalog(1).is_err());
    }

    #[test]
    fn cubic_seed_is_expected_polynomial() {
        let s = find_seed(3, "re_zk:3").unwrap();
        let (x1, x2) = (1.3, -0.7);
        let want = x1 * x1 * x1 - 3.0 * x1 * x2 * x2;
        assert!((s.evaluate(&[c(x1), c(x2)]).unwrap() - c(want)).norm() < 1e-14);
        assert!(s.laplacian().is_empty());
        assert_eq!(s.to_string(), "-3*x1*x2^2 + 1*x1^3");
        let im = find_seed(3, "im_zk:2").unwrap();
        assert_eq!(im.evaluate(&[c(1.5), c(2.0)]).unwrap(), c(6.0));
    }

    #[test]
    fn every_catalog_seed_is_harmonic() {
        for n in 2..=8 {
            for seed in seed_catalog(n).unwrap() {
                assert!(seed.laplacian().is_empty(), "{} at n={n}", seed.id());
                // numerical check through the flat chart as well
                let chart = MetricChart::euclidean(n - 1).unwrap();
                let s = seed.clone();
                let field = ScalarField::new(n - 1, move |x| s.evaluate_jet(x));
                let p: Vec<f64> = (0..n - 1).map(|i| 0.3 + 0.4 * i as f64).collect();
                assert!(laplace_beltrami(&chart, &field, &p).unwrap().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn seed_validation() {
        assert!(HarmonicSeed::new("const", 2, [(vec![0, 0], c(1.0))]).is_err());
        assert!(HarmonicSeed::new("sq", 2, [(vec![2, 0], c(1.0))]).is_err());
        assert!(HarmonicSeed::new("bad", 2, [(vec![1], c(1.0))]).is_err());
        assert!(find_seed(2, "prod").is_err());
    }

    #[test]
    fn family_spec_validation() {
        let seed = find_seed(3, "coord:1").unwrap();
        assert!(FamilySpec::new(3, 1, c(0.0), c(0.0), seed.clone()).is_err());
        assert!(FamilySpec::new(3, 0, c(1.0), c(0.0), seed.clone()).is_err());
        assert!(FamilySpec::new(4, 1, c(1.0), c(0.0), seed.clone()).is_err());
        assert!(FamilySpec::new(3, 2, c(0.0), c(1.0), seed).is_ok());
    }

    #[test]
    fn upper_half_values() {
        let spec = FamilySpec::with_seed_id(4, 2, c(1.0), c(1.0), "coord:1").unwrap();
        let f = upper_half_field(&spec);
        let v = f.value_at(&[2.0, 3.0, 0.0, 0.0]).unwrap();
        assert!((v - c(27.0 * 2f64.ln())).norm() < 1e-13);
        assert_eq!(f.value_at(&[1.0, 3.0, 1.0, 1.0]).unwrap(), c(0.0));
        assert!(matches!(f.value_at(&[-1.0, 0.0, 0.0, 0.0]), Err(Error::Inadmissible(_))));

        let harmonic = FamilySpec::with_seed_id(3, 1, c(1.0), c(0.0), "prod").unwrap();
        let f = upper_half_field(&harmonic);
        let chart = MetricChart::upper_half(3).unwrap();
        let p = [0.8, 1.2, -0.4];
        assert!((f.value_at(&p).unwrap() - c(1.2 * -0.4)).norm() < 1e-15);
        assert!(laplace_beltrami(&chart, &f, &p).unwrap().norm() < 1e-13);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_isometry(&[1.0, 0.0, 0.0, 0.0]).unwrap(), vec![2.0, 0.0, 0.0]);
        let y = [2f64.sqrt(), 1.0, 0.0];
        assert!((lorentz_inner(&y, &y) + 1.0).abs() < 1e-15);
        let t = psi_isometry(&y).unwrap();
        assert!((t[0] - 2.0 / (2f64.sqrt() + 1.0)).abs() < 1e-15);
        assert_eq!(t[1], 0.0);
        assert!(psi_isometry(&[2.0, 0.0, 0.0]).is_err());
        assert!(psi_isometry(&[-1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn psi_inverse_roundtrip() {
        for point in [[0.3, 1.5, -2.0], [4.0, 0.0, 0.1], [1.0, -0.7, 0.7]] {
            let y = psi_inverse(&point).unwrap();
            assert!((lorentz_inner(&y, &y) + 1.0).abs() < 1e-12);
            assert!(y[0] > 0.0);
            let back = psi_isometry(&y).unwrap();
            for (a, b) in back.iter().zip(&point) {
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn phi_examples() {
        let y = psi_inverse(&[0.6, 0.2, -1.1]).unwrap();
        let a = phi_map(&y).unwrap();
        let b = psi_isometry(&y).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-12);
        }
        assert_eq!(phi_map(&[2.0, 0.0, 0.0]).unwrap(), vec![2.0, 0.0]);
        let scaled: Vec<f64> = y.iter().map(|v| 1.7 * v).collect();
        for (u, v) in phi_map(&scaled).unwrap().iter().zip(&a) {
            assert!((u - v).abs() < 1e-12);
        }
        assert!(phi_map(&[1.0, 2.0, 0.0]).is_err());
        assert!(phi_map(&[-2.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn hyperboloid_field_values() {
        let spec = FamilySpec::with_seed_id(4, 1, c(0.0), c(1.0), "coord:1").unwrap();
        let point = [0.7, 1.3, -0.2, 0.5];
        let y = psi_inverse(&point).unwrap();
        let v = hyperboloid_field(&spec).value_at(&y).unwrap();
        assert!((v - c(0.7f64.powi(3) * 1.3)).norm() < 1e-13);

        let spec = FamilySpec::with_seed_id(3, 2, Scalar::new(1.0, 1.0), c(-0.5), "prod").unwrap();
        let up = upper_half_field(&spec);
        let hyp = hyperboloid_field(&spec);
        let point = [2.5, -0.4, 0.9];
        let y = psi_inverse(&point).unwrap();
        let a = hyp.value_at(&y).unwrap();
        assert!((a - up.value_at(&point).unwrap()).norm() < 1e-12);
        let scaled: Vec<f64> = y.iter().map(|v| 0.6 * v).collect();
        assert!((hyp.value_at(&scaled).unwrap() - a).norm() < 1e-12);
        assert!(hyp.value_at(&[1.0, 2.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn sphere_field_values() {
        let spec = FamilySpec::with_seed_id(3, 2, c(1.0), c(2.0), "coord:1").unwrap();
        let f = sphere_field(&spec);
        // y = (0, 1, 0, 0): argument 2, seed at 0
        assert_eq!(f.value_at(&[0.0, 1.0, 0.0, 0.0]).unwrap(), c(0.0));
        let spec_sq = FamilySpec::with_seed_id(3, 2, c(1.0), c(2.0), "sq_diff").unwrap();
        let want = spec_sq.radial().evaluate(c(2.0)).unwrap();
        let g = sphere_field(&spec_sq);
        assert_eq!(g.value_at(&[0.0, 1.0, 0.0, 0.0]).unwrap(), c(0.0) * want);

        // seed = x₁: h* is 2y₃/(y₂ + i y₁)
        let y = [0.3, 0.8, 0.5, -0.1];
        let (radial, args) = sphere_arguments(&y).unwrap();
        let d = Scalar::new(0.8, 0.3);
        assert!((args[0] - 2.0 * 0.5 / d).norm() < 1e-15);
        let expected = spec.radial().evaluate(radial).unwrap() * args[0];
        assert!((f.value_at(&y).unwrap() - expected).norm() < 1e-13);

        // constant along rays
        let scaled: Vec<f64> = y.iter().map(|v| 1.9 * v).collect();
        assert!((f.value_at(&scaled).unwrap() - expected).norm() < 1e-12);

        assert!(f.value_at(&[0.0, 0.0, 1.0, 0.0]).is_err());
        assert!(matches!(f.value_at(&[0.0, -1.0, 0.0, 0.0]), Err(Error::BranchCut(_))));
        assert!(sphere_arguments(&[0.0, -1.0, 0.0, 0.0]).is_err());
    }
}
