//! Truncated multivariate Taylor series ("jets") over complex scalars.
//!
//! A [`Jet`] of dimension `d` and order `N` stores the Taylor coefficients
//! `∂^α f / α!` of a function at a base point, for every multi-index `α`
//! with `|α| ≤ N`. Coefficients are kept densely in graded order: all
//! degree-0 entries, then degree 1, and so on. Because the ordering inside
//! a degree does not depend on `N`, the coefficients of a lower-order
//! truncation are a prefix of the higher-order ones.
//!
//! Analytic functions (`log`, `sqrt`, powers, `exp`) are composed by
//! splitting `a = a₀ + ã` with nilpotent `ã` and summing
//! `Σ f⁽ᵏ⁾(a₀)/k! · ãᵏ` in Horner form. Logarithms, square roots and
//! non-integral powers use the principal branch; their constant term must
//! stay off the non-positive real axis.

use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for every function value in the toolkit.
pub type Scalar = Complex64;

/// Exponent vector of a monomial, one entry per variable.
pub type MultiIndex = Vec<u32>;

/// Returns an error unless both components of `z` are finite.
pub fn check_finite(z: Scalar) -> Result<Scalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(z.to_string()))
    }
}

/// True when `z` lies on the principal branch cut (zero or non-positive real).
pub fn on_branch_cut(z: Scalar) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

struct Layout {
    dim: usize,
    order: usize,
    indices: Vec<MultiIndex>,
    degrees: Vec<usize>,
    lookup: HashMap<MultiIndex, usize>,
    /// `(i, j, k)`: the product of entries `i` and `j` lands at `k`.
    mul: Vec<(u32, u32, u32)>,
    /// `raise[var][pos]` is the position of `α + e_var`, for `|α| < order`.
    raise: Vec<Vec<u32>>,
}

fn push_degree(dim: usize, degree: u32, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == dim {
        prefix.push(degree);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=degree).rev() {
        prefix.push(first);
        push_degree(dim, degree - first, prefix, out);
        prefix.pop();
    }
}

impl Layout {
    fn build(dim: usize, order: usize) -> Layout {
        let mut indices = Vec::new();
        for degree in 0..=order as u32 {
            push_degree(dim, degree, &mut Vec::with_capacity(dim), &mut indices);
        }
        let degrees: Vec<usize> = indices
            .iter()
            .map(|a| a.iter().sum::<u32>() as usize)
            .collect();
        let lookup: HashMap<MultiIndex, usize> = indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();

        let mut mul = Vec::new();
        let mut sum = vec![0u32; dim];
        for (i, a) in indices.iter().enumerate() {
            for (j, b) in indices.iter().enumerate() {
                if degrees[i] + degrees[j] > order {
                    // later entries only have larger degree
                    break;
                }
                for v in 0..dim {
                    sum[v] = a[v] + b[v];
                }
                mul.push((i as u32, j as u32, lookup[&sum] as u32));
            }
        }

        let mut raise = vec![vec![u32::MAX; indices.len()]; dim];
        for (pos, a) in indices.iter().enumerate() {
            if degrees[pos] >= order {
                continue;
            }
            for (var, row) in raise.iter_mut().enumerate() {
                let mut b = a.clone();
                b[var] += 1;
                row[pos] = lookup[&b] as u32;
            }
        }

        Layout {
            dim,
            order,
            indices,
            degrees,
            lookup,
            mul,
            raise,
        }
    }

    fn len(&self) -> usize {
        self.indices.len()
    }

    /// Number of entries of degree at most `order`.
    fn prefix_len(&self, order: usize) -> usize {
        self.degrees.partition_point(|&d| d <= order)
    }
}

type LayoutCache = Mutex<HashMap<(usize, usize), Arc<Layout>>>;

fn layout(dim: usize, order: usize) -> Arc<Layout> {
    static LAYOUTS: OnceLock<LayoutCache> = OnceLock::new();
    let cache = LAYOUTS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry((dim, order))
        .or_insert_with(|| Arc::new(Layout::build(dim, order)))
        .clone()
}

/// Truncated Taylor expansion of a complex function of `dim` variables.
#[derive(Clone)]
pub struct Jet {
    layout: Arc<Layout>,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for Jet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for (alpha, c) in self.terms() {
            map.entry(&alpha, c);
        }
        map.finish()
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Jet {
    fn zeros_like(layout: &Arc<Layout>) -> Jet {
        Jet {
            layout: layout.clone(),
            coeffs: vec![Scalar::new(0.0, 0.0); layout.len()],
        }
    }

    fn check_shape(dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(Error::InvalidParameter("jet dimension must be positive".into()));
        }
        Ok(())
    }

    /// The constant function `value`.
    pub fn constant(dim: usize, order: usize, value: Scalar) -> Result<Jet> {
        Self::check_shape(dim)?;
        check_finite(value)?;
        let mut jet = Self::zeros_like(&layout(dim, order));
        jet.coeffs[0] = value;
        Ok(jet)
    }

    /// The coordinate function `x_index` expanded at `base_value`.
    pub fn variable(dim: usize, order: usize, index: usize, base_value: Scalar) -> Result<Jet> {
        Self::check_shape(dim)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut jet = Self::constant(dim, order, base_value)?;
        if order >= 1 {
            // degree-1 entries are ordered e_0, e_1, ...
            jet.coeffs[1 + index] = Scalar::new(1.0, 0.0);
        }
        Ok(jet)
    }

    /// One coordinate jet per entry of `point`.
    pub fn variables(point: &[f64], order: usize) -> Result<Vec<Jet>> {
        (0..point.len())
            .map(|i| Jet::variable(point.len(), order, i, Scalar::new(point[i], 0.0)))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    /// Function value at the base point.
    pub fn value(&self) -> Scalar {
        self.coeffs[0]
    }

    /// Taylor coefficients in graded order.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `(multi-index, coefficient)` pairs in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.layout.indices.iter().zip(self.coeffs.iter())
    }

    /// Taylor coefficient at `alpha`.
    pub fn coeff(&self, alpha: &[u32]) -> Result<Scalar> {
        self.position(alpha).map(|p| self.coeffs[p])
    }

    fn position(&self, alpha: &[u32]) -> Result<usize> {
        if alpha.len() != self.dim() {
            return Err(Error::BadMultiIndex(alpha.to_vec()));
        }
        self.layout
            .lookup
            .get(alpha)
            .copied()
            .ok_or_else(|| Error::BadMultiIndex(alpha.to_vec()))
    }

    /// The partial derivative `∂^α f` at the base point.
    pub fn partial(&self, alpha: &[u32]) -> Result<Scalar> {
        let c = self.coeff(alpha)?;
        let factorial: f64 = alpha
            .iter()
            .map(|&a| (1..=a).map(f64::from).product::<f64>())
            .product();
        Ok(c * factorial)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Jet) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Drops every coefficient of degree above `order`.
    pub fn truncate(&self, order: usize) -> Result<Jet> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                have: self.order(),
                need: order,
            });
        }
        let layout = layout(self.dim(), order);
        let coeffs = self.coeffs[..self.layout.prefix_len(order)].to_vec();
        debug_assert_eq!(coeffs.len(), layout.len());
        Ok(Jet { layout, coeffs })
    }

    /// `∂f/∂x_var` as a jet of one order less.
    pub fn derivative(&self, var: usize) -> Result<Jet> {
        if var >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: var,
                dim: self.dim(),
            });
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        let lower = layout(self.dim(), self.order() - 1);
        let raise = &self.layout.raise[var];
        let coeffs = lower
            .indices
            .iter()
            .enumerate()
            .map(|(pos, alpha)| self.coeffs[raise[pos] as usize] * f64::from(alpha[var] + 1))
            .collect();
        Ok(Jet {
            layout: lower,
            coeffs,
        })
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet {
            layout: self.layout.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Jet {
            layout: self.layout.clone(),
            coeffs,
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_same(other)?;
        let mut out = Self::zeros_like(&self.layout);
        for &(i, j, k) in &self.layout.mul {
            out.coeffs[k as usize] += self.coeffs[i as usize] * other.coeffs[j as usize];
        }
        Ok(out)
    }

    pub fn try_div(&self, other: &Jet) -> Result<Jet> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, s: Scalar) -> Jet {
        Jet {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: Scalar) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    /// Evaluates `Σ_k series[k] · ãᵏ` where `ã` is `self` minus its value.
    fn compose(&self, series: &[Scalar]) -> Jet {
        let mut nilpotent = self.clone();
        nilpotent.coeffs[0] = Scalar::new(0.0, 0.0);
        let mut acc = Self::zeros_like(&self.layout);
        for c in series.iter().rev() {
            acc = acc.try_mul(&nilpotent).expect("same layout");
            acc.coeffs[0] += c;
        }
        acc
    }

    fn nonzero_value(&self) -> Result<Scalar> {
        let a0 = self.value();
        if a0 == Scalar::new(0.0, 0.0) {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(a0)
    }

    fn off_branch_cut(&self) -> Result<Scalar> {
        let a0 = self.nonzero_value()?;
        if on_branch_cut(a0) {
            return Err(Error::BranchCut(a0.to_string()));
        }
        Ok(a0)
    }

    /// Jet of `1/f`.
    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.nonzero_value()?;
        let inv = a0.inv();
        let mut series = Vec::with_capacity(self.order() + 1);
        let mut term = inv;
        for _ in 0..=self.order() {
            series.push(term);
            term = -term * inv;
        }
        Ok(self.compose(&series))
    }

    /// Principal logarithm.
    pub fn log(&self) -> Result<Jet> {
        let a0 = self.off_branch_cut()?;
        let inv = a0.inv();
        let mut series = vec![a0.ln()];
        let mut power = Scalar::new(1.0, 0.0);
        for k in 1..=self.order() {
            power *= inv;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            series.push(power * (sign / k as f64));
        }
        Ok(self.compose(&series))
    }

    pub fn exp(&self) -> Result<Jet> {
        let e0 = check_finite(self.value().exp())?;
        let mut series = Vec::with_capacity(self.order() + 1);
        let mut term = e0;
        for k in 0..=self.order() {
            series.push(term);
            term /= (k + 1) as f64;
        }
        Ok(self.compose(&series))
    }

    fn binomial_series(&self, exponent: f64, head: Scalar, a0: Scalar) -> Jet {
        // C(p, k) · a0^(p-k) = C(p, k) · head · a0^(-k)
        let inv = a0.inv();
        let mut series = Vec::with_capacity(self.order() + 1);
        let mut term = head;
        for k in 0..=self.order() {
            series.push(term);
            term = term * inv * ((exponent - k as f64) / (k + 1) as f64);
        }
        self.compose(&series)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.off_branch_cut()?;
        Ok(self.binomial_series(0.5, a0.sqrt(), a0))
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, exponent: i32) -> Result<Jet> {
        if exponent < 0 {
            return self.recip()?.powi(-exponent);
        }
        let mut result = Self::constant(self.dim(), self.order(), Scalar::new(1.0, 0.0))?;
        let mut base = self.clone();
        let mut e = exponent as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Real power; integral exponents take the exact multiplication path,
    /// others use the principal branch.
    pub fn pow(&self, exponent: f64) -> Result<Jet> {
        if !exponent.is_finite() {
            return Err(Error::NonFinite(exponent.to_string()));
        }
        if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
            return self.powi(exponent as i32);
        }
        let a0 = self.off_branch_cut()?;
        let head = check_finite(a0.powf(exponent))?;
        Ok(self.binomial_series(exponent, head, a0))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                self.$checked(rhs).expect("jet operands must share dimension and order")
            }
        }
        impl $trait<Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                (&self).$method(rhs)
            }
        }
        impl $trait<Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Scalar::new(-1.0, 0.0))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

impl Mul<Scalar> for &Jet {
    type Output = Jet;
    fn mul(self, s: Scalar) -> Jet {
        self.scale(s)
    }
}

impl Mul<Scalar> for Jet {
    type Output = Jet;
    fn mul(self, s: Scalar) -> Jet {
        self.scale(s)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        self.scale(Scalar::new(s, 0.0))
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        self.scale(Scalar::new(s, 0.0))
    }
}

impl Add<Scalar> for &Jet {
    type Output = Jet;
    fn add(self, s: Scalar) -> Jet {
        self.add_scalar(s)
    }
}

impl Add<Scalar> for Jet {
    type Output = Jet;
    fn add(self, s: Scalar) -> Jet {
        self.add_scalar(s)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, s: f64) -> Jet {
        self.add_scalar(Scalar::new(s, 0.0))
    }
}
