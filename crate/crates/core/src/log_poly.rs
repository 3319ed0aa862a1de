//! Exact algebra on finite sums `Σ c_{k,m} · t^k · (log t)^m`.
//!
//! The span is closed under `d/dt`, under multiplication by powers of `t`,
//! and under antidifferentiation, so the radial tension operator
//! `t²·p″ − (n−2)·t·p′` and its double-integral right inverse `I_n` act on
//! it without approximation. Coefficients are complex doubles; cancellation
//! checks compare against the largest coefficient of the input.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::complex::format_complex;
use crate::error::{Error, Result};
use crate::jet::{on_branch_cut, Jet, Scalar};

/// A finite combination of `t^k (log t)^m` with `k ∈ ℤ`, `m ≥ 0`.
///
/// `log(t)^m` always means `(log t)^m`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogPolynomial {
    terms: BTreeMap<(i32, u32), Scalar>,
}

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("dimension n = {n} must be at least 2")));
    }
    Ok(())
}

impl LogPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · t^k · (log t)^m`.
    pub fn monomial(k: i32, m: u32, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(k, m, coeff);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, u32), Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((k, m), c) in terms {
            p.add_term(k, m, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, m: u32, c: Scalar) {
        let slot = self.terms.entry((k, m)).or_insert_with(zero);
        *slot += c;
        if *slot == zero() {
            self.terms.remove(&(k, m));
        }
    }

    /// Terms sorted by `(k, m)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u32, Scalar)> + '_ {
        self.terms.iter().map(|(&(k, m), &c)| (k, m, c))
    }

    pub fn coeff(&self, k: i32, m: u32) -> Scalar {
        self.terms.get(&(k, m)).copied().unwrap_or_else(zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient is at most `tol · reference`.
    pub fn is_negligible(&self, reference: f64, tol: f64) -> bool {
        self.max_abs_coeff() <= tol * reference
    }

    /// Highest power of `log t` present, if any term is stored.
    pub fn log_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, m)| m).max()
    }

    pub fn scale(&self, s: Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&km, &c)| (km, c * s)))
    }

    /// Multiplies by `t^shift`.
    pub fn shift_t(&self, shift: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(k, m), &c)| ((k + shift, m), c)))
    }

    /// Exact `d/dt`.
    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (&(k, m), &c) in &self.terms {
            if k != 0 {
                out.add_term(k - 1, m, c * f64::from(k));
            }
            if m != 0 {
                out.add_term(k - 1, m - 1, c * f64::from(m));
            }
        }
        out
    }

    /// Radial part of the upper-half-space Laplacian: `t²·p″ − (n−2)·t·p′`.
    pub fn tension_1d(&self, n: usize) -> Result<Self> {
        check_n(n)?;
        let first = self.differentiate();
        let second = first.differentiate().shift_t(2);
        let drift = first.shift_t(1).scale(Scalar::new(n as f64 - 2.0, 0.0));
        Ok(&second - &drift)
    }

    /// Applies [`tension_1d`](Self::tension_1d) `times` times.
    pub fn tension_iterate(&self, n: usize, times: usize) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..times {
            p = p.tension_1d(n)?;
        }
        Ok(p)
    }

    /// True iff `p ∈ span{1, t^{n−1}}`, the kernel of the radial tension.
    pub fn in_tension_kernel(&self, n: usize) -> bool {
        let top = n as i32 - 1;
        self.terms.keys().all(|&(k, m)| m == 0 && (k == 0 || k == top))
    }

    /// Antiderivative with zero integration constant.
    pub fn antiderivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(k, m), &c) in &self.terms {
            if k == -1 {
                out.add_term(0, m + 1, c / f64::from(m + 1));
                continue;
            }
            // ∫ t^k L^m = t^{k+1} L^m/(k+1) − m/(k+1) ∫ t^k L^{m−1}
            let inv = 1.0 / f64::from(k + 1);
            let mut factor = c * inv;
            for j in (0..=m).rev() {
                out.add_term(k + 1, j, factor);
                factor = -factor * (f64::from(j) * inv);
            }
        }
        out
    }

    /// `I_n(p)(t) = ∫ t^{n−2}·(∫ t^{−n}·p dt + α) dt + β`.
    pub fn integral_operator(&self, n: usize, alpha: Scalar, beta: Scalar) -> Result<Self> {
        check_n(n)?;
        let n = n as i32;
        let mut inner = self.shift_t(-n).antiderivative();
        inner.add_term(0, 0, alpha);
        let mut outer = inner.shift_t(n - 2).antiderivative();
        outer.add_term(0, 0, beta);
        Ok(outer)
    }

    /// The radial factor `p_r(t) = (a + b·t^{n−1})·(log t)^{r−1}`.
    pub fn build_pr(n: usize, r: usize, a: Scalar, b: Scalar) -> Result<Self> {
        check_n(n)?;
        if r < 1 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        if a == zero() && b == zero() {
            return Err(Error::InvalidParameter("coefficient pair (a, b) must be non-zero".into()));
        }
        let m = (r - 1) as u32;
        Ok(Self::from_terms([((0, m), a), ((n as i32 - 1, m), b)]))
    }

    /// Value at complex `t` using the principal logarithm.
    pub fn evaluate(&self, t: Scalar) -> Result<Scalar> {
        if on_branch_cut(t) {
            return Err(Error::BranchCut(t.to_string()));
        }
        let log_t = t.ln();
        Ok(self
            .terms
            .iter()
            .map(|(&(k, m), &c)| c * t.powi(k) * log_t.powi(m as i32))
            .sum())
    }

    /// Composes with the jet `t`; the constant term of `t` must be off the cut.
    pub fn evaluate_jet(&self, t: &Jet) -> Result<Jet> {
        let mut acc = Jet::constant(t.dim(), t.order(), zero())?;
        if self.is_zero() {
            return Ok(acc);
        }
        let log_t = if self.log_degree().unwrap_or(0) > 0 {
            Some(t.log()?)
        } else {
            None
        };
        let mut t_pows: BTreeMap<i32, Jet> = BTreeMap::new();
        let mut log_pows: BTreeMap<u32, Jet> = BTreeMap::new();
        for (&(k, m), &c) in &self.terms {
            if let Entry::Vacant(e) = t_pows.entry(k) {
                e.insert(t.powi(k)?);
            }
            if let Entry::Vacant(e) = log_pows.entry(m) {
                let l = match &log_t {
                    Some(l) => l.powi(m as i32)?,
                    None => Jet::constant(t.dim(), t.order(), Scalar::new(1.0, 0.0))?,
                };
                e.insert(l);
            }
            let term = &t_pows[&k] * &log_pows[&m];
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }
}

impl Add for &LogPolynomial {
    type Output = LogPolynomial;
    fn add(self, rhs: &LogPolynomial) -> LogPolynomial {
        let mut out = self.clone();
        for (&(k, m), &c) in &rhs.terms {
            out.add_term(k, m, c);
        }
        out
    }
}

impl Sub for &LogPolynomial {
    type Output = LogPolynomial;
    fn sub(self, rhs: &LogPolynomial) -> LogPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LogPolynomial {
    type Output = LogPolynomial;
    fn neg(self) -> LogPolynomial {
        self.scale(Scalar::new(-1.0, 0.0))
    }
}

impl Mul for &LogPolynomial {
    type Output = LogPolynomial;
    fn mul(self, rhs: &LogPolynomial) -> LogPolynomial {
        let mut out = LogPolynomial::zero();
        for (&(k1, m1), &c1) in &self.terms {
            for (&(k2, m2), &c2) in &rhs.terms {
                out.add_term(k1 + k2, m1 + m2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LogPolynomial {
    /// Canonical text, e.g. `(1+2i)*t^3*log(t)^2 + -1*t^-1`, sorted by `(k, m)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(k, m), &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_complex(c))?;
            match k {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{k}")?,
            }
            match m {
                0 => {}
                1 => write!(f, "*log(t)")?,
                _ => write!(f, "*log(t)^{m}")?,
            }
        }
        Ok(())
    }
}
