//! Batch verification: point sampling, the finite-difference oracle,
//! aggregated r-harmonicity reports and CSV value grids.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::format_complex;
use crate::error::{Error, Result};
use crate::families::{hyperboloid_field, psi_inverse, sphere_arguments, sphere_field, upper_half_field, FamilySpec};
use crate::geometry::{tension_levels, MetricChart, ScalarField, TensionLevels};
use crate::jet::Scalar;
use crate::lift::{ambient_levels, lift_levels_hyperbolic, sphere_levels, Ambient};

/// Model space a family is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    UpperHalf,
    Hyperboloid,
    Sphere,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::UpperHalf => "upper_half",
            Space::Hyperboloid => "hyperboloid",
            Space::Sphere => "sphere",
        }
    }

    /// Number of coordinates of sample points for dimension `n`.
    pub fn coords(self, n: usize) -> usize {
        match self {
            Space::UpperHalf => n,
            _ => n + 1,
        }
    }

    /// Column names of the coordinates.
    pub fn coord_names(self, n: usize) -> Vec<String> {
        match self {
            Space::UpperHalf => std::iter::once("t".to_string())
                .chain((1..n).map(|i| format!("x{i}")))
                .collect(),
            Space::Hyperboloid => (0..=n).map(|i| format!("y{i}")).collect(),
            Space::Sphere => (1..=n + 1).map(|i| format!("y{i}")).collect(),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper_half" => Ok(Space::UpperHalf),
            "hyperboloid" => Ok(Space::Hyperboloid),
            "sphere" => Ok(Space::Sphere),
            _ => Err(Error::Parse(format!("unknown space '{s}'"))),
        }
    }
}

/// Distances kept from the singular loci of the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Exclusion {
    pub t_min: f64,
    pub t_max: f64,
    /// Minimum `y₀ + y₁` on the hyperboloid (after projection).
    pub null_clearance: f64,
    /// Minimum `|y₂ + i·y₁|` on the unit sphere.
    pub denominator_clearance: f64,
    /// Minimum angle (radians) between the sphere argument and the cut.
    pub branch_clearance: f64,
}

impl Default for Exclusion {
    fn default() -> Self {
        Exclusion {
            t_min: 0.1,
            t_max: 10.0,
            null_clearance: 0.1,
            denominator_clearance: 0.2,
            branch_clearance: 0.1,
        }
    }
}

/// Ambient sample points lie at radii in this range.
pub const RADIUS_RANGE: (f64, f64) = (0.5, 2.0);
/// Euclidean coordinates `x` of upper-half samples lie in `[-X_RANGE, X_RANGE]`.
pub const X_RANGE: f64 = 2.0;

/// How many points to draw, where, and from which seed.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub space: Space,
    pub count: usize,
    pub rng_seed: u64,
    pub exclusion: Exclusion,
}

impl SamplePlan {
    pub fn new(space: Space, count: usize, rng_seed: u64) -> Self {
        SamplePlan {
            space,
            count,
            rng_seed,
            exclusion: Exclusion::default(),
        }
    }

    /// True when `point` satisfies this plan's admissibility margins.
    pub fn admits(&self, n: usize, point: &[f64]) -> bool {
        let ex = &self.exclusion;
        if point.len() != self.space.coords(n) || point.iter().any(|v| !v.is_finite()) {
            return false;
        }
        match self.space {
            Space::UpperHalf => point[0] >= ex.t_min && point[0] <= ex.t_max,
            Space::Hyperboloid => match crate::lift::project_hyperbolic(point) {
                Ok(p) => p[0] + p[1] >= ex.null_clearance,
                Err(_) => false,
            },
            Space::Sphere => {
                let norm = point.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return false;
                }
                let d = Scalar::new(point[1], point[0]) / norm;
                if d.norm() < ex.denominator_clearance {
                    return false;
                }
                match sphere_arguments(point) {
                    Ok((radial, _)) => radial.arg().abs() <= std::f64::consts::PI - ex.branch_clearance,
                    Err(_) => false,
                }
            }
        }
    }

    /// Draws `count` admissible points for dimension `n`. Identical plans
    /// give bit-identical points.
    pub fn sample(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        let ex = self.exclusion;
        let mut points = Vec::with_capacity(self.count);
        let max_attempts = 1000 * self.count.max(1);
        let mut attempts = 0;
        while points.len() < self.count {
            attempts += 1;
            if attempts > max_attempts {
                return Err(Error::InvalidParameter("sampling margins reject every point".into()));
            }
            let candidate = match self.space {
                Space::UpperHalf => upper_half_sample(&mut rng, n, &ex),
                Space::Hyperboloid => {
                    let base = upper_half_sample(&mut rng, n, &ex);
                    let radius = rng.gen_range(RADIUS_RANGE.0..=RADIUS_RANGE.1);
                    psi_inverse(&base)?.into_iter().map(|v| radius * v).collect()
                }
                Space::Sphere => {
                    let dir: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if !(0.1..=1.0).contains(&norm) {
                        continue;
                    }
                    let radius = rng.gen_range(RADIUS_RANGE.0..=RADIUS_RANGE.1);
                    dir.iter().map(|v| radius * v / norm).collect()
                }
            };
            if self.admits(n, &candidate) {
                points.push(candidate);
            }
        }
        Ok(points)
    }
}

fn upper_half_sample(rng: &mut ChaCha8Rng, n: usize, ex: &Exclusion) -> Vec<f64> {
    let log_t = rng.gen_range(ex.t_min.ln()..=ex.t_max.ln());
    let mut p = vec![log_t.exp().clamp(ex.t_min, ex.t_max)];
    p.extend((1..n).map(|_| rng.gen_range(-X_RANGE..=X_RANGE)));
    p
}

/// Residual and properness thresholds, all relative to the largest
/// intermediate magnitude `S` at each point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub residual: f64,
    pub properness: f64,
    pub symbolic: f64,
}

impl Tolerances {
    pub const JET_RESIDUAL: f64 = 1e-8;
    pub const SPHERE_RESIDUAL: f64 = 1e-7;
    pub const FD_RESIDUAL: f64 = 1e-3;
    pub const PROPERNESS: f64 = 1e-6;
    pub const SYMBOLIC: f64 = 1e-12;

    /// Defaults for a space.
    pub fn for_space(space: Space) -> Self {
        Tolerances {
            residual: match space {
                Space::Sphere => Self::SPHERE_RESIDUAL,
                _ => Self::JET_RESIDUAL,
            },
            properness: Self::PROPERNESS,
            symbolic: Self::SYMBOLIC,
        }
    }
}

/// Outcome of the exact check on the radial factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymbolicCheck {
    /// `τ^r(p_r)` cancels to zero.
    pub vanishes: bool,
    /// `τ^{r−1}(p_r)` keeps a coefficient above tolerance.
    pub previous_nonzero: bool,
}

impl SymbolicCheck {
    pub fn passed(&self) -> bool {
        self.vanishes && self.previous_nonzero
    }
}

/// `tension_1d^r(p_r) = 0` and `tension_1d^{r−1}(p_r) ≠ 0`, normalized by
/// the largest coefficient of `p_r`.
pub fn symbolic_check(spec: &FamilySpec, tol: f64) -> SymbolicCheck {
    let p = spec.radial();
    let reference = p.max_abs_coeff();
    let prev = p.tension_iterate(spec.n(), spec.r() - 1).expect("validated n");
    let last = prev.tension_1d(spec.n()).expect("validated n");
    SymbolicCheck {
        vanishes: last.is_negligible(reference, tol),
        previous_nonzero: !prev.is_negligible(reference, tol),
    }
}

#[derive(Serialize)]
struct SpecView {
    n: usize,
    r: usize,
    a: [f64; 2],
    b: [f64; 2],
    seed_id: String,
}

fn spec_view(spec: &FamilySpec) -> SpecView {
    SpecView {
        n: spec.n(),
        r: spec.r(),
        a: [spec.a().re, spec.a().im],
        b: [spec.b().re, spec.b().im],
        seed_id: spec.seed().id().to_string(),
    }
}

/// Aggregated result of [`verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub spec: FamilySpec,
    pub space: Space,
    pub symbolic_pass: bool,
    /// Largest `|τ^r|/S` over the points.
    pub max_rel_residual_r: f64,
    /// Largest `|τ^k_intrinsic − τ^k_ambient|/S`, `k ≤ r` (hyperboloid only).
    pub max_lift_mismatch: Option<f64>,
    /// Largest raw `|τ^{r−1}|` over the points.
    pub max_abs_tau_prev: f64,
    /// Largest `|τ^{r−1}|/S` over the points.
    pub max_rel_tau_prev: f64,
    pub properness: bool,
    pub points_used: usize,
    pub points_excluded: usize,
    pub tolerances: Tolerances,
}

#[derive(Serialize)]
struct ReportView<'a> {
    spec: SpecView,
    space: Space,
    symbolic_pass: bool,
    max_rel_residual_r: f64,
    max_lift_mismatch: Option<f64>,
    max_abs_tau_prev: f64,
    max_rel_tau_prev: f64,
    properness: bool,
    points_used: usize,
    points_excluded: usize,
    tolerances: &'a Tolerances,
    passed: bool,
}

impl VerifyReport {
    /// Every check passed: symbolic, residual, lift agreement, properness.
    pub fn passed(&self) -> bool {
        self.symbolic_pass
            && self.points_used > 0
            && self.max_rel_residual_r <= self.tolerances.residual
            && self.max_lift_mismatch.is_none_or(|m| m <= self.tolerances.residual)
            && self.properness
    }

    pub fn to_json(&self) -> String {
        let view = ReportView {
            spec: spec_view(&self.spec),
            space: self.space,
            symbolic_pass: self.symbolic_pass,
            max_rel_residual_r: self.max_rel_residual_r,
            max_lift_mismatch: self.max_lift_mismatch,
            max_abs_tau_prev: self.max_abs_tau_prev,
            max_rel_tau_prev: self.max_rel_tau_prev,
            properness: self.properness,
            points_used: self.points_used,
            points_excluded: self.points_excluded,
            tolerances: &self.tolerances,
            passed: self.passed(),
        };
        serde_json::to_string_pretty(&view).expect("plain data")
    }

    pub fn to_csv(&self) -> String {
        let header = "n,r,a,b,seed_id,space,symbolic_pass,max_rel_residual_r,max_lift_mismatch,\
                      max_abs_tau_prev,max_rel_tau_prev,properness,points_used,points_excluded,passed";
        let mismatch = self.max_lift_mismatch.map(fmt_f64).unwrap_or_default();
        format!(
            "{header}\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.spec.n(),
            self.spec.r(),
            format_complex(self.spec.a()),
            format_complex(self.spec.b()),
            self.spec.seed().id(),
            self.space,
            self.symbolic_pass,
            fmt_f64(self.max_rel_residual_r),
            mismatch,
            fmt_f64(self.max_abs_tau_prev),
            fmt_f64(self.max_rel_tau_prev),
            self.properness,
            self.points_used,
            self.points_excluded,
            self.passed()
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family        {}", self.spec.describe())?;
        writeln!(f, "radial factor {}", self.spec.radial())?;
        writeln!(f, "space         {}", self.space)?;
        writeln!(f, "symbolic      {}", if self.symbolic_pass { "pass" } else { "FAIL" })?;
        writeln!(
            f,
            "residual r    {:.3e} (tol {:.1e})",
            self.max_rel_residual_r, self.tolerances.residual
        )?;
        if let Some(m) = self.max_lift_mismatch {
            writeln!(f, "lift mismatch {m:.3e}")?;
        }
        writeln!(
            f,
            "tau^(r-1)     max {:.3e}, relative {:.3e} (threshold {:.1e})",
            self.max_abs_tau_prev, self.max_rel_tau_prev, self.tolerances.properness
        )?;
        writeln!(f, "proper        {}", self.properness)?;
        writeln!(f, "points        {} used, {} excluded", self.points_used, self.points_excluded)?;
        write!(f, "result        {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct PointOutcome {
    residual_r: f64,
    mismatch: Option<f64>,
    abs_prev: f64,
    rel_prev: f64,
}

fn relative(v: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        v / scale
    } else {
        v
    }
}

fn outcome_from_levels(levels: &TensionLevels, r: usize) -> PointOutcome {
    let prev = levels.level(r - 1).norm();
    PointOutcome {
        residual_r: relative(levels.level(r).norm(), levels.scale),
        mismatch: None,
        abs_prev: prev,
        rel_prev: relative(prev, levels.scale),
    }
}

fn check_point(spec: &FamilySpec, space: Space, point: &[f64]) -> Result<PointOutcome> {
    let r = spec.r();
    match space {
        Space::UpperHalf => {
            let chart = MetricChart::upper_half(spec.n())?;
            let levels = tension_levels(&chart, &upper_half_field(spec), point, r)?;
            Ok(outcome_from_levels(&levels, r))
        }
        Space::Hyperboloid => {
            let reports = lift_levels_hyperbolic(&upper_half_field(spec), point, r)?;
            let ambient = ambient_levels(Ambient::Hyperbolic, &hyperboloid_field(spec), point, r)?;
            let last = reports.last().expect("r >= 1");
            let mismatch = reports.iter().map(|rep| rep.rel_residual).fold(0.0, f64::max);
            let prev = ambient.level(r - 1).norm();
            Ok(PointOutcome {
                residual_r: relative(last.lhs.norm().max(last.rhs.norm()), last.scale),
                mismatch: Some(mismatch),
                abs_prev: prev,
                rel_prev: relative(prev, ambient.scale),
            })
        }
        Space::Sphere => {
            let levels = sphere_levels(&sphere_field(spec), point, r)?;
            Ok(outcome_from_levels(&levels, r))
        }
    }
}

/// Runs the exact check on `p_r`, the numerical `τ^r` check at every plan
/// point, and the properness scan.
pub fn verify(spec: &FamilySpec, plan: &SamplePlan, tolerances: &Tolerances) -> Result<VerifyReport> {
    let points = plan.sample(spec.n())?;
    let symbolic = symbolic_check(spec, tolerances.symbolic);
    let outcomes: Vec<Result<PointOutcome>> = points
        .par_iter()
        .map(|p| check_point(spec, plan.space, p))
        .collect();

    let mut report = VerifyReport {
        spec: spec.clone(),
        space: plan.space,
        symbolic_pass: symbolic.passed(),
        max_rel_residual_r: 0.0,
        max_lift_mismatch: None,
        max_abs_tau_prev: 0.0,
        max_rel_tau_prev: 0.0,
        properness: false,
        points_used: 0,
        points_excluded: 0,
        tolerances: *tolerances,
    };
    for outcome in outcomes {
        match outcome {
            Ok(o) => {
                report.points_used += 1;
                report.max_rel_residual_r = report.max_rel_residual_r.max(o.residual_r);
                if let Some(m) = o.mismatch {
                    report.max_lift_mismatch = Some(report.max_lift_mismatch.unwrap_or(0.0).max(m));
                }
                report.max_abs_tau_prev = report.max_abs_tau_prev.max(o.abs_prev);
                report.max_rel_tau_prev = report.max_rel_tau_prev.max(o.rel_prev);
            }
            Err(_) => report.points_excluded += 1,
        }
    }
    report.properness = report.max_rel_tau_prev > tolerances.properness;
    Ok(report)
}

/// Step used by [`finite_difference_oracle`] for `τ^k` at one coordinate.
pub fn oracle_step(k: usize, coordinate: f64) -> f64 {
    let base = if k == 1 { 1e-4 } else { 1e-3 };
    base * coordinate.abs().max(1.0)
}

fn metric_at(chart: &MetricChart, point: &[f64]) -> Result<(Vec<Vec<Scalar>>, Scalar)> {
    let x = crate::jet::Jet::variables(point, 0)?;
    let g = chart
        .inverse_metric(&x)?
        .iter()
        .map(|row| row.iter().map(|j| j.value()).collect())
        .collect();
    Ok((g, chart.volume_density(&x)?.value()))
}

fn shifted(point: &[f64], i: usize, delta: f64) -> Vec<f64> {
    let mut q = point.to_vec();
    q[i] += delta;
    q
}

/// Divergence form `(1/√g) Σ_j ∂_j (Σ_i g^{ij} √g ∂_i u)` by nested central
/// differences of pointwise values.
fn fd_divergence<F>(chart: &MetricChart, u: &F, point: &[f64], h: &[f64]) -> Result<Scalar>
where
    F: Fn(&[f64]) -> Result<Scalar>,
{
    let dim = point.len();
    let flux = |q: &[f64], j: usize| -> Result<Scalar> {
        let (g, vol) = metric_at(chart, q)?;
        let mut acc = Scalar::new(0.0, 0.0);
        for i in 0..dim {
            if g[i][j] == Scalar::new(0.0, 0.0) {
                continue;
            }
            let du = (u(&shifted(q, i, h[i]))? - u(&shifted(q, i, -h[i]))?) / (2.0 * h[i]);
            acc += g[i][j] * vol * du;
        }
        Ok(acc)
    };
    let (_, vol) = metric_at(chart, point)?;
    let mut total = Scalar::new(0.0, 0.0);
    for (j, &hj) in h.iter().enumerate() {
        let plus = flux(&shifted(point, j, hj), j)?;
        let minus = flux(&shifted(point, j, -hj), j)?;
        total += (plus - minus) / (2.0 * hj);
    }
    Ok(total / vol)
}

/// `τ^k(f)` at `point`, `k ∈ {1, 2}`, from pointwise values of `f` and of
/// the metric only. Independent of the jet derivative machinery.
pub fn finite_difference_oracle(chart: &MetricChart, f: &ScalarField, point: &[f64], k: usize) -> Result<Scalar> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter(format!("oracle supports k = 1 or 2, got {k}")));
    }
    if f.dim() != chart.dim() || point.len() != chart.dim() {
        return Err(Error::DimensionMismatch(f.dim(), chart.dim()));
    }
    let h: Vec<f64> = point.iter().map(|&v| oracle_step(k, v)).collect();
    for (i, &hi) in h.iter().enumerate() {
        for sign in [-1.0, 1.0] {
            if !chart.admissible(&shifted(point, i, sign * 10.0 * hi)) {
                return Err(Error::Inadmissible(point.to_vec()));
            }
        }
    }
    let value = |q: &[f64]| f.value_at(q);
    if k == 1 {
        fd_divergence(chart, &value, point, &h)
    } else {
        let inner = |q: &[f64]| fd_divergence(chart, &value, q, &h);
        fd_divergence(chart, &inner, point, &h)
    }
}

/// One axis of a value grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.count <= 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64
        }
    }
}

/// Parses `lo:hi:count` axes separated by commas.
pub fn parse_grid(text: &str) -> Result<Vec<Axis>> {
    text.split(',')
        .map(|part| {
            let fields: Vec<&str> = part.trim().split(':').collect();
            let bad = || Error::Parse(format!("bad grid axis '{part}', expected lo:hi:count"));
            if fields.len() != 3 {
                return Err(bad());
            }
            let lo: f64 = fields[0].parse().map_err(|_| bad())?;
            let hi: f64 = fields[1].parse().map_err(|_| bad())?;
            let count: usize = fields[2].parse().map_err(|_| bad())?;
            if count == 0 || !lo.is_finite() || !hi.is_finite() {
                return Err(bad());
            }
            Ok(Axis { lo, hi, count })
        })
        .collect()
}

/// Float rendering used in CSV output: 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Counts from a grid export.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub rows: usize,
    pub inadmissible: usize,
    /// Largest `|τ^r|/S` over admissible cells.
    pub max_rel_tau_r: f64,
}

/// `τ⁰ … τ^r` of the family at one point of `space` (ambient recursion on
/// the hyperboloid and sphere).
pub fn levels_at(spec: &FamilySpec, space: Space, point: &[f64]) -> Result<TensionLevels> {
    match space {
        Space::UpperHalf => tension_levels(
            &MetricChart::upper_half(spec.n())?,
            &upper_half_field(spec),
            point,
            spec.r(),
        ),
        Space::Hyperboloid => ambient_levels(Ambient::Hyperbolic, &hyperboloid_field(spec), point, spec.r()),
        Space::Sphere => sphere_levels(&sphere_field(spec), point, spec.r()),
    }
}

/// Writes `f, τ¹, …, τ^r` on a lexicographic grid to CSV.
pub fn grid_export(spec: &FamilySpec, space: Space, axes: &[Axis], out: &Path) -> Result<GridSummary> {
    let coords = space.coords(spec.n());
    if axes.len() != coords {
        return Err(Error::InvalidParameter(format!(
            "grid has {} axes, space needs {coords}",
            axes.len()
        )));
    }
    let total: usize = axes.iter().map(|a| a.count).product();
    let cells: Vec<Vec<f64>> = (0..total)
        .map(|mut flat| {
            let mut idx = vec![0; coords];
            for d in (0..coords).rev() {
                idx[d] = flat % axes[d].count;
                flat /= axes[d].count;
            }
            idx.iter().zip(axes).map(|(&i, a)| a.value(i)).collect()
        })
        .collect();
    let results: Vec<Result<TensionLevels>> = cells.par_iter().map(|p| levels_at(spec, space, p)).collect();

    let mut header = space.coord_names(spec.n());
    header.extend(["re_f".to_string(), "im_f".to_string()]);
    for k in 1..=spec.r() {
        header.push(format!("re_tau{k}"));
        header.push(format!("im_tau{k}"));
    }
    let mut text = header.join(",");
    text.push('\n');
    let mut summary = GridSummary {
        rows: 0,
        inadmissible: 0,
        max_rel_tau_r: 0.0,
    };
    for (point, result) in cells.iter().zip(&results) {
        let mut row: Vec<String> = point.iter().map(|&v| fmt_f64(v)).collect();
        match result {
            Ok(levels) => {
                for v in &levels.values {
                    row.push(fmt_f64(v.re));
                    row.push(fmt_f64(v.im));
                }
                let last = relative(levels.level(spec.r()).norm(), levels.scale);
                summary.max_rel_tau_r = summary.max_rel_tau_r.max(last);
            }
            Err(_) => {
                summary.inadmissible += 1;
                row.extend(std::iter::repeat_n(String::new(), 2 * (spec.r() + 1)));
            }
        }
        text.push_str(&row.join(","));
        text.push('\n');
        summary.rows += 1;
    }
    let mut file = std::fs::File::create(out)?;
    file.write_all(text.as_bytes())?;
    Ok(summary)
}
