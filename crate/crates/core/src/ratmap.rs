//! The rational family `F_c` with critical points at 0, ∞ and 1 of local
//! degrees `d0`, `d∞` and `d = d0 + d∞ − 1`, normalized by `F_c(0) = 0`,
//! `F_c(∞) = ∞`, `F_c(1) = c`:
//!
//! ```text
//! F_c(z) = -c · Σ_{j=d0}^{d} C(d,j) (-z)^j  /  Σ_{j=0}^{d0-1} C(d,j) (-z)^j
//! ```
//!
//! For `d0 = d∞` and `|c| = 1` the unit circle is invariant and the
//! restriction is a critical circle map; the rotation number as a function
//! of `arg c` is measured by lift iteration and inverted by bisection. In
//! general the parameter `c(θ)` is approached through the centers
//! `F_c^{q_n}(1) = 1` along the convergents of θ, found by Newton's method
//! with the parameter derivative propagated along the orbit.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly;
use crate::rotnum::{self, Convergents, RotnumError};

/// Orbit points below this radius are captured by the basin of 0.
pub const R_ZERO_CAPTURE: f64 = 1e-8;
/// Orbit points above this radius are captured by the basin of ∞.
pub const R_INF_CAPTURE: f64 = 1e8;
/// Beyond this radius evaluation switches to the reciprocal chart.
const CHART_RADIUS: f64 = 1e3;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MapError {
    #[error("criticalities must satisfy d0 >= 2 and dinf >= 2, got ({d0}, {dinf})")]
    InvalidCriticality { d0: u32, dinf: u32 },
    #[error("parameter c must be nonzero and finite")]
    BadParameter,
    #[error("pole: denominator vanishes within tolerance at z = {0}")]
    Pole(Complex64),
    #[error("operation requires the circle-symmetric case d0 = dinf")]
    NotCircleSymmetric,
    #[error("lift tracking failed at step {0} (non-finite value)")]
    LiftTrackingFailed(usize),
    #[error("rotation number must lie in (0,1), got {0}")]
    BadRotationTarget(f64),
    #[error("rotation number scan is not monotone near s = {0}")]
    NonMonotone(f64),
    #[error("no bracketing interval found for the target rotation number")]
    NoBracket,
    #[error("bisection exhausted without reaching tolerance")]
    ToleranceNotReached,
    #[error("Newton iteration diverged after {0} steps")]
    NewtonDivergence(usize),
    #[error("parameter derivative underflow in Newton iteration")]
    DerivativeUnderflow,
    #[error("root has wrong combinatorics at level {0}")]
    WrongCombinatorics(usize),
    #[error("orbit escaped the annulus at iterate {0}")]
    OrbitEscaped(usize),
    #[error("orbit too short: need {need}, have {have}")]
    OrbitTooShort { need: usize, have: usize },
    #[error("bootstrap found {0} indistinguishable candidate centers")]
    AmbiguousCenter(usize),
    #[error(transparent)]
    Rotnum(#[from] RotnumError),
}

/// Inner and outer criticalities `(d0, d∞)`, both at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criticality {
    pub d0: u32,
    pub dinf: u32,
}

impl Criticality {
    pub fn new(d0: u32, dinf: u32) -> Result<Self, MapError> {
        if d0 < 2 || dinf < 2 || d0 + dinf > 33 {
            return Err(MapError::InvalidCriticality { d0, dinf });
        }
        Ok(Self { d0, dinf })
    }

    /// Total local degree at the critical point 1.
    pub fn degree(&self) -> u32 {
        self.d0 + self.dinf - 1
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// A member of the family: criticalities plus the parameter `c = F_c(1)`.
#[derive(Debug, Clone)]
pub struct MapParams {
    pub crit: Criticality,
    pub c: Complex64,
    /// Numerator coefficients of `-F/c` in `z`, ascending, degree `d`.
    num: Vec<f64>,
    /// Denominator coefficients in `z`, ascending, degree `d0 - 1`.
    den: Vec<f64>,
    num_deriv: Vec<f64>,
    den_deriv: Vec<f64>,
    /// Reciprocal-chart numerator `P(w)`, ascending, degree `d∞ - 1`.
    chart_num: Vec<f64>,
    /// Reciprocal-chart denominator `Q(w)`, ascending, degree `d0 - 1`.
    chart_den: Vec<f64>,
}

fn real_deriv(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| j as f64 * a)
        .collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

impl MapParams {
    pub fn new(crit: Criticality, c: Complex64) -> Result<Self, MapError> {
        if !c.re.is_finite() || !c.im.is_finite() || c.norm() == 0.0 {
            return Err(MapError::BadParameter);
        }
        let d = crit.degree();
        let d0 = crit.d0;
        let mut num = vec![0.0; (d + 1) as usize];
        for j in d0..=d {
            num[j as usize] = binomial(d, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
        }
        let mut den = vec![0.0; d0 as usize];
        for j in 0..d0 {
            den[j as usize] = binomial(d, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
        }
        // F(1/w) = -c · w^{-d∞} P(w)/Q(w) with P, Q read off by reversing.
        let chart_num: Vec<f64> = (0..crit.dinf)
            .map(|k| {
                let j = d - k;
                binomial(d, j) * if j % 2 == 0 { 1.0 } else { -1.0 }
            })
            .collect();
        let chart_den: Vec<f64> = (0..d0)
            .map(|k| {
                let j = d0 - 1 - k;
                binomial(d, j) * if j % 2 == 0 { 1.0 } else { -1.0 }
            })
            .collect();
        Ok(Self {
            crit,
            c,
            num_deriv: real_deriv(&num),
            den_deriv: real_deriv(&den),
            num,
            den,
            chart_num,
            chart_den,
        })
    }

    /// Same criticalities, different parameter.
    pub fn with_c(&self, c: Complex64) -> Result<Self, MapError> {
        Self::new(self.crit, c)
    }

    /// `F_c(z)`. Total: returns non-finite values at poles; renderers rely
    /// on the capture radii to dispose of those. Large arguments are
    /// evaluated in the reciprocal chart.
    #[inline]
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if z.norm_sqr() <= CHART_RADIUS * CHART_RADIUS {
            -self.c * horner(&self.num, z) / horner(&self.den, z)
        } else {
            let w = z.inv();
            let wpow = w.powu(self.crit.dinf);
            -self.c * horner(&self.chart_num, w) / (wpow * horner(&self.chart_den, w))
        }
    }

    /// `F_c(z)` with an explicit pole error.
    pub fn eval_checked(&self, z: Complex64) -> Result<Complex64, MapError> {
        if z.norm_sqr() <= CHART_RADIUS * CHART_RADIUS {
            let den = horner(&self.den, z);
            let scale: f64 = self
                .den
                .iter()
                .enumerate()
                .map(|(j, a)| a.abs() * z.norm().powi(j as i32))
                .sum();
            if den.norm() <= 1e-14 * scale.max(1.0) {
                return Err(MapError::Pole(z));
            }
            Ok(-self.c * horner(&self.num, z) / den)
        } else {
            let v = self.eval(z);
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(MapError::Pole(z))
            }
        }
    }

    /// Spatial derivative `F_c'(z)` (direct chart).
    #[inline]
    pub fn deriv_z(&self, z: Complex64) -> Complex64 {
        let n = horner(&self.num, z);
        let d = horner(&self.den, z);
        let np = horner(&self.num_deriv, z);
        let dp = horner(&self.den_deriv, z);
        -self.c * (np * d - n * dp) / (d * d)
    }

    /// Parameter derivative `∂F_c/∂c (z) = F_c(z)/c`.
    #[inline]
    pub fn deriv_c(&self, z: Complex64) -> Complex64 {
        self.eval(z) / self.c
    }

    /// Finite poles (zeros of the denominator).
    pub fn poles(&self) -> Vec<Complex64> {
        let coeffs: Vec<Complex64> = self.den.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        poly::roots(&coeffs)
    }

    /// Finite nonzero zeros of `F_c` (roots of the reduced numerator).
    pub fn nonzero_zeros(&self) -> Vec<Complex64> {
        let coeffs: Vec<Complex64> = self.num[self.crit.d0 as usize..]
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .collect();
        poly::roots(&coeffs)
    }

    /// All preimages of `w` under `F_c`: roots of `-c N(z) - w D(z)`.
    pub fn preimages(&self, w: Complex64) -> Vec<Complex64> {
        let d = self.crit.degree() as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        for (j, &a) in self.num.iter().enumerate() {
            coeffs[j] += -self.c * a;
        }
        for (j, &a) in self.den.iter().enumerate() {
            coeffs[j] -= w * a;
        }
        poly::roots(&coeffs)
    }
}

/// Fate of the critical orbit with respect to the capture radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    BoundedInAnnulus,
    AttractedToZero { at: usize },
    AttractedToInf { at: usize },
}

/// Forward orbit of the critical point 1.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<Complex64>,
    pub status: OrbitStatus,
}

/// Iterates `z_0 = 1`, `z_{k+1} = F_c(z_k)` for up to `len` points,
/// stopping early on basin capture.
pub fn critical_orbit(params: &MapParams, len: usize) -> Orbit {
    let mut points = Vec::with_capacity(len.min(1 << 22));
    let mut z = Complex64::new(1.0, 0.0);
    let mut status = OrbitStatus::BoundedInAnnulus;
    for k in 0..len {
        points.push(z);
        let r2 = z.norm_sqr();
        if !r2.is_finite() || r2 > R_INF_CAPTURE * R_INF_CAPTURE {
            status = OrbitStatus::AttractedToInf { at: k };
            break;
        }
        if r2 < R_ZERO_CAPTURE * R_ZERO_CAPTURE {
            status = OrbitStatus::AttractedToZero { at: k };
            break;
        }
        z = params.eval(z);
    }
    Orbit { points, status }
}

/// Numerically measured local degrees at the three critical points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalStructureReport {
    pub degree_at_zero: u32,
    pub degree_at_one: u32,
    pub degree_at_inf: u32,
    pub ok: bool,
}

/// First nonvanishing Taylor order of `f - f(center)` at `center`, read off
/// the Fourier coefficients of `f` on a small circle.
fn local_degree<F: Fn(Complex64) -> Complex64>(
    f: F,
    center: Complex64,
    radius: f64,
    max_order: u32,
) -> u32 {
    const M: usize = 512;
    let vals: Vec<Complex64> = (0..M)
        .map(|l| {
            let phi = 2.0 * std::f64::consts::PI * l as f64 / M as f64;
            f(center + radius * Complex64::new(phi.cos(), phi.sin()))
        })
        .collect();
    let f0 = f(center);
    let scale = vals
        .iter()
        .map(|v| (v - f0).norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for k in 1..=max_order {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, v) in vals.iter().enumerate() {
            let phi = -2.0 * std::f64::consts::PI * (k as usize * l % M) as f64 / M as f64;
            acc += (v - f0) * Complex64::new(phi.cos(), phi.sin());
        }
        acc /= M as f64;
        if acc.norm() > 1e-7 * scale {
            return k;
        }
    }
    max_order + 1
}

/// Confirms the critical structure: local degrees `d0` at 0, `d` at 1 and
/// `d∞` at ∞ (reciprocal chart).
pub fn verify_critical_structure(params: &MapParams) -> Result<CriticalStructureReport, MapError> {
    let d = params.crit.degree();
    let poles = params.poles();
    let min_dist = |p: Complex64, pts: &[Complex64]| {
        pts.iter()
            .map(|q| (p - q).norm())
            .fold(f64::INFINITY, f64::min)
    };

    let r0 = 0.25 * min_dist(Complex64::new(0.0, 0.0), &poles).min(1.0);
    let deg0 = local_degree(|z| params.eval(z), Complex64::new(0.0, 0.0), r0, d + 1);

    let r1 = 0.25 * min_dist(Complex64::new(1.0, 0.0), &poles).min(1.0);
    let deg1 = local_degree(|z| params.eval(z), Complex64::new(1.0, 0.0), r1, d + 1);

    // Chart map g(w) = 1/F(1/w): singular where F(1/w) = 0.
    let zeros = params.nonzero_zeros();
    let sing: Vec<Complex64> = zeros.iter().map(|z| z.inv()).collect();
    let rinf = 0.25 * min_dist(Complex64::new(0.0, 0.0), &sing).min(1.0);
    let g = |w: Complex64| {
        if w.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            params.eval(w.inv()).inv()
        }
    };
    let deginf = local_degree(g, Complex64::new(0.0, 0.0), rinf, d + 1);

    Ok(CriticalStructureReport {
        degree_at_zero: deg0,
        degree_at_one: deg1,
        degree_at_inf: deginf,
        ok: deg0 == params.crit.d0 && deg1 == d && deginf == params.crit.dinf,
    })
}

/// Rotation number estimate with its a priori error bound.
#[derive(Debug, Clone, Copy)]
pub struct RotationEstimate {
    pub rho: f64,
    pub error_bound: f64,
}

/// Grid resolution of the lift-increment table.
const LIFT_GRID: usize = 2048;

/// Rotation number of the circle restriction of `F_c`, `c = e^{2πis}`,
/// `d0 = d∞`, estimated as `(H^N(x_0) - x_0)/N` for a continuous lift `H`.
///
/// The lift increment `H(x) - x` is first tabulated over one period by
/// branch continuation in `x` (anchored at the critical point, where
/// `F(1) = c` pins the branch); orbit increments are then lifted to the
/// branch nearest the table. This stays correct inside mode-locked tongues
/// where raw increments briefly turn negative. The error bound is the
/// classical `1/N`.
pub fn circle_lift_rotation_number(
    crit: Criticality,
    s: f64,
    n_iters: usize,
) -> Result<RotationEstimate, MapError> {
    if crit.d0 != crit.dinf {
        return Err(MapError::NotCircleSymmetric);
    }
    let tau = 2.0 * std::f64::consts::PI;
    let c = Complex64::new((tau * s).cos(), (tau * s).sin());
    let params = MapParams::new(crit, c)?;

    let raw_increment = |x: f64, step: usize| -> Result<(f64, f64), MapError> {
        let z = Complex64::new((tau * x).cos(), (tau * x).sin());
        let w = params.eval(z);
        let n = w.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(MapError::LiftTrackingFailed(step));
        }
        let y = (w.arg() / tau).rem_euclid(1.0);
        Ok((y, (y - x).rem_euclid(1.0)))
    };

    // Branch-continued table of H(x) - x on the grid i/LIFT_GRID.
    let m = LIFT_GRID;
    let mut table = vec![0.0f64; m + 1];
    let (_, g0) = raw_increment(0.0, 0)?;
    table[0] = g0;
    let mut prev = g0;
    for i in 1..=m {
        let x = i as f64 / m as f64;
        let (_, r) = raw_increment(x, i)?;
        let delta = r - prev;
        let wrapped = delta - delta.round();
        if wrapped.abs() > 0.2 {
            return Err(MapError::LiftTrackingFailed(i));
        }
        prev += wrapped;
        table[i] = prev;
    }
    // Degree-one closure: the branch must come back to itself.
    if (table[m] - table[0]).abs() > 0.1 {
        return Err(MapError::LiftTrackingFailed(m));
    }

    let mut x = 0.0f64; // angle of the critical point 1
    let mut sum = 0.0f64;
    for k in 0..n_iters {
        let (y, r) = raw_increment(x, k)?;
        let fx = x * m as f64;
        let i0 = (fx as usize).min(m - 1);
        let frac = fx - i0 as f64;
        let guide = table[i0] * (1.0 - frac) + table[i0 + 1] * frac;
        let delta = r - guide;
        sum += guide + (delta - delta.round());
        x = y;
    }
    Ok(RotationEstimate {
        rho: sum / n_iters as f64,
        error_bound: 1.0 / n_iters as f64,
    })
}

/// Controls for the bisection solver.
#[derive(Debug, Clone, Copy)]
pub struct BisectionConfig {
    pub scan_points: usize,
    pub scan_iters: usize,
    pub refine_iters: usize,
    pub max_steps: usize,
}

impl Default for BisectionConfig {
    fn default() -> Self {
        Self {
            scan_points: 256,
            scan_iters: 20_000,
            refine_iters: 200_000,
            max_steps: 80,
        }
    }
}

/// Samples `ρ(s)` on a uniform grid of `arg c / 2π`.
pub fn rotation_number_scan(
    crit: Criticality,
    n_points: usize,
    iters: usize,
) -> Result<Vec<(f64, f64)>, MapError> {
    let mut out = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let s = i as f64 / n_points as f64;
        let est = circle_lift_rotation_number(crit, s, iters)?;
        out.push((s, est.rho));
    }
    Ok(out)
}

/// Finds `c = e^{2πis}` with rotation number θ by bisection on `s`,
/// for the circle-symmetric case. Monotonicity of the scan is verified,
/// never assumed; a detected non-monotone bracket aborts.
pub fn find_c_bisection(
    crit: Criticality,
    theta: f64,
    tol: f64,
    cfg: &BisectionConfig,
) -> Result<Complex64, MapError> {
    if crit.d0 != crit.dinf {
        return Err(MapError::NotCircleSymmetric);
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(MapError::BadRotationTarget(theta));
    }
    let scan = rotation_number_scan(crit, cfg.scan_points, cfg.scan_iters)?;
    let slack = 2.0 / cfg.scan_iters as f64 + 1e-9;
    for w in scan.windows(2) {
        if w[1].1 < w[0].1 - slack {
            return Err(MapError::NonMonotone(w[0].0));
        }
    }
    let mut bracket = None;
    for w in scan.windows(2) {
        if w[0].1 <= theta && theta <= w[1].1 {
            bracket = Some((w[0].0, w[1].0));
            break;
        }
    }
    let (mut lo, mut hi) = bracket.ok_or(MapError::NoBracket)?;

    let tau = 2.0 * std::f64::consts::PI;
    for _ in 0..cfg.max_steps {
        let mid = 0.5 * (lo + hi);
        let est = circle_lift_rotation_number(crit, mid, cfg.refine_iters)?;
        if (est.rho - theta).abs() < tol {
            return Ok(Complex64::new((tau * mid).cos(), (tau * mid).sin()));
        }
        if est.rho < theta {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Err(MapError::ToleranceNotReached)
}

/// Newton solve for a center: `c` with `F_c^q(1) = 1`, seeded at
/// `params.c`. The parameter derivative is propagated along the orbit via
/// `dz' = (∂F/∂c)(z) + F'(z)·dz`, with `∂F/∂c = F(z)/c`.
pub fn newton_center(params: &MapParams, q: u64, residual_tol: f64) -> Result<Complex64, MapError> {
    let mut c = params.c;
    for step in 0..200 {
        let p = params.with_c(c)?;
        let mut z = Complex64::new(1.0, 0.0);
        let mut dz = Complex64::new(0.0, 0.0);
        for k in 0..q {
            let f = p.eval(z);
            if !f.re.is_finite() || !f.im.is_finite() {
                return Err(MapError::NewtonDivergence(k as usize));
            }
            dz = f / c + p.deriv_z(z) * dz;
            z = f;
        }
        let g = z - Complex64::new(1.0, 0.0);
        if g.norm() < residual_tol {
            return Ok(c);
        }
        if dz.norm() < 1e-100 {
            return Err(MapError::DerivativeUnderflow);
        }
        // Damp the step: full Newton jumps leave the root's basin long
        // before quadratic convergence can set in.
        let mut delta = g / dz;
        let cap = 0.05 * c.norm();
        if delta.norm() > cap {
            delta *= cap / delta.norm();
        }
        let next = c - delta;
        if !next.re.is_finite() || !next.im.is_finite() || next.norm() < 1e-9 || next.norm() > 1e6
        {
            return Err(MapError::NewtonDivergence(step));
        }
        c = next;
    }
    Err(MapError::NewtonDivergence(200))
}

/// Residual `|F_c^q(1) - 1|`.
pub fn center_residual(params: &MapParams, q: u64) -> f64 {
    let mut z = Complex64::new(1.0, 0.0);
    for _ in 0..q {
        z = params.eval(z);
    }
    (z - Complex64::new(1.0, 0.0)).norm()
}

/// Basin a point eventually falls into, within an iteration budget.
pub fn basin_fate(params: &MapParams, start: Complex64, budget: usize) -> Option<Basin> {
    let mut z = start;
    for _ in 0..budget {
        let r2 = z.norm_sqr();
        if !r2.is_finite() || r2 > R_INF_CAPTURE * R_INF_CAPTURE {
            return Some(Basin::Inf);
        }
        if r2 < R_ZERO_CAPTURE * R_ZERO_CAPTURE {
            return Some(Basin::Zero);
        }
        z = params.eval(z);
    }
    None
}

/// The two superattracting basins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basin {
    Zero,
    Inf,
}

/// Orientation probe for an invariant-curve orbit.
///
/// The bounded complementary component of the curve is forward invariant,
/// so any point strictly inside falls to the basin of 0 and any point
/// outside to the basin of ∞. Walking the curve in the direction of
/// increasing combinatorial coordinate, the inside is on the left exactly
/// when the curve rotates counterclockwise, i.e. when the rotation number
/// is `+θ` rather than `1-θ`. The probe takes the two orbit points with
/// the smallest positive model coordinates (a local, ordered pair on the
/// curve), offsets the midpoint to both sides of the chord, and asks the
/// dynamics which side is inside. Returns `None` when inconclusive.
pub fn orientation_is_standard(
    params: &MapParams,
    points: &[Complex64],
    theta: f64,
    horizon: usize,
) -> Option<bool> {
    let signed_frac = rotnum::signed_frac;
    // Two smallest positive model positions among 1..horizon.
    let mut a: Option<(f64, usize)> = None;
    let mut b: Option<(f64, usize)> = None;
    for j in 1..horizon.min(points.len()) {
        let m = signed_frac(j as f64 * theta);
        if m <= 0.0 {
            continue;
        }
        if a.is_none_or(|(ma, _)| m < ma) {
            b = a;
            a = Some((m, j));
        } else if b.is_none_or(|(mb, _)| m < mb) {
            b = Some((m, j));
        }
    }
    let (ma, ja) = a?;
    let (mb, jb) = b?;
    if (mb - ma).abs() > 0.1 {
        return None;
    }
    let za = points[ja];
    let zb = points[jb];
    let v = zb - za;
    if v.norm() < 1e-12 {
        return None;
    }
    let mid = 0.5 * (za + zb);
    let normal = Complex64::new(0.0, 1.0) * v; // left of the chord
    for &eps in &[0.35, 0.7, 1.5] {
        let left = basin_fate(params, mid + eps * normal, 50_000);
        let right = basin_fate(params, mid - eps * normal, 50_000);
        match (left, right) {
            (Some(Basin::Zero), Some(Basin::Inf)) => return Some(true),
            (Some(Basin::Inf), Some(Basin::Zero)) => return Some(false),
            _ => continue,
        }
    }
    None
}

/// Result of the closest-return comparison.
#[derive(Debug, Clone)]
pub struct CombinatorialCheck {
    pub passed: bool,
    pub observed: Vec<u64>,
    pub expected: Vec<u64>,
}

/// Checks that the closest-return times of the critical orbit (by
/// Euclidean distance to 1) match the convergent denominators of θ through
/// `levels`.
pub fn combinatorial_rotation_check(
    params: &MapParams,
    theta: f64,
    levels: usize,
) -> Result<CombinatorialCheck, MapError> {
    let conv = rotnum::best_approximants(theta, levels)?;
    let q_max = conv.q(levels) as usize;
    let orbit = critical_orbit(params, q_max + 1);
    if orbit.points.len() < q_max + 1 {
        let at = orbit.points.len();
        return Err(MapError::OrbitEscaped(at));
    }
    Ok(closest_return_check(&orbit.points, &conv, levels))
}

/// The same check on an arbitrary sampled orbit (first point is the
/// critical point).
pub fn closest_return_check(
    points: &[Complex64],
    conv: &Convergents,
    levels: usize,
) -> CombinatorialCheck {
    let q_max = conv.q(levels) as usize;
    let base = points[0];
    let mut observed = Vec::new();
    let mut best = f64::INFINITY;
    for (k, z) in points.iter().enumerate().take(q_max + 1).skip(1) {
        let d = (z - base).norm();
        if d < best {
            best = d;
            observed.push(k as u64);
        }
    }
    let mut expected: Vec<u64> = std::iter::once(1)
        .chain((1..=levels).map(|k| conv.q(k) as u64))
        .collect();
    expected.sort_unstable();
    expected.dedup();
    CombinatorialCheck {
        passed: observed == expected,
        observed,
        expected,
    }
}

/// One validated center along the convergents of θ.
#[derive(Debug, Clone, Copy)]
pub struct CenterPoint {
    pub n: usize,
    pub q: u64,
    pub c: Complex64,
    pub residual: f64,
}

/// Center continuation along convergents; on failure the prefix computed
/// so far is kept.
#[derive(Debug, Clone)]
pub struct CenterRun {
    pub centers: Vec<CenterPoint>,
    pub error: Option<MapError>,
}

const CENTER_RESIDUAL_TOL: f64 = 1e-12;

/// Orientation is only probed once the curve is sampled this densely.
const ORIENTATION_MIN_Q: i64 = 16;

/// Validates a candidate center of level `n`.
///
/// A level-`n` center closes the critical orbit exactly at `q_n`, which
/// consumes the two deepest closest-return scales; the distance-record
/// sieve is therefore applied through level `n - 2`. Distances are blind
/// to complex conjugation, so once the cycle is long enough the basin
/// side probe pins the orientation; a conclusive wrong orientation
/// rejects, an inconclusive probe does not.
fn validate_center(
    crit: Criticality,
    c: Complex64,
    theta: f64,
    conv: &Convergents,
    n: usize,
) -> bool {
    let Ok(params) = MapParams::new(crit, c) else {
        return false;
    };
    let q = conv.q(n);
    if center_residual(&params, q as u64) > 1e-9 {
        return false;
    }
    // A genuine cycle of length >= 2 has macroscopic diameter; the fixed
    // parameter c = 1 solves every center equation on noise alone.
    if q >= 2 {
        let orbit = critical_orbit(&params, q as usize);
        let diam = orbit
            .points
            .iter()
            .map(|z| (z - Complex64::new(1.0, 0.0)).norm())
            .fold(0.0f64, f64::max);
        if diam < 1e-3 {
            return false;
        }
    }
    let shallow = n.saturating_sub(2).max(1);
    let Ok(check) = combinatorial_rotation_check(&params, theta, shallow) else {
        return false;
    };
    if !check.passed {
        return false;
    }
    if q >= ORIENTATION_MIN_Q {
        let orbit = critical_orbit(&params, q as usize);
        if orbit.points.len() < q as usize {
            return false;
        }
        if orientation_is_standard(&params, &orbit.points, theta, q as usize) == Some(false) {
            return false;
        }
    }
    true
}

/// Seed rings around `center` at relative radii from 0.1% up to 40%.
fn seed_rings(center: Complex64) -> Vec<Complex64> {
    let mut seeds = vec![center];
    for &rel in &[0.001, 0.003, 0.01, 0.03, 0.08, 0.15, 0.25, 0.4] {
        for j in 0..16 {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / 16.0;
            seeds.push(center * (1.0 + rel * Complex64::new(phi.cos(), phi.sin())));
        }
    }
    seeds
}

/// Continues the center cascade one level: Newton from rings around the
/// previous center (and around the extrapolated position, when a step
/// ratio is available). Returns every validated root found, nearest to the
/// prediction first.
fn continue_candidates(
    crit: Criticality,
    seed: Complex64,
    predicted: Option<Complex64>,
    theta: f64,
    conv: &Convergents,
    n: usize,
    jump_cap_rel: f64,
) -> Vec<Complex64> {
    let q = conv.q(n) as u64;
    let anchor = predicted.unwrap_or(seed);
    let mut seeds = seed_rings(seed);
    if let Some(p) = predicted {
        seeds.extend(seed_rings(p));
    }
    // Newton can jump to distant parasitic roots; centers of consecutive
    // levels stay within a moderate relative distance, so cap the jump.
    let jump_cap = jump_cap_rel * seed.norm().max(0.2);
    let mut found: Vec<Complex64> = Vec::new();
    for s in seeds {
        let Ok(params) = MapParams::new(crit, s) else {
            continue;
        };
        if let Ok(c) = newton_center(&params, q, CENTER_RESIDUAL_TOL) {
            if (c - seed).norm().min((c - anchor).norm()) > jump_cap {
                continue;
            }
            if found.iter().all(|&x| (x - c).norm() > 1e-7)
                && validate_center(crit, c, theta, conv, n)
            {
                found.push(c);
            }
        }
    }
    found.sort_by(|a, b| {
        (a - anchor)
            .norm()
            .partial_cmp(&(b - anchor).norm())
            .unwrap()
    });
    found
}

/// Linear extrapolation of the next center from the last chain steps.
fn predict_next(chain: &[Complex64]) -> Option<Complex64> {
    match chain.len() {
        0 | 1 => None,
        2 => Some(chain[1] + (chain[1] - chain[0]) * 0.4),
        _ => {
            let k = chain.len();
            let d1 = chain[k - 1] - chain[k - 2];
            let d0 = chain[k - 2] - chain[k - 3];
            if d0.norm() < 1e-14 {
                return Some(chain[k - 1]);
            }
            let ratio = d1 / d0;
            Some(chain[k - 1] + d1 * ratio)
        }
    }
}

/// Centers `c_1 .. c_{n_max}` along the convergents of θ: each `c_n` solves
/// `F_c^{q_n}(1) = 1`, is seeded from its neighbor, and must pass the
/// closest-return and orientation sieve for its level.
///
/// The cascade is bootstrapped without a seed at the first orientable
/// level: every validated root reached by Newton from a coarse annulus
/// grid starts a candidate chain, chains are continued level by level, and
/// broken ones are dropped. False chains die within a few levels; if more
/// than one survives to `n_max` the run aborts as ambiguous.
pub fn center_sequence(crit: Criticality, theta: f64, n_max: usize) -> CenterRun {
    let conv = match rotnum::best_approximants(theta, n_max.max(4) + 2) {
        Ok(c) => c,
        Err(e) => {
            return CenterRun {
                centers: Vec::new(),
                error: Some(e.into()),
            }
        }
    };
    let mut centers: Vec<Option<CenterPoint>> = vec![None; n_max + 1];
    let mut error = None;

    let n0 = (1..=n_max.max(1))
        .find(|&n| conv.q(n) >= 3 && 2 * conv.p(n) != conv.q(n))
        .unwrap_or(n_max + 1);

    let make_point = |n: usize, c: Complex64| -> CenterPoint {
        let q = conv.q(n) as u64;
        let residual = MapParams::new(crit, c)
            .map(|p| center_residual(&p, q))
            .unwrap_or(f64::NAN);
        CenterPoint { n, q, c, residual }
    };

    if n0 > n_max {
        // No orientation level in range: only the trivial centers.
        // When q_1 = 1, F_c(1) = c makes c = 1 the exact first center.
        for n in 1..=n_max {
            if conv.q(n) == 1 {
                centers[n] = Some(make_point(n, Complex64::new(1.0, 0.0)));
            }
        }
        return CenterRun {
            centers: centers.into_iter().flatten().collect(),
            error,
        };
    }

    // Bootstrap chains at level n0 from a coarse annulus grid.
    let mut chains: Vec<Vec<Complex64>> = Vec::new();
    for &r in &[0.6, 0.8, 1.0, 1.3, 1.7, 2.1] {
        for j in 0..32 {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / 32.0;
            let seed = Complex64::new(r * phi.cos(), r * phi.sin());
            let Ok(params) = MapParams::new(crit, seed) else {
                continue;
            };
            let Ok(c) = newton_center(&params, conv.q(n0) as u64, CENTER_RESIDUAL_TOL) else {
                continue;
            };
            if validate_center(crit, c, theta, &conv, n0)
                && chains.iter().all(|ch| (ch[0] - c).norm() > 1e-7)
            {
                chains.push(vec![c]);
            }
        }
    }
    if chains.is_empty() {
        return CenterRun {
            centers: Vec::new(),
            error: Some(MapError::NewtonDivergence(0)),
        };
    }

    // Evolve chains level by level, branching on every validated root and
    // dropping chains with no continuation. False chains die within a few
    // levels because their combinatorics cannot be sustained.
    const MAX_CHAINS: usize = 24;
    const MAX_BRANCH: usize = 4;
    let mut level = n0;
    while level < n_max {
        level += 1;
        let mut next: Vec<Vec<Complex64>> = Vec::new();
        for chain in &chains {
            let seed = *chain.last().unwrap();
            let cands =
                continue_candidates(crit, seed, predict_next(chain), theta, &conv, level, 0.5);
            for c in cands.into_iter().take(MAX_BRANCH) {
                if next
                    .iter()
                    .all(|other: &Vec<Complex64>| (*other.last().unwrap() - c).norm() > 1e-7)
                {
                    let mut child = chain.clone();
                    child.push(c);
                    next.push(child);
                }
            }
        }
        if next.is_empty() {
            return CenterRun {
                centers: Vec::new(),
                error: Some(MapError::WrongCombinatorics(level)),
            };
        }
        next.sort_by(|a, b| last_step(a).partial_cmp(&last_step(b)).unwrap());
        // Parasitic roots come in tight clusters that would otherwise
        // crowd out the cascade. While the population is large, keep one
        // representative chain per 3%-relative neighborhood; once it is
        // small, chains are cheap enough to carry individually and the
        // neighborhood radius would exceed the genuine cascade steps.
        if next.len() > 8 {
            let mut pruned: Vec<Vec<Complex64>> = Vec::new();
            for chain in next {
                let tail = *chain.last().unwrap();
                let radius = 0.03 * tail.norm().max(0.2);
                if pruned
                    .iter()
                    .all(|kept| (*kept.last().unwrap() - tail).norm() > radius)
                {
                    pruned.push(chain);
                }
            }
            next = pruned;
        }
        next.truncate(MAX_CHAINS);
        chains = next;
    }
    if chains.len() > 1 {
        // Chains that inherit a genuine prefix but end on a parasitic root
        // cannot be continued; prefer chains that admit one more level.
        let continuable: Vec<usize> = chains
            .iter()
            .enumerate()
            .filter(|(_, ch)| {
                let seed = *ch.last().unwrap();
                !continue_candidates(crit, seed, predict_next(ch), theta, &conv, n_max + 1, 0.5)
                    .is_empty()
            })
            .map(|(i, _)| i)
            .collect();
        match continuable.len() {
            1 => {} // a unique continuable chain is unambiguous
            k => error = Some(MapError::AmbiguousCenter(if k == 0 { chains.len() } else { k })),
        }
        if let Some(&first) = continuable.first() {
            chains.swap(0, first);
        }
    }
    let mut chain = chains.swap_remove(0);

    // The survivor may have joined the cascade through a stray low-level
    // prefix. Walking back down is reliable (steps shrink into larger
    // Newton basins), so rebuild each level from the one above it.
    for i in (0..chain.len().saturating_sub(1)).rev() {
        let n = n0 + i;
        let Ok(p) = MapParams::new(crit, chain[i + 1]) else {
            continue;
        };
        if let Ok(c) = newton_center(&p, conv.q(n) as u64, CENTER_RESIDUAL_TOL) {
            if (c - chain[i]).norm() > 1e-9 && validate_center(crit, c, theta, &conv, n) {
                chain[i] = c;
            }
        }
    }

    for (i, &c) in chain.iter().enumerate() {
        centers[n0 + i] = Some(make_point(n0 + i, c));
    }

    // Fill downward from the chain start by proximity continuation; below
    // the first orientable level the sieve cannot see orientation.
    let mut seed = chain[0];
    for n in (1..n0).rev() {
        if conv.q(n) == 1 {
            centers[n] = Some(make_point(n, Complex64::new(1.0, 0.0)));
            continue;
        }
        match continue_candidates(crit, seed, None, theta, &conv, n, 4.0).first() {
            Some(&c) => {
                centers[n] = Some(make_point(n, c));
                seed = c;
            }
            None => {
                error = Some(MapError::WrongCombinatorics(n));
                break;
            }
        }
    }

    CenterRun {
        centers: centers.into_iter().flatten().collect(),
        error,
    }
}

fn last_step(chain: &[Complex64]) -> f64 {
    let k = chain.len();
    if k < 2 {
        return f64::INFINITY;
    }
    (chain[k - 1] - chain[k - 2]).norm()
}
