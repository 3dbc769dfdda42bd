//! Continued fractions, rotation numbers and closest-return combinatorics.
//!
//! Everything here is exact integer arithmetic on convergents plus plain
//! `f64` for the real quantities. A number is treated as rational once the
//! expansion hits a partial quotient above [`MAX_PARTIAL_QUOTIENT`] or a
//! remainder below [`RATIONAL_EPS`]; double precision cannot distinguish
//! further.

use thiserror::Error;

/// Partial quotients above this are read as "the remainder was zero".
pub const MAX_PARTIAL_QUOTIENT: f64 = 1e9;
/// Remainders below this terminate an expansion.
pub const RATIONAL_EPS: f64 = 1e-15;
/// Default truncation depth for expansions.
pub const DEFAULT_DEPTH: usize = 64;
/// Tolerance used when detecting periodicity of `r_prm` orbits.
pub const PERIOD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RotnumError {
    #[error("theta {0} outside (0,1)")]
    ThetaOutOfRange(f64),
    #[error("rational within resolution at term {term}")]
    RationalWithinResolution { term: usize },
    #[error("depth {requested} exceeds configured maximum {max}")]
    DepthExceeded { requested: usize, max: usize },
    #[error("convergent denominator overflow past 2^63-1 at level {level}")]
    Overflow { level: usize },
}

/// A truncated continued fraction `[0; a_1, a_2, …, a_D]` with its value.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFraction {
    pub terms: Vec<u64>,
    pub value: f64,
}

impl ContinuedFraction {
    /// Reconstructs the value from the terms (backward recurrence).
    pub fn reconstruct(&self) -> f64 {
        cf_value(&self.terms)
    }
}

/// Best rational approximations `p_k/q_k`, `k = 1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergents {
    pub pairs: Vec<(i64, i64)>,
}

impl Convergents {
    pub fn p(&self, k: usize) -> i64 {
        assert!(k >= 1, "convergents are indexed from 1");
        self.pairs[k - 1].0
    }

    pub fn q(&self, k: usize) -> i64 {
        assert!(k >= 1, "convergents are indexed from 1");
        self.pairs[k - 1].1
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Denominators including the recurrence seed `q_0 = 1`.
    pub fn denominators_from_zero(&self) -> Vec<i64> {
        let mut q = vec![1];
        q.extend(self.pairs.iter().map(|&(_, qk)| qk));
        q
    }
}

/// Type flag of an irrational at truncation depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationType {
    /// Terms bounded at truncation depth, no periodicity detected.
    Bounded,
    /// Terms eventually periodic: `a_{n+p} = a_n` for `n >= preperiod`.
    PrePeriodic { preperiod: usize, period: usize },
    /// Periodic from the first term.
    Periodic { period: usize },
}

/// Classification of a rotation number at truncation depth.
#[derive(Debug, Clone)]
pub struct RotationClass {
    pub theta: f64,
    pub terms: Vec<u64>,
    pub kind: RotationType,
    pub max_term: u64,
    /// Smallest `m` with `|r_prm^m(θ) − θ| < PERIOD_TOL`, if found.
    pub r_prm_period: Option<usize>,
}

fn check_open_unit(theta: f64) -> Result<(), RotnumError> {
    if !(theta > 0.0 && theta < 1.0) || !theta.is_finite() {
        return Err(RotnumError::ThetaOutOfRange(theta));
    }
    Ok(())
}

/// Expands `θ ∈ (0,1)` to `depth` partial quotients.
///
/// Fails with [`RotnumError::RationalWithinResolution`] when the expansion
/// terminates before reaching `depth`.
pub fn cf_expand(theta: f64, depth: usize) -> Result<ContinuedFraction, RotnumError> {
    check_open_unit(theta)?;
    if depth == 0 || depth > DEFAULT_DEPTH {
        return Err(RotnumError::DepthExceeded {
            requested: depth,
            max: DEFAULT_DEPTH,
        });
    }
    let mut terms = Vec::with_capacity(depth);
    let mut x = theta;
    for k in 1..=depth {
        let inv = 1.0 / x;
        let a = inv.floor();
        let rem = inv - a;
        if a > MAX_PARTIAL_QUOTIENT {
            return Err(RotnumError::RationalWithinResolution { term: k });
        }
        terms.push(a as u64);
        if rem < RATIONAL_EPS {
            if terms.len() < depth {
                return Err(RotnumError::RationalWithinResolution { term: k });
            }
            break;
        }
        x = rem;
    }
    Ok(ContinuedFraction {
        terms,
        value: theta,
    })
}

/// Value of `[0; a_1, …, a_n]` by the backward recurrence.
pub fn cf_value(terms: &[u64]) -> f64 {
    let mut x = 0.0;
    for &a in terms.iter().rev() {
        x = 1.0 / (a as f64 + x);
    }
    x
}

/// Convergents `p_k/q_k` for `k = 1..=n`, exact in 64-bit integers.
pub fn best_approximants(theta: f64, n: usize) -> Result<Convergents, RotnumError> {
    let cf = cf_expand(theta, n)?;
    convergents_of_terms(&cf.terms)
}

/// Integer recurrence `p_k = a_k p_{k-1} + p_{k-2}`, `q_k` likewise, with
/// seeds `p_0 = 0, p_{-1} = 1, q_0 = 1, q_{-1} = 0`.
pub fn convergents_of_terms(terms: &[u64]) -> Result<Convergents, RotnumError> {
    let mut pairs = Vec::with_capacity(terms.len());
    let (mut p_prev, mut p_cur) = (1i64, 0i64);
    let (mut q_prev, mut q_cur) = (0i64, 1i64);
    for (k, &a) in terms.iter().enumerate() {
        let a = i64::try_from(a).map_err(|_| RotnumError::Overflow { level: k + 1 })?;
        let p_next = a
            .checked_mul(p_cur)
            .and_then(|x| x.checked_add(p_prev))
            .ok_or(RotnumError::Overflow { level: k + 1 })?;
        let q_next = a
            .checked_mul(q_cur)
            .and_then(|x| x.checked_add(q_prev))
            .ok_or(RotnumError::Overflow { level: k + 1 })?;
        pairs.push((p_next, q_next));
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    Ok(Convergents { pairs })
}

/// Gauss map `G(θ) = {1/θ}`.
///
/// Returns 0 when θ is a unit fraction at resolution; callers that need to
/// distinguish should test [`is_rational_at_resolution`].
pub fn gauss(theta: f64) -> Result<f64, RotnumError> {
    check_open_unit(theta)?;
    Ok((1.0 / theta).fract())
}

/// True when the expansion of θ terminates within `DEFAULT_DEPTH` terms.
pub fn is_rational_at_resolution(theta: f64) -> bool {
    if !(theta > 0.0 && theta < 1.0) {
        return true;
    }
    matches!(
        cf_expand(theta, DEFAULT_DEPTH),
        Err(RotnumError::RationalWithinResolution { .. })
    )
}

/// Prime renormalization of the rotation number:
/// `θ/(1−θ)` on `[0, 1/2)` and `2 − 1/θ` on `[1/2, 1)`.
pub fn r_prm(theta: f64) -> Result<f64, RotnumError> {
    if !(0.0..1.0).contains(&theta) || !theta.is_finite() {
        return Err(RotnumError::ThetaOutOfRange(theta));
    }
    if theta < 0.5 {
        Ok(theta / (1.0 - theta))
    } else {
        Ok(2.0 - 1.0 / theta)
    }
}

/// Smallest `m <= max_m` with `|r_prm^m(θ) − θ| < PERIOD_TOL`.
pub fn r_prm_period(theta: f64, max_m: usize) -> Option<usize> {
    let mut x = theta;
    for m in 1..=max_m {
        x = r_prm(x).ok()?;
        if (x - theta).abs() < PERIOD_TOL {
            return Some(m);
        }
    }
    None
}

/// Distance from `x` to the nearest integer.
pub fn circle_dist(x: f64) -> f64 {
    let f = x.fract().rem_euclid(1.0);
    f.min(1.0 - f)
}

/// Representative of `x` mod 1 in `[-1/2, 1/2)`.
pub fn signed_frac(x: f64) -> f64 {
    let f = x.rem_euclid(1.0);
    if f >= 0.5 {
        f - 1.0
    } else {
        f
    }
}

/// Closest-return times of the rotation by θ: increasing times `q <= n_max`
/// with `dist(qθ, Z) < dist(jθ, Z)` for all `1 <= j < q`. Ties keep the
/// earlier time (the inequality is strict).
pub fn closest_returns_rotation(theta: f64, n_max: u64) -> Vec<u64> {
    assert!(n_max <= 1_000_000, "n_max capped at 10^6");
    let mut out = Vec::new();
    let mut best = f64::INFINITY;
    for q in 1..=n_max {
        let d = circle_dist(q as f64 * theta);
        if d < best {
            best = d;
            out.push(q);
        }
    }
    out
}

/// Classifies θ at truncation depth: bounded / pre-periodic / periodic,
/// with the `r_prm` period when one exists.
pub fn classify(theta: f64, depth: usize) -> Result<RotationClass, RotnumError> {
    let cf = cf_expand(theta, depth)?;
    let terms = cf.terms.clone();
    let max_term = *terms.iter().max().expect("depth >= 1");

    // Drop the garbage tail: float expansions lose the pattern near the
    // resolution floor, so only trust the first 3/4 of the terms for
    // periodicity detection.
    let trusted = &terms[..(terms.len() * 3 / 4).max(terms.len().min(8))];
    let kind = detect_periodicity(trusted);

    Ok(RotationClass {
        theta,
        terms,
        kind,
        max_term,
        r_prm_period: r_prm_period(theta, 64),
    })
}

fn detect_periodicity(terms: &[u64]) -> RotationType {
    let n = terms.len();
    // Smallest (preperiod, period) such that a_{i+p} = a_i for all i >= m-1,
    // requiring at least two full periods of evidence.
    for period in 1..=n / 2 {
        for pre in 0..n.saturating_sub(2 * period) {
            let ok = (pre..n - period).all(|i| terms[i] == terms[i + period]);
            if ok {
                return if pre == 0 {
                    RotationType::Periodic { period }
                } else {
                    RotationType::PrePeriodic {
                        preperiod: pre + 1,
                        period,
                    }
                };
            }
        }
    }
    RotationType::Bounded
}

/// Smallest even period of θ under the Gauss map, from CF periodicity.
pub fn smallest_even_gauss_period(theta: f64, depth: usize) -> Option<usize> {
    let class = classify(theta, depth).ok()?;
    match class.kind {
        RotationType::Periodic { period } => Some(if period % 2 == 0 { period } else { 2 * period }),
        _ => None,
    }
}
