//! Translation-pair calculus: prime renormalization of commuting pairs of
//! translations, anti-renormalization matrices, the power-triple semigroup
//! and cascades of translations with dominant points.
//!
//! A pair `(u, v)` stands for the commuting translations `(T_{-u}, T_v)`;
//! its rotation number is `v/(u+v)`. One prime-renormalization step acts on
//! the column vector `(-u, v)` by one of the integer matrices `I⁻`, `I⁺`,
//! and for a periodic-type rotation number the composite over one period is
//! a positive integer matrix with leading eigenvalue `t > 1` that rescales
//! the pair by `1/t`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::rotnum;

/// Tolerance for the degenerate `u = v` test in a prime-renormalization step.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Class-invariance tolerance for the real embedding.
pub const IOTA_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum SectorError {
    #[error("degenerate pair: u = v within tolerance (rotation number 1/2)")]
    DegeneratePair,
    #[error("pair components must be positive, got ({0}, {1})")]
    NonPositivePair(f64, f64),
    #[error("no prime-renormalization period found for theta {0}")]
    PeriodNotFound(f64),
    #[error("eigenvector of the anti-renormalization matrix is not strictly positive")]
    EigenvectorNotPositive,
    #[error("convention bug: {0}")]
    ConventionBug(String),
    #[error("integer overflow while rewriting power triples")]
    Overflow,
    #[error("subtraction requires P >= Q")]
    NotSubtractable,
    #[error("enumeration budget exceeded ({0} candidates)")]
    BudgetExceeded(usize),
}

/// Commuting pair of translations `(T_{-u}, T_v)`, both lengths positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationPair {
    pub u: f64,
    pub v: f64,
}

impl TranslationPair {
    pub fn new(u: f64, v: f64) -> Result<Self, SectorError> {
        if !(u > 0.0 && v > 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(SectorError::NonPositivePair(u, v));
        }
        Ok(Self { u, v })
    }

    /// Rotation number `v/(u+v)` of the glued pair.
    pub fn rotation(&self) -> f64 {
        self.v / (self.u + self.v)
    }
}

/// Branch taken by one prime-renormalization step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `u >= v`: the pair becomes `(u - v, v)`.
    IMinus,
    /// `u < v`: the pair becomes `(u, v - u)`.
    IPlus,
}

impl Branch {
    pub fn matrix(self) -> IntMatrix2 {
        match self {
            Branch::IMinus => IntMatrix2::I_MINUS,
            Branch::IPlus => IntMatrix2::I_PLUS,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::IMinus => write!(f, "I-"),
            Branch::IPlus => write!(f, "I+"),
        }
    }
}

/// One prime-renormalization step of the pair.
pub fn prime_renorm_pair(p: &TranslationPair) -> Result<(TranslationPair, Branch), SectorError> {
    let scale = p.u.max(p.v);
    if (p.u - p.v).abs() <= DEGENERATE_TOL * scale {
        return Err(SectorError::DegeneratePair);
    }
    if p.u > p.v {
        Ok((TranslationPair::new(p.u - p.v, p.v)?, Branch::IMinus))
    } else {
        Ok((TranslationPair::new(p.u, p.v - p.u)?, Branch::IPlus))
    }
}

/// Rotation number of the pair, `v/(u+v)`.
pub fn rotation_of_pair(p: &TranslationPair) -> f64 {
    p.rotation()
}

/// 2x2 matrix with nonnegative integer entries, acting on column vectors
/// `(-u, v)` and on row vectors `(a, b)` from the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix2 {
    pub m: [[i64; 2]; 2],
}

impl IntMatrix2 {
    pub const IDENTITY: Self = Self { m: [[1, 0], [0, 1]] };
    pub const I_MINUS: Self = Self { m: [[1, 1], [0, 1]] };
    pub const I_PLUS: Self = Self { m: [[1, 0], [1, 1]] };

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn apply_col(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.m[0][0] as f64 * x + self.m[0][1] as f64 * y,
            self.m[1][0] as f64 * x + self.m[1][1] as f64 * y,
        )
    }

    /// Row action `(a b) · M`, checked.
    fn row_mul(&self, a: u128, b: u128) -> Option<(u128, u128)> {
        let m = &self.m;
        let a2 = a
            .checked_mul(m[0][0] as u128)?
            .checked_add(b.checked_mul(m[1][0] as u128)?)?;
        let b2 = a
            .checked_mul(m[0][1] as u128)?
            .checked_add(b.checked_mul(m[1][1] as u128)?)?;
        Some((a2, b2))
    }

    /// Row action by the inverse, defined for det = 1. Returns `None` when
    /// the result leaves the nonnegative quadrant, i.e. `(a, b)` is not
    /// liftable one level up.
    fn row_unmul(&self, a: i128, b: i128) -> Option<(i128, i128)> {
        debug_assert_eq!(self.det(), 1);
        let m = &self.m;
        let a2 = a * m[1][1] as i128 - b * m[1][0] as i128;
        let b2 = b * m[0][0] as i128 - a * m[0][1] as i128;
        if a2 >= 0 && b2 >= 0 {
            Some((a2, b2))
        } else {
            None
        }
    }
}

/// Element `(n, a, b)` of the power-triple semigroup: `a` iterates of the
/// left translation and `b` of the right, at cascade level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerTriple {
    pub n: i64,
    pub a: u64,
    pub b: u64,
}

impl PowerTriple {
    pub const ZERO: Self = Self { n: 0, a: 0, b: 0 };

    pub fn new(n: i64, a: u64, b: u64) -> Self {
        Self { n, a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for PowerTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.a, self.b)
    }
}

/// Cascade data for a periodic-type rotation number: the base pair
/// `(u, v) = (θ, 1-θ)`, the anti-renormalization matrix, its leading
/// eigenvalue `t > 1` and the right eigenvector `(w1, w2)`, `w1 = 1`,
/// used as embedding weights.
#[derive(Debug, Clone)]
pub struct CascadeState {
    pub theta: f64,
    pub pair: TranslationPair,
    pub matrix: IntMatrix2,
    pub branches: Vec<Branch>,
    pub t: f64,
    pub w1: f64,
    pub w2: f64,
}

/// Builds the cascade for a periodic-type θ: iterates the prime
/// renormalization until the pair returns to itself projectively, and
/// extracts matrix, eigenvalue and embedding weights.
pub fn anti_renorm_matrix(theta: f64) -> Result<CascadeState, SectorError> {
    let period =
        rotnum::r_prm_period(theta, 64).ok_or(SectorError::PeriodNotFound(theta))?;
    let pair = TranslationPair::new(theta, 1.0 - theta)?;

    let mut matrix = IntMatrix2::IDENTITY;
    let mut branches = Vec::with_capacity(period);
    let mut cur = pair;
    for _ in 0..period {
        let (next, branch) = prime_renorm_pair(&cur)?;
        matrix = branch.matrix().mul(&matrix);
        branches.push(branch);
        cur = next;
    }

    if matrix.det() != 1 {
        return Err(SectorError::ConventionBug(format!(
            "branch composite has determinant {}",
            matrix.det()
        )));
    }
    let tr = matrix.trace() as f64;
    let t = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
    if !(t > 1.0) {
        return Err(SectorError::ConventionBug(format!(
            "leading eigenvalue {t} is not > 1"
        )));
    }

    // The base column (-u, v) must be the contracting eigenvector.
    let (x1, y1) = matrix.apply_col(-pair.u, pair.v);
    if (x1 + pair.u / t).abs() > IOTA_TOL || (y1 - pair.v / t).abs() > IOTA_TOL {
        return Err(SectorError::ConventionBug(format!(
            "M(-u,v) = ({x1}, {y1}) is not (-u,v)/t"
        )));
    }

    let m = &matrix.m;
    if m.iter().flatten().any(|&e| e <= 0) {
        return Err(SectorError::ConventionBug(
            "anti-renormalization matrix has a nonpositive entry".into(),
        ));
    }
    let w1 = 1.0;
    let w2 = (t - m[0][0] as f64) / m[0][1] as f64;
    if !(w2 > 0.0) {
        return Err(SectorError::EigenvectorNotPositive);
    }
    let (e1, e2) = matrix.apply_col(w1, w2);
    if (e1 - t * w1).abs() > 1e-12 * t || (e2 - t * w2).abs() > 1e-12 * t {
        return Err(SectorError::EigenvectorNotPositive);
    }

    Ok(CascadeState {
        theta,
        pair,
        matrix,
        branches,
        t,
        w1,
        w2,
    })
}

impl CascadeState {
    /// Canonical representative of the class of `p`: the largest level at
    /// which the exponent row is not in the image of row-multiplication by
    /// the matrix over nonnegative integers.
    pub fn normalize(&self, p: PowerTriple) -> PowerTriple {
        if p.is_zero() {
            return PowerTriple::ZERO;
        }
        let (mut n, mut a, mut b) = (p.n, p.a as i128, p.b as i128);
        while let Some((a2, b2)) = self.matrix.row_unmul(a, b) {
            if a2 == 0 && b2 == 0 {
                return PowerTriple::ZERO;
            }
            a = a2;
            b = b2;
            n += 1;
        }
        PowerTriple::new(n, a as u64, b as u64)
    }

    /// Rewrites `p` at level `n <= p.n`, multiplying the exponent row by the
    /// matrix once per level.
    fn at_level(&self, p: PowerTriple, n: i64) -> Result<(u128, u128), SectorError> {
        debug_assert!(n <= p.n);
        let (mut a, mut b) = (p.a as u128, p.b as u128);
        for _ in n..p.n {
            (a, b) = self
                .matrix
                .row_mul(a, b)
                .ok_or(SectorError::Overflow)?;
        }
        Ok((a, b))
    }

    /// Sum at a common level.
    pub fn add(&self, p: PowerTriple, q: PowerTriple) -> Result<PowerTriple, SectorError> {
        if p.is_zero() {
            return Ok(self.normalize(q));
        }
        if q.is_zero() {
            return Ok(self.normalize(p));
        }
        let n = p.n.min(q.n);
        let (pa, pb) = self.at_level(p, n)?;
        let (qa, qb) = self.at_level(q, n)?;
        let a = u64::try_from(pa + qa).map_err(|_| SectorError::Overflow)?;
        let b = u64::try_from(pb + qb).map_err(|_| SectorError::Overflow)?;
        Ok(self.normalize(PowerTriple::new(n, a, b)))
    }

    /// Scalar multiplication by `t^k`: `(n, a, b) -> (n + k, a, b)`.
    pub fn scale(&self, p: PowerTriple, k: i64) -> PowerTriple {
        if p.is_zero() {
            return PowerTriple::ZERO;
        }
        let q = self.normalize(p);
        PowerTriple::new(q.n + k, q.a, q.b)
    }

    /// Linear order of the semigroup: deep-level componentwise dominance,
    /// consistent with the real embedding.
    pub fn cmp(&self, p: PowerTriple, q: PowerTriple) -> Ordering {
        let pn = self.normalize(p);
        let qn = self.normalize(q);
        if pn == qn {
            return Ordering::Equal;
        }
        if pn.is_zero() {
            return Ordering::Less;
        }
        if qn.is_zero() {
            return Ordering::Greater;
        }
        let n = pn.n.min(qn.n);
        if let (Ok((mut pa, mut pb)), Ok((mut qa, mut qb))) =
            (self.at_level(pn, n), self.at_level(qn, n))
        {
            loop {
                if pa >= qa && pb >= qb {
                    return Ordering::Greater;
                }
                if pa <= qa && pb <= qb {
                    return Ordering::Less;
                }
                match (
                    self.matrix.row_mul(pa, pb),
                    self.matrix.row_mul(qa, qb),
                ) {
                    (Some(pp), Some(qq)) => {
                        (pa, pb) = pp;
                        (qa, qb) = qq;
                    }
                    // Exponents no longer fit; the embedding decides.
                    _ => break,
                }
            }
        }
        self.iota(pn)
            .partial_cmp(&self.iota(qn))
            .unwrap_or(Ordering::Equal)
    }

    /// Difference `p - q`, defined when `p >= q`.
    pub fn sub(&self, p: PowerTriple, q: PowerTriple) -> Result<PowerTriple, SectorError> {
        let pn = self.normalize(p);
        let qn = self.normalize(q);
        if qn.is_zero() {
            return Ok(pn);
        }
        if pn == qn {
            return Ok(PowerTriple::ZERO);
        }
        let mut n = pn.n.min(qn.n);
        let (mut pa, mut pb) = self.at_level(pn, n)?;
        let (mut qa, mut qb) = self.at_level(qn, n)?;
        loop {
            if pa >= qa && pb >= qb {
                let a = u64::try_from(pa - qa).map_err(|_| SectorError::Overflow)?;
                let b = u64::try_from(pb - qb).map_err(|_| SectorError::Overflow)?;
                return Ok(self.normalize(PowerTriple::new(n, a, b)));
            }
            if pa <= qa && pb <= qb {
                return Err(SectorError::NotSubtractable);
            }
            n -= 1;
            let pp = self.matrix.row_mul(pa, pb).ok_or(SectorError::Overflow)?;
            let qq = self.matrix.row_mul(qa, qb).ok_or(SectorError::Overflow)?;
            (pa, pb) = pp;
            (qa, qb) = qq;
        }
    }

    /// Real embedding `ι(n, a, b) = t^n (a w1 + b w2)`.
    pub fn iota(&self, p: PowerTriple) -> f64 {
        if p.is_zero() {
            return 0.0;
        }
        self.t.powi(p.n as i32) * (p.a as f64 * self.w1 + p.b as f64 * self.w2)
    }

    /// The cascade translation `T^P(x) = x + t^{-n} (b v - a u)`.
    pub fn translate(&self, p: PowerTriple, x: f64) -> f64 {
        x + self.translation_length(p)
    }

    /// Signed translation length of `T^P`.
    pub fn translation_length(&self, p: PowerTriple) -> f64 {
        if p.is_zero() {
            return 0.0;
        }
        self.t.powi(-p.n as i32) * (p.b as f64 * self.pair.v - p.a as f64 * self.pair.u)
    }

    /// Cascade point `b_P = T^{-P}(0) = t^{-n} (a u - b v)`.
    pub fn b_point(&self, p: PowerTriple) -> f64 {
        -self.translation_length(p)
    }
}

/// One enumerated power triple with its embedding value and cascade point.
#[derive(Debug, Clone, Copy)]
pub struct TripleEntry {
    pub triple: PowerTriple,
    pub iota: f64,
    pub b: f64,
}

/// Finite enumeration window: `|b_P| <= x_max`, `ι(P) <= iota_max`, with an
/// explicit candidate budget.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationWindow {
    pub x_max: f64,
    pub iota_max: f64,
    pub budget: usize,
}

impl Default for EnumerationWindow {
    fn default() -> Self {
        Self {
            x_max: 500.0,
            iota_max: 10.0,
            budget: 20_000_000,
        }
    }
}

/// Enumerates every class with `ι(P) <= iota_max` and `|b_P| <= x_max`.
///
/// Each class is visited exactly once, at its canonical level: liftable
/// exponent rows are skipped. Levels are scanned top-down and the scan
/// stops once deep levels stay empty, which they must: a class canonical
/// at level `n` has `|b_P| >= c · t^{-n}` for a positive constant `c`.
pub fn enumerate_triples(
    state: &CascadeState,
    window: &EnumerationWindow,
) -> Result<Vec<TripleEntry>, SectorError> {
    let min_w = state.w1.min(state.w2);
    let n_hi = (window.iota_max / min_w).ln().div_euclid(state.t.ln()) as i64 + 1;
    let mut out = vec![TripleEntry {
        triple: PowerTriple::ZERO,
        iota: 0.0,
        b: 0.0,
    }];
    let mut visited = 0usize;
    let mut empty_streak = 0;
    let mut n = n_hi;
    loop {
        let tn = state.t.powi(n as i32);
        let mut accepted_here = 0usize;
        let a_cap = (window.iota_max / tn / state.w1).floor();
        if a_cap >= 0.0 {
            let a_cap = a_cap as u64;
            for a in 0..=a_cap {
                let au = a as f64 * state.pair.u;
                let band = window.x_max * tn;
                let b_lo = ((au - band) / state.pair.v).ceil().max(0.0) as u64;
                let b_band_hi = (au + band) / state.pair.v;
                let b_iota_hi = (window.iota_max / tn - a as f64 * state.w1) / state.w2;
                let b_hi = b_band_hi.min(b_iota_hi).floor();
                if b_hi < b_lo as f64 {
                    continue;
                }
                for b in b_lo..=(b_hi as u64) {
                    visited += 1;
                    if visited > window.budget {
                        return Err(SectorError::BudgetExceeded(visited));
                    }
                    if a == 0 && b == 0 {
                        continue;
                    }
                    // Only canonical representatives.
                    if state.matrix.row_unmul(a as i128, b as i128).is_some() {
                        continue;
                    }
                    let triple = PowerTriple::new(n, a, b);
                    let iota = state.iota(triple);
                    let bp = state.b_point(triple);
                    if iota <= window.iota_max * (1.0 + 1e-12) && bp.abs() <= window.x_max {
                        out.push(TripleEntry { triple, iota, b: bp });
                        accepted_here += 1;
                    }
                }
            }
        }
        if accepted_here == 0 && n < 0 {
            empty_streak += 1;
            if empty_streak >= 3 {
                break;
            }
        } else {
            empty_streak = 0;
        }
        n -= 1;
        if n < n_hi - 200 {
            break;
        }
    }
    out.sort_by(|x, y| x.iota.partial_cmp(&y.iota).unwrap());
    Ok(out)
}

/// Dominant points within the window: `b_P` such that every enumerated
/// `b_Q` on the signed interval `[0, b_P]`, `Q != 0`, satisfies `Q >= P`.
/// Sorted by `ι`; the zero triple is vacuously first.
pub fn dominant_points(
    state: &CascadeState,
    window: &EnumerationWindow,
) -> Result<Vec<TripleEntry>, SectorError> {
    let entries = enumerate_triples(state, window)?;
    Ok(dominant_filter(&entries))
}

/// Dominance filter over an already-enumerated window.
pub fn dominant_filter(entries: &[TripleEntry]) -> Vec<TripleEntry> {
    let mut dominants: Vec<TripleEntry> = entries
        .iter()
        .filter(|e| e.triple.is_zero())
        .copied()
        .collect();
    for sign in [1.0, -1.0] {
        let mut side: Vec<&TripleEntry> = entries
            .iter()
            .filter(|e| !e.triple.is_zero() && e.b * sign > 0.0)
            .collect();
        side.sort_by(|x, y| (x.b * sign).partial_cmp(&(y.b * sign)).unwrap());
        let mut min_iota = f64::INFINITY;
        for e in side {
            if e.iota <= min_iota * (1.0 + 1e-12) {
                dominants.push(*e);
            }
            min_iota = min_iota.min(e.iota);
        }
    }
    dominants.sort_by(|x, y| x.iota.partial_cmp(&y.iota).unwrap());
    dominants
}

/// A witness translation pushing one dominant gap onto an earlier one:
/// `T^q` maps `[b_{P_i}, b_{P_{i+1}}]` onto `[b_{P_lower}, b_{P_upper}]`.
#[derive(Debug, Clone, Copy)]
pub struct PushWitness {
    pub q: PowerTriple,
    pub lower: usize,
    pub upper: usize,
}

/// Bounded search for a dominant-push witness for the consecutive dominant
/// pair `(P_i, P_{i+1})`. `lookup` is any enumeration wide enough to contain
/// the candidate translations.
pub fn dominant_push_witness(
    dominants: &[TripleEntry],
    lookup: &[TripleEntry],
    i: usize,
    tol: f64,
) -> Option<PushWitness> {
    if i + 1 >= dominants.len() {
        return None;
    }
    let lo_i = dominants[i].b.min(dominants[i + 1].b);
    let hi_i = dominants[i].b.max(dominants[i + 1].b);
    let len_i = hi_i - lo_i;

    let mut by_b: Vec<&TripleEntry> = lookup.iter().filter(|e| !e.triple.is_zero()).collect();
    by_b.sort_by(|x, y| x.b.partial_cmp(&y.b).unwrap());

    for m in (1..=i).rev() {
        for n in 0..m {
            let lo_t = dominants[n].b.min(dominants[m].b);
            let hi_t = dominants[n].b.max(dominants[m].b);
            if ((hi_t - lo_t) - len_i).abs() > tol {
                continue;
            }
            let tau = lo_t - lo_i;
            if tau.abs() <= tol {
                continue;
            }
            // T^Q translates by tau, i.e. b_Q = -tau.
            let target = -tau;
            let idx = by_b.partition_point(|e| e.b < target - tol);
            for e in by_b[idx..].iter() {
                if e.b > target + tol {
                    break;
                }
                return Some(PushWitness {
                    q: e.triple,
                    lower: n,
                    upper: m,
                });
            }
        }
    }
    None
}

/// CSV rows for a dominant-point table: `n,a,b,iota,b_P` at 12 significant
/// digits.
pub fn dominant_points_csv(dominants: &[TripleEntry]) -> String {
    let mut s = String::from("n,a,b,iota,b_P\n");
    for e in dominants {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            e.triple.n,
            e.triple.a,
            e.triple.b,
            crate::table::sig12(e.iota),
            crate::table::sig12(e.b)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotnum::r_prm;
    use crate::{GOLDEN_MEAN, SILVER_MEAN};
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn golden_state() -> CascadeState {
        anti_renorm_matrix(GOLDEN_MEAN).unwrap()
    }

    #[test]
    fn prime_renorm_golden_branches() {
        let g = GOLDEN_MEAN;
        let g2 = g * g;
        let (p1, f1) = prime_renorm_pair(&TranslationPair::new(g, g2).unwrap()).unwrap();
        assert_eq!(f1, Branch::IMinus);
        assert_abs_diff_eq!(p1.u, g * g * g, epsilon = 1e-15);
        assert_abs_diff_eq!(p1.v, g2, epsilon = 1e-15);
        let (p2, f2) = prime_renorm_pair(&p1).unwrap();
        assert_eq!(f2, Branch::IPlus);
        assert_abs_diff_eq!(p2.u, g * g * g, epsilon = 1e-15);
        assert_abs_diff_eq!(p2.v, g2 * g2, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_pair_rejected() {
        let err = prime_renorm_pair(&TranslationPair::new(1.0, 1.0).unwrap()).unwrap_err();
        assert_eq!(err, SectorError::DegeneratePair);
    }

    #[test]
    fn rotation_convention() {
        let g = GOLDEN_MEAN;
        assert_abs_diff_eq!(
            rotation_of_pair(&TranslationPair::new(g, g * g).unwrap()),
            g * g,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            rotation_of_pair(&TranslationPair::new(1.0, 1.0).unwrap()),
            0.5,
            epsilon = 1e-15
        );
        let theta = 0.37215;
        assert_abs_diff_eq!(
            rotation_of_pair(&TranslationPair::new(theta, 1.0 - theta).unwrap()),
            1.0 - theta,
            epsilon = 1e-15
        );
    }

    // One prime step commutes with r_prm through the rotation number.
    #[test]
    fn prime_step_tracks_r_prm() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let u: f64 = rng.gen_range(0.05..3.0);
            let v: f64 = rng.gen_range(0.05..3.0);
            if (u - v).abs() < 1e-6 {
                continue;
            }
            let pair = TranslationPair::new(u, v).unwrap();
            let rho = rotation_of_pair(&pair);
            let (next, _) = prime_renorm_pair(&pair).unwrap();
            assert_abs_diff_eq!(
                rotation_of_pair(&next),
                r_prm(rho).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn golden_matrix_and_eigenvalue() {
        let state = golden_state();
        assert_eq!(state.matrix.m, [[1, 1], [1, 2]]);
        assert_eq!(state.branches, vec![Branch::IMinus, Branch::IPlus]);
        let expected_t = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(state.t, expected_t, epsilon = 1e-12);
        // After one period the pair contracts by exactly 1/t.
        let (x1, y1) = state.matrix.apply_col(-state.pair.u, state.pair.v);
        assert_abs_diff_eq!(x1, -state.pair.u / state.t, epsilon = 1e-12);
        assert_abs_diff_eq!(y1, state.pair.v / state.t, epsilon = 1e-12);
    }

    #[test]
    fn silver_eigenvalue_matches_brute_proportionality() {
        let state = anti_renorm_matrix(SILVER_MEAN).unwrap();
        // Iterate the pair until it is proportional to the start.
        let pair = state.pair;
        let mut cur = pair;
        let mut steps = 0;
        let t_brute = loop {
            let (next, _) = prime_renorm_pair(&cur).unwrap();
            cur = next;
            steps += 1;
            let r1 = pair.u / cur.u;
            let r2 = pair.v / cur.v;
            if (r1 - r2).abs() < 1e-9 {
                break r1;
            }
            assert!(steps < 64);
        };
        assert_eq!(steps, state.branches.len());
        assert_abs_diff_eq!(state.t, t_brute, epsilon = 1e-9);
        // Square of the silver ratio 1 + sqrt(2).
        let silver_ratio = 1.0 + 2.0f64.sqrt();
        assert_abs_diff_eq!(state.t, silver_ratio * silver_ratio, epsilon = 1e-9);
    }

    #[test]
    fn period_not_found_for_generic_theta() {
        assert!(matches!(
            anti_renorm_matrix(0.123456789),
            Err(SectorError::PeriodNotFound(_))
        ));
    }

    #[test]
    fn normalize_golden_examples() {
        let state = golden_state();
        // (1,0)·M = (1,1), so (0,1,0) ~ (-1,1,1).
        let p = PowerTriple::new(-1, 1, 1);
        assert_eq!(state.normalize(p), PowerTriple::new(0, 1, 0));
        for n in -3..4 {
            assert_eq!(state.normalize(PowerTriple::new(n, 0, 0)), PowerTriple::ZERO);
        }
        // Idempotent on its own output.
        let q = state.normalize(PowerTriple::new(-2, 7, 11));
        assert_eq!(state.normalize(q), q);
    }

    #[test]
    fn add_and_scale() {
        let state = golden_state();
        let e1 = PowerTriple::new(0, 1, 0);
        let e2 = PowerTriple::new(0, 0, 1);
        assert_eq!(
            state.add(e1, e2).unwrap(),
            state.normalize(PowerTriple::new(0, 1, 1))
        );
        let p = PowerTriple::new(0, 1, 1);
        let scaled = state.scale(p, 1);
        let expected = state.normalize(PowerTriple::new(1, 1, 1));
        assert_eq!(scaled, expected);
    }

    #[test]
    fn iota_class_invariance_and_homogeneity() {
        let state = golden_state();
        let p = PowerTriple::new(0, 1, 0);
        let q = PowerTriple::new(-1, 1, 1);
        assert_abs_diff_eq!(state.iota(p), state.iota(q), epsilon = IOTA_TOL);
        assert_abs_diff_eq!(state.iota(PowerTriple::ZERO), 0.0);

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let p = PowerTriple::new(rng.gen_range(-3..4), rng.gen_range(0..40), rng.gen_range(0..40));
            let scaled = state.scale(p, 1);
            assert_abs_diff_eq!(state.iota(scaled), state.t * state.iota(p), epsilon = 1e-9);
        }
    }

    #[test]
    fn cmp_matches_iota_at_deep_level() {
        let state = golden_state();
        let p = PowerTriple::new(0, 1, 0);
        let q = PowerTriple::new(0, 0, 1);
        let ord = state.cmp(p, q);
        let by_iota = state.iota(p).partial_cmp(&state.iota(q)).unwrap();
        assert_eq!(ord, by_iota);
        // w2 > w1 so (0,0,1) > (0,1,0).
        assert_eq!(ord, Ordering::Less);
    }

    #[test]
    fn golden_translate_example() {
        let state = golden_state();
        let g = GOLDEN_MEAN;
        // T^{(0,1,1)}(0) = v - u = g^2 - g = -g^3.
        let p = PowerTriple::new(0, 1, 1);
        assert_abs_diff_eq!(state.translate(p, 0.0), g * g - g, epsilon = 1e-15);
        assert_abs_diff_eq!(state.translate(p, 0.0), -g * g * g, epsilon = 1e-12);
        assert_abs_diff_eq!(state.translate(PowerTriple::ZERO, 0.77), 0.77);
    }

    // Free action: T^P = T^Q as maps iff the normal forms agree.
    #[test]
    fn free_action_on_samples() {
        let state = golden_state();
        let mut rng = StdRng::seed_from_u64(23);
        let mut triples = Vec::new();
        for _ in 0..200 {
            triples.push(PowerTriple::new(
                rng.gen_range(-2..3),
                rng.gen_range(0..25),
                rng.gen_range(0..25),
            ));
        }
        for &p in &triples {
            for &q in &triples {
                let same_map =
                    (state.translation_length(p) - state.translation_length(q)).abs() < 1e-9;
                let same_class = state.normalize(p) == state.normalize(q);
                assert_eq!(same_map, same_class, "p={p}, q={q}");
            }
        }
    }

    #[test]
    fn scale_identity_on_translations() {
        // T^P(x) = t^n T^{t^n P}(x / t^n).
        let state = golden_state();
        let p = PowerTriple::new(0, 3, 2);
        for n in -2..3i64 {
            let lhs = state.translate(p, 0.4);
            let tn = state.t.powi(n as i32);
            let rhs = tn * state.translate(state.scale(p, n), 0.4 / tn);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn subtraction() {
        let state = golden_state();
        let p = PowerTriple::new(0, 3, 4);
        let q = PowerTriple::new(0, 1, 1);
        let d = state.sub(p, q).unwrap();
        let back = state.add(d, q).unwrap();
        assert_eq!(back, state.normalize(p));
        assert_eq!(state.sub(q, p).unwrap_err(), SectorError::NotSubtractable);
    }

    #[test]
    fn enumeration_is_canonical_and_windowed() {
        let state = golden_state();
        let window = EnumerationWindow {
            x_max: 40.0,
            iota_max: 6.0,
            budget: 5_000_000,
        };
        let entries = enumerate_triples(&state, &window).unwrap();
        assert!(entries.len() > 10);
        for e in &entries {
            assert_eq!(state.normalize(e.triple), e.triple, "non-canonical {}", e.triple);
            assert!(e.iota <= window.iota_max * (1.0 + 1e-9));
            assert!(e.b.abs() <= window.x_max);
        }
        // No duplicate classes.
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            assert!(seen.insert(e.triple), "duplicate class {}", e.triple);
        }
    }

    #[test]
    fn dominant_points_match_brute_force() {
        let state = golden_state();
        let window = EnumerationWindow {
            x_max: 40.0,
            iota_max: 6.0,
            budget: 5_000_000,
        };
        let entries = enumerate_triples(&state, &window).unwrap();
        let fast = dominant_filter(&entries);
        // O(N^2) oracle straight from the definition.
        let mut brute: Vec<TripleEntry> = Vec::new();
        for p in &entries {
            let lo = p.b.min(0.0);
            let hi = p.b.max(0.0);
            let dominated = entries.iter().any(|q| {
                !q.triple.is_zero()
                    && q.b >= lo
                    && q.b <= hi
                    && q.iota < p.iota * (1.0 - 1e-12)
            });
            if !dominated {
                brute.push(*p);
            }
        }
        brute.sort_by(|x, y| x.iota.partial_cmp(&y.iota).unwrap());
        assert_eq!(fast.len(), brute.len());
        for (a, b) in fast.iter().zip(brute.iter()) {
            assert_eq!(a.triple, b.triple);
        }
        assert!(fast[0].triple.is_zero(), "zero triple is vacuously first");
    }

    #[test]
    fn proper_discontinuity_window() {
        let state = golden_state();
        let window = EnumerationWindow::default();
        let entries = enumerate_triples(&state, &window).unwrap();
        let min_abs = |eps: f64| {
            entries
                .iter()
                .filter(|e| !e.triple.is_zero() && e.iota <= eps)
                .map(|e| e.b.abs())
                .fold(f64::INFINITY, f64::min)
        };
        let small = min_abs(0.01);
        let big = min_abs(0.1);
        assert!(small.is_finite() && big.is_finite());
        assert!(
            small > big,
            "min |T^P(0)| over iota<=0.01 ({small}) must exceed the min over iota<=0.1 ({big})"
        );
    }
}
