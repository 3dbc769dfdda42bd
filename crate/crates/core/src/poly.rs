//! Small dense complex polynomials: evaluation and root finding.
//!
//! Coefficients are stored in ascending order. The root finder is
//! Durand-Kerner with a deterministic start; degrees here stay below ~10
//! (preimages of the rational family), where it is entirely adequate.

use num_complex::Complex64;

/// Horner evaluation, ascending coefficients.
pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// All complex roots of `Σ coeffs[k] z^k`. Leading zero coefficients are
/// trimmed; the constant polynomial has no roots.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut top = coeffs.len();
    while top > 0 && coeffs[top - 1].norm() == 0.0 {
        top -= 1;
    }
    if top <= 1 {
        return Vec::new();
    }
    let coeffs = &coeffs[..top];
    let n = coeffs.len() - 1;
    let lead = coeffs[n];

    let scale = coeffs[..n]
        .iter()
        .map(|c| (c / lead).norm())
        .fold(0.0f64, f64::max);
    let radius = (1.0 + scale).min(1e6);

    let mut xs: Vec<Complex64> = (0..n)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / n as f64 + 0.55;
            radius * Complex64::new(phi.cos(), phi.sin())
        })
        .collect();

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = lead;
            for j in 0..n {
                if j != k {
                    denom *= xs[k] - xs[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(coeffs, xs[k]) / denom;
            xs[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + xs[k].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_roots() {
        // (z - 1)(z - 2i)(z + 3) = z^3 + (2 - 2i) z^2 + (-3 - 4i) z + 6i... expand numerically instead:
        let r1 = c(1.0, 0.0);
        let r2 = c(0.0, 2.0);
        let r3 = c(-3.0, 0.0);
        let coeffs = vec![
            -r1 * r2 * r3,
            r1 * r2 + r1 * r3 + r2 * r3,
            -(r1 + r2 + r3),
            c(1.0, 0.0),
        ];
        let mut found = roots(&coeffs);
        found.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut expected = [r3, r2, r1];
        expected.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (f, e) in found.iter().zip(expected.iter()) {
            assert!((f - e).norm() < 1e-9, "{f} vs {e}");
        }
    }

    #[test]
    fn residuals_are_small() {
        let coeffs: Vec<Complex64> = [3.0, -1.0, 0.5, 2.0, 1.0, -0.25]
            .iter()
            .map(|&x| c(x, 0.3 * x))
            .collect();
        for r in roots(&coeffs) {
            assert!(eval(&coeffs, r).norm() < 1e-8);
        }
    }
}
