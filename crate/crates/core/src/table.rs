//! Number formatting shared by the CSV emitters: 12 significant digits,
//! `.` decimal point, deterministic.

/// Formats with 12 significant digits. Exact zero stays `0`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{:.11e}", x)
}
