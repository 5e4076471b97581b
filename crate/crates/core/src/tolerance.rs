//! Floating-point comparison used throughout the crate.

/// Default relative tolerance for identity checks.
pub const DEFAULT_TOL: f64 = 1e-12;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
///
/// The floor of 1 makes the test absolute for quantities below unity, which is
/// what rate and ratio outputs need (a residual of exactly zero has no scale).
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = 1.0_f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= tol * scale
}

/// Purely relative comparison, `|a - b| <= tol * max(|a|, |b|)`.
///
/// Use this for currency amounts whose magnitude is arbitrary.
pub fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_applies_below_one() {
        assert!(approx_eq(1e-13, 0.0, 1e-12));
        assert!(!rel_eq(1e-13, 0.0, 1e-12));
    }

    #[test]
    fn scales_with_magnitude() {
        assert!(approx_eq(1e9, 1e9 + 1e-4, 1e-12));
        assert!(!approx_eq(1e9, 1e9 + 1e-2, 1e-12));
        assert!(rel_eq(1e-9, 1e-9 * (1.0 + 1e-14), 1e-12));
    }

    #[test]
    fn nan_never_equal() {
        assert!(!approx_eq(f64::NAN, f64::NAN, 1.0));
        assert!(!rel_eq(f64::NAN, 0.0, 1.0));
    }
}
