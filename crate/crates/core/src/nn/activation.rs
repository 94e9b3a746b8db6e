/// Exponent arguments are clamped to this magnitude before `exp`.
pub const EXP_CLAMP: f64 = 500.0;

/// Logistic transfer function `1 / (1 + e^-x)`.
///
/// Saturates without overflow for any finite input.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    let x = x.clamp(-EXP_CLAMP, EXP_CLAMP);
    1.0 / (1.0 + (-x).exp())
}

/// `F'(s)` written through the node output `y = F(s)`.
#[inline]
pub fn sigmoid_derivative_from_output(y: f64) -> f64 {
    y * (1.0 - y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_point() {
        assert_eq!(sigmoid(0.0), 0.5);
    }

    #[test]
    fn saturates_without_overflow() {
        let hi = sigmoid(500.0);
        assert!(hi > 1.0 - 1e-12 && hi <= 1.0);
        let lo = sigmoid(-500.0);
        assert!((0.0..1e-12).contains(&lo));
        assert!(sigmoid(f64::MAX).is_finite());
        assert!(sigmoid(f64::MIN).is_finite());
    }

    #[test]
    fn value_at_one() {
        // 1/(1+e^-1) evaluated at 40 digits.
        let expected = 0.731_058_578_630_004_9_f64;
        assert!((sigmoid(1.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn reflection_identity() {
        for k in -200..=200 {
            let x = k as f64 * 0.173;
            assert!((sigmoid(-x) - (1.0 - sigmoid(x))).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        for k in -40..=40 {
            let x = k as f64 * 0.25;
            let numeric = (sigmoid(x + h) - sigmoid(x - h)) / (2.0 * h);
            let analytic = sigmoid_derivative_from_output(sigmoid(x));
            assert!((numeric - analytic).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn monotone() {
        let mut prev = sigmoid(-30.0);
        for k in -299..=300 {
            let y = sigmoid(k as f64 * 0.1);
            assert!(y >= prev);
            prev = y;
        }
    }
}
