use std::f64::consts::{FRAC_1_PI, FRAC_2_PI};

/// Smoothed Heaviside `H(v) = 1/2 (1 + 2/pi * atan(v / tau))`.
#[inline]
pub fn heaviside(v: f64, tau: f64) -> f64 {
    0.5 * (1.0 + FRAC_2_PI * (v / tau).atan())
}

/// Derivative of [`heaviside`]: `tau / (pi (v^2 + tau^2))`.
#[inline]
pub fn dirac(v: f64, tau: f64) -> f64 {
    FRAC_1_PI * tau / (v * v + tau * tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TAU: f64 = 0.01;

    #[test]
    fn heaviside_identities() {
        assert_eq!(heaviside(0.0, TAU), 0.5);
        assert!((heaviside(TAU, TAU) - 0.75).abs() < 1e-12);
        assert!(heaviside(1e6 * TAU, TAU) > 0.999_999);
        for v in [-3.0, -0.02, 0.004, 1.5] {
            assert!((heaviside(v, TAU) + heaviside(-v, TAU) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dirac_identities() {
        assert!((dirac(0.0, TAU) - 1.0 / (PI * TAU)).abs() < 1e-12);
        assert!((dirac(0.0, TAU) - 31.830_988_618_379_067).abs() < 1e-9);
        for v in [0.3, 0.01, 7.0] {
            assert_eq!(dirac(v, TAU), dirac(-v, TAU));
        }
    }

    #[test]
    fn dirac_is_derivative_of_heaviside() {
        let h = 1e-6 * TAU;
        for v in [-0.5, -0.02, -0.005, 0.0, 0.003, 0.01, 0.2, 2.0] {
            let fd = (heaviside(v + h, TAU) - heaviside(v - h, TAU)) / (2.0 * h);
            let d = dirac(v, TAU);
            assert!((fd - d).abs() / d < 1e-4, "v={v}: fd {fd} vs {d}");
        }
    }

    #[test]
    fn dirac_integrates_to_one() {
        // composite Simpson over [-100 tau, 100 tau]
        let (a, b, n) = (-100.0 * TAU, 100.0 * TAU, 200_000usize);
        let h = (b - a) / n as f64;
        let mut s = dirac(a, TAU) + dirac(b, TAU);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * dirac(x, TAU);
        }
        let integral = s * h / 3.0;
        assert!((0.99..=1.0).contains(&integral), "{integral}");
    }
}
