//! Magnetometric demagnetization factor of a circular cylinder.

/// Bessel function of the first kind, order one (rational approximations,
/// absolute error below 1e-8).
pub(crate) fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 8.0 {
        let y = x * x;
        let num = x
            * (72_362_614_232.0
                + y * (-7_895_059_235.0
                    + y * (242_396_853.1
                        + y * (-2_972_611.439 + y * (15_704.482_60 + y * (-30.160_366_06))))));
        let den = 144_725_228_442.0
            + y * (2_300_535_178.0
                + y * (18_583_304.74 + y * (99_447.433_94 + y * (376.999_139_7 + y))));
        num / den
    } else {
        let z = 8.0 / ax;
        let y = z * z;
        let xx = ax - 2.356_194_491;
        let p = 1.0
            + y * (0.183_105e-2
                + y * (-0.351_639_649_6e-4 + y * (0.245_752_017_3e-5 + y * (-0.240_337_019e-6))));
        let q = 0.046_874_999_95
            + y * (-0.200_269_087_3e-3
                + y * (0.844_919_909_6e-5 + y * (-0.882_289_87e-6 + y * 0.105_787_412e-6)));
        let ans = (std::f64::consts::FRAC_2_PI / ax).sqrt() * (xx.cos() * p - z * xx.sin() * q);
        if x < 0.0 {
            -ans
        } else {
            ans
        }
    }
}

/// Axial factor N_z = (2R/L) ∫₀^∞ J1(x)² (1 − e^{−xL/R}) / x² dx.
pub(crate) fn cylinder_axial_factor(diameter: f64, thickness: f64) -> f64 {
    let r = 0.5 * diameter;
    let b = thickness / r;
    let f = |x: f64| {
        if x == 0.0 {
            // J1(x)² / x² → 1/4 and (1 − e^{−bx}) → 0
            0.0
        } else {
            let j = bessel_j1(x);
            j * j * (-(-b * x).exp_m1()) / (x * x)
        }
    };
    // composite Simpson on [0, X] plus the asymptotic tail J1² ≈ 1/(πx)
    let upper = 2000.0;
    let n = 80_000;
    let h = upper / n as f64;
    let mut acc = f(0.0) + f(upper);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    let integral = acc * h / 3.0 + 1.0 / (2.0 * std::f64::consts::PI * upper * upper);
    2.0 * integral / b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_reference_values() {
        // scipy.special.j1
        assert!((bessel_j1(1.0) - 0.440_050_585_744_933_5).abs() < 1e-8);
        assert!((bessel_j1(10.0) - 0.043_472_746_168_861_44).abs() < 1e-8);
        assert!((bessel_j1(-2.5) + 0.497_094_102_464_274_4).abs() < 1e-8);
    }

    #[test]
    fn cylinder_factor_reference_values() {
        // height == diameter
        assert!((cylinder_axial_factor(2.0, 2.0) - 0.311_577).abs() < 1e-4);
        // 50 nm × 1 nm disk
        assert!((cylinder_axial_factor(50e-9, 1e-9) - 0.938_902).abs() < 1e-4);
        // long rod
        assert!((cylinder_axial_factor(1.0, 10.0) - 0.041_193).abs() < 1e-4);
    }
}
