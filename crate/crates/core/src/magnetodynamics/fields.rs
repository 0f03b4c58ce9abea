//! Effective-field contributions and the explicit LLG right-hand side.
//!
//! All fields are in A/m.

use rand::Rng;
use rand_distr::StandardNormal;

use super::params::{MEStimulus, MagnetParams};
use crate::consts::MU0;
use crate::vec3::Vec3;

/// Shape anisotropy field −N·M_S·m.
#[inline]
pub fn demag_field(m: Vec3, p: &MagnetParams) -> Vec3 {
    let [nx, ny, nz] = p.demag.0;
    Vec3::new(-nx * p.ms * m.x, -ny * p.ms * m.y, -nz * p.ms * m.z)
}

/// Perpendicular interface anisotropy field (0, 0, H_K·m_z).
#[inline]
pub fn anisotropy_field(m: Vec3, p: &MagnetParams) -> Vec3 {
    Vec3::new(0.0, 0.0, p.anisotropy_field() * m.z)
}

/// ME field along the stimulus axis, signed by the applied voltage.
#[inline]
pub fn me_field(s: &MEStimulus) -> Vec3 {
    s.axis * s.field_magnitude()
}

/// One Brown thermal-field sample for a step of length `dt`.
///
/// Returns zero without consuming randomness when T = 0.
pub fn thermal_field<R: Rng + ?Sized>(p: &MagnetParams, dt: f64, rng: &mut R) -> Vec3 {
    if p.temperature == 0.0 {
        return Vec3::ZERO;
    }
    let sigma = p.thermal_sigma(dt);
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    let z: f64 = rng.sample(StandardNormal);
    Vec3::new(x, y, z) * sigma
}

/// Total effective field: demag + anisotropy + applied (ME) + thermal.
#[inline]
pub fn effective_field(m: Vec3, p: &MagnetParams, applied: Vec3, thermal: Vec3) -> Vec3 {
    demag_field(m, p) + anisotropy_field(m, p) + applied + thermal
}

/// dm/dt of the Gilbert equation written in Landau-Lifshitz form:
/// −γ/(1+α²)·m×H − γα/(1+α²)·m×(m×H).
#[inline]
pub fn llg_rhs(m: Vec3, h_eff: Vec3, p: &MagnetParams) -> Vec3 {
    let pre = p.gamma / (1.0 + p.alpha * p.alpha);
    let mxh = m.cross(h_eff);
    let mxmxh = m.cross(mxh);
    (mxh + mxmxh * p.alpha) * (-pre)
}

/// Magnetic free energy of the macrospin in joules: Zeeman in `applied`,
/// shape (demag) and interface anisotropy terms.
pub fn magnetic_energy(m: Vec3, p: &MagnetParams, applied: Vec3) -> f64 {
    let [nx, ny, nz] = p.demag.0;
    let v = p.volume();
    let zeeman = -MU0 * p.ms * applied.dot(m);
    let shape = 0.5 * MU0 * p.ms * p.ms * (nx * m.x * m.x + ny * m.y * m.y + nz * m.z * m.z);
    let anis = -p.k_i / p.t_fl * m.z * m.z;
    v * (zeeman + shape + anis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::ALPHA_ME_UNIT;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const MS: f64 = 1.2573e6;

    fn params() -> MagnetParams {
        MagnetParams::default()
    }

    #[test]
    fn demag_thin_film() {
        let p = params();
        assert_eq!(demag_field(Vec3::Z, &p), Vec3::new(0.0, 0.0, -MS));
        assert_eq!(demag_field(Vec3::X, &p), Vec3::ZERO);
        assert_eq!(demag_field(-Vec3::Z, &p), Vec3::new(0.0, 0.0, MS));
    }

    #[test]
    fn anisotropy_field_value() {
        let p = params();
        // 2·1e-3 / (4π·1e-7 · 1.2573e6 · 1e-9)
        let hk = 2e-3 / (MU0 * MS * 1e-9);
        assert!((hk - 1.2658e6).abs() / hk < 1e-3);
        let h = anisotropy_field(Vec3::Z, &p);
        assert!((h.z - hk).abs() < 1e-6 * hk && h.x == 0.0 && h.y == 0.0);
        assert_eq!(anisotropy_field(Vec3::X, &p), Vec3::ZERO);
        assert!((anisotropy_field(-Vec3::Z, &p).z + hk).abs() < 1e-6 * hk);
    }

    #[test]
    fn me_field_values() {
        let s = MEStimulus {
            alpha_me: ALPHA_ME_UNIT,
            t_me: 5e-9,
            v_me: 0.2,
            axis: Vec3::Z,
        };
        // (1/μ0)·(1/c)·0.2/5e-9, evaluated by hand
        let expected = 0.2 / 5e-9 / 299_792_458.0 / 1.256_637_062_12e-6;
        let h = me_field(&s);
        assert!((h.z - expected).abs() < 1e-9 * expected);
        assert!((h.z - 1.061e5).abs() < 1e2);
        assert!((me_field(&s.with_voltage(-0.2)).z + 1.061e5).abs() < 1e2);
        assert_eq!(me_field(&s.with_voltage(0.0)), Vec3::ZERO);
    }

    #[test]
    fn thermal_sigma_matches_hand_value() {
        let mut p = params();
        p.gamma = 2.21e5;
        let v = std::f64::consts::PI * (25e-9f64).powi(2) * 1e-9;
        let hand = (2.0 * 0.1 * 1.380649e-23 * 300.0 / (2.21e5 * MU0 * MS * v * 1e-12)).sqrt();
        assert!((p.thermal_sigma(1e-12) - hand).abs() < 1e-9 * hand);
        assert!((hand - 3.47e4).abs() < 0.01e4);
    }

    #[test]
    fn thermal_field_zero_temperature() {
        let mut p = params();
        p.temperature = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert_eq!(thermal_field(&p, 1e-13, &mut rng), Vec3::ZERO);
        }
    }

    #[test]
    fn thermal_field_moments() {
        let p = params();
        let dt = 1e-12;
        let sigma = p.thermal_sigma(dt);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let (mut s, mut s2) = (Vec3::ZERO, Vec3::ZERO);
        for _ in 0..n {
            let h = thermal_field(&p, dt, &mut rng);
            s += h;
            s2 += Vec3::new(h.x * h.x, h.y * h.y, h.z * h.z);
        }
        let mean = s * (1.0 / n as f64);
        for c in mean.to_array() {
            assert!(c.abs() < 5.0 * sigma / 1000.0, "mean {c} sigma {sigma}");
        }
        for c in (s2 * (1.0 / n as f64)).to_array() {
            assert!((c.sqrt() / sigma - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn rhs_zero_torque_cases() {
        let p = params();
        assert_eq!(llg_rhs(Vec3::X, Vec3::ZERO, &p), Vec3::ZERO);
        let m = Vec3::new(1.0, 2.0, 2.0).normalized();
        let r = llg_rhs(m, m * 3.0e5, &p);
        assert!(r.norm() < 1e-6);
    }

    #[test]
    fn rhs_pure_precession() {
        let mut p = params();
        p.alpha = 0.0;
        let h = 1.0e5;
        // −γ·(x̂ × ẑ)·H = +γH·ŷ
        let r = llg_rhs(Vec3::X, Vec3::new(0.0, 0.0, h), &p);
        assert!((r.y - p.gamma * h).abs() < 1e-9 * p.gamma * h);
        assert!(r.x.abs() < 1e-9 && r.z.abs() < 1e-9);
    }

    #[test]
    fn rhs_is_tangent() {
        let p = params();
        let m = Vec3::new(0.3, -0.4, 0.5).normalized();
        let h = Vec3::new(1e4, 2e5, -3e5);
        let r = llg_rhs(m, h, &p);
        assert!(r.dot(m).abs() < 1e-12 * r.norm());
    }
}
