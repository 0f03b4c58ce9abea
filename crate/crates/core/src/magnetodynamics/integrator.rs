use rand::Rng;

use super::fields::{effective_field, llg_rhs, me_field, thermal_field};
use super::params::{MEStimulus, MagnetParams, MagnetizationState, SimConfig};
use crate::vec3::Vec3;

/// One stochastic Heun step under the ME stimulus `s`.
pub fn heun_step<R: Rng + ?Sized>(
    state: &MagnetizationState,
    p: &MagnetParams,
    s: &MEStimulus,
    cfg: &SimConfig,
    rng: &mut R,
) -> MagnetizationState {
    step_in_field(state, p, me_field(s), cfg.dt, cfg.renormalize, rng)
}

/// Heun predictor-corrector with a fixed applied field.
///
/// A single thermal sample is held for both stages so the scheme converges
/// to the Stratonovich solution.
pub fn step_in_field<R: Rng + ?Sized>(
    state: &MagnetizationState,
    p: &MagnetParams,
    applied: Vec3,
    dt: f64,
    renormalize: bool,
    rng: &mut R,
) -> MagnetizationState {
    let h_th = thermal_field(p, dt, rng);
    let m = state.m;
    let k1 = llg_rhs(m, effective_field(m, p, applied, h_th), p);
    let mut mp = m + k1 * dt;
    if renormalize {
        mp = mp.normalized();
    }
    let k2 = llg_rhs(mp, effective_field(mp, p, applied, h_th), p);
    let mut next = m + (k1 + k2) * (0.5 * dt);
    if renormalize {
        next = next.normalized();
    }
    MagnetizationState {
        m: next,
        t: state.t + dt,
    }
}

/// Advances `state` by `steps` steps under a constant applied field, calling
/// `observe` after each step. Returns the final state.
#[allow(clippy::too_many_arguments)]
pub(crate) fn evolve<R, F>(
    mut state: MagnetizationState,
    p: &MagnetParams,
    applied: Vec3,
    steps: usize,
    dt: f64,
    renormalize: bool,
    rng: &mut R,
    mut observe: F,
) -> MagnetizationState
where
    R: Rng + ?Sized,
    F: FnMut(&MagnetizationState),
{
    for _ in 0..steps {
        state = step_in_field(&state, p, applied, dt, renormalize, rng);
        observe(&state);
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnetodynamics::fields::magnetic_energy;
    use crate::magnetodynamics::params::DemagFactors;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zero_t() -> MagnetParams {
        MagnetParams {
            temperature: 0.0,
            ..MagnetParams::default()
        }
    }

    fn field_only(alpha: f64) -> MagnetParams {
        // isotropic demag is parallel to m, so only the applied field torques
        MagnetParams {
            k_i: 0.0,
            demag: DemagFactors([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]),
            alpha,
            temperature: 0.0,
            ..MagnetParams::default()
        }
    }

    #[test]
    fn zero_field_fixed_point() {
        let p = field_only(0.1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s0 = MagnetizationState::new(Vec3::new(0.2, 0.3, 0.9));
        let s1 = step_in_field(&s0, &p, Vec3::ZERO, 1e-13, true, &mut rng);
        assert!((s1.m - s0.m).norm() < 1e-15);
        assert!((s1.t - 1e-13).abs() < 1e-25);
    }

    #[test]
    fn parallel_field_fixed_point() {
        let p = zero_t();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = MagnetizationState::new(Vec3::Z);
        let stim = MEStimulus::default().with_voltage(0.05);
        let cfg = SimConfig::default();
        let next = heun_step(&s, &p, &stim, &cfg, &mut rng);
        assert_eq!(next.m, Vec3::Z);
    }

    #[test]
    fn damping_moves_toward_field() {
        let p = field_only(0.1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = MagnetizationState::new(Vec3::from_angles(std::f64::consts::FRAC_PI_4, 0.0));
        let next = step_in_field(&s, &p, Vec3::new(0.0, 0.0, 1e5), 1e-13, true, &mut rng);
        assert!(next.m.z > s.m.z);
    }

    #[test]
    fn precession_cone_conserved() {
        let p = field_only(0.0);
        let h = 1e5;
        let dt = 0.005 / (p.gamma * h);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s0 = MagnetizationState::new(Vec3::from_angles(0.7, 0.0));
        let mz0 = s0.m.z;
        let end = evolve(
            s0,
            &p,
            Vec3::new(0.0, 0.0, h),
            5_000,
            dt,
            true,
            &mut rng,
            |s| {
                assert!((s.m.norm() - 1.0).abs() < 1e-9);
            },
        );
        assert!((end.m.z - mz0).abs() < 1e-6);
    }

    #[test]
    fn norm_preserved_at_temperature() {
        let p = MagnetParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let stim = MEStimulus::default().with_voltage(-0.065);
        let cfg = SimConfig::default();
        let mut s = MagnetizationState::new(Vec3::Z);
        for _ in 0..5000 {
            s = heun_step(&s, &p, &stim, &cfg, &mut rng);
            assert!((s.m.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn energy_non_increasing_without_noise() {
        let p = zero_t();
        let applied = Vec3::new(0.0, 0.0, -2e5);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut s = MagnetizationState::new(Vec3::from_angles(0.3, 1.0));
        let mut e = magnetic_energy(s.m, &p, applied);
        for _ in 0..20_000 {
            s = step_in_field(&s, &p, applied, 1e-13, true, &mut rng);
            let e1 = magnetic_energy(s.m, &p, applied);
            assert!(e1 <= e + 1e-12 * e.abs().max(1e-30), "{e1} > {e}");
            e = e1;
        }
        // relaxed close to the applied field direction
        assert!(s.m.z < -0.99);
    }
}
