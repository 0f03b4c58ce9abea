//! Landauer conductance, junction resistance and TMR.

use serde::{Deserialize, Serialize};

use super::negf::Chain;
use super::params::{BarrierStack, LeadParams, MagneticConfig, Spin};
use crate::consts::{G_QUANTUM, KB, Q};
use crate::error::{Error, Result};

/// Energy window half-width in units of k_B·T.
pub const WINDOW_KT: f64 = 10.0;
/// Relative tolerance of the adaptive energy integration.
pub const REL_TOL: f64 = 1e-6;
/// Below this bias (V) the linear-response conductance is used.
pub const LINEAR_RESPONSE_BIAS: f64 = 1e-9;

/// Adaptive trapezoid quadrature of `f` on `[a, b]`.
///
/// The interval is first split into `initial` panels so narrow features such
/// as band edges are seen; each panel is then bisected until the trapezoid and
/// its two halves agree within `rel_tol` of the coarse total.
pub fn adaptive_trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let initial = 64;
    let h = (b - a) / initial as f64;
    let xs: Vec<f64> = (0..=initial).map(|i| a + h * i as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let coarse: f64 = fs.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum();
    let scale = coarse
        .abs()
        .max(fs.iter().fold(0.0f64, |m, v| m.max(v.abs())) * (b - a) * 1e-12);
    let tol = rel_tol * scale / initial as f64;

    fn refine<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fb: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        let whole = 0.5 * (b - a) * (fa + fb);
        let halves = 0.25 * (b - a) * (fa + 2.0 * fm + fb);
        if depth == 0 || (whole - halves).abs() <= 3.0 * tol {
            halves
        } else {
            refine(f, a, m, fa, fm, 0.5 * tol, depth - 1)
                + refine(f, m, b, fm, fb, 0.5 * tol, depth - 1)
        }
    }

    (0..initial)
        .map(|i| refine(&f, xs[i], xs[i + 1], fs[i], fs[i + 1], tol, 24))
        .sum()
}

fn fermi(e: f64, mu: f64, kt: f64) -> f64 {
    if kt == 0.0 {
        return if e < mu {
            1.0
        } else if e > mu {
            0.0
        } else {
            0.5
        };
    }
    let x = (e - mu) / kt;
    if x > 0.0 {
        let ex = (-x).exp();
        ex / (1.0 + ex)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// −∂f/∂E in 1/eV.
fn fermi_window(e: f64, mu: f64, kt: f64) -> f64 {
    let x = 0.5 * (e - mu) / kt;
    let c = x.cosh();
    1.0 / (4.0 * kt * c * c)
}

/// k_B·T in eV.
pub fn thermal_energy(temperature: f64) -> f64 {
    KB * temperature / Q
}

/// Linear-response conductance of one transverse mode summed over both spin
/// channels, in siemens.
pub fn conductance_per_mode(stack: &BarrierStack, leads: &LeadParams, temperature: f64) -> f64 {
    let kt = thermal_energy(temperature);
    let mu = leads.fermi_energy;
    Spin::BOTH
        .iter()
        .map(|&s| {
            let chain = Chain::from_stack(stack, leads, s, 0.0);
            let t_eff = if kt == 0.0 {
                chain.transmission(mu)
            } else {
                adaptive_trapezoid(
                    |e| chain.transmission(e) * fermi_window(e, mu, kt),
                    mu - WINDOW_KT * kt,
                    mu + WINDOW_KT * kt,
                    REL_TOL,
                )
            };
            G_QUANTUM * t_eff
        })
        .sum()
}

/// Current through one transverse mode at bias `v_bias` (V), both spins, in A.
pub fn current_per_mode(
    stack: &BarrierStack,
    leads: &LeadParams,
    v_bias: f64,
    temperature: f64,
) -> f64 {
    let kt = thermal_energy(temperature);
    let mu_l = leads.fermi_energy + 0.5 * v_bias;
    let mu_r = leads.fermi_energy - 0.5 * v_bias;
    let (lo, hi) = (
        mu_l.min(mu_r) - WINDOW_KT * kt,
        mu_l.max(mu_r) + WINDOW_KT * kt,
    );
    Spin::BOTH
        .iter()
        .map(|&s| {
            let chain = Chain::from_stack(stack, leads, s, v_bias);
            // q/h · ∫T(f_L − f_R) dE with E in eV gives q²/h · ∫ … dE[eV]
            G_QUANTUM
                * adaptive_trapezoid(
                    |e| chain.transmission(e) * (fermi(e, mu_l, kt) - fermi(e, mu_r, kt)),
                    lo,
                    hi,
                    REL_TOL,
                )
        })
        .sum()
}

/// Junction resistance in ohms at bias `v_bias` and `temperature`.
pub fn mtj_resistance(
    stack: &BarrierStack,
    leads: &LeadParams,
    v_bias: f64,
    temperature: f64,
) -> Result<f64> {
    stack.validate()?;
    leads.validate()?;
    let modes = stack.modes();
    if v_bias.abs() < LINEAR_RESPONSE_BIAS {
        let g = conductance_per_mode(stack, leads, temperature) * modes;
        if !(g > 0.0) {
            return Err(Error::Integration(format!("non-positive conductance {g}")));
        }
        return Ok(1.0 / g);
    }
    let i = current_per_mode(stack, leads, v_bias, temperature) * modes;
    if !(i * v_bias > 0.0) {
        return Err(Error::Integration(format!(
            "current {i} A does not follow bias {v_bias} V"
        )));
    }
    Ok(v_bias / i)
}

/// Resistances of the same junction in the P and AP configurations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResistancePair {
    pub r_p: f64,
    pub r_ap: f64,
}

impl ResistancePair {
    pub fn compute(
        stack: &BarrierStack,
        leads: &LeadParams,
        v_bias: f64,
        temperature: f64,
    ) -> Result<Self> {
        Ok(Self {
            r_p: mtj_resistance(
                &stack.with_config(MagneticConfig::Parallel),
                leads,
                v_bias,
                temperature,
            )?,
            r_ap: mtj_resistance(
                &stack.with_config(MagneticConfig::Antiparallel),
                leads,
                v_bias,
                temperature,
            )?,
        })
    }

    pub fn tmr(&self) -> f64 {
        (self.r_ap - self.r_p) / self.r_p
    }

    pub fn get(&self, config: MagneticConfig) -> f64 {
        match config {
            MagneticConfig::Parallel => self.r_p,
            MagneticConfig::Antiparallel => self.r_ap,
        }
    }
}

/// Device TMR (R_AP − R_P)/R_P.
pub fn tmr(stack: &BarrierStack, leads: &LeadParams, v_bias: f64, temperature: f64) -> Result<f64> {
    Ok(ResistancePair::compute(stack, leads, v_bias, temperature)?.tmr())
}

/// TMR seen through a series access resistance: (R_AP − R_P)/(R_P + R_series).
pub fn bitcell_tmr(r_p: f64, r_ap: f64, r_series: f64) -> f64 {
    (r_ap - r_p) / (r_p + r_series)
}

/// Lumped linear-region on-resistance of the access transistor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesTransistor {
    /// On-resistance at W/L = 1, ohms.
    pub r_unit: f64,
}

impl Default for SeriesTransistor {
    fn default() -> Self {
        Self { r_unit: 5e3 }
    }
}

impl SeriesTransistor {
    /// R_unit/(W/L); zero for an infinitely wide device.
    pub fn resistance(&self, w_over_l: f64) -> f64 {
        if w_over_l.is_infinite() {
            0.0
        } else {
            self.r_unit / w_over_l
        }
    }
}

/// Series resistance of the default access transistor at `w_over_l`.
pub fn series_transistor_resistance(w_over_l: f64) -> f64 {
    SeriesTransistor::default().resistance(w_over_l)
}

/// Mode density that puts R_P of `stack` at `target_r_p` ohms.
pub fn calibrate_mode_density(
    stack: &BarrierStack,
    leads: &LeadParams,
    target_r_p: f64,
    temperature: f64,
) -> f64 {
    let g = conductance_per_mode(
        &stack.with_config(MagneticConfig::Parallel),
        leads,
        temperature,
    );
    1.0 / (target_r_p * g * stack.cross_section)
}

/// One row of a bit-cell TMR sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TmrSweepRow {
    pub t_mgo_nm: f64,
    pub w_over_l: f64,
    pub r_p_ohm: f64,
    pub r_ap_ohm: f64,
    pub tmr_device: f64,
    pub tmr_bitcell: f64,
}

/// Device and bit-cell TMR over every (thickness, W/L) pair, thickness-major.
/// Thicknesses are given in nm and echoed unchanged in the rows.
pub fn tmr_sweep(
    base: &BarrierStack,
    leads: &LeadParams,
    thicknesses_nm: &[f64],
    w_over_l: &[f64],
    transistor: &SeriesTransistor,
    temperature: f64,
) -> Result<Vec<TmrSweepRow>> {
    let mut rows = Vec::with_capacity(thicknesses_nm.len() * w_over_l.len());
    for &t_nm in thicknesses_nm {
        let stack = base.with_thickness(t_nm * 1e-9);
        let pair = ResistancePair::compute(&stack, leads, 0.0, temperature)?;
        for &wl in w_over_l {
            rows.push(TmrSweepRow {
                t_mgo_nm: t_nm,
                w_over_l: wl,
                r_p_ohm: pair.r_p,
                r_ap_ohm: pair.r_ap,
                tmr_device: pair.tmr(),
                tmr_bitcell: bitcell_tmr(pair.r_p, pair.r_ap, transistor.resistance(wl)),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_integrates_smooth_functions() {
        let v = adaptive_trapezoid(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-8);
        assert!((v - 2.0).abs() < 1e-7);
        let v = adaptive_trapezoid(|x| if x < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, 1e-8);
        assert!((v - 0.7).abs() < 1e-6);
    }

    #[test]
    fn bitcell_tmr_identities() {
        assert_eq!(bitcell_tmr(10e3, 20e3, 10e3), 0.5);
        assert_eq!(bitcell_tmr(10e3, 25e3, 0.0), 1.5);
        let mut prev = f64::INFINITY;
        for r in [0.0, 1.0, 1e3, 1e5, 1e9] {
            let b = bitcell_tmr(10e3, 25e3, r);
            assert!(b < prev);
            prev = b;
        }
        assert!(bitcell_tmr(10e3, 25e3, 1e15) < 1e-9);
    }

    #[test]
    fn transistor_scaling() {
        assert_eq!(series_transistor_resistance(1.0), 5e3);
        assert_eq!(series_transistor_resistance(2.0), 2.5e3);
        assert_eq!(series_transistor_resistance(f64::INFINITY), 0.0);
    }

    #[test]
    fn fermi_window_normalized() {
        let kt = thermal_energy(300.0);
        let v = adaptive_trapezoid(
            |e| fermi_window(e, 1.0, kt),
            1.0 - 40.0 * kt,
            1.0 + 40.0 * kt,
            1e-9,
        );
        assert!((v - 1.0).abs() < 1e-7);
    }
}
