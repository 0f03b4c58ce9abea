//! Retarded Green function of a 1D tight-binding chain between two
//! semi-infinite leads, and the Landauer transmission it implies.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::{hopping_energy, BarrierStack, LeadParams, MagneticConfig, Spin};

/// Broadening added to the energy when the chain is singular at a pole, eV.
pub const POLE_SHIFT: f64 = 1e-9;

/// Surface self-energy of a semi-infinite uniform chain.
///
/// `band_bottom` is the lead's band minimum and `t0` its hopping; the band is
/// `band_bottom + 2·t0·(1 − cos ka)`. Inside the band the retarded branch has
/// Im Σ < 0; outside it Σ is real and picked on the decaying branch.
pub fn lead_self_energy(e: f64, band_bottom: f64, t0: f64) -> Complex64 {
    let x = 1.0 - (e - band_bottom) / (2.0 * t0);
    if x.abs() <= 1.0 {
        let ka = x.acos();
        -t0 * Complex64::new(ka.cos(), ka.sin())
    } else if x > 1.0 {
        // below the band: e^{ika} = e^{-κa}
        Complex64::new(-t0 * (-x.acosh()).exp(), 0.0)
    } else {
        // above the band: e^{ika} = -e^{-κa}
        Complex64::new(t0 * (-(-x).acosh()).exp(), 0.0)
    }
}

/// Broadening Γ = i(Σ − Σ†) = −2·Im Σ.
#[inline]
pub fn broadening(sigma: Complex64) -> f64 {
    -2.0 * sigma.im
}

/// Semi-infinite contact channel: band bottom and hopping, eV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadChannel {
    pub band_bottom: f64,
    pub hopping: f64,
}

/// Device region of the chain with its two contacts.
///
/// `hopping[i]` couples sites `i` and `i + 1`; site 0 couples to the left
/// lead and the last site to the right lead with the lead hopping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chain {
    pub onsite: Vec<f64>,
    pub hopping: Vec<f64>,
    pub left: LeadChannel,
    pub right: LeadChannel,
}

impl Chain {
    /// Uniform perfect wire of `n` sites matching both leads.
    pub fn uniform_wire(n: usize, t0: f64, band_bottom: f64) -> Self {
        let lead = LeadChannel {
            band_bottom,
            hopping: t0,
        };
        Self {
            onsite: vec![band_bottom + 2.0 * t0; n],
            hopping: vec![t0; n.saturating_sub(1)],
            left: lead,
            right: lead,
        }
    }

    /// FM/barrier/FM chain for one spin channel of the left contact.
    ///
    /// The device holds one ferromagnetic boundary site on each side of the
    /// barrier. Bonds between regions use the mean effective mass. A bias
    /// `v_bias` (volts) lifts the left contact by +V/2, lowers the right one
    /// by −V/2, and drops linearly across the barrier.
    pub fn from_stack(stack: &BarrierStack, leads: &LeadParams, spin: Spin, v_bias: f64) -> Self {
        let n_b = stack.sites();
        let t_fm = hopping_energy(leads.effective_mass, stack.spacing);
        let t_b = hopping_energy(stack.barrier_mass, stack.spacing);
        let t_int = hopping_energy(
            0.5 * (leads.effective_mass + stack.barrier_mass),
            stack.spacing,
        );
        let right_spin = match stack.config {
            MagneticConfig::Parallel => spin,
            MagneticConfig::Antiparallel => spin.flipped(),
        };
        let half = 0.5 * v_bias;
        let left_bb = leads.band_bottom(spin) + half;
        let right_bb = leads.band_bottom(right_spin) - half;
        let edge = leads.fermi_energy + stack.barrier_height;

        let n = n_b + 2;
        let mut potential = Vec::with_capacity(n);
        potential.push(left_bb);
        for j in 0..n_b {
            let frac = (j as f64 + 0.5) / n_b as f64;
            potential.push(edge + half - v_bias * frac);
        }
        potential.push(right_bb);

        let mut hopping = Vec::with_capacity(n - 1);
        hopping.push(t_int);
        hopping.extend(std::iter::repeat_n(t_b, n_b - 1));
        hopping.push(t_int);

        let onsite = (0..n)
            .map(|i| {
                let left_bond = if i == 0 { t_fm } else { hopping[i - 1] };
                let right_bond = if i == n - 1 { t_fm } else { hopping[i] };
                potential[i] + left_bond + right_bond
            })
            .collect();

        Self {
            onsite,
            hopping,
            left: LeadChannel {
                band_bottom: left_bb,
                hopping: t_fm,
            },
            right: LeadChannel {
                band_bottom: right_bb,
                hopping: t_fm,
            },
        }
    }

    /// Mirror image: the right contact becomes the left one.
    pub fn reversed(&self) -> Self {
        Self {
            onsite: self.onsite.iter().rev().copied().collect(),
            hopping: self.hopping.iter().rev().copied().collect(),
            left: self.right,
            right: self.left,
        }
    }

    /// Corner element G(1, N) of the retarded Green function at complex
    /// energy `z`, with the contact self-energies. `None` if singular.
    fn corner_green(&self, z: Complex64, sl: Complex64, sr: Complex64) -> Option<Complex64> {
        let n = self.onsite.len();
        // left-connected recursion on A = zI − H − Σ; A(i, i+1) = +t
        let mut g_corner = Complex64::new(1.0, 0.0);
        let mut g_prev = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut a = z - self.onsite[i];
            if i == 0 {
                a -= sl;
            }
            if i == n - 1 {
                a -= sr;
            }
            if i > 0 {
                let t = self.hopping[i - 1];
                a -= t * t * g_prev;
            }
            if a.norm() == 0.0 || !a.is_finite() {
                return None;
            }
            let g = a.inv();
            g_corner = if i == 0 {
                g
            } else {
                g_corner * (-self.hopping[i - 1]) * g
            };
            g_prev = g;
        }
        g_corner.is_finite().then_some(g_corner)
    }

    /// Landauer transmission Γ_L·|G(1,N)|²·Γ_R at energy `e` (eV).
    pub fn transmission(&self, e: f64) -> f64 {
        // single mode per spin: clamp round-off above unity
        self.unclamped_transmission(e).clamp(0.0, 1.0)
    }

    /// Transmission before round-off clamping; within ~1e-12 of [0, 1].
    pub fn unclamped_transmission(&self, e: f64) -> f64 {
        let sl = lead_self_energy(e, self.left.band_bottom, self.left.hopping);
        let sr = lead_self_energy(e, self.right.band_bottom, self.right.hopping);
        let (gl, gr) = (broadening(sl), broadening(sr));
        if gl <= 0.0 || gr <= 0.0 {
            return 0.0;
        }
        let g = self
            .corner_green(Complex64::new(e, 0.0), sl, sr)
            .or_else(|| self.corner_green(Complex64::new(e, POLE_SHIFT), sl, sr))
            .unwrap_or(Complex64::new(0.0, 0.0));
        gl * gr * g.norm_sqr()
    }
}

/// Zero-bias transmission for one spin channel of the left contact.
pub fn transmission(e: f64, stack: &BarrierStack, leads: &LeadParams, spin: Spin) -> f64 {
    Chain::from_stack(stack, leads, spin, 0.0).transmission(e)
}

/// Transmission of both spin channels on an energy grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransmissionSpectrum {
    pub energies: Vec<f64>,
    /// `[majority, minority]` at each energy.
    pub per_channel: Vec<[f64; 2]>,
}

impl TransmissionSpectrum {
    pub fn compute(stack: &BarrierStack, leads: &LeadParams, energies: &[f64]) -> Self {
        let chains = Spin::BOTH.map(|s| Chain::from_stack(stack, leads, s, 0.0));
        Self {
            energies: energies.to_vec(),
            per_channel: energies
                .iter()
                .map(|&e| [chains[0].transmission(e), chains[1].transmission(e)])
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_energy_band_edges() {
        let t0 = 1.3;
        let s = lead_self_energy(0.0, 0.0, t0);
        assert!((s - Complex64::new(-t0, 0.0)).norm() < 1e-12);
        let s = lead_self_energy(2.0 * t0, 0.0, t0);
        assert!((s - Complex64::new(0.0, -t0)).norm() < 1e-12);
    }

    #[test]
    fn broadening_matches_dispersion() {
        let (bb, t0) = (0.4, 1.1);
        for i in 0..=100 {
            let ka = std::f64::consts::PI * i as f64 / 100.0;
            let e = bb + 2.0 * t0 * (1.0 - ka.cos());
            let gamma = broadening(lead_self_energy(e, bb, t0));
            assert!(gamma >= -1e-12);
            assert!((gamma - 2.0 * t0 * ka.sin()).abs() < 1e-6, "ka={ka}");
        }
    }

    #[test]
    fn evanescent_self_energy_is_real_and_decaying() {
        let t0 = 1.0;
        let below = lead_self_energy(-0.5, 0.0, t0);
        let above = lead_self_energy(4.5, 0.0, t0);
        assert_eq!(below.im, 0.0);
        assert_eq!(above.im, 0.0);
        assert!(below.re.abs() < t0 && above.re.abs() < t0);
    }

    #[test]
    fn perfect_wire_transmits() {
        let w = Chain::uniform_wire(5, 1.2, 0.0);
        for i in 1..100 {
            let e = 4.8 * i as f64 / 100.0;
            assert!((w.transmission(e) - 1.0).abs() < 1e-9, "E={e}");
        }
        assert_eq!(w.transmission(-0.1), 0.0);
        assert_eq!(w.transmission(5.0), 0.0);
    }

    #[test]
    fn reversed_chain_is_reciprocal() {
        let stack = BarrierStack::default().with_config(MagneticConfig::Antiparallel);
        let c = Chain::from_stack(&stack, &LeadParams::default(), Spin::Majority, 0.05);
        let r = c.reversed();
        for i in 0..50 {
            let e = 2.16 + 0.01 * i as f64;
            let (a, b) = (c.transmission(e), r.transmission(e));
            assert!(
                (a - b).abs() <= 1e-12 * a.max(1e-300) + 1e-300,
                "{a} vs {b}"
            );
        }
    }

    #[test]
    fn out_of_band_is_zero() {
        let stack = BarrierStack::default();
        // minority band starts at 2.15 eV
        assert_eq!(
            transmission(2.0, &stack, &LeadParams::default(), Spin::Minority),
            0.0
        );
    }
}
