//! Prints the transport calibration: mode density for the target R_P and the
//! resulting resistances and TMR over the MgO sweep.

use mespin::transport::{calibrate_mode_density, BarrierStack, LeadParams, ResistancePair};

fn main() {
    let leads = LeadParams::default();
    let stack = BarrierStack::default();
    let density = calibrate_mode_density(&stack, &leads, 14.15e3, 300.0);
    println!(
        "mode_density = {density:.9e} /m^2 ({:.3} /nm^2)",
        density * 1e-18
    );
    let stack = BarrierStack {
        mode_density: density,
        ..stack
    };
    for i in 0..=6 {
        let t = (0.8 + 0.2 * i as f64) * 1e-9;
        let pair = ResistancePair::compute(&stack.with_thickness(t), &leads, 0.0, 300.0).unwrap();
        println!(
            "t = {:.1} nm  R_P = {:.6e}  R_AP = {:.6e}  TMR = {:.6}",
            t * 1e9,
            pair.r_p,
            pair.r_ap,
            pair.tmr()
        );
    }
}
