//! Searches the pump and probe diameters that maximize the gate efficiency
//! for each reference configuration.
//!
//!     cargo run --release --example optimize

use kerr_shutter::table1::reference_rows;
use kerr_shutter::transmittance::{optimal_waists, DiameterBounds, OptimizerOptions, SweepSetup};
use kerr_shutter::{Convention, Length};

fn main() -> kerr_shutter::Result<()> {
    let bounds = DiameterBounds::square(Length::from_um(5.0), Length::from_um(60.0));
    for row in reference_rows(Convention::default())? {
        let s = &row.scenario;
        let setup = SweepSetup::from_geometry(s.medium, &s.geometry, s.pulse, s.dispersion);
        let o = optimal_waists(&setup, bounds, OptimizerOptions::default())?;
        println!(
            "{:<24} pump {:6.2} um  probe {:6.2} um  efficiency {:.4}",
            s.label,
            o.pump_diameter().as_um(),
            o.probe_diameter().as_um(),
            o.result.transmittance
        );
    }
    Ok(())
}
