//! On-axis phase versus crystal thickness with and without group velocity
//! dispersion (BBS, 10 um pump waist, 1.8 nJ, 80 fs).
//!
//!     cargo run --release --example fig2_phase > phase.csv

use kerr_shutter::output::write_phase_sweep;
use kerr_shutter::phase::{phase_on_axis_analytic, thickness_sweep};
use kerr_shutter::scenario::BBS;
use kerr_shutter::transmittance::linear_axis;
use kerr_shutter::{BeamGeometry, Energy, Length, PulseSpec, Time};

fn main() -> kerr_shutter::Result<()> {
    let medium = BBS.medium(Length::from_mm(3.0))?;
    let geom = BeamGeometry::from_diameters(Length::from_nm(800.0), Length::from_um(20.0), Length::from_um(20.0))?;
    let pulse = PulseSpec::new(Energy::from_nj(1.8), Time::from_fs(80.0))?;

    let closed = phase_on_axis_analytic(&medium, &geom, &pulse)?;
    eprintln!("closed form at 3 mm without dispersion: {:.4} rad", closed.delta_phi);

    let axis = linear_axis(Length::ZERO, Length::from_mm(5.0), 51);
    let sweep = thickness_sweep(&medium, &geom, &pulse, &axis)?;
    write_phase_sweep(std::io::stdout().lock(), &sweep, &[String::from("BBS, w0 = 10 um, 1.8 nJ, 80 fs")])
        .expect("stdout");
    Ok(())
}
