//! Gate efficiency over pump and probe beam diameters for a 3 mm BBS crystal,
//! written as CSV. The crystal thickness may be given as the first argument
//! in millimetres.
//!
//!     cargo run --release --example fig3_map -- 3 > map.csv

use kerr_shutter::output::write_sweep;
use kerr_shutter::scenario::BBS;
use kerr_shutter::transmittance::{efficiency_map, linear_axis, SweepSetup};
use kerr_shutter::{BeamGeometry, Energy, Length, PulseSpec, Time};

fn main() -> kerr_shutter::Result<()> {
    let l_mm: f64 = std::env::args().nth(1).map_or(3.0, |a| a.parse().expect("thickness in mm"));
    let geom = BeamGeometry::from_diameters(Length::from_nm(800.0), Length::from_um(23.7), Length::from_um(18.5))?;
    let pulse = PulseSpec::new(Energy::from_nj(1.8), Time::from_fs(80.0))?;
    let setup = SweepSetup::from_geometry(BBS.medium(Length::from_mm(l_mm))?, &geom, pulse, true);

    let axis = linear_axis(Length::from_um(5.0), Length::from_um(60.0), 64);
    let grid = efficiency_map(&setup, &axis, &axis, None)?;
    if let Some((i, j, best)) = grid.argmax() {
        eprintln!(
            "best {best:.4} at pump {:.2} um, probe {:.2} um",
            axis[i].as_um(),
            axis[j].as_um()
        );
    }
    write_sweep(std::io::stdout().lock(), &grid, &[format!("BBS, L = {l_mm} mm")]).expect("stdout");
    Ok(())
}
