//! Temporal instrument response of a BBS gate for several thicknesses,
//! comparing the constant-intensity and z-resolved conventions.
//!
//!     cargo run --release --example fig4_temporal

use kerr_shutter::scenario::BBS;
use kerr_shutter::temporal::{temporal_response, TemporalOptions};
use kerr_shutter::{BeamGeometry, Convention, Energy, Length, PulseSpec, Time};

fn main() -> kerr_shutter::Result<()> {
    let geom = BeamGeometry::from_diameters(Length::from_nm(800.0), Length::from_um(23.7), Length::from_um(18.5))?;
    let pulse = PulseSpec::new(Energy::from_nj(1.8), Time::from_fs(80.0))?;

    println!("{:>6} {:>10} {:>10} {:>14} {:>12}", "L/mm", "disp", "peak", "fwhm(const)", "fwhm(z-res)");
    for l_mm in [0.5, 1.0, 2.0, 3.0, 5.0] {
        let medium = BBS.medium(Length::from_mm(l_mm))?;
        for dispersion in [false, true] {
            let run = |convention| {
                let opts = TemporalOptions { convention, ..Default::default() };
                temporal_response(&medium, &geom, &pulse, dispersion, opts)
            };
            let a = run(Convention::PaperConstantIntensity)?;
            let b = run(Convention::ZResolved)?;
            let fs = |t: Option<Time>| t.map_or(f64::NAN, |t| t.as_fs());
            println!(
                "{l_mm:>6} {dispersion:>10} {:>10.4} {:>14.2} {:>12.2}",
                a.peak_transmittance,
                fs(a.fwhm),
                fs(b.fwhm)
            );
        }
    }
    Ok(())
}
