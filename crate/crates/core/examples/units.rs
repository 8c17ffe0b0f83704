//! Lab units at the boundary, SI inside.
//!
//!     cargo run --example units

use kerr_shutter::quantities::{convert, pulse_energy_from_power, Measured, Unit};
use kerr_shutter::{Frequency, Gvd, Length, Power, Time};

fn main() -> kerr_shutter::Result<()> {
    let waist = Length::from_um(11.85);
    println!("11.85 um = {:.4e} m = {:.5} mm", waist.si(), waist.as_mm());

    let gvd = Gvd::from_fs2_per_mm(1057.19);
    println!("1057.19 fs2/mm = {:e} s2/m", gvd.si());

    // Pulse energy from an average power and a repetition rate.
    for rate in [Frequency::from_ghz(1.0), Frequency::from_mhz(80.0), Frequency::from_mhz(10.0)] {
        let e = pulse_energy_from_power(Power::from_watts(1.8), rate)?;
        println!("1.8 W at {:>6} MHz -> {:>6.2} nJ", rate.si() / 1e6, e.as_nj());
    }

    // Text with a unit tag, as found in scenario files.
    let m: Measured = "80 fs".parse()?;
    let tau = Time::try_from(m)?;
    println!("parsed {m:?} -> {:e} s", tau.si());
    println!("30 deg = {} rad", convert(30.0, "deg")?);

    // Dimension mismatches are rejected.
    let wrong: Measured = "3 mm".parse()?;
    println!("3 mm as a time: {}", Time::try_from(wrong).unwrap_err());
    println!("unknown tag: {}", "furlong".parse::<Unit>().unwrap_err());
    Ok(())
}
