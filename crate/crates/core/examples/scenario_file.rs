//! Loads a scenario file, applies command-line style overrides and reports
//! phase, efficiency and time resolution.
//!
//!     cargo run --release --example scenario_file -- scenarios/table1_row1.conf pulse.duration="60 fs"

use std::path::PathBuf;

use kerr_shutter::scenario::load_scenario_with;
use kerr_shutter::table1::evaluate;
use kerr_shutter::phase::phase_on_axis_numeric;

fn main() -> kerr_shutter::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/table1_row1.conf")));
    let overrides: Vec<String> = args.collect();
    let s = load_scenario_with(&path, &overrides)?;

    print!("{}", s.to_config());
    let phase = phase_on_axis_numeric(&s.medium, &s.geometry, &s.pulse, s.dispersion)?;
    let (eff, fwhm) = evaluate(&s)?;
    println!();
    println!("on-axis phase  {:.4} rad", phase.delta_phi);
    println!("efficiency     {eff:.4}");
    match fwhm {
        Some(t) => println!("fwhm           {:.2} fs", t.as_fs()),
        None => println!("fwhm           undefined"),
    }
    Ok(())
}
