//! Recomputes the three reference configurations (efficiency and temporal
//! FWHM) under both temporal conventions and prints them next to the
//! published values.
//!
//!     cargo run --release --example table1

use kerr_shutter::table1::reproduce_table1;
use kerr_shutter::Convention;

fn main() -> kerr_shutter::Result<()> {
    for convention in [Convention::PaperConstantIntensity, Convention::ZResolved] {
        println!("convention: {convention}");
        println!("{:<24} {:>10} {:>10} {:>12} {:>12}", "row", "eff", "eff(pub)", "fwhm/fs", "fwhm(pub)");
        for row in reproduce_table1(convention)? {
            let fwhm = row.fwhm_computed.map_or(f64::NAN, |t| t.as_fs());
            println!(
                "{:<24} {:>10.4} {:>10.2} {:>12.2} {:>12.1}",
                row.label,
                row.efficiency_computed,
                row.efficiency_paper,
                fwhm,
                row.fwhm_paper.as_fs()
            );
        }
        println!();
    }
    Ok(())
}
