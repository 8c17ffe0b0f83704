//! The three reference configurations (BBS 3 mm at 1 GHz, BBS 0.1 mm at
//! 80 MHz, fused silica 2 mm at 10 MHz) and their published efficiency and
//! time resolution.

use crate::beam::{BeamGeometry, PulseSpec};
use crate::error::Result;
use crate::quantities::{Frequency, Length, Power, Time};
use crate::scenario::{EnergySource, MaterialPreset, Scenario, BBS, SIO2};
use crate::temporal::{temporal_response, Convention, TemporalOptions, DEFAULT_SAMPLES};
use crate::transmittance::gate_efficiency;

/// A reference configuration with the published values next to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub scenario: Scenario,
    pub efficiency: f64,
    pub fwhm: Time,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub label: String,
    pub efficiency_computed: f64,
    pub efficiency_paper: f64,
    pub fwhm_computed: Option<Time>,
    pub fwhm_paper: Time,
}

struct Spec {
    label: &'static str,
    material: MaterialPreset,
    thickness_mm: f64,
    pump_um: f64,
    probe_um: f64,
    duration_fs: f64,
    rate_mhz: f64,
    efficiency: f64,
    fwhm_fs: f64,
}

const ROWS: [Spec; 3] = [
    Spec {
        label: "BBS 3mm 80fs 1GHz",
        material: BBS,
        thickness_mm: 3.0,
        pump_um: 23.7,
        probe_um: 18.5,
        duration_fs: 80.0,
        rate_mhz: 1000.0,
        efficiency: 0.85,
        fwhm_fs: 92.0,
    },
    Spec {
        label: "BBS 0.1mm 60fs 80MHz",
        material: BBS,
        thickness_mm: 0.1,
        pump_um: 18.5,
        probe_um: 18.5,
        duration_fs: 60.0,
        rate_mhz: 80.0,
        efficiency: 0.85,
        fwhm_fs: 51.0,
    },
    Spec {
        label: "SiO2 2mm 60fs 10MHz",
        material: SIO2,
        thickness_mm: 2.0,
        pump_um: 24.1,
        probe_um: 18.5,
        duration_fs: 60.0,
        rate_mhz: 10.0,
        efficiency: 0.92,
        fwhm_fs: 54.0,
    },
];

/// Average pump power shared by all rows.
pub const AVERAGE_POWER_W: f64 = 1.8;

/// Wavelength shared by all rows.
pub const WAVELENGTH_NM: f64 = 800.0;

/// Scenarios for the three reference rows, dispersion on.
pub fn reference_rows(convention: Convention) -> Result<Vec<ReferenceRow>> {
    ROWS.iter()
        .map(|r| {
            let energy_source = EnergySource::Train {
                average_power: Power::from_watts(AVERAGE_POWER_W),
                repetition_rate: Frequency::from_mhz(r.rate_mhz),
            };
            let scenario = Scenario {
                label: r.label.to_string(),
                medium: r.material.medium(Length::from_mm(r.thickness_mm))?,
                geometry: BeamGeometry::from_diameters(
                    Length::from_nm(WAVELENGTH_NM),
                    Length::from_um(r.pump_um),
                    Length::from_um(r.probe_um),
                )?,
                pulse: PulseSpec::new(energy_source.energy()?, Time::from_fs(r.duration_fs))?,
                energy_source,
                dispersion: true,
                convention,
                samples: DEFAULT_SAMPLES,
            };
            Ok(ReferenceRow {
                scenario,
                efficiency: r.efficiency,
                fwhm: Time::from_fs(r.fwhm_fs),
            })
        })
        .collect()
}

/// Efficiency and temporal FWHM of one scenario.
pub fn evaluate(scenario: &Scenario) -> Result<(f64, Option<Time>)> {
    let eff = gate_efficiency(&scenario.medium, &scenario.geometry, &scenario.pulse, scenario.dispersion)?;
    let opts = TemporalOptions {
        convention: scenario.convention,
        samples: scenario.samples,
        window: None,
    };
    let response = temporal_response(&scenario.medium, &scenario.geometry, &scenario.pulse, scenario.dispersion, opts)?;
    Ok((eff.transmittance, response.fwhm))
}

/// Computes the three reference rows side by side with the published values.
pub fn reproduce_table1(convention: Convention) -> Result<Vec<Table1Row>> {
    reference_rows(convention)?
        .into_iter()
        .map(|row| {
            let (eff, fwhm) = evaluate(&row.scenario)?;
            Ok(Table1Row {
                label: row.scenario.label,
                efficiency_computed: eff,
                efficiency_paper: row.efficiency,
                fwhm_computed: fwhm,
                fwhm_paper: row.fwhm,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_energies() {
        let rows = reference_rows(Convention::default()).unwrap();
        let nj: Vec<f64> = rows.iter().map(|r| r.scenario.pulse.energy.as_nj()).collect();
        for (got, want) in nj.iter().zip([1.8, 22.5, 180.0]) {
            assert!(((got - want) / want).abs() < 1e-12, "{got}");
        }
    }
}
