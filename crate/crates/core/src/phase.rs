//! Pump-induced nonlinear phase accumulated by the probe.

use std::f64::consts::PI;

use crate::beam::{AxialProfile, BeamGeometry, KerrMedium, PulseSpec};
use crate::error::Result;
use crate::quadrature::{integrate, Tolerance};
use crate::quantities::Length;

/// Relative tolerance of the along-axis quadrature.
pub const PHASE_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// Accumulated phase in radians.
    pub delta_phi: f64,
    pub with_dispersion: bool,
    pub integration_error_estimate: f64,
}

impl PhaseResult {
    pub fn exact(delta_phi: f64, with_dispersion: bool) -> Self {
        PhaseResult {
            delta_phi,
            with_dispersion,
            integration_error_estimate: 0.0,
        }
    }
}

/// `2π·n·n2/λ`, with λ the vacuum wavelength and n explicit.
pub(crate) fn kerr_coupling(medium: &KerrMedium, geom: &BeamGeometry) -> f64 {
    2.0 * PI * medium.n * medium.n2 / geom.wavelength.si()
}

/// Medium shortened to the interaction length `L·cos θ`.
pub(crate) fn interaction_medium(medium: &KerrMedium, geom: &BeamGeometry) -> KerrMedium {
    medium.with_thickness(medium.effective_thickness(geom.crossing_angle))
}

/// Integrates the phase increment `(2πn·n2/λ)·I(z)·dz` over the interaction length.
pub fn phase_on_axis_numeric(
    medium: &KerrMedium,
    geom: &BeamGeometry,
    pulse: &PulseSpec,
    with_dispersion: bool,
) -> Result<PhaseResult> {
    let medium = interaction_medium(medium, geom);
    let profile = AxialProfile::new(&medium, geom, pulse, with_dispersion)?;
    let k = kerr_coupling(&medium, geom);
    let half = profile.half_length;
    let est = integrate(
        |z| k * profile.intensity(z),
        -half,
        half,
        &profile.breaks(),
        Tolerance::relative(PHASE_REL_TOL),
    )?;
    Ok(PhaseResult {
        delta_phi: est.value.max(0.0),
        with_dispersion,
        integration_error_estimate: est.error,
    })
}

/// Closed form of the dispersion-free phase,
/// `(4π·n·n2·z_R·I/λ)·arctan(L/(2·z_R))` for a centred focus.
pub fn phase_on_axis_analytic(medium: &KerrMedium, geom: &BeamGeometry, pulse: &PulseSpec) -> Result<PhaseResult> {
    let medium = interaction_medium(medium, geom);
    let profile = AxialProfile::new(&medium, geom, pulse, false)?;
    let k = kerr_coupling(&medium, geom);
    let zr = profile.rayleigh;
    let half = profile.half_length;
    let f = profile.focus;
    let span = ((half - f) / zr).atan() + ((half + f) / zr).atan();
    Ok(PhaseResult::exact(k * profile.peak * zr * span, false))
}

/// Off-axis phase `Δφ(0)·exp(−2(r0/w0)²)`.
pub fn phase_off_axis(r0: Length, on_axis: &PhaseResult, pump_waist: Length) -> f64 {
    let x = r0 / pump_waist;
    on_axis.delta_phi * (-2.0 * x * x).exp()
}

/// On-axis phase versus crystal thickness, with and without dispersion.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSweep {
    pub thickness: Vec<Length>,
    pub phase_no_dispersion: Vec<f64>,
    pub phase_dispersion: Vec<f64>,
}

/// Evaluates both phase curves at each thickness. A zero thickness yields
/// zero phase.
pub fn thickness_sweep(
    medium: &KerrMedium,
    geom: &BeamGeometry,
    pulse: &PulseSpec,
    thicknesses: &[Length],
) -> Result<PhaseSweep> {
    let mut sweep = PhaseSweep {
        thickness: thicknesses.to_vec(),
        phase_no_dispersion: Vec::with_capacity(thicknesses.len()),
        phase_dispersion: Vec::with_capacity(thicknesses.len()),
    };
    for &l in thicknesses {
        if l.si() == 0.0 {
            sweep.phase_no_dispersion.push(0.0);
            sweep.phase_dispersion.push(0.0);
            continue;
        }
        let m = medium.with_thickness(l);
        sweep.phase_no_dispersion.push(phase_on_axis_numeric(&m, geom, pulse, false)?.delta_phi);
        sweep.phase_dispersion.push(phase_on_axis_numeric(&m, geom, pulse, true)?.delta_phi);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{Angle, Energy, Gvd, Time};

    fn fig2(l_mm: f64) -> (KerrMedium, BeamGeometry, PulseSpec) {
        (
            KerrMedium::new(2.45, 1.6e-18, Gvd::from_fs2_per_mm(1057.19), Length::from_mm(l_mm)).unwrap(),
            BeamGeometry::new(Length::from_nm(800.0), Length::from_um(10.0), Length::from_um(10.0), Angle::ZERO).unwrap(),
            PulseSpec::new(Energy::from_nj(1.8), Time::from_fs(80.0)).unwrap(),
        )
    }

    #[test]
    fn fig2_magnitude() {
        let (m, g, p) = fig2(3.0);
        let num = phase_on_axis_numeric(&m, &g, &p, false).unwrap();
        let ana = phase_on_axis_analytic(&m, &g, &p).unwrap();
        assert!((num.delta_phi - 3.99).abs() < 0.01, "{num:?}");
        assert!(((num.delta_phi - ana.delta_phi) / ana.delta_phi).abs() < 1e-9);
        assert!(num.integration_error_estimate <= 1e-8 * num.delta_phi.max(1.0));
        let disp = phase_on_axis_numeric(&m, &g, &p, true).unwrap();
        assert!(disp.delta_phi < num.delta_phi);
        assert!(disp.with_dispersion);
    }

    #[test]
    fn zero_energy() {
        let (m, g, p) = fig2(3.0);
        let p = p.with_energy(Energy::ZERO);
        assert_eq!(phase_on_axis_numeric(&m, &g, &p, true).unwrap().delta_phi, 0.0);
        assert_eq!(phase_on_axis_analytic(&m, &g, &p).unwrap().delta_phi, 0.0);
    }

    #[test]
    fn analytic_limits() {
        let (_, g, p) = fig2(1.0);
        let zr = g.pump_rayleigh_range(2.45).unwrap();
        // Ratio to the infinite-crystal limit.
        let thick = fig2(3.0).0;
        let phi = phase_on_axis_analytic(&thick, &g, &p).unwrap().delta_phi;
        let k = 2.0 * PI * 2.45 * 1.6e-18 / 800e-9;
        let peak = crate::beam::peak_intensity(&p, g.pump_waist).si();
        let inf = 2.0 * k * zr.si() * peak * PI / 2.0;
        let expect = 2.0 / PI * (3e-3 / (2.0 * zr.si())).atan();
        assert!((phi / inf - expect).abs() < 1e-14);
        // Thin-crystal limit.
        let thin = fig2(1e-4).0;
        let phi = phase_on_axis_analytic(&thin, &g, &p).unwrap().delta_phi;
        assert!(((phi - k * peak * 1e-7) / phi).abs() < 1e-6);
    }

    #[test]
    fn off_axis_envelope() {
        let on = PhaseResult::exact(2.0, false);
        let w0 = Length::from_um(10.0);
        assert_eq!(phase_off_axis(Length::ZERO, &on, w0), 2.0);
        assert!((phase_off_axis(w0, &on, w0) - 2.0 * (-2f64).exp()).abs() < 1e-15);
        assert!(phase_off_axis(Length::from_mm(1.0), &on, w0) < 1e-300);
    }

    #[test]
    fn dispersion_gap_grows_with_thickness() {
        let gap = |l| {
            let (m, g, p) = fig2(l);
            let off = phase_on_axis_numeric(&m, &g, &p, false).unwrap().delta_phi;
            let on = phase_on_axis_numeric(&m, &g, &p, true).unwrap().delta_phi;
            (off - on) / off
        };
        assert!(gap(1.0) < gap(2.0));
        assert!(gap(2.0) < gap(3.0));
        assert!(gap(3.0) < gap(5.0));
    }

    #[test]
    fn focus_offset_closed_form() {
        let (m, mut g, p) = fig2(3.0);
        g.focus_offset = Length::from_mm(0.4);
        let num = phase_on_axis_numeric(&m, &g, &p, false).unwrap().delta_phi;
        let ana = phase_on_axis_analytic(&m, &g, &p).unwrap().delta_phi;
        assert!(((num - ana) / ana).abs() < 1e-9);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn linear_in_energy_and_n2(k in 0.1f64..10.0, disp: bool, l_mm in 0.1f64..5.0) {
            let (m, g, p) = fig2(l_mm);
            let base = phase_on_axis_numeric(&m, &g, &p, disp).unwrap().delta_phi;
            let e = phase_on_axis_numeric(&m, &g, &p.with_energy(p.energy * k), disp).unwrap().delta_phi;
            let m2 = KerrMedium { n2: m.n2 * k, ..m };
            let n = phase_on_axis_numeric(&m2, &g, &p, disp).unwrap().delta_phi;
            proptest::prop_assert!(((e / base) - k).abs() < 1e-9 * k);
            proptest::prop_assert!(((n / base) - k).abs() < 1e-9 * k);
        }

        // With dispersion on, the focus sits ever deeper behind the entrance
        // face as L grows, and the curve turns over near 3.75 mm.
        #[test]
        fn monotone_in_thickness(l_mm in 0.1f64..5.0, dl in 0.01f64..1.0, disp: bool) {
            proptest::prop_assume!(!disp || l_mm + dl <= 3.5);
            let (m, g, p) = fig2(l_mm);
            let (m2, _, _) = fig2(l_mm + dl);
            let a = phase_on_axis_numeric(&m, &g, &p, disp).unwrap().delta_phi;
            let b = phase_on_axis_numeric(&m2, &g, &p, disp).unwrap().delta_phi;
            proptest::prop_assert!(b > a);
        }

        #[test]
        fn dispersion_never_increases_phase(l_mm in 0.01f64..5.0) {
            let (m, g, p) = fig2(l_mm);
            let a = phase_on_axis_numeric(&m, &g, &p, true).unwrap().delta_phi;
            let b = phase_on_axis_numeric(&m, &g, &p, false).unwrap().delta_phi;
            proptest::prop_assert!(a <= b);
        }

        #[test]
        fn crossing_angle_is_thickness_substitution(deg in 0.0f64..80.0, disp: bool) {
            let (m, mut g, p) = fig2(3.0);
            g.crossing_angle = Angle::from_degrees(deg);
            let tilted = phase_on_axis_numeric(&m, &g, &p, disp).unwrap().delta_phi;
            let short = m.with_thickness(m.thickness * g.crossing_angle.si().cos());
            g.crossing_angle = Angle::ZERO;
            let straight = phase_on_axis_numeric(&short, &g, &p, disp).unwrap().delta_phi;
            proptest::prop_assert_eq!(tilted, straight);
        }
    }
}
