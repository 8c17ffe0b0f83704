//! Gaussian pump beam and pulse geometry inside the Kerr crystal.
//!
//! The crystal spans `z ∈ [−L/2, L/2]` with the pump waist at `z = 0` unless
//! a focus offset is configured. Dispersion is measured from the entrance
//! face, so the propagated distance at `z` is `z + L/2`.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::quantities::{Angle, Energy, Gvd, Intensity, Length, Time};

/// Material constants and thickness of the Kerr medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrMedium {
    /// Linear refractive index.
    pub n: f64,
    /// Nonlinear index in m²/W.
    pub n2: f64,
    pub gvd: Gvd,
    pub thickness: Length,
}

impl KerrMedium {
    pub fn new(n: f64, n2: f64, gvd: Gvd, thickness: Length) -> Result<Self> {
        let m = KerrMedium {
            n,
            n2,
            gvd,
            thickness,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n >= 1.0) || !self.n.is_finite() {
            return Err(Error::domain(format!("medium.n must be >= 1, got {}", self.n)));
        }
        if !(self.n2 > 0.0) || !self.n2.is_finite() {
            return Err(Error::domain(format!("medium.n2 must be > 0, got {}", self.n2)));
        }
        if !(self.gvd.si() >= 0.0) || !self.gvd.si().is_finite() {
            return Err(Error::domain("medium.gvd must be >= 0"));
        }
        if !(self.thickness.si() > 0.0) || !self.thickness.si().is_finite() {
            return Err(Error::domain("medium.thickness must be > 0"));
        }
        Ok(())
    }

    /// Same medium with thickness replaced.
    pub fn with_thickness(self, thickness: Length) -> Self {
        KerrMedium { thickness, ..self }
    }

    /// Interaction length `L·cos θ` for pump and probe crossing at `angle`.
    pub fn effective_thickness(&self, angle: Angle) -> Length {
        self.thickness * angle.si().cos()
    }
}

/// Wavelength, waists and crossing angle of the pump/probe pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    /// Vacuum wavelength.
    pub wavelength: Length,
    pub pump_waist: Length,
    pub probe_waist: Length,
    pub crossing_angle: Angle,
    /// Pump focus position relative to the crystal centre.
    pub focus_offset: Length,
}

impl BeamGeometry {
    pub fn new(wavelength: Length, pump_waist: Length, probe_waist: Length, crossing_angle: Angle) -> Result<Self> {
        let g = BeamGeometry {
            wavelength,
            pump_waist,
            probe_waist,
            crossing_angle,
            focus_offset: Length::ZERO,
        };
        g.validate()?;
        Ok(g)
    }

    /// Collinear geometry from beam diameters (2w), the convention of the lab tables.
    pub fn from_diameters(wavelength: Length, pump_diameter: Length, probe_diameter: Length) -> Result<Self> {
        Self::new(wavelength, pump_diameter / 2.0, probe_diameter / 2.0, Angle::ZERO)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: Length, name: &str| {
            if v.si() > 0.0 && v.si().is_finite() {
                Ok(())
            } else {
                Err(Error::domain(format!("geometry.{name} must be > 0")))
            }
        };
        positive(self.wavelength, "wavelength")?;
        positive(self.pump_waist, "pump_waist")?;
        positive(self.probe_waist, "probe_waist")?;
        let theta = self.crossing_angle.si();
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::domain("geometry.crossing_angle must lie in [0, 90) degrees"));
        }
        if !self.focus_offset.si().is_finite() {
            return Err(Error::domain("geometry.focus_offset must be finite"));
        }
        Ok(())
    }

    pub fn with_waists(self, pump_waist: Length, probe_waist: Length) -> Self {
        BeamGeometry {
            pump_waist,
            probe_waist,
            ..self
        }
    }

    pub fn pump_rayleigh_range(&self, n: f64) -> Result<Length> {
        rayleigh_range(self.pump_waist, self.wavelength, n)
    }

    pub fn probe_rayleigh_range(&self, n: f64) -> Result<Length> {
        rayleigh_range(self.probe_waist, self.wavelength, n)
    }
}

/// Gate pulse: energy, FWHM duration and arrival time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub energy: Energy,
    /// Intensity FWHM.
    pub duration: Time,
    pub center: Time,
}

impl PulseSpec {
    pub fn new(energy: Energy, duration: Time) -> Result<Self> {
        let p = PulseSpec {
            energy,
            duration,
            center: Time::ZERO,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.energy.si() >= 0.0) || !self.energy.si().is_finite() {
            return Err(Error::domain("pulse.energy must be >= 0"));
        }
        if !(self.duration.si() > 0.0) || !self.duration.si().is_finite() {
            return Err(Error::domain("pulse.duration must be > 0"));
        }
        if !self.center.si().is_finite() {
            return Err(Error::domain("pulse.center must be finite"));
        }
        Ok(())
    }

    pub fn with_energy(self, energy: Energy) -> Self {
        PulseSpec { energy, ..self }
    }
}

/// `π·n·w²/λ`.
pub fn rayleigh_range(waist: Length, wavelength: Length, n: f64) -> Result<Length> {
    if !(waist.si() > 0.0) || !(wavelength.si() > 0.0) || !(n >= 1.0) {
        return Err(Error::domain(format!(
            "rayleigh range needs waist > 0, wavelength > 0, n >= 1 (got {} m, {} m, {n})",
            waist.si(),
            wavelength.si()
        )));
    }
    Ok(Length::from_si(PI * n * waist.si().powi(2) / wavelength.si()))
}

/// Radius at `z` of the ray leaving the waist plane at radius `r0`.
pub fn ray_radius(r0: Length, z: Length, rayleigh: Length) -> Length {
    r0 * (1.0 + (z / rayleigh).powi(2)).sqrt()
}

/// Peak intensity at the entrance face, `2√(ln2)·E / (π^{3/2}·w0²·τ0)`.
pub fn peak_intensity(pulse: &PulseSpec, pump_waist: Length) -> Intensity {
    let w0 = pump_waist.si();
    Intensity::from_si(2.0 * LN_2.sqrt() * pulse.energy.si() / (PI.powf(1.5) * w0 * w0 * pulse.duration.si()))
}

/// Dimensionless broadening of a chirp-free Gaussian pulse after `propagated`
/// metres of GVD: `τ0 / τ(z)`.
pub(crate) fn broadening_ratio(propagated: f64, duration: f64, gvd: f64) -> f64 {
    let x = 4.0 * LN_2 * gvd * propagated / (duration * duration);
    1.0 / (1.0 + x * x).sqrt()
}

/// FWHM duration after `propagated` metres of GVD.
pub fn broadened_duration(propagated: Length, duration: Time, gvd: Gvd) -> Time {
    duration / broadening_ratio(propagated.si(), duration.si(), gvd.si())
}

/// `1/√(τ0⁴ + (4·ln2·φ·(z + L/2))²)`, in 1/s².
pub fn dispersion_factor(z: Length, thickness: Length, duration: Time, gvd: Gvd) -> Result<f64> {
    check_inside(z, thickness)?;
    let tau2 = duration.si().powi(2);
    let chirp = 4.0 * LN_2 * gvd.si() * (z.si() + thickness.si() / 2.0);
    Ok(1.0 / (tau2 * tau2 + chirp * chirp).sqrt())
}

fn check_inside(z: Length, thickness: Length) -> Result<()> {
    let half = thickness.si() / 2.0;
    // Half an ulp of slack so endpoints computed as ±L/2 are accepted.
    let slack = half * 1e-15;
    if z.si() < -half - slack || z.si() > half + slack || !z.si().is_finite() {
        return Err(Error::domain(format!(
            "z = {} mm lies outside the crystal [-{h}, {h}] mm",
            z.as_mm(),
            h = half * 1e3
        )));
    }
    Ok(())
}

/// On-axis pump intensity at `z` inside the crystal.
pub fn on_axis_intensity(
    z: Length,
    medium: &KerrMedium,
    geom: &BeamGeometry,
    pulse: &PulseSpec,
    with_dispersion: bool,
) -> Result<Intensity> {
    check_inside(z, medium.thickness)?;
    let profile = AxialProfile::new(medium, geom, pulse, with_dispersion)?;
    Ok(Intensity::from_si(profile.intensity(z.si())))
}

/// Pre-computed constants of the on-axis intensity, for use inside integrands.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AxialProfile {
    pub peak: f64,
    pub rayleigh: f64,
    pub focus: f64,
    pub half_length: f64,
    pub duration: f64,
    pub gvd: f64,
    pub with_dispersion: bool,
}

impl AxialProfile {
    pub fn new(medium: &KerrMedium, geom: &BeamGeometry, pulse: &PulseSpec, with_dispersion: bool) -> Result<Self> {
        medium.validate()?;
        geom.validate()?;
        pulse.validate()?;
        Ok(AxialProfile {
            peak: peak_intensity(pulse, geom.pump_waist).si(),
            rayleigh: geom.pump_rayleigh_range(medium.n)?.si(),
            focus: geom.focus_offset.si(),
            half_length: medium.thickness.si() / 2.0,
            duration: pulse.duration.si(),
            gvd: medium.gvd.si(),
            with_dispersion,
        })
    }

    /// Local pulse broadening `τ0/τ(z)`; 1 without dispersion.
    pub fn ratio(&self, z: f64) -> f64 {
        if self.with_dispersion {
            broadening_ratio(z + self.half_length, self.duration, self.gvd)
        } else {
            1.0
        }
    }

    pub fn intensity(&self, z: f64) -> f64 {
        let u = (z - self.focus) / self.rayleigh;
        self.peak * self.ratio(z) / (1.0 + u * u)
    }

    /// Break points around the focus that resolve the Lorentzian peak.
    pub fn breaks(&self) -> Vec<f64> {
        let mut v = vec![self.focus];
        let mut k = 1.0;
        while k * self.rayleigh < 4.0 * self.half_length {
            v.push(self.focus - k * self.rayleigh);
            v.push(self.focus + k * self.rayleigh);
            k *= 4.0;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bbs(l_mm: f64) -> KerrMedium {
        KerrMedium::new(2.45, 1.6e-18, Gvd::from_fs2_per_mm(1057.19), Length::from_mm(l_mm)).unwrap()
    }

    fn fig2() -> (KerrMedium, BeamGeometry, PulseSpec) {
        (
            bbs(3.0),
            BeamGeometry::new(Length::from_nm(800.0), Length::from_um(10.0), Length::from_um(10.0), Angle::ZERO).unwrap(),
            PulseSpec::new(Energy::from_nj(1.8), Time::from_fs(80.0)).unwrap(),
        )
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rayleigh_examples() {
        let z = rayleigh_range(Length::from_um(10.0), Length::from_nm(800.0), 2.45).unwrap();
        // π·2.45·1e-10/8e-7
        assert!(rel(z.si(), 9.621_127_501_618_741e-4) < 1e-12);
        assert!((z.as_mm() - 0.962).abs() < 5e-4);
        let z2 = rayleigh_range(Length::from_um(20.0), Length::from_nm(800.0), 2.45).unwrap();
        assert!(rel(z2 / z, 4.0) < 1e-14);
        let row1 = rayleigh_range(Length::from_um(11.85), Length::from_nm(800.0), 2.45).unwrap();
        assert!((row1.as_mm() - 1.351).abs() < 5e-4);
        assert!(rayleigh_range(Length::ZERO, Length::from_nm(800.0), 2.45).is_err());
        assert!(rayleigh_range(Length::from_um(1.0), Length::from_nm(800.0), 0.5).is_err());
    }

    #[test]
    fn ray_radius_examples() {
        let r0 = Length::from_um(5.0);
        let zr = Length::from_mm(1.0);
        assert_eq!(ray_radius(r0, Length::ZERO, zr), r0);
        assert!(rel(ray_radius(r0, zr, zr).as_um(), 5.0 * 2f64.sqrt()) < 1e-14);
        assert_eq!(ray_radius(Length::ZERO, zr, zr).si(), 0.0);
    }

    #[test]
    fn peak_intensity_examples() {
        let (_, geom, pulse) = fig2();
        let i = peak_intensity(&pulse, geom.pump_waist).si();
        // 2·0.8325546·1.8e-9 / (5.568328·1e-10·8e-14)
        assert!(rel(i, 6.729e13) < 1e-3, "{i:e}");
        let zero = peak_intensity(&pulse.with_energy(Energy::ZERO), geom.pump_waist);
        assert_eq!(zero.si(), 0.0);
        let wide = peak_intensity(&pulse, geom.pump_waist * 2.0).si();
        assert!(rel(i / wide, 4.0) < 1e-14);
    }

    #[test]
    fn dispersion_factor_examples() {
        let l = Length::from_mm(3.0);
        let tau = Time::from_fs(80.0);
        let gvd = Gvd::from_fs2_per_mm(1057.19);
        let tau2 = tau.si().powi(2);
        let entry = dispersion_factor(l * -0.5, l, tau, gvd).unwrap();
        assert!(rel(entry * tau2, 1.0) < 1e-14);
        let flat = dispersion_factor(l * 0.3, l, tau, Gvd::ZERO).unwrap();
        assert!(rel(flat * tau2, 1.0) < 1e-14);
        let exit = dispersion_factor(l * 0.5, l, tau, gvd).unwrap() * tau2;
        // 4 ln2 · 1057.19 · 3 / 6400 = 1.3740 → 1/√(1 + 1.888)
        let x: f64 = 4.0 * LN_2 * 1057.19 * 3.0 / 6400.0;
        assert!(rel(exit, 1.0 / (1.0 + x * x).sqrt()) < 1e-12);
        assert!((exit - 0.588).abs() < 1e-3);
        assert!(dispersion_factor(l, l, tau, gvd).is_err());
    }

    #[test]
    fn on_axis_examples() {
        let (m, g, p) = fig2();
        let peak = peak_intensity(&p, g.pump_waist).si();
        let at0 = on_axis_intensity(Length::ZERO, &m, &g, &p, false).unwrap().si();
        assert_eq!(at0, peak);
        let zr = g.pump_rayleigh_range(m.n).unwrap();
        let at_zr = on_axis_intensity(zr, &m, &g, &p, false).unwrap().si();
        assert!(rel(at_zr, peak / 2.0) < 1e-14);
        let disp = on_axis_intensity(Length::ZERO, &m, &g, &p, true).unwrap().si();
        assert!(disp < at0);
        assert!(on_axis_intensity(Length::from_mm(1.6), &m, &g, &p, false).is_err());
    }

    #[test]
    fn validation() {
        assert!(KerrMedium::new(0.9, 1e-18, Gvd::ZERO, Length::from_mm(1.0)).is_err());
        assert!(KerrMedium::new(1.5, 0.0, Gvd::ZERO, Length::from_mm(1.0)).is_err());
        assert!(KerrMedium::new(1.5, 1e-18, Gvd::ZERO, Length::ZERO).is_err());
        assert!(BeamGeometry::new(Length::from_nm(800.0), Length::from_um(1.0), Length::from_um(1.0), Angle::from_degrees(90.0)).is_err());
        assert!(PulseSpec::new(Energy::from_nj(1.0), Time::ZERO).is_err());
    }

    proptest::proptest! {
        #[test]
        fn intensity_symmetry_and_dispersion_ordering(frac in 0.0f64..=1.0, l_mm in 0.1f64..5.0) {
            let (_, g, p) = fig2();
            let m = bbs(l_mm);
            let a = Length::from_mm(l_mm) * (0.5 * frac);
            let plus = on_axis_intensity(a, &m, &g, &p, false).unwrap().si();
            let minus = on_axis_intensity(a * -1.0, &m, &g, &p, false).unwrap().si();
            proptest::prop_assert!(rel(plus, minus) < 1e-14);
            let plus = on_axis_intensity(a, &m, &g, &p, true).unwrap().si();
            let minus = on_axis_intensity(a * -1.0, &m, &g, &p, true).unwrap().si();
            proptest::prop_assert!(plus <= minus);
            let f = dispersion_factor(a, m.thickness, p.duration, m.gvd).unwrap() * p.duration.si().powi(2);
            proptest::prop_assert!(f > 0.0 && f <= 1.0);
        }

        #[test]
        fn ray_radius_scale_free(r0 in 1e-7f64..1e-3, k in 0.1f64..10.0, z in -5e-3f64..5e-3) {
            let zr = Length::from_mm(0.7);
            let a = ray_radius(Length::from_si(r0), Length::from_si(z), zr) / Length::from_si(r0);
            let b = ray_radius(Length::from_si(k * r0), Length::from_si(z), zr) / Length::from_si(k * r0);
            proptest::prop_assert!(rel(a, b) < 1e-13);
        }
    }
}
