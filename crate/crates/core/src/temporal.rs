//! Temporal instrument response of the gate and FWHM extraction.
//!
//! Pulse durations are intensity FWHMs throughout, so the temporal gate
//! envelope is `exp(−4·ln2·(t − t0)²/τ²)`.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::beam::{AxialProfile, BeamGeometry, KerrMedium, PulseSpec};
use crate::error::{Error, Result};
use crate::phase::{interaction_medium, kerr_coupling, phase_on_axis_numeric, PHASE_REL_TOL};
use crate::quadrature::{integrate, Tolerance};
use crate::quantities::Time;
use crate::transmittance::efficiency_from_phase;

/// Default number of samples of a response curve.
pub const DEFAULT_SAMPLES: usize = 2001;

/// Default half-width of the time window, in units of the effective gate duration.
pub const DEFAULT_HALF_WINDOW: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// One effective phase, set by the gate efficiency, modulated by a
    /// single Gaussian envelope of the z-averaged broadened duration.
    #[default]
    PaperConstantIntensity,
    /// The phase is integrated along z at every delay with the local pulse
    /// duration, then rescaled so the peak matches the gate efficiency.
    ZResolved,
}

impl Convention {
    pub fn tag(self) -> &'static str {
        match self {
            Convention::PaperConstantIntensity => "paper-constant-intensity",
            Convention::ZResolved => "z-resolved",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper-constant-intensity" => Ok(Convention::PaperConstantIntensity),
            "z-resolved" => Ok(Convention::ZResolved),
            other => Err(Error::config(format!(
                "unknown convention `{other}` (expected paper-constant-intensity or z-resolved)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalResponse {
    pub times: Vec<Time>,
    pub transmittance: Vec<f64>,
    /// `None` when the gate never opens.
    pub fwhm: Option<Time>,
    pub peak_transmittance: f64,
    pub convention: Convention,
    /// FWHM of the gate envelope used for the time axis.
    pub gate_duration: Time,
}

/// Normalized gate envelope at `t`, 1 at the pulse centre and 1/2 at
/// `t0 ± effective_duration/2`.
pub fn gate_profile(t: Time, pulse: &PulseSpec, effective_duration: Time) -> f64 {
    let x = (t - pulse.center) / effective_duration;
    (-4.0 * LN_2 * x * x).exp()
}

/// Crystal-averaged FWHM duration of the dispersing pump over the
/// interaction length.
pub fn effective_duration(medium: &KerrMedium, geom: &BeamGeometry, pulse: &PulseSpec, with_dispersion: bool) -> Time {
    let tau = pulse.duration.si();
    if !with_dispersion {
        return pulse.duration;
    }
    let length = interaction_medium(medium, geom).thickness.si();
    // τ(u) = τ0·√(1 + (a·u)²) with u the propagated distance.
    let x = 4.0 * LN_2 * medium.gvd.si() * length / (tau * tau);
    if x < 1e-8 {
        return pulse.duration;
    }
    let mean = (x * (1.0 + x * x).sqrt() + x.asinh()) / (2.0 * x);
    Time::from_si(tau * mean)
}

#[derive(Debug, Clone, Copy)]
pub struct TemporalOptions {
    pub convention: Convention,
    pub samples: usize,
    /// Explicit `(start, stop)`; defaults to `t0 ± 5·τ_eff`.
    pub window: Option<(Time, Time)>,
}

impl Default for TemporalOptions {
    fn default() -> Self {
        TemporalOptions {
            convention: Convention::default(),
            samples: DEFAULT_SAMPLES,
            window: None,
        }
    }
}

/// Gate transmittance versus probe delay.
pub fn temporal_response(
    medium: &KerrMedium,
    geom: &BeamGeometry,
    pulse: &PulseSpec,
    with_dispersion: bool,
    opts: TemporalOptions,
) -> Result<TemporalResponse> {
    if opts.samples < 3 {
        return Err(Error::config("temporal response needs at least 3 samples"));
    }
    let phase = phase_on_axis_numeric(medium, geom, pulse, with_dispersion)?;
    let efficiency = efficiency_from_phase(&phase, geom)?.transmittance;
    let tau_eff = effective_duration(medium, geom, pulse, with_dispersion);

    let (start, stop) = opts.window.unwrap_or((
        pulse.center - tau_eff * DEFAULT_HALF_WINDOW,
        pulse.center + tau_eff * DEFAULT_HALF_WINDOW,
    ));
    if !(start <= pulse.center && pulse.center <= stop && start < stop) {
        return Err(Error::config("time window must be non-empty and cover the pulse centre"));
    }
    let last = (opts.samples - 1) as f64;
    let times: Vec<Time> = match opts.window {
        // Offsets from the centre, so an odd sample count puts t0 on the grid exactly.
        None => (0..opts.samples)
            .map(|i| pulse.center + tau_eff * (DEFAULT_HALF_WINDOW * (2.0 * i as f64 / last - 1.0)))
            .collect(),
        Some(_) => (0..opts.samples)
            .map(|i| Time::from_si(start.si() + (i as f64 / last) * (stop.si() - start.si())))
            .collect(),
    };

    let zeros = |times: Vec<Time>| TemporalResponse {
        transmittance: vec![0.0; times.len()],
        times,
        fwhm: None,
        peak_transmittance: 0.0,
        convention: opts.convention,
        gate_duration: tau_eff,
    };
    if efficiency <= 0.0 || phase.delta_phi <= 0.0 {
        return Ok(zeros(times));
    }

    let phi_eff = 2.0 * efficiency.sqrt().min(1.0).asin();
    let transmittance: Vec<f64> = match opts.convention {
        Convention::PaperConstantIntensity => times
            .iter()
            .map(|&t| sin2_half(phi_eff * gate_profile(t, pulse, tau_eff)))
            .collect(),
        Convention::ZResolved => {
            let medium = interaction_medium(medium, geom);
            let profile = AxialProfile::new(&medium, geom, pulse, with_dispersion)?;
            let k = kerr_coupling(&medium, geom);
            let breaks = profile.breaks();
            let delayed_phase = |t: Time| -> Result<f64> {
                let dt = (t - pulse.center).si();
                let est = integrate(
                    |z| {
                        let r = profile.ratio(z);
                        let x = dt * r / profile.duration;
                        k * profile.intensity(z) * (-4.0 * LN_2 * x * x).exp()
                    },
                    -profile.half_length,
                    profile.half_length,
                    &breaks,
                    Tolerance {
                        abs: 1e-14 * phase.delta_phi,
                        ..Tolerance::relative(PHASE_REL_TOL)
                    },
                )?;
                Ok(est.value)
            };
            let scale = phi_eff / phase.delta_phi;
            times
                .par_iter()
                .map(|&t| delayed_phase(t).map(|p| sin2_half(scale * p)))
                .collect::<Result<_>>()?
        }
    };

    let peak = transmittance.iter().copied().fold(0.0, f64::max);
    let fwhm = if peak > 0.0 {
        Some(fwhm_of(&times, &transmittance)?)
    } else {
        None
    };
    Ok(TemporalResponse {
        times,
        transmittance,
        fwhm,
        peak_transmittance: peak,
        convention: opts.convention,
        gate_duration: tau_eff,
    })
}

fn sin2_half(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    s * s
}

/// Bisection tolerance on a half-maximum crossing.
const CROSSING_TOL_FS: f64 = 1e-6;

/// Full width at half maximum of a sampled single-peaked curve.
///
/// The maximum is taken from a parabola through the three top samples, so
/// an off-grid peak does not bias the half level. Each half-maximum crossing
/// is bracketed by walking outwards from the peak sample, then located by
/// bisection on a cubic through the four nearest samples.
pub fn fwhm_of(times: &[Time], values: &[f64]) -> Result<Time> {
    if times.len() != values.len() {
        return Err(Error::Analysis(format!(
            "{} times but {} values",
            times.len(),
            values.len()
        )));
    }
    if times.len() < 3 {
        return Err(Error::Analysis("need at least 3 samples".into()));
    }
    let ts: Vec<f64> = times.iter().map(|t| t.as_fs()).collect();
    if ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Analysis("times must be strictly increasing".into()));
    }
    let (peak_idx, peak) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(Error::Analysis("curve has no positive maximum".into()));
    }
    let half = 0.5 * refined_peak(&ts, values, peak_idx);

    let left = (0..peak_idx)
        .rev()
        .find(|&i| values[i] < half)
        .ok_or_else(|| Error::Analysis("no half-maximum crossing left of the peak".into()))?;
    let right = (peak_idx + 1..values.len())
        .find(|&i| values[i] < half)
        .ok_or_else(|| Error::Analysis("no half-maximum crossing right of the peak".into()))?;

    let t_left = crossing(&ts, values, left, half);
    let t_right = crossing(&ts, values, right - 1, half);
    Ok(Time::from_fs(t_right - t_left))
}

/// Vertex of the parabola through the peak sample and its neighbours; the
/// sample itself when it sits on the edge or the fit is not concave.
fn refined_peak(ts: &[f64], values: &[f64], i: usize) -> f64 {
    if i == 0 || i + 1 == values.len() {
        return values[i];
    }
    let (t0, t1, t2) = (ts[i - 1], ts[i], ts[i + 1]);
    let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
    // p(t) = y1 + b·(t − t1) + c·(t − t1)², with b the slope at t1.
    let d01 = (y1 - y0) / (t1 - t0);
    let d12 = (y2 - y1) / (t2 - t1);
    let c = (d12 - d01) / (t2 - t0);
    if !(c < 0.0) {
        return values[i];
    }
    let b = d01 + c * (t1 - t0);
    (y1 - b * b / (4.0 * c)).max(values[i])
}

/// Half crossing inside `[ts[i], ts[i+1]]`, where the samples straddle `level`.
fn crossing(ts: &[f64], values: &[f64], i: usize, level: f64) -> f64 {
    let lo = i.saturating_sub(1).min(ts.len().saturating_sub(4));
    let idx = [lo, lo + 1, lo + 2, lo + 3];
    let interp = |t: f64| -> f64 {
        let mut acc = 0.0;
        for &j in &idx {
            let mut w = 1.0;
            for &m in &idx {
                if m != j {
                    w *= (t - ts[m]) / (ts[j] - ts[m]);
                }
            }
            acc += w * values[j];
        }
        acc - level
    };
    let (mut a, mut b) = (ts[i], ts[i + 1]);
    let mut fa = values[i] - level;
    if fa == 0.0 {
        return a;
    }
    if values[i + 1] - level == 0.0 {
        return b;
    }
    while b - a > CROSSING_TOL_FS {
        let m = 0.5 * (a + b);
        let fm = interp(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
