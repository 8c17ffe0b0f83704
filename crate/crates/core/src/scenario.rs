//! Scenario files and material presets.
//!
//! A scenario is flat structured text: `key = value` lines grouped under
//! `[medium]`, `[geometry]`, `[pulse]` and `[run]`. Physical quantities are
//! always written as `value unit`.
//!
//! ```text
//! [medium]
//! preset = BBS
//! thickness = 3 mm
//!
//! [geometry]
//! wavelength = 800 nm
//! pump_diameter = 23.7 um
//! probe_diameter = 18.5 um
//!
//! [pulse]
//! average_power = 1.8 W
//! repetition_rate = 1 GHz
//! duration = 80 fs
//!
//! [run]
//! label = bbs-3mm
//! dispersion = true
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::beam::{BeamGeometry, KerrMedium, PulseSpec};
use crate::error::{Error, Result};
use crate::quantities::{
    pulse_energy_from_power, Angle, Dimension, Energy, Frequency, Gvd, Length, Measured, Power, Time,
};
use crate::temporal::{Convention, DEFAULT_SAMPLES};

/// Named material constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialPreset {
    pub name: &'static str,
    pub n: f64,
    /// m²/W
    pub n2: f64,
    /// fs²/mm
    pub gvd_fs2_per_mm: f64,
}

impl MaterialPreset {
    pub fn medium(&self, thickness: Length) -> Result<KerrMedium> {
        KerrMedium::new(self.n, self.n2, Gvd::from_fs2_per_mm(self.gvd_fs2_per_mm), thickness)
    }
}

/// Bismuth borosilicate glass at 800 nm.
pub const BBS: MaterialPreset = MaterialPreset {
    name: "BBS",
    n: 2.45,
    n2: 1.6e-18,
    gvd_fs2_per_mm: 1057.19,
};

/// Fused silica at 800 nm.
pub const SIO2: MaterialPreset = MaterialPreset {
    name: "SiO2",
    n: 1.47,
    n2: 2.7e-20,
    gvd_fs2_per_mm: 36.16,
};

pub const PRESETS: [MaterialPreset; 2] = [BBS, SIO2];

pub fn preset(name: &str) -> Result<MaterialPreset> {
    PRESETS
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .copied()
        .ok_or_else(|| {
            let known: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
            Error::config(format!("unknown material preset `{name}` (known: {})", known.join(", ")))
        })
}

/// How the pulse energy was specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergySource {
    Direct(Energy),
    Train { average_power: Power, repetition_rate: Frequency },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub medium: KerrMedium,
    pub geometry: BeamGeometry,
    pub pulse: PulseSpec,
    pub energy_source: EnergySource,
    pub dispersion: bool,
    pub convention: Convention,
    pub samples: usize,
}

/// Every accepted `section.key`.
pub const KEYS: &[&str] = &[
    "medium.preset",
    "medium.n",
    "medium.n2",
    "medium.gvd",
    "medium.thickness",
    "geometry.wavelength",
    "geometry.pump_diameter",
    "geometry.probe_diameter",
    "geometry.crossing_angle",
    "geometry.focus_offset",
    "pulse.energy",
    "pulse.average_power",
    "pulse.repetition_rate",
    "pulse.duration",
    "pulse.center",
    "run.label",
    "run.dispersion",
    "run.convention",
    "run.samples",
];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    /// 0 for command-line overrides.
    line: usize,
}

/// Parsed but not yet validated key/value pairs.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut section: Option<String> = None;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse { line, message: "unterminated section header".into() })?
                    .trim();
                if !["medium", "geometry", "pulse", "run"].contains(&name) {
                    return Err(Error::Parse { line, message: format!("unknown section [{name}]") });
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Parse { line, message: format!("expected `key = value`, found `{content}`") })?;
            let section = section
                .as_deref()
                .ok_or_else(|| Error::Parse { line, message: "key outside of any section".into() })?;
            let full = format!("{section}.{}", key.trim());
            if !KEYS.contains(&full.as_str()) {
                return Err(Error::Parse { line, message: format!("unknown key `{full}`") });
            }
            let value = unquote(value.trim()).to_string();
            if value.is_empty() {
                return Err(Error::Parse { line, message: format!("`{full}` has no value") });
            }
            if entries.insert(full.clone(), Entry { value, line }).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate key `{full}`") });
            }
        }
        Ok(RawConfig { entries })
    }

    /// Applies a `section.key=value` override on top of the parsed file.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::config(format!("override `{assignment}` is not `section.key=value`")))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::config(format!("override names unknown key `{key}`")));
        }
        let value = unquote(value.trim()).to_string();
        if value.is_empty() {
            return Err(Error::config(format!("override `{key}` has no value")));
        }
        // Energy and power+rate are mutually exclusive; an override of one replaces the other.
        match key {
            "pulse.energy" => {
                self.entries.remove("pulse.average_power");
                self.entries.remove("pulse.repetition_rate");
            }
            "pulse.average_power" | "pulse.repetition_rate" => {
                self.entries.remove("pulse.energy");
            }
            _ => {}
        }
        self.entries.insert(key.to_string(), Entry { value, line: 0 });
        Ok(())
    }

    fn err(&self, key: &str, message: impl Into<String>) -> Error {
        let message = format!("{key}: {}", message.into());
        match self.entries.get(key) {
            Some(e) if e.line > 0 => Error::Parse { line: e.line, message },
            _ => Error::Config(message),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    fn measured(&self, key: &str, dim: Dimension) -> Result<Option<f64>> {
        let Some(text) = self.raw(key) else { return Ok(None) };
        let m: Measured = text.parse().map_err(|e: Error| self.err(key, strip_prefix(&e)))?;
        m.si_as(dim).map(Some).map_err(|e| self.err(key, strip_prefix(&e)))
    }

    fn required(&self, key: &str, dim: Dimension) -> Result<f64> {
        self.measured(key, dim)?
            .ok_or_else(|| Error::config(format!("missing required field `{key}`")))
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        let Some(text) = self.raw(key) else { return Ok(None) };
        let v: f64 = text
            .parse()
            .map_err(|_| self.err(key, format!("`{text}` is not a plain number")))?;
        if !v.is_finite() {
            return Err(self.err(key, "must be finite"));
        }
        Ok(Some(v))
    }

    fn check<T>(&self, key: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| self.err(key, strip_prefix(&e)))
    }

    pub fn into_scenario(self) -> Result<Scenario> {
        // medium
        let base = self
            .raw("medium.preset")
            .map(|name| preset(name).map_err(|e| self.err("medium.preset", strip_prefix(&e))))
            .transpose()?;
        let n = match (self.number("medium.n")?, base) {
            (Some(v), _) => v,
            (None, Some(p)) => p.n,
            (None, None) => return Err(Error::config("missing required field `medium.n` (or `medium.preset`)")),
        };
        let n2 = match (self.raw("medium.n2"), base) {
            (Some(_), _) => self.required("medium.n2", Dimension::NonlinearIndex)?,
            (None, Some(p)) => p.n2,
            (None, None) => return Err(Error::config("missing required field `medium.n2` (or `medium.preset`)")),
        };
        let gvd = match (self.raw("medium.gvd"), base) {
            (Some(_), _) => Gvd::from_si(self.required("medium.gvd", Dimension::Gvd)?),
            (None, Some(p)) => Gvd::from_fs2_per_mm(p.gvd_fs2_per_mm),
            (None, None) => return Err(Error::config("missing required field `medium.gvd` (or `medium.preset`)")),
        };
        let thickness = Length::from_si(self.required("medium.thickness", Dimension::Length)?);
        let medium = KerrMedium { n, n2, gvd, thickness };
        for (key, r) in [
            ("medium.n", check_field(n >= 1.0, "must be >= 1")),
            ("medium.n2", check_field(n2 > 0.0, "must be > 0")),
            ("medium.gvd", check_field(gvd.si() >= 0.0, "must be >= 0")),
            ("medium.thickness", check_field(thickness.si() > 0.0, "must be > 0")),
        ] {
            self.check(key, r)?;
        }

        // geometry
        let wavelength = Length::from_si(self.required("geometry.wavelength", Dimension::Length)?);
        let pump = Length::from_si(self.required("geometry.pump_diameter", Dimension::Length)?);
        let probe = Length::from_si(self.required("geometry.probe_diameter", Dimension::Length)?);
        let angle = Angle::from_si(self.measured("geometry.crossing_angle", Dimension::Angle)?.unwrap_or(0.0));
        let focus = Length::from_si(self.measured("geometry.focus_offset", Dimension::Length)?.unwrap_or(0.0));
        self.check("geometry.wavelength", check_field(wavelength.si() > 0.0, "must be > 0"))?;
        self.check("geometry.pump_diameter", check_field(pump.si() > 0.0, "must be > 0"))?;
        self.check("geometry.probe_diameter", check_field(probe.si() > 0.0, "must be > 0"))?;
        self.check(
            "geometry.crossing_angle",
            check_field((0.0..std::f64::consts::FRAC_PI_2).contains(&angle.si()), "must lie in [0, 90) deg"),
        )?;
        let geometry = BeamGeometry {
            wavelength,
            pump_waist: pump / 2.0,
            probe_waist: probe / 2.0,
            crossing_angle: angle,
            focus_offset: focus,
        };

        // pulse
        let energy = self.measured("pulse.energy", Dimension::Energy)?;
        let power = self.measured("pulse.average_power", Dimension::Power)?;
        let rate = self.measured("pulse.repetition_rate", Dimension::Frequency)?;
        let energy_source = match (energy, power, rate) {
            (Some(e), None, None) => {
                self.check("pulse.energy", check_field(e >= 0.0, "must be >= 0"))?;
                EnergySource::Direct(Energy::from_si(e))
            }
            (None, Some(p), Some(f)) => {
                let average_power = Power::from_si(p);
                let repetition_rate = Frequency::from_si(f);
                self.check("pulse.repetition_rate", pulse_energy_from_power(average_power, repetition_rate))?;
                EnergySource::Train { average_power, repetition_rate }
            }
            (Some(_), _, _) => {
                return Err(self.err(
                    "pulse.energy",
                    "give either `energy` or `average_power` + `repetition_rate`, not both",
                ))
            }
            (None, Some(_), None) => return Err(Error::config("missing required field `pulse.repetition_rate`")),
            (None, None, Some(_)) => return Err(Error::config("missing required field `pulse.average_power`")),
            (None, None, None) => {
                return Err(Error::config(
                    "missing required field `pulse.energy` (or `pulse.average_power` + `pulse.repetition_rate`)",
                ))
            }
        };
        let duration = Time::from_si(self.required("pulse.duration", Dimension::Time)?);
        self.check("pulse.duration", check_field(duration.si() > 0.0, "must be > 0"))?;
        let center = Time::from_si(self.measured("pulse.center", Dimension::Time)?.unwrap_or(0.0));
        let pulse = PulseSpec {
            energy: energy_source.energy()?,
            duration,
            center,
        };

        // run
        let label = self.raw("run.label").unwrap_or("scenario").to_string();
        let dispersion = match self.raw("run.dispersion") {
            None => true,
            Some("true") => true,
            Some("false") => false,
            Some(other) => return Err(self.err("run.dispersion", format!("expected true or false, found `{other}`"))),
        };
        let convention = match self.raw("run.convention") {
            None => Convention::default(),
            Some(text) => self.check("run.convention", text.parse())?,
        };
        let samples = match self.raw("run.samples") {
            None => DEFAULT_SAMPLES,
            Some(text) => {
                let n: usize = text
                    .parse()
                    .map_err(|_| self.err("run.samples", format!("`{text}` is not a positive integer")))?;
                self.check("run.samples", check_field(n >= 3, "must be at least 3"))?;
                n
            }
        };

        Ok(Scenario {
            label,
            medium,
            geometry,
            pulse,
            energy_source,
            dispersion,
            convention,
            samples,
        })
    }
}

fn check_field(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(msg.to_string()))
    }
}

/// Message of an error without its "configuration error:" style prefix.
fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Config(m) | Error::Domain(m) | Error::Analysis(m) => m.clone(),
        Error::Parse { message, .. } => message.clone(),
        other => other.to_string(),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

impl EnergySource {
    pub fn energy(&self) -> Result<Energy> {
        match *self {
            EnergySource::Direct(e) => Ok(e),
            EnergySource::Train { average_power, repetition_rate } => {
                pulse_energy_from_power(average_power, repetition_rate)
            }
        }
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        RawConfig::parse(text)?.into_scenario()
    }

    /// Canonical config text; reading it back yields the same SI values.
    pub fn to_config(&self) -> String {
        let mut s = String::new();
        let m = &self.medium;
        let g = &self.geometry;
        let p = &self.pulse;
        let _ = writeln!(s, "[medium]");
        let _ = writeln!(s, "n = {}", m.n);
        let _ = writeln!(s, "n2 = {:e} m2/W", m.n2);
        let _ = writeln!(s, "gvd = {} fs2/mm", m.gvd.as_fs2_per_mm());
        let _ = writeln!(s, "thickness = {} mm", m.thickness.as_mm());
        let _ = writeln!(s, "\n[geometry]");
        let _ = writeln!(s, "wavelength = {} nm", g.wavelength.si() / 1e-9);
        let _ = writeln!(s, "pump_diameter = {} um", (g.pump_waist * 2.0).as_um());
        let _ = writeln!(s, "probe_diameter = {} um", (g.probe_waist * 2.0).as_um());
        let _ = writeln!(s, "crossing_angle = {} deg", g.crossing_angle.as_degrees());
        let _ = writeln!(s, "focus_offset = {} mm", g.focus_offset.as_mm());
        let _ = writeln!(s, "\n[pulse]");
        match self.energy_source {
            EnergySource::Direct(e) => {
                let _ = writeln!(s, "energy = {} nJ", e.as_nj());
            }
            EnergySource::Train { average_power, repetition_rate } => {
                let _ = writeln!(s, "average_power = {} W", average_power.si());
                let _ = writeln!(s, "repetition_rate = {} MHz", repetition_rate.si() / 1e6);
            }
        }
        let _ = writeln!(s, "duration = {} fs", p.duration.as_fs());
        let _ = writeln!(s, "center = {} fs", p.center.as_fs());
        let _ = writeln!(s, "\n[run]");
        let _ = writeln!(s, "label = \"{}\"", self.label);
        let _ = writeln!(s, "dispersion = {}", self.dispersion);
        let _ = writeln!(s, "convention = {}", self.convention);
        let _ = writeln!(s, "samples = {}", self.samples);
        s
    }

    /// One `key = value` line per input, for CSV provenance headers.
    pub fn provenance(&self) -> Vec<String> {
        self.to_config()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect()
    }
}

/// Reads and validates a scenario file, then applies `overrides` in order.
pub fn load_scenario_with(path: &Path, overrides: &[String]) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut raw = RawConfig::parse(&text)?;
    for o in overrides {
        raw.set(o)?;
    }
    raw.into_scenario()
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    load_scenario_with(path, &[])
}
