//! Unit-carrying scalars.
//!
//! Every quantity stores its value in SI base units. The lab units used in
//! configs and outputs (µm, fs, nJ, fs²/mm, ...) exist only at the boundary,
//! through [`Unit`] and the `from_*`/`as_*` helpers on each type.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Physical dimension of a [`Unit`], used to reject e.g. `thickness = 3 fs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Length,
    Time,
    Energy,
    Power,
    Frequency,
    Angle,
    Gvd,
    Intensity,
    NonlinearIndex,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dimension::Length => "length",
            Dimension::Time => "time",
            Dimension::Energy => "energy",
            Dimension::Power => "power",
            Dimension::Frequency => "frequency",
            Dimension::Angle => "angle",
            Dimension::Gvd => "group velocity dispersion",
            Dimension::Intensity => "intensity",
            Dimension::NonlinearIndex => "nonlinear index",
        };
        f.write_str(s)
    }
}

/// Supported unit tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Nanometer,
    Micrometer,
    Millimeter,
    Meter,
    Femtosecond,
    Picosecond,
    Second,
    Nanojoule,
    Joule,
    Watt,
    Hertz,
    Megahertz,
    Gigahertz,
    Radian,
    Degree,
    FsSquaredPerMm,
    SSquaredPerM,
    WattPerSquareMeter,
    SquareMeterPerWatt,
}

impl Unit {
    pub const ALL: [Unit; 19] = [
        Unit::Nanometer,
        Unit::Micrometer,
        Unit::Millimeter,
        Unit::Meter,
        Unit::Femtosecond,
        Unit::Picosecond,
        Unit::Second,
        Unit::Nanojoule,
        Unit::Joule,
        Unit::Watt,
        Unit::Hertz,
        Unit::Megahertz,
        Unit::Gigahertz,
        Unit::Radian,
        Unit::Degree,
        Unit::FsSquaredPerMm,
        Unit::SSquaredPerM,
        Unit::WattPerSquareMeter,
        Unit::SquareMeterPerWatt,
    ];

    /// Multiplier taking a value in this unit to SI.
    pub fn si_factor(self) -> f64 {
        match self {
            Unit::Nanometer => 1e-9,
            Unit::Micrometer => 1e-6,
            Unit::Millimeter => 1e-3,
            Unit::Meter => 1.0,
            Unit::Femtosecond => 1e-15,
            Unit::Picosecond => 1e-12,
            Unit::Second => 1.0,
            Unit::Nanojoule => 1e-9,
            Unit::Joule => 1.0,
            Unit::Watt => 1.0,
            Unit::Hertz => 1.0,
            Unit::Megahertz => 1e6,
            Unit::Gigahertz => 1e9,
            Unit::Radian => 1.0,
            Unit::Degree => std::f64::consts::PI / 180.0,
            // 1 fs²/mm = 1e-30 s² / 1e-3 m
            Unit::FsSquaredPerMm => 1e-27,
            Unit::SSquaredPerM => 1.0,
            Unit::WattPerSquareMeter => 1.0,
            Unit::SquareMeterPerWatt => 1.0,
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Nanometer | Unit::Micrometer | Unit::Millimeter | Unit::Meter => {
                Dimension::Length
            }
            Unit::Femtosecond | Unit::Picosecond | Unit::Second => Dimension::Time,
            Unit::Nanojoule | Unit::Joule => Dimension::Energy,
            Unit::Watt => Dimension::Power,
            Unit::Hertz | Unit::Megahertz | Unit::Gigahertz => Dimension::Frequency,
            Unit::Radian | Unit::Degree => Dimension::Angle,
            Unit::FsSquaredPerMm | Unit::SSquaredPerM => Dimension::Gvd,
            Unit::WattPerSquareMeter => Dimension::Intensity,
            Unit::SquareMeterPerWatt => Dimension::NonlinearIndex,
        }
    }

    /// Canonical ASCII tag, as written back into configs.
    pub fn tag(self) -> &'static str {
        match self {
            Unit::Nanometer => "nm",
            Unit::Micrometer => "um",
            Unit::Millimeter => "mm",
            Unit::Meter => "m",
            Unit::Femtosecond => "fs",
            Unit::Picosecond => "ps",
            Unit::Second => "s",
            Unit::Nanojoule => "nJ",
            Unit::Joule => "J",
            Unit::Watt => "W",
            Unit::Hertz => "Hz",
            Unit::Megahertz => "MHz",
            Unit::Gigahertz => "GHz",
            Unit::Radian => "rad",
            Unit::Degree => "deg",
            Unit::FsSquaredPerMm => "fs2/mm",
            Unit::SSquaredPerM => "s2/m",
            Unit::WattPerSquareMeter => "W/m2",
            Unit::SquareMeterPerWatt => "m2/W",
        }
    }

    pub fn to_si(self, value: f64) -> f64 {
        value * self.si_factor()
    }

    pub fn from_si(self, si: f64) -> f64 {
        si / self.si_factor()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let u = match s.trim() {
            "nm" => Unit::Nanometer,
            "um" | "µm" | "μm" => Unit::Micrometer,
            "mm" => Unit::Millimeter,
            "m" => Unit::Meter,
            "fs" => Unit::Femtosecond,
            "ps" => Unit::Picosecond,
            "s" => Unit::Second,
            "nJ" => Unit::Nanojoule,
            "J" => Unit::Joule,
            "W" => Unit::Watt,
            "Hz" => Unit::Hertz,
            "MHz" => Unit::Megahertz,
            "GHz" => Unit::Gigahertz,
            "rad" => Unit::Radian,
            "deg" | "degree" | "degrees" | "°" => Unit::Degree,
            "fs2/mm" | "fs²/mm" | "fs^2/mm" => Unit::FsSquaredPerMm,
            "s2/m" | "s²/m" | "s^2/m" => Unit::SSquaredPerM,
            "W/m2" | "W/m²" | "W/m^2" => Unit::WattPerSquareMeter,
            "m2/W" | "m²/W" | "m^2/W" => Unit::SquareMeterPerWatt,
            other => return Err(Error::config(format!("unknown unit tag `{other}`"))),
        };
        Ok(u)
    }
}

/// Converts `value` expressed in the unit named by `tag` to SI.
pub fn convert(value: f64, tag: &str) -> Result<f64> {
    Ok(tag.parse::<Unit>()?.to_si(value))
}

/// A number with its unit, as read from text like `"3 mm"` or `"1.6e-18 m2/W"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub value: f64,
    pub unit: Unit,
}

impl Measured {
    pub fn si(&self) -> f64 {
        self.unit.to_si(self.value)
    }

    /// SI value, checked against the expected dimension.
    pub fn si_as(&self, dim: Dimension) -> Result<f64> {
        if self.unit.dimension() != dim {
            return Err(Error::config(format!(
                "expected a {dim} but `{}` is a {}",
                self.unit,
                self.unit.dimension()
            )));
        }
        Ok(self.si())
    }
}

impl FromStr for Measured {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_whitespace())
            .ok_or_else(|| Error::config(format!("`{s}` needs a unit, e.g. `3 mm`")))?;
        let (num, unit) = s.split_at(split);
        let value: f64 = num
            .parse()
            .map_err(|_| Error::config(format!("`{num}` is not a number")))?;
        if !value.is_finite() {
            return Err(Error::config(format!("`{num}` is not finite")));
        }
        Ok(Measured {
            value,
            unit: unit.parse()?,
        })
    }
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

macro_rules! quantity {
    ($(#[$meta:meta])* $name:ident, $dim:expr) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
        pub struct $name(f64);

        impl $name {
            pub const ZERO: $name = $name(0.0);

            pub const fn from_si(value: f64) -> Self {
                $name(value)
            }

            pub const fn si(self) -> f64 {
                self.0
            }

            pub fn new(value: f64, unit: Unit) -> Result<Self> {
                Measured { value, unit }.si_as($dim).map($name)
            }

            pub fn in_unit(self, unit: Unit) -> f64 {
                debug_assert_eq!(unit.dimension(), $dim);
                unit.from_si(self.0)
            }

            pub fn abs(self) -> Self {
                $name(self.0.abs())
            }

            pub fn max(self, other: Self) -> Self {
                $name(self.0.max(other.0))
            }

            pub fn min(self, other: Self) -> Self {
                $name(self.0.min(other.0))
            }
        }

        impl TryFrom<Measured> for $name {
            type Error = Error;

            fn try_from(m: Measured) -> Result<Self> {
                m.si_as($dim).map($name)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(self.0 * rhs)
            }
        }

        impl Div<f64> for $name {
            type Output = $name;
            fn div(self, rhs: f64) -> $name {
                $name(self.0 / rhs)
            }
        }

        impl Div for $name {
            type Output = f64;
            fn div(self, rhs: $name) -> f64 {
                self.0 / rhs.0
            }
        }
    };
}

quantity!(
    /// Length in metres.
    Length,
    Dimension::Length
);
quantity!(
    /// Time in seconds.
    Time,
    Dimension::Time
);
quantity!(
    /// Energy in joules.
    Energy,
    Dimension::Energy
);
quantity!(Power, Dimension::Power);
quantity!(Frequency, Dimension::Frequency);
quantity!(
    /// Irradiance in W/m².
    Intensity,
    Dimension::Intensity
);
quantity!(
    /// Plane angle in radians.
    Angle,
    Dimension::Angle
);
quantity!(
    /// Group velocity dispersion in s²/m.
    Gvd,
    Dimension::Gvd
);

impl Length {
    pub fn from_nm(v: f64) -> Self {
        Length(v * 1e-9)
    }
    pub fn from_um(v: f64) -> Self {
        Length(v * 1e-6)
    }
    pub fn from_mm(v: f64) -> Self {
        Length(v * 1e-3)
    }
    pub fn as_um(self) -> f64 {
        self.0 / 1e-6
    }
    pub fn as_mm(self) -> f64 {
        self.0 / 1e-3
    }
}

impl Time {
    pub fn from_fs(v: f64) -> Self {
        Time(v * 1e-15)
    }
    pub fn as_fs(self) -> f64 {
        self.0 / 1e-15
    }
}

impl Energy {
    pub fn from_nj(v: f64) -> Self {
        Energy(v * 1e-9)
    }
    pub fn as_nj(self) -> f64 {
        self.0 / 1e-9
    }
}

impl Power {
    pub fn from_watts(v: f64) -> Self {
        Power(v)
    }
}

impl Frequency {
    pub fn from_hz(v: f64) -> Self {
        Frequency(v)
    }
    pub fn from_mhz(v: f64) -> Self {
        Frequency(v * 1e6)
    }
    pub fn from_ghz(v: f64) -> Self {
        Frequency(v * 1e9)
    }
}

impl Angle {
    pub fn from_degrees(v: f64) -> Self {
        Angle(v.to_radians())
    }
    pub fn from_radians(v: f64) -> Self {
        Angle(v)
    }
    pub fn as_degrees(self) -> f64 {
        self.0.to_degrees()
    }
}

impl Gvd {
    pub fn from_fs2_per_mm(v: f64) -> Self {
        Gvd(v * 1e-27)
    }
    pub fn as_fs2_per_mm(self) -> f64 {
        self.0 / 1e-27
    }
}

/// Pulse energy of a pulse train: average power divided by repetition rate.
pub fn pulse_energy_from_power(avg_power: Power, rep_rate: Frequency) -> Result<Energy> {
    if !(rep_rate.si() > 0.0) || !rep_rate.si().is_finite() {
        return Err(Error::domain(format!(
            "repetition rate must be positive, got {} Hz",
            rep_rate.si()
        )));
    }
    if !(avg_power.si() >= 0.0) {
        return Err(Error::domain("average power must be non-negative"));
    }
    Ok(Energy(avg_power.si() / rep_rate.si()))
}
