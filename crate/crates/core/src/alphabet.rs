//! Movement descriptors, band thresholds and the 48-symbol movement-unit alphabet.
//!
//! A movement unit is the joint (velocity, acceleration, turning-angle) band of one
//! 0.1 s sample. Units are enumerated velocity-major, then acceleration, then
//! turning, and assigned `a..z` followed by `A..V`:
//!
//! ```text
//!            Straight Acute Large Backwards
//! Walk Dec      a       b     c      d
//! Walk Neu      e       f     g      h
//! Walk Acc      i       j     k      l
//! Jog  ...      m..x
//! Run  ...      y..J
//! Sprint ...    K..V
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The movement-unit alphabet in canonical order.
pub const ALPHABET: &[u8; 48] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUV";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VelocityBand {
    Walk,
    Jog,
    Run,
    Sprint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AccelerationBand {
    Deceleration,
    Neutral,
    Acceleration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TurningBand {
    Straight,
    Acute,
    Large,
    Backwards,
}

impl VelocityBand {
    pub const ALL: [VelocityBand; 4] = [Self::Walk, Self::Jog, Self::Run, Self::Sprint];

    pub fn name(self) -> &'static str {
        match self {
            Self::Walk => "Walk",
            Self::Jog => "Jog",
            Self::Run => "Run",
            Self::Sprint => "Sprint",
        }
    }
}

impl AccelerationBand {
    pub const ALL: [AccelerationBand; 3] = [Self::Deceleration, Self::Neutral, Self::Acceleration];

    pub fn name(self) -> &'static str {
        match self {
            Self::Deceleration => "Deceleration",
            Self::Neutral => "Neutral",
            Self::Acceleration => "Acceleration",
        }
    }
}

impl TurningBand {
    pub const ALL: [TurningBand; 4] = [Self::Straight, Self::Acute, Self::Large, Self::Backwards];

    pub fn name(self) -> &'static str {
        match self {
            Self::Straight => "Straight",
            Self::Acute => "Acute-Change",
            Self::Large => "Large-Change",
            Self::Backwards => "Backwards",
        }
    }
}

/// Joint band of one sample; maps one-to-one onto [`ALPHABET`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MovementUnit {
    pub velocity: VelocityBand,
    pub acceleration: AccelerationBand,
    pub turning: TurningBand,
}

impl MovementUnit {
    pub fn new(velocity: VelocityBand, acceleration: AccelerationBand, turning: TurningBand) -> Self {
        Self {
            velocity,
            acceleration,
            turning,
        }
    }

    /// Position of this unit in the canonical enumeration.
    pub fn index(self) -> usize {
        self.velocity as usize * 12 + self.acceleration as usize * 4 + self.turning as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        if index >= ALPHABET.len() {
            return None;
        }
        Some(Self {
            velocity: VelocityBand::ALL[index / 12],
            acceleration: AccelerationBand::ALL[(index / 4) % 3],
            turning: TurningBand::ALL[index % 4],
        })
    }

    pub fn symbol(self) -> char {
        ALPHABET[self.index()] as char
    }

    pub fn from_symbol(symbol: char) -> Option<Self> {
        symbol_index(symbol).and_then(Self::from_index)
    }

    /// All 48 units in canonical order.
    pub fn all() -> impl Iterator<Item = MovementUnit> {
        (0..ALPHABET.len()).filter_map(Self::from_index)
    }

    /// Descriptor concatenation, e.g. `WalkAccelerationStraight`.
    pub fn name(self) -> String {
        format!(
            "{}{}{}",
            self.velocity.name(),
            self.acceleration.name(),
            self.turning.name()
        )
    }
}

impl fmt::Display for MovementUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn symbol_index(symbol: char) -> Option<usize> {
    match symbol {
        'a'..='z' => Some(symbol as usize - 'a' as usize),
        'A'..='V' => Some(26 + symbol as usize - 'A' as usize),
        _ => None,
    }
}

pub fn is_movement_symbol(symbol: char) -> bool {
    symbol_index(symbol).is_some()
}

/// A cut point between two adjacent bands.
///
/// A value equal to `value` falls into the upper band when `upper_inclusive`
/// is set, otherwise into the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub value: f64,
    pub upper_inclusive: bool,
}

impl Boundary {
    pub const fn new(value: f64, upper_inclusive: bool) -> Self {
        Self { value, upper_inclusive }
    }

    fn passed_by(&self, x: f64) -> bool {
        x > self.value || (self.upper_inclusive && x == self.value)
    }
}

/// Band cut points for the three signals. Bands are defined by ordered cuts,
/// so they are disjoint and cover the real line by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandThresholds {
    /// Walk|Jog, Jog|Run, Run|Sprint in m/s.
    pub velocity: [Boundary; 3],
    /// Deceleration|Neutral, Neutral|Acceleration in m/s^2.
    pub acceleration: [Boundary; 2],
    /// Straight|Acute, Acute|Large, Large|Backwards in degrees.
    pub turning: [Boundary; 3],
}

impl Default for BandThresholds {
    fn default() -> Self {
        Self {
            // Walk [0, 1.70), Jog [1.70, 3.90], Run (3.90, 5.00), Sprint [5.00, inf)
            velocity: [
                Boundary::new(1.70, true),
                Boundary::new(3.90, false),
                Boundary::new(5.00, true),
            ],
            // Deceleration (-inf, -0.20], Neutral (-0.20, 0.20), Acceleration [0.20, inf)
            acceleration: [Boundary::new(-0.20, false), Boundary::new(0.20, true)],
            // Straight [0, 10), Acute [10, 45), Large [45, 90), Backwards [90, 180]
            turning: [
                Boundary::new(10.0, true),
                Boundary::new(45.0, true),
                Boundary::new(90.0, true),
            ],
        }
    }
}

fn band_of(x: f64, cuts: &[Boundary]) -> usize {
    cuts.iter().filter(|b| b.passed_by(x)).count()
}

fn check_cuts(name: &str, cuts: &[Boundary]) -> Result<()> {
    if cuts.iter().any(|b| !b.value.is_finite()) {
        return Err(Error::config(format!("{name} thresholds must be finite")));
    }
    if cuts.windows(2).any(|w| w[0].value >= w[1].value) {
        return Err(Error::config(format!("{name} thresholds must be strictly increasing")));
    }
    Ok(())
}

impl BandThresholds {
    pub fn validate(&self) -> Result<()> {
        check_cuts("velocity", &self.velocity)?;
        check_cuts("acceleration", &self.acceleration)?;
        check_cuts("turning", &self.turning)
    }

    pub fn velocity_band(&self, v: f64) -> VelocityBand {
        VelocityBand::ALL[band_of(v, &self.velocity)]
    }

    pub fn acceleration_band(&self, a: f64) -> AccelerationBand {
        AccelerationBand::ALL[band_of(a, &self.acceleration)]
    }

    pub fn turning_band(&self, ta: f64) -> TurningBand {
        TurningBand::ALL[band_of(ta, &self.turning)]
    }

    /// Bands a finite signal triple. Range clamping is the caller's job.
    pub fn unit(&self, velocity: f64, acceleration: f64, turning_angle: f64) -> MovementUnit {
        MovementUnit::new(
            self.velocity_band(velocity),
            self.acceleration_band(acceleration),
            self.turning_band(turning_angle),
        )
    }
}
