use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Ambient dimension and truncation bounds.
///
/// Only the parity of `d` enters the sign rules; `d` itself only shifts degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Config {
    pub d: u32,
    pub max_complexity: usize,
    pub max_points: usize,
    pub max_internal: usize,
}

impl Config {
    /// Bounds sized for complexity up to `max_complexity`: at most `2i`
    /// points and `2i - 1` internal vertices.
    pub fn new(d: u32, max_complexity: usize) -> Result<Self> {
        let cfg = Config {
            d,
            max_complexity,
            max_points: 2 * max_complexity.max(1),
            max_internal: (2 * max_complexity).saturating_sub(1),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 3 {
            return Err(Error::Config(format!("d must be at least 3, got {}", self.d)));
        }
        Ok(())
    }

    pub fn d_odd(&self) -> bool {
        self.d % 2 == 1
    }

    /// Internal vertices have degree `-d`.
    pub fn vertex_odd(&self) -> bool {
        self.d_odd()
    }

    /// Segments (edges and chords) have degree `d - 1`.
    pub fn segment_odd(&self) -> bool {
        !self.d_odd()
    }

    /// Reversing a segment multiplies by `(-1)^d`.
    pub fn reversal_sign(&self) -> Sign {
        Sign::from_odd(self.d_odd())
    }

    pub fn check_complexity(&self, i: usize) -> Result<()> {
        if i > self.max_complexity {
            return Err(Error::Truncation {
                what: "complexity",
                value: i,
                bound: self.max_complexity,
            });
        }
        Ok(())
    }

    pub fn check_points(&self, n: usize) -> Result<()> {
        if n > self.max_points {
            return Err(Error::Truncation {
                what: "points",
                value: n,
                bound: self.max_points,
            });
        }
        Ok(())
    }
}

/// A degree-carrying constituent of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrientationElement {
    /// External point `k` (1-based); degree `-1`, present only in totalizations.
    External(u8),
    /// Internal vertex by label; degree `-d`.
    Internal(u8),
    /// Segment by list index; degree `d - 1`.
    Segment(u8),
}

impl OrientationElement {
    pub fn degree(&self, d: u32) -> i64 {
        match self {
            OrientationElement::External(_) => -1,
            OrientationElement::Internal(_) => -(d as i64),
            OrientationElement::Segment(_) => d as i64 - 1,
        }
    }

    pub fn is_odd(&self, d: u32) -> bool {
        self.degree(d).rem_euclid(2) == 1
    }
}
