use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoreError;
use crate::filtration::Filtration;

/// A point of the discrete time axis: a grid time `0..=T` or `∞`.
///
/// The derived order puts every finite time below `Infinity`, which is the
/// order the whole engine relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimePoint {
    Finite(usize),
    Infinity,
}

impl TimePoint {
    pub fn is_finite(self) -> bool {
        matches!(self, TimePoint::Finite(_))
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            TimePoint::Finite(t) => Some(t),
            TimePoint::Infinity => None,
        }
    }

    /// The censoring operator `a ∤ b`: `a` when `a ≤ b`, `∞` when `a > b`.
    ///
    /// At time `b`, `a ∤ b` is the observable portion of `a`: either the
    /// exact value (the time has occurred) or no information beyond "not
    /// yet", encoded as `∞`. It is strictly finer information than `a ∧ b`.
    pub fn nmid(self, b: TimePoint) -> TimePoint {
        if self <= b {
            self
        } else {
            TimePoint::Infinity
        }
    }

    /// Plain minimum `a ∧ b`, kept alongside [`TimePoint::nmid`] so the gap
    /// between the two remains observable.
    pub fn meet(self, b: TimePoint) -> TimePoint {
        self.min(b)
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimePoint::Finite(t) => write!(f, "{t}"),
            TimePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl From<usize> for TimePoint {
    fn from(t: usize) -> Self {
        TimePoint::Finite(t)
    }
}

impl Serialize for TimePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            TimePoint::Finite(t) => serializer.serialize_u64(*t as u64),
            TimePoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for TimePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(t) => Ok(TimePoint::Finite(t as usize)),
            Raw::Str(s) if s == "inf" || s == "∞" => Ok(TimePoint::Infinity),
            Raw::Str(s) => s
                .parse::<usize>()
                .map(TimePoint::Finite)
                .map_err(|_| serde::de::Error::custom(format!("invalid time point {s:?}"))),
        }
    }
}

/// A random time: one grid-or-∞ value per outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTime(pub Vec<TimePoint>);

impl RandomTime {
    pub fn new(values: Vec<TimePoint>) -> Self {
        RandomTime(values)
    }

    /// Constant time `t` on a space of `n` outcomes.
    pub fn constant(t: TimePoint, n: usize) -> Self {
        RandomTime(vec![t; n])
    }

    pub fn from_finite(values: &[usize]) -> Self {
        RandomTime(values.iter().map(|&t| TimePoint::Finite(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, outcome: usize) -> TimePoint {
        self.0[outcome]
    }

    pub fn values(&self) -> &[TimePoint] {
        &self.0
    }

    /// Pointwise `τ ∤ t` for a deterministic horizon `t`.
    pub fn nmid_at(&self, t: TimePoint) -> Vec<TimePoint> {
        self.0.iter().map(|&v| v.nmid(t)).collect()
    }

    /// Pointwise `τ ∧ t`.
    pub fn meet_at(&self, t: TimePoint) -> Vec<TimePoint> {
        self.0.iter().map(|&v| v.meet(t)).collect()
    }

    /// Pointwise maximum `σ ∨ ρ` of two random times.
    pub fn sup(&self, other: &RandomTime) -> RandomTime {
        RandomTime(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// Checks every value lies on the grid of `f` or equals `∞`.
    pub fn check_on_grid(&self, f: &Filtration) -> Result<(), CoreError> {
        for &v in &self.0 {
            if let TimePoint::Finite(t) = v {
                if t > f.horizon() {
                    return Err(CoreError::InvalidModel(format!(
                        "random time value {t} exceeds grid horizon {}",
                        f.horizon()
                    )));
                }
            }
        }
        Ok(())
    }
}
