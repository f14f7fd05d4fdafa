use std::collections::BTreeMap;

use crate::enlarge::MarkPath;
use crate::error::CoreError;
use crate::time::TimePoint;

/// A process on the discrete grid: one value per (time, outcome) pair, with
/// an optional slice of time-∞ values.
#[derive(Debug, Clone, PartialEq)]
pub struct Process<T> {
    values: Vec<Vec<T>>,
    inf_slice: Option<Vec<T>>,
}

impl<T: Clone> Process<T> {
    pub fn new(values: Vec<Vec<T>>) -> Result<Self, CoreError> {
        if values.is_empty() {
            return Err(CoreError::Empty("process with no time slices"));
        }
        let n = values[0].len();
        for (t, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(CoreError::Dimension {
                    context: "process slice",
                    expected: n,
                    got: values[t].len(),
                });
            }
        }
        Ok(Process {
            values,
            inf_slice: None,
        })
    }

    pub fn with_inf_slice(mut self, slice: Vec<T>) -> Result<Self, CoreError> {
        if slice.len() != self.n_outcomes() {
            return Err(CoreError::Dimension {
                context: "process ∞-slice",
                expected: self.n_outcomes(),
                got: slice.len(),
            });
        }
        self.inf_slice = Some(slice);
        Ok(self)
    }

    /// Constant-in-time process equal to `x` at every grid time.
    pub fn constant_in_time(x: Vec<T>, horizon: usize) -> Self {
        Process {
            values: vec![x; horizon + 1],
            inf_slice: None,
        }
    }

    /// Builds a process from a closure over (t, outcome).
    pub fn from_fn(horizon: usize, n_outcomes: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Process {
            values: (0..=horizon)
                .map(|t| (0..n_outcomes).map(|w| f(t, w)).collect())
                .collect(),
            inf_slice: None,
        }
    }

    /// Number of grid times (horizon + 1).
    pub fn n_times(&self) -> usize {
        self.values.len()
    }

    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn n_outcomes(&self) -> usize {
        self.values[0].len()
    }

    pub fn at(&self, t: usize) -> &[T] {
        &self.values[t]
    }

    pub fn inf_slice(&self) -> Option<&[T]> {
        self.inf_slice.as_deref()
    }

    pub fn value(&self, t: usize, outcome: usize) -> &T {
        &self.values[t][outcome]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.values
    }

    /// The process stopped at a random time: `X^R_t(ω) = X_{t ∧ R(ω)}(ω)`.
    pub fn stopped_at(&self, r: &crate::time::RandomTime) -> Process<T> {
        let horizon = self.horizon();
        Process::from_fn(horizon, self.n_outcomes(), |t, w| {
            let cut = match r.at(w) {
                TimePoint::Finite(s) => t.min(s),
                TimePoint::Infinity => t,
            };
            self.values[cut][w].clone()
        })
    }
}

/// A process with one time-or-∞ parameter: a map `u ↦ slice process`.
///
/// Slices are stored sparsely; a missing parameter means the slice was never
/// pinned down by the data that produced it, and consumers must not rely on
/// values there (the canonical convention is zero off-support).
#[derive(Debug, Clone, PartialEq)]
pub struct ParamProcess<T> {
    slices: BTreeMap<TimePoint, Process<T>>,
}

impl<T: Clone> ParamProcess<T> {
    pub fn new() -> Self {
        ParamProcess {
            slices: BTreeMap::new(),
        }
    }

    pub fn from_slices(slices: BTreeMap<TimePoint, Process<T>>) -> Self {
        ParamProcess { slices }
    }

    pub fn insert(&mut self, u: TimePoint, slice: Process<T>) {
        self.slices.insert(u, slice);
    }

    pub fn slice(&self, u: TimePoint) -> Option<&Process<T>> {
        self.slices.get(&u)
    }

    pub fn params(&self) -> impl Iterator<Item = TimePoint> + '_ {
        self.slices.keys().copied()
    }

    pub fn slices(&self) -> &BTreeMap<TimePoint, Process<T>> {
        &self.slices
    }
}

impl<T: Clone> Default for ParamProcess<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// A process with an m-tuple of time-or-∞ parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiParamProcess<T> {
    arity: usize,
    slices: BTreeMap<Vec<TimePoint>, Process<T>>,
}

impl<T: Clone> MultiParamProcess<T> {
    pub fn new(arity: usize) -> Self {
        MultiParamProcess {
            arity,
            slices: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, key: Vec<TimePoint>, slice: Process<T>) {
        debug_assert_eq!(key.len(), self.arity);
        self.slices.insert(key, slice);
    }

    pub fn slice(&self, key: &[TimePoint]) -> Option<&Process<T>> {
        self.slices.get(key)
    }

    pub fn slices(&self) -> &BTreeMap<Vec<TimePoint>, Process<T>> {
        &self.slices
    }
}

/// A process parametered by an m-tuple of stopped mark paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PathParamProcess<T> {
    arity: usize,
    slices: BTreeMap<Vec<MarkPath>, Process<T>>,
}

impl<T: Clone> PathParamProcess<T> {
    pub fn new(arity: usize) -> Self {
        PathParamProcess {
            arity,
            slices: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, key: Vec<MarkPath>, slice: Process<T>) {
        debug_assert_eq!(key.len(), self.arity);
        self.slices.insert(key, slice);
    }

    pub fn slice(&self, key: &[MarkPath]) -> Option<&Process<T>> {
        self.slices.get(key)
    }

    pub fn slices(&self) -> &BTreeMap<Vec<MarkPath>, Process<T>> {
        &self.slices
    }
}
