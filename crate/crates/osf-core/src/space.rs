use num_traits::Zero;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// A finite probability space: labelled outcomes with strictly positive
/// weights summing to one.
///
/// Strict positivity is deliberate: with no null outcomes, the completion of
/// any sub-σ-algebra is itself, and "almost sure" identities become literal
/// equalities. Every exactness claim downstream leans on this.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace<T> {
    labels: Vec<String>,
    probs: Vec<T>,
}

impl<T: Scalar> FiniteSpace<T> {
    pub fn new(labels: Vec<String>, probs: Vec<T>) -> Result<Self, CoreError> {
        if labels.len() != probs.len() {
            return Err(CoreError::Dimension {
                context: "finite space",
                expected: labels.len(),
                got: probs.len(),
            });
        }
        if labels.is_empty() {
            return Err(CoreError::InvalidSpace("no outcomes".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CoreError::InvalidSpace(format!("duplicate label {l:?}")));
            }
        }
        let mut total = T::zero();
        for (i, p) in probs.iter().enumerate() {
            if *p <= T::zero() {
                return Err(CoreError::InvalidSpace(format!(
                    "outcome {} has non-positive probability {p}",
                    labels[i]
                )));
            }
            total = total + p.clone();
        }
        if total != T::one() {
            return Err(CoreError::InvalidSpace(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(FiniteSpace { labels, probs })
    }

    /// Uniform space with default labels `w0..w{n-1}`.
    pub fn uniform(n: usize) -> Result<Self, CoreError> {
        let mut count = T::zero();
        for _ in 0..n {
            count = count + T::one();
        }
        if n == 0 {
            return Err(CoreError::InvalidSpace("no outcomes".into()));
        }
        let p = T::one() / count;
        Self::new(
            (0..n).map(|i| format!("w{i}")).collect(),
            vec![p; n],
        )
    }

    pub fn n_outcomes(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, outcome: usize) -> &T {
        &self.probs[outcome]
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Total mass of a set of outcomes.
    pub fn mass(&self, set: impl IntoIterator<Item = usize>) -> T {
        let mut total = T::zero();
        for w in set {
            total = total + self.probs[w].clone();
        }
        total
    }

    /// Expectation of a random variable.
    pub fn expectation(&self, x: &[T]) -> T {
        let mut total = T::zero();
        for (p, v) in self.probs.iter().zip(x) {
            total = total + p.clone() * v.clone();
        }
        total
    }

    /// Reweights the space by a strictly positive density with mean one
    /// (an equivalent change of measure).
    pub fn reweight(&self, density: &[T]) -> Result<Self, CoreError> {
        if density.len() != self.n_outcomes() {
            return Err(CoreError::Dimension {
                context: "measure change",
                expected: self.n_outcomes(),
                got: density.len(),
            });
        }
        if density.iter().any(|z| *z <= T::zero()) {
            return Err(CoreError::InvalidModel(
                "measure-change density must be strictly positive".into(),
            ));
        }
        let probs: Vec<T> = self
            .probs
            .iter()
            .zip(density)
            .map(|(p, z)| p.clone() * z.clone())
            .collect();
        Self::new(self.labels.clone(), probs)
    }
}

impl<T: Scalar> FiniteSpace<T> {
    /// Indicator of a predicate as a random variable.
    pub fn indicator(&self, mut pred: impl FnMut(usize) -> bool) -> Vec<T> {
        (0..self.n_outcomes())
            .map(|w| if pred(w) { T::one() } else { T::zero() })
            .collect()
    }
}

pub fn is_zero<T: Zero>(x: &T) -> bool {
    x.is_zero()
}
