use crate::error::CoreError;
use crate::partition::Partition;
use crate::time::TimePoint;

/// A step filtration on the grid `0..=T`: one partition per grid time,
/// refinement-monotone in time.
///
/// Step filtrations are automatically right-continuous: the σ-algebra is
/// constant on `[t, t+1)`, so `∩_{s>t} F_s = F_t` holds by construction. The
/// grid carries a distinguished `∞` whose σ-algebra is the one at the
/// horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    partitions: Vec<Partition>,
}

impl Filtration {
    pub fn new(partitions: Vec<Partition>) -> Result<Self, CoreError> {
        if partitions.is_empty() {
            return Err(CoreError::Empty("filtration with no grid times"));
        }
        let n = partitions[0].n_outcomes();
        for (t, p) in partitions.iter().enumerate() {
            if p.n_outcomes() != n {
                return Err(CoreError::Dimension {
                    context: "filtration grid slice",
                    expected: n,
                    got: p.n_outcomes(),
                });
            }
            if t > 0 && !p.refines(&partitions[t - 1]) {
                return Err(CoreError::NotMonotone { t: t - 1 });
            }
        }
        Ok(Filtration { partitions })
    }

    /// The trivial filtration on `n` outcomes over `0..=horizon`.
    pub fn trivial(n_outcomes: usize, horizon: usize) -> Self {
        Filtration {
            partitions: vec![Partition::trivial(n_outcomes); horizon + 1],
        }
    }

    pub fn horizon(&self) -> usize {
        self.partitions.len() - 1
    }

    pub fn n_outcomes(&self) -> usize {
        self.partitions[0].n_outcomes()
    }

    pub fn at(&self, t: usize) -> &Partition {
        &self.partitions[t]
    }

    /// σ-algebra at a time point; `∞` maps to the horizon σ-algebra, which
    /// plays the role of `F_∞` for the finite engine.
    pub fn at_time(&self, t: TimePoint) -> &Partition {
        match t {
            TimePoint::Finite(s) => &self.partitions[s.min(self.horizon())],
            TimePoint::Infinity => self.at_inf(),
        }
    }

    pub fn at_inf(&self) -> &Partition {
        self.partitions.last().expect("nonempty by construction")
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Pointwise join with another filtration over the same grid.
    pub fn join(&self, other: &Filtration) -> Result<Filtration, CoreError> {
        if self.horizon() != other.horizon() {
            return Err(CoreError::Dimension {
                context: "filtration join",
                expected: self.horizon(),
                got: other.horizon(),
            });
        }
        let partitions = self
            .partitions
            .iter()
            .zip(&other.partitions)
            .map(|(p, q)| p.join(q))
            .collect::<Result<Vec<_>, _>>()?;
        Filtration::new(partitions)
    }

    /// True iff `self` is refined by `finer` at every grid time.
    pub fn refined_by(&self, finer: &Filtration) -> bool {
        self.horizon() == finer.horizon()
            && self
                .partitions
                .iter()
                .zip(&finer.partitions)
                .all(|(p, q)| q.refines(p))
    }
}
