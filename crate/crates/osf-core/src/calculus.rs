//! The base calculus: conditional expectation, measurability, martingale
//! tests, compensators, and σ-algebras at random times.
//!
//! Everything here is block arithmetic on partitions. With exact scalars the
//! tower property, martingale identities and compensator equations hold as
//! literal equalities, and the rest of the crate tests them that way.

use std::hash::Hash;

use crate::error::CoreError;
use crate::filtration::Filtration;
use crate::partition::Partition;
use crate::process::Process;
use crate::scalar::Scalar;
use crate::space::FiniteSpace;
use crate::time::{RandomTime, TimePoint};

/// Coarsest common refinement of two partitions (free-function form of
/// [`Partition::join`]).
pub fn join(p1: &Partition, p2: &Partition) -> Result<Partition, CoreError> {
    p1.join(p2)
}

/// σ-algebra generated by a random variable: the partition into level sets.
pub fn generated<L: Eq + Hash>(x: &[L]) -> Partition {
    Partition::from_labels(x)
}

/// Conditional expectation `E[x | p]`: on each block, the probability-weighted
/// average of `x`.
///
/// Blocks always carry positive mass (a `FiniteSpace` has no null outcomes),
/// so the ratio is well defined.
pub fn cond_exp<T: Scalar>(x: &[T], p: &Partition, space: &FiniteSpace<T>) -> Vec<T> {
    debug_assert_eq!(x.len(), space.n_outcomes());
    debug_assert_eq!(p.n_outcomes(), space.n_outcomes());
    let mut num = vec![T::zero(); p.n_blocks()];
    let mut den = vec![T::zero(); p.n_blocks()];
    for w in 0..x.len() {
        let b = p.block_index(w);
        num[b] = num[b].clone() + space.prob(w).clone() * x[w].clone();
        den[b] = den[b].clone() + space.prob(w).clone();
    }
    let avg: Vec<T> = num
        .into_iter()
        .zip(den)
        .map(|(n, d)| n / d)
        .collect();
    (0..x.len()).map(|w| avg[p.block_index(w)].clone()).collect()
}

/// True iff `x` is constant on every block of `p`.
pub fn is_measurable<T: PartialEq>(x: &[T], p: &Partition) -> bool {
    find_non_constant_block(x, p).is_none()
}

/// Witness for a measurability failure: two outcomes in one block where the
/// variable differs.
pub fn find_non_constant_block<T: PartialEq>(x: &[T], p: &Partition) -> Option<(usize, usize)> {
    let mut first_in_block: Vec<Option<usize>> = vec![None; p.n_blocks()];
    for w in 0..x.len() {
        let b = p.block_index(w);
        match first_in_block[b] {
            None => first_in_block[b] = Some(w),
            Some(v) => {
                if x[v] != x[w] {
                    return Some((v, w));
                }
            }
        }
    }
    None
}

/// Outcome of a martingale test, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MartingaleCheck {
    Martingale,
    /// The process is not even adapted: `y[t]` varies inside a block of `f[t]`.
    NotAdapted { t: usize, a: usize, b: usize },
    /// `E[y[t+1] | f[t]] != y[t]` at the given outcome.
    EqualityFails { t: usize, outcome: usize },
}

impl MartingaleCheck {
    pub fn passed(&self) -> bool {
        matches!(self, MartingaleCheck::Martingale)
    }
}

/// Exact martingale test of `y` with respect to `f`.
pub fn is_martingale<T: Scalar>(
    y: &Process<T>,
    f: &Filtration,
    space: &FiniteSpace<T>,
) -> Result<MartingaleCheck, CoreError> {
    check_process_dims(y, f, space)?;
    for t in 0..y.n_times() {
        if let Some((a, b)) = find_non_constant_block(y.at(t), f.at(t)) {
            return Ok(MartingaleCheck::NotAdapted { t, a, b });
        }
    }
    for t in 0..y.horizon() {
        let projected = cond_exp(y.at(t + 1), f.at(t), space);
        for w in 0..space.n_outcomes() {
            if projected[w] != *y.value(t, w) {
                return Ok(MartingaleCheck::EqualityFails { t, outcome: w });
            }
        }
    }
    Ok(MartingaleCheck::Martingale)
}

/// Discrete compensator of a nondecreasing adapted process.
///
/// `A_0 = a_0` and `ΔA_t = E[Δa_t | f[t-1]]` for `t ≥ 1`; then `a - A` is a
/// martingale, which callers can re-check with [`is_martingale`].
pub fn compensator<T: Scalar>(
    a: &Process<T>,
    f: &Filtration,
    space: &FiniteSpace<T>,
) -> Result<Process<T>, CoreError> {
    check_process_dims(a, f, space)?;
    for t in 0..a.n_times() {
        if let Some((x, y)) = find_non_constant_block(a.at(t), f.at(t)) {
            return Err(CoreError::NotAdapted { t, a: x, b: y });
        }
    }
    for t in 1..a.n_times() {
        for w in 0..space.n_outcomes() {
            if a.value(t, w) < a.value(t - 1, w) {
                return Err(CoreError::NotIncreasing { t, outcome: w });
            }
        }
    }
    let n = space.n_outcomes();
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(a.n_times());
    rows.push(a.at(0).to_vec());
    for t in 1..a.n_times() {
        let delta: Vec<T> = (0..n)
            .map(|w| a.value(t, w).clone() - a.value(t - 1, w).clone())
            .collect();
        let projected = cond_exp(&delta, f.at(t - 1), space);
        let row: Vec<T> = (0..n)
            .map(|w| rows[t - 1][w].clone() + projected[w].clone())
            .collect();
        rows.push(row);
    }
    Process::new(rows)
}

/// True iff `{r ≤ t}` is measurable for `f[t]` at every grid time.
pub fn is_stopping_time(r: &RandomTime, f: &Filtration) -> bool {
    first_stopping_violation(r, f).is_none()
}

pub(crate) fn first_stopping_violation(r: &RandomTime, f: &Filtration) -> Option<usize> {
    for t in 0..=f.horizon() {
        let set: Vec<usize> = (0..r.len())
            .filter(|&w| r.at(w) <= TimePoint::Finite(t))
            .collect();
        if !f.at(t).is_measurable_set(&set) {
            return Some(t);
        }
    }
    None
}

/// σ-algebra at a random time, for an arbitrary random time `r`.
///
/// Generated by `X_r · 1_{r<∞}` with `X` ranging over adapted processes: the
/// atoms on `{r = t}` are the traces of `f[t]`, and `{r = ∞}` is a single
/// atom because every generator vanishes there.
pub fn sigma_at_random_time(r: &RandomTime, f: &Filtration) -> Partition {
    let labels: Vec<(TimePoint, usize)> = (0..r.len())
        .map(|w| match r.at(w) {
            TimePoint::Finite(t) => (TimePoint::Finite(t), f.at(t).block_index(w)),
            // one shared atom at infinity
            TimePoint::Infinity => (TimePoint::Infinity, 0),
        })
        .collect();
    Partition::from_labels(&labels)
}

/// σ-algebra at a stopping time; rejects non-stopping times.
pub fn sigma_at_stopping_time(r: &RandomTime, f: &Filtration) -> Result<Partition, CoreError> {
    if let Some(t) = first_stopping_violation(r, f) {
        return Err(CoreError::NotStoppingTime { t });
    }
    Ok(sigma_at_random_time(r, f))
}

fn check_process_dims<T: Clone>(
    y: &Process<T>,
    f: &Filtration,
    space: &FiniteSpace<T>,
) -> Result<(), CoreError>
where
    T: Scalar,
{
    if y.n_outcomes() != space.n_outcomes() {
        return Err(CoreError::Dimension {
            context: "process outcomes",
            expected: space.n_outcomes(),
            got: y.n_outcomes(),
        });
    }
    if y.horizon() != f.horizon() {
        return Err(CoreError::Dimension {
            context: "process grid",
            expected: f.horizon() + 1,
            got: y.n_times(),
        });
    }
    Ok(())
}

/// Checks a process is adapted; returns the first offending (t, a, b).
pub fn check_adapted<T: Scalar>(
    y: &Process<T>,
    f: &Filtration,
) -> Result<(), CoreError> {
    for t in 0..y.n_times() {
        if let Some((a, b)) = find_non_constant_block(y.at(t), f.at(t)) {
            return Err(CoreError::NotAdapted { t, a, b });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    fn uniform(n: usize) -> FiniteSpace<Rat> {
        FiniteSpace::uniform(n).unwrap()
    }

    #[test]
    fn cond_exp_trivial_average() {
        let s = uniform(2);
        let x = vec![rat(0, 1), rat(1, 1)];
        assert_eq!(
            cond_exp(&x, &Partition::trivial(2), &s),
            vec![rat(1, 2), rat(1, 2)]
        );
    }

    #[test]
    fn cond_exp_discrete_is_identity() {
        let s = uniform(3);
        let x = vec![rat(5, 7), rat(-1, 3), rat(2, 1)];
        assert_eq!(cond_exp(&x, &Partition::discrete(3), &s), x);
    }

    #[test]
    fn cond_exp_weighted_blocks() {
        // probs (1/2, 1/4, 1/4), x = (1, 2, 6), p = {{0,1},{2}}
        // block average: (1*1/2 + 2*1/4) / (3/4) = 4/3
        let s = FiniteSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        )
        .unwrap();
        let p = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        let x = vec![rat(1, 1), rat(2, 1), rat(6, 1)];
        assert_eq!(
            cond_exp(&x, &p, &s),
            vec![rat(4, 3), rat(4, 3), rat(6, 1)]
        );
    }

    #[test]
    fn measurability_cases() {
        let p = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(is_measurable(&[1, 1, 1], &Partition::trivial(3)));
        assert!(!is_measurable(&[1, 2, 3], &Partition::trivial(3)));
        assert!(is_measurable(&[1, 1, 2], &p));
    }

    #[test]
    fn doob_martingale_passes() {
        let s = uniform(4);
        let f = Filtration::new(vec![
            Partition::trivial(4),
            Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            Partition::discrete(4),
        ])
        .unwrap();
        let xi = vec![rat(3, 1), rat(1, 1), rat(0, 1), rat(8, 1)];
        let rows: Vec<Vec<Rat>> = (0..3).map(|t| cond_exp(&xi, f.at(t), &s)).collect();
        let y = Process::new(rows).unwrap();
        assert!(is_martingale(&y, &f, &s).unwrap().passed());
    }

    #[test]
    fn increasing_deterministic_is_not_martingale() {
        let s = uniform(2);
        let f = Filtration::trivial(2, 2);
        let y = Process::new(vec![
            vec![rat(0, 1); 2],
            vec![rat(1, 1); 2],
            vec![rat(2, 1); 2],
        ])
        .unwrap();
        assert!(!is_martingale(&y, &f, &s).unwrap().passed());
    }

    #[test]
    fn symmetric_walk_is_martingale() {
        // ±1 walk on 4 outcomes (uniform), natural filtration
        let s = uniform(4);
        let step1 = vec![rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)];
        let step2 = vec![rat(2, 1), rat(0, 1), rat(0, 1), rat(-2, 1)];
        let f = Filtration::new(vec![
            Partition::trivial(4),
            Partition::from_labels(&[1, 1, -1, -1]),
            Partition::discrete(4),
        ])
        .unwrap();
        let y = Process::new(vec![vec![rat(0, 1); 4], step1, step2]).unwrap();
        assert!(is_martingale(&y, &f, &s).unwrap().passed());
    }

    #[test]
    fn compensator_deterministic_is_itself() {
        let s = uniform(2);
        let f = Filtration::trivial(2, 2);
        let a = Process::new(vec![
            vec![rat(0, 1); 2],
            vec![rat(1, 1); 2],
            vec![rat(3, 1); 2],
        ])
        .unwrap();
        assert_eq!(compensator(&a, &f, &s).unwrap(), a);
    }

    #[test]
    fn compensator_of_default_indicator() {
        // τ uniform on {1, 2}, trivial filtration, a = 1_{[τ,∞)}
        let s = uniform(2);
        let f = Filtration::trivial(2, 2);
        let a = Process::new(vec![
            vec![rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ])
        .unwrap();
        let comp = compensator(&a, &f, &s).unwrap();
        // ΔA_1 = E[Δa_1] = 1/2, ΔA_2 = E[Δa_2] = 1/2
        assert_eq!(comp.at(1), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(comp.at(2), &[rat(1, 1), rat(1, 1)]);
        // a - A is a martingale (needs the discrete filtration at the end
        // to be adapted; with trivial f it is adapted only if constant, so
        // check the martingale identity directly instead).
        let diff = Process::new(
            (0..3)
                .map(|t| {
                    (0..2)
                        .map(|w| a.value(t, w).clone() - comp.value(t, w).clone())
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        for t in 0..2 {
            let proj = cond_exp(diff.at(t + 1), f.at(t), &s);
            assert_eq!(&proj, diff.at(t));
        }
    }

    #[test]
    fn compensator_rejects_non_monotone() {
        let s = uniform(2);
        let f = Filtration::trivial(2, 1);
        let a = Process::new(vec![vec![rat(1, 1); 2], vec![rat(0, 1); 2]]).unwrap();
        assert!(matches!(
            compensator(&a, &f, &s),
            Err(CoreError::NotIncreasing { .. })
        ));
    }

    #[test]
    fn sigma_at_constant_time_is_that_sigma_algebra() {
        let f = Filtration::new(vec![
            Partition::trivial(3),
            Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap(),
        ])
        .unwrap();
        let r = RandomTime::constant(TimePoint::Finite(1), 3);
        assert_eq!(sigma_at_stopping_time(&r, &f).unwrap(), *f.at(1));
    }

    #[test]
    fn sigma_at_infinity_is_trivial() {
        let f = Filtration::new(vec![Partition::discrete(3)]).unwrap();
        let r = RandomTime::constant(TimePoint::Infinity, 3);
        assert_eq!(
            sigma_at_stopping_time(&r, &f).unwrap(),
            Partition::trivial(3)
        );
    }

    #[test]
    fn sigma_at_two_point_stopping_time() {
        // two outcomes, f discrete from t=1, r = [1, ∞]
        let f = Filtration::new(vec![Partition::trivial(2), Partition::discrete(2)]).unwrap();
        let r = RandomTime::new(vec![TimePoint::Finite(1), TimePoint::Infinity]);
        assert_eq!(sigma_at_stopping_time(&r, &f).unwrap(), Partition::discrete(2));
    }

    #[test]
    fn rejects_non_stopping_time() {
        // r anticipates: varies at t=0 under the trivial σ-algebra
        let f = Filtration::trivial(2, 1);
        let r = RandomTime::new(vec![TimePoint::Finite(0), TimePoint::Finite(1)]);
        assert!(matches!(
            sigma_at_stopping_time(&r, &f),
            Err(CoreError::NotStoppingTime { t: 0 })
        ));
    }
}
