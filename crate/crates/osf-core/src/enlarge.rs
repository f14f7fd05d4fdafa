//! Random times, the censoring operator, the rank/re-ordering algebra, and
//! progressive enlargement of step filtrations.
//!
//! For step filtrations and grid-valued times, the progressive enlargement
//! collapses to a per-time join: for `s ∈ (t, t+1)` one has
//! `F_s ∨ σ(τ ∧ s) = F_t ∨ σ(τ ∤ t)`, so the intersection over `s > t` in the
//! continuous-time definition is already attained at `t`. The engine adopts
//! `G_t = F_t ∨ σ(τ ∤ t)` as the discrete definition, and keeps `τ ∧ t`
//! available so the information gap between the two operators stays
//! observable.

use serde::{Deserialize, Serialize};

use crate::calculus::generated;
use crate::error::CoreError;
use crate::filtration::Filtration;
use crate::partition::Partition;
use crate::time::{RandomTime, TimePoint};

/// `a ∤ b`: `a` if `a ≤ b`, `∞` otherwise (free-function form of
/// [`TimePoint::nmid`]).
pub fn nmid(a: TimePoint, b: TimePoint) -> TimePoint {
    a.nmid(b)
}

/// Result of ranking `k` time values with index tie-breaking.
///
/// `ranks` is a bijection of `1..=k`; `inverse` is its inverse; `sorted[j-1]`
/// is the value of rank `j`, nondecreasing and a permutation of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingResult {
    ranks: Vec<usize>,
    inverse: Vec<usize>,
    sorted: Vec<TimePoint>,
}

impl OrderingResult {
    /// 1-based rank of the i-th input value (i is 0-based).
    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// 0-based index holding the given 1-based rank.
    pub fn index_of_rank(&self, j: usize) -> usize {
        self.inverse[j - 1]
    }

    /// Value of the given 1-based rank.
    pub fn sorted(&self, j: usize) -> TimePoint {
        self.sorted[j - 1]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn sorted_values(&self) -> &[TimePoint] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Ranks the points `(a_i, i)` lexicographically:
/// `R(i) = #{j : a_j < a_i} + #{j < i : a_j = a_i} + 1`.
pub fn rank(values: &[TimePoint]) -> Result<OrderingResult, CoreError> {
    if values.is_empty() {
        return Err(CoreError::Empty("rank of an empty tuple"));
    }
    let k = values.len();
    let mut ranks = vec![0usize; k];
    for i in 0..k {
        let below = values.iter().filter(|&&a| a < values[i]).count();
        let tie = values[..i].iter().filter(|&&a| a == values[i]).count();
        ranks[i] = below + tie + 1;
    }
    let mut inverse = vec![0usize; k];
    for (i, &r) in ranks.iter().enumerate() {
        inverse[r - 1] = i;
    }
    let sorted: Vec<TimePoint> = inverse.iter().map(|&i| values[i]).collect();
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
    Ok(OrderingResult {
        ranks,
        inverse,
        sorted,
    })
}

/// The j-th order statistic (1-based) computed via the subset-union
/// characterization: `↑a(j) ≤ t` iff some j-element subset of the values is
/// entirely `≤ t`.
///
/// Deliberately *not* implemented through [`rank`]; the two routes are
/// cross-checked in tests.
pub fn order_statistic_function(j: usize, values: &[TimePoint]) -> Result<TimePoint, CoreError> {
    let k = values.len();
    if j == 0 || j > k {
        return Err(CoreError::RankOutOfRange { j, k });
    }
    let reached = |t: TimePoint| -> bool {
        // ∃ I ⊆ {1..k}, #I = j, with a_h ≤ t for all h ∈ I
        (0u32..(1 << k)).any(|mask| {
            mask.count_ones() as usize == j
                && (0..k).all(|h| mask & (1 << h) == 0 || values[h] <= t)
        })
    };
    let mut candidates: Vec<TimePoint> = values.to_vec();
    candidates.sort();
    for t in candidates {
        if reached(t) {
            return Ok(t);
        }
    }
    Ok(TimePoint::Infinity)
}

/// Pointwise increasing re-ordering of a family of random times: the j-th
/// entry of the result is the j-th order statistic outcome by outcome.
pub fn order_stat_times(taus: &[RandomTime]) -> Result<Vec<RandomTime>, CoreError> {
    if taus.is_empty() {
        return Err(CoreError::Empty("order statistics of no random times"));
    }
    let n = taus[0].len();
    let m = taus.len();
    let mut out = vec![Vec::with_capacity(n); m];
    for w in 0..n {
        let values: Vec<TimePoint> = taus.iter().map(|tau| tau.at(w)).collect();
        let ord = rank(&values)?;
        for (j, slot) in out.iter_mut().enumerate() {
            slot.push(ord.sorted(j + 1));
        }
    }
    Ok(out.into_iter().map(RandomTime::new).collect())
}

/// Progressive enlargement by a single random time:
/// `G_t = F_t ∨ σ(τ ∤ t)`.
pub fn enlarge_single(f: &Filtration, tau: &RandomTime) -> Result<Filtration, CoreError> {
    if tau.len() != f.n_outcomes() {
        return Err(CoreError::Dimension {
            context: "enlargement outcomes",
            expected: f.n_outcomes(),
            got: tau.len(),
        });
    }
    tau.check_on_grid(f)?;
    let partitions = (0..=f.horizon())
        .map(|t| {
            let obs = generated(&tau.nmid_at(TimePoint::Finite(t)));
            f.at(t).join(&obs)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Filtration::new(partitions)
}

/// Progressive enlargement by several random times, iterated in index order.
///
/// In the discrete collapse the result equals the per-time join of `f` with
/// every `σ(τ_i ∤ t)`, so it does not depend on the order; the suite verifies
/// that independence.
pub fn enlarge_multi(f: &Filtration, taus: &[RandomTime]) -> Result<Filtration, CoreError> {
    if taus.is_empty() {
        return Err(CoreError::Empty("enlargement with no random times"));
    }
    let mut g = f.clone();
    for tau in taus {
        g = enlarge_single(&g, tau)?;
    }
    Ok(g)
}

/// Reserved symbol for "not defaulted yet" in mark paths. Alphabets must not
/// contain it.
pub const PRE_DEFAULT_MARK: &str = "△";

/// Finite mark alphabet (the observable symbols, excluding
/// [`PRE_DEFAULT_MARK`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkAlphabet {
    symbols: Vec<String>,
}

impl MarkAlphabet {
    pub fn new(symbols: Vec<String>) -> Result<Self, CoreError> {
        if symbols.is_empty() {
            return Err(CoreError::Empty("mark alphabet"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s == PRE_DEFAULT_MARK {
                return Err(CoreError::InvalidModel(format!(
                    "alphabet contains the reserved pre-default symbol {PRE_DEFAULT_MARK:?}"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(CoreError::InvalidModel(format!("duplicate mark {s:?}")));
            }
        }
        Ok(MarkAlphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn symbol(&self, idx: usize) -> &str {
        &self.symbols[idx]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

/// A random time paired with a mark revealed at that time.
///
/// Marks are stored as indices into the alphabet. Outcomes with `time = ∞`
/// still carry a mark but it is never observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTime {
    pub time: RandomTime,
    marks: Vec<usize>,
    alphabet: MarkAlphabet,
}

impl MarkedTime {
    pub fn new(
        time: RandomTime,
        mark_symbols: &[String],
        alphabet: MarkAlphabet,
    ) -> Result<Self, CoreError> {
        if mark_symbols.len() != time.len() {
            return Err(CoreError::Dimension {
                context: "marked time",
                expected: time.len(),
                got: mark_symbols.len(),
            });
        }
        let marks = mark_symbols
            .iter()
            .map(|s| {
                alphabet
                    .index_of(s)
                    .ok_or_else(|| CoreError::UnknownMark(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MarkedTime {
            time,
            marks,
            alphabet,
        })
    }

    pub fn from_indices(
        time: RandomTime,
        marks: Vec<usize>,
        alphabet: MarkAlphabet,
    ) -> Result<Self, CoreError> {
        if marks.len() != time.len() {
            return Err(CoreError::Dimension {
                context: "marked time",
                expected: time.len(),
                got: marks.len(),
            });
        }
        if let Some(&m) = marks.iter().find(|&&m| m >= alphabet.len()) {
            return Err(CoreError::UnknownMark(format!("#{m}")));
        }
        Ok(MarkedTime {
            time,
            marks,
            alphabet,
        })
    }

    pub fn mark(&self, outcome: usize) -> usize {
        self.marks[outcome]
    }

    pub fn alphabet(&self) -> &MarkAlphabet {
        &self.alphabet
    }

    /// The observation state at time `t` for one outcome: `None` (pre-default)
    /// before the time, the mark from the time on.
    pub fn observed(&self, outcome: usize, t: TimePoint) -> Option<usize> {
        if self.time.at(outcome) <= t {
            Some(self.marks[outcome])
        } else {
            None
        }
    }

    /// The full mark path `H(0..=horizon)` for one outcome.
    pub fn path(&self, outcome: usize, horizon: usize) -> MarkPath {
        MarkPath(
            (0..=horizon)
                .map(|t| self.observed(outcome, TimePoint::Finite(t)))
                .collect(),
        )
    }

    /// The mark path stopped at `σ`: `H^σ(u) = H(u ∧ σ)`.
    pub fn stopped_path(&self, outcome: usize, sigma: TimePoint, horizon: usize) -> MarkPath {
        MarkPath(
            (0..=horizon)
                .map(|u| {
                    let cut = TimePoint::Finite(u).min(sigma);
                    self.observed(outcome, cut)
                })
                .collect(),
        )
    }
}

/// A mark observation path over the grid: `None` encodes the pre-default
/// symbol, `Some(i)` the i-th alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkPath(pub Vec<Option<usize>>);

impl MarkPath {
    /// The state at the end of the path (what the stopped process reveals).
    pub fn terminal(&self) -> Option<usize> {
        *self.0.last().expect("paths cover the grid")
    }
}

/// Progressive enlargement by marked random times:
/// `G*_t = F_t ∨ σ(H_i(s) : s ≤ t, i ≤ m)`.
///
/// With a singleton alphabet the mark carries no information beyond the time
/// and this reduces to [`enlarge_multi`].
pub fn enlarge_marked(f: &Filtration, mtaus: &[MarkedTime]) -> Result<Filtration, CoreError> {
    if mtaus.is_empty() {
        return Err(CoreError::Empty("enlargement with no marked times"));
    }
    for mt in mtaus {
        if mt.time.len() != f.n_outcomes() {
            return Err(CoreError::Dimension {
                context: "marked enlargement outcomes",
                expected: f.n_outcomes(),
                got: mt.time.len(),
            });
        }
        mt.time.check_on_grid(f)?;
    }
    let partitions: Vec<Partition> = (0..=f.horizon())
        .map(|t| {
            // knowing (H_i(s) : s ≤ t) is knowing (τ_i ∤ t, mark if revealed)
            let mut p = f.at(t).clone();
            for mt in mtaus {
                let labels: Vec<(TimePoint, Option<usize>)> = (0..f.n_outcomes())
                    .map(|w| {
                        let obs_time = mt.time.at(w).nmid(TimePoint::Finite(t));
                        (obs_time, mt.observed(w, TimePoint::Finite(t)))
                    })
                    .collect();
                p = p.join(&generated(&labels))?;
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    Filtration::new(partitions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(t: usize) -> TimePoint {
        TimePoint::Finite(t)
    }

    #[test]
    fn rank_with_ties_breaks_by_index() {
        let r = rank(&[fin(2), fin(2), fin(5)]).unwrap();
        assert_eq!(r.ranks(), &[1, 2, 3]);
        assert_eq!(r.sorted_values(), &[fin(2), fin(2), fin(5)]);
    }

    #[test]
    fn rank_singleton_infinity() {
        let r = rank(&[TimePoint::Infinity]).unwrap();
        assert_eq!(r.ranks(), &[1]);
        assert_eq!(r.sorted(1), TimePoint::Infinity);
    }

    #[test]
    fn rank_cyclic_triple_is_identity_ranks() {
        // three outcomes A, B, C with values (1,2,3), (2,3,1), (3,1,2):
        // on each outcome the sorted values are (1,2,3)
        let taus = vec![
            RandomTime::from_finite(&[1, 2, 3]),
            RandomTime::from_finite(&[2, 3, 1]),
            RandomTime::from_finite(&[3, 1, 2]),
        ];
        let sigmas = order_stat_times(&taus).unwrap();
        for (j, sigma) in sigmas.iter().enumerate() {
            assert_eq!(sigma, &RandomTime::from_finite(&[j + 1, j + 1, j + 1]));
        }
    }

    #[test]
    fn order_statistic_matches_rank() {
        let values = [fin(3), fin(1), fin(2)];
        assert_eq!(order_statistic_function(1, &values).unwrap(), fin(1));
        assert_eq!(order_statistic_function(3, &values).unwrap(), fin(3));
        let tied = [fin(2), fin(2), fin(5)];
        assert_eq!(order_statistic_function(2, &tied).unwrap(), fin(2));
        assert!(order_statistic_function(0, &tied).is_err());
        assert!(order_statistic_function(4, &tied).is_err());
    }

    #[test]
    fn enlarge_by_infinite_time_is_identity() {
        let f = Filtration::new(vec![
            Partition::trivial(3),
            Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap(),
        ])
        .unwrap();
        let tau = RandomTime::constant(TimePoint::Infinity, 3);
        assert_eq!(enlarge_single(&f, &tau).unwrap(), f);
    }

    #[test]
    fn enlarge_three_outcomes() {
        // τ = [1, 2, 2] over the trivial filtration:
        // τ∤1 = [1, ∞, ∞] and τ∤2 = [1, 2, 2], so G_1 = G_2 = {{0},{1,2}}
        let f = Filtration::trivial(3, 2);
        let tau = RandomTime::from_finite(&[1, 2, 2]);
        let g = enlarge_single(&f, &tau).unwrap();
        let expect = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
        assert_eq!(g.at(0), &Partition::trivial(3));
        assert_eq!(g.at(1), &expect);
        assert_eq!(g.at(2), &expect);
        assert!(crate::calculus::is_stopping_time(&tau, &g));
        assert!(f.refined_by(&g));
    }

    #[test]
    fn enlarge_separates_observed_levels() {
        // trivial f, injective τ: G_t separates {τ=s} for s ≤ t, lumps {τ>t}
        let f = Filtration::trivial(4, 3);
        let tau = RandomTime::from_finite(&[1, 2, 3, 3]);
        let g = enlarge_single(&f, &tau).unwrap();
        assert_eq!(
            g.at(2),
            &Partition::from_blocks(4, &[vec![0], vec![1], vec![2, 3]]).unwrap()
        );
    }

    #[test]
    fn multi_base_case_is_single() {
        let f = Filtration::trivial(3, 2);
        let tau = RandomTime::from_finite(&[1, 2, 2]);
        assert_eq!(
            enlarge_multi(&f, std::slice::from_ref(&tau)).unwrap(),
            enlarge_single(&f, &tau).unwrap()
        );
    }

    #[test]
    fn multi_cyclic_triple_reveals_everything_at_one() {
        let f = Filtration::trivial(3, 3);
        let taus = vec![
            RandomTime::from_finite(&[1, 2, 3]),
            RandomTime::from_finite(&[2, 3, 1]),
            RandomTime::from_finite(&[3, 1, 2]),
        ];
        let g = enlarge_multi(&f, &taus).unwrap();
        for t in 1..=3 {
            assert_eq!(g.at(t), &Partition::discrete(3));
        }
    }

    #[test]
    fn marked_singleton_alphabet_matches_multi() {
        let f = Filtration::trivial(4, 2);
        let time = RandomTime::from_finite(&[1, 1, 2, 2]);
        let alphabet = MarkAlphabet::new(vec!["x".into()]).unwrap();
        let mt = MarkedTime::from_indices(time.clone(), vec![0; 4], alphabet).unwrap();
        assert_eq!(
            enlarge_marked(&f, &[mt]).unwrap(),
            enlarge_multi(&f, &[time]).unwrap()
        );
    }

    #[test]
    fn marked_reveals_marks_at_default() {
        // τ = [1,1,2,2], marks = [a,b,a,b] over trivial f:
        // G*_1 = {{0},{1},{2,3}}
        let f = Filtration::trivial(4, 2);
        let time = RandomTime::from_finite(&[1, 1, 2, 2]);
        let alphabet = MarkAlphabet::new(vec!["a".into(), "b".into()]).unwrap();
        let mt = MarkedTime::new(
            time,
            &["a".into(), "b".into(), "a".into(), "b".into()],
            alphabet,
        )
        .unwrap();
        let g = enlarge_marked(&f, &[mt]).unwrap();
        assert_eq!(
            g.at(1),
            &Partition::from_blocks(4, &[vec![0], vec![1], vec![2, 3]]).unwrap()
        );
        assert_eq!(g.at(2), &Partition::discrete(4));
    }

    #[test]
    fn marked_injective_marks_reveal_all_at_default() {
        let f = Filtration::trivial(3, 1);
        let time = RandomTime::from_finite(&[1, 1, 1]);
        let alphabet = MarkAlphabet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let mt = MarkedTime::from_indices(time, vec![0, 1, 2], alphabet).unwrap();
        let g = enlarge_marked(&f, &[mt]).unwrap();
        assert_eq!(g.at(1), &Partition::discrete(3));
    }

    #[test]
    fn alphabet_rejects_reserved_symbol() {
        assert!(MarkAlphabet::new(vec!["a".into(), PRE_DEFAULT_MARK.into()]).is_err());
    }

    #[test]
    fn stopped_path_caps_observation() {
        let alphabet = MarkAlphabet::new(vec!["a".into(), "b".into()]).unwrap();
        let mt = MarkedTime::from_indices(
            RandomTime::from_finite(&[2, 1]),
            vec![0, 1],
            alphabet,
        )
        .unwrap();
        // outcome 0 defaults at 2 with mark a
        assert_eq!(
            mt.path(0, 3),
            MarkPath(vec![None, None, Some(0), Some(0)])
        );
        // stopping at 1 hides the default entirely
        assert_eq!(
            mt.stopped_path(0, fin(1), 3),
            MarkPath(vec![None, None, None, None])
        );
        // stopping at ∞ is no restriction
        assert_eq!(mt.stopped_path(0, TimePoint::Infinity, 3), mt.path(0, 3));
    }
}
