//! Exact probability calculus on finite outcome spaces, built for studying
//! progressively enlarged filtrations.
//!
//! The engine represents σ-algebras as partitions of a finite outcome set and
//! carries every probability in exact rational arithmetic, so that identities
//! between σ-algebras and between processes are decided with zero tolerance.
//! On top of the base calculus ([`calculus`]) it provides:
//!
//! * progressive enlargement of a filtration by single, multiple, and marked
//!   random times ([`enlarge`]),
//! * optional and predictable splitting decompositions of adapted processes,
//!   together with the σ-algebra identity checks they imply ([`split`]),
//! * model constructors and verifiers for the classical hypothesis classes:
//!   Cox times, conditional-density models, the immersion property, measure
//!   changes, and covering families ([`models`]),
//! * a seeded random-model generator and a one-call identity suite used by
//!   the fuzz driver ([`gen`], [`suite`]).
//!
//! All numeric code is generic over a [`Scalar`]; the engine itself is meant
//! to run on the exact alias [`Rat`]. Floating-point instantiations compile
//! and are occasionally useful for quick estimates, but every equality-based
//! check in this crate assumes exact arithmetic.

pub mod calculus;
pub mod catalog;
pub mod enlarge;
pub mod error;
pub mod filtration;
pub mod gen;
pub mod models;
pub mod partition;
pub mod process;
pub mod report;
pub mod scalar;
pub mod space;
pub mod split;
pub mod suite;
pub mod time;

pub use calculus::{
    compensator, cond_exp, generated, is_martingale, is_measurable, is_stopping_time, join,
    sigma_at_random_time, sigma_at_stopping_time, MartingaleCheck,
};
pub use enlarge::{
    enlarge_marked, enlarge_multi, enlarge_single, nmid, order_stat_times,
    order_statistic_function, rank, MarkAlphabet, MarkPath, MarkedTime, OrderingResult,
    PRE_DEFAULT_MARK,
};
pub use error::CoreError;
pub use filtration::Filtration;
pub use partition::Partition;
pub use process::{MultiParamProcess, ParamProcess, PathParamProcess, Process};
pub use scalar::Scalar;
pub use space::FiniteSpace;
pub use split::{
    check_f_tau_equality, check_graph_criterion, check_pre_default_trace,
    check_right_continuity_identity, eval_param_at, split_marked, split_multi, split_predictable,
    split_single, SplitMarked, SplitMulti, SplitSingle,
};
pub use time::{RandomTime, TimePoint};

/// The exact scalar the engine is intended to run on.
pub type Rat = num_rational::BigRational;

/// Shorthand for building a `Rat` from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}
