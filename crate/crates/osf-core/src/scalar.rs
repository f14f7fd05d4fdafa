use std::fmt::{Debug, Display};

use num_traits::Num;

/// Scalar type the engine computes with.
///
/// The bound is a plain field with comparison: enough for conditional
/// expectations, martingale tests and the splitting read-offs. The engine is
/// written against this trait so the same code runs on `BigRational` (exact,
/// the intended instantiation) and on `f32`/`f64` when exactness is not
/// required.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display {}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + Display {}
