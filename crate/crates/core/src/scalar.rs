//! Numeric values a utility matrix may carry.
//!
//! Solvers only ever add utilities and compare the sums, so any ordered
//! additive group works. The crate root fixes [`crate::Rational`] as the
//! default; integer types are exact too, and floats are accepted for
//! exploratory use (ties are then only as good as the rounding).

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed};

pub trait Utility: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// Sum of a sequence of utilities; zero for an empty sequence.
    fn total<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        values
            .into_iter()
            .fold(Self::zero(), |acc, v| acc + v.clone())
    }

    /// False for values that cannot be totally ordered (NaN).
    fn is_comparable(&self) -> bool {
        self.partial_cmp(self).is_some()
    }
}

impl Utility for i32 {}
impl Utility for i64 {}
impl Utility for i128 {}
impl Utility for f32 {}
impl Utility for f64 {}
impl<T> Utility for Ratio<T> where
    T: Clone + num_integer::Integer + Signed + Debug + Send + Sync + 'static
{
}
