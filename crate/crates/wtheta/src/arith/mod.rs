//! Exact rational, cyclotomic and q-expansion arithmetic.

mod cyclo;
mod qexp;

pub use cyclo::Cyclo;
pub(crate) use qexp::content;
pub use qexp::{eta_power, QExp, VectorQExp};

use num::traits::Signed;
use num::BigRational;

/// Arbitrary-precision rational, canonical (coprime, positive denominator)
/// by construction of `num::BigRational`.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Reduce a rational into [0, 1), i.e. the canonical representative mod Z.
pub fn frac_mod1(x: &Rat) -> Rat {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < rat(1));
    f
}

/// gcd of two non-negative big integers.
pub fn big_gcd(a: &num::BigInt, b: &num::BigInt) -> num::BigInt {
    num::Integer::gcd(a, b)
}
