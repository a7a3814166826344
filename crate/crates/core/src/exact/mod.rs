//! Exact arithmetic: rationals, integer matrices, univariate rational
//! functions and polynomial matrices.

mod intmat;
mod polymat;
mod ratfun;
mod upoly;

pub use intmat::{smith_normal_form, IntMatrix, Snf};
pub use polymat::{determinant, pfaffian, pfaffian_of, rank_over_function_field, PfaffianError, PolyMatrix};
pub use ratfun::{Factored, LinearFactor, RationalFunction};
pub use upoly::QPoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

use num_traits::{One, Zero};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(t.parse().ok()?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
