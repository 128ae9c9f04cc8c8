//! Exact rational scalars and the small amount of vector arithmetic the
//! polytope code needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A point or direction in `Q^r`.
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn vector(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn to_i64(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Overflow(format!("{x} is not an integer")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

/// Scales `v` by a positive rational so that it becomes a primitive integer
/// vector. Returns the integer vector and the factor used. The zero vector is
/// returned unchanged with factor one.
pub fn primitive(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (ints, Rational::new(lcm, g))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q` (and tolerates surrounding whitespace).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(","))
}

/// Display adapter for slices of rationals.
pub struct VecDisplay<'a>(pub &'a [Rational]);

impl fmt::Display for VecDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vector(self.0))
    }
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}
