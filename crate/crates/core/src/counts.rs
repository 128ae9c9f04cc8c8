//! Lattice-point counting functionals `N`, `N°`, `N'` and their
//! Weyl-weighted analogues `S`, `S°`, `S'`, together with degrees,
//! Itaka dimension and dilation interpolation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{count_lattice_points, for_each_lattice_point, ShiftedLattice};
use crate::linalg;
use crate::polytope::{AffineSpan, Mode, Polytope};
use crate::rational::{self, Rational};
use crate::weyl::WeightPoly;

fn parity_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn count_n(p: &Polytope, lattice: &ShiftedLattice) -> Result<u64> {
    count_lattice_points(p, lattice, Mode::Closed)
}

pub fn count_n_interior(p: &Polytope, lattice: &ShiftedLattice) -> Result<u64> {
    count_lattice_points(p, lattice, Mode::RelativeInterior)
}

/// `N'(P) = (-1)^{dim P} N°(P)`.
pub fn count_n_prime(p: &Polytope, lattice: &ShiftedLattice) -> Result<i64> {
    let n = count_n_interior(p, lattice)?;
    let n = i64::try_from(n).map_err(|_| Error::Overflow(format!("interior count {n}")))?;
    Ok(parity_sign(p.dim()) * n)
}

fn check_arity(p: &Polytope, w: &WeightPoly) -> Result<()> {
    if w.arity() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), got: w.arity() });
    }
    Ok(())
}

/// `S(P) = sum of w over (shift + L') ∩ P`.
pub fn sum_s(p: &Polytope, lattice: &ShiftedLattice, w: &WeightPoly) -> Result<Rational> {
    check_arity(p, w)?;
    let mut total = Rational::zero();
    for_each_lattice_point(p, lattice, Mode::Closed, |x| total += w.eval(x))?;
    Ok(total)
}

fn interior_sum_at_negative(p: &Polytope, lattice: &ShiftedLattice, w: &WeightPoly) -> Result<Rational> {
    check_arity(p, w)?;
    let mut total = Rational::zero();
    for_each_lattice_point(p, lattice, Mode::RelativeInterior, |x| total += w.eval(&rational::neg(x)))?;
    Ok(total)
}

/// `S°(P) = (-1)^d sum_{x in relint P} w(-x)` with `d = moment_degree(P, w)`.
pub fn sum_s_interior(p: &Polytope, lattice: &ShiftedLattice, w: &WeightPoly) -> Result<Rational> {
    let s = interior_sum_at_negative(p, lattice, w)?;
    Ok(s * Rational::from_integer(BigInt::from(parity_sign(moment_degree(p, w)))))
}

/// `S'(P) = (-1)^{dim P + d} S°(P)`, the value at `m = -1` of the
/// dilation polynomial `m -> S(mP, m shift)`.
pub fn sum_s_prime(p: &Polytope, lattice: &ShiftedLattice, w: &WeightPoly) -> Result<Rational> {
    let s = interior_sum_at_negative(p, lattice, w)?;
    Ok(s * Rational::from_integer(BigInt::from(parity_sign(p.dim()))))
}

/// Number of factors of `w` that vary on `span`.
pub fn restricted_degree(w: &WeightPoly, span: &AffineSpan) -> usize {
    w.restricted_degree(span)
}

/// Degree of `w` on the linear span of the cone over `P`. This is the
/// extra dimension contributed by the fibers of the Newton-Okounkov body.
pub fn moment_degree(p: &Polytope, w: &WeightPoly) -> usize {
    w.restricted_degree(&p.linear_hull())
}

/// `kappa = dim P + moment_degree(P, w)`.
pub fn itaka(p: &Polytope, w: &WeightPoly) -> usize {
    p.dim() + moment_degree(p, w)
}

/// `S(mP, m shift)` for the `m`-th dilate.
pub fn dilated_sum(p: &Polytope, lattice: &ShiftedLattice, w: &WeightPoly, m: i64) -> Result<Rational> {
    let mr = Rational::from_integer(BigInt::from(m));
    let lm = lattice.with_shift(rational::scale(lattice.shift(), &mr))?;
    sum_s(&p.dilate(&mr), &lm, w)
}

/// A polynomial in one variable with rational coefficients, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, m: i64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(m)))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = rational::fmt_rational(c);
            parts.push(match i {
                0 => c,
                1 => format!("{c}*m"),
                _ => format!("{c}*m^{i}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Fits a polynomial of degree at most `degree_bound` through
/// `m = 1..=degree_bound+1` and checks it exactly at the next two values.
pub fn interpolate_dilation<F>(mut f: F, degree_bound: usize) -> Result<UniPoly>
where
    F: FnMut(i64) -> Result<Rational>,
{
    let npts = degree_bound + 1;
    let mut rows = Vec::with_capacity(npts);
    let mut rhs = Vec::with_capacity(npts);
    for m in 1..=npts as i64 {
        let mr = Rational::from_integer(BigInt::from(m));
        let mut row = Vec::with_capacity(npts);
        let mut pw = Rational::one();
        for _ in 0..npts {
            row.push(pw.clone());
            pw *= &mr;
        }
        rows.push(row);
        rhs.push(f(m)?);
    }
    let coeffs = linalg::solve_square(&rows, &rhs).expect("Vandermonde matrix at distinct nodes is invertible");
    let poly = UniPoly::new(coeffs);
    for m in (npts as i64 + 1)..=(npts as i64 + 2) {
        let actual = f(m)?;
        let predicted = poly.eval_int(m);
        if actual != predicted {
            return Err(Error::NotPolynomial { m, residual: rational::fmt_rational(&(actual - predicted)) });
        }
    }
    Ok(poly)
}
