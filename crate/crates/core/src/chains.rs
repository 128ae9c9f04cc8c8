//! The ring of convex chains: integer combinations of indicator functions of
//! closed polytopes, multiplied by Minkowski convolution.
//!
//! Representations are not unique (`[0,2] = [0,1] + [1,2] - {1}`), so
//! equality of chains is equality of the functions they define, decided
//! exactly by [`ConvexChain::is_zero`].

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{for_each_lattice_point, ShiftedLattice};
use crate::linalg;
use crate::polytope::{Halfspace, Mode, Polytope};
use crate::rational::{self, dot, primitive, Rational, Vector};
use crate::weyl::WeightPoly;

#[derive(Clone, Debug)]
pub struct ConvexChain {
    ambient: usize,
    terms: BTreeMap<Polytope, i64>,
}

impl ConvexChain {
    pub fn zero(ambient: usize) -> Self {
        ConvexChain { ambient, terms: BTreeMap::new() }
    }

    /// `chi_{{0}}`, the multiplicative unit.
    pub fn unit(ambient: usize) -> Self {
        ConvexChain::of(&Polytope::point(rational::zeros(ambient)))
    }

    pub fn of(p: &Polytope) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p.clone(), 1);
        ConvexChain { ambient: p.ambient_dim(), terms }
    }

    pub fn from_terms(ambient: usize, terms: impl IntoIterator<Item = (Polytope, i64)>) -> Result<Self> {
        let mut c = ConvexChain::zero(ambient);
        for (p, n) in terms {
            if p.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: p.ambient_dim() });
            }
            c.add_term(p, n);
        }
        Ok(c)
    }

    fn add_term(&mut self, p: Polytope, n: i64) {
        if n == 0 {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(n);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += n;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Polytope, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &ConvexChain) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    pub fn add(&self, other: &ConvexChain) -> Result<ConvexChain> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, &n) in &other.terms {
            out.add_term(p.clone(), n);
        }
        Ok(out)
    }

    pub fn negate(&self) -> ConvexChain {
        ConvexChain { ambient: self.ambient, terms: self.terms.iter().map(|(p, &n)| (p.clone(), -n)).collect() }
    }

    pub fn sub(&self, other: &ConvexChain) -> Result<ConvexChain> {
        self.add(&other.negate())
    }

    pub fn scale(&self, k: i64) -> ConvexChain {
        if k == 0 {
            return ConvexChain::zero(self.ambient);
        }
        ConvexChain { ambient: self.ambient, terms: self.terms.iter().map(|(p, &n)| (p.clone(), n * k)).collect() }
    }

    /// Convolution product: `sum n_i m_j chi_{P_i + Q_j}`.
    pub fn mul(&self, other: &ConvexChain) -> Result<ConvexChain> {
        self.check(other)?;
        let mut out = ConvexChain::zero(self.ambient);
        for (p, &n) in &self.terms {
            for (q, &m) in &other.terms {
                out.add_term(p.minkowski_sum(q)?, n * m);
            }
        }
        Ok(out)
    }

    pub fn value_at(&self, x: &[Rational]) -> i64 {
        self.terms.iter().filter(|(p, _)| p.contains(x, Mode::Closed)).map(|(_, &n)| n).sum()
    }

    /// Integral with respect to the Euler characteristic. Every closed
    /// polytope has Euler characteristic one.
    pub fn euler_integral(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Indicator of the relative interior, expanded over closed faces:
    /// `chi_{P°} = sum_F (-1)^{dim P - dim F} chi_F`.
    pub fn relative_interior(p: &Polytope) -> ConvexChain {
        let d = p.dim();
        let mut c = ConvexChain::zero(p.ambient_dim());
        for f in p.faces() {
            let sign = if (d - f.dim()).is_multiple_of(2) { 1 } else { -1 };
            c.add_term(f, sign);
        }
        c
    }

    /// `chi_P^{-1} = (-1)^{dim P} chi_{(-P)°}`.
    pub fn inverse_of_polytope(p: &Polytope) -> ConvexChain {
        let sign = if p.dim().is_multiple_of(2) { 1 } else { -1 };
        ConvexChain::relative_interior(&p.negate()).scale(sign)
    }

    /// `chi_P^{*m}`: the dilate `mP` for `m >= 0`, the inverse of `|m|P`
    /// for `m < 0`.
    pub fn polytope_power(p: &Polytope, m: i64) -> ConvexChain {
        if m >= 0 {
            return ConvexChain::of(&p.dilate(&Rational::from_integer(BigInt::from(m))));
        }
        ConvexChain::inverse_of_polytope(&p.dilate(&Rational::from_integer(BigInt::from(-m))))
    }

    /// `sum_{x in L} w(x) c(x)` over the lattice points of the support.
    pub fn weighted_lattice_sum(&self, lattice: &ShiftedLattice, w: &WeightPoly) -> Result<Rational> {
        if lattice.ambient_dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: lattice.ambient_dim() });
        }
        if w.arity() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: w.arity() });
        }
        let mut pts: BTreeSet<Vector> = BTreeSet::new();
        for p in self.terms.keys() {
            for_each_lattice_point(p, lattice, Mode::Closed, |x| {
                pts.insert(x.clone());
            })?;
        }
        let mut total = Rational::zero();
        for x in &pts {
            let v = self.value_at(x);
            if v != 0 {
                total += w.eval(x) * Rational::from_integer(BigInt::from(v));
            }
        }
        Ok(total)
    }

    /// True when the chain is the zero function.
    ///
    /// A chain vanishes iff its pushforward to every line does. Pushing
    /// `chi_P` along `xi` gives the interval between the extreme values of
    /// `xi` on `P`, and a chain of closed intervals vanishes iff the
    /// coefficients at left endpoints cancel and those at right endpoints
    /// cancel. For generic `xi` the right endpoint of `P` comes from the
    /// vertex whose normal cone contains `xi`, so the chain vanishes iff
    /// at every vertex `v` the normal cones of the terms having `v` as a
    /// vertex sum to zero almost everywhere.
    pub fn is_zero(&self) -> bool {
        let mut at_vertex: BTreeMap<&Vector, BTreeMap<Polytope, i64>> = BTreeMap::new();
        for (p, &n) in &self.terms {
            for v in p.vertices() {
                *at_vertex.entry(v).or_default().entry(normal_cone(p, v)).or_insert(0) += n;
            }
        }
        at_vertex.into_values().all(|cones| {
            let terms: Vec<HTerm> = cones
                .into_iter()
                .filter(|(_, n)| *n != 0)
                .map(|(c, n)| HTerm {
                    coeff: n,
                    ineq: c.inequalities().iter().map(|h| (h.normal.clone(), h.offset.clone())).collect(),
                })
                .collect();
            vanishes_almost_everywhere(terms, self.ambient)
        })
    }

    /// Replaces a chain that is the zero function by the empty chain.
    pub fn simplified(self) -> ConvexChain {
        if !self.terms.is_empty() && self.is_zero() {
            ConvexChain::zero(self.ambient)
        } else {
            self
        }
    }
}

impl PartialEq for ConvexChain {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        if self.terms == other.terms {
            return true;
        }
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for ConvexChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, &n) in &self.terms {
            let verts: Vec<String> = p.vertices().iter().map(|v| rational::fmt_vector(v)).collect();
            if !first {
                f.write_str(if n < 0 { " - " } else { " + " })?;
            } else if n < 0 {
                f.write_str("-")?;
            }
            if n.abs() != 1 {
                write!(f, "{}*", n.abs())?;
            }
            write!(f, "chi[{}]", verts.join(" "))?;
            first = false;
        }
        Ok(())
    }
}

/// Normal cone of `p` at its vertex `v`, cut off by the cube
/// `[-1, 1]^d`. Lower-dimensional `p` give full-dimensional cones too.
fn normal_cone(p: &Polytope, v: &Vector) -> Polytope {
    let d = p.ambient_dim();
    let mut ineqs: Vec<Halfspace> = p
        .vertices()
        .iter()
        .filter(|w| *w != v)
        .map(|w| Halfspace::new(rational::sub(w, v), Rational::zero()))
        .collect();
    for i in 0..d {
        for s in [1, -1] {
            let mut e = rational::zeros(d);
            e[i] = Rational::from_integer(BigInt::from(s));
            ineqs.push(Halfspace::new(e, Rational::one()));
        }
    }
    Polytope::from_hrep(d, &ineqs, &[]).expect("a bounded cone section containing the origin")
}

/// A term carried through the sweep as raw constraints, so slices never
/// need vertex enumeration.
#[derive(Clone)]
struct HTerm {
    coeff: i64,
    ineq: Vec<(Vector, Rational)>,
}

impl HTerm {
    /// Drops constant rows; `None` if one of them is violated.
    fn clean(mut self) -> Option<HTerm> {
        let mut feasible = true;
        self.ineq.retain(|(a, b)| {
            if rational::is_zero_vec(a) {
                feasible &= !b.is_negative();
                false
            } else {
                true
            }
        });
        feasible.then_some(self)
    }

    fn contains(&self, x: &[Rational]) -> bool {
        self.ineq.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    /// Restriction to the hyperplane `x_0 = t`, in the remaining coordinates.
    fn slice(&self, t: &Rational) -> Option<HTerm> {
        let ineq = self.ineq.iter().map(|(a, b)| (a[1..].to_vec(), b - &a[0] * t)).collect();
        HTerm { coeff: self.coeff, ineq }.clean()
    }
}

fn canonical_hyperplane(a: &[Rational], b: &Rational) -> (Vec<BigInt>, Rational) {
    let (mut ints, f) = primitive(a);
    let mut off = b * &f;
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        ints = ints.into_iter().map(|x| -x).collect();
        off = -off;
    }
    (ints, off)
}

/// First coordinates of the vertices of the arrangement of all bounding
/// hyperplanes that lie in some term.
fn critical_levels(terms: &[HTerm], dim: usize) -> Vec<Rational> {
    let planes: BTreeSet<(Vec<BigInt>, Rational)> =
        terms.iter().flat_map(|t| t.ineq.iter()).map(|(a, b)| canonical_hyperplane(a, b)).collect();
    let planes: Vec<(Vector, Rational)> =
        planes.into_iter().map(|(a, b)| (a.into_iter().map(Rational::from_integer).collect(), b)).collect();
    let mut levels: BTreeSet<Rational> = BTreeSet::new();
    if dim == 1 {
        levels.extend(planes.iter().map(|(a, b)| b / &a[0]));
        return levels.into_iter().collect();
    }
    if planes.len() < dim {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let m: Vec<Vector> = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let rhs: Vector = idx.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = linalg::solve_square(&m, &rhs) {
            if !levels.contains(&x[0]) && terms.iter().any(|t| t.contains(&x)) {
                levels.insert(x[0].clone());
            }
        }
        let mut k = dim;
        while k > 0 && idx[k - 1] == planes.len() - dim + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for j in k..dim {
            idx[j] = idx[j - 1] + 1;
        }
    }
    levels.into_iter().collect()
}

/// True when a chain of bounded polyhedra vanishes almost everywhere.
/// Sweeps along the first coordinate: between consecutive critical levels
/// the slices are combinatorially equivalent, so one probe per gap decides.
fn vanishes_almost_everywhere(terms: Vec<HTerm>, dim: usize) -> bool {
    let terms: Vec<HTerm> = terms.into_iter().filter_map(HTerm::clean).filter(|t| t.coeff != 0).collect();
    if terms.is_empty() {
        return true;
    }
    if dim == 0 {
        return terms.iter().map(|t| t.coeff).sum::<i64>() == 0;
    }
    let levels = critical_levels(&terms, dim);
    let two = Rational::from_integer(BigInt::from(2));
    levels.windows(2).all(|w| {
        let t = (&w[0] + &w[1]) / &two;
        let sliced: Vec<HTerm> = terms.iter().filter_map(|term| term.slice(&t)).collect();
        vanishes_almost_everywhere(sliced, dim - 1)
    })
}
