//! Root systems, the Weyl dimension polynomial, Weyl orbits and weight
//! polytopes, Gelfand-Zetlin polytopes and Newton-Okounkov polytopes fibered
//! over a moment polytope.
//!
//! Convention: for type A a weight `lambda = (lambda_1, ..., lambda_n)` is
//! dominant when it is *increasing*, `lambda_1 <= ... <= lambda_n`. The
//! positive roots are `e_j - e_i` for `i < j`. Many references use the
//! decreasing convention instead; inputs must be ordered accordingly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::{AffineSpan, Halfspace, Hyperplane, Polytope};
use crate::rational::{self, dot, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    TypeA(usize),
    Explicit,
}

/// Positive roots with a symmetric pairing on the weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank_ambient: usize,
    positive_roots: Vec<Vector>,
    rho: Vector,
    pairing: Vec<Vector>,
}

fn identity(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut r = rational::zeros(n);
            r[i] = Rational::one();
            r
        })
        .collect()
}

impl RootSystem {
    /// `GL(n)` with increasing dominant weights.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidRootSystem("type A needs n >= 1".into()));
        }
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut a = rational::zeros(n);
                a[j] = Rational::one();
                a[i] = -Rational::one();
                roots.push(a);
            }
        }
        let mut rs = RootSystem::explicit(n, roots, None)?;
        rs.family = Family::TypeA(n);
        Ok(rs)
    }

    /// Arbitrary positive roots and pairing (identity when `None`).
    pub fn explicit(rank_ambient: usize, positive_roots: Vec<Vector>, pairing: Option<Vec<Vector>>) -> Result<Self> {
        let pairing = pairing.unwrap_or_else(|| identity(rank_ambient));
        if pairing.len() != rank_ambient || pairing.iter().any(|r| r.len() != rank_ambient) {
            return Err(Error::InvalidRootSystem(
                "pairing must be a square matrix of the weight-space dimension".into(),
            ));
        }
        if !(0..rank_ambient).all(|i| (0..i).all(|j| pairing[i][j] == pairing[j][i])) {
            return Err(Error::InvalidRootSystem("pairing must be symmetric".into()));
        }
        for a in &positive_roots {
            if a.len() != rank_ambient {
                return Err(Error::DimensionMismatch { expected: rank_ambient, got: a.len() });
            }
        }
        let mut rho = rational::zeros(rank_ambient);
        for a in &positive_roots {
            rho = rational::add(&rho, a);
        }
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        rho = rational::scale(&rho, &half);
        let rs = RootSystem { family: Family::Explicit, rank_ambient, positive_roots, rho, pairing };
        for a in &rs.positive_roots {
            if !rs.pair(&rs.rho, a).is_positive() {
                return Err(Error::InvalidRootSystem(format!(
                    "<rho, alpha> must be positive, fails for alpha = {}",
                    rational::fmt_vector(a)
                )));
            }
        }
        Ok(rs)
    }

    /// No roots at all: the torus case, with Weyl polynomial 1.
    pub fn trivial(rank_ambient: usize) -> Self {
        RootSystem::explicit(rank_ambient, Vec::new(), None).expect("trivial root system is valid")
    }

    pub fn rank_ambient(&self) -> usize {
        self.rank_ambient
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Vector {
        &self.rho
    }

    pub fn pairing(&self) -> &[Vector] {
        &self.pairing
    }

    /// `n` when this is the built-in type A system for `GL(n)`.
    pub fn type_a_rank(&self) -> Option<usize> {
        match self.family {
            Family::TypeA(n) => Some(n),
            Family::Explicit => None,
        }
    }

    /// `<u, v> = u^T M v`.
    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(u, &self.apply_pairing(v))
    }

    fn apply_pairing(&self, v: &[Rational]) -> Vector {
        self.pairing.iter().map(|row| dot(row, v)).collect()
    }

    pub fn is_dominant(&self, lambda: &[Rational]) -> bool {
        lambda.len() == self.rank_ambient && self.positive_roots.iter().all(|a| !self.pair(lambda, a).is_negative())
    }

    /// `f(lambda) = prod <lambda + rho, alpha> / <rho, alpha>`.
    pub fn weyl_polynomial(&self) -> WeightPoly {
        let mut scale = Rational::one();
        let factors = self
            .positive_roots
            .iter()
            .map(|a| {
                let lin = self.apply_pairing(a);
                let c = self.pair(&self.rho, a);
                scale /= &c;
                (lin, c)
            })
            .collect();
        WeightPoly { arity: self.rank_ambient, factors, scale }
    }

    fn reflect(&self, v: &[Rational], a: &[Rational]) -> Vector {
        let c = Rational::from_integer(BigInt::from(2)) * self.pair(v, a) / self.pair(a, a);
        rational::sub(v, &rational::scale(a, &c))
    }

    /// Orbit of `lambda` under the group generated by reflections in the
    /// positive roots, sorted and deduplicated.
    pub fn weyl_orbit(&self, lambda: &[Rational]) -> Result<Vec<Vector>> {
        if lambda.len() != self.rank_ambient {
            return Err(Error::DimensionMismatch { expected: self.rank_ambient, got: lambda.len() });
        }
        let mut seen: BTreeSet<Vector> = BTreeSet::new();
        let mut stack = vec![lambda.to_vec()];
        seen.insert(lambda.to_vec());
        while let Some(v) = stack.pop() {
            for a in &self.positive_roots {
                let w = self.reflect(&v, a);
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The dominant chamber `{<lambda, alpha> >= 0}` as inequalities.
    pub fn chamber_inequalities(&self) -> Vec<Halfspace> {
        self.positive_roots
            .iter()
            .map(|a| Halfspace::new(rational::neg(&self.apply_pairing(a)), Rational::zero()))
            .collect()
    }

    /// `P_pi` (hull of the Weyl orbits of `highest_weights`) and its
    /// intersection with the dominant chamber.
    pub fn weight_polytope(&self, highest_weights: &[Vector]) -> Result<(Polytope, Polytope)> {
        if highest_weights.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut pts = BTreeSet::new();
        for l in highest_weights {
            if !self.is_dominant(l) {
                return Err(Error::NotDominant(rational::fmt_vector(l)));
            }
            pts.extend(self.weyl_orbit(l)?);
        }
        let pts: Vec<Vector> = pts.into_iter().collect();
        let p_pi = Polytope::hull(&pts)?;
        let mut ineq = p_pi.inequalities().to_vec();
        ineq.extend(self.chamber_inequalities());
        let p_plus = Polytope::from_hrep(self.rank_ambient, &ineq, p_pi.equalities())?;
        Ok((p_pi, p_plus))
    }

    /// `lambda* = -w0 lambda`; for type A this reverses and negates.
    pub fn dual_weight(&self, lambda: &[Rational]) -> Result<Vector> {
        match self.family {
            Family::TypeA(_) => Ok(lambda.iter().rev().map(|x| -x).collect()),
            Family::Explicit => Err(Error::InvalidRootSystem("dual weights are only built in for type A".into())),
        }
    }

    /// `F(lambda) = f(lambda) * f(lambda*)`, the group-case weight on the
    /// diagonal `lambda -> (lambda, lambda*)`. For type A this is `f^2`.
    pub fn group_weight_polynomial(&self) -> Result<WeightPoly> {
        let Some(n) = self.type_a_rank() else {
            return Err(Error::InvalidRootSystem("the group case is only built in for type A".into()));
        };
        let f = self.weyl_polynomial();
        // lambda* = T lambda with T the reverse-negate matrix
        let id = identity(n);
        let t: Vec<Vector> = (0..n).map(|i| rational::neg(&id[n - 1 - i])).collect();
        let f_star = f.compose_linear(&t);
        Ok(f.mul(&f_star))
    }

    /// Number of positive roots whose pairing is not identically zero on the
    /// given linear subspace.
    pub fn roots_nonzero_on(&self, directions: &[Vector]) -> usize {
        self.positive_roots
            .iter()
            .filter(|a| {
                let lin = self.apply_pairing(a);
                directions.iter().any(|d| !dot(&lin, d).is_zero())
            })
            .count()
    }
}

/// A polynomial on `Q^arity` stored as `scale * prod (linear . x + constant)`.
/// The empty product is the constant `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPoly {
    arity: usize,
    factors: Vec<(Vector, Rational)>,
    scale: Rational,
}

impl WeightPoly {
    pub fn one(arity: usize) -> Self {
        WeightPoly { arity, factors: Vec::new(), scale: Rational::one() }
    }

    pub fn from_factors(arity: usize, factors: Vec<(Vector, Rational)>, scale: Rational) -> Result<Self> {
        for (l, _) in &factors {
            if l.len() != arity {
                return Err(Error::DimensionMismatch { expected: arity, got: l.len() });
            }
        }
        Ok(WeightPoly { arity, factors, scale })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn factors(&self) -> &[(Vector, Rational)] {
        &self.factors
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.scale.is_one()
    }

    /// Number of non-constant affine factors.
    pub fn degree(&self) -> usize {
        self.factors.iter().filter(|(l, _)| !rational::is_zero_vec(l)).count()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(x.len(), self.arity);
        self.factors.iter().fold(self.scale.clone(), |acc, (l, c)| acc * (dot(l, x) + c))
    }

    pub fn mul(&self, other: &WeightPoly) -> WeightPoly {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        WeightPoly { arity: self.arity, factors, scale: &self.scale * &other.scale }
    }

    pub fn square(&self) -> WeightPoly {
        self.mul(self)
    }

    /// `x -> self(T x)` for a square matrix `T` (rows).
    pub fn compose_linear(&self, t: &[Vector]) -> WeightPoly {
        let n = self.arity;
        let factors = self
            .factors
            .iter()
            .map(|(l, c)| {
                let lt: Vector =
                    (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &l[i] * &t[i][j])).collect();
                (lt, c.clone())
            })
            .collect();
        WeightPoly { arity: n, factors, scale: self.scale.clone() }
    }

    /// Number of factors that are non-constant on `span`: a factor counts
    /// when its linear part is nonzero on some direction of the span.
    pub fn restricted_degree(&self, span: &AffineSpan) -> usize {
        self.factors.iter().filter(|(l, _)| span.directions.iter().any(|d| !dot(l, d).is_zero())).count()
    }
}

/// Number of coordinates of a Gelfand-Zetlin pattern of size `n`.
pub fn gz_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of entry `i` (0-based) of pattern row `row` (1-based; row `r`
/// has `n - r` entries). Row 0 is the top row `lambda` and has no index.
pub fn gz_index(n: usize, row: usize, i: usize) -> usize {
    debug_assert!(row >= 1 && row < n && i < n - row);
    // rows 1..row-1 hold (n-1) + ... + (n-row+1) entries
    let before: usize = (1..row).map(|r| n - r).sum();
    before + i
}

/// Homogeneous inequalities `c . (lambda, x) <= 0` cutting out a cone over
/// weight space whose slice at `lambda` is the string polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringCone {
    pub weight_dim: usize,
    pub fiber_dim: usize,
    pub inequalities: Vec<Vector>,
}

impl StringCone {
    pub fn new(weight_dim: usize, fiber_dim: usize, inequalities: Vec<Vector>) -> Result<Self> {
        for c in &inequalities {
            if c.len() != weight_dim + fiber_dim {
                return Err(Error::DimensionMismatch { expected: weight_dim + fiber_dim, got: c.len() });
            }
        }
        Ok(StringCone { weight_dim, fiber_dim, inequalities })
    }

    /// Cone with zero-dimensional fibers (torus case).
    pub fn trivial(weight_dim: usize) -> Self {
        StringCone { weight_dim, fiber_dim: 0, inequalities: Vec::new() }
    }

    /// The Gelfand-Zetlin interlacing cone for `GL(n)`, in coordinates
    /// `(lambda_1..lambda_n, x)` with `x` ordered as in [`gz_index`].
    pub fn gelfand_zetlin(n: usize) -> Self {
        let big_n = gz_dim(n);
        let total = n + big_n;
        let coord = |row: usize, i: usize| if row == 0 { i } else { n + gz_index(n, row, i) };
        let mut ineqs = Vec::new();
        for row in 1..n {
            for i in 0..n - row {
                // above[i] <= c_i <= above[i+1]
                let c = coord(row, i);
                let a = coord(row - 1, i);
                let b = coord(row - 1, i + 1);
                let mut lo = rational::zeros(total);
                lo[a] = Rational::one();
                lo[c] = -Rational::one();
                ineqs.push(lo);
                let mut hi = rational::zeros(total);
                hi[c] = Rational::one();
                hi[b] = -Rational::one();
                ineqs.push(hi);
            }
        }
        StringCone { weight_dim: n, fiber_dim: big_n, inequalities: ineqs }
    }

    /// Fiber over a single weight.
    pub fn fiber(&self, lambda: &[Rational]) -> Result<Polytope> {
        if lambda.len() != self.weight_dim {
            return Err(Error::DimensionMismatch { expected: self.weight_dim, got: lambda.len() });
        }
        let ineqs: Vec<Halfspace> = self
            .inequalities
            .iter()
            .map(|c| {
                let (wl, fx) = c.split_at(self.weight_dim);
                Halfspace::new(fx.to_vec(), -dot(wl, lambda))
            })
            .collect();
        if self.fiber_dim == 0 {
            return if ineqs.iter().all(|h| !h.offset.is_negative()) {
                Ok(Polytope::point(Vec::new()))
            } else {
                Err(Error::EmptyPolyhedron)
            };
        }
        Polytope::from_hrep(self.fiber_dim, &ineqs, &[])
    }
}

/// Gelfand-Zetlin polytope of an increasing weight `lambda` of `GL(n)`, in
/// `Q^{n(n-1)/2}`. Its lattice points index a basis of `V_lambda`.
pub fn gz_polytope(n: usize, lambda: &[Rational]) -> Result<Polytope> {
    if lambda.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lambda.len() });
    }
    if lambda.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotDominant(format!("{} is not increasing", rational::fmt_vector(lambda))));
    }
    StringCone::gelfand_zetlin(n).fiber(lambda)
}

/// Newton-Okounkov polytope over `delta` with the given string cone:
/// `{(lambda, x) : lambda in delta, (lambda, x) in cone}`.
pub fn no_polytope(delta: &Polytope, cone: &StringCone) -> Result<Polytope> {
    let r = delta.ambient_dim();
    if r != cone.weight_dim {
        return Err(Error::DimensionMismatch { expected: cone.weight_dim, got: r });
    }
    let total = r + cone.fiber_dim;
    let pad = |v: &Vector| {
        let mut w = v.clone();
        w.extend(rational::zeros(cone.fiber_dim));
        w
    };
    let mut ineqs: Vec<Halfspace> =
        delta.inequalities().iter().map(|h| Halfspace::new(pad(&h.normal), h.offset.clone())).collect();
    ineqs.extend(cone.inequalities.iter().map(|c| Halfspace::new(c.clone(), Rational::zero())));
    let eqs: Vec<Hyperplane> =
        delta.equalities().iter().map(|h| Hyperplane::new(pad(&h.normal), h.offset.clone())).collect();
    Polytope::from_hrep(total, &ineqs, &eqs)
}
