//! Shifted sublattices `shift + L'` of `Z^r` and exact lattice-point
//! enumeration in polytopes.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{vertices_of_hrep, Halfspace, Hyperplane, Mode, Polytope};
use crate::rational::{self, ceil_int, dot, floor_int, primitive, Rational, Vector};

/// `shift + span_Z(basis)` inside `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedLattice {
    ambient_dim: usize,
    basis: Vec<Vector>,
    shift: Vector,
}

impl ShiftedLattice {
    pub fn new(ambient_dim: usize, basis: Vec<Vector>, shift: Vector) -> Result<Self> {
        if shift.len() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: shift.len() });
        }
        for b in &basis {
            if b.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: b.len() });
            }
            if !rational::is_integral(b) {
                return Err(Error::InvalidLattice("basis vectors must be integral".into()));
            }
        }
        if linalg::rank(&basis, ambient_dim) != basis.len() {
            return Err(Error::InvalidLattice("basis vectors must be linearly independent".into()));
        }
        Ok(ShiftedLattice { ambient_dim, basis, shift })
    }

    /// `Z^r` with no shift.
    pub fn standard(r: usize) -> Self {
        let basis = (0..r)
            .map(|i| {
                let mut v = rational::zeros(r);
                v[i] = Rational::one();
                v
            })
            .collect();
        ShiftedLattice { ambient_dim: r, basis, shift: rational::zeros(r) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn shift(&self) -> &Vector {
        &self.shift
    }

    pub fn with_shift(&self, shift: Vector) -> Result<Self> {
        ShiftedLattice::new(self.ambient_dim, self.basis.clone(), shift)
    }

    fn is_standard_basis(&self) -> bool {
        self.basis.len() == self.ambient_dim
            && self
                .basis
                .iter()
                .enumerate()
                .all(|(i, b)| b.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    /// Lattice coordinates `y` with `x = shift + B y`, if `x` lies on the
    /// lattice.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        let d = rational::sub(x, &self.shift);
        let y = linalg::solve_columns(&self.basis, &d)?;
        if !rational::is_integral(&y) {
            return None;
        }
        Some(y.into_iter().map(|v| v.to_integer()).collect())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn point(&self, y: &[i64]) -> Vector {
        let mut x = self.shift.clone();
        for (b, &c) in self.basis.iter().zip(y) {
            if c != 0 {
                let c = Rational::from_integer(BigInt::from(c));
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += &c * bi;
                }
            }
        }
        x
    }

    /// Product lattice `self x Z^n` (shift extended by zeros).
    pub fn extend_standard(&self, n: usize) -> Self {
        let r = self.ambient_dim + n;
        let mut basis: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| {
                let mut v = b.clone();
                v.extend(rational::zeros(n));
                v
            })
            .collect();
        for i in 0..n {
            let mut v = rational::zeros(r);
            v[self.ambient_dim + i] = Rational::one();
            basis.push(v);
        }
        let mut shift = self.shift.clone();
        shift.extend(rational::zeros(n));
        ShiftedLattice { ambient_dim: r, basis, shift }
    }
}

/// One integer constraint `coeffs . y <= bound` (or `==` when `eq`).
struct IntConstraint {
    coeffs: Vec<i64>,
    bound: i64,
    eq: bool,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} exceeds 64-bit range during enumeration")))
}

/// Calls `visit` with every point of `(shift + L') ∩ P` (or the relative
/// interior), in lexicographic order of lattice coordinates.
pub fn for_each_lattice_point<F>(p: &Polytope, lattice: &ShiftedLattice, mode: Mode, mut visit: F) -> Result<()>
where
    F: FnMut(&Vector),
{
    if p.ambient_dim() != lattice.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: lattice.ambient_dim(), got: p.ambient_dim() });
    }
    let q = lattice.rank();
    let basis = lattice.basis();
    let shift = lattice.shift();
    // substitute x = shift + B y
    let subst = |normal: &[Rational], offset: &Rational| -> (Vector, Rational) {
        let c: Vector = basis.iter().map(|b| dot(normal, b)).collect();
        (c, offset - dot(normal, shift))
    };

    let mut cons: Vec<IntConstraint> = Vec::new();
    let mut ineq_y = Vec::new();
    let mut eq_y = Vec::new();
    for h in p.inequalities() {
        let (c, b) = subst(&h.normal, &h.offset);
        ineq_y.push(Halfspace::new(c.clone(), b.clone()));
        let (ci, f) = primitive(&c);
        if ci.iter().all(Zero::is_zero) {
            let ok = if mode == Mode::Closed { !b.is_negative() } else { b.is_positive() };
            if !ok {
                return Ok(());
            }
            continue;
        }
        let scaled = &b * &f;
        let bound = match mode {
            Mode::Closed => floor_int(&scaled),
            Mode::RelativeInterior => ceil_int(&scaled) - 1,
        };
        cons.push(IntConstraint {
            coeffs: ci.iter().map(to_i64).collect::<Result<_>>()?,
            bound: to_i64(&bound)?,
            eq: false,
        });
    }
    for h in p.equalities() {
        let (c, b) = subst(&h.normal, &h.offset);
        eq_y.push(Hyperplane::new(c.clone(), b.clone()));
        let (ci, f) = primitive(&c);
        let scaled = &b * &f;
        if ci.iter().all(Zero::is_zero) {
            if !scaled.is_zero() {
                return Ok(());
            }
            continue;
        }
        if !scaled.is_integer() {
            return Ok(());
        }
        cons.push(IntConstraint {
            coeffs: ci.iter().map(to_i64).collect::<Result<_>>()?,
            bound: to_i64(&scaled.to_integer())?,
            eq: true,
        });
    }

    if q == 0 {
        if p.contains(shift, mode) {
            visit(shift);
        }
        return Ok(());
    }
    // Bounding box in lattice coordinates.
    let corners: Vec<Vector> = if lattice.is_standard_basis() {
        p.vertices().iter().map(|v| rational::sub(v, shift)).collect()
    } else {
        match vertices_of_hrep(q, &ineq_y, &eq_y) {
            Ok(v) => v,
            Err(Error::EmptyPolyhedron) => return Ok(()),
            Err(e) => return Err(e),
        }
    };
    let mut lo = Vec::with_capacity(q);
    let mut hi = Vec::with_capacity(q);
    for j in 0..q {
        let mn = corners.iter().map(|c| &c[j]).min().unwrap();
        let mx = corners.iter().map(|c| &c[j]).max().unwrap();
        lo.push(to_i64(&ceil_int(mn))?);
        hi.push(to_i64(&floor_int(mx))?);
        if lo[j] > hi[j] {
            return Ok(());
        }
    }

    // suffix extremes: min/max of sum_{k >= j} c_k y_k over the box
    let suffix: Vec<(Vec<i64>, Vec<i64>)> = cons
        .iter()
        .map(|c| {
            let mut mins = vec![0i64; q + 1];
            let mut maxs = vec![0i64; q + 1];
            for j in (0..q).rev() {
                let a = c.coeffs[j] * lo[j];
                let b = c.coeffs[j] * hi[j];
                mins[j] = mins[j + 1] + a.min(b);
                maxs[j] = maxs[j + 1] + a.max(b);
            }
            (mins, maxs)
        })
        .collect();

    let mut y = vec![0i64; q];
    let mut partial = vec![vec![0i64; cons.len()]; q + 1];
    // iterative depth-first search
    let mut depth = 0usize;
    y[0] = lo[0] - 1;
    loop {
        y[depth] += 1;
        if y[depth] > hi[depth] {
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        let mut ok = true;
        for (ci, c) in cons.iter().enumerate() {
            let s = partial[depth][ci] + c.coeffs[depth] * y[depth];
            partial[depth + 1][ci] = s;
            let (mins, maxs) = &suffix[ci];
            if s + mins[depth + 1] > c.bound || (c.eq && s + maxs[depth + 1] < c.bound) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if depth + 1 == q {
            visit(&lattice.point(&y));
        } else {
            depth += 1;
            y[depth] = lo[depth] - 1;
        }
    }
    Ok(())
}

/// Lattice points of `P` on `shift + L'`, sorted lexicographically.
pub fn lattice_points(p: &Polytope, lattice: &ShiftedLattice, mode: Mode) -> Result<Vec<Vector>> {
    let mut pts = Vec::new();
    for_each_lattice_point(p, lattice, mode, |x| pts.push(x.clone()))?;
    pts.sort();
    Ok(pts)
}

pub fn count_lattice_points(p: &Polytope, lattice: &ShiftedLattice, mode: Mode) -> Result<u64> {
    let mut n = 0u64;
    for_each_lattice_point(p, lattice, mode, |_| n += 1)?;
    Ok(n)
}
