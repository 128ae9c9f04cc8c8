//! Exact convex polytopes with synchronized vertex and inequality
//! descriptions.
//!
//! A [`Polytope`] is always nonempty and bounded. Its vertices are the
//! extreme points in lexicographic order, which makes the vertex list a
//! canonical key: two polytopes are equal exactly when their vertex lists
//! are. The inequality description is irredundant and expressed relative to
//! the affine span; normals only use the pivot coordinates of the span, so
//! it is canonical as well.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, dot, primitive, Rational, Vector};

/// `normal . x <= offset`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Rational,
}

/// `normal . x = offset`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: Rational) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) == self.offset
    }
}

/// Which points of a polytope count as "inside".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Closed,
    /// Interior in the topology of the affine span.
    RelativeInterior,
}

/// Canonical affine subspace: `base + span(directions)`.
///
/// Directions are in reduced row echelon form and the base has zero pivot
/// coordinates, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpan {
    pub base: Vector,
    pub directions: Vec<Vector>,
}

impl AffineSpan {
    pub fn new(point: &[Rational], directions: &[Vector]) -> Self {
        let n = point.len();
        let (dirs, pivots) = linalg::rref(directions, n);
        let mut base = point.to_vec();
        for (d, &p) in dirs.iter().zip(&pivots) {
            let c = base[p].clone();
            if !c.is_zero() {
                for (b, x) in base.iter_mut().zip(d) {
                    *b -= &c * x;
                }
            }
        }
        AffineSpan { base, directions: dirs }
    }

    /// The linear subspace spanned by `points` (through the origin).
    pub fn linear_hull(points: &[Vector], ambient: usize) -> Self {
        AffineSpan::new(&rational::zeros(ambient), points)
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let d = rational::sub(x, &self.base);
        linalg::rank(&self.directions, d.len()) == linalg::rank(&[self.directions.clone(), vec![d]].concat(), x.len())
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<Vector>,
    inequalities: Vec<Halfspace>,
    equalities: Vec<Hyperplane>,
    pivots: Vec<usize>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Hash for Polytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.vertices.hash(state);
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, &self.vertices).cmp(&(other.ambient, &other.vertices))
    }
}

/// A face given by indices into the parent's vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceInfo {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

fn affine_rank(points: &[&Vector]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let diffs: Vec<Vector> = points[1..].iter().map(|p| rational::sub(p, points[0])).collect();
    linalg::rank(&diffs, points[0].len())
}

fn int_row(row: &[Rational]) -> Vec<BigInt> {
    primitive(row).0
}

/// Scales `normal . x <= offset` (or `=`) so that the normal is a primitive
/// integer vector. With `canonical_sign`, the first nonzero entry is made
/// positive (only valid for equalities).
fn normalize_row(normal: &[Rational], offset: &Rational, canonical_sign: bool) -> (Vector, Rational) {
    let (ints, f) = primitive(normal);
    let mut n: Vector = ints.into_iter().map(Rational::from_integer).collect();
    let mut o = offset * &f;
    if canonical_sign {
        if let Some(first) = n.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                n = rational::neg(&n);
                o = -o;
            }
        }
    }
    (n, o)
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn hull(points: &[Vector]) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let ambient = first.len();
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: p.len() });
            }
        }
        let pts: Vec<Vector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let base = pts[0].clone();
        let diffs: Vec<Vector> = pts[1..].iter().map(|p| rational::sub(p, &base)).collect();
        let (dirs, pivots) = linalg::rref(&diffs, ambient);
        let dim = pivots.len();

        let mut equalities: Vec<Hyperplane> = linalg::nullspace(&dirs, ambient)
            .into_iter()
            .map(|n| {
                let off = dot(&n, &base);
                let (n, o) = normalize_row(&n, &off, true);
                Hyperplane::new(n, o)
            })
            .collect();
        equalities.sort();

        if dim == 0 {
            return Ok(Polytope { ambient, dim, vertices: vec![base], inequalities: Vec::new(), equalities, pivots });
        }

        let proj: Vec<Vector> = pts.iter().map(|p| pivots.iter().map(|&i| p[i].clone()).collect()).collect();

        let facets: Vec<(Vector, Rational)> = if dim == 1 {
            let lo = proj.iter().map(|p| &p[0]).min().unwrap().clone();
            let hi = proj.iter().map(|p| &p[0]).max().unwrap().clone();
            vec![(vec![-Rational::one()], -lo), (vec![Rational::one()], hi)]
        } else {
            // cone of valid inequalities (b, a): b - a.v >= 0
            let rows: Vec<Vec<BigInt>> = proj
                .iter()
                .map(|v| {
                    let mut row = vec![Rational::one()];
                    row.extend(v.iter().map(|x| -x));
                    int_row(&row)
                })
                .collect();
            dd::extreme_rays(&rows, dim + 1)?
                .into_iter()
                .filter(|r| r[1..].iter().any(|x| !x.is_zero()))
                .map(|r| {
                    let b = Rational::from_integer(r[0].clone());
                    let a: Vector = r[1..].iter().map(|x| Rational::from_integer(x.clone())).collect();
                    (a, b)
                })
                .collect()
        };

        let mut inequalities: Vec<Halfspace> = facets
            .iter()
            .map(|(a, b)| {
                let mut n = rational::zeros(ambient);
                for (j, &p) in pivots.iter().enumerate() {
                    n[p] = a[j].clone();
                }
                let (n, o) = normalize_row(&n, b, false);
                Halfspace::new(n, o)
            })
            .collect();
        inequalities.sort();
        inequalities.dedup();

        let vertices: Vec<Vector> = pts
            .into_iter()
            .zip(&proj)
            .filter(|(_, q)| {
                let tight: Vec<Vector> =
                    facets.iter().filter(|(a, b)| dot(a, q) == *b).map(|(a, _)| a.clone()).collect();
                linalg::rank(&tight, dim) == dim
            })
            .map(|(p, _)| p)
            .collect();

        Ok(Polytope { ambient, dim, vertices, inequalities, equalities, pivots })
    }

    /// Polytope `{x : ineq, eq}` in `Q^ambient`. Fails with
    /// `EmptyPolyhedron` or `Unbounded` when the system does not describe a
    /// polytope.
    pub fn from_hrep(ambient: usize, inequalities: &[Halfspace], equalities: &[Hyperplane]) -> Result<Polytope> {
        let verts = vertices_of_hrep(ambient, inequalities, equalities)?;
        Polytope::hull(&verts)
    }

    pub fn point(p: Vector) -> Polytope {
        Polytope::hull(&[p]).expect("single point")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Hyperplane] {
        &self.equalities
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn affine_span(&self) -> AffineSpan {
        let base = &self.vertices[0];
        let dirs: Vec<Vector> = self.vertices[1..].iter().map(|v| rational::sub(v, base)).collect();
        AffineSpan::new(base, &dirs)
    }

    /// Linear subspace spanned by the vertices (the span of the cone over
    /// the polytope).
    pub fn linear_hull(&self) -> AffineSpan {
        AffineSpan::linear_hull(&self.vertices, self.ambient)
    }

    pub fn contains(&self, x: &[Rational], mode: Mode) -> bool {
        if x.len() != self.ambient || !self.equalities.iter().all(|h| h.holds(x)) {
            return false;
        }
        match mode {
            Mode::Closed => self.inequalities.iter().all(|h| !h.slack(x).is_negative()),
            Mode::RelativeInterior => self.inequalities.iter().all(|h| h.slack(x).is_positive()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| rational::is_integral(v))
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        let verts: Vec<Vector> = self.vertices.iter().map(|v| rational::add(v, t)).collect();
        Polytope::hull(&verts).expect("nonempty")
    }

    /// `s * P` for any rational `s` (negative values reflect).
    pub fn dilate(&self, s: &Rational) -> Polytope {
        let verts: Vec<Vector> = self.vertices.iter().map(|v| rational::scale(v, s)).collect();
        Polytope::hull(&verts).expect("nonempty")
    }

    pub fn negate(&self) -> Polytope {
        self.dilate(&-Rational::one())
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        let sums: BTreeSet<Vector> =
            self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| rational::add(a, b))).collect();
        let sums: Vec<Vector> = sums.into_iter().collect();
        Polytope::hull(&sums)
    }

    /// Face lattice as vertex-index sets, ordered by dimension and then
    /// lexicographically. Includes the polytope itself.
    pub fn face_lattice(&self) -> Vec<FaceInfo> {
        let nv = self.vertices.len();
        let facets: Vec<BTreeSet<usize>> = self
            .inequalities
            .iter()
            .map(|h| (0..nv).filter(|&i| h.slack(&self.vertices[i]).is_zero()).collect())
            .collect();
        let full: BTreeSet<usize> = (0..nv).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue = vec![full.clone()];
        seen.insert(full);
        while let Some(g) = queue.pop() {
            for f in &facets {
                let h: BTreeSet<usize> = g.intersection(f).copied().collect();
                if !h.is_empty() && h.len() < g.len() && seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        let mut faces: Vec<FaceInfo> = seen
            .into_iter()
            .map(|s| {
                let pts: Vec<&Vector> = s.iter().map(|&i| &self.vertices[i]).collect();
                FaceInfo { dim: affine_rank(&pts), vertices: s.into_iter().collect() }
            })
            .collect();
        faces.sort();
        faces
    }

    /// All faces (vertices, edges, ..., the polytope itself).
    pub fn faces(&self) -> Vec<Polytope> {
        self.face_lattice()
            .into_iter()
            .map(|f| {
                let pts: Vec<Vector> = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
                Polytope::hull(&pts).expect("faces are nonempty")
            })
            .collect()
    }

    /// Exact Lebesgue volume of a full-dimensional polytope.
    pub fn volume(&self) -> Result<Rational> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if self.dim == 0 {
            return Ok(Rational::one());
        }
        let faces = self.face_lattice();
        let top = faces.len() - 1;
        let simplices = triangulate(&faces, top);
        let mut total = Rational::zero();
        for s in simplices {
            let v0 = &self.vertices[s[0]];
            let m: Vec<Vector> = s[1..].iter().map(|&i| rational::sub(&self.vertices[i], v0)).collect();
            total += linalg::det(&m).abs();
        }
        let fact: u64 = (1..=self.dim as u64).product();
        Ok(total / Rational::from_integer(BigInt::from(fact)))
    }

    /// Coordinates used to parametrize the affine span.
    pub fn pivot_coordinates(&self) -> &[usize] {
        &self.pivots
    }
}

/// Pulling triangulation of face `idx`: cone from its first vertex over the
/// facets not containing it.
fn triangulate(faces: &[FaceInfo], idx: usize) -> Vec<Vec<usize>> {
    let face = &faces[idx];
    if face.dim == 0 {
        return vec![vec![face.vertices[0]]];
    }
    let apex = face.vertices[0];
    let mut out = Vec::new();
    for (j, f) in faces.iter().enumerate() {
        if f.dim + 1 != face.dim || f.vertices.contains(&apex) {
            continue;
        }
        if !f.vertices.iter().all(|v| face.vertices.binary_search(v).is_ok()) {
            continue;
        }
        for mut s in triangulate(faces, j) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Vertices of `{x : ineq, eq}`.
pub fn vertices_of_hrep(ambient: usize, inequalities: &[Halfspace], equalities: &[Hyperplane]) -> Result<Vec<Vector>> {
    for h in inequalities {
        if h.normal.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: h.normal.len() });
        }
    }
    for h in equalities {
        if h.normal.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: h.normal.len() });
        }
    }
    // homogenized cone in (t, x): t*b - a.x >= 0, t >= 0
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut push = |b: &Rational, a: &[Rational], sign: i64| {
        let mut row = vec![b * Rational::from_integer(BigInt::from(sign))];
        row.extend(a.iter().map(|x| -x * Rational::from_integer(BigInt::from(sign))));
        rows.push(int_row(&row));
    };
    for h in equalities {
        push(&h.offset, &h.normal, 1);
        push(&h.offset, &h.normal, -1);
    }
    for h in inequalities {
        push(&h.offset, &h.normal, 1);
    }
    let mut t = vec![BigInt::zero(); ambient + 1];
    t[0] = BigInt::one();
    rows.push(t);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));

    let rays = dd::extreme_rays(&rows, ambient + 1)?;
    let mut verts = Vec::new();
    let mut unbounded = false;
    for r in rays {
        if r[0].is_zero() {
            unbounded = true;
            continue;
        }
        let t = Rational::from_integer(r[0].clone());
        verts.push(r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect());
    }
    if verts.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if unbounded {
        return Err(Error::Unbounded);
    }
    Ok(verts)
}
