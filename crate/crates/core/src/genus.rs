//! Complete-intersection scenarios: defects and independence, arithmetic
//! genus by inclusion-exclusion over subsets, critical numbers, `h^{p,0}`
//! conclusions and mixed volumes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::counts;
use crate::error::{Error, Result};
use crate::lattice::ShiftedLattice;
use crate::linalg;
use crate::polytope::Polytope;
use crate::rational::{self, Rational, Vector};
use crate::weyl::{gz_polytope, no_polytope, RootSystem, StringCone, WeightPoly};

/// Largest number of linear systems accepted (subsets are enumerated).
pub const MAX_SYSTEMS: usize = 16;

/// `k` generic hypersurfaces in the torus `(C*)^dim` with supports `A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Toric {
    pub dim: usize,
    pub supports: Vec<Vec<Vector>>,
}

/// Hypersurfaces in a horospherical homogeneous space with weight lattice
/// `lattice_basis`, weight sets `A_i` and shifts `alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horospherical {
    pub roots: RootSystem,
    pub lattice_basis: Vec<Vector>,
    pub weights: Vec<Vec<Vector>>,
    pub shifts: Vec<Vector>,
    /// String cone for the Newton-Okounkov route; defaults to the
    /// Gelfand-Zetlin cone for type A and the trivial cone without roots.
    pub cone: Option<StringCone>,
    /// Dimension of the homogeneous space; defaults to
    /// `rank + #{roots not vanishing on the lattice}`.
    pub dim: Option<usize>,
}

/// Hypersurfaces in `GL(n)` cut out by matrix coefficients of the
/// representations with the given highest weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub roots: RootSystem,
    pub weights: Vec<Vec<Vector>>,
    /// Weight lattice; `Z^n` when absent.
    pub lattice_basis: Option<Vec<Vector>>,
}

/// Divisors in the flag variety of `GL(n)` from dominant weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub n: usize,
    pub weights: Vec<Vector>,
}

/// Moment polytopes supplied directly, per subset or per system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSpherical {
    pub roots: RootSystem,
    pub lattice_basis: Vec<Vector>,
    pub shifts: Vec<Vector>,
    /// Keys are sorted 1-based subsets.
    pub polytopes: BTreeMap<Vec<usize>, Polytope>,
    /// When set, `Delta_J` is the Minkowski sum of the singletons.
    pub additive: bool,
    pub cone: Option<StringCone>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scenario {
    Toric(Toric),
    Horospherical(Horospherical),
    Group(Group),
    Flag(Flag),
    GenericSpherical(GenericSpherical),
}

/// Data attached to one subset `J`.
#[derive(Clone, Debug)]
pub struct SubsetData {
    pub moment: Polytope,
    pub lattice: ShiftedLattice,
    pub weight: WeightPoly,
    /// Gelfand-Zetlin polytope of the flag case, where terms are counted.
    pub gz: Option<Polytope>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetRow {
    /// 1-based indices.
    pub subset: Vec<usize>,
    pub moment_dim: usize,
    pub degree: usize,
    pub no_dim: usize,
    pub defect: i64,
    /// `N'` or `S'` of the subset.
    pub term: Rational,
    /// `N°` or `S°` of the subset.
    pub interior: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hp0 {
    Exact(BigInt),
    UpperBound(BigInt),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub variety_dim: usize,
    pub k: usize,
    pub rows: Vec<SubsetRow>,
    pub independent: bool,
    pub chi: Option<BigInt>,
    pub critical_numbers: BTreeSet<i64>,
    /// Entry `p` is the conclusion about `h^{p,0}`.
    pub hp0: Vec<Hp0>,
}

/// Nonempty subsets of `{1..k}` ordered by size, then lexicographically.
pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        (1u32..(1u32 << k)).map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidScenario(msg.into())
}

fn check_vectors(vs: &[Vector], dim: usize, what: &str) -> Result<()> {
    if vs.is_empty() {
        return Err(invalid(format!("{what}: empty point set")));
    }
    for v in vs {
        if v.len() != dim {
            return Err(invalid(format!("{what}: {} has length {}, expected {dim}", rational::fmt_vector(v), v.len())));
        }
    }
    Ok(())
}

fn sum_vectors(vs: impl Iterator<Item = Vector>, dim: usize) -> Vector {
    vs.fold(rational::zeros(dim), |acc, v| rational::add(&acc, &v))
}

fn minkowski_all(ps: impl Iterator<Item = Polytope>) -> Result<Polytope> {
    let mut acc: Option<Polytope> = None;
    for p in ps {
        acc = Some(match acc {
            None => p,
            Some(a) => a.minkowski_sum(&p)?,
        });
    }
    acc.ok_or(Error::EmptyPointSet)
}

fn lattice_of(basis: &[Vector], dim: usize, shift: Vector) -> Result<ShiftedLattice> {
    ShiftedLattice::new(dim, basis.to_vec(), shift)
}

impl Scenario {
    pub fn k(&self) -> usize {
        match self {
            Scenario::Toric(t) => t.supports.len(),
            Scenario::Horospherical(h) => h.weights.len(),
            Scenario::Group(g) => g.weights.len(),
            Scenario::Flag(f) => f.weights.len(),
            Scenario::GenericSpherical(g) => g.shifts.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Toric(_) => "toric",
            Scenario::Horospherical(_) => "horospherical",
            Scenario::Group(_) => "group",
            Scenario::Flag(_) => "flag",
            Scenario::GenericSpherical(_) => "generic_spherical",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k == 0 {
            return Err(invalid("at least one linear system is required"));
        }
        if k > MAX_SYSTEMS {
            return Err(invalid(format!("k = {k} exceeds the limit of {MAX_SYSTEMS}")));
        }
        match self {
            Scenario::Toric(t) => {
                if k > t.dim {
                    return Err(invalid(format!("toric scenarios need k <= n, got k = {k}, n = {}", t.dim)));
                }
                for (i, a) in t.supports.iter().enumerate() {
                    check_vectors(a, t.dim, &format!("support {}", i + 1))?;
                    if !a.iter().all(|v| rational::is_integral(v)) {
                        return Err(invalid(format!("support {} is not integral", i + 1)));
                    }
                }
            }
            Scenario::Horospherical(h) => {
                let r = h.roots.rank_ambient();
                if h.shifts.len() != k {
                    return Err(invalid(format!("expected {k} shifts, got {}", h.shifts.len())));
                }
                check_vectors(&h.shifts, r, "shifts")?;
                for (i, a) in h.weights.iter().enumerate() {
                    check_vectors(a, r, &format!("weight set {}", i + 1))?;
                    let l = lattice_of(&h.lattice_basis, r, h.shifts[i].clone())?;
                    for v in a {
                        if !h.roots.is_dominant(v) {
                            return Err(Error::NotDominant(rational::fmt_vector(v)));
                        }
                        if !l.contains(v) {
                            return Err(invalid(format!(
                                "weight {} of system {} is not in its shifted lattice",
                                rational::fmt_vector(v),
                                i + 1
                            )));
                        }
                    }
                }
                if let Some(c) = &h.cone {
                    if c.weight_dim != r {
                        return Err(Error::DimensionMismatch { expected: r, got: c.weight_dim });
                    }
                }
            }
            Scenario::Group(g) => {
                if g.roots.type_a_rank().is_none() {
                    return Err(Error::InvalidRootSystem("the group case needs a type A root system".into()));
                }
                let r = g.roots.rank_ambient();
                for (i, a) in g.weights.iter().enumerate() {
                    check_vectors(a, r, &format!("representation {}", i + 1))?;
                }
                if let Some(b) = &g.lattice_basis {
                    lattice_of(b, r, rational::zeros(r))?;
                }
            }
            Scenario::Flag(f) => {
                if f.n < 1 {
                    return Err(invalid("flag scenarios need n >= 1"));
                }
                check_vectors(&f.weights, f.n, "weights")?;
                for l in &f.weights {
                    if !rational::is_integral(l) {
                        return Err(invalid(format!("weight {} is not integral", rational::fmt_vector(l))));
                    }
                    if l.windows(2).any(|w| w[0] > w[1]) {
                        return Err(Error::NotDominant(format!("{} is not increasing", rational::fmt_vector(l))));
                    }
                }
            }
            Scenario::GenericSpherical(g) => {
                let r = g.roots.rank_ambient();
                check_vectors(&g.shifts, r, "shifts")?;
                lattice_of(&g.lattice_basis, r, rational::zeros(r))?;
                let needed: Vec<Vec<usize>> = if g.additive { (1..=k).map(|i| vec![i]).collect() } else { subsets(k) };
                for j in &needed {
                    match g.polytopes.get(j) {
                        None => return Err(invalid(format!("missing moment polytope for subset {j:?}"))),
                        Some(p) if p.ambient_dim() != r => {
                            return Err(Error::DimensionMismatch { expected: r, got: p.ambient_dim() })
                        }
                        _ => {}
                    }
                }
                if let Some(c) = &g.cone {
                    if c.weight_dim != r {
                        return Err(Error::DimensionMismatch { expected: r, got: c.weight_dim });
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension of the ambient homogeneous space.
    pub fn variety_dim(&self) -> usize {
        match self {
            Scenario::Toric(t) => t.dim,
            Scenario::Horospherical(h) => h.dim.unwrap_or_else(|| {
                let r = h.roots.rank_ambient();
                let rank = linalg::rank(&h.lattice_basis, r);
                rank + h.roots.roots_nonzero_on(&h.lattice_basis)
            }),
            Scenario::Group(g) => g.roots.rank_ambient() + 2 * g.roots.positive_roots().len(),
            Scenario::Flag(f) => f.n * (f.n - 1) / 2,
            Scenario::GenericSpherical(g) => g.dim,
        }
    }

    /// String cone used by the Newton-Okounkov route, if one is known.
    pub fn string_cone(&self) -> Option<StringCone> {
        let default_for = |roots: &RootSystem| {
            if let Some(n) = roots.type_a_rank() {
                Some(StringCone::gelfand_zetlin(n))
            } else if roots.positive_roots().is_empty() {
                Some(StringCone::trivial(roots.rank_ambient()))
            } else {
                None
            }
        };
        match self {
            Scenario::Toric(t) => Some(StringCone::trivial(t.dim)),
            Scenario::Horospherical(h) => h.cone.clone().or_else(|| default_for(&h.roots)),
            Scenario::Group(_) => None,
            Scenario::Flag(f) => Some(StringCone::gelfand_zetlin(f.n)),
            Scenario::GenericSpherical(g) => g.cone.clone(),
        }
    }

    /// Moment polytope, lattice and weight of the subset `J` (1-based).
    pub fn subset_data(&self, j: &[usize]) -> Result<SubsetData> {
        if j.is_empty() || j.iter().any(|&i| i == 0 || i > self.k()) {
            return Err(invalid(format!("invalid subset {j:?}")));
        }
        match self {
            Scenario::Toric(t) => {
                let moment = minkowski_all(
                    j.iter().map(|&i| Polytope::hull(&t.supports[i - 1])).collect::<Result<Vec<_>>>()?.into_iter(),
                )?;
                Ok(SubsetData {
                    moment,
                    lattice: ShiftedLattice::standard(t.dim),
                    weight: WeightPoly::one(t.dim),
                    gz: None,
                })
            }
            Scenario::Horospherical(h) => {
                let r = h.roots.rank_ambient();
                let moment = minkowski_all(
                    j.iter().map(|&i| Polytope::hull(&h.weights[i - 1])).collect::<Result<Vec<_>>>()?.into_iter(),
                )?;
                let shift = sum_vectors(j.iter().map(|&i| h.shifts[i - 1].clone()), r);
                Ok(SubsetData {
                    moment,
                    lattice: lattice_of(&h.lattice_basis, r, shift)?,
                    weight: h.roots.weyl_polynomial(),
                    gz: None,
                })
            }
            Scenario::Group(g) => {
                let r = g.roots.rank_ambient();
                let parts = j
                    .iter()
                    .map(|&i| g.roots.weight_polytope(&g.weights[i - 1]).map(|(_, plus)| plus))
                    .collect::<Result<Vec<_>>>()?;
                let lattice = match &g.lattice_basis {
                    Some(b) => lattice_of(b, r, rational::zeros(r))?,
                    None => ShiftedLattice::standard(r),
                };
                Ok(SubsetData {
                    moment: minkowski_all(parts.into_iter())?,
                    lattice,
                    weight: g.roots.group_weight_polynomial()?,
                    gz: None,
                })
            }
            Scenario::Flag(f) => {
                let lambda = sum_vectors(j.iter().map(|&i| f.weights[i - 1].clone()), f.n);
                let roots = RootSystem::type_a(f.n)?;
                Ok(SubsetData {
                    moment: Polytope::point(lambda.clone()),
                    lattice: ShiftedLattice::new(f.n, Vec::new(), lambda.clone())?,
                    weight: roots.weyl_polynomial(),
                    gz: Some(gz_polytope(f.n, &lambda)?),
                })
            }
            Scenario::GenericSpherical(g) => {
                let r = g.roots.rank_ambient();
                let moment = if g.additive {
                    minkowski_all(j.iter().map(|&i| g.polytopes[&vec![i]].clone()))?
                } else {
                    g.polytopes
                        .get(j)
                        .cloned()
                        .ok_or_else(|| invalid(format!("missing moment polytope for subset {j:?}")))?
                };
                let shift = sum_vectors(j.iter().map(|&i| g.shifts[i - 1].clone()), r);
                Ok(SubsetData {
                    moment,
                    lattice: lattice_of(&g.lattice_basis, r, shift)?,
                    weight: g.roots.weyl_polynomial(),
                    gz: None,
                })
            }
        }
    }

    /// Newton-Okounkov polytope of `J` and its lattice, when a string cone
    /// is available.
    pub fn no_data(&self, j: &[usize]) -> Result<Option<(Polytope, ShiftedLattice)>> {
        let Some(cone) = self.string_cone() else {
            return Ok(None);
        };
        let d = self.subset_data(j)?;
        let no = no_polytope(&d.moment, &cone)?;
        Ok(Some((no, d.lattice.extend_standard(cone.fiber_dim))))
    }
}

fn as_rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn count_as_rational(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dimensions, degree and defect of one subset, without lattice counts.
fn shape(s: &Scenario, j: &[usize], d: &SubsetData) -> Result<(usize, usize, usize, i64)> {
    let moment_dim = d.moment.dim();
    let degree = counts::moment_degree(&d.moment, &d.weight);
    let no_dim = moment_dim + degree;
    if let (Scenario::Flag(_), Some(gz)) = (s, &d.gz) {
        if gz.dim() != no_dim {
            return Err(Error::Invariant(format!(
                "subset {j:?}: Gelfand-Zetlin dimension {} differs from moment dimension plus degree {no_dim}",
                gz.dim()
            )));
        }
    }
    Ok((moment_dim, degree, no_dim, no_dim as i64 - j.len() as i64))
}

fn row(s: &Scenario, j: &[usize]) -> Result<SubsetRow> {
    let d = s.subset_data(j)?;
    let (moment_dim, degree, no_dim, defect) = shape(s, j, &d)?;
    let (term, interior) = match (s, &d.gz) {
        (Scenario::Toric(_), _) => (
            as_rational(counts::count_n_prime(&d.moment, &d.lattice)?),
            count_as_rational(counts::count_n_interior(&d.moment, &d.lattice)?),
        ),
        (Scenario::Flag(f), Some(gz)) => {
            let z = ShiftedLattice::standard(crate::weyl::gz_dim(f.n));
            (as_rational(counts::count_n_prime(gz, &z)?), count_as_rational(counts::count_n_interior(gz, &z)?))
        }
        _ => (
            counts::sum_s_prime(&d.moment, &d.lattice, &d.weight)?,
            counts::sum_s_interior(&d.moment, &d.lattice, &d.weight)?,
        ),
    };
    Ok(SubsetRow { subset: j.to_vec(), moment_dim, degree, no_dim, defect, term, interior })
}

/// Defect `d(J) = dim Delta_J + d_J - |J|` of every nonempty subset.
pub fn defects(s: &Scenario) -> Result<Vec<(Vec<usize>, i64)>> {
    s.validate()?;
    subsets(s.k())
        .into_par_iter()
        .map(|j| {
            let d = s.subset_data(&j)?;
            let (_, _, _, defect) = shape(s, &j, &d)?;
            Ok((j, defect))
        })
        .collect()
}

/// True when a generic complete intersection is nonempty.
pub fn is_independent(s: &Scenario) -> Result<bool> {
    Ok(defects(s)?.iter().all(|(_, d)| *d >= 0))
}

/// `{ d(J) : the J-th polytope has interior points }`.
pub fn critical_numbers(rows: &[SubsetRow]) -> BTreeSet<i64> {
    rows.iter().filter(|r| r.interior.is_positive()).map(|r| r.defect).collect()
}

/// Conclusions about `h^{p,0}` for `0 <= p <= n - k`.
pub fn hp0_bounds(rows: &[SubsetRow], variety_dim: usize, k: usize, chi: &BigInt) -> Vec<Hp0> {
    if variety_dim < k {
        return Vec::new();
    }
    let top = variety_dim - k;
    let critical = critical_numbers(rows);
    let delta = |p: usize| if p == 0 { BigInt::one() } else { BigInt::zero() };
    let mut out: Vec<Hp0> = (0..=top)
        .map(|p| {
            if !critical.contains(&(p as i64)) {
                return Hp0::Exact(delta(p));
            }
            let extra: Rational = rows.iter().filter(|r| r.defect == p as i64).map(|r| r.interior.clone()).sum();
            if extra.is_integer() && !extra.is_negative() {
                Hp0::UpperBound(delta(p) + extra.to_integer())
            } else {
                Hp0::Unknown
            }
        })
        .collect();
    if top >= 1 && (0..top).all(|p| !critical.contains(&(p as i64))) {
        let sign = if top.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        out[top] = Hp0::Exact(sign * (chi - BigInt::one()));
    }
    out
}

/// Full report: subset terms, independence, `chi`, critical numbers and
/// `h^{p,0}` conclusions. For dependent scenarios `chi` is withheld.
pub fn genus(s: &Scenario) -> Result<GenusReport> {
    s.validate()?;
    let k = s.k();
    let rows: Vec<SubsetRow> = subsets(k).into_par_iter().map(|j| row(s, &j)).collect::<Result<_>>()?;
    let independent = rows.iter().all(|r| r.defect >= 0);
    let variety_dim = s.variety_dim();
    if !independent {
        return Ok(GenusReport {
            variety_dim,
            k,
            rows,
            independent,
            chi: None,
            critical_numbers: BTreeSet::new(),
            hp0: Vec::new(),
        });
    }
    let mut chi = Rational::one();
    for r in &rows {
        if r.subset.len() % 2 == 0 {
            chi += &r.term;
        } else {
            chi -= &r.term;
        }
    }
    if !chi.is_integer() {
        return Err(Error::Invariant(format!("arithmetic genus {} is not an integer", rational::fmt_rational(&chi))));
    }
    let chi = chi.to_integer();
    let critical_numbers = critical_numbers(&rows);
    let hp0 = hp0_bounds(&rows, variety_dim, k, &chi);
    Ok(GenusReport { variety_dim, k, rows, independent, chi: Some(chi), critical_numbers, hp0 })
}

/// Subset term computed both from the moment polytope with its weight and
/// from the Newton-Okounkov polytope with a plain count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermPair {
    pub subset: Vec<usize>,
    pub moment: Rational,
    pub newton_okounkov: Rational,
}

/// Both routes for every subset; `None` when no string cone is known.
pub fn term_routes(s: &Scenario) -> Result<Option<Vec<TermPair>>> {
    s.validate()?;
    if s.string_cone().is_none() {
        return Ok(None);
    }
    let pairs = subsets(s.k())
        .into_par_iter()
        .map(|j| {
            let d = s.subset_data(&j)?;
            let moment = counts::sum_s_prime(&d.moment, &d.lattice, &d.weight)?;
            let (no, lattice) = s.no_data(&j)?.expect("string cone checked above");
            let newton_okounkov = as_rational(counts::count_n_prime(&no, &lattice)?);
            Ok(TermPair { subset: j, moment, newton_okounkov })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(pairs))
}

/// `V(P_1..P_n) = (1/n!) sum_J (-1)^{n-|J|} vol(sum_{i in J} P_i)`, with
/// lower-dimensional sums contributing zero.
pub fn mixed_volume(polys: &[Polytope]) -> Result<Rational> {
    let n = polys.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    for p in polys {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.ambient_dim() });
        }
    }
    let terms: Vec<Rational> = subsets(n)
        .into_par_iter()
        .map(|j| {
            let sum = minkowski_all(j.iter().map(|&i| polys[i - 1].clone()))?;
            if !sum.is_full_dimensional() {
                return Ok(Rational::zero());
            }
            let v = sum.volume()?;
            Ok(if (n - j.len()).is_multiple_of(2) { v } else { -v })
        })
        .collect::<Result<_>>()?;
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    Ok(terms.into_iter().sum::<Rational>() / Rational::from_integer(fact))
}
