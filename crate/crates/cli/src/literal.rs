//! JSON literals for exact numbers, polytopes, root systems and string cones.
//! Rationals are written as strings `"p/q"`; plain integers are accepted on
//! input.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sphgenus::rational::{fmt_rational, parse_rational};
use sphgenus::weyl::{RootSystem, StringCone};
use sphgenus::{Halfspace, Hyperplane, Polytope, Rational, Vector};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Num;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a rational string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
        Ok(Num(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
        Ok(Num(Rational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
        parse_rational(v).map(Num).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Num, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

pub type NumVec = Vec<Num>;

pub fn to_vector(v: &[Num]) -> Vector {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn to_vectors(v: &[NumVec]) -> Vec<Vector> {
    v.iter().map(|x| to_vector(x)).collect()
}

pub fn from_vector(v: &[Rational]) -> NumVec {
    v.iter().cloned().map(Num).collect()
}

pub fn from_vectors(v: &[Vector]) -> Vec<NumVec> {
    v.iter().map(|x| from_vector(x)).collect()
}

/// A polytope given by `vertices`, or by `inequalities` rows `[a.., b]`
/// meaning `a . x <= b` and `equalities` rows meaning `a . x = b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeLit {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<NumVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<NumVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equalities: Option<Vec<NumVec>>,
}

impl PolytopeLit {
    pub fn vertices_of(p: &Polytope) -> Self {
        PolytopeLit { vertices: Some(from_vectors(p.vertices())), ..Default::default() }
    }

    pub fn hrep_of(p: &Polytope) -> Self {
        let row = |n: &[Rational], b: &Rational| {
            let mut r = from_vector(n);
            r.push(Num(b.clone()));
            r
        };
        PolytopeLit {
            vertices: None,
            inequalities: Some(p.inequalities().iter().map(|h| row(&h.normal, &h.offset)).collect()),
            equalities: Some(p.equalities().iter().map(|h| row(&h.normal, &h.offset)).collect()),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope, CliError> {
        let hrep = self.inequalities.is_some() || self.equalities.is_some();
        match (&self.vertices, hrep) {
            (Some(v), false) => Ok(Polytope::hull(&to_vectors(v))?),
            (None, true) => {
                let ineq = self.inequalities.as_deref().unwrap_or_default();
                let eq = self.equalities.as_deref().unwrap_or_default();
                let Some(width) = ineq.iter().chain(eq).map(Vec::len).next() else {
                    return Err(CliError::Schema("polytope needs at least one inequality or equality".into()));
                };
                if width < 2 || ineq.iter().chain(eq).any(|r| r.len() != width) {
                    return Err(CliError::Schema("inequality and equality rows must all have length dim + 1".into()));
                }
                let split = |r: &NumVec| (to_vector(&r[..width - 1]), r[width - 1].0.clone());
                let ineq: Vec<Halfspace> = ineq.iter().map(split).map(|(a, b)| Halfspace::new(a, b)).collect();
                let eq: Vec<Hyperplane> = eq.iter().map(split).map(|(a, b)| Hyperplane::new(a, b)).collect();
                Ok(Polytope::from_hrep(width - 1, &ineq, &eq)?)
            }
            _ => Err(CliError::Schema("polytope needs either \"vertices\" or \"inequalities\"/\"equalities\"".into())),
        }
    }
}

/// Parses a polytope literal, or a bare JSON array of points where a number
/// stands for a point on the line: `"[0,2]"` is the segment from 0 to 2.
pub fn parse_polytope(text: &str) -> Result<Polytope, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        let items: Vec<serde_json::Value> = serde_json::from_value(value)?;
        let points = items
            .into_iter()
            .map(|item| {
                if item.is_array() {
                    serde_json::from_value::<NumVec>(item).map(|v| to_vector(&v))
                } else {
                    serde_json::from_value::<Num>(item).map(|x| vec![x.0])
                }
            })
            .collect::<Result<Vec<Vector>, _>>()?;
        return Ok(Polytope::hull(&points)?);
    }
    serde_json::from_value::<PolytopeLit>(value)?.to_polytope()
}

/// `{"type":"A","n":3}`, `{"type":"trivial","rank":2}` or explicit
/// `{"rank":r,"positive_roots":[..],"pairing":[..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsLit {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_roots: Option<Vec<NumVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<NumVec>>,
}

impl RootsLit {
    pub fn of(r: &RootSystem) -> Self {
        match r.type_a_rank() {
            Some(n) => {
                RootsLit { family: Some("A".into()), n: Some(n), rank: None, positive_roots: None, pairing: None }
            }
            None => RootsLit {
                family: None,
                n: None,
                rank: Some(r.rank_ambient()),
                positive_roots: Some(from_vectors(r.positive_roots())),
                pairing: Some(from_vectors(r.pairing())),
            },
        }
    }

    pub fn to_roots(&self) -> Result<RootSystem, CliError> {
        let size = self.n.or(self.rank);
        match self.family.as_deref() {
            Some("A" | "a") => {
                let n = size.ok_or_else(|| CliError::Schema("type A root system needs \"n\"".into()))?;
                Ok(RootSystem::type_a(n)?)
            }
            Some("trivial") => {
                let r = size.ok_or_else(|| CliError::Schema("trivial root system needs \"rank\"".into()))?;
                Ok(RootSystem::trivial(r))
            }
            Some(other) => {
                Err(CliError::Schema(format!("unknown root system type {other:?} (expected \"A\" or \"trivial\")")))
            }
            None => {
                let roots = to_vectors(self.positive_roots.as_deref().unwrap_or_default());
                let r = size
                    .or_else(|| roots.first().map(Vec::len))
                    .ok_or_else(|| CliError::Schema("explicit root system needs \"rank\" or a positive root".into()))?;
                let pairing = self.pairing.as_deref().map(to_vectors);
                Ok(RootSystem::explicit(r, roots, pairing)?)
            }
        }
    }
}

/// Rows `c` of the cone `c . (lambda, x) <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeLit {
    pub weight_dim: usize,
    pub fiber_dim: usize,
    pub inequalities: Vec<NumVec>,
}

impl ConeLit {
    pub fn of(c: &StringCone) -> Self {
        ConeLit { weight_dim: c.weight_dim, fiber_dim: c.fiber_dim, inequalities: from_vectors(&c.inequalities) }
    }

    pub fn to_cone(&self) -> Result<StringCone, CliError> {
        Ok(StringCone::new(self.weight_dim, self.fiber_dim, to_vectors(&self.inequalities))?)
    }
}
