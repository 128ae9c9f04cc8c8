//! Scenario files: a JSON object with `"kind"`, `"k"` and per-kind payload.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sphgenus::genus::{Flag, GenericSpherical, Group, Horospherical, Toric};
use sphgenus::rational::zeros;
use sphgenus::{Polytope, Scenario, Vector};

use crate::error::CliError;
use crate::literal::{from_vectors, to_vectors, ConeLit, NumVec, PolytopeLit, RootsLit};

/// Moment polytope of one subset (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetPolytope {
    pub subset: Vec<usize>,
    pub polytope: PolytopeLit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScenarioFile {
    Toric {
        k: usize,
        dim: usize,
        supports: Vec<Vec<NumVec>>,
    },
    Horospherical {
        k: usize,
        roots: RootsLit,
        lattice_basis: Vec<NumVec>,
        weights: Vec<Vec<NumVec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shifts: Option<Vec<NumVec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<ConeLit>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    Group {
        k: usize,
        roots: RootsLit,
        weights: Vec<Vec<NumVec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lattice_basis: Option<Vec<NumVec>>,
    },
    Flag {
        k: usize,
        n: usize,
        weights: Vec<NumVec>,
    },
    GenericSpherical {
        k: usize,
        roots: RootsLit,
        lattice_basis: Vec<NumVec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shifts: Option<Vec<NumVec>>,
        polytopes: Vec<SubsetPolytope>,
        #[serde(default)]
        additive: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<ConeLit>,
        dim: usize,
    },
}

fn check_k(k: usize, actual: usize, what: &str) -> Result<(), CliError> {
    if k != actual {
        return Err(CliError::Schema(format!("\"k\" is {k} but {actual} {what} are given")));
    }
    Ok(())
}

/// Explicit shifts, or zero shifts in the span of the lattice basis.
fn shifts_or_zero(shifts: &Option<Vec<NumVec>>, k: usize, basis: &[NumVec]) -> Result<Vec<Vector>, CliError> {
    match shifts {
        Some(s) => {
            check_k(k, s.len(), "shifts")?;
            Ok(to_vectors(s))
        }
        None => {
            let dim = basis
                .first()
                .map(Vec::len)
                .ok_or_else(|| CliError::Schema("\"lattice_basis\" must not be empty".into()))?;
            Ok(vec![zeros(dim); k])
        }
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        let s = file.to_scenario()?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        Ok(match self {
            ScenarioFile::Toric { k, dim, supports } => {
                check_k(*k, supports.len(), "supports")?;
                Scenario::Toric(Toric { dim: *dim, supports: supports.iter().map(|s| to_vectors(s)).collect() })
            }
            ScenarioFile::Horospherical { k, roots, lattice_basis, weights, shifts, cone, dim } => {
                check_k(*k, weights.len(), "weight sets")?;
                Scenario::Horospherical(Horospherical {
                    roots: roots.to_roots()?,
                    lattice_basis: to_vectors(lattice_basis),
                    weights: weights.iter().map(|w| to_vectors(w)).collect(),
                    shifts: shifts_or_zero(shifts, *k, lattice_basis)?,
                    cone: cone.as_ref().map(ConeLit::to_cone).transpose()?,
                    dim: *dim,
                })
            }
            ScenarioFile::Group { k, roots, weights, lattice_basis } => {
                check_k(*k, weights.len(), "weight sets")?;
                Scenario::Group(Group {
                    roots: roots.to_roots()?,
                    weights: weights.iter().map(|w| to_vectors(w)).collect(),
                    lattice_basis: lattice_basis.as_deref().map(to_vectors),
                })
            }
            ScenarioFile::Flag { k, n, weights } => {
                check_k(*k, weights.len(), "weights")?;
                Scenario::Flag(Flag { n: *n, weights: to_vectors(weights) })
            }
            ScenarioFile::GenericSpherical { k, roots, lattice_basis, shifts, polytopes, additive, cone, dim } => {
                let mut map: BTreeMap<Vec<usize>, Polytope> = BTreeMap::new();
                for entry in polytopes {
                    let mut key = entry.subset.clone();
                    key.sort_unstable();
                    if map.insert(key, entry.polytope.to_polytope()?).is_some() {
                        return Err(CliError::Schema(format!("subset {:?} is given twice", entry.subset)));
                    }
                }
                Scenario::GenericSpherical(GenericSpherical {
                    roots: roots.to_roots()?,
                    lattice_basis: to_vectors(lattice_basis),
                    shifts: shifts_or_zero(shifts, *k, lattice_basis)?,
                    polytopes: map,
                    additive: *additive,
                    cone: cone.as_ref().map(ConeLit::to_cone).transpose()?,
                    dim: *dim,
                })
            }
        })
    }

    /// Echo that parses back to the same scenario.
    pub fn of(s: &Scenario) -> Self {
        let k = s.k();
        match s {
            Scenario::Toric(t) => {
                ScenarioFile::Toric { k, dim: t.dim, supports: t.supports.iter().map(|a| from_vectors(a)).collect() }
            }
            Scenario::Horospherical(h) => ScenarioFile::Horospherical {
                k,
                roots: RootsLit::of(&h.roots),
                lattice_basis: from_vectors(&h.lattice_basis),
                weights: h.weights.iter().map(|a| from_vectors(a)).collect(),
                shifts: Some(from_vectors(&h.shifts)),
                cone: h.cone.as_ref().map(ConeLit::of),
                dim: h.dim,
            },
            Scenario::Group(g) => ScenarioFile::Group {
                k,
                roots: RootsLit::of(&g.roots),
                weights: g.weights.iter().map(|a| from_vectors(a)).collect(),
                lattice_basis: g.lattice_basis.as_deref().map(from_vectors),
            },
            Scenario::Flag(f) => ScenarioFile::Flag { k, n: f.n, weights: from_vectors(&f.weights) },
            Scenario::GenericSpherical(g) => ScenarioFile::GenericSpherical {
                k,
                roots: RootsLit::of(&g.roots),
                lattice_basis: from_vectors(&g.lattice_basis),
                shifts: Some(from_vectors(&g.shifts)),
                polytopes: g
                    .polytopes
                    .iter()
                    .map(|(j, p)| SubsetPolytope { subset: j.clone(), polytope: PolytopeLit::vertices_of(p) })
                    .collect(),
                additive: g.additive,
                cone: g.cone.as_ref().map(ConeLit::of),
                dim: g.dim,
            },
        }
    }
}
