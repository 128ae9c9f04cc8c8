//! Randomized self-check suites over the library's invariants. Each trial
//! draws a seeded input; failing inputs are shrunk by dropping generating
//! points while the failure persists.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::chains::ConvexChain;
use crate::counts;
use crate::error::{Error, Result};
use crate::genus::{self, Scenario, Toric};
use crate::lattice::ShiftedLattice;
use crate::polytope::{Mode, Polytope};
use crate::random;
use crate::rational::{self, Rational, Vector};
use crate::weyl::{gz_polytope, RootSystem, WeightPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Chains,
    Reciprocity,
    Gz,
    Bkk,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Chains, Suite::Reciprocity, Suite::Gz, Suite::Bkk];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chains => "chains",
            Suite::Reciprocity => "reciprocity",
            Suite::Gz => "gz",
            Suite::Bkk => "bkk",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}' (expected chains, reciprocity, gz or bkk)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub failures: usize,
    /// First failure after shrinking, with the reason.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// One randomized input: generating point sets plus a small integer tag
/// (weight choice, rank, ...).
#[derive(Clone, Debug)]
struct Case {
    sets: Vec<Vec<Vector>>,
    tag: usize,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .sets
            .iter()
            .map(|s| format!("[{}]", s.iter().map(|v| rational::fmt_vector(v)).collect::<Vec<_>>().join(" ")))
            .collect();
        write!(f, "tag {} sets {}", self.tag, sets.join(" "))
    }
}

type Check = fn(&Case) -> std::result::Result<(), String>;

fn shrink(mut case: Case, check: Check) -> (Case, String) {
    let mut reason = check(&case).expect_err("shrinking starts from a failing case");
    loop {
        let mut improved = false;
        'outer: for s in 0..case.sets.len() {
            for i in 0..case.sets[s].len() {
                if case.sets[s].len() == 1 {
                    continue;
                }
                let mut trial = case.clone();
                trial.sets[s].remove(i);
                if let Err(r) = check(&trial) {
                    case = trial;
                    reason = r;
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            return (case, reason);
        }
    }
}

fn err_string(e: Error) -> String {
    e.to_string()
}

fn hull(pts: &[Vector]) -> std::result::Result<Polytope, String> {
    Polytope::hull(pts).map_err(err_string)
}

fn check_chains(case: &Case) -> std::result::Result<(), String> {
    let p = hull(&case.sets[0])?;
    let r = p.ambient_dim();
    let prod = ConvexChain::of(&p).mul(&ConvexChain::inverse_of_polytope(&p)).map_err(err_string)?;
    if prod != ConvexChain::unit(r) {
        return Err(format!("chi_P * inverse(P) is not the unit: {prod}"));
    }
    let relint = ConvexChain::relative_interior(&p);
    for x in &case.sets[1] {
        let expected = i64::from(p.contains(x, Mode::RelativeInterior));
        if relint.value_at(x) != expected {
            return Err(format!("face expansion of the relative interior is wrong at {}", rational::fmt_vector(x)));
        }
    }
    Ok(())
}

fn reciprocity_weight(r: usize, tag: usize) -> WeightPoly {
    if tag == 1 && r >= 2 {
        RootSystem::type_a(r).expect("r >= 1").weyl_polynomial()
    } else {
        WeightPoly::one(r)
    }
}

fn check_reciprocity(case: &Case) -> std::result::Result<(), String> {
    let p = hull(&case.sets[0])?;
    let r = p.ambient_dim();
    let w = reciprocity_weight(r, case.tag);
    let z = ShiftedLattice::standard(r);
    let poly =
        counts::interpolate_dilation(|m| counts::dilated_sum(&p, &z, &w, m), r + w.degree()).map_err(err_string)?;
    let at_minus_one = poly.eval_int(-1);
    let direct = counts::sum_s_prime(&p, &z, &w).map_err(err_string)?;
    if at_minus_one != direct {
        return Err(format!(
            "dilation polynomial {poly} gives {} at -1, direct route gives {}",
            rational::fmt_rational(&at_minus_one),
            rational::fmt_rational(&direct)
        ));
    }
    if w.is_one() {
        let chain = ConvexChain::inverse_of_polytope(&p).weighted_lattice_sum(&z, &w).map_err(err_string)?;
        let n_prime = counts::count_n_prime(&p, &z).map_err(err_string)?;
        if chain != Rational::from_integer(BigInt::from(n_prime)) {
            return Err(format!(
                "lattice sum over the inverse chain {} differs from N' = {n_prime}",
                rational::fmt_rational(&chain)
            ));
        }
    }
    Ok(())
}

fn check_gz(case: &Case) -> std::result::Result<(), String> {
    let lambda = &case.sets[0][0];
    let n = lambda.len();
    let f = RootSystem::type_a(n).map_err(err_string)?.weyl_polynomial();
    let gz = gz_polytope(n, lambda).map_err(err_string)?;
    let count = counts::count_n(&gz, &ShiftedLattice::standard(gz.ambient_dim())).map_err(err_string)?;
    let dim = f.eval(lambda);
    if Rational::from_integer(BigInt::from(count)) != dim {
        return Err(format!("{count} Gelfand-Zetlin patterns but Weyl dimension {}", rational::fmt_rational(&dim)));
    }
    if let Some(gamma) = case.sets.get(1).and_then(|s| s.first()) {
        let sum = gz.minkowski_sum(&gz_polytope(n, gamma).map_err(err_string)?).map_err(err_string)?;
        let joint = gz_polytope(n, &rational::add(lambda, gamma)).map_err(err_string)?;
        if sum != joint {
            return Err("Gelfand-Zetlin polytopes are not additive".into());
        }
    }
    Ok(())
}

fn check_bkk(case: &Case) -> std::result::Result<(), String> {
    let n = case.sets.len();
    let s = Scenario::Toric(Toric { dim: n, supports: case.sets.clone() });
    let report = genus::genus(&s).map_err(err_string)?;
    let polys: Vec<Polytope> = case.sets.iter().map(|a| hull(a)).collect::<std::result::Result<_, _>>()?;
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let expected = genus::mixed_volume(&polys).map_err(err_string)? * Rational::from_integer(fact);
    // a dependent system has no solutions
    let chi = report.chi.unwrap_or_default();
    if Rational::from_integer(chi.clone()) != expected {
        return Err(format!("chi = {chi} but n! V = {}", rational::fmt_rational(&expected)));
    }
    Ok(())
}

fn draw(suite: Suite, rng: &mut random::TestRng) -> Case {
    match suite {
        Suite::Chains => {
            let r = rng.gen_range(1..=3);
            let pts = random::polytope_points(rng, r, 2);
            let probes = (0..5)
                .map(|_| (0..r).map(|_| Rational::new(BigInt::from(rng.gen_range(-2..=8)), BigInt::from(4))).collect())
                .collect();
            Case { sets: vec![pts, probes], tag: 0 }
        }
        Suite::Reciprocity => {
            let r = rng.gen_range(1..=3);
            let tag = rng.gen_range(0..=1);
            let max = if r == 3 { 2 } else { 3 };
            Case { sets: vec![random::polytope_points(rng, r, max)], tag }
        }
        Suite::Gz => {
            let n = rng.gen_range(2..=4);
            let mut sets = vec![vec![random::dominant_weight(rng, n, 5)]];
            if n <= 3 {
                sets.push(vec![random::dominant_weight(rng, n, 5)]);
            }
            Case { sets, tag: n }
        }
        Suite::Bkk => {
            let n = rng.gen_range(1..=3);
            let sets = (0..n).map(|_| random::polytope_points(rng, n, 4)).collect();
            Case { sets, tag: n }
        }
    }
}

/// Runs `trials` seeded trials of `suite`.
pub fn run(suite: Suite, seed: u64, trials: usize) -> SuiteReport {
    let check: Check = match suite {
        Suite::Chains => check_chains,
        Suite::Reciprocity => check_reciprocity,
        Suite::Gz => check_gz,
        Suite::Bkk => check_bkk,
    };
    let mut rng = random::rng(seed);
    let mut failures = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let case = draw(suite, &mut rng);
        if check(&case).is_err() {
            failures += 1;
            if counterexample.is_none() {
                let (small, reason) = shrink(case, check);
                counterexample = Some(format!("{small}: {reason}"));
            }
        }
    }
    SuiteReport { suite, trials, failures, counterexample }
}
