//! Command implementations. Each returns the text for standard output and
//! the exit status.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use sphgenus::counts;
use sphgenus::genus::{self, mixed_volume};
use sphgenus::rational::fmt_rational;
use sphgenus::verify::{self, Suite};
use sphgenus::weyl::{gz_polytope, RootSystem};
use sphgenus::{Polytope, Rational, ShiftedLattice, Vector};

use crate::error::{CliError, EXIT_DEPENDENT, EXIT_INVARIANT, EXIT_OK};
use crate::literal::{parse_polytope, to_vector, NumVec, PolytopeLit, RootsLit};
use crate::report::{self, hp0_json, subset_label, table, Hp0Json, ReportJson};
use crate::scenario::ScenarioFile;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn dependent_code(independent: bool) -> u8 {
    if independent {
        EXIT_OK
    } else {
        EXIT_DEPENDENT
    }
}

pub fn genus(text: &str, json: bool) -> Result<Outcome, CliError> {
    let s = ScenarioFile::parse(text)?;
    let r = genus::genus(&s)?;
    let stdout = if json { to_json(&ReportJson::of(&s, &r)) } else { report::human(&s, &r) };
    Ok(Outcome { stdout, code: dependent_code(r.independent) })
}

#[derive(Serialize)]
struct DefectJson {
    subset: Vec<usize>,
    defect: i64,
}

#[derive(Serialize)]
struct IndependenceJson {
    independent: bool,
    defects: Vec<DefectJson>,
}

pub fn independence(text: &str, json: bool) -> Result<Outcome, CliError> {
    let s = ScenarioFile::parse(text)?;
    let defects = genus::defects(&s)?;
    let independent = defects.iter().all(|(_, d)| *d >= 0);
    let stdout = if json {
        to_json(&IndependenceJson {
            independent,
            defects: defects.into_iter().map(|(subset, defect)| DefectJson { subset, defect }).collect(),
        })
    } else {
        let rows: Vec<Vec<String>> = defects.iter().map(|(j, d)| vec![subset_label(j), d.to_string()]).collect();
        let mut out = table(&["subset", "defect"], &rows);
        let _ = writeln!(out, "\nindependent: {}", if independent { "yes" } else { "no" });
        out
    };
    Ok(Outcome { stdout, code: dependent_code(independent) })
}

#[derive(Serialize)]
struct Hp0Report {
    independent: bool,
    chi: Option<String>,
    hp0: Vec<Hp0Json>,
}

pub fn hp0(text: &str, json: bool) -> Result<Outcome, CliError> {
    let s = ScenarioFile::parse(text)?;
    let r = genus::genus(&s)?;
    let stdout = if json {
        to_json(&Hp0Report {
            independent: r.independent,
            chi: r.chi.as_ref().map(|c| c.to_string()),
            hp0: hp0_json(&r.hp0),
        })
    } else if r.independent {
        report::hp0_lines(&r.hp0)
    } else {
        "independent: no\n".to_string()
    };
    Ok(Outcome { stdout, code: dependent_code(r.independent) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    /// Lattice points of the closed polytope.
    Closed,
    /// Lattice points of the relative interior.
    Interior,
    /// `(-1)^dim` times the interior count of `-P`.
    Nprime,
    /// Weighted sum over the closed polytope.
    #[value(name = "S")]
    S,
    /// Weighted sum over the interior of `-P` with sign `(-1)^dim`.
    #[value(name = "Sprime")]
    Sprime,
}

pub struct CountArgs {
    pub polytope: Polytope,
    pub lattice: Option<Vec<Vector>>,
    pub shift: Option<Vector>,
    pub mode: CountMode,
    pub roots: Option<RootSystem>,
}

pub fn parse_vectors(text: &str) -> Result<Vec<Vector>, CliError> {
    let v: Vec<NumVec> = serde_json::from_str(text)?;
    Ok(v.iter().map(|x| to_vector(x)).collect())
}

pub fn parse_vector(text: &str) -> Result<Vector, CliError> {
    let v: NumVec = serde_json::from_str(text)?;
    Ok(to_vector(&v))
}

pub fn parse_roots(text: &str) -> Result<RootSystem, CliError> {
    serde_json::from_str::<RootsLit>(text)?.to_roots()
}

pub fn count(args: CountArgs) -> Result<Outcome, CliError> {
    let p = &args.polytope;
    let r = p.ambient_dim();
    let lattice = match (args.lattice, args.shift) {
        (None, None) => ShiftedLattice::standard(r),
        (basis, shift) => {
            let basis = basis.unwrap_or_else(|| ShiftedLattice::standard(r).basis().to_vec());
            let shift = shift.unwrap_or_else(|| sphgenus::rational::zeros(r));
            ShiftedLattice::new(r, basis, shift)?
        }
    };
    let weight = || -> Result<_, CliError> {
        let roots = args.roots.clone().unwrap_or_else(|| RootSystem::trivial(r));
        if roots.rank_ambient() != r {
            return Err(CliError::Schema(format!(
                "root system has rank {} but the polytope lives in dimension {r}",
                roots.rank_ambient()
            )));
        }
        Ok(roots.weyl_polynomial())
    };
    let value = match args.mode {
        CountMode::Closed => counts::count_n(p, &lattice)?.to_string(),
        CountMode::Interior => counts::count_n_interior(p, &lattice)?.to_string(),
        CountMode::Nprime => counts::count_n_prime(p, &lattice)?.to_string(),
        CountMode::S => fmt_rational(&counts::sum_s(p, &lattice, &weight()?)?),
        CountMode::Sprime => fmt_rational(&counts::sum_s_prime(p, &lattice, &weight()?)?),
    };
    Ok(Outcome::ok(value + "\n"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GzOutput {
    Count,
    Vertices,
    Hrep,
}

pub fn gz(n: usize, lambda: &[Rational], output: GzOutput) -> Result<Outcome, CliError> {
    if lambda.len() != n {
        return Err(CliError::Schema(format!("lambda has {} entries but n = {n}", lambda.len())));
    }
    let p = gz_polytope(n, lambda)?;
    let stdout = match output {
        GzOutput::Count => format!("{}\n", counts::count_n(&p, &ShiftedLattice::standard(p.ambient_dim()))?),
        GzOutput::Vertices => to_json(&PolytopeLit::vertices_of(&p)),
        GzOutput::Hrep => to_json(&PolytopeLit::hrep_of(&p)),
    };
    Ok(Outcome::ok(stdout))
}

/// Input is a JSON array of polytopes, each a literal or an array of points.
pub fn mixed_volume_cmd(text: &str) -> Result<Outcome, CliError> {
    let items: Vec<serde_json::Value> = serde_json::from_str(text)?;
    let polys = items.iter().map(|v| parse_polytope(&v.to_string())).collect::<Result<Vec<_>, _>>()?;
    let v = mixed_volume(&polys)?;
    Ok(Outcome::ok(format!("{}\n", fmt_rational(&v))))
}

#[derive(Serialize)]
struct VerifyJson {
    suite: String,
    seed: u64,
    trials: usize,
    failures: usize,
    passed: bool,
    counterexample: Option<String>,
}

pub fn verify_cmd(suite: Suite, seed: u64, trials: usize, json: bool) -> Outcome {
    let r = verify::run(suite, seed, trials);
    let stdout = if json {
        to_json(&VerifyJson {
            suite: suite.name().into(),
            seed,
            trials,
            failures: r.failures,
            passed: r.passed(),
            counterexample: r.counterexample.clone(),
        })
    } else {
        let mut out = format!("{suite}: {trials} trials, {} failed (seed {seed})\n", r.failures);
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "counterexample: {c}");
        }
        out.push_str(if r.passed() { "PASS\n" } else { "FAIL\n" });
        out
    };
    Outcome { stdout, code: if r.passed() { EXIT_OK } else { EXIT_INVARIANT } }
}
