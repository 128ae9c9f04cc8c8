//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use sphgenus::chains::ConvexChain;
use sphgenus::counts;
use sphgenus::genus::{self, Flag, Horospherical, Hp0, Scenario, Toric};
use sphgenus::random;
use sphgenus::rational::{int, vector, Rational, Vector};
use sphgenus::weyl::{gz_polytope, RootSystem, WeightPoly};
use sphgenus::{Polytope, ShiftedLattice};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: sphgenus::Error) -> String {
    e.to_string()
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

fn toric(dim: usize, supports: Vec<Vec<Vector>>) -> Scenario {
    Scenario::Toric(Toric { dim, supports })
}

fn chi_of(s: &Scenario) -> Result<BigInt, String> {
    genus::genus(s).map_err(e2s)?.chi.ok_or_else(|| "scenario reported dependent".to_string())
}

fn bkk() -> Outcome {
    const SYSTEMS: usize = 50;
    const BUDGET: Duration = Duration::from_secs(60);
    let start = Instant::now();
    let mut rng = random::rng(2024);
    let mut checked = 0;
    let mut skipped = 0;
    while checked < SYSTEMS {
        let n = checked % 3 + 1;
        let supports: Vec<Vec<Vector>> = (0..n).map(|_| random::polytope_points(&mut rng, n, 4)).collect();
        let s = toric(n, supports.clone());
        if !genus::is_independent(&s).map_err(e2s)? {
            skipped += 1;
            continue;
        }
        let chi = chi_of(&s)?;
        let polys: Vec<Polytope> = supports.iter().map(|a| Polytope::hull(a).unwrap()).collect();
        let v = genus::mixed_volume(&polys).map_err(e2s)?;
        let expected = factorial(n) * v;
        ensure(Rational::from_integer(chi.clone()) == expected, || {
            format!("n = {n}, supports {supports:?}: chi = {chi}, n! V = {expected}")
        })?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BUDGET, || format!("took {elapsed:.1?}, budget {BUDGET:?}"))?;
    Ok(format!("{checked} independent systems ({skipped} dependent draws skipped) in {elapsed:.1?}"))
}

fn triangle(s: i64) -> Vec<Vector> {
    vec![vector(&[0, 0]), vector(&[s, 0]), vector(&[0, s])]
}

fn plane_curves() -> Outcome {
    for (deg, chi, interior) in [(3, 0, 1), (4, -2, 3)] {
        let s = toric(2, vec![triangle(deg)]);
        let r = genus::genus(&s).map_err(e2s)?;
        ensure(r.chi == Some(BigInt::from(chi)), || format!("degree {deg}: chi = {:?}, expected {chi}", r.chi))?;
        ensure(r.rows[0].interior == int(interior), || format!("degree {deg}: interior count {}", r.rows[0].interior))?;
        let h10 = Hp0::Exact(BigInt::from(interior));
        ensure(r.hp0.get(1) == Some(&h10), || format!("degree {deg}: h^(1,0) = {:?}", r.hp0.get(1)))?;
    }
    Ok("cubic chi = 0, h^(1,0) = 1; quartic chi = -2, h^(1,0) = 3".into())
}

fn two_squares() -> Outcome {
    let sq = vec![vector(&[0, 0]), vector(&[1, 0]), vector(&[0, 1]), vector(&[1, 1])];
    let chi = chi_of(&toric(2, vec![sq.clone(), sq.clone()]))?;
    let p = Polytope::hull(&sq).unwrap();
    let v = genus::mixed_volume(&[p.clone(), p]).map_err(e2s)?;
    ensure(chi == BigInt::from(2), || format!("chi = {chi}"))?;
    ensure(factorial(2) * v.clone() == int(2), || format!("2! V = {}", factorial(2) * v))?;
    Ok("chi = 2 = 2! V".into())
}

fn increasing_tuples(n: usize, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in increasing_tuples(n - 1, max) {
        let lo = t.last().copied().unwrap_or(0);
        for x in lo..=max {
            let mut u = t.clone();
            u.push(x);
            out.push(u);
        }
    }
    out
}

fn gz_weyl() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(120);
    let start = Instant::now();
    let mut total = 0;
    for n in 2..=4 {
        let f = RootSystem::type_a(n).map_err(e2s)?.weyl_polynomial();
        let z = ShiftedLattice::standard(n * (n - 1) / 2);
        for t in increasing_tuples(n, 5) {
            let lambda = vector(&t);
            let gz = gz_polytope(n, &lambda).map_err(e2s)?;
            let count = counts::count_n(&gz, &z).map_err(e2s)?;
            let dim = f.eval(&lambda);
            ensure(Rational::from_integer(BigInt::from(count)) == dim, || {
                format!("lambda = {t:?}: {count} patterns, Weyl dimension {dim}")
            })?;
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BUDGET, || format!("took {elapsed:.1?}, budget {BUDGET:?}"))?;
    Ok(format!("{total} dominant weights for n = 2..4 in {elapsed:.1?}"))
}

fn flag_line() -> Outcome {
    for m in 1..=6 {
        let s = Scenario::Flag(Flag { n: 2, weights: vec![vector(&[0, m])] });
        let chi = chi_of(&s)?;
        ensure(chi == BigInt::from(m), || format!("m = {m}: chi = {chi}"))?;
    }
    Ok("chi = m for m = 1..6".into())
}

fn inverse_law() -> Outcome {
    const CASES: usize = 30;
    let mut rng = random::rng(7);
    let mut by_dim = BTreeMap::new();
    for i in 0..CASES {
        let r = i % 3 + 1;
        let p = random::polytope(&mut rng, r, 2);
        let prod = ConvexChain::of(&p).mul(&ConvexChain::inverse_of_polytope(&p)).map_err(e2s)?;
        ensure(prod == ConvexChain::unit(r), || format!("P = {:?}: product {prod}", p.vertices()))?;
        *by_dim.entry(p.dim()).or_insert(0) += 1;
    }
    Ok(format!("{CASES} polytopes, count by dimension {by_dim:?}"))
}

fn reciprocity() -> Outcome {
    const POLYTOPES: usize = 30;
    let mut rng = random::rng(11);
    let mut weighted = 0;
    for i in 0..POLYTOPES {
        let r = i % 3 + 1;
        let max = if r == 3 { 2 } else { 3 };
        let p = random::polytope(&mut rng, r, max);
        let z = ShiftedLattice::standard(r);
        let mut weights = vec![WeightPoly::one(r)];
        if r >= 2 {
            weights.push(RootSystem::type_a(r).map_err(e2s)?.weyl_polynomial());
            weighted += 1;
        }
        for w in weights {
            let poly = counts::interpolate_dilation(|m| counts::dilated_sum(&p, &z, &w, m), r + w.degree())
                .map_err(|e| format!("P = {:?}: {e}", p.vertices()))?;
            let direct = counts::sum_s_prime(&p, &z, &w).map_err(e2s)?;
            ensure(poly.eval_int(-1) == direct, || {
                format!("P = {:?}, degree {}: polynomial {poly} at -1 vs direct {direct}", p.vertices(), w.degree())
            })?;
        }
    }
    Ok(format!("{POLYTOPES} polytopes with weight 1, {weighted} also with the Weyl polynomial"))
}

fn horospherical_case(rng: &mut random::TestRng, i: usize) -> Scenario {
    let n = if i.is_multiple_of(2) { 2 } else { 3 };
    let k = rng.gen_range(1..=2);
    let roots = RootSystem::type_a(n).unwrap();
    let sublattice = n == 2 && i % 4 == 2;
    let (basis, shift) = if sublattice {
        (vec![vector(&[1, 1]), vector(&[0, 2])], vector(&[0, 1]))
    } else {
        (
            (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    vector(&e)
                })
                .collect(),
            vec![int(0); n],
        )
    };
    let weights = (0..k)
        .map(|_| {
            let count = rng.gen_range(1..=3);
            (0..count)
                .map(|_| {
                    if sublattice {
                        let a = rng.gen_range(0..=2);
                        vector(&[a, a + 2 * rng.gen_range(0..=1) + 1])
                    } else {
                        random::dominant_weight(rng, n, 2)
                    }
                })
                .collect()
        })
        .collect();
    Scenario::Horospherical(Horospherical {
        roots,
        lattice_basis: basis,
        weights,
        shifts: vec![shift; k],
        cone: None,
        dim: None,
    })
}

fn no_moment_agreement() -> Outcome {
    const SCENARIOS: usize = 12;
    let mut rng = random::rng(5);
    let mut terms = 0;
    for i in 0..SCENARIOS {
        let s = horospherical_case(&mut rng, i);
        let pairs = genus::term_routes(&s).map_err(e2s)?.ok_or("no string cone")?;
        for p in pairs {
            ensure(p.moment == p.newton_okounkov, || {
                format!("scenario {s:?}, subset {:?}: S' = {}, N' = {}", p.subset, p.moment, p.newton_okounkov)
            })?;
            terms += 1;
        }
    }
    Ok(format!("{SCENARIOS} GL(2)/GL(3) scenarios, {terms} subset terms"))
}

fn degenerate_case(rng: &mut random::TestRng, i: usize) -> Scenario {
    if i.is_multiple_of(2) {
        // every support parallel to a common (k-1)-dimensional subspace
        let k = rng.gen_range(2..=3);
        let dirs: Vec<Vec<i64>> = (0..k - 1).map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let supports = (0..k)
            .map(|_| {
                let base: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
                (0..rng.gen_range(1..=4))
                    .map(|_| {
                        let mut p = base.clone();
                        for d in &dirs {
                            let c = rng.gen_range(0..=2);
                            for (x, y) in p.iter_mut().zip(d) {
                                *x += c * y;
                            }
                        }
                        vector(&p)
                    })
                    .collect()
            })
            .collect();
        toric(3, supports)
    } else {
        // weights on a wall of the chamber give fibers of too small dimension
        let weights = (0..3).map(|_| vector(&[0, 0, rng.gen_range(0..=3)])).collect();
        Scenario::Flag(Flag { n: 3, weights })
    }
}

fn dependence() -> Outcome {
    let seg = vec![vector(&[0, 0]), vector(&[1, 0])];
    let parallel = toric(2, vec![seg.clone(), seg]);
    ensure(!genus::is_independent(&parallel).map_err(e2s)?, || "parallel segments reported independent".into())?;
    ensure(genus::genus(&parallel).map_err(e2s)?.chi.is_none(), || "genus not withheld for parallel segments".into())?;
    let mut rng = random::rng(13);
    for i in 0..10 {
        let s = degenerate_case(&mut rng, i);
        ensure(!genus::is_independent(&s).map_err(e2s)?, || format!("degenerate scenario {s:?} reported independent"))?;
        ensure(genus::genus(&s).map_err(e2s)?.chi.is_none(), || format!("genus not withheld for {s:?}"))?;
    }
    let mut full = 0;
    for i in 0..10 {
        let n = i % 2 + 2;
        let k = rng.gen_range(1..=n);
        let supports = (0..k).map(|_| random::full_dimensional_points(&mut rng, n, 3)).collect();
        let s = toric(n, supports);
        ensure(genus::is_independent(&s).map_err(e2s)?, || {
            format!("full-dimensional scenario {s:?} reported dependent")
        })?;
        full += 1;
    }
    Ok(format!("parallel segments and 10 degenerate scenarios dependent, {full} full-dimensional independent"))
}

fn surfaces() -> Outcome {
    let mut rng = random::rng(17);
    let mut polys: Vec<Vec<Vector>> = vec![
        vec![vector(&[0, 0, 0]), vector(&[4, 0, 0]), vector(&[0, 4, 0]), vector(&[0, 0, 4])],
        (0..8).map(|m| vector(&[m & 1, (m >> 1) & 1, (m >> 2) & 1])).collect(),
        (0..8).map(|m| vector(&[3 * (m & 1), 3 * ((m >> 1) & 1), 3 * ((m >> 2) & 1)])).collect(),
    ];
    polys.extend((0..12).map(|_| random::full_dimensional_points(&mut rng, 3, 4)));
    let mut geometric = Vec::new();
    for pts in &polys {
        let s = toric(3, vec![pts.clone()]);
        let r = genus::genus(&s).map_err(e2s)?;
        let chi = r.chi.clone().ok_or("full-dimensional surface reported dependent")?;
        let interior =
            counts::count_n_interior(&Polytope::hull(pts).unwrap(), &ShiftedLattice::standard(3)).map_err(e2s)?;
        let expected =
            vec![Hp0::Exact(BigInt::from(1)), Hp0::Exact(BigInt::from(0)), Hp0::Exact(chi.clone() - BigInt::from(1))];
        ensure(r.hp0 == expected, || format!("{pts:?}: table {:?}, chi {chi}", r.hp0))?;
        ensure(chi.clone() - BigInt::from(1) == BigInt::from(interior), || {
            format!("{pts:?}: chi - 1 = {} but {interior} interior points", chi - BigInt::from(1))
        })?;
        geometric.push(interior);
    }
    Ok(format!("{} surfaces, h^(2,0) values {geometric:?}", polys.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("BKK equivalence", bkk),
        ("plane-curve genus", plane_curves),
        ("torus two-squares system", two_squares),
        ("GZ/Weyl consistency", gz_weyl),
        ("flag-variety genus", flag_line),
        ("virtual-polytope inverse law", inverse_law),
        ("dilation reciprocity", reciprocity),
        ("NO/moment term agreement", no_moment_agreement),
        ("dependence detection", dependence),
        ("h^(p,0) conclusions", surfaces),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
