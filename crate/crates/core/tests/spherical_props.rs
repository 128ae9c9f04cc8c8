//! Weyl-group and genus properties checked against classical closed forms:
//! hook-content dimensions, planar areas, Pick's theorem and root counts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use sphgenus::counts::count_n;
use sphgenus::genus::{self, term_routes, Horospherical, Hp0, Scenario, Toric};
use sphgenus::rational::{int, vector};
use sphgenus::weyl::{gz_dim, gz_polytope, RootSystem};
use sphgenus::{Rational, ShiftedLattice, Vector};

fn increasing(n: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=max, n).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

/// Dimension of the `GL(n)` representation with increasing highest weight
/// `lambda`, by the hook-content formula.
fn hook_content(lambda: &[i64]) -> Rational {
    let n = lambda.len() as i64;
    let mu: Vec<i64> = lambda.iter().rev().map(|x| x - lambda[0]).collect();
    let conj = |j: i64| mu.iter().filter(|&&m| m > j).count() as i64;
    let mut r = int(1);
    for (i, &row) in mu.iter().enumerate() {
        let i = i as i64;
        for j in 0..row {
            let hook = row - j + conj(j) - i - 1;
            r *= Rational::new(BigInt::from(n + j - i), BigInt::from(hook));
        }
    }
    r
}

fn permutations(v: &[i64]) -> BTreeSet<Vec<i64>> {
    if v.len() <= 1 {
        return BTreeSet::from([v.to_vec()]);
    }
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.insert(p);
        }
    }
    out
}

fn cross(o: &[i64; 2], a: &[i64; 2], b: &[i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull by the monotone chain, counterclockwise.
fn planar_hull(mut pts: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of the hull.
fn double_area(pts: &[[i64; 2]]) -> i64 {
    let h = planar_hull(pts.to_vec());
    if h.len() < 3 {
        return 0;
    }
    (0..h.len())
        .map(|i| {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<i64>()
        .abs()
}

fn boundary_points(pts: &[[i64; 2]]) -> i64 {
    let h = planar_hull(pts.to_vec());
    (0..h.len())
        .map(|i| {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            (b[0] - a[0]).gcd(&(b[1] - a[1]))
        })
        .sum()
}

fn to_vectors(pts: &[[i64; 2]]) -> Vec<Vector> {
    pts.iter().map(|p| vector(p)).collect()
}

fn planar_points(max: i64) -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec((0..=max, 0..=max).prop_map(|(a, b)| [a, b]), 1..=5)
}

fn toric(dim: usize, supports: Vec<Vec<Vector>>) -> Scenario {
    Scenario::Toric(Toric { dim, supports })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn weyl_dimension_counts_gz_patterns(lambda in (1usize..=4).prop_flat_map(|n| increasing(n, if n == 4 { 3 } else { 5 }))) {
        let n = lambda.len();
        let l = vector(&lambda);
        let expected = hook_content(&lambda);
        prop_assert_eq!(RootSystem::type_a(n).unwrap().weyl_polynomial().eval(&l), expected.clone());
        let gz = gz_polytope(n, &l).unwrap();
        prop_assert_eq!(gz.ambient_dim(), gz_dim(n));
        let count = count_n(&gz, &ShiftedLattice::standard(gz.ambient_dim())).unwrap();
        prop_assert_eq!(int(count as i64), expected);
        let moving = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| lambda[i] != lambda[j]).count();
        prop_assert_eq!(gz.dim(), moving);
    }

    #[test]
    fn gz_polytopes_are_additive(
        (a, b) in (1usize..=3).prop_flat_map(|n| (increasing(n, 3), increasing(n, 3)))
    ) {
        let n = a.len();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = gz_polytope(n, &vector(&a)).unwrap().minkowski_sum(&gz_polytope(n, &vector(&b)).unwrap()).unwrap();
        prop_assert_eq!(lhs, gz_polytope(n, &vector(&sum)).unwrap());
    }

    #[test]
    fn type_a_orbits_are_permutations(lambda in (1usize..=4).prop_flat_map(|n| increasing(n, 4))) {
        let n = lambda.len();
        let roots = RootSystem::type_a(n).unwrap();
        let orbit = roots.weyl_orbit(&vector(&lambda)).unwrap();
        let expected: Vec<Vector> = permutations(&lambda).iter().map(|p| vector(p)).collect();
        prop_assert_eq!(&orbit, &expected);
        let fact: usize = (1..=n).product();
        prop_assert_eq!(fact % orbit.len(), 0);
        let (p_pi, p_plus) = roots.weight_polytope(&[vector(&lambda)]).unwrap();
        for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
            let swapped: Vec<Vector> = p_pi.vertices().iter().map(|v| {
                let mut w = v.clone();
                w.swap(i, j);
                w
            }).collect();
            prop_assert_eq!(sphgenus::Polytope::hull(&swapped).unwrap(), p_pi.clone());
        }
        prop_assert!(p_plus.vertices().iter().all(|v| roots.is_dominant(v)));
    }

    #[test]
    fn points_on_a_torus_line(support in prop::collection::vec(-6i64..=6, 1..=5)) {
        let s = toric(1, vec![support.iter().map(|&x| vector(&[x])).collect()]);
        let r = genus::genus(&s).unwrap();
        let len = support.iter().max().unwrap() - support.iter().min().unwrap();
        prop_assert_eq!(r.independent, len > 0);
        if len > 0 {
            prop_assert_eq!(r.chi, Some(BigInt::from(len)));
            let expected = if len == 1 { Hp0::Exact(BigInt::from(1)) } else { Hp0::UpperBound(BigInt::from(len)) };
            prop_assert_eq!(r.hp0, vec![expected]);
        }
    }

    #[test]
    fn planar_systems_count_mixed_area(a in planar_points(4), b in planar_points(4)) {
        let sums: Vec<[i64; 2]> = a.iter().flat_map(|p| b.iter().map(move |q| [p[0] + q[0], p[1] + q[1]])).collect();
        let mixed = (double_area(&sums) - double_area(&a) - double_area(&b)) / 2;
        let r = genus::genus(&toric(2, vec![to_vectors(&a), to_vectors(&b)])).unwrap();
        if r.independent {
            prop_assert_eq!(r.chi, Some(BigInt::from(mixed)));
        } else {
            prop_assert_eq!(mixed, 0);
            prop_assert!(r.chi.is_none());
        }
    }

    #[test]
    fn plane_curves_follow_pick(a in planar_points(5)) {
        prop_assume!(double_area(&a) > 0);
        let interior = (double_area(&a) - boundary_points(&a) + 2) / 2;
        let r = genus::genus(&toric(2, vec![to_vectors(&a)])).unwrap();
        prop_assert_eq!(r.chi, Some(BigInt::from(1 - interior)));
        prop_assert_eq!(r.hp0, vec![Hp0::Exact(BigInt::from(1)), Hp0::Exact(BigInt::from(interior))]);
    }

    #[test]
    fn parallel_supports_are_dependent(
        dir in (-3i64..=3, -3i64..=3).prop_filter("nonzero", |d| *d != (0, 0)),
        steps in prop::collection::vec(prop::collection::vec(0i64..=3, 1..=3), 2),
        offsets in prop::collection::vec((0i64..=3, 0i64..=3), 2),
    ) {
        let supports: Vec<Vec<Vector>> = steps
            .iter()
            .zip(&offsets)
            .map(|(s, o)| s.iter().map(|t| vector(&[o.0 + t * dir.0, o.1 + t * dir.1])).collect())
            .collect();
        let s = toric(2, supports);
        prop_assert!(!genus::is_independent(&s).unwrap());
        prop_assert!(genus::genus(&s).unwrap().chi.is_none());
    }

    #[test]
    fn trivial_roots_reduce_to_torus(a in planar_points(3), b in planar_points(3), k in 1usize..=2) {
        let weights: Vec<Vec<Vector>> = [a, b][..k].iter().map(|s| to_vectors(s)).collect();
        let h = Scenario::Horospherical(Horospherical {
            roots: RootSystem::trivial(2),
            lattice_basis: vec![vector(&[1, 0]), vector(&[0, 1])],
            weights: weights.clone(),
            shifts: vec![vector(&[0, 0]); k],
            cone: None,
            dim: None,
        });
        let (x, y) = (genus::genus(&h).unwrap(), genus::genus(&toric(2, weights)).unwrap());
        prop_assert_eq!(x.chi, y.chi);
        prop_assert_eq!(x.rows, y.rows);
        prop_assert_eq!(x.hp0, y.hp0);
    }

    #[test]
    fn horospherical_routes_agree(
        sets in prop::collection::vec(prop::collection::vec(increasing(2, 2), 1..=3), 1..=2)
    ) {
        let k = sets.len();
        let s = Scenario::Horospherical(Horospherical {
            roots: RootSystem::type_a(2).unwrap(),
            lattice_basis: vec![vector(&[1, 0]), vector(&[0, 1])],
            weights: sets.iter().map(|w| w.iter().map(|v| vector(v)).collect()).collect(),
            shifts: vec![vector(&[0, 0]); k],
            cone: None,
            dim: None,
        });
        for pair in term_routes(&s).unwrap().unwrap() {
            prop_assert_eq!(&pair.moment, &pair.newton_okounkov, "subset {:?}", pair.subset);
        }
        let r = genus::genus(&s).unwrap();
        if let Some(chi) = r.chi {
            let sum: Rational = r.rows.iter().map(|row| {
                if row.subset.len() % 2 == 0 { row.term.clone() } else { -row.term.clone() }
            }).sum();
            prop_assert_eq!(Rational::from_integer(chi), int(1) + sum);
            prop_assert!(r.rows.iter().all(|row| row.defect >= 0));
        }
    }
}
