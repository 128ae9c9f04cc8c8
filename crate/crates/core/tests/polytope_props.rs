//! Properties of hulls, Minkowski sums, faces and lattice enumeration,
//! checked against independent brute-force oracles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sphgenus::lattice::{count_lattice_points, lattice_points};
use sphgenus::rational::vector;
use sphgenus::{Mode, Polytope, Rational, ShiftedLattice, Vector};

/// Solves `A y = b` by Gaussian elimination; `None` if singular or
/// inconsistent. `A` is given by rows and may be overdetermined.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
                let v = &f * &b[r];
                b[i] -= v;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| &b[c] / &a[c][c]).collect())
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut more = Vec::new();
        for s in &out {
            if s.len() < k {
                let mut t = s.clone();
                t.push(i);
                more.push(t);
            }
        }
        out.extend(more);
    }
    out.retain(|s| !s.is_empty());
    out
}

/// `x in conv(points)` by Caratheodory: some at most `d+1` points carry
/// nonnegative barycentric coordinates for `x`.
fn in_hull_oracle(points: &[Vector], x: &[Rational]) -> bool {
    let d = x.len();
    subsets_up_to(points.len(), d + 1).into_iter().any(|s| {
        // rows: coordinates, then the affine constraint sum = 1
        let mut a: Vec<Vec<Rational>> = (0..d).map(|i| s.iter().map(|&j| points[j][i].clone()).collect()).collect();
        a.push(vec![Rational::one(); s.len()]);
        let mut b: Vec<Rational> = x.to_vec();
        b.push(Rational::one());
        solve(a, b).is_some_and(|y| y.iter().all(|c| !c.is_negative()))
    })
}

fn is_extreme_oracle(points: &[Vector], p: &Vector) -> bool {
    let others: Vec<Vector> = points.iter().filter(|q| *q != p).cloned().collect();
    others.is_empty() || !in_hull_oracle(&others, p)
}

fn point_strategy(dim: usize, max: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(0..=max, dim).prop_map(|c| vector(&c))
}

fn points_strategy(dim: usize, max: i64) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(point_strategy(dim, max), 1..=dim + 3)
}

fn rational_point(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-4i64..=16, 1i64..=4), dim)
        .prop_map(|c| c.into_iter().map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))).collect())
}

fn dim_and_points(max: i64) -> impl Strategy<Value = Vec<Vector>> {
    (1usize..=3).prop_flat_map(move |d| points_strategy(d, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertices_are_the_extreme_points(pts in dim_and_points(4)) {
        let p = Polytope::hull(&pts).unwrap();
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        let mut expected: Vec<Vector> = distinct.iter().filter(|q| is_extreme_oracle(&distinct, q)).cloned().collect();
        expected.sort();
        prop_assert_eq!(p.vertices(), &expected[..]);
    }

    #[test]
    fn h_and_v_representations_agree(
        pts in points_strategy(2, 4),
        probes in prop::collection::vec(rational_point(2), 40),
    ) {
        let p = Polytope::hull(&pts).unwrap();
        for x in probes.iter().chain(&pts) {
            prop_assert_eq!(p.contains(x, Mode::Closed), in_hull_oracle(&pts, x), "x = {:?}", x);
        }
    }

    #[test]
    fn h_and_v_representations_agree_in_space(
        pts in points_strategy(3, 3),
        probes in prop::collection::vec(rational_point(3), 20),
    ) {
        let p = Polytope::hull(&pts).unwrap();
        for x in &probes {
            prop_assert_eq!(p.contains(x, Mode::Closed), in_hull_oracle(&pts, x), "x = {:?}", x);
        }
    }

    #[test]
    fn inequalities_are_irredundant_and_tight(pts in dim_and_points(4)) {
        let p = Polytope::hull(&pts).unwrap();
        for h in p.inequalities() {
            let tight = p.vertices().iter().filter(|v| h.slack(v).is_zero()).count();
            prop_assert!(tight >= p.dim(), "facet tight at {} vertices, dim {}", tight, p.dim());
            prop_assert!(p.vertices().iter().all(|v| !h.slack(v).is_negative()));
        }
        for e in p.equalities() {
            prop_assert!(p.vertices().iter().all(|v| e.holds(v)));
        }
        let back = Polytope::from_hrep(p.ambient_dim(), p.inequalities(), p.equalities()).unwrap();
        prop_assert_eq!(&back, &p);
    }

    #[test]
    fn hull_of_vertices_round_trips(pts in dim_and_points(5)) {
        let p = Polytope::hull(&pts).unwrap();
        prop_assert_eq!(Polytope::hull(p.vertices()).unwrap(), p);
    }

    #[test]
    fn minkowski_sum_commutes_and_associates(
        (a, b, c) in (1usize..=3).prop_flat_map(|d| (points_strategy(d, 3), points_strategy(d, 3), points_strategy(d, 3)))
    ) {
        let (p, q, r) = (Polytope::hull(&a).unwrap(), Polytope::hull(&b).unwrap(), Polytope::hull(&c).unwrap());
        let pq = p.minkowski_sum(&q).unwrap();
        prop_assert_eq!(&pq, &q.minkowski_sum(&p).unwrap());
        prop_assert_eq!(pq.minkowski_sum(&r).unwrap(), p.minkowski_sum(&q.minkowski_sum(&r).unwrap()).unwrap());
        prop_assert!(pq.dim() >= p.dim().max(q.dim()));
    }

    #[test]
    fn lattice_count_matches_box_scan(pts in (1usize..=3).prop_flat_map(|d| points_strategy(d, if d == 3 { 5 } else { 8 }))) {
        let p = Polytope::hull(&pts).unwrap();
        let d = p.ambient_dim();
        let z = ShiftedLattice::standard(d);
        let lo: Vec<i64> = (0..d).map(|i| pts.iter().map(|v| v[i].to_integer().try_into().unwrap()).min().unwrap()).collect();
        let hi: Vec<i64> = (0..d).map(|i| pts.iter().map(|v| v[i].to_integer().try_into().unwrap()).max().unwrap()).collect();
        let mut closed = 0u64;
        let mut interior = 0u64;
        let mut cur = lo.clone();
        loop {
            let x = vector(&cur);
            closed += u64::from(p.contains(&x, Mode::Closed));
            interior += u64::from(p.contains(&x, Mode::RelativeInterior));
            let mut i = 0;
            while i < d && cur[i] == hi[i] {
                cur[i] = lo[i];
                i += 1;
            }
            if i == d {
                break;
            }
            cur[i] += 1;
        }
        prop_assert_eq!(count_lattice_points(&p, &z, Mode::Closed).unwrap(), closed);
        prop_assert_eq!(count_lattice_points(&p, &z, Mode::RelativeInterior).unwrap(), interior);
        let listed = lattice_points(&p, &z, Mode::Closed).unwrap();
        prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn face_identity_holds_pointwise(
        pts in points_strategy(2, 4),
        probes in prop::collection::vec(rational_point(2), 60),
    ) {
        let p = Polytope::hull(&pts).unwrap();
        let faces = p.faces();
        for x in probes.iter().chain(p.vertices()) {
            let sum: i64 = faces
                .iter()
                .filter(|f| f.contains(x, Mode::Closed))
                .map(|f| if (p.dim() - f.dim()).is_multiple_of(2) { 1 } else { -1 })
                .sum();
            prop_assert_eq!(sum, i64::from(p.contains(x, Mode::RelativeInterior)), "x = {:?}", x);
            let by_relint: i64 = faces.iter().filter(|f| f.contains(x, Mode::RelativeInterior)).count() as i64;
            prop_assert_eq!(by_relint, i64::from(p.contains(x, Mode::Closed)));
        }
    }
}

#[test]
fn sublattice_enumeration_matches_filtered_scan() {
    let p = Polytope::hull(&[vector(&[0, 0]), vector(&[6, 0]), vector(&[0, 6])]).unwrap();
    let l = ShiftedLattice::new(2, vec![vector(&[1, 1]), vector(&[0, 2])], vector(&[0, 1])).unwrap();
    let expected: Vec<Vector> = (0..=6)
        .flat_map(|x| (0..=6).map(move |y| vector(&[x, y])))
        .filter(|v| p.contains(v, Mode::Closed) && l.contains(v))
        .collect();
    let mut got = lattice_points(&p, &l, Mode::Closed).unwrap();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
}
