//! Seeded generators for random test inputs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polytope::Polytope;
use crate::rational::{self, Vector};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` integer points with coordinates in `[0, max]`.
pub fn points<R: Rng>(rng: &mut R, dim: usize, count: usize, max: i64) -> Vec<Vector> {
    (0..count)
        .map(|_| {
            let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=max)).collect();
            rational::vector(&c)
        })
        .collect()
}

/// Generating points of a random integral polytope of any dimension.
pub fn polytope_points<R: Rng>(rng: &mut R, dim: usize, max: i64) -> Vec<Vector> {
    let count = rng.gen_range(1..=dim + 3);
    points(rng, dim, count, max)
}

pub fn polytope<R: Rng>(rng: &mut R, dim: usize, max: i64) -> Polytope {
    Polytope::hull(&polytope_points(rng, dim, max)).expect("nonempty point set")
}

/// Generating points of a random full-dimensional integral polytope.
pub fn full_dimensional_points<R: Rng>(rng: &mut R, dim: usize, max: i64) -> Vec<Vector> {
    assert!(max >= 1, "full-dimensional polytopes need max >= 1");
    loop {
        let count = rng.gen_range(dim + 1..=dim + 4);
        let pts = points(rng, dim, count, max);
        if Polytope::hull(&pts).expect("nonempty point set").is_full_dimensional() {
            return pts;
        }
    }
}

/// A random increasing integer weight with entries in `[0, max]`.
pub fn dominant_weight<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vector {
    let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    c.sort_unstable();
    rational::vector(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generators_are_reproducible() {
        let a = polytope_points(&mut rng(7), 3, 4);
        let b = polytope_points(&mut rng(7), 3, 4);
        assert_eq!(a, b);
        let p = Polytope::hull(&full_dimensional_points(&mut rng(3), 3, 2)).unwrap();
        assert!(p.is_full_dimensional());
        let w = dominant_weight(&mut rng(1), 4, 5);
        assert!(w.windows(2).all(|x| x[0] <= x[1]));
    }
}
