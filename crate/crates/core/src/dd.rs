//! Double description method: extreme rays of a pointed polyhedral cone
//! `{x : a_i . x >= 0}` given by integer rows. Both hull directions
//! (vertices to facets and facets to vertices) are reduced to this.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{primitive, Rational};

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Extreme rays of `{x in R^dim : row . x >= 0 for all rows}`. The cone must
/// be pointed (rows of full column rank), otherwise `Error::Unbounded` is
/// returned. Rays are primitive integer vectors in a deterministic order.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = rows.len();
    let as_rat = |r: &Vec<BigInt>| -> Vec<Rational> { r.iter().map(|x| Rational::from_integer(x.clone())).collect() };

    // Greedy choice of an initial basis of rows.
    let mut basis_idx = Vec::new();
    let mut basis_rows: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis_idx.len() == dim {
            break;
        }
        let mut trial = basis_rows.clone();
        trial.push(as_rat(r));
        if linalg::rank(&trial, dim) == trial.len() {
            basis_rows = trial;
            basis_idx.push(i);
        }
    }
    if basis_idx.len() < dim {
        return Err(Error::Unbounded);
    }

    // Rays of the simplicial cone A_S x >= 0 are the columns of A_S^{-1}.
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[j] = Rational::from_integer(BigInt::from(1));
        let col = linalg::solve_square(&basis_rows, &e).expect("basis rows are independent");
        let (v, _) = primitive(&col);
        let mut zero = Bits::new(m);
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != j {
                zero.set(bi);
            }
        }
        rays.push(Ray { v, zero });
    }

    let mut processed = vec![false; m];
    for &bi in &basis_idx {
        processed[bi] = true;
    }

    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if minus.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zero.set(i);
                }
            }
            continue;
        }

        let mut new_rays = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let z = rays[p].zero.and(&rays[n].zero);
                if (z.count() as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == n || !z.subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = -&vals[n];
                let v: Vec<BigInt> = rays[n].v.iter().zip(&rays[p].v).map(|(a, b)| sp * a + &sn * b).collect();
                let mut zero = z;
                zero.set(i);
                new_rays.push(Ray { v: normalize(v), zero });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zero.set(i);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
