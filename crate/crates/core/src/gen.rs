//! Seeded random point sets with dyadic coordinates in `[0, 1000)`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::geom::{Point, PointSet};
use crate::rational::Rational;

/// Coordinates are multiples of `2^-DYADIC_BITS`.
pub const DYADIC_BITS: u32 = 16;
pub const RANGE: i64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution2d {
    Uniform,
    Clustered,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Keeps drawing candidates until `n` of them are pairwise in general
/// position. Coordinates are held as integer numerators over `2^DYADIC_BITS`.
struct Collector {
    xs: HashSet<i64>,
    ys: HashSet<i64>,
    sums: HashSet<i64>,
    diffs: HashSet<i64>,
    points: Vec<(i64, i64)>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            xs: HashSet::new(),
            ys: HashSet::new(),
            sums: HashSet::new(),
            diffs: HashSet::new(),
            points: Vec::new(),
        }
    }

    fn offer(&mut self, x: i64, y: i64) -> bool {
        if self.xs.contains(&x)
            || self.ys.contains(&y)
            || self.sums.contains(&(x + y))
            || self.diffs.contains(&(x - y))
        {
            return false;
        }
        self.xs.insert(x);
        self.ys.insert(y);
        self.sums.insert(x + y);
        self.diffs.insert(x - y);
        self.points.push((x, y));
        true
    }

    fn finish(self) -> PointSet {
        let denom = 1i64 << DYADIC_BITS;
        PointSet::new_unchecked(
            self.points
                .into_iter()
                .map(|(x, y)| Point::new(Rational::new(x, denom), Rational::new(y, denom)))
                .collect(),
        )
    }
}

pub fn uniform(n: usize, seed: u64) -> PointSet {
    let mut rng = rng_from_seed(seed);
    let hi = RANGE << DYADIC_BITS;
    let mut c = Collector::new();
    while c.points.len() < n {
        let x = rng.random_range(0..hi);
        let y = rng.random_range(0..hi);
        c.offer(x, y);
    }
    c.finish()
}

/// Gaussian clusters around uniformly drawn centers.
pub fn clustered(n: usize, seed: u64) -> PointSet {
    let mut rng = rng_from_seed(seed);
    let unit = (1i64 << DYADIC_BITS) as f64;
    let hi = RANGE << DYADIC_BITS;
    let clusters = (n / 20).max(1);
    let centers: Vec<(f64, f64)> = (0..clusters)
        .map(|_| {
            (
                rng.random_range(0.0..RANGE as f64),
                rng.random_range(0.0..RANGE as f64),
            )
        })
        .collect();
    let spread = Normal::new(0.0, RANGE as f64 / 40.0).expect("valid deviation");
    let mut c = Collector::new();
    while c.points.len() < n {
        let (cx, cy) = centers[rng.random_range(0..clusters)];
        let x = ((cx + spread.sample(&mut rng)) * unit) as i64;
        let y = ((cy + spread.sample(&mut rng)) * unit) as i64;
        if (0..hi).contains(&x) && (0..hi).contains(&y) {
            c.offer(x, y);
        }
    }
    c.finish()
}

pub fn generate(kind: Distribution2d, n: usize, seed: u64) -> PointSet {
    match kind {
        Distribution2d::Uniform => uniform(n, seed),
        Distribution2d::Clustered => clustered(n, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for kind in [Distribution2d::Uniform, Distribution2d::Clustered] {
            let a = generate(kind, 200, 7);
            let b = generate(kind, 200, 7);
            assert_eq!(a, b);
            assert_eq!(a.len(), 200);
            assert!(PointSet::new(a.into_points()).is_ok());
        }
        assert_ne!(uniform(10, 1), uniform(10, 2));
        assert_eq!(uniform(2, 1).len(), 2);
    }
}
