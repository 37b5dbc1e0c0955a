//! Seeded sampling of rational points with bounded denominators.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{orientation, Point, Scalar, Sign};

/// Denominator bound used when none is given.
pub const DEFAULT_DENOMINATOR: u32 = 64;

/// Independent seed for instance `i` of a sweep with master seed `master`
/// (splitmix64 finalizer).
pub fn derive_seed(master: u64, i: u64) -> u64 {
    let mut z = master.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic source of rational samples.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    denominator: u32,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler::with_denominator(seed, DEFAULT_DENOMINATOR)
    }

    pub fn with_denominator(seed: u64, denominator: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), denominator: denominator.max(1) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Rational in `[lo, hi]` whose denominator divides a random `q <= bound`.
    pub fn scalar(&mut self, lo: i64, hi: i64) -> Scalar {
        let q = i64::from(self.rng.random_range(1..=self.denominator));
        let p = self.rng.random_range(lo * q..=hi * q);
        Scalar::new(BigInt::from(p), BigInt::from(q))
    }

    /// Point with coordinates in `[lo, hi]`.
    pub fn point(&mut self, dim: usize, lo: i64, hi: i64) -> Point {
        Point::new((0..dim).map(|_| self.scalar(lo, hi)).collect())
    }

    /// `n` positive weights summing to one.
    pub fn weights(&mut self, n: usize) -> Vec<Scalar> {
        let raw: Vec<i64> = (0..n).map(|_| i64::from(self.rng.random_range(1..=self.denominator))).collect();
        let total: i64 = raw.iter().sum();
        raw.into_iter().map(|w| Scalar::new(w.into(), total.into())).collect()
    }

    /// Point in the relative interior of the simplex spanned by `pts`.
    pub fn interior_point(&mut self, pts: &[Point]) -> Point {
        let w = self.weights(pts.len());
        let refs: Vec<&Point> = pts.iter().collect();
        Point::combination(&refs, &w).expect("points share a dimension")
    }

    /// Nondegenerate `m`-simplex with vertices in `[-bound, bound]^m`.
    pub fn simplex(&mut self, m: usize, bound: i64) -> Vec<Point> {
        loop {
            let pts: Vec<Point> = (0..=m).map(|_| self.point(m, -bound, bound)).collect();
            if orientation(&pts).expect("dimensions agree") != Sign::Zero {
                return pts;
            }
        }
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}
