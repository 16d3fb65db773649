//! Seeded random parameters for randomized identity testing.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_algebra::{Complex64, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` pairwise distinct rationals in [lo, hi] with denominators up to `max_den`.
pub fn distinct_rationals(rng: &mut ChaCha8Rng, count: usize, lo: i64, hi: i64, max_den: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(lo * den..=hi * den);
        let r = Rational::new(BigInt::from(num), BigInt::from(den));
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// A nonzero rational in [lo, hi] with a small denominator.
pub fn rational_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    loop {
        let r = distinct_rationals(rng, 1, lo, hi, max_den).remove(0);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Pairwise distinct floats in [lo, hi], separated by at least `gap`.
pub fn distinct_floats(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.gen_range(lo..hi);
        if out.iter().all(|w| (w - v).abs() >= gap) {
            out.push(v);
        }
    }
    out
}

pub fn float_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

pub fn complex_in(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let a = distinct_rationals(&mut rng(7), 6, 2, 1000, 5);
        let b = distinct_rationals(&mut rng(7), 6, 2, 1000, 5);
        assert_eq!(a, b);
        for (i, x) in a.iter().enumerate() {
            assert!(*x >= Rational::from_integer(2.into()));
            assert!(a[i + 1..].iter().all(|y| y != x));
        }
    }
}
