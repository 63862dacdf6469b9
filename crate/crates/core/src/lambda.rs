//! Deterministic sampling of generic rational parameter values, and a
//! consensus helper for computations that specialize the pencil parameter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{GeomError, Result};

/// Deterministic source of generic rational parameter values.
///
/// Samples rationals `p/q` with `1 <= |p|, q <= 97`, excluding `0` and `1`
/// (the rational solutions of `lambda^k = 1` for the degrees in scope are
/// exactly `lambda = 1` for odd `k`, and `+-1` for even `k`).
pub struct ParamSampler {
    rng: ChaCha8Rng,
}

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        ParamSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Next generic rational value.
    pub fn next_value(&mut self) -> BigRational {
        loop {
            let p: i64 = self.rng.gen_range(-97..=97);
            let q: i64 = self.rng.gen_range(1..=97);
            if p == 0 {
                continue;
            }
            let v = BigRational::new(BigInt::from(p), BigInt::from(q));
            if v == BigRational::one() || v == -BigRational::one() {
                continue;
            }
            return v;
        }
    }
}

/// Run `f` at successive sampled parameter values until `required` successive
/// successful evaluations agree; degenerate samples (errors) are skipped, up
/// to a bounded number of attempts.
pub fn consensus<T, F>(seed: u64, required: usize, mut f: F) -> Result<T>
where
    T: PartialEq + Clone,
    F: FnMut(&BigRational) -> Result<T>,
{
    let mut sampler = ParamSampler::new(seed);
    let mut agreed: Option<T> = None;
    let mut count = 0;
    let mut attempts = 0;
    while attempts < required + 24 {
        attempts += 1;
        let v = sampler.next_value();
        match f(&v) {
            Ok(result) => match &agreed {
                Some(prev) if *prev == result => {
                    count += 1;
                    if count >= required {
                        return Ok(result);
                    }
                }
                Some(_) => {
                    // disagreement between generic samples: restart consensus
                    agreed = Some(result);
                    count = 1;
                }
                None => {
                    agreed = Some(result);
                    count = 1;
                }
            },
            Err(GeomError::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GeomError::Degenerate(
        "no consensus among sampled parameter values".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn sampler_is_deterministic_and_generic() {
        let mut a = ParamSampler::new(7);
        let mut b = ParamSampler::new(7);
        for _ in 0..50 {
            let x = a.next_value();
            assert_eq!(x, b.next_value());
            assert!(!x.is_zero());
            assert_ne!(x, BigRational::one());
        }
    }

    #[test]
    fn consensus_skips_degenerate_samples() {
        let mut calls = 0;
        let r = consensus(0, 3, |v| {
            calls += 1;
            if calls <= 2 {
                return Err(GeomError::Degenerate("skip".into()));
            }
            Ok(v.denom() > &BigInt::zero())
        })
        .unwrap();
        assert!(r);
        assert!(calls >= 5);
    }
}
