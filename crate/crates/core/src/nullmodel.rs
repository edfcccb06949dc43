//! A discrete-Gaussian model for center sizes and the tree-margin estimate.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::curves::supersingular_count_formula;
use crate::error::ModelError;

/// Parameters of the eccentricity sampler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// `μ = mu_coeff · ln p`.
    pub mu_coeff: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { mu_coeff: 1.8, sigma: 0.38, seed: 0 }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(ModelError::InvalidParameter("sigma must be positive"));
        }
        if !self.mu_coeff.is_finite() {
            return Err(ModelError::InvalidParameter("mean coefficient must be finite"));
        }
        Ok(())
    }
}

/// Number of sampled vertices for `p`, and whether the count lies outside
/// the `p ≡ 1 (mod 12)` rule.
pub fn model_vertex_count(p: u64) -> (u64, bool) {
    if p % 12 == 1 {
        ((p - 1) / 12, false)
    } else {
        (supersingular_count_formula(p).max(1), true)
    }
}

/// Size of the set of samples attaining the minimum floor.
pub fn sample_center_size(p: u64, params: &ModelParams) -> Result<u64, ModelError> {
    params.validate()?;
    let (n, _) = model_vertex_count(p);
    sample_min_count(n, libm::log(p as f64) * params.mu_coeff, params.sigma, params.seed ^ p)
}

/// Draws `n` floored normals and counts how many equal the minimum.
pub fn sample_min_count(n: u64, mu: f64, sigma: f64, seed: u64) -> Result<u64, ModelError> {
    if n == 0 {
        return Err(ModelError::InvalidParameter("vertex count must be at least 1"));
    }
    let normal = Normal::new(mu, sigma).map_err(|_| ModelError::InvalidParameter("sigma must be positive"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = i64::MAX;
    let mut count = 0;
    for _ in 0..n {
        let v = libm::floor(normal.sample(&mut rng)) as i64;
        if v < best {
            best = v;
            count = 1;
        } else if v == best {
            count += 1;
        }
    }
    Ok(count)
}

/// `|V(T_2)| − n` for the depth-`r` tree of a 3-regular graph.
pub fn tree_margin(n_vertices: u64, r: u32) -> i64 {
    let tree = 1i128 + 3 * ((1i128 << r) - 1);
    (tree - i128::from(n_vertices)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_margin_examples() {
        assert_eq!(tree_margin(94, 5), 0);
        assert_eq!(tree_margin(1, 0), 0);
        assert_eq!(tree_margin(3, 2), 7);
    }

    #[test]
    fn single_vertex_is_its_own_center() {
        for seed in 0..20 {
            assert_eq!(sample_min_count(1, 5.0, 0.38, seed).unwrap(), 1);
        }
        assert_eq!(sample_center_size(13, &ModelParams::default()).unwrap(), 1);
    }

    #[test]
    fn deterministic_under_seed() {
        let params = ModelParams { seed: 42, ..ModelParams::default() };
        for p in [13u64, 37, 1009, 4909] {
            assert_eq!(sample_center_size(p, &params).unwrap(), sample_center_size(p, &params).unwrap());
        }
    }

    #[test]
    fn rejects_bad_sigma() {
        for sigma in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            let params = ModelParams { sigma, ..ModelParams::default() };
            assert!(sample_center_size(13, &params).is_err());
        }
        assert!(sample_min_count(0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn vertex_count_rule() {
        assert_eq!(model_vertex_count(37), (3, false));
        assert_eq!(model_vertex_count(23), (3, true));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn margin_monotone(n in 0u64..100_000, r in 0u32..40) {
                prop_assert!(tree_margin(n, r + 1) > tree_margin(n, r));
                prop_assert!(tree_margin(n + 1, r) < tree_margin(n, r));
            }

            #[test]
            fn count_is_bounded(n in 1u64..2000, seed in any::<u64>()) {
                let c = sample_min_count(n, 12.0, 0.38, seed).unwrap();
                prop_assert!(c >= 1 && c <= n);
            }
        }
    }
}
