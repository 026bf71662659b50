#![allow(dead_code)]

use angular_uncertainty::{AngularState, LandauState};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const ANGULAR_WINDOW: (i64, i64) = (-6, 6);
pub const LANDAU_WINDOW: (i64, i64) = (0, 6);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian coefficients on a random non-empty subset of the window.
fn random_terms(rng: &mut ChaCha8Rng, (lo, hi): (i64, i64)) -> Vec<(i64, Complex64)> {
    loop {
        let density: f64 = rng.random_range(0.2..1.0);
        let mut terms = Vec::new();
        for m in lo..=hi {
            if rng.random_bool(density) {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                terms.push((m, Complex64::new(re, im)));
            }
        }
        if !terms.is_empty() {
            return terms;
        }
    }
}

pub fn random_angular(rng: &mut ChaCha8Rng) -> AngularState {
    AngularState::new(random_terms(rng, ANGULAR_WINDOW)).unwrap().normalize().unwrap()
}

pub fn random_landau(rng: &mut ChaCha8Rng) -> LandauState {
    LandauState::new(random_terms(rng, LANDAU_WINDOW)).unwrap().normalize().unwrap()
}

pub fn angular_states(seed: u64, count: usize) -> Vec<AngularState> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_angular(&mut rng)).collect()
}

pub fn landau_states(seed: u64, count: usize) -> Vec<LandauState> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_landau(&mut rng)).collect()
}
