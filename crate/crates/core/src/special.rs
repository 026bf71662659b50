//! Factorials and Γ at half-integers.

use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Below this argument factorials are accumulated exactly; above it we go
/// through log-Γ.
pub const EXACT_LIMIT: u64 = 20;

/// `n!` as a float. Exact for `n ≤ 20`.
pub fn factorial(n: u64) -> f64 {
    if n <= EXACT_LIMIT {
        (1..=n).product::<u64>() as f64
    } else {
        ln_factorial(n).exp()
    }
}

pub fn ln_factorial(n: u64) -> f64 {
    if n <= EXACT_LIMIT {
        factorial(n).ln()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// `Γ(k/2 + 1)` for a non-negative integer `k`.
pub fn gamma_half_plus_one(k: u64) -> f64 {
    if k >= EXACT_LIMIT {
        return ln_gamma(k as f64 / 2.0 + 1.0).exp();
    }
    if k.is_multiple_of(2) {
        factorial(k / 2)
    } else {
        // Γ(3/2) = √π/2, then Γ(x + 1) = x Γ(x).
        let mut g = PI.sqrt() / 2.0;
        for j in 1..=(k - 1) / 2 {
            g *= j as f64 + 0.5;
        }
        g
    }
}

/// `ln Γ(k/2 + 1)`.
pub fn ln_gamma_half_plus_one(k: u64) -> f64 {
    if k >= EXACT_LIMIT {
        ln_gamma(k as f64 / 2.0 + 1.0)
    } else {
        gamma_half_plus_one(k).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(1), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn log_path_matches_exact_path_at_the_switch() {
        let exact: f64 = (1..=21u64).map(|k| (k as f64).ln()).sum();
        assert_relative_eq!(ln_factorial(21), exact, max_relative = 1e-13);
        assert_relative_eq!(factorial(21), 21.0 * factorial(20), max_relative = 1e-12);
    }

    #[test]
    fn half_integer_gamma() {
        assert_relative_eq!(gamma_half_plus_one(0), 1.0);
        assert_relative_eq!(gamma_half_plus_one(1), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half_plus_one(3), 0.75 * PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half_plus_one(4), 2.0);
        for k in 0..EXACT_LIMIT {
            let reference = ln_gamma(k as f64 / 2.0 + 1.0).exp();
            assert_relative_eq!(gamma_half_plus_one(k), reference, max_relative = 1e-12);
        }
        assert_relative_eq!(
            ln_gamma_half_plus_one(41),
            ln_gamma(21.5),
            max_relative = 1e-14
        );
    }
}
