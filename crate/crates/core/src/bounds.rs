//! Exact integer evaluation of the ceiling bounds on the dichromatic number.
//!
//! `Δ̃` is only known through `Δ̃²`, so every comparison isolates the square
//! root on one side and squares once both sides are non-negative.

use num_integer::Roots;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::params::DegreeProfile;

pub type Rational = Ratio<i64>;

fn check_eps(eps: Rational) -> Result<(i128, i128)> {
    if *eps.numer() <= 0 || eps >= Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie strictly between 0 and 1")));
    }
    Ok((*eps.numer() as i128, *eps.denom() as i128))
}

/// Least `k` with `q·k ≥ (q−p)(√t + 1) + p·ω`.
fn least_k(t: u64, omega: usize, p: i128, q: i128) -> usize {
    let t = t as i128;
    let omega = omega as i128;
    let holds = |k: i128| {
        let a = q * k - (q - p) - p * omega;
        a >= 0 && a * a >= (q - p) * (q - p) * t
    };
    // isqrt(t) ≤ √t, so this never overshoots the answer.
    let lower = (q - p) * (t.sqrt() + 1) + p * omega;
    let mut k = lower.div_euclid(q) + i128::from(lower.rem_euclid(q) != 0);
    k = k.max(0);
    while !holds(k) {
        k += 1;
    }
    k as usize
}

/// `⌈(Δ̃ + 1 + ω↔) / 2⌉`.
pub fn reed_bound(profile: &DegreeProfile, omega_bi: usize) -> usize {
    least_k(profile.delta_tilde_sq, omega_bi, 1, 2)
}

/// `⌈(1−ε)(Δ̃ + 1) + ε·ω↔⌉` for rational `0 < ε < 1`.
pub fn epsilon_bound(profile: &DegreeProfile, omega_bi: usize, eps: Rational) -> Result<usize> {
    let (p, q) = check_eps(eps)?;
    Ok(least_k(profile.delta_tilde_sq, omega_bi, p, q))
}

fn ceil_linear(delta_min: usize, weight: i128, omega: usize, eps: Rational) -> Result<usize> {
    let (p, q) = check_eps(eps)?;
    let num = (q - p) * delta_min as i128 + weight * p * omega as i128;
    Ok((num.div_euclid(q) + i128::from(num.rem_euclid(q) != 0)) as usize)
}

/// `⌈(1−ε)Δmin + ε·ω⃗⌉`.
pub fn delmin_directed_bound(delta_min: usize, omega_dir: usize, eps: Rational) -> Result<usize> {
    ceil_linear(delta_min, 1, omega_dir, eps)
}

/// `⌈(1−ε)Δmin + 2ε·ω↔⌉`.
pub fn delmin_biclique_bound(delta_min: usize, omega_bi: usize, eps: Rational) -> Result<usize> {
    ceil_linear(delta_min, 2, omega_bi, eps)
}
