//! The constants `a`, `ε0`, `Δ2`, `Δ(a)`, `ε`, `γ_ε` that drive the main
//! upper bound, evaluated exactly, and the claim predicates a minimum
//! counterexample must satisfy.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::bounds::Rational;
use crate::error::{Error, Result};
use crate::exact::{self, decide_ceil, decide_sign, int, Interval};
use crate::params::DegreeProfile;

/// `a = 1/600`.
pub fn default_a() -> Rational {
    Rational::new(1, 600)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsTerm {
    InvDelta1,
    InvDelta2,
    InvDeltaOfA,
    ThirdEps0,
    ExpTerm,
}

const TERMS: [EpsTerm; 5] =
    [EpsTerm::InvDelta1, EpsTerm::InvDelta2, EpsTerm::InvDeltaOfA, EpsTerm::ThirdEps0, EpsTerm::ExpTerm];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainConstants {
    pub a: Rational,
    pub delta1: u64,
    pub delta1_is_default: bool,
    pub delta2: u64,
    /// `⌈Δ(a)⌉`; an integer degree reaches `Δ(a)` iff it reaches this.
    pub delta_of_a_ceil: u64,
    /// Which term attains the minimum defining `ε`.
    pub eps_term: EpsTerm,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub a: String,
    pub eps0: f64,
    pub delta1: u64,
    pub delta1_is_default: bool,
    pub delta2: u64,
    pub delta_of_a: f64,
    pub delta_of_a_ceil: u64,
    pub eps: f64,
    pub eps_term: EpsTerm,
    pub gamma_eps: f64,
    pub gamma_at_most_twice_eps: bool,
    pub eps_at_most_third_eps0: bool,
}

fn big(a: Rational) -> BigRational {
    exact::to_big(a)
}

/// Sign of `a(Δ−1) − ln³Δ`, for `Δ ≥ 2`.
fn delta2_holds(a: &BigRational, delta: u64) -> bool {
    let d = BigRational::from_integer(BigInt::from(delta));
    let lhs = a * (&d - BigRational::one());
    decide_sign(|bits| Interval::exact(lhs.clone()).sub(&exact::ln(&d, bits + 8).powi(3)))
        .expect("ln of an integer ≥ 2 is transcendental")
        == Ordering::Greater
}

/// `min{Δ ≥ 2 : a > ln³Δ / (Δ−1)}` (natural logarithm).
///
/// `ln³x/(x−1)` is decreasing for `x ≥ e³`, so past 21 the predicate is
/// monotone and a doubling-then-bisection search is exact.
pub fn delta2(a: Rational) -> Result<u64> {
    if *a.numer() <= 0 {
        return Err(Error::InvalidParameter(format!("a = {a} must be positive")));
    }
    let a = big(a);
    if let Some(d) = (2..=21).find(|&d| delta2_holds(&a, d)) {
        return Ok(d);
    }
    let (mut lo, mut hi) = (21u64, 42u64);
    while !delta2_holds(&a, hi) {
        lo = hi;
        hi = hi.checked_mul(2).ok_or_else(|| Error::InvalidParameter("a is too small".into()))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if delta2_holds(&a, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `Δ(a) = max((1−a)/(√a − a), (1−a)/a)`.
pub fn delta_of_a(a: Rational, bits: u32) -> Interval {
    let a = big(a);
    let one_minus = Interval::exact(BigRational::one() - &a);
    let first = one_minus.div(&exact::sqrt(&a, bits + 16).sub(&Interval::exact(a.clone())));
    let second = one_minus.div(&Interval::exact(a));
    let hi = (&first.hi).max(&second.hi).clone();
    let lo = (&first.lo).max(&second.lo).clone();
    Interval::new(lo, hi).rounded(bits + 4)
}

/// `ε0 = 1/6 − 4√a`.
pub fn eps0(a: Rational, bits: u32) -> Interval {
    let root = exact::sqrt(&big(a), bits + 8);
    Interval::exact(exact::rat(1, 6)).sub(&root.scale(&int(4)))
}

/// `ε0 > 0`, decided exactly as `16a < 1/36`.
pub fn eps0_positive(a: Rational) -> bool {
    a * 16 < Rational::new(1, 36)
}

impl MainConstants {
    pub fn new(a: Rational, delta1: Option<u64>) -> Result<Self> {
        if *a.numer() <= 0 || a >= Rational::from_integer(1) {
            return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
        }
        if !eps0_positive(a) {
            return Err(Error::InvalidParameter(format!("a = {a} makes 1/6 − 4√a non-positive")));
        }
        let delta2 = delta2(a)?;
        if delta1 == Some(0) {
            return Err(Error::InvalidParameter("Δ1 must be positive".into()));
        }
        let delta_of_a_ceil = decide_ceil(|b| delta_of_a(a, b))
            .and_then(|c| c.to_u64())
            .ok_or_else(|| Error::InternalInconsistency("could not resolve ⌈Δ(a)⌉".into()))?;
        let mut c = MainConstants {
            a,
            delta1: delta1.unwrap_or(delta2),
            delta1_is_default: delta1.is_none(),
            delta2,
            delta_of_a_ceil,
            eps_term: EpsTerm::InvDelta1,
        };
        c.eps_term = c.argmin()?;
        Ok(c)
    }

    pub fn default_constants() -> Self {
        MainConstants::new(default_a(), None).expect("a = 1/600 is admissible")
    }

    fn term(&self, t: EpsTerm, bits: u32) -> Interval {
        let a = big(self.a);
        match t {
            EpsTerm::InvDelta1 => Interval::exact(exact::rat(1, self.delta1 as i64)),
            EpsTerm::InvDelta2 => Interval::exact(exact::rat(1, self.delta2 as i64)),
            EpsTerm::InvDeltaOfA => {
                Interval::exact(BigRational::one()).div(&delta_of_a(self.a, bits + 16)).rounded(bits + 4)
            }
            EpsTerm::ThirdEps0 => eps0(self.a, bits + 4).scale(&exact::rat(1, 3)),
            EpsTerm::ExpTerm => {
                Interval::exact(a / int(16)).div(&exact::e_pow(7, bits + 16)).rounded(bits + 4)
            }
        }
    }

    fn argmin(&self) -> Result<EpsTerm> {
        for (i, &t) in TERMS.iter().enumerate() {
            let mut is_min = true;
            for (j, &u) in TERMS.iter().enumerate() {
                if i == j {
                    continue;
                }
                let s = decide_sign(|b| self.term(t, b).sub(&self.term(u, b)))
                    .ok_or_else(|| Error::InternalInconsistency("undecided ε comparison".into()))?;
                if s == Ordering::Greater || (s == Ordering::Equal && j < i) {
                    is_min = false;
                    break;
                }
            }
            if is_min {
                return Ok(t);
            }
        }
        Err(Error::InternalInconsistency("no minimal ε term".into()))
    }

    pub fn eps(&self, bits: u32) -> Interval {
        self.term(self.eps_term, bits)
    }

    /// `γ_ε = ε / (1 − ε)`.
    pub fn gamma(&self, bits: u32) -> Interval {
        let e = self.eps(bits + 8);
        e.div(&Interval::exact(BigRational::one()).sub(&e)).rounded(bits + 4)
    }

    /// `γ_ε ≤ 2ε`, equivalently `ε ≤ 1/2`.
    pub fn gamma_at_most_twice_eps(&self) -> bool {
        decide_sign(|b| Interval::exact(exact::rat(1, 2)).sub(&self.eps(b))) != Some(Ordering::Less)
    }

    /// `ε ≤ ε0 / 3`.
    pub fn eps_at_most_third_eps0(&self) -> bool {
        self.eps_term == EpsTerm::ThirdEps0
            || decide_sign(|b| self.term(EpsTerm::ThirdEps0, b).sub(&self.eps(b))) != Some(Ordering::Less)
    }

    /// `Δmax ≤ (1 + γ_ε)·Δ̃`, decided as `Δmax² ≤ (1 + γ_ε)²·Δ̃²`.
    pub fn deltil_close_delmax(&self, profile: &DegreeProfile) -> bool {
        let dm = profile.delta_max as u64;
        if dm * dm <= profile.delta_tilde_sq {
            return true;
        }
        let t = int(profile.delta_tilde_sq as i64);
        let lhs = int((dm * dm) as i64);
        decide_sign(|b| {
            let g = Interval::exact(BigRational::one()).add(&self.gamma(b + 8));
            g.powi(2).scale(&t).sub(&Interval::exact(lhs.clone()))
        }) != Some(Ordering::Less)
    }

    /// `Δ̃ ≥ max(Δ1, Δ2, Δ(a))`.
    pub fn large_delta(&self, profile: &DegreeProfile) -> bool {
        let t = profile.delta_tilde_sq;
        let m = self.delta1.max(self.delta2);
        if (t as u128) < (m as u128) * (m as u128) {
            return false;
        }
        let t = int(t as i64);
        decide_sign(|b| Interval::exact(t.clone()).sub(&delta_of_a(self.a, b + 8).powi(2)))
            != Some(Ordering::Less)
    }

    pub fn report(&self) -> ConstantsReport {
        let bits = 96;
        ConstantsReport {
            a: self.a.to_string(),
            eps0: eps0(self.a, bits).midpoint_f64(),
            delta1: self.delta1,
            delta1_is_default: self.delta1_is_default,
            delta2: self.delta2,
            delta_of_a: delta_of_a(self.a, bits).midpoint_f64(),
            delta_of_a_ceil: self.delta_of_a_ceil,
            eps: self.eps(bits).midpoint_f64(),
            eps_term: self.eps_term,
            gamma_eps: self.gamma(bits).midpoint_f64(),
            gamma_at_most_twice_eps: self.gamma_at_most_twice_eps(),
            eps_at_most_third_eps0: self.eps_at_most_third_eps0(),
        }
    }
}

/// `ω↔ ≤ (2/3)(Δmax + 1)`.
pub fn omega_small(delta_max: usize, omega_bi: usize) -> bool {
    3 * omega_bi <= 2 * (delta_max + 1)
}

/// Interval containing `ℓ = B / (4e⁷Δ)`, for `Δ ≥ 1`.
pub fn ell_interval(b: u64, delta: u64, bits: u32) -> Interval {
    let num = Interval::exact(BigRational::from_integer(BigInt::from(b)));
    let den = exact::e_pow(7, bits + 16).scale(&int(4 * delta as i64));
    num.div(&den).rounded(bits + 4)
}

/// `⌊B / (4e⁷Δ)⌋`.
pub fn ell_floor(b: u64, delta: u64) -> u64 {
    if b == 0 || delta == 0 {
        return 0;
    }
    exact::decide_floor(|bits| ell_interval(b, delta, bits))
        .and_then(|f| f.to_u64())
        .expect("B/(4e⁷Δ) is irrational for B > 0")
}
