//! Rational interval arithmetic for deciding comparisons that involve `e`,
//! natural logarithms and square roots.
//!
//! Every primitive returns an interval guaranteed to contain the true value,
//! with width shrinking as the requested precision grows. Callers decide a
//! sign by refining until the interval excludes zero.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest precision tried before giving up on a comparison.
pub const MAX_BITS: u32 = 1 << 13;
const START_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_down(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new((q * BigRational::from_integer(scale.clone())).floor().to_integer(), scale)
}

fn round_up(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new((q * BigRational::from_integer(scale.clone())).ceil().to_integer(), scale)
}

impl Interval {
    pub fn exact(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Widens the endpoints to dyadic rationals with `bits` fractional bits,
    /// keeping numerators and denominators bounded.
    pub fn rounded(&self, bits: u32) -> Self {
        if self.is_exact() && self.lo.denom().bits() <= bits as u64 {
            return self.clone();
        }
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().expect("four products");
        let hi = c.iter().max().cloned().expect("four products");
        Interval { lo, hi }
    }

    /// Panics if `o` contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "division by an interval containing zero");
        let inv = Interval { lo: o.hi.recip(), hi: o.lo.recip() };
        self.mul(&inv)
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        self.mul(&Interval::exact(q.clone()))
    }

    pub fn powi(&self, k: u32) -> Interval {
        let mut r = Interval::exact(BigRational::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).min(&o.hi).clone() }
    }

    /// Sign of the contained value, when the interval decides it.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

fn factorial_recip_sum(terms: u32) -> (BigRational, BigRational) {
    // Σ_{j ≤ J} 1/j! and 1/(J+1)!
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for j in 0..=terms {
        if j > 0 {
            term /= int(j as i64);
        }
        sum += &term;
    }
    let next = term / int(terms as i64 + 1);
    (sum, next)
}

/// Interval containing `e`.
pub fn e(bits: u32) -> Interval {
    // The tail Σ_{j > J} 1/j! is at most 2/(J+1)!.
    let mut terms = 4;
    loop {
        let (sum, next) = factorial_recip_sum(terms);
        let tail = next * int(2);
        if tail < BigRational::new(BigInt::one(), pow2(bits)) {
            return Interval::new(sum.clone(), sum + tail).rounded(bits + 4);
        }
        terms += 4;
    }
}

/// Interval containing `e^k`.
pub fn e_pow(k: u32, bits: u32) -> Interval {
    e(bits + 4 * k + 8).powi(k).rounded(bits + 8)
}

/// `2·atanh(z)` for `0 ≤ z ≤ 1/3`, i.e. `ln((1+z)/(1−z))`.
fn two_atanh(z: &BigRational, bits: u32) -> Interval {
    if z.is_zero() {
        return Interval::exact(BigRational::zero());
    }
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    let eps = BigRational::new(BigInt::one(), pow2(bits + 2));
    let mut j: i64 = 0;
    loop {
        sum += &power / int(2 * j + 1);
        power = round_up(&(&power * &z2), bits + 16);
        j += 1;
        // remaining terms ≤ z^{2j+1} / ((2j+1)(1 − z²))
        let tail = &power / (int(2 * j + 1) * (BigRational::one() - &z2));
        if tail < eps {
            // each rounded power overshoots by less than 2^-(bits+15)
            let lo = &sum - int(j) * BigRational::new(BigInt::one(), pow2(bits + 15));
            let two = int(2);
            return Interval::new(lo.max(BigRational::zero()) * &two, (sum + tail) * two)
                .rounded(bits + 4);
        }
    }
}

pub fn ln2(bits: u32) -> Interval {
    two_atanh(&rat(1, 3), bits + 2)
}

/// Interval containing `ln q` for rational `q > 0`.
pub fn ln(q: &BigRational, bits: u32) -> Interval {
    assert!(q.is_positive(), "logarithm of a non-positive number");
    // q = 2^s · y with 1 ≤ y < 2
    let mut s = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut y = shift(q, -s);
    while y < BigRational::one() {
        s -= 1;
        y = shift(q, -s);
    }
    while y >= int(2) {
        s += 1;
        y = shift(q, -s);
    }
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let extra = 64 - (s.unsigned_abs().max(1)).leading_zeros();
    let l2 = ln2(bits + extra + 4).scale(&int(s));
    l2.add(&two_atanh(&z, bits + 4)).rounded(bits + 4)
}

fn shift(q: &BigRational, s: i64) -> BigRational {
    if s >= 0 {
        q * BigRational::from_integer(pow2(s as u32))
    } else {
        q / BigRational::from_integer(pow2((-s) as u32))
    }
}

fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Interval containing `√q` for rational `q ≥ 0`.
pub fn sqrt(q: &BigRational, bits: u32) -> Interval {
    assert!(!q.is_negative(), "square root of a negative number");
    let num = q.numer().magnitude() * q.denom().magnitude();
    let den = q.denom().magnitude();
    // √(n/d) = √(n·d)/d
    let root = isqrt(&num);
    if &root * &root == num {
        return Interval::exact(BigRational::new(root.into(), den.clone().into()));
    }
    let scale = BigUint::one() << (2 * bits as usize);
    let scaled = isqrt(&(&num * &scale));
    let denom = BigInt::from(den.clone()) * pow2(bits);
    let lo = BigRational::new(BigInt::from(scaled.clone()), denom.clone());
    let hi = BigRational::new(BigInt::from(scaled + 1u32), denom);
    Interval::new(lo, hi)
}

/// Sign of the quantity enclosed by `f(bits)` for increasing precision.
/// `None` if still undecided at [`MAX_BITS`].
pub fn decide_sign<F: Fn(u32) -> Interval>(f: F) -> Option<Ordering> {
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let iv = f(bits);
        if let Some(s) = iv.sign() {
            return Some(s);
        }
        if iv.is_exact() {
            return None;
        }
        bits *= 2;
    }
    None
}

/// `⌊x⌋` for the quantity enclosed by `f(bits)`.
pub fn decide_floor<F: Fn(u32) -> Interval>(f: F) -> Option<BigInt> {
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let iv = f(bits);
        let (a, b) = (iv.lo.floor().to_integer(), iv.hi.floor().to_integer());
        if a == b {
            return Some(a);
        }
        bits *= 2;
    }
    None
}

/// `⌈x⌉` for the quantity enclosed by `f(bits)`.
pub fn decide_ceil<F: Fn(u32) -> Interval>(f: F) -> Option<BigInt> {
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let iv = f(bits);
        let (a, b) = (iv.lo.ceil().to_integer(), iv.hi.ceil().to_integer());
        if a == b {
            return Some(a);
        }
        bits *= 2;
    }
    None
}

pub fn to_big(q: num_rational::Ratio<i64>) -> BigRational {
    rat(*q.numer(), *q.denom())
}
