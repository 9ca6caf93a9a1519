//! Binary fixed-point arithmetic on big integers: just enough `ln` and `exp`
//! to take exact ceilings of the closed-form bounds.
//!
//! A value `v` at precision `p` stands for `v / 2^p`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra bits carried through intermediate steps.
const GUARD: u32 = 64;

fn one(prec: u32) -> BigInt {
    BigInt::one() << prec
}

/// `floor(num / den · 2^prec)` for positive `den`.
pub(crate) fn ratio_fixed(num: &BigInt, den: &BigInt, prec: u32) -> BigInt {
    (num << prec).div_floor(den)
}

/// `2·atanh(z)` for `z = num/den ∈ [0, 1/3]`.
fn two_atanh(num: &BigInt, den: &BigInt, prec: u32) -> BigInt {
    let z = ratio_fixed(num, den, prec);
    let z2 = (&z * &z) >> prec;
    let mut power = z;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * j + 1);
        power = (&power * &z2) >> prec;
        j += 1;
    }
    sum << 1
}

pub(crate) fn ln2(prec: u32) -> BigInt {
    let p = prec + GUARD;
    two_atanh(&BigInt::one(), &BigInt::from(3), p) >> GUARD
}

/// Natural logarithm of a positive rational.
pub(crate) fn ln(x: &BigRational, prec: u32) -> BigInt {
    assert!(x.is_positive(), "ln of a non-positive number");
    let p = prec + GUARD;
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    // x = 2^e · y with y ∈ [1, 2)
    let mut e = num.bits() as i64 - den.bits() as i64;
    if e > 0 {
        den <<= e as usize;
    } else if e < 0 {
        num <<= (-e) as usize;
    }
    if num < den {
        num <<= 1;
        e -= 1;
    } else if num >= &den << 1 {
        den <<= 1;
        e += 1;
    }
    let frac = two_atanh(&(&num - &den), &(&num + &den), p);
    let total = frac + ln2(p) * BigInt::from(e);
    total >> GUARD
}

/// `e^r` for `0 ≤ r < 1` (fixed point at `prec`), by Taylor series.
fn exp_small(r: &BigInt, prec: u32) -> BigInt {
    let mut term = one(prec);
    let mut sum = term.clone();
    let mut j: u64 = 1;
    while !term.is_zero() {
        term = ((&term * r) >> prec) / BigInt::from(j);
        sum += &term;
        j += 1;
    }
    sum
}

/// `e^x` for a non-negative rational `x`, returned at `prec` fractional bits.
/// The working precision grows with the integer part of the result so the
/// fractional bits stay meaningful.
pub(crate) fn exp(x: &BigRational, prec: u32) -> BigInt {
    assert!(!x.is_negative(), "exp of a negative number");
    let approx_bits = x.to_f64().unwrap_or(f64::MAX) * std::f64::consts::LOG2_E;
    let int_bits = approx_bits.ceil().max(0.0) as u32;
    let p = prec + int_bits + GUARD + 32;
    let xf = ratio_fixed(x.numer(), x.denom(), p);
    let l2 = ln2(p);
    let (q, r) = xf.div_mod_floor(&l2);
    let q = q.to_u64().expect("exponent fits in u64");
    let er = exp_small(&r, p);
    // 2^q · e^r at precision `prec`
    let shift = q as i64 + prec as i64 - p as i64;
    if shift >= 0 {
        er << shift as usize
    } else {
        er >> (-shift) as usize
    }
}

/// `2^x` for a non-negative rational `x`.
pub(crate) fn exp2(x: &BigRational, prec: u32) -> BigInt {
    let int = x.floor().to_integer();
    let frac = x - BigRational::from_integer(int.clone());
    let p = prec + GUARD;
    let t = frac_times_ln2(&frac, p);
    let mantissa = exp_small(&t, p);
    let q = int.to_u64().expect("exponent fits in u64");
    let shift = q as i64 - GUARD as i64;
    if shift >= 0 {
        mantissa << shift as usize
    } else {
        mantissa >> (-shift) as usize
    }
}

fn frac_times_ln2(frac: &BigRational, prec: u32) -> BigInt {
    let f = ratio_fixed(frac.numer(), frac.denom(), prec);
    (f * ln2(prec)) >> prec
}

/// Smallest integer not below the fixed-point value.
pub(crate) fn ceil(v: &BigInt, prec: u32) -> BigInt {
    let (q, r) = v.div_mod_floor(&one(prec));
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Nearest integer, ties up.
pub(crate) fn round(v: &BigInt, prec: u32) -> BigInt {
    (v + (BigInt::one() << (prec - 1))) >> prec
}

pub(crate) fn to_biguint(v: BigInt) -> BigUint {
    match v.sign() {
        Sign::Minus => BigUint::zero(),
        _ => v.magnitude().clone(),
    }
}

#[cfg(test)]
pub(crate) fn to_f64(v: &BigInt, prec: u32) -> f64 {
    BigRational::new(v.clone(), one(prec)).to_f64().unwrap_or(f64::INFINITY)
}

pub(crate) fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}
