//! Certified real numbers: a value together with a rigorous error bound.
//!
//! Infinite products and the few genuinely transcendental quantities
//! (`q^x` for non-integer rational `x`) are the only places this crate leaves
//! exact rationals. A [`CertifiedReal`] stores `value` and `error_bound`, both
//! exact rationals, with `|value - true| <= error_bound` maintained through
//! every operation. Values are compressed to dyadics after each step so
//! denominators stay bounded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::scalar::{rat_decimal_string, rat_frac, rat_i64, rat_pow, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedReal {
    pub value: Rat,
    pub error_bound: Rat,
}

/// Denominators of compressed values are at most 2^COMPRESS_BITS.
const COMPRESS_BITS: i64 = 256;

impl CertifiedReal {
    pub fn new(value: Rat, error_bound: Rat) -> Self {
        debug_assert!(!error_bound.is_negative());
        CertifiedReal { value, error_bound }
    }

    pub fn exact(value: Rat) -> Self {
        CertifiedReal {
            value,
            error_bound: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        Self::exact(Rat::one())
    }

    /// Round the value to a dyadic, folding the rounding error into the bound.
    pub fn compress(&self) -> Self {
        let bits = self.value.denom().bits() as i64;
        if bits <= COMPRESS_BITS {
            return self.clone();
        }
        let scale = rat_pow(&rat_i64(2), COMPRESS_BITS);
        let scaled = &self.value * &scale;
        let rounded = Rat::from_integer(scaled.round().to_integer());
        let v = rounded / scale.clone();
        let rounding_err = Rat::new(BigInt::one(), scale.numer().clone());
        CertifiedReal::new(v, &self.error_bound + rounding_err)
    }

    pub fn add(&self, other: &Self) -> Self {
        CertifiedReal::new(
            &self.value + &other.value,
            &self.error_bound + &other.error_bound,
        )
        .compress()
    }

    pub fn sub(&self, other: &Self) -> Self {
        CertifiedReal::new(
            &self.value - &other.value,
            &self.error_bound + &other.error_bound,
        )
        .compress()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let err = self.value.abs() * &other.error_bound
            + other.value.abs() * &self.error_bound
            + &self.error_bound * &other.error_bound;
        CertifiedReal::new(&self.value * &other.value, err).compress()
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        CertifiedReal::new(&self.value * r, r.abs() * &self.error_bound).compress()
    }

    pub fn neg(&self) -> Self {
        CertifiedReal::new(-self.value.clone(), self.error_bound.clone())
    }

    /// Reciprocal; the interval must exclude zero.
    pub fn recip(&self) -> Result<Self, Error> {
        let av = self.value.abs();
        if av <= self.error_bound {
            return Err(Error::Internal(
                "certified interval for a divisor contains zero".into(),
            ));
        }
        let err = &self.error_bound / (&av * (&av - &self.error_bound));
        Ok(CertifiedReal::new(self.value.recip(), err).compress())
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let mut acc = CertifiedReal::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when `|self - other| <= tol` is certain given both error bounds.
    pub fn within(&self, other: &Self, tol: &Rat) -> bool {
        (&self.value - &other.value).abs() <= tol + &self.error_bound + &other.error_bound
    }

    pub fn within_rat(&self, target: &Rat, tol: &Rat) -> bool {
        (&self.value - target).abs() <= tol + &self.error_bound
    }

    /// Certain lower bound for the true value.
    pub fn lower(&self) -> Rat {
        &self.value - &self.error_bound
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": rat_decimal_string(&self.value, 20),
            "error_bound": rat_decimal_string(&self.error_bound, 3),
        })
    }
}

impl Serialize for CertifiedReal {
    fn serialize<S>(&self, s: S) -> Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        self.to_json().serialize(s)
    }
}

/// ln 2 to within `eps`, via 2 atanh(1/3).
fn ln2(eps: &Rat) -> CertifiedReal {
    atanh_small(&rat_frac(1, 3), eps).mul_rat(&rat_i64(2))
}

/// atanh(u) = sum u^{2n+1}/(2n+1) for |u| < 1/2, with a certified tail.
fn atanh_small(u: &Rat, eps: &Rat) -> CertifiedReal {
    debug_assert!(u.abs() < rat_frac(1, 2));
    let u2 = u * u;
    let mut term = u.clone();
    let mut sum = Rat::zero();
    let mut n: i64 = 0;
    loop {
        sum += &term / rat_i64(2 * n + 1);
        term *= &u2;
        n += 1;
        // tail <= |term|/(2n+1) * 1/(1-u^2)
        let tail = term.abs() / rat_i64(2 * n + 1) / (Rat::one() - &u2);
        if tail < *eps {
            return CertifiedReal::new(sum, tail).compress();
        }
    }
}

/// Natural logarithm of a positive rational, certified to within `eps`.
pub fn ln_rat(x: &Rat, eps: &Rat) -> Result<CertifiedReal, Error> {
    if !x.is_positive() {
        return Err(Error::Domain(format!(
            "ln requires a positive argument, got {x}"
        )));
    }
    // reduce to [3/4, 3/2] by powers of two
    let mut j: i64 = 0;
    let mut y = x.clone();
    let lo = rat_frac(3, 4);
    let hi = rat_frac(3, 2);
    while y >= hi {
        y /= rat_i64(2);
        j += 1;
    }
    while y < lo {
        y *= rat_i64(2);
        j -= 1;
    }
    let sub_eps = eps / rat_i64(2 * (j.unsigned_abs() as i64 + 1));
    let u = (&y - Rat::one()) / (&y + Rat::one());
    let main = atanh_small(&u, &sub_eps).mul_rat(&rat_i64(2));
    if j == 0 {
        return Ok(main);
    }
    let l2 = ln2(&sub_eps).mul_rat(&rat_i64(j));
    Ok(main.add(&l2))
}

/// exp of a certified rational argument, certified to within `eps` plus the
/// propagated input error.
pub fn exp_certified(x: &CertifiedReal, eps: &Rat) -> CertifiedReal {
    let v = exp_rat(&x.value, eps);
    if x.error_bound.is_zero() {
        return v;
    }
    // |exp(a+d) - exp(a)| <= exp(a)(e^d - 1) <= exp(a) * d * 4^ceil(d)
    let d = &x.error_bound;
    let ceil_d: i64 = d.ceil().to_integer().try_into().unwrap_or(64).min(64).max(1);
    let prop = (v.value.abs() + &v.error_bound) * d * rat_pow(&rat_i64(4), ceil_d);
    CertifiedReal::new(v.value, v.error_bound + prop).compress()
}

fn exp_rat(x: &Rat, eps: &Rat) -> CertifiedReal {
    // range-reduce so |y| <= 1/2, then square k times
    let mut k: u32 = 0;
    let mut y = x.clone();
    let half = rat_frac(1, 2);
    while y.abs() > half {
        y /= rat_i64(2);
        k += 1;
    }
    // exp(|x|) <= 4^{ceil|x|+1} budgets the inner tolerance across the squarings
    let ceil_abs: i64 = x.abs().ceil().to_integer().try_into().unwrap_or(64).min(64);
    let bound = rat_pow(&rat_i64(4), ceil_abs + 1);
    let inner = eps / (&bound * rat_pow(&rat_i64(4), k as i64 + 1));
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut n: i64 = 1;
    loop {
        term = term * &y / rat_i64(n);
        sum += &term;
        n += 1;
        let tail = term.abs() * rat_i64(2);
        if tail < inner {
            break;
        }
    }
    let mut acc = CertifiedReal::new(sum, term.abs() * rat_i64(2)).compress();
    for _ in 0..k {
        acc = acc.mul(&acc.clone());
    }
    acc
}

/// `base^x` for positive rational `base` and rational `x`; exact when `x` is
/// an integer, otherwise via certified exp/ln.
pub fn pow_rat_certified(base: &Rat, x: &Rat, eps: &Rat) -> Result<CertifiedReal, Error> {
    if x.is_integer() {
        let k = x
            .to_integer()
            .try_into()
            .map_err(|_| Error::Domain("exponent too large".into()))?;
        return Ok(CertifiedReal::exact(rat_pow(base, k)));
    }
    if !base.is_positive() {
        return Err(Error::Domain(format!(
            "non-integer power of non-positive base {base}"
        )));
    }
    let scale = x.abs() + Rat::one();
    let l = ln_rat(base, &(eps / rat_i64(16) / &scale))?;
    let m = l.mul_rat(x);
    Ok(exp_certified(&m, &(eps / rat_i64(4))))
}
