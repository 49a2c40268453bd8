//! Exact rational scalars and their string forms.
//!
//! Every algebraic quantity in this crate is a [`Rat`] (arbitrary-precision
//! rational). Rationals serialize as `p/q` strings (`"1/2"`, `"-3/7"`, `"3"`);
//! tolerances and other decimal inputs (`"1e-6"`, `"0.25"`) parse exactly into
//! rationals as well.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer power with negative exponents allowed (base must be nonzero for k < 0).
pub fn rat_pow(base: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let e: i32 = k
        .unsigned_abs()
        .try_into()
        .expect("exponent magnitude exceeds i32");
    let p = base.pow(e);
    if k > 0 {
        p
    } else {
        p.recip()
    }
}

/// Parse `p/q`, plain integers, or decimal/scientific notation, all exactly.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    // decimal / scientific
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = format!(
        "{}{}",
        int_part.trim_start_matches(['-', '+']),
        frac_part
    );
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad number {s:?}")));
    }
    let mut n: BigInt = digits.parse().unwrap();
    if negative {
        n = -n;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let r = if shift >= 0 {
        Rat::from_integer(n * ten.pow(shift as u32))
    } else {
        Rat::new(n, ten.pow((-shift) as u32))
    };
    Ok(r)
}

/// `p/q` form (plain integer when the denominator is 1).
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, half-away rounding.
pub fn rat_decimal_string(r: &Rat, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // find e with 10^e <= a < 10^{e+1}
    let ten = Rat::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut x = a.clone();
    while x >= ten {
        x /= ten.clone();
        e += 1;
    }
    while x < Rat::one() {
        x *= ten.clone();
        e -= 1;
    }
    // round a * 10^{digits-1-e} to nearest integer
    let scale = digits as i64 - 1 - e;
    let scaled = &a * rat_pow(&ten, scale);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if &rem * BigInt::from(2) >= *scaled.denom() {
        m += 1;
    }
    let mut ds = m.to_string();
    if ds.len() > digits {
        // rounding carried over, e.g. 999.9 -> 1000
        e += 1;
        ds.truncate(digits);
    }
    let sign = if neg { "-" } else { "" };
    if e >= 0 && (e as usize) < digits {
        let (int_digits, frac_digits) = ds.split_at(e as usize + 1);
        let frac = frac_digits.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_digits}")
        } else {
            format!("{sign}{int_digits}.{frac}")
        }
    } else if e < 0 && e >= -4 {
        let zeros = "0".repeat((-e - 1) as usize);
        let ds = ds.trim_end_matches('0');
        format!("{sign}0.{zeros}{ds}")
    } else {
        let (first, rest) = ds.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{first}e{e}")
        } else {
            format!("{sign}{first}.{rest}e{e}")
        }
    }
}

/// Nearest f64, for diagnostics only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
