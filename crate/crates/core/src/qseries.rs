//! q-series primitives: q-numbers, q-factorials, q-Pochhammer symbols (finite,
//! infinite, and exact integer-gap ratios), the q-Gamma function, and partial
//! sums of the q-binomial series.
//!
//! Everything finite is exact rational arithmetic. Infinite products return
//! [`CertifiedReal`] values with rigorous truncation bounds: the product
//! `prod_{i>=K} (1 - z q^i)` differs from 1 by at most `e^s - 1 <= 2s` once
//! `s = 2|z|q^K/(1-q) <= 1/2`, by the usual `|log(1-w)| <= 2|w|` estimate.

use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use crate::certified::{pow_rat_certified, CertifiedReal};
use crate::error::Error;
use crate::scalar::{parse_rat, rat_i64, rat_pow, rat_string, Rat};

/// The deformation parameters: rational `q` in (0,1), integer `theta >= 1`,
/// and the derived `t = q^theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParams {
    q: Rat,
    theta: u32,
}

impl QParams {
    pub fn new(q: Rat, theta: u32) -> Result<Self, Error> {
        if !(q.is_positive() && q < Rat::one()) {
            return Err(Error::Domain(format!(
                "q must satisfy 0 < q < 1, got {}",
                rat_string(&q)
            )));
        }
        if theta == 0 {
            return Err(Error::Domain("theta must be a positive integer".into()));
        }
        Ok(QParams { q, theta })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    pub fn theta_i64(&self) -> i64 {
        self.theta as i64
    }

    pub fn t(&self) -> Rat {
        rat_pow(&self.q, self.theta as i64)
    }

    /// q^k, any integer k.
    pub fn q_pow(&self, k: i64) -> Rat {
        rat_pow(&self.q, k)
    }

    /// t^k = q^{theta k}, any integer k.
    pub fn t_pow(&self, k: i64) -> Rat {
        rat_pow(&self.q, self.theta as i64 * k)
    }

    /// If `x = q^j` for some integer `j`, return `j`.
    pub fn log_q_exact(&self, x: &Rat) -> Option<i64> {
        if !x.is_positive() {
            return None;
        }
        if x.is_one() {
            return Some(0);
        }
        let mut cur = Rat::one();
        if *x < Rat::one() {
            for j in 1..=4096i64 {
                cur *= &self.q;
                if cur == *x {
                    return Some(j);
                }
                if cur < *x {
                    return None;
                }
            }
        } else {
            for j in 1..=4096i64 {
                cur /= &self.q;
                if cur == *x {
                    return Some(-j);
                }
                if cur > *x {
                    return None;
                }
            }
        }
        None
    }
}

/// Shared exact-arithmetic context: parameters plus a lazily grown table of
/// the partial products `(q;q)_e`. Safe for concurrent use.
#[derive(Debug)]
pub struct QContext {
    pub params: QParams,
    qq_table: Mutex<Vec<Rat>>,
}

impl QContext {
    pub fn new(params: QParams) -> Self {
        QContext {
            params,
            qq_table: Mutex::new(vec![Rat::one()]),
        }
    }

    pub fn q(&self) -> &Rat {
        self.params.q()
    }

    pub fn theta(&self) -> i64 {
        self.params.theta_i64()
    }

    pub fn t(&self) -> Rat {
        self.params.t()
    }

    /// `(q;q)_e` from the shared table.
    pub fn qq_poch(&self, e: usize) -> Rat {
        let mut tab = self.qq_table.lock().unwrap();
        while tab.len() <= e {
            let n = tab.len() as i64;
            let last = tab.last().unwrap().clone();
            let factor = Rat::one() - self.params.q_pow(n);
            tab.push(last * factor);
        }
        tab[e].clone()
    }

    /// Exact `(q^a; q)_inf / (q^b; q)_inf` for positive integers `a`, `b`.
    ///
    /// Both infinite products share every factor with index `>= max(a,b)`, so
    /// the ratio collapses to `(q;q)_{b-1} / (q;q)_{a-1}`.
    pub fn poch_int_ratio(&self, a: i64, b: i64) -> Result<Rat, Error> {
        if a <= 0 || b <= 0 {
            return Err(Error::Internal(format!(
                "poch_int_ratio wants positive exponents, got ({a}, {b})"
            )));
        }
        if a == b {
            return Ok(Rat::one());
        }
        Ok(self.qq_poch(b as usize - 1) / self.qq_poch(a as usize - 1))
    }
}

/// `[n]_q = (1 - q^n)/(1 - q)`; the formula extends to every integer `n`.
pub fn q_number(n: i64, qp: &QParams) -> Rat {
    (Rat::one() - qp.q_pow(n)) / (Rat::one() - qp.q().clone())
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: i64, qp: &QParams) -> Result<Rat, Error> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative {n}")));
    }
    let mut acc = Rat::one();
    for k in 1..=n {
        acc *= q_number(k, qp);
    }
    Ok(acc)
}

/// Finite q-Pochhammer `(z; q)_n = prod_{i=0}^{n-1} (1 - z q^i)`.
pub fn qpoch_finite(z: &Rat, n: i64, qp: &QParams) -> Result<Rat, Error> {
    if n < 0 {
        return Err(Error::Domain(format!("Pochhammer order negative: {n}")));
    }
    let mut acc = Rat::one();
    let mut zq = z.clone();
    for _ in 0..n {
        acc *= Rat::one() - &zq;
        if acc.is_zero() {
            return Ok(acc);
        }
        zq *= qp.q();
    }
    Ok(acc)
}

/// Finite Pochhammer with an arbitrary rational base (used for `(t;t)_n`).
pub fn qpoch_finite_base(z: &Rat, base: &Rat, n: i64) -> Rat {
    let mut acc = Rat::one();
    let mut zq = z.clone();
    for _ in 0..n {
        acc *= Rat::one() - &zq;
        zq *= base;
    }
    acc
}

/// Infinite product `(z; q)_inf` with certified truncation, generic base.
///
/// Truncation depth K is the smallest integer with `2|z| base^K/(1-base) < eps'`
/// (once `|z| base^K <= 1/2`), where `eps'` is scaled so the final absolute
/// error is below `eps`. Hitting a zero factor exactly returns exact 0.
pub fn qpoch_infinite_base(z: &Rat, base: &Rat, eps: &Rat) -> Result<CertifiedReal, Error> {
    if !(base.is_positive() && *base < Rat::one()) {
        return Err(Error::Domain(format!(
            "infinite Pochhammer base must lie in (0,1), got {}",
            rat_string(base)
        )));
    }
    if !eps.is_positive() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    if z.is_zero() {
        return Ok(CertifiedReal::one());
    }
    // |P_K| <= prod (1+|z|base^i) <= exp(|z|/(1-base)); cheap rational stand-in:
    // use the partial product's own absolute value, computed as we go.
    let one = Rat::one();
    let mut partial = Rat::one();
    let mut zq = z.clone();
    let half = crate::scalar::rat_frac(1, 2);
    let mut k: i64 = 0;
    loop {
        // tail estimate s = 2|zq|/(1-base), valid once |zq| <= 1/2
        let s = rat_i64(2) * zq.abs() / (&one - base);
        if zq.abs() <= half && s <= half {
            let err = partial.abs().max(one.clone()) * rat_i64(2) * &s;
            if err < *eps {
                return Ok(CertifiedReal::new(partial, err));
            }
        }
        let factor = &one - &zq;
        if factor.is_zero() {
            return Ok(CertifiedReal::exact(Rat::zero()));
        }
        partial *= factor;
        zq *= base;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Domain(
                "infinite Pochhammer truncation did not reach eps".into(),
            ));
        }
    }
}

/// `(z; q)_inf` with the context's `q` as base.
pub fn qpoch_infinite(z: &Rat, qp: &QParams, eps: &Rat) -> Result<CertifiedReal, Error> {
    qpoch_infinite_base(z, qp.q(), eps)
}

/// Exact `(z q^k; q)_inf / (z; q)_inf`.
///
/// For `k >= 0` the ratio telescopes to `1/prod_{i=0}^{k-1}(1 - z q^i)`,
/// for `k < 0` to `prod_{i=1}^{-k}(1 - z q^{-i})`.
pub fn qpoch_ratio_integer_gap(z: &Rat, k: i64, qp: &QParams) -> Result<Rat, Error> {
    if k >= 0 {
        let denom = qpoch_finite(z, k, qp)?;
        if denom.is_zero() {
            // locate the vanishing factor for the error message
            let mut zq = z.clone();
            for i in 0..k {
                if zq.is_one() {
                    return Err(Error::Pole(format!("1 - z q^{i} = 0 in Pochhammer ratio")));
                }
                zq *= qp.q();
            }
            unreachable!("zero product without zero factor");
        }
        Ok(denom.recip())
    } else {
        let mut acc = Rat::one();
        let mut zq = z.clone();
        for _ in 0..(-k) {
            zq /= qp.q();
            acc *= Rat::one() - &zq;
        }
        Ok(acc)
    }
}

/// Certified q-Gamma `Gamma_q(x) = (1-q)^{1-x} (q;q)_inf / (q^x;q)_inf`.
///
/// Exact rational for positive integer `x` (it equals `[x-1]_q!`); certified
/// numerics otherwise. Nonpositive integers are poles.
pub fn q_gamma(x: &Rat, qp: &QParams, eps: &Rat) -> Result<CertifiedReal, Error> {
    if x.is_integer() {
        let n: i64 = x
            .to_integer()
            .try_into()
            .map_err(|_| Error::Domain("q-Gamma argument too large".into()))?;
        if n <= 0 {
            return Err(Error::Pole(format!("Gamma_q pole at x = {n}")));
        }
        return Ok(CertifiedReal::exact(q_factorial(n - 1, qp)?));
    }
    let sub = eps / rat_i64(64);
    let one_minus_q = Rat::one() - qp.q().clone();
    let power = pow_rat_certified(&one_minus_q, &(Rat::one() - x), &sub)?;
    let qq = qpoch_infinite(qp.q(), qp, &sub)?;
    // (q^x; q)_inf with a certified argument a = q^x
    let a = pow_rat_certified(qp.q(), x, &sub)?;
    let qx_poch = qpoch_infinite_interval(&a, qp.q(), &sub)?;
    power.mul(&qq).div(&qx_poch)
}

/// `(a; q)_inf` where the argument itself is certified.
fn qpoch_infinite_interval(
    a: &CertifiedReal,
    base: &Rat,
    eps: &Rat,
) -> Result<CertifiedReal, Error> {
    // prod (1 - a q^i): multiply interval factors up to K, bound the tail as in
    // qpoch_infinite_base using |a| <= |value| + err.
    let abs_hi = a.value.abs() + &a.error_bound;
    let one = Rat::one();
    let half = crate::scalar::rat_frac(1, 2);
    let mut acc = CertifiedReal::one();
    let mut qi = Rat::one();
    for _ in 0..1_000_000 {
        let cur_hi = &abs_hi * &qi;
        let s = rat_i64(2) * &cur_hi / (&one - base);
        if cur_hi <= half && s <= half {
            let mag = acc.value.abs() + &acc.error_bound;
            let err = mag.max(one.clone()) * rat_i64(2) * &s;
            if err < *eps {
                return Ok(CertifiedReal::new(acc.value, acc.error_bound + err));
            }
        }
        let factor = CertifiedReal::new(
            &one - &a.value * &qi,
            &a.error_bound * &qi,
        );
        acc = acc.mul(&factor);
        qi *= base;
    }
    Err(Error::Domain(
        "infinite Pochhammer truncation did not reach eps".into(),
    ))
}

/// Exact partial sum `sum_{n=0}^{terms-1} (a;q)_n/(q;q)_n z^n`.
pub fn q_binomial_partial(a: &Rat, z: &Rat, terms: i64, qp: &QParams) -> Result<Rat, Error> {
    if terms <= 0 {
        return Err(Error::Domain("terms must be positive".into()));
    }
    let mut sum = Rat::zero();
    let mut coeff = Rat::one(); // (a;q)_n/(q;q)_n
    let mut zn = Rat::one();
    for n in 0..terms {
        sum += &coeff * &zn;
        let aq = Rat::one() - a * qp.q_pow(n);
        let qq = Rat::one() - qp.q_pow(n + 1);
        coeff = coeff * aq / qq;
        zn *= z;
    }
    Ok(sum)
}

/// Both sides of the terminating q-binomial identity of order `m`:
/// `sum_{n=0}^{m} binom-type coefficients (-1)^n q^{-C(n,2)} z^n` against
/// `(z; q^{-1})_m`. Returns (lhs, rhs), both exact.
pub fn q_binomial_finite_identity(z: &Rat, m: i64, qp: &QParams) -> Result<(Rat, Rat), Error> {
    if m < 0 {
        return Err(Error::Domain("order must be nonnegative".into()));
    }
    let qinv = qp.q().recip();
    let poch_qinv = |n: i64| qpoch_finite_base(&qinv, &qinv, n);
    let mut lhs = Rat::zero();
    for n in 0..=m {
        let binom = poch_qinv(m) / (poch_qinv(n) * poch_qinv(m - n));
        let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
        let qpow = rat_pow(qp.q(), -(n * (n - 1) / 2));
        lhs += binom * sign * qpow * rat_pow(z, n);
    }
    let rhs = qpoch_finite_base(z, &qinv, m);
    Ok((lhs, rhs))
}

/// Parse flags like `--q 1/2` into checked parameters.
pub fn parse_qparams(q: &str, theta: u32) -> Result<QParams, Error> {
    QParams::new(parse_rat(q)?, theta)
}
