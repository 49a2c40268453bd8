//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Terms live in a BTreeMap keyed by exponent vectors (one slot per variable,
//! negative exponents allowed), so iteration order is lexicographic and
//! serialization is deterministic. No zero coefficient is ever stored.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{rat_pow, rat_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rat::one())
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    /// The monomial `c * x^exps`.
    pub fn monomial(arity: usize, exps: Vec<i64>, c: Rat) -> Self {
        assert_eq!(exps.len(), arity);
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The single variable `x_i` (0-based).
    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Self::monomial(arity, exps, Rat::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert_add(&mut self, exps: Vec<i64>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[i64], c: &Rat) -> Self {
        assert_eq!(exps.len(), self.arity);
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    (
                        e.iter().zip(exps).map(|(a, b)| a + b).collect(),
                        k * c,
                    )
                })
                .collect(),
        }
    }

    /// Reinterpret an `n`-ary polynomial as `(n+1)`-ary in variables 2..n+1.
    pub fn embed_after_first(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exps = Vec::with_capacity(self.arity + 1);
            exps.push(0);
            exps.extend_from_slice(e);
            terms.insert(exps, c.clone());
        }
        LaurentPoly {
            arity: self.arity + 1,
            terms,
        }
    }

    /// Exact evaluation; all point coordinates must be nonzero when negative
    /// exponents are present.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, Error> {
        assert_eq!(point.len(), self.arity);
        // per-variable power cache
        let mut pows: Vec<BTreeMap<i64, Rat>> = vec![BTreeMap::new(); self.arity];
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k < 0 && point[i].is_zero() {
                    return Err(Error::Pole(format!(
                        "evaluation of x_{}^{k} at zero",
                        i + 1
                    )));
                }
                let p = pows[i]
                    .entry(k)
                    .or_insert_with(|| rat_pow(&point[i], k));
                term *= &*p;
            }
            total += term;
        }
        Ok(total)
    }

    /// `x_i -> c * x_i` (0-based variable index).
    pub fn scale_var(&self, i: usize, c: &Rat) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * rat_pow(c, e[i])))
                .collect(),
        }
    }

    /// Simultaneous `x_j -> c * x_j` for every variable.
    pub fn scale_all_vars(&self, c: &Rat) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * rat_pow(c, e.iter().sum())))
                .collect(),
        }
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            terms.insert(e2, c.clone());
        }
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.arity).all(|i| self.swap_vars(i - 1, i) == *self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..self.arity).all(|i| self.swap_vars(i - 1, i) == self.neg())
    }

    /// Minimum exponent of each variable over the support (0 when empty).
    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.arity];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        mins
    }

    /// Exact division, erroring on a nonzero remainder.
    ///
    /// Both operands are shifted into the ordinary polynomial ring, divided by
    /// lexicographic leading terms, and shifted back.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, Error> {
        assert_eq!(self.arity, divisor.arity);
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        let fmin = self.min_exponents();
        let dmin = divisor.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let f = self.mul_monomial(&neg(&fmin), &Rat::one());
        let d = divisor.mul_monomial(&neg(&dmin), &Rat::one());
        let (dl_exp, dl_coeff) = d.terms.iter().next_back().unwrap();
        let dl_exp = dl_exp.clone();
        let dl_coeff = dl_coeff.clone();
        let mut rem = f;
        let mut quot = Self::zero(self.arity);
        while let Some((le, lc)) = rem.terms.iter().next_back() {
            let diff: Vec<i64> = le.iter().zip(&dl_exp).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return Err(Error::Internal(format!(
                    "inexact polynomial division, remainder term x^{le:?} * {}",
                    rat_string(lc)
                )));
            }
            let qc = lc / &dl_coeff;
            let qterm = Self::monomial(self.arity, diff, qc);
            rem = rem.sub(&qterm.mul(&d));
            quot = quot.add(&qterm);
        }
        let shift: Vec<i64> = fmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Ok(quot.mul_monomial(&shift, &Rat::one()))
    }

    /// Total degree of each term ranges over `[min, max]`.
    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let first = it.next()?;
        let mut lo = first;
        let mut hi = first;
        for d in it {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Some((lo, hi))
    }

    /// Largest absolute exponent of any single variable.
    pub fn max_var_degree(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// JSON form: sorted list of `{exponents, coeff}`.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exponents": e,
                    "coeff": rat_string(c),
                })
            })
            .collect();
        serde_json::Value::Array(list)
    }
}
