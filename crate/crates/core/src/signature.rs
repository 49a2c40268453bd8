//! Signatures (weakly decreasing integer sequences of a fixed length),
//! weakly increasing boundary indices with constant tails, Young-diagram cell
//! statistics, interlacing enumeration, and part shifts.
//!
//! Trailing zeros are significant: `(4,2,2,0,0)` and `(4,2,2)` are different
//! signatures. The empty signature has length 0.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qseries::QParams;

/// Weakly decreasing integer sequence of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    parts: Vec<i64>,
}

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "signature parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Signature { parts })
    }

    pub fn empty() -> Self {
        Signature { parts: vec![] }
    }

    pub fn zeros(n: usize) -> Self {
        Signature { parts: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> i64 {
        self.parts[i]
    }

    /// Sum of parts.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.parts.last().map_or(true, |&p| p >= 0)
    }

    /// All parts shifted by `k`.
    pub fn shift(&self, k: i64) -> Signature {
        Signature {
            parts: self.parts.iter().map(|p| p + k).collect(),
        }
    }

    /// Drop the last part (the branching step to one fewer variable).
    pub fn drop_last(&self) -> Signature {
        Signature {
            parts: self.parts[..self.parts.len() - 1].to_vec(),
        }
    }

    /// `n(lambda) = lambda_2 + 2 lambda_3 + ... + (N-1) lambda_N`.
    pub fn n_weight(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as i64 * p)
            .sum()
    }

    /// Column length `lambda'_j` of the conjugate diagram (positive parts).
    pub fn conjugate_col(&self, j: i64) -> i64 {
        self.parts.iter().filter(|&&p| p >= j).count() as i64
    }

    /// Comma-separated form, e.g. `3,1,0`; the empty signature is `""`.
    pub fn to_string_csv(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_csv(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Signature::empty());
        }
        let parts: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("bad signature {s:?}")))?;
        Signature::new(parts)
    }
}

/// True iff `mu` interlaces below `lam`:
/// `lam_{N+1} <= mu_N <= lam_N <= ... <= mu_1 <= lam_1`.
pub fn interlaces(mu: &Signature, lam: &Signature) -> bool {
    if lam.len() != mu.len() + 1 {
        return false;
    }
    let n = mu.len();
    for i in 0..n {
        if !(mu.part(i) <= lam.part(i) && lam.part(i + 1) <= mu.part(i)) {
            return false;
        }
    }
    true
}

/// All `mu` of length `N-1` interlacing below `lam`, in lexicographic order.
/// For `N = 1` the single result is the empty signature.
pub fn interlacings_below(lam: &Signature) -> Vec<Signature> {
    let n = lam.len();
    assert!(n >= 1, "interlacings_below needs a nonempty signature");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n - 1);
    fn rec(lam: &Signature, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        let i = cur.len();
        if i == lam.len() - 1 {
            out.push(Signature { parts: cur.clone() });
            return;
        }
        // mu_i ranges over [lam_{i+1}, lam_i]; weak decrease is automatic
        for v in lam.part(i + 1)..=lam.part(i) {
            cur.push(v);
            rec(lam, cur, out);
            cur.pop();
        }
    }
    rec(lam, &mut cur, &mut out);
    out
}

/// Number of interlacings below, `prod (lam_i - lam_{i+1} + 1)`.
pub fn interlacing_count(lam: &Signature) -> u64 {
    (0..lam.len().saturating_sub(1))
        .map(|i| (lam.part(i) - lam.part(i + 1) + 1) as u64)
        .product()
}

/// Dominance order on equal-length signatures: `mu <= lam` iff the sizes agree
/// and every prefix sum of `mu` is at most that of `lam`.
pub fn dominance_leq(mu: &Signature, lam: &Signature) -> Result<bool, Error> {
    if mu.len() != lam.len() {
        return Err(Error::Domain(format!(
            "dominance comparison needs equal lengths, got {} and {}",
            mu.len(),
            lam.len()
        )));
    }
    if mu.size() != lam.size() {
        return Ok(false);
    }
    let mut pm = 0i64;
    let mut pl = 0i64;
    for i in 0..mu.len() {
        pm += mu.part(i);
        pl += lam.part(i);
        if pm > pl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arm, arm-colength, leg, leg-colength of a diagram cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub arm: i64,
    pub arm_colength: i64,
    pub leg: i64,
    pub leg_colength: i64,
}

/// Statistics of cell `(i, j)` (1-based, matrix coordinates) in the Young
/// diagram of a positive signature.
pub fn diagram_stats(lam: &Signature, i: i64, j: i64) -> Result<DiagramStats, Error> {
    if !lam.is_positive() {
        return Err(Error::Domain(
            "diagram cells are defined for positive signatures".into(),
        ));
    }
    if i < 1 || i > lam.len() as i64 || j < 1 || j > lam.part(i as usize - 1) {
        return Err(Error::Domain(format!(
            "cell ({i},{j}) lies outside the diagram of {:?}",
            lam.parts()
        )));
    }
    Ok(DiagramStats {
        arm: lam.part(i as usize - 1) - j,
        arm_colength: j - 1,
        leg: lam.conjugate_col(j) - i,
        leg_colength: i - 1,
    })
}

/// All cells of the diagram of a positive signature, row-major.
pub fn diagram_cells(lam: &Signature) -> Vec<(i64, i64)> {
    let mut cells = Vec::new();
    for (i, &p) in lam.parts().iter().enumerate() {
        for j in 1..=p {
            cells.push((i as i64 + 1, j));
        }
    }
    cells
}

/// Weakly increasing integer sequence with a constant tail: a finite prefix
/// `nu_1 <= ... <= nu_L` and `nu_i = nu_L` for all `i > L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NuSpec {
    prefix: Vec<i64>,
}

impl NuSpec {
    /// The prefix must be weakly increasing and nonempty (use `constant` for
    /// an all-constant sequence).
    pub fn new(prefix: Vec<i64>) -> Result<Self, Error> {
        if prefix.is_empty() {
            return Err(Error::Domain("nu prefix must be nonempty".into()));
        }
        if prefix.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!(
                "nu prefix must be weakly increasing: {prefix:?}"
            )));
        }
        Ok(NuSpec { prefix })
    }

    pub fn constant(value: i64) -> Self {
        NuSpec {
            prefix: vec![value],
        }
    }

    /// `nu_r` (1-based), using the constant tail beyond the prefix.
    pub fn get(&self, r: usize) -> i64 {
        assert!(r >= 1);
        if r <= self.prefix.len() {
            self.prefix[r - 1]
        } else {
            *self.prefix.last().unwrap()
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Index from which the sequence is constant (1-based).
    pub fn stable_from(&self) -> usize {
        let tail = *self.prefix.last().unwrap();
        let mut l = self.prefix.len();
        while l > 1 && self.prefix[l - 2] == tail {
            l -= 1;
        }
        l
    }

    pub fn shift(&self, k: i64) -> NuSpec {
        NuSpec {
            prefix: self.prefix.iter().map(|p| p + k).collect(),
        }
    }

    /// `prefix=0,0,2;tail=const` syntax.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (prefix_part, tail_part) = match s.split_once(';') {
            Some((p, t)) => (p, Some(t)),
            None => (s, None),
        };
        if let Some(t) = tail_part {
            let t = t.trim();
            if t != "tail=const" {
                return Err(Error::Parse(format!("unsupported nu tail rule {t:?}")));
            }
        }
        let digits = prefix_part
            .trim()
            .strip_prefix("prefix=")
            .unwrap_or(prefix_part);
        let parts: Result<Vec<i64>, _> =
            digits.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("bad nu {s:?}")))?;
        NuSpec::new(parts)
    }

    pub fn to_string_spec(&self) -> String {
        format!(
            "prefix={};tail=const",
            self.prefix
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// The length-`N` signature `(nu_N >= ... >= nu_1)` read off a boundary index.
pub fn stabilizing_signature(nu: &NuSpec, n: usize) -> Signature {
    let parts: Vec<i64> = (1..=n).rev().map(|r| nu.get(r)).collect();
    Signature { parts }
}

/// The exponents `nu_r + theta (r-1) + s` for `1 <= r <= R`, `0 <= s < theta`,
/// sorted increasing. They are pairwise distinct for any weakly increasing
/// `nu`; a duplicate indicates a bug.
pub fn phi_support_exponents(nu: &NuSpec, qp: &QParams, r_max: usize) -> Result<Vec<i64>, Error> {
    if r_max == 0 {
        return Err(Error::Domain("R must be positive".into()));
    }
    let theta = qp.theta_i64();
    let mut out = Vec::with_capacity(r_max * theta as usize);
    for r in 1..=r_max {
        for s in 0..theta {
            out.push(nu.get(r) + theta * (r as i64 - 1) + s);
        }
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Internal(
            "duplicate support exponent for a weakly increasing nu".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_frac;

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_parsing() {
        assert!(Signature::new(vec![1, 2]).is_err());
        assert_eq!(Signature::parse_csv("3,1,0").unwrap(), sig(&[3, 1, 0]));
        assert_eq!(Signature::parse_csv("").unwrap(), Signature::empty());
        assert_eq!(sig(&[3, 1, 0]).to_string_csv(), "3,1,0");
        // trailing zeros matter
        assert_ne!(sig(&[4, 2, 2, 0, 0]), sig(&[4, 2, 2]));
    }

    #[test]
    fn interlacing_enumeration() {
        assert_eq!(interlacings_below(&sig(&[0, 0])), vec![sig(&[0])]);
        assert_eq!(
            interlacings_below(&sig(&[1, 0])),
            vec![sig(&[0]), sig(&[1])]
        );
        assert_eq!(interlacings_below(&sig(&[2, 0])).len(), 3);
        assert_eq!(interlacings_below(&sig(&[1])), vec![Signature::empty()]);
        // count formula
        for lam in [sig(&[3, 1, 0]), sig(&[2, 2, -1]), sig(&[5, 0])] {
            assert_eq!(
                interlacings_below(&lam).len() as u64,
                interlacing_count(&lam)
            );
        }
        // lexicographic order
        let list = interlacings_below(&sig(&[2, 1, -1]));
        let mut sorted = list.clone();
        sorted.sort();
        assert_eq!(list, sorted);
    }

    #[test]
    fn dominance() {
        let a = sig(&[2, 0]);
        let b = sig(&[1, 1]);
        assert!(dominance_leq(&a, &a).unwrap());
        assert!(dominance_leq(&b, &a).unwrap());
        assert!(!dominance_leq(&a, &b).unwrap());
        assert!(dominance_leq(&sig(&[1]), &b).is_err());
    }

    #[test]
    fn diagram_statistics() {
        let lam = sig(&[5, 4, 4, 2]);
        let s = diagram_stats(&lam, 3, 3).unwrap();
        assert_eq!((s.arm, s.arm_colength, s.leg, s.leg_colength), (1, 2, 0, 2));
        let single = diagram_stats(&sig(&[1]), 1, 1).unwrap();
        assert_eq!(
            (single.arm, single.arm_colength, single.leg, single.leg_colength),
            (0, 0, 0, 0)
        );
        let corner = diagram_stats(&sig(&[3, 1]), 1, 1).unwrap();
        assert_eq!((corner.arm, corner.arm_colength, corner.leg, corner.leg_colength), (2, 0, 1, 0));
        assert!(diagram_stats(&sig(&[3, 1]), 2, 2).is_err());
        assert_eq!(diagram_cells(&sig(&[2, 1])).len(), 3);
    }

    #[test]
    fn n_weight_values() {
        assert_eq!(Signature::empty().n_weight(), 0);
        assert_eq!(sig(&[3, 1]).n_weight(), 1);
        assert_eq!(sig(&[2, 2, 2]).n_weight(), 6);
    }

    #[test]
    fn shifts() {
        let lam = sig(&[1, 0]);
        assert_eq!(lam.shift(0), lam);
        assert_eq!(lam.shift(1), sig(&[2, 1]));
        assert_eq!(lam.shift(1).shift(-1), lam);
        assert_eq!(Signature::empty().shift(5), Signature::empty());
        // interlacing invariance under simultaneous shift
        let big = sig(&[2, 0, -1]);
        for mu in interlacings_below(&big) {
            assert!(interlaces(&mu.shift(-3), &big.shift(-3)));
        }
    }

    #[test]
    fn nu_basics() {
        assert!(NuSpec::new(vec![2, 1]).is_err());
        let nu = NuSpec::new(vec![0, 1, 2]).unwrap();
        assert_eq!(nu.get(1), 0);
        assert_eq!(nu.get(5), 2);
        assert_eq!(stabilizing_signature(&nu, 2), sig(&[1, 0]));
        let nu2 = NuSpec::new(vec![-1, 3]).unwrap();
        assert_eq!(stabilizing_signature(&nu2, 4), sig(&[3, 3, 3, -1]));
        assert_eq!(
            stabilizing_signature(&NuSpec::constant(0), 3),
            Signature::zeros(3)
        );
        let parsed = NuSpec::parse("prefix=0,0,2;tail=const").unwrap();
        assert_eq!(parsed.prefix(), &[0, 0, 2]);
        assert_eq!(parsed.to_string_spec(), "prefix=0,0,2;tail=const");
        assert_eq!(parsed.stable_from(), 3);
        assert_eq!(NuSpec::new(vec![1, 1, 1]).unwrap().stable_from(), 1);
    }

    #[test]
    fn support_exponents() {
        let q = crate::qseries::QParams::new(rat_frac(1, 2), 1).unwrap();
        let nu0 = NuSpec::constant(0);
        assert_eq!(phi_support_exponents(&nu0, &q, 3).unwrap(), vec![0, 1, 2]);
        let q2 = crate::qseries::QParams::new(rat_frac(1, 2), 2).unwrap();
        assert_eq!(
            phi_support_exponents(&nu0, &q2, 2).unwrap(),
            vec![0, 1, 2, 3]
        );
        // distinct prefixes give different sets
        let a = phi_support_exponents(&NuSpec::new(vec![0, 1]).unwrap(), &q2, 2).unwrap();
        let b = phi_support_exponents(&NuSpec::new(vec![0, 2]).unwrap(), &q2, 2).unwrap();
        assert_ne!(a, b);
        // strictly increasing of size theta * R
        let c = phi_support_exponents(&NuSpec::new(vec![-2, 0, 5]).unwrap(), &q2, 6).unwrap();
        assert_eq!(c.len(), 12);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }
}
