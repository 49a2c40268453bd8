//! Macdonald (Laurent) polynomials built through the branching rule, with
//! their named evaluations: branching coefficients, principal specialization,
//! duals, one-row duals, and monomial expansions.
//!
//! With `t = q^theta` for integer `theta`, every infinite Pochhammer ratio in
//! the branching and evaluation formulas has both arguments of the form
//! `q^(positive integer)`, so it reduces exactly through
//! [`QContext::poch_int_ratio`]. A non-integer gap is rejected as an internal
//! error rather than approximated.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::qseries::{QContext, QParams};
use crate::scalar::Rat;
use crate::signature::{diagram_cells, dominance_leq, interlaces, interlacings_below, Signature};

/// Shared computation context: parameters plus memo tables for polynomials,
/// principal evaluations, one-row duals, and one-variable restrictions.
/// Cached entries behave as pure function values; concurrent lookups may
/// duplicate work but never disagree.
pub struct MacdonaldCtx {
    pub qctx: Arc<QContext>,
    poly_memo: Mutex<HashMap<(Vec<i64>, usize), Arc<LaurentPoly>>>,
    eval_memo: Mutex<HashMap<(Vec<i64>, usize), Rat>>,
    g_memo: Mutex<HashMap<(i64, usize), Arc<LaurentPoly>>>,
    uni_memo: Mutex<HashMap<(Vec<i64>, usize), Arc<Vec<(i64, Rat)>>>>,
}

impl MacdonaldCtx {
    pub fn new(params: QParams) -> Self {
        MacdonaldCtx {
            qctx: Arc::new(QContext::new(params)),
            poly_memo: Mutex::new(HashMap::new()),
            eval_memo: Mutex::new(HashMap::new()),
            g_memo: Mutex::new(HashMap::new()),
            uni_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &QParams {
        &self.qctx.params
    }

    pub fn q(&self) -> &Rat {
        self.qctx.q()
    }

    pub fn t(&self) -> Rat {
        self.qctx.t()
    }

    pub fn theta(&self) -> i64 {
        self.qctx.theta()
    }

    /// Branching coefficient psi_{lam/mu} for an interlacing pair; depends
    /// only on part differences, so it is shift-invariant and defined for all
    /// signatures.
    pub fn psi(&self, lam: &Signature, mu: &Signature) -> Result<Rat, Error> {
        if !interlaces(mu, lam) {
            return Err(Error::Domain(format!(
                "psi requires mu interlacing below lam, got {:?} vs {:?}",
                mu.parts(),
                lam.parts()
            )));
        }
        let th = self.theta();
        let n1 = mu.len(); // = N - 1
        let mut acc = Rat::one();
        for i in 1..=n1 {
            for j in i..=n1 {
                let d = (j - i) as i64;
                let (li, lj1) = (lam.part(i - 1), lam.part(j));
                let (mi, mj) = (mu.part(i - 1), mu.part(j - 1));
                // each inner ratio is (q^a;q)_inf / (q^b;q)_inf with a,b >= 1
                acc *= self
                    .qctx
                    .poch_int_ratio(mi - mj + th * (d + 1), li - mj + th * (d + 1))?;
                acc *= self
                    .qctx
                    .poch_int_ratio(li - lj1 + th * (d + 1), mi - lj1 + th * (d + 1))?;
                acc *= self
                    .qctx
                    .poch_int_ratio(li - mj + 1 + th * d, mi - mj + 1 + th * d)?;
                acc *= self
                    .qctx
                    .poch_int_ratio(mi - lj1 + 1 + th * d, li - lj1 + 1 + th * d)?;
            }
        }
        Ok(acc)
    }

    /// Principal specialization `P_lam(t^{N-1}, ..., t, 1)`, exact, valid for
    /// every signature.
    pub fn eval_principal(&self, lam: &Signature, n: usize) -> Result<Rat, Error> {
        if lam.len() != n {
            return Err(Error::Domain(format!(
                "signature length {} does not match N = {n}",
                lam.len()
            )));
        }
        let key = (lam.parts().to_vec(), n);
        if let Some(v) = self.eval_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let th = self.theta();
        let mut acc = self.qctx.params.t_pow(lam.n_weight());
        for i in 1..=n {
            for j in (i + 1)..=n {
                let d = (j - i) as i64;
                let gap = lam.part(i - 1) - lam.part(j - 1);
                acc *= self.qctx.poch_int_ratio(gap + th * d, gap + th * (d + 1))?;
                acc *= self.qctx.poch_int_ratio(th * (d + 1), th * d)?;
            }
        }
        self.eval_memo.lock().unwrap().insert(key, acc.clone());
        Ok(acc)
    }

    /// The Macdonald polynomial `P_lam` in `n` variables (Laurent when `lam`
    /// has negative parts), built by the branching recursion and memoized.
    pub fn poly(&self, lam: &Signature, n: usize) -> Result<Arc<LaurentPoly>, Error> {
        if lam.len() != n {
            return Err(Error::Domain(format!(
                "signature length {} does not match N = {n}",
                lam.len()
            )));
        }
        if n == 0 {
            return Ok(Arc::new(LaurentPoly::one(0)));
        }
        if lam.part(n - 1) < 0 {
            // index stability: shift into positive territory and divide back
            let m = -lam.part(n - 1);
            let pos = self.poly(&lam.shift(m), n)?;
            let exps = vec![-m; n];
            return Ok(Arc::new(pos.mul_monomial(&exps, &Rat::one())));
        }
        let key = (lam.parts().to_vec(), n);
        if let Some(p) = self.poly_memo.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let size = lam.size();
        let mut acc = LaurentPoly::zero(n);
        for mu in interlacings_below(lam) {
            let psi = self.psi(lam, &mu)?;
            let sub = self.poly(&mu, n - 1)?;
            let mut exps = vec![0i64; n];
            exps[0] = size - mu.size();
            acc = acc.add(&sub.embed_after_first().mul_monomial(&exps, &psi));
        }
        let arc = Arc::new(acc);
        self.poly_memo
            .lock()
            .unwrap()
            .insert(key, arc.clone());
        Ok(arc)
    }

    /// Dual normalization `b_lam` over the diagram of a positive signature.
    pub fn b_lambda(&self, lam: &Signature) -> Result<Rat, Error> {
        if !lam.is_positive() {
            return Err(Error::Domain(
                "b_lambda is defined for positive signatures".into(),
            ));
        }
        let th = self.theta();
        let mut acc = Rat::one();
        for (i, j) in diagram_cells(lam) {
            let arm = lam.part(i as usize - 1) - j;
            let leg = lam.conjugate_col(j) - i;
            let num = Rat::one() - self.qctx.params.q_pow(arm + th * (leg + 1));
            let den = Rat::one() - self.qctx.params.q_pow(arm + 1 + th * leg);
            acc *= num / den;
        }
        Ok(acc)
    }

    /// Principal specialization of the dual `Q_lam` (closed product form).
    pub fn eval_principal_dual(&self, lam: &Signature, n: usize) -> Result<Rat, Error> {
        let th = self.theta();
        let mut acc = self.qctx.params.t_pow(lam.n_weight());
        for (i, j) in diagram_cells(lam) {
            let arm = lam.part(i as usize - 1) - j;
            let arm_co = j - 1;
            let leg = lam.conjugate_col(j) - i;
            let leg_co = i - 1;
            let num = Rat::one() - self.qctx.params.q_pow(arm_co + th * (n as i64 - leg_co));
            let den = Rat::one() - self.qctx.params.q_pow(arm + 1 + th * leg);
            acc *= num / den;
        }
        Ok(acc)
    }

    /// One-row dual `g_k` in `n` variables; zero for `k < 0`, one for `k = 0`.
    pub fn g_poly(&self, k: i64, n: usize) -> Result<Arc<LaurentPoly>, Error> {
        if k < 0 {
            return Ok(Arc::new(LaurentPoly::zero(n)));
        }
        if k == 0 {
            return Ok(Arc::new(LaurentPoly::one(n)));
        }
        let key = (k, n);
        if let Some(p) = self.g_memo.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let mut parts = vec![0i64; n];
        parts[0] = k;
        let row = Signature::new(parts).unwrap();
        let b = self.b_lambda(&row)?;
        let p = Arc::new(self.poly(&row, n)?.scale(&b));
        self.g_memo.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// Coefficients `c_{lam,mu}` of the monomial expansion, keyed by the
    /// sorted exponent signature.
    pub fn monomial_expansion(
        &self,
        lam: &Signature,
        n: usize,
    ) -> Result<BTreeMap<Signature, Rat>, Error> {
        let p = self.poly(lam, n)?;
        let mut out = BTreeMap::new();
        for (e, c) in p.terms() {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                out.insert(Signature::new(e.clone()).unwrap(), c.clone());
            }
        }
        Ok(out)
    }

    /// Numerator of the one-variable character: the coefficients of
    /// `P_lam(x, 1, t, ..., t^{N-2})` as a Laurent polynomial in `x`,
    /// assembled from one branching step. Memoized.
    pub fn univariate_character_num(
        &self,
        lam: &Signature,
        n: usize,
    ) -> Result<Arc<Vec<(i64, Rat)>>, Error> {
        if lam.len() != n || n == 0 {
            return Err(Error::Domain(format!(
                "one-variable restriction needs len(lam) = N >= 1, got {} and {n}",
                lam.len()
            )));
        }
        let key = (lam.parts().to_vec(), n);
        if let Some(v) = self.uni_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let size = lam.size();
        let mut by_power: BTreeMap<i64, Rat> = BTreeMap::new();
        for mu in interlacings_below(lam) {
            let w = self.psi(lam, &mu)? * self.eval_principal(&mu, n - 1)?;
            let k = size - mu.size();
            *by_power.entry(k).or_insert_with(Rat::zero) += w;
        }
        let v: Vec<(i64, Rat)> = by_power
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let arc = Arc::new(v);
        self.uni_memo.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Index-argument symmetry check at exact rational points: both sides of
    /// the two-signature evaluation identity, compared exactly.
    pub fn check_index_argument_symmetry(
        &self,
        lam: &Signature,
        mu: &Signature,
        n: usize,
    ) -> Result<bool, Error> {
        if !lam.is_positive() || !mu.is_positive() {
            return Err(Error::Domain(
                "index-argument symmetry is stated for positive signatures".into(),
            ));
        }
        let point_from = |kappa: &Signature| -> Vec<Rat> {
            (0..n)
                .map(|i| {
                    self.qctx.params.q_pow(kappa.part(i))
                        * self.qctx.params.t_pow((n - 1 - i) as i64)
                })
                .collect()
        };
        let lhs = self.poly(lam, n)?.evaluate(&point_from(mu))?
            / self.eval_principal(lam, n)?;
        let rhs = self.poly(mu, n)?.evaluate(&point_from(lam))?
            / self.eval_principal(mu, n)?;
        Ok(lhs == rhs)
    }
}

/// Monomial symmetric polynomial `m_lam` in `n` variables: the sum of the
/// distinct permutations of `x^lam`.
pub fn monomial_symmetric(lam: &Signature, n: usize) -> Result<LaurentPoly, Error> {
    if lam.len() != n {
        return Err(Error::Domain(format!(
            "signature length {} does not match N = {n}",
            lam.len()
        )));
    }
    let mut p = LaurentPoly::zero(n);
    let mut parts = lam.parts().to_vec();
    parts.sort_unstable(); // ascending start for next_permutation
    loop {
        p = p.add(&LaurentPoly::monomial(n, parts.clone(), Rat::one()));
        if !next_permutation(&mut parts) {
            break;
        }
    }
    Ok(p)
}

/// In-place next lexicographic permutation; false once exhausted. Skips
/// duplicates automatically (standard multiset behavior).
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `mu <= lam` in dominance with the sizes equal; helper shared by tests.
pub fn dominated(mu: &Signature, lam: &Signature) -> bool {
    dominance_leq(mu, lam).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QParams;
    use crate::scalar::{rat_frac, rat_i64};

    fn ctx(qn: i64, qd: i64, theta: u32) -> MacdonaldCtx {
        MacdonaldCtx::new(QParams::new(rat_frac(qn, qd), theta).unwrap())
    }

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn monomial_symmetric_basics() {
        let m = monomial_symmetric(&sig(&[0, 0]), 2).unwrap();
        assert_eq!(m, LaurentPoly::one(2));
        let m10 = monomial_symmetric(&sig(&[1, 0]), 2).unwrap();
        assert_eq!(m10.num_terms(), 2);
        let m21 = monomial_symmetric(&sig(&[2, 1]), 2).unwrap();
        assert_eq!(m21.coeff(&[2, 1]), rat_i64(1));
        assert_eq!(m21.coeff(&[1, 2]), rat_i64(1));
        assert_eq!(m21.num_terms(), 2);
    }

    #[test]
    fn psi_small_values() {
        let c = ctx(1, 2, 2);
        // dropping the last part always gives coefficient 1
        for lam in [sig(&[3, 1]), sig(&[2, 2, 0]), sig(&[1, 0, -2])] {
            let mu = lam.drop_last();
            assert_eq!(c.psi(&lam, &mu).unwrap(), Rat::one(), "{:?}", lam.parts());
        }
        assert_eq!(c.psi(&sig(&[1, 0]), &sig(&[0])).unwrap(), Rat::one());
        assert_eq!(c.psi(&sig(&[1, 0]), &sig(&[1])).unwrap(), Rat::one());
        // at t = q the branching coefficients are identically 1
        let schur = ctx(1, 2, 1);
        assert_eq!(schur.psi(&sig(&[2, 0]), &sig(&[1])).unwrap(), Rat::one());
        // shift invariance
        let c2 = ctx(2, 3, 3);
        let lam = sig(&[2, 0, -1]);
        for mu in interlacings_below(&lam) {
            assert_eq!(
                c2.psi(&lam, &mu).unwrap(),
                c2.psi(&lam.shift(4), &mu.shift(4)).unwrap()
            );
        }
        assert!(c.psi(&sig(&[1, 1]), &sig(&[2])).is_err());
    }

    #[test]
    fn poly_base_cases() {
        let c = ctx(1, 2, 2);
        assert_eq!(*c.poly(&Signature::empty(), 0).unwrap(), LaurentPoly::one(0));
        assert_eq!(*c.poly(&Signature::zeros(3), 3).unwrap(), LaurentPoly::one(3));
        let p10 = c.poly(&sig(&[1, 0]), 2).unwrap();
        assert_eq!(*p10, monomial_symmetric(&sig(&[1, 0]), 2).unwrap());
        // one variable: a plain power
        let p3 = c.poly(&sig(&[-3]), 1).unwrap();
        assert_eq!(p3.coeff(&[-3]), rat_i64(1));
        assert_eq!(p3.num_terms(), 1);
    }

    #[test]
    fn poly_2_0_known_coefficients() {
        // P_{(2,0)} = m_{(2)} + (1-t)(1+q)/(1-qt) m_{(1,1)}
        let c = ctx(1, 2, 1);
        let p = c.poly(&sig(&[2, 0]), 2).unwrap();
        let q = rat_frac(1, 2);
        let t = rat_frac(1, 2);
        let expected = (Rat::one() - &t) * (Rat::one() + &q)
            / (Rat::one() - &q * &t);
        assert_eq!(p.coeff(&[2, 0]), rat_i64(1));
        assert_eq!(p.coeff(&[1, 1]), expected);
        let exp = c.monomial_expansion(&sig(&[2, 0]), 2).unwrap();
        assert_eq!(exp[&sig(&[1, 1])], p.coeff(&[1, 1]));
        assert_eq!(exp[&sig(&[2, 0])], rat_i64(1));
    }

    #[test]
    fn index_stability_and_symmetry() {
        let c = ctx(1, 3, 2);
        let lam = sig(&[2, 0, -1]);
        let p = c.poly(&lam, 3).unwrap();
        assert!(p.is_symmetric());
        let shifted = c.poly(&lam.shift(1), 3).unwrap();
        assert_eq!(*shifted, p.mul_monomial(&[1, 1, 1], &Rat::one()));
        // homogeneity: x -> c x multiplies by c^{|lam|}
        let scaled = p.scale_all_vars(&rat_i64(5));
        assert_eq!(scaled, p.scale(&crate::scalar::rat_pow(&rat_i64(5), lam.size())));
    }

    #[test]
    fn branching_consistency() {
        let c = ctx(1, 2, 2);
        for lam in [sig(&[2, 1, 0]), sig(&[3, 0, -1]), sig(&[2, 2, 1])] {
            let p = c.poly(&lam, 3).unwrap();
            let mut acc = LaurentPoly::zero(3);
            for mu in interlacings_below(&lam) {
                let psi = c.psi(&lam, &mu).unwrap();
                let sub = c.poly(&mu, 2).unwrap().embed_after_first();
                let mut exps = vec![0i64; 3];
                exps[0] = lam.size() - mu.size();
                acc = acc.add(&sub.mul_monomial(&exps, &psi));
            }
            assert_eq!(*p, acc, "{:?}", lam.parts());
        }
    }

    #[test]
    fn principal_evaluation_matches_polynomial() {
        let c = ctx(1, 2, 2);
        let t = c.t();
        for (lam, n) in [
            (sig(&[2, 0]), 2usize),
            (sig(&[3, 1, 0]), 3),
            (sig(&[1, -1]), 2),
            (sig(&[2, 1, 1, 0]), 4),
        ] {
            let point: Vec<Rat> = (0..n)
                .rev()
                .map(|k| crate::scalar::rat_pow(&t, k as i64))
                .collect();
            let direct = c.poly(&lam, n).unwrap().evaluate(&point).unwrap();
            assert_eq!(direct, c.eval_principal(&lam, n).unwrap(), "{:?}", lam.parts());
        }
    }

    #[test]
    fn one_row_principal_evaluation() {
        // P_(r,0,...,0) at the principal point is (t^N;q)_r/(t;q)_r
        let c = ctx(1, 2, 3);
        let n = 3usize;
        for r in 1..=4i64 {
            let mut parts = vec![0i64; n];
            parts[0] = r;
            let lam = sig(&parts);
            let t = c.t();
            let tn = c.qctx.params.t_pow(n as i64);
            let num = crate::qseries::qpoch_finite(&tn, r, c.params()).unwrap();
            let den = crate::qseries::qpoch_finite(&t, r, c.params()).unwrap();
            assert_eq!(c.eval_principal(&lam, n).unwrap(), num / den);
        }
    }

    #[test]
    fn dual_normalization() {
        let c = ctx(1, 2, 2);
        assert_eq!(c.b_lambda(&Signature::empty()).unwrap(), Rat::one());
        // one-row: b_(k) = (t;q)_k/(q;q)_k
        let qp = c.params().clone();
        for k in 1..=4i64 {
            let row = sig(&[k]);
            let t = c.t();
            let num = crate::qseries::qpoch_finite(&t, k, &qp).unwrap();
            let den = crate::qseries::qpoch_finite(qp.q(), k, &qp).unwrap();
            assert_eq!(c.b_lambda(&row).unwrap(), num / den);
        }
        // principal evaluation of Q via both routes
        for (lam, n) in [(sig(&[2, 1, 0]), 3usize), (sig(&[3, 1]), 2)] {
            let via_b = c.b_lambda(&lam).unwrap() * c.eval_principal(&lam, n).unwrap();
            assert_eq!(via_b, c.eval_principal_dual(&lam, n).unwrap());
        }
    }

    #[test]
    fn g_poly_cases() {
        let c = ctx(1, 2, 2);
        assert!(c.g_poly(-2, 3).unwrap().is_zero());
        assert_eq!(*c.g_poly(0, 3).unwrap(), LaurentPoly::one(3));
        let g2 = c.g_poly(2, 2).unwrap();
        assert!(g2.is_symmetric());
        // generating function: prod_i (t x_i y;q)_inf/(x_i y;q)_inf = sum g_r y^r,
        // checked through y-degree K as formal series using finite data only.
        // The y-coefficient of the product over i of sum_r ((t;q)_r/(q;q)_r) (x_i y)^r
        // (one-variable q-binomial expansions) must match g_r.
        let k_max = 5i64;
        let n = 2usize;
        let qp = c.params().clone();
        let t = c.t();
        // one-variable expansion coefficients c_r = (t;q)_r/(q;q)_r
        let coeffs: Vec<Rat> = (0..=k_max)
            .map(|r| {
                crate::qseries::qpoch_finite(&t, r, &qp).unwrap()
                    / crate::qseries::qpoch_finite(qp.q(), r, &qp).unwrap()
            })
            .collect();
        // product over variables, truncated in y; histogram by y-degree
        let mut by_deg: Vec<LaurentPoly> = (0..=k_max as usize)
            .map(|_| LaurentPoly::zero(n))
            .collect();
        by_deg[0] = LaurentPoly::one(n);
        for var in 0..n {
            let mut next: Vec<LaurentPoly> =
                (0..=k_max as usize).map(|_| LaurentPoly::zero(n)).collect();
            for (d, poly) in by_deg.iter().enumerate() {
                if poly.is_zero() {
                    continue;
                }
                for r in 0..=(k_max as usize - d) {
                    let mut exps = vec![0i64; n];
                    exps[var] = r as i64;
                    next[d + r] =
                        next[d + r].add(&poly.mul_monomial(&exps, &coeffs[r]));
                }
            }
            by_deg = next;
        }
        for r in 0..=k_max {
            assert_eq!(
                by_deg[r as usize],
                *c.g_poly(r, n).unwrap(),
                "y-degree {r}"
            );
        }
    }

    #[test]
    fn triangularity_and_positivity() {
        let c = ctx(1, 2, 2);
        for (lam, n) in [(sig(&[2, 0]), 2usize), (sig(&[2, 1, 0]), 3), (sig(&[3, 1]), 2)] {
            let exp = c.monomial_expansion(&lam, n).unwrap();
            assert_eq!(exp[&lam], Rat::one());
            for (mu, coeff) in &exp {
                assert!(dominated(mu, &lam), "{:?} under {:?}", mu.parts(), lam.parts());
                assert!(coeff > &Rat::zero());
            }
        }
    }

    #[test]
    fn index_argument_symmetry_cases() {
        let c = ctx(1, 2, 2);
        assert!(c
            .check_index_argument_symmetry(&sig(&[1, 0]), &sig(&[2, 1]), 2)
            .unwrap());
        let c2 = ctx(1, 3, 1);
        assert!(c2
            .check_index_argument_symmetry(&sig(&[2, 0, 0]), &sig(&[1, 1, 0]), 3)
            .unwrap());
        let c3 = ctx(2, 3, 3);
        assert!(c3
            .check_index_argument_symmetry(&sig(&[2, 2]), &sig(&[3, 0]), 2)
            .unwrap());
    }

    #[test]
    fn univariate_restriction_matches_full_polynomial() {
        let c = ctx(1, 2, 2);
        let lam = sig(&[2, 1, -1]);
        let n = 3usize;
        let restriction = c.univariate_character_num(&lam, n).unwrap();
        let x = rat_frac(3, 7);
        let from_list: Rat = restriction
            .iter()
            .map(|(k, w)| w * crate::scalar::rat_pow(&x, *k))
            .sum();
        let t = c.t();
        let mut point = vec![x.clone(), Rat::one()];
        point.push(t.clone());
        let full = c.poly(&lam, n).unwrap().evaluate(&point).unwrap();
        assert_eq!(from_list, full);
    }
}
