//! Verma modules `V(Lambda) = 'f v_Lambda`, the form `S_Lambda`, quantum
//! commutators and the coaction `Delta_Lambda`.
//!
//! The highest weight enters only through the integers `Lambda . i'`, so a
//! `Verma` works equally over a Cartan datum and over an unfolded algebra.
//! A `FreeElement` stands for `x v_Lambda`.

use crate::cyclotomic::CycNum;
use crate::freealg::{FreeAlg, FreeElement, TensorElement, Word};
use crate::linalg::{rank, CycMatrix};
use crate::rootdata::{CartanDatum, RootVec, Weight};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Verma {
    alg: FreeAlg,
    lam: Vec<i64>,
}

/// `x v_Lambda` together with `Lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaElement {
    pub x: FreeElement,
    pub highest: Weight,
}

impl Verma {
    /// `lam[i] = Lambda . i'`.
    pub fn new(alg: FreeAlg, lam: Vec<i64>) -> Self {
        assert_eq!(alg.rank(), lam.len());
        Verma { alg, lam }
    }

    pub fn from_weight(alg: FreeAlg, c: &CartanDatum, highest: &Weight) -> Result<Self> {
        Ok(Self::new(alg, c.lambda_dots(highest)?))
    }

    pub fn alg(&self) -> &FreeAlg {
        &self.alg
    }

    pub fn lam(&self) -> &[i64] {
        &self.lam
    }

    /// `lambda . i'` for the X-weight `Lambda - nu'` of the word `w`.
    pub fn weight_dot(&self, w: &[usize], i: usize) -> i64 {
        self.lam[i] - w.iter().map(|&c| self.alg.dot(c, i)).sum::<i64>()
    }

    fn bracket(&self, a: i64) -> CycNum {
        self.alg.field().q_bracket(a)
    }

    /// `eps_i(theta_j x) = [beta . i'] delta_ij x + zeta^(i.j) theta_j eps_i(x)`, `x` of weight beta.
    pub fn epsilon_i(&self, i: usize, x: &FreeElement) -> FreeElement {
        let f = self.alg.field();
        let mut out = FreeElement::zero();
        for (w, c) in &x.terms {
            let mut exp = 0;
            for p in 0..w.len() {
                if w[p] == i {
                    let b = self.bracket(self.weight_dot(&w[p + 1..], i));
                    if !b.is_zero() {
                        let mut rest = w[..p].to_vec();
                        rest.extend_from_slice(&w[p + 1..]);
                        out.add_term(rest, &f.mul(c, &f.mul(&b, &self.alg.zeta(exp))));
                    }
                }
                exp += self.alg.dot(i, w[p]);
            }
        }
        out
    }

    pub fn epsilon(&self, i: usize, x: &VermaElement) -> Result<VermaElement> {
        self.check_highest(x)?;
        Ok(VermaElement { x: self.epsilon_i(i, &x.x), highest: x.highest.clone() })
    }

    fn check_highest(&self, _x: &VermaElement) -> Result<()> {
        Ok(())
    }

    /// `S_Lambda(theta_K v, theta_K' v)` by `S_Lambda(theta_i x, y) = S_Lambda(x, eps_i y)`,
    /// memoized over removed letters of `K'`.
    pub fn form(&self, k: &[usize], kp: &[usize]) -> CycNum {
        let n = k.len();
        if n != kp.len() {
            return CycNum::zero();
        }
        let mut ks = k.to_vec();
        ks.sort();
        let mut kps = kp.to_vec();
        kps.sort();
        if ks != kps {
            return CycNum::zero();
        }
        assert!(n < 32, "depth too large");
        let mut memo: Vec<Option<CycNum>> = vec![None; 1 << n];
        memo[(1usize << n) - 1] = Some(CycNum::one());
        self.form_go(k, kp, 0, &mut memo)
    }

    fn form_go(&self, k: &[usize], kp: &[usize], mask: usize, memo: &mut Vec<Option<CycNum>>) -> CycNum {
        if let Some(v) = &memo[mask] {
            return v.clone();
        }
        let f = self.alg.field();
        let m = mask.count_ones() as usize;
        let i = k[m];
        let mut s = CycNum::zero();
        let mut exp = 0;
        for p in 0..kp.len() {
            if mask & (1 << p) != 0 {
                continue;
            }
            if kp[p] == i {
                let after: i64 = (p + 1..kp.len())
                    .filter(|&q| mask & (1 << q) == 0)
                    .map(|q| self.alg.dot(kp[q], i))
                    .sum();
                let b = self.bracket(self.lam[i] - after);
                if !b.is_zero() {
                    let sub = self.form_go(k, kp, mask | (1 << p), memo);
                    if !sub.is_zero() {
                        s += &f.mul(&f.mul(&self.alg.zeta(exp), &b), &sub);
                    }
                }
            }
            exp += self.alg.dot(i, kp[p]);
        }
        memo[mask] = Some(s.clone());
        s
    }

    /// Closed formula `sum_tau zeta(K; tau) A(K, Lambda; tau)` with
    /// `A = prod_a [<Lambda - sum lambda_{i_b}, i_a>]`. The sum over `b` runs over
    /// the letters applied to `v_Lambda` before `i_a` in both words, i.e. `b > a`
    /// with `tau(b) > tau(a)` for `theta_K = theta_{i_1} ... theta_{i_N}`.
    /// Simply-laced data only.
    pub fn form_oracle(&self, k: &[usize], kp: &[usize]) -> Result<CycNum> {
        if (1..self.alg.rank()).any(|i| self.alg.dot(i, i) != self.alg.dot(0, 0)) {
            return Err(Error::Unsupported("closed formula is only stated for simply-laced data".into()));
        }
        let f = self.alg.field();
        let mut s = CycNum::zero();
        if k.len() != kp.len() {
            return Ok(s);
        }
        let n = k.len();
        for tau in crate::freealg::permutations(n) {
            // letter a of K sits at slot tau(a) of K'
            if (0..n).any(|a| kp[tau[a]] != k[a]) {
                continue;
            }
            let mut term = self.alg.twist_number(k, &tau);
            for a in 0..n {
                let sub: i64 = (a + 1..n).filter(|&b| tau[b] > tau[a]).map(|b| self.alg.dot(k[b], k[a])).sum();
                term = f.mul(&term, &self.bracket(self.lam[k[a]] - sub));
                if term.is_zero() {
                    break;
                }
            }
            s += &term;
        }
        Ok(s)
    }

    pub fn form_elem(&self, x: &FreeElement, y: &FreeElement) -> CycNum {
        let f = self.alg.field();
        let mut s = CycNum::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let v = self.form(a, b);
                if !v.is_zero() {
                    s += &f.mul(&f.mul(ca, cb), &v);
                }
            }
        }
        s
    }

    pub fn form_s_lambda(&self, x: &VermaElement, y: &VermaElement) -> Result<CycNum> {
        if x.highest != y.highest {
            return Err(Error::Param("S_Lambda of vectors in different Verma modules".into()));
        }
        Ok(self.form_elem(&x.x, &y.x))
    }

    pub fn gram(&self, nu: &RootVec) -> CycMatrix {
        let b = self.alg.basis(nu);
        let mut m = CycMatrix::zeros(b.len(), b.len());
        for i in 0..b.len() {
            for j in i..b.len() {
                let v = self.form(&b[i], &b[j]);
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim_l(&self, nu: &RootVec) -> usize {
        rank(self.alg.field(), &self.gram(nu))
    }

    /// `ad_{theta_i, lambda}(x) = theta_i x - zeta^(i.nu - 2 lambda.i') x theta_i`,
    /// with `lam_i = lambda . i'`.
    pub fn ad_theta(alg: &FreeAlg, i: usize, lam_i: i64, x: &FreeElement) -> Result<FreeElement> {
        if x.is_zero() {
            return Ok(FreeElement::zero());
        }
        let nu = x
            .weight(alg.rank())
            .ok_or_else(|| Error::Param("ad_theta needs a homogeneous element".into()))?;
        let inu: i64 = nu.0.iter().enumerate().map(|(c, &m)| m as i64 * alg.dot(i, c)).sum();
        let left = alg.mul(&FreeElement::monomial(vec![i]), x);
        let right = alg.mul(x, &FreeElement::monomial(vec![i]));
        Ok(left.sub(&right.scale(alg.field(), &alg.zeta(inu - 2 * lam_i))))
    }

    /// `[theta_{I,Q,Lambda}]` for the word `w = (i_N, ..., i_1)` and a set `q`
    /// of indices `j` in `1..=N` (so `i_j = w[N - j]`).
    pub fn quantum_commutator(&self, w: &[usize], q: &[usize]) -> Result<FreeElement> {
        let n = w.len();
        if q.is_empty() {
            return Err(Error::Param("empty Q".into()));
        }
        let mut q = q.to_vec();
        q.sort();
        q.dedup();
        if q.iter().any(|&j| j == 0 || j > n) {
            return Err(Error::Param("Q must lie in 1..=N".into()));
        }
        let letter = |j: usize| w[n - j];
        // zeta(I; tau_Q): pairs (s before t in w) with s outside Q and t in Q
        let in_q = |s: usize| q.contains(&(n - s));
        let mut e = 0;
        for t in 0..n {
            if in_q(t) {
                for s in 0..t {
                    if !in_q(s) {
                        e += self.alg.dot(w[s], w[t]);
                    }
                }
            }
        }
        let mut x = FreeElement::monomial(vec![letter(q[0])]);
        for a in 1..q.len() {
            let ja = q[a];
            let i = letter(ja);
            // weight of the part of the vector still to the right: letters below j_a outside Q
            let lam_a = self.lam[i]
                - (1..ja).filter(|k| !q[..a].contains(k)).map(|k| self.alg.dot(letter(k), i)).sum::<i64>();
            x = Self::ad_theta(&self.alg, i, lam_a, &x)?;
        }
        Ok(x.scale(self.alg.field(), &self.alg.zeta(e)))
    }

    /// `Delta_Lambda(theta_w v)` by the sum over nonempty `Q`; terms are
    /// `[a, b]` for `a (x) b v`.
    pub fn coaction(&self, w: &[usize]) -> TensorElement {
        let f = self.alg.field();
        let n = w.len();
        let mut out = TensorElement::zero();
        out.add_term(vec![Vec::new(), w.to_vec()], &CycNum::one());
        let letter = |j: usize| w[n - j];
        for mask in 1u32..(1 << n) {
            let q: Vec<usize> = (1..=n).filter(|&j| mask & (1 << (j - 1)) != 0).collect();
            let j0 = q[0];
            let i0 = letter(j0);
            let b = self.bracket(self.lam[i0] - (1..j0).map(|k| self.alg.dot(letter(k), i0)).sum::<i64>());
            if b.is_zero() {
                continue;
            }
            let comm = self.quantum_commutator(w, &q).expect("valid Q");
            let rest: Word = (0..n).filter(|&s| !q.contains(&(n - s))).map(|s| w[s]).collect();
            for (a, c) in &comm.terms {
                out.add_term(vec![a.clone(), rest.clone()], &f.mul(c, &b));
            }
        }
        out
    }

    pub fn coaction_elem(&self, x: &FreeElement) -> TensorElement {
        let f = self.alg.field();
        let mut out = TensorElement::zero();
        for (w, c) in &x.terms {
            for (t, d) in &self.coaction(w).terms {
                out.add_term(t.clone(), &f.mul(c, d));
            }
        }
        out
    }

    /// `S_{1;Lambda}(a (x) b, a' (x) b') = S(a, a') S_Lambda(b, b')`.
    pub fn form_pair(&self, x: &TensorElement, y: &TensorElement) -> CycNum {
        let f = self.alg.field();
        let mut s = CycNum::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let s1 = self.alg.form_s(&a[0], &b[0]);
                if s1.is_zero() {
                    continue;
                }
                let s2 = self.form(&a[1], &b[1]);
                if s2.is_zero() {
                    continue;
                }
                s += &f.mul(&f.mul(ca, cb), &f.mul(&s1, &s2));
            }
        }
        s
    }
}
