//! The free algebra `'f` on generators `theta_i`, the form `S`, the
//! comultiplication and the derivations `delta_i`.
//!
//! The algebra only needs the symmetric integer matrix `i.j`, so the same
//! code serves `'f` over a Cartan datum and the unfolded algebra over a
//! labelled set `J` (where `j.j'` is `pi(j).pi(j')`).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::linalg::{rank, CycMatrix};
use crate::rootdata::{CartanDatum, RootVec};
use crate::{Error, Result};

pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Word);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self, rank: usize) -> RootVec {
        RootVec::of_word(&self.0, rank)
    }
}

/// A linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElement {
    pub terms: BTreeMap<Word, CycNum>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, CycNum::one())
    }

    pub fn term(w: Word, c: CycNum) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_assign_scaled(&mut self, f: &CycField, other: &FreeElement, c: &CycNum) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &f.mul(x, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[usize]) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn scale(&self, f: &CycField, c: &CycNum) -> FreeElement {
        let mut out = Self::zero();
        out.add_assign_scaled(f, self, c);
        out
    }

    pub fn add(&self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    /// The common weight, or `None` for zero or inhomogeneous elements.
    pub fn weight(&self, rank: usize) -> Option<RootVec> {
        let mut it = self.terms.keys().map(|w| RootVec::of_word(w, rank));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Coordinates in the given basis of words; `None` if a word is missing.
    pub fn coords(&self, basis: &[Word]) -> Option<Vec<CycNum>> {
        let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![CycNum::zero(); basis.len()];
        for (w, c) in &self.terms {
            v[*index.get(w)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coords(basis: &[Word], v: &[CycNum]) -> FreeElement {
        let mut out = Self::zero();
        for (w, c) in basis.iter().zip(v) {
            out.add_term(w.clone(), c);
        }
        out
    }
}

/// An element of an n-fold tensor power of `'f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    pub terms: BTreeMap<Vec<Word>, CycNum>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, w: Vec<Word>, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn coeff(&self, w: &[Word]) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

/// `'f` over a symmetric integer pairing on the colors.
#[derive(Clone, Debug)]
pub struct FreeAlg {
    field: Arc<CycField>,
    dot: Vec<Vec<i64>>,
}

impl FreeAlg {
    pub fn new(field: Arc<CycField>, dot: Vec<Vec<i64>>) -> Self {
        FreeAlg { field, dot }
    }

    pub fn from_cartan(field: Arc<CycField>, c: &CartanDatum) -> Self {
        Self::new(field, c.dot_matrix().to_vec())
    }

    /// The algebra on colors `J` with `a.b = pi(a).pi(b)`.
    pub fn unfolded(field: Arc<CycField>, c: &CartanDatum, pi: &[usize]) -> Self {
        let dot = pi.iter().map(|&a| pi.iter().map(|&b| c.dot(a, b)).collect()).collect();
        Self::new(field, dot)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.dot.len()
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.dot[i][j]
    }

    pub fn dot_matrix(&self) -> &[Vec<i64>] {
        &self.dot
    }

    /// `|a| . |b|`.
    pub fn word_dot(&self, a: &[usize], b: &[usize]) -> i64 {
        let mut s = 0;
        for &x in a {
            for &y in b {
                s += self.dot[x][y];
            }
        }
        s
    }

    pub fn zeta(&self, e: i64) -> CycNum {
        self.field.zeta_pow_int(e)
    }

    /// Words of weight `nu`, lexicographic.
    pub fn basis(&self, nu: &RootVec) -> Vec<Word> {
        words_of_weight(nu)
    }

    /// `zeta(K; tau) = prod zeta^(i_a . i_b)` over `a < b` with `tau(a) > tau(b)`.
    pub fn twist_exponent(&self, k: &[usize], tau: &[usize]) -> i64 {
        let mut e = 0;
        for a in 0..k.len() {
            for b in a + 1..k.len() {
                if tau[a] > tau[b] {
                    e += self.dot[k[a]][k[b]];
                }
            }
        }
        e
    }

    pub fn twist_number(&self, k: &[usize], tau: &[usize]) -> CycNum {
        self.zeta(self.twist_exponent(k, tau))
    }

    /// Sums `zeta^e` over a histogram of exponents reduced mod `l`.
    fn sum_powers(&self, hist: &[i64]) -> CycNum {
        let mut s = CycNum::zero();
        for (e, &c) in hist.iter().enumerate() {
            if c != 0 {
                s += &self.zeta(e as i64).scale_int(c);
            }
        }
        s
    }

    /// `S(theta_K, theta_K')` as the sum over `tau` with `K'_{tau(a)} = K_a`.
    pub fn form_s_perm(&self, k: &[usize], kp: &[usize]) -> CycNum {
        if k.len() != kp.len() {
            return CycNum::zero();
        }
        let l = self.field.l() as i64;
        let mut hist = vec![0i64; l as usize];
        let mut tau = vec![usize::MAX; k.len()];
        let mut used = vec![false; k.len()];
        fn rec(
            alg: &FreeAlg,
            k: &[usize],
            kp: &[usize],
            a: usize,
            exp: i64,
            tau: &mut Vec<usize>,
            used: &mut Vec<bool>,
            hist: &mut Vec<i64>,
        ) {
            if a == k.len() {
                let l = hist.len() as i64;
                hist[exp.rem_euclid(l) as usize] += 1;
                return;
            }
            for p in 0..kp.len() {
                if used[p] || kp[p] != k[a] {
                    continue;
                }
                let mut e = exp;
                for b in 0..a {
                    if tau[b] > p {
                        e += alg.dot[k[b]][k[a]];
                    }
                }
                used[p] = true;
                tau[a] = p;
                rec(alg, k, kp, a + 1, e, tau, used, hist);
                used[p] = false;
            }
        }
        rec(self, k, kp, 0, 0, &mut tau, &mut used, &mut hist);
        self.sum_powers(&hist)
    }

    /// `S(theta_K, theta_K')` through `S(theta_i x, y) = S(x, delta_i y)`,
    /// memoized over the set of letters of `K'` already removed.
    pub fn form_s_rec(&self, k: &[usize], kp: &[usize]) -> CycNum {
        let n = k.len();
        if n != kp.len() {
            return CycNum::zero();
        }
        assert!(n < 32, "depth too large");
        let mut memo: Vec<Option<CycNum>> = vec![None; 1 << n];
        memo[(1usize << n) - 1] = Some(CycNum::one());
        fn go(alg: &FreeAlg, k: &[usize], kp: &[usize], mask: usize, memo: &mut Vec<Option<CycNum>>) -> CycNum {
            if let Some(v) = &memo[mask] {
                return v.clone();
            }
            let m = mask.count_ones() as usize;
            let i = k[m];
            let mut s = CycNum::zero();
            let mut exp = 0;
            for p in 0..kp.len() {
                if mask & (1 << p) != 0 {
                    continue;
                }
                if kp[p] == i {
                    let sub = go(alg, k, kp, mask | (1 << p), memo);
                    if !sub.is_zero() {
                        s += &alg.field.mul(&alg.zeta(exp), &sub);
                    }
                }
                exp += alg.dot[i][kp[p]];
            }
            memo[mask] = Some(s.clone());
            s
        }
        go(self, k, kp, 0, &mut memo)
    }

    pub fn form_s(&self, k: &[usize], kp: &[usize]) -> CycNum {
        if k.len() <= 8 {
            self.form_s_perm(k, kp)
        } else {
            self.form_s_rec(k, kp)
        }
    }

    pub fn form_s_elem(&self, x: &FreeElement, y: &FreeElement) -> CycNum {
        let mut s = CycNum::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let v = self.form_s(a, b);
                if !v.is_zero() {
                    s += &self.field.mul(&self.field.mul(ca, cb), &v);
                }
            }
        }
        s
    }

    /// `S` on tensor powers, factorwise.
    pub fn form_s_tensor(&self, x: &TensorElement, y: &TensorElement) -> CycNum {
        let mut s = CycNum::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut v = self.field.mul(ca, cb);
                for (u, w) in a.iter().zip(b) {
                    if v.is_zero() {
                        break;
                    }
                    v = self.field.mul(&v, &self.form_s(u, w));
                }
                s += &v;
            }
        }
        s
    }

    pub fn gram_s(&self, nu: &RootVec) -> CycMatrix {
        let b = self.basis(nu);
        let mut m = CycMatrix::zeros(b.len(), b.len());
        for i in 0..b.len() {
            for j in i..b.len() {
                let v = self.form_s(&b[i], &b[j]);
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim_f(&self, nu: &RootVec) -> usize {
        rank(&self.field, &self.gram_s(nu))
    }

    pub fn mul(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &self.field.mul(ca, cb));
            }
        }
        out
    }

    /// `Delta^(n)(theta_K)`: a sum over maps `f: [N] -> [n]`, with the twist
    /// over pairs `a < b` sent to blocks in decreasing order.
    pub fn iterated_comult(&self, k: &[usize], n: usize) -> TensorElement {
        let mut out = TensorElement::zero();
        if n == 0 {
            if k.is_empty() {
                out.add_term(Vec::new(), &CycNum::one());
            }
            return out;
        }
        let mut assign = vec![0usize; k.len()];
        loop {
            let mut e = 0;
            for a in 0..k.len() {
                for b in a + 1..k.len() {
                    if assign[a] > assign[b] {
                        e += self.dot[k[a]][k[b]];
                    }
                }
            }
            let mut parts = vec![Vec::new(); n];
            for (a, &blk) in assign.iter().enumerate() {
                parts[blk].push(k[a]);
            }
            out.add_term(parts, &self.zeta(e));
            let mut t = 0;
            loop {
                if t == k.len() {
                    return out;
                }
                assign[t] += 1;
                if assign[t] < n {
                    break;
                }
                assign[t] = 0;
                t += 1;
            }
        }
    }

    pub fn comult(&self, k: &[usize]) -> TensorElement {
        self.iterated_comult(k, 2)
    }

    pub fn comult_elem(&self, x: &FreeElement, n: usize) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in &x.terms {
            for (t, d) in &self.iterated_comult(w, n).terms {
                out.add_term(t.clone(), &self.field.mul(c, d));
            }
        }
        out
    }

    /// The part of `Delta^(N)(theta_K)` with one letter per factor, as
    /// `sum_tau zeta(K; tau) theta_{K_a at slot tau(a)}`.
    pub fn iterated_comult_plus(&self, k: &[usize]) -> TensorElement {
        let mut out = TensorElement::zero();
        for tau in permutations(k.len()) {
            let mut slots = vec![Vec::new(); k.len()];
            for (a, &p) in tau.iter().enumerate() {
                slots[p] = vec![k[a]];
            }
            out.add_term(slots, &self.twist_number(k, &tau));
        }
        out
    }

    /// Product in `'f (x) 'f` with `(x1 (x) x2)(y1 (x) y2) = zeta^(|x2|.|y1|) x1 y1 (x) x2 y2`,
    /// extended to n factors.
    pub fn braided_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut e = 0;
                for p in 0..a.len() {
                    for q in 0..p {
                        e += self.word_dot(&a[p], &b[q]);
                    }
                }
                let w: Vec<Word> = a.iter().zip(b).map(|(u, v)| [u.as_slice(), v.as_slice()].concat()).collect();
                let c = self.field.mul(&self.field.mul(ca, cb), &self.zeta(e));
                out.add_term(w, &c);
            }
        }
        out
    }

    /// `delta_i(theta_j y) = delta_ij y + zeta^(i.j) theta_j delta_i(y)`.
    pub fn delta_i(&self, i: usize, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &x.terms {
            let mut exp = 0;
            for p in 0..w.len() {
                if w[p] == i {
                    let mut rest = w[..p].to_vec();
                    rest.extend_from_slice(&w[p + 1..]);
                    out.add_term(rest, &self.field.mul(c, &self.zeta(exp)));
                }
                exp += self.dot[i][w[p]];
            }
        }
        out
    }

    /// Symmetric quantum binomial in `v = zeta^(d_i)`.
    fn qbinom(&self, n: usize, k: usize, d: i64) -> CycNum {
        // [n,k] = v^k [n-1,k] + v^-(n-k) [n-1,k-1]
        let mut row = vec![CycNum::one()];
        for m in 1..=n {
            let mut next = vec![CycNum::zero(); m + 1];
            for j in 0..=m {
                let mut s = CycNum::zero();
                if j < m {
                    s += &self.field.mul(&self.zeta(d * j as i64), &row[j]);
                }
                if j > 0 {
                    s += &self.field.mul(&self.zeta(-d * (m - j) as i64), &row[j - 1]);
                }
                next[j] = s;
            }
            row = next;
        }
        row[k].clone()
    }

    /// `sum_p (-1)^p [m choose p]_i theta_i^p theta_j theta_i^(m-p)`, `m = 1 - <i,j'>`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<FreeElement> {
        if i == j {
            return Err(Error::Param("Serre element needs distinct colors".into()));
        }
        let d = self.dot[i][i] / 2;
        let m = (1 - 2 * self.dot[i][j] / self.dot[i][i]) as usize;
        let mut out = FreeElement::zero();
        for p in 0..=m {
            let mut w = vec![i; p];
            w.push(j);
            w.extend(std::iter::repeat(i).take(m - p));
            let c = self.qbinom(m, p, d);
            out.add_term(w, &if p % 2 == 0 { c } else { -c });
        }
        Ok(out)
    }
}

/// Distinct arrangements of the multiset `nu`, lexicographic.
pub fn words_of_weight(nu: &RootVec) -> Vec<Word> {
    let mut counts: Vec<u32> = nu.0.clone();
    let n = nu.depth();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(counts: &mut Vec<u32>, n: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..counts.len() {
            if counts[c] > 0 {
                counts[c] -= 1;
                cur.push(c);
                rec(counts, n, cur, out);
                cur.pop();
                counts[c] += 1;
            }
        }
    }
    rec(&mut counts, n, &mut cur, &mut out);
    out
}

/// All permutations of `0..n` as maps `a -> tau[a]`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                rec(n, cur, used, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;

    fn alg(name: &str, l: u64) -> FreeAlg {
        let c = CartanDatum::preset(name).unwrap();
        FreeAlg::from_cartan(CycField::new(l, 1, c.varpi()).unwrap(), &c)
    }

    #[test]
    fn twist_examples() {
        let a = alg("A1", 5);
        assert!(a.twist_number(&[0, 0], &[0, 1]).is_one());
        assert_eq!(a.twist_number(&[0, 0], &[1, 0]), a.zeta(2));
        let a = alg("A2", 5);
        assert_eq!(a.twist_number(&[0, 1], &[1, 0]), a.zeta(-1));
    }

    #[test]
    fn form_examples() {
        let a = alg("A1", 5);
        assert!(a.form_s(&[], &[]).is_one());
        assert!(a.form_s(&[0], &[0]).is_one());
        assert_eq!(a.form_s(&[0, 0], &[0, 0]), CycNum::one() + a.zeta(2));
        let a = alg("A2", 5);
        assert!(a.form_s(&[0], &[1]).is_zero());
        let g = a.gram_s(&RootVec(vec![1, 1]));
        let z = a.zeta(-1);
        let expect = CycMatrix::from_rows(vec![vec![CycNum::one(), z.clone()], vec![z, CycNum::one()]]);
        assert_eq!(g, expect);
        assert_eq!(a.dim_f(&RootVec(vec![1, 1])), 2);
    }

    #[test]
    fn dim_f_sl2() {
        let a = alg("A1", 5);
        for k in 0..5 {
            assert_eq!(a.dim_f(&RootVec(vec![k])), 1);
        }
        assert_eq!(a.dim_f(&RootVec(vec![5])), 0);
    }

    #[test]
    fn perm_and_recursive_forms_agree() {
        for name in ["A2", "B2", "G2"] {
            let a = alg(name, 5);
            for nu in [RootVec(vec![2, 2]), RootVec(vec![3, 1]), RootVec(vec![1, 3])] {
                let b = a.basis(&nu);
                for x in &b {
                    for y in &b {
                        assert_eq!(a.form_s_perm(x, y), a.form_s_rec(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn comult_examples() {
        let a = alg("A2", 5);
        let d = a.comult(&[]);
        assert_eq!(d.terms.len(), 1);
        let d = a.comult(&[0]);
        assert!(d.coeff(&[vec![0], vec![]]).is_one());
        assert!(d.coeff(&[vec![], vec![0]]).is_one());
        let d = a.comult(&[0, 1]);
        assert_eq!(d.terms.len(), 4);
        assert!(d.coeff(&[vec![0], vec![1]]).is_one());
        assert_eq!(d.coeff(&[vec![1], vec![0]]), a.zeta(-1));
    }

    #[test]
    fn delta_examples() {
        let a = alg("A1", 5);
        assert!(a.delta_i(0, &FreeElement::monomial(vec![0])).terms[&vec![]].is_one());
        let d = a.delta_i(0, &FreeElement::monomial(vec![0, 0]));
        assert_eq!(d.coeff(&[0]), CycNum::one() + a.zeta(2));
        let a = alg("A2", 5);
        assert!(a.delta_i(0, &FreeElement::monomial(vec![1])).is_zero());
    }

    #[test]
    fn iterated_plus_examples() {
        let a = alg("A1", 5);
        let t = a.iterated_comult_plus(&[0, 0]);
        assert_eq!(t.coeff(&[vec![0], vec![0]]), CycNum::one() + a.zeta(2));
        let a = alg("A2", 5);
        let t = a.iterated_comult_plus(&[0, 1]);
        assert!(t.coeff(&[vec![0], vec![1]]).is_one());
        assert_eq!(t.coeff(&[vec![1], vec![0]]), a.zeta(-1));
        // agrees with the multidegree (1,...,1) part of the iterated coproduct
        let k = [0, 1, 0];
        let full = a.iterated_comult(&k, 3);
        for (w, c) in &a.iterated_comult_plus(&k).terms {
            assert_eq!(full.coeff(w), *c);
        }
    }

    #[test]
    fn serre_examples() {
        let a = alg("A2", 5);
        let s = a.serre_element(0, 1).unwrap();
        assert!(s.coeff(&[0, 0, 1]).is_one());
        assert!(s.coeff(&[1, 0, 0]).is_one());
        assert_eq!(s.coeff(&[0, 1, 0]), -(a.zeta(1) + a.zeta(-1)));
        assert!(a.serre_element(0, 0).is_err());
        let c = CartanDatum::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        let a = FreeAlg::from_cartan(CycField::new(5, 1, c.varpi()).unwrap(), &c);
        let s = a.serre_element(0, 1).unwrap();
        assert_eq!(s.terms.len(), 2);
        assert!(s.coeff(&[1, 0]).is_one());
        assert_eq!(s.coeff(&[0, 1]), CycNum::from_int(-1));
        let a = alg("B2", 5);
        assert_eq!(a.serre_element(0, 1).unwrap().terms.len(), 4);
    }

    #[test]
    fn serre_in_kernel() {
        for name in ["A2", "B2", "G2"] {
            for l in [5, 7] {
                let a = alg(name, l);
                for (i, j) in [(0, 1), (1, 0)] {
                    let s = a.serre_element(i, j).unwrap();
                    let nu = s.weight(2).unwrap();
                    let basis = a.basis(&nu);
                    for w in &basis {
                        let v = a.form_s_elem(&FreeElement::monomial(w.clone()), &s);
                        assert!(v.is_zero(), "{} l={} ({},{})", name, l, i, j);
                    }
                    let f = a.field().clone();
                    assert!(!kernel_basis(&f, &a.gram_s(&nu)).is_empty());
                }
            }
        }
    }
}
