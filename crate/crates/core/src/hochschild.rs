//! Hochschild complexes `C_A(M)` for `A = 'f` acting on
//! `M = V(Lambda_0) (x) ... (x) V(Lambda_{n-1})`, in one weight component.
//!
//! Degree `-r` is spanned by `a_r | ... | a_1 | m` with every `a_p` of
//! nonzero weight, and
//! `d(a_r|...|a_1|m) = sum_{p=1}^{r-1} (-1)^p a_r|...|a_{p+1}a_p|...|m + a_r|...|a_2|a_1 m`.
//!
//! Three versions share one basis of word tuples:
//! - `Side::Free`: `'f` on `V(Lambda_0) (x) ... `,
//! - `Side::Dual`: `'f*` on `V(Lambda_0)* (x) ...`, the product on `'f*`
//!   dual to `Delta` and the action dual to `Delta_Lambda`,
//! - the image of the degreewise form `S`, i.e. the complex of `f` over
//!   `L(Lambda_0) (x) ...` (see [`Hochschild::build_complex_f`]).
//!
//! A basis element is stored as `r + n` words `[a_r, ..., a_1, x_0, ..., x_{n-1}]`.

use std::collections::HashMap;

use crate::cyclotomic::CycNum;
use crate::freealg::{words_of_weight, FreeAlg, FreeElement, TensorElement, Word};
use crate::linalg::{cohomology_dims, image_complex, ChainComplex, ChainMap, CycMatrix};
use crate::rootdata::RootVec;
use crate::verma::Verma;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Free,
    Dual,
}

/// `(rho, tau)` for a multiplicity-free weight: `rho[j]` in `[-n+1, r]`
/// hits all of `1..=r`, `tau` is a bijection `J -> 0..|J|` refining `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HochBasisLabel {
    pub rho: Vec<i64>,
    pub tau: Vec<usize>,
}

impl HochBasisLabel {
    /// `rho(i) < rho(j)` implies `tau(i) < tau(j)`.
    pub fn is_refinement(&self) -> bool {
        let n = self.rho.len();
        (0..n).all(|i| (0..n).all(|j| self.rho[i] >= self.rho[j] || self.tau[i] < self.tau[j]))
    }

    /// `theta_{rho<=tau}` as `r + n` words: block `a` is read in decreasing `tau`.
    pub fn words(&self, r: usize, n: usize) -> Vec<Word> {
        let mut out = Vec::with_capacity(r + n);
        let block = |a: i64| {
            let mut js: Vec<usize> = (0..self.rho.len()).filter(|&j| self.rho[j] == a).collect();
            js.sort_by_key(|&j| std::cmp::Reverse(self.tau[j]));
            js
        };
        for a in (1..=r as i64).rev() {
            out.push(block(a));
        }
        for m in 0..n as i64 {
            out.push(block(-m));
        }
        out
    }
}

/// All `mu <= nu`.
pub fn sub_weights(nu: &RootVec) -> Vec<RootVec> {
    let mut out = vec![Vec::new()];
    for &m in &nu.0 {
        let mut next = Vec::new();
        for v in &out {
            for a in 0..=m {
                let mut w: Vec<u32> = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(RootVec).collect()
}

fn fmt_label(l: &[Word], r: usize) -> String {
    let parts: Vec<String> = l
        .iter()
        .map(|w| if w.is_empty() { "1".to_string() } else { w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".") })
        .collect();
    let (a, m) = parts.split_at(r);
    if a.is_empty() {
        m.join("(x)")
    } else {
        format!("{}|{}", a.join("|"), m.join("(x)"))
    }
}

#[derive(Clone, Debug)]
pub struct Hochschild {
    alg: FreeAlg,
    mods: Vec<Verma>,
}

#[derive(Default)]
struct Cache {
    comult: HashMap<Word, TensorElement>,
    coact: HashMap<(usize, Word), TensorElement>,
}

impl Hochschild {
    /// `lams[j][i] = Lambda_j . i'`.
    pub fn new(alg: FreeAlg, lams: Vec<Vec<i64>>) -> Self {
        let mods = lams.into_iter().map(|l| Verma::new(alg.clone(), l)).collect();
        Hochschild { alg, mods }
    }

    pub fn alg(&self) -> &FreeAlg {
        &self.alg
    }

    pub fn modules(&self) -> &[Verma] {
        &self.mods
    }

    pub fn n(&self) -> usize {
        self.mods.len()
    }

    /// Basis of degree `-r` at weight `nu`.
    pub fn basis(&self, nu: &RootVec, r: usize) -> Vec<Vec<Word>> {
        let slots = r + self.n();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(slots);
        self.fill(nu, r, slots, &mut cur, &mut out);
        out
    }

    fn fill(&self, left: &RootVec, r: usize, slots: usize, cur: &mut Vec<Word>, out: &mut Vec<Vec<Word>>) {
        let k = cur.len();
        if k == slots {
            if left.depth() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let choices = if k + 1 == slots { vec![left.clone()] } else { sub_weights(left) };
        for mu in choices {
            if k < r && mu.depth() == 0 {
                continue;
            }
            let rest = left.minus(&mu).expect("sub-weight");
            for w in words_of_weight(&mu) {
                cur.push(w);
                self.fill(&rest, r, slots, cur, out);
                cur.pop();
            }
        }
    }

    /// `<lambda_j, nu>` for `lambda_j` the weight of `x_j` and `nu` the weight of `u`.
    fn pairing(&self, j: usize, xj: &[usize], u: &[usize]) -> i64 {
        u.iter().map(|&c| self.mods[j].weight_dot(xj, c)).sum()
    }

    /// `u . (x_0 (x) ... (x) x_{n-1})` through `Delta^(n)` and the sign rule
    /// `zeta^(-sum_{j<i} <lambda_j, nu_i>)`.
    pub fn tensor_action(&self, u: &[usize], x: &[Word]) -> TensorElement {
        let f = self.alg.field();
        let n = self.n();
        let mut out = TensorElement::zero();
        for (parts, c) in &self.alg.iterated_comult(u, n).terms {
            let mut e = 0;
            for i in 0..n {
                for j in 0..i {
                    e += self.pairing(j, &x[j], &parts[i]);
                }
            }
            let w: Vec<Word> = parts.iter().zip(x).map(|(a, b)| [a.as_slice(), b.as_slice()].concat()).collect();
            out.add_term(w, &f.mul(c, &self.alg.zeta(-e)));
        }
        out
    }

    pub fn tensor_action_elem(&self, u: &FreeElement, x: &TensorElement) -> TensorElement {
        let f = self.alg.field();
        let mut out = TensorElement::zero();
        for (w, c) in &u.terms {
            for (y, d) in &x.terms {
                for (z, e) in &self.tensor_action(w, y).terms {
                    out.add_term(z.clone(), &f.mul(&f.mul(c, d), e));
                }
            }
        }
        out
    }

    fn comult_cached<'a>(&self, cache: &'a mut Cache, w: &[usize]) -> &'a TensorElement {
        if !cache.comult.contains_key(w) {
            cache.comult.insert(w.to_vec(), self.alg.comult(w));
        }
        &cache.comult[w]
    }

    fn coact_cached<'a>(&self, cache: &'a mut Cache, j: usize, w: &[usize]) -> &'a TensorElement {
        let key = (j, w.to_vec());
        if !cache.coact.contains_key(&key) {
            let v = self.mods[j].coaction(w);
            cache.coact.insert(key.clone(), v);
        }
        &cache.coact[&key]
    }

    /// `a* b*` in `'f*`, in the dual word basis.
    fn dual_mul(&self, cache: &mut Cache, a: &[usize], b: &[usize]) -> FreeElement {
        let r = self.alg.rank();
        let nu = RootVec::of_word(a, r).plus(&RootVec::of_word(b, r));
        let key = vec![a.to_vec(), b.to_vec()];
        let mut out = FreeElement::zero();
        for w in words_of_weight(&nu) {
            let c = self.comult_cached(cache, &w).coeff(&key);
            out.add_term(w, &c);
        }
        out
    }

    /// `a* y*` in `V(Lambda_j)*`.
    fn dual_act_one(&self, cache: &mut Cache, j: usize, a: &[usize], y: &[usize]) -> FreeElement {
        let r = self.alg.rank();
        let nu = RootVec::of_word(a, r).plus(&RootVec::of_word(y, r));
        let key = vec![a.to_vec(), y.to_vec()];
        let mut out = FreeElement::zero();
        for z in words_of_weight(&nu) {
            let c = self.coact_cached(cache, j, &z).coeff(&key);
            out.add_term(z, &c);
        }
        out
    }

    fn dual_action_cached(&self, cache: &mut Cache, a: &[usize], y: &[Word]) -> TensorElement {
        let f = self.alg.field().clone();
        let n = self.n();
        let mut out = TensorElement::zero();
        // the coproduct of 'f* is dual to concatenation
        let mut cuts = vec![0usize; n + 1];
        cuts[n] = a.len();
        loop {
            let parts: Vec<&[usize]> = (0..n).map(|i| &a[cuts[i]..cuts[i + 1]]).collect();
            let mut e = 0;
            for i in 0..n {
                for j in 0..i {
                    e += self.pairing(j, &y[j], parts[i]);
                }
            }
            let mut acc = TensorElement::zero();
            acc.add_term(Vec::new(), &self.alg.zeta(-e));
            for i in 0..n {
                let fac = self.dual_act_one(cache, i, parts[i], &y[i]);
                let mut next = TensorElement::zero();
                for (t, c) in &acc.terms {
                    for (z, d) in &fac.terms {
                        let mut t2 = t.clone();
                        t2.push(z.clone());
                        next.add_term(t2, &f.mul(c, d));
                    }
                }
                acc = next;
            }
            for (t, c) in &acc.terms {
                out.add_term(t.clone(), c);
            }
            // next cut vector 0 = c_0 <= c_1 <= ... <= c_{n-1} <= c_n = |a|
            let mut k = n - 1;
            loop {
                if k == 0 {
                    return out;
                }
                if cuts[k] < a.len() {
                    cuts[k] += 1;
                    for m in k + 1..n {
                        cuts[m] = cuts[k];
                    }
                    break;
                }
                k -= 1;
            }
        }
    }

    /// `a* . (y_0* (x) ... )` for the dual module structure.
    pub fn dual_action(&self, a: &[usize], y: &[Word]) -> TensorElement {
        self.dual_action_cached(&mut Cache::default(), a, y)
    }

    /// Image of one basis element of degree `-r` under `d`.
    fn differential_of(&self, cache: &mut Cache, side: Side, r: usize, l: &[Word]) -> TensorElement {
        let f = self.alg.field().clone();
        let mut out = TensorElement::zero();
        // a_p sits at index r - p
        for p in 1..r {
            let (hi, lo) = (r - p - 1, r - p);
            let sign = CycNum::from_int(if p % 2 == 0 { 1 } else { -1 });
            let prod = match side {
                Side::Free => FreeElement::monomial([l[hi].as_slice(), l[lo].as_slice()].concat()),
                Side::Dual => self.dual_mul(cache, &l[hi], &l[lo]),
            };
            for (w, c) in &prod.terms {
                let mut t: Vec<Word> = l[..hi].to_vec();
                t.push(w.clone());
                t.extend_from_slice(&l[lo + 1..]);
                out.add_term(t, &f.mul(c, &sign));
            }
        }
        if r >= 1 {
            let act = match side {
                Side::Free => self.tensor_action(&l[r - 1], &l[r..]),
                Side::Dual => self.dual_action_cached(cache, &l[r - 1], &l[r..]),
            };
            for (m, c) in &act.terms {
                let mut t: Vec<Word> = l[..r - 1].to_vec();
                t.extend(m.iter().cloned());
                out.add_term(t, c);
            }
        }
        out
    }

    /// The weight-`nu` complex in degrees `-|nu|..=0`.
    pub fn build_complex(&self, nu: &RootVec, side: Side) -> ChainComplex {
        let top = nu.depth();
        let bases: Vec<Vec<Vec<Word>>> = (0..=top).rev().map(|r| self.basis(nu, r)).collect();
        let mut cache = Cache::default();
        let mut diffs = Vec::with_capacity(top);
        for p in 0..top {
            let r = top - p;
            let index: HashMap<&Vec<Word>, usize> = bases[p + 1].iter().enumerate().map(|(i, l)| (l, i)).collect();
            let mut m = CycMatrix::zeros(bases[p + 1].len(), bases[p].len());
            for (col, l) in bases[p].iter().enumerate() {
                for (t, c) in &self.differential_of(&mut cache, side, r, l).terms {
                    let row = index[t];
                    m.add_at(row, col, c);
                }
            }
            diffs.push(m);
        }
        let labels = bases
            .iter()
            .enumerate()
            .map(|(p, b)| b.iter().map(|l| fmt_label(l, top - p)).collect())
            .collect();
        ChainComplex::with_labels(-(top as i64), labels, diffs)
    }

    /// The degreewise form `S = prod S(a_p, a'_p) prod S_Lambda_j(x_j, x'_j)`
    /// from the free complex to the dual one.
    pub fn s_map(&self, nu: &RootVec) -> ChainMap {
        let top = nu.depth();
        let rk = self.alg.rank();
        let mut maps = Vec::new();
        for r in (0..=top).rev() {
            let b = self.basis(nu, r);
            let mut m = CycMatrix::zeros(b.len(), b.len());
            // key: None for an 'f factor, Some(j) for the module V(Lambda_j)
            let mut memo: HashMap<(Option<usize>, Word, Word), CycNum> = HashMap::new();
            for (i, x) in b.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if (0..x.len()).any(|s| RootVec::of_word(&x[s], rk) != RootVec::of_word(&y[s], rk)) {
                        continue;
                    }
                    let mut v = CycNum::one();
                    for s in 0..x.len() {
                        let slot = if s < r { None } else { Some(s - r) };
                        let e = memo
                            .entry((slot, x[s].clone(), y[s].clone()))
                            .or_insert_with(|| match slot {
                                None => self.alg.form_s(&x[s], &y[s]),
                                Some(t) => self.mods[t].form(&x[s], &y[s]),
                            })
                            .clone();
                        if e.is_zero() {
                            v = e;
                            break;
                        }
                        v = self.alg.field().mul(&v, &e);
                    }
                    m.set(j, i, v);
                }
            }
            maps.push(m);
        }
        ChainMap { maps }
    }

    /// Image of `S`: the complex of `f` over `L(Lambda_0) (x) ... (x) L(Lambda_{n-1})`.
    pub fn build_complex_f(&self, nu: &RootVec) -> Result<ChainComplex> {
        let free = self.build_complex(nu, Side::Free);
        let dual = self.build_complex(nu, Side::Dual);
        let s = self.s_map(nu);
        image_complex(self.alg.field(), &free, &dual, &s)
    }

    /// `dim H^{-r}` listed from `r = |nu|` down to `r = 0`.
    pub fn tor_dims(&self, nu: &RootVec, side: Side) -> Result<Vec<usize>> {
        cohomology_dims(self.alg.field(), &self.build_complex(nu, side))
    }

    pub fn tor_dims_f(&self, nu: &RootVec) -> Result<Vec<usize>> {
        cohomology_dims(self.alg.field(), &self.build_complex_f(nu)?)
    }
}

fn check_unfolding(folded_rank: usize, pi: &[usize]) -> Result<()> {
    if pi.iter().any(|&c| c >= folded_rank) {
        return Err(Error::Param("unfolding takes values outside the colors".into()));
    }
    Ok(())
}

/// `^pi a(theta_{i_1} ... theta_{i_N}) = sum theta_{j_1} ... theta_{j_N}` over
/// sequences of distinct `j_p` with `pi(j_p) = i_p`.
pub fn symmetrize_average(x: &FreeElement, pi: &[usize], folded_rank: usize) -> Result<FreeElement> {
    check_unfolding(folded_rank, pi)?;
    let nu_pi = RootVec::of_word(pi, folded_rank);
    let mut out = FreeElement::zero();
    for (w, c) in &x.terms {
        if RootVec::of_word(w, folded_rank) != nu_pi {
            return Err(Error::Param("pi is not an unfolding of the weight".into()));
        }
        let mut used = vec![false; pi.len()];
        let mut cur = Vec::with_capacity(w.len());
        lifts(w, pi, &mut used, &mut cur, &mut |lift| out.add_term(lift.to_vec(), c));
    }
    Ok(out)
}

fn lifts(w: &[usize], pi: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if cur.len() == w.len() {
        emit(cur);
        return;
    }
    let want = w[cur.len()];
    for j in 0..pi.len() {
        if !used[j] && pi[j] == want {
            used[j] = true;
            cur.push(j);
            lifts(w, pi, used, cur, emit);
            cur.pop();
            used[j] = false;
        }
    }
}

/// `theta_j -> theta_{pi(j)}`.
pub fn fold(x: &FreeElement, pi: &[usize]) -> FreeElement {
    let mut out = FreeElement::zero();
    for (w, c) in &x.terms {
        out.add_term(w.iter().map(|&j| pi[j]).collect(), c);
    }
    out
}

/// The permutations of `J` preserving the fibers of `pi`.
pub fn sigma_pi(pi: &[usize]) -> Vec<Vec<usize>> {
    crate::freealg::permutations(pi.len())
        .into_iter()
        .filter(|s| (0..pi.len()).all(|j| pi[s[j]] == pi[j]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycField;
    use crate::rootdata::CartanDatum;
    use crate::linalg::cohomology_dims;

    fn sl2(l: u64) -> FreeAlg {
        let c = CartanDatum::preset("A1").unwrap();
        FreeAlg::from_cartan(CycField::new(l, 1, c.varpi()).unwrap(), &c)
    }

    #[test]
    fn zero_weight_is_a_point() {
        let h = Hochschild::new(sl2(5), vec![vec![3]]);
        let c = h.build_complex(&RootVec(vec![0]), Side::Free);
        assert_eq!(c.dims, vec![1]);
        assert_eq!(h.tor_dims(&RootVec(vec![0]), Side::Dual).unwrap(), vec![1]);
    }

    #[test]
    fn single_letter() {
        let alg = sl2(5);
        let f = alg.field().clone();
        let h = Hochschild::new(alg, vec![vec![3]]);
        let nu = RootVec(vec![1]);
        let free = h.build_complex(&nu, Side::Free);
        assert_eq!(free.dims, vec![1, 1]);
        assert!(free.diffs[0].get(0, 0).is_one());
        let dual = h.build_complex(&nu, Side::Dual);
        assert_eq!(*dual.diffs[0].get(0, 0), f.q_bracket(3));
        assert_eq!(h.tor_dims(&nu, Side::Dual).unwrap(), vec![0, 0]);
        let h0 = Hochschild::new(sl2(5), vec![vec![5]]);
        assert_eq!(h0.tor_dims(&nu, Side::Dual).unwrap(), vec![1, 1]);
    }

    #[test]
    fn depth_two_dims() {
        let h = Hochschild::new(sl2(5), vec![vec![2]]);
        let c = h.build_complex(&RootVec(vec![2]), Side::Free);
        assert_eq!(c.dims, vec![1, 2, 1]);
        c.check_d2(h.alg().field()).unwrap();
        let d = h.build_complex(&RootVec(vec![2]), Side::Dual);
        d.check_d2(h.alg().field()).unwrap();
        assert_eq!(cohomology_dims(h.alg().field(), &c).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn two_modules_action() {
        let alg = sl2(7);
        let f = alg.field().clone();
        let h = Hochschild::new(alg, vec![vec![2], vec![3]]);
        let x = vec![Vec::new(), Vec::new()];
        let t = h.tensor_action(&[0], &x);
        assert!(t.coeff(&[vec![0], vec![]]).is_one());
        assert_eq!(t.coeff(&[vec![], vec![0]]), f.zeta_pow_int(-2));
    }

    #[test]
    fn symmetrize_sl2() {
        let x = FreeElement::monomial(vec![0, 0]);
        let y = symmetrize_average(&x, &[0, 0], 1).unwrap();
        assert_eq!(y.terms.len(), 2);
        assert!(y.coeff(&[0, 1]).is_one() && y.coeff(&[1, 0]).is_one());
        assert!(symmetrize_average(&x, &[0], 1).is_err());
    }
}
