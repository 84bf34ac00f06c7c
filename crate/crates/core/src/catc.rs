//! Finite dimensional X-graded modules with operators `theta_i` (lowering by
//! `i'`) and `eps_i` (raising by `i'`), subject to
//! `eps_i theta_j - zeta^{i.j} theta_j eps_i = delta_ij [lambda.i']` on `M_lambda`
//! and the quantum Serre relations.
//!
//! A weight is stored as the integer vector `(lambda . i')_i`. `K~_i` acts on
//! `M_lambda` by `zeta^{lambda.i'}` and is never stored.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::freealg::{FreeAlg, FreeElement, Word};
use crate::linalg::{inverse, kernel_basis, rank, CycMatrix};
use crate::rootdata::{CartanDatum, EllData, RootVec, Weight};
use crate::verma::Verma;
use crate::{Error, Result};

pub type Lam = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Theta,
    Eps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualFlavor {
    /// Plain transposes: a module for the algebra with the opposite relations.
    Vee,
    /// Through the antipode `s(theta_i) = -K~_i theta_i`, `s(eps_i) = -K~_i eps_i`.
    Star,
}

#[derive(Clone, Debug)]
pub struct CModule {
    field: Arc<CycField>,
    dot: Vec<Vec<i64>>,
    spaces: BTreeMap<Lam, Vec<String>>,
    ops: HashMap<(Op, usize, Lam), CycMatrix>,
}

impl CModule {
    pub fn new(field: Arc<CycField>, dot: Vec<Vec<i64>>) -> Self {
        CModule { field, dot, spaces: BTreeMap::new(), ops: HashMap::new() }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.dot.len()
    }

    /// Adds a weight space with the given basis labels.
    pub fn add_space(&mut self, lam: Lam, labels: Vec<String>) {
        if !labels.is_empty() {
            self.spaces.insert(lam, labels);
        }
    }

    /// Sets the matrix of `op_i` on `M_lam` (shape `dim target x dim M_lam`).
    pub fn set_op(&mut self, op: Op, i: usize, lam: Lam, m: CycMatrix) -> Result<()> {
        let tgt = self.shift(&lam, op, i);
        if (m.rows(), m.cols()) != (self.dim(&tgt), self.dim(&lam)) {
            return Err(Error::Param("operator shape does not match the weight spaces".into()));
        }
        if !m.is_zero() {
            self.ops.insert((op, i, lam), m);
        }
        Ok(())
    }

    pub fn weights(&self) -> impl Iterator<Item = &Lam> {
        self.spaces.keys()
    }

    pub fn dim(&self, lam: &[i64]) -> usize {
        self.spaces.get(lam).map_or(0, |l| l.len())
    }

    pub fn labels(&self, lam: &[i64]) -> &[String] {
        self.spaces.get(lam).map_or(&[], |l| l.as_slice())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|l| l.len()).sum()
    }

    pub fn graded_dims(&self) -> Vec<(Lam, usize)> {
        self.spaces.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }

    /// Target weight of `op_i` on `M_lam`.
    pub fn shift(&self, lam: &[i64], op: Op, i: usize) -> Lam {
        let s = if op == Op::Theta { -1 } else { 1 };
        lam.iter().zip(&self.dot[i]).map(|(a, d)| a + s * d).collect()
    }

    /// Matrix of `op_i` on `M_lam`, zero if not stored.
    pub fn op(&self, op: Op, i: usize, lam: &[i64]) -> CycMatrix {
        match self.ops.get(&(op, i, lam.to_vec())) {
            Some(m) => m.clone(),
            None => CycMatrix::zeros(self.dim(&self.shift(lam, op, i)), self.dim(lam)),
        }
    }

    /// `op_{w_0} ... op_{w_{k-1}}` on `M_lam` (the last letter acts first).
    pub fn word_op(&self, op: Op, w: &[usize], lam: &[i64]) -> CycMatrix {
        let mut cur = lam.to_vec();
        let mut m = CycMatrix::identity(self.dim(lam));
        for &i in w.iter().rev() {
            m = self.op(op, i, &cur).mul(&self.field, &m);
            cur = self.shift(&cur, op, i);
        }
        m
    }

    fn element_op(&self, op: Op, x: &FreeElement, lam: &[i64]) -> CycMatrix {
        let mut acc: Option<CycMatrix> = None;
        for (w, c) in &x.terms {
            let m = self.word_op(op, w, lam).scale(&self.field, c);
            acc = Some(match acc {
                None => m,
                Some(a) => a.add(&m),
            });
        }
        acc.unwrap_or_else(|| CycMatrix::zeros(0, self.dim(lam)))
    }

    /// The commutation relation on every weight space and the Serre relations
    /// for both `theta` and `eps`.
    pub fn check_relations(&self) -> Result<()> {
        let f = &self.field;
        let n = self.rank();
        for lam in self.spaces.keys() {
            let d = self.dim(lam);
            for i in 0..n {
                for j in 0..n {
                    let et = self.op(Op::Eps, i, &self.shift(lam, Op::Theta, j)).mul(f, &self.op(Op::Theta, j, lam));
                    let te = self.op(Op::Theta, j, &self.shift(lam, Op::Eps, i)).mul(f, &self.op(Op::Eps, i, lam));
                    let mut lhs = et.sub(&te.scale(f, &f.zeta_pow_int(self.dot[i][j])));
                    if i == j {
                        lhs = lhs.sub(&CycMatrix::identity(d).scale(f, &f.q_bracket(lam[i])));
                    }
                    if !lhs.is_zero() {
                        return Err(Error::Contract(format!("eps_{} theta_{} relation fails at weight {:?}", i, j, lam)));
                    }
                }
            }
        }
        let alg = FreeAlg::new(f.clone(), self.dot.clone());
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let s = alg.serre_element(i, j)?;
                for lam in self.spaces.keys() {
                    for op in [Op::Theta, Op::Eps] {
                        if !self.element_op(op, &s, lam).is_zero() {
                            return Err(Error::Contract(format!("Serre element ({}, {}) acts nontrivially through {:?} at {:?}", i, j, op, lam)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `theta_i(x (x) y) = theta_i x (x) y + zeta^{-lambda_x.i'} x (x) theta_i y`, same rule for `eps_i`.
    pub fn tensor(&self, o: &CModule) -> Result<CModule> {
        if self.dot != o.dot || !Arc::ptr_eq(&self.field, &o.field) && self.field.order() != o.field.order() {
            return Err(Error::Param("tensor factors over different data".into()));
        }
        let f = &self.field;
        // weight -> ordered blocks (lam_a, lam_b, offset)
        let mut layout: BTreeMap<Lam, Vec<(Lam, Lam, usize)>> = BTreeMap::new();
        let mut out = CModule::new(f.clone(), self.dot.clone());
        let mut labels: BTreeMap<Lam, Vec<String>> = BTreeMap::new();
        for (la, xa) in &self.spaces {
            for (lb, xb) in &o.spaces {
                let w: Lam = la.iter().zip(lb).map(|(a, b)| a + b).collect();
                let lab = labels.entry(w.clone()).or_default();
                layout.entry(w).or_default().push((la.clone(), lb.clone(), lab.len()));
                for a in xa {
                    for b in xb {
                        lab.push(format!("{}(x){}", a, b));
                    }
                }
            }
        }
        for (w, l) in labels {
            out.add_space(w, l);
        }
        let offset = |w: &Lam, la: &Lam, lb: &Lam| -> usize {
            layout[w].iter().find(|(a, b, _)| a == la && b == lb).map(|t| t.2).expect("block")
        };
        for (w, blocks) in &layout {
            for op in [Op::Theta, Op::Eps] {
                for i in 0..self.rank() {
                    let tw = out.shift(w, op, i);
                    let mut m = CycMatrix::zeros(out.dim(&tw), out.dim(w));
                    for (la, lb, off) in blocks {
                        let (da, db) = (self.dim(la), o.dim(lb));
                        let ta = self.shift(la, op, i);
                        if self.dim(&ta) > 0 {
                            let ma = self.op(op, i, la);
                            let toff = offset(&tw, &ta, lb);
                            for r in 0..ma.rows() {
                                for c in 0..da {
                                    let v = ma.get(r, c);
                                    if v.is_zero() {
                                        continue;
                                    }
                                    for b in 0..db {
                                        m.add_at(toff + r * db + b, off + c * db + b, v);
                                    }
                                }
                            }
                        }
                        let tb = o.shift(lb, op, i);
                        if o.dim(&tb) > 0 {
                            let mb = o.op(op, i, lb);
                            let k = f.zeta_pow_int(-la[i]);
                            let toff = offset(&tw, la, &tb);
                            let dtb = o.dim(&tb);
                            for a in 0..da {
                                for r in 0..mb.rows() {
                                    for c in 0..db {
                                        let v = mb.get(r, c);
                                        if !v.is_zero() {
                                            m.add_at(toff + a * dtb + r, off + a * db + c, &f.mul(&k, v));
                                        }
                                    }
                                }
                            }
                        }
                    }
                    out.set_op(op, i, w.clone(), m)?;
                }
            }
        }
        Ok(out)
    }

    /// `(M^dual)_lambda = (M_{-lambda})*`.
    pub fn dual(&self, flavor: DualFlavor) -> CModule {
        let f = &self.field;
        let mut out = CModule::new(f.clone(), self.dot.clone());
        for (lam, l) in &self.spaces {
            out.add_space(lam.iter().map(|x| -x).collect(), l.iter().map(|s| format!("{}*", s)).collect());
        }
        let src: Vec<Lam> = out.spaces.keys().cloned().collect();
        for lam in src {
            let neg: Lam = lam.iter().map(|x| -x).collect();
            for i in 0..self.rank() {
                for op in [Op::Theta, Op::Eps] {
                    // the dual of op_i on M^dual_lam is the transpose of op_i into M_{-lam}
                    let pre = self.shift(&neg, if op == Op::Theta { Op::Eps } else { Op::Theta }, i);
                    let mut m = self.op(op, i, &pre).transpose();
                    if flavor == DualFlavor::Star {
                        m = m.scale(f, &-f.zeta_pow_int(-lam[i]));
                    }
                    out.set_op(op, i, lam.clone(), m).expect("dual shapes");
                }
            }
        }
        out
    }

    fn zero_weight(&self) -> Lam {
        vec![0; self.rank()]
    }

    /// Basis of the joint kernel of all `theta_i`, `eps_i` on `M_0`.
    pub fn invariants(&self) -> Vec<Vec<CycNum>> {
        let z = self.zero_weight();
        let d = self.dim(&z);
        if d == 0 {
            return vec![];
        }
        let mut rows = Vec::new();
        for op in [Op::Theta, Op::Eps] {
            for i in 0..self.rank() {
                let m = self.op(op, i, &z);
                for r in 0..m.rows() {
                    rows.push(m.row(r).to_vec());
                }
            }
        }
        if rows.is_empty() {
            return (0..d).map(|k| (0..d).map(|j| if j == k { CycNum::one() } else { CycNum::zero() }).collect()).collect();
        }
        kernel_basis(&self.field, &CycMatrix::from_rows(rows))
    }

    /// Columns spanning `sum_i theta_i M_{i'} + sum_i eps_i M_{-i'}` inside `M_0`.
    fn coinvariant_relations(&self) -> Vec<Vec<CycNum>> {
        let z = self.zero_weight();
        let mut cols = Vec::new();
        for i in 0..self.rank() {
            for op in [Op::Theta, Op::Eps] {
                let back = if op == Op::Theta { Op::Eps } else { Op::Theta };
                let src = self.shift(&z, back, i);
                let m = self.op(op, i, &src);
                for c in 0..m.cols() {
                    cols.push(m.col(c));
                }
            }
        }
        cols
    }

    pub fn coinvariants_dim(&self) -> usize {
        let d = self.dim(&self.zero_weight());
        let cols = self.coinvariant_relations();
        if cols.is_empty() {
            return d;
        }
        d - rank(&self.field, &CycMatrix::from_cols(d, &cols))
    }

    /// `<M>`: rank of invariants -> M_0 -> coinvariants.
    pub fn bracket_dim(&self) -> usize {
        let d = self.dim(&self.zero_weight());
        let inv = self.invariants();
        if inv.is_empty() {
            return 0;
        }
        let rel = self.coinvariant_relations();
        let r0 = if rel.is_empty() { 0 } else { rank(&self.field, &CycMatrix::from_cols(d, &rel)) };
        let mut all = rel;
        all.extend(inv);
        rank(&self.field, &CycMatrix::from_cols(d, &all)) - r0
    }
}

/// Number of positive roots for the known rank-two and rank-one types.
fn positive_roots(c: &CartanDatum) -> usize {
    match c.gamma0() {
        Some(g) if c.rank() == 1 => g.len(),
        Some(_) => match c.dot(0, 0).max(c.dot(1, 1)) / c.dot(0, 0).min(c.dot(1, 1)) {
            1 => 3,
            2 => 4,
            _ => 6,
        },
        None => c.rank() * c.rank(),
    }
}

/// `L(lambda) = V(lambda) / Ker S_lambda`, weight space by weight space. Each
/// `L_nu` is spanned by `theta_i` applied to the representatives of `L_{nu-i}`.
pub fn irreducible_module(field: Arc<CycField>, c: &CartanDatum, lambda: &Weight, e: &EllData) -> Result<CModule> {
    if !e.in_x_ell(lambda) {
        return Err(Error::Domain(format!("{} is not in X_l", lambda)));
    }
    let lam = c.lambda_dots(lambda)?;
    let alg = FreeAlg::from_cartan(field.clone(), c);
    let v = Verma::new(alg.clone(), lam.clone());
    let rk = c.rank();
    let bound = rk * (e.l as usize - 1) * positive_roots(c);
    let weight_of = |nu: &RootVec| -> Lam { (0..rk).map(|i| v.weight_dot(&nu.unfolding(), i)).collect() };
    let label = |w: &Word| if w.is_empty() { "v".to_string() } else { w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".") };

    // representatives and inverse Gram matrices per nu
    let mut reps: HashMap<RootVec, (Vec<Word>, CycMatrix)> = HashMap::new();
    reps.insert(RootVec::zero(rk), (vec![vec![]], CycMatrix::identity(1)));
    let mut layer = vec![RootVec::zero(rk)];
    let mut depth = 0;
    loop {
        depth += 1;
        let mut next = Vec::new();
        for nu in RootVec::of_depth(rk, depth) {
            let mut cand: Vec<Word> = Vec::new();
            for i in 0..rk {
                if nu.0[i] == 0 {
                    continue;
                }
                let mut prev = nu.clone();
                prev.0[i] -= 1;
                if let Some((r, _)) = reps.get(&prev) {
                    for w in r {
                        let mut x = vec![i];
                        x.extend_from_slice(w);
                        cand.push(x);
                    }
                }
            }
            if cand.is_empty() {
                continue;
            }
            let mut g = CycMatrix::zeros(cand.len(), cand.len());
            for a in 0..cand.len() {
                for b in a..cand.len() {
                    let s = v.form(&cand[a], &cand[b]);
                    g.set(b, a, s.clone());
                    g.set(a, b, s);
                }
            }
            let cols = crate::linalg::column_basis(&field, &g);
            if cols.is_empty() {
                continue;
            }
            let r: Vec<Word> = cols.iter().map(|&k| cand[k].clone()).collect();
            let inv = inverse(&field, &g.select(&cols, &cols)).ok_or_else(|| Error::Contract("Gram block is singular".into()))?;
            reps.insert(nu.clone(), (r, inv));
            next.push(nu);
        }
        if next.is_empty() {
            break;
        }
        if depth > bound {
            return Err(Error::Cutoff(format!("L({}) still nonzero at depth {}", lambda, depth)));
        }
        layer = next;
    }
    let _ = layer;

    let mut m = CModule::new(field.clone(), alg.dot_matrix().to_vec());
    for (nu, (r, _)) in &reps {
        m.add_space(weight_of(nu), r.iter().map(label).collect());
    }
    // coordinates of an element of V_nu in the basis of L_nu
    let coords = |nu: &RootVec, x: &FreeElement| -> Option<Vec<CycNum>> {
        let (r, inv) = reps.get(nu)?;
        let p: Vec<CycNum> = r.iter().map(|w| v.form_elem(&FreeElement::monomial(w.clone()), x)).collect();
        Some(inv.apply(&field, &p))
    };
    for (nu, (r, _)) in &reps {
        let w = weight_of(nu);
        for i in 0..rk {
            let mut up = nu.clone();
            up.0[i] += 1;
            if let Some((rt, _)) = reps.get(&up) {
                let mut mat = CycMatrix::zeros(rt.len(), r.len());
                for (col, x) in r.iter().enumerate() {
                    let mut y = vec![i];
                    y.extend_from_slice(x);
                    for (row, c) in coords(&up, &FreeElement::monomial(y)).unwrap().into_iter().enumerate() {
                        mat.set(row, col, c);
                    }
                }
                m.set_op(Op::Theta, i, w.clone(), mat)?;
            }
            if let Some(down) = nu.minus(&RootVec::simple(rk, i)) {
                if let Some((rt, _)) = reps.get(&down) {
                    let mut mat = CycMatrix::zeros(rt.len(), r.len());
                    for (col, x) in r.iter().enumerate() {
                        let y = v.epsilon_i(i, &FreeElement::monomial(x.clone()));
                        for (row, c) in coords(&down, &y).unwrap().into_iter().enumerate() {
                            mat.set(row, col, c);
                        }
                    }
                    m.set_op(Op::Eps, i, w.clone(), mat)?;
                }
            }
        }
    }
    Ok(m)
}

/// `<L(lambda_1) (x) ... (x) L(lambda_n)>` for weights in the first alcove.
pub fn conformal_blocks(field: Arc<CycField>, c: &CartanDatum, weights: &[Weight], e: &EllData) -> Result<usize> {
    for w in weights {
        if !e.in_first_alcove(w)? {
            return Err(Error::Domain(format!("{} is outside the first alcove", w)));
        }
    }
    let mut acc = CModule::new(field.clone(), c.dot_matrix().to_vec());
    acc.add_space(vec![0; c.rank()], vec!["1".into()]);
    for w in weights {
        acc = acc.tensor(&irreducible_module(field.clone(), c, w, e)?)?;
    }
    Ok(acc.bracket_dim())
}
