//! Configuration arrangements in `R^J`: the principal one
//! (`t_j = 0` and `t_a = t_b`) and the diagonal one (`t_a = t_b` only).
//!
//! Positive facets are maps `rho: J -> [0, r]` onto `[1, r]`, chambers over
//! `rho` are total orders `tau` refining it (`tau[j]` is the rank of `j`).
//! A positive cell `(rho, tau)` sits in degree `-r`.
//!
//! Half-monodromies: `q(t_a = t_b) = zeta^{pi(a).pi(b)}`, `q(t_j = 0) = zeta^{-Lambda.pi(j)'}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::freealg::{permutations, FreeAlg, FreeElement, TensorElement, Word};
use crate::hochschild::{sigma_pi, symmetrize_average, Hochschild, Side};
use crate::linalg::{cohomology_dims, column_basis, image_complex, solve, ChainComplex, ChainMap, CycMatrix};
use crate::rootdata::{CartanDatum, RootVec};
use crate::verma::Verma;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Diagonal,
    Principal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    Shriek,
    Star,
}

/// Which `rho`-sign to use in the comparison maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoSign {
    /// `(-1)^{sum_i (r-i+1)(|rho^-1(i)|-1)}`
    Printed,
    /// `(-1)^{sum_i i (|rho^-1(i)|-1)}`
    Corrected,
}

/// A positive facet: `rho[j]` in `0..=r`, every value in `1..=r` taken.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosFacet {
    pub rho: Vec<usize>,
}

impl PosFacet {
    pub fn r(&self) -> usize {
        self.rho.iter().copied().max().unwrap_or(0)
    }

    pub fn card(&self, a: usize) -> usize {
        self.rho.iter().filter(|&&x| x == a).count()
    }

    pub fn block(&self, a: usize) -> Vec<usize> {
        (0..self.rho.len()).filter(|&j| self.rho[j] == a).collect()
    }

    /// Merges blocks `i` and `i+1`.
    pub fn delta(&self, i: usize) -> PosFacet {
        PosFacet { rho: self.rho.iter().map(|&a| if a > i { a - 1 } else { a }).collect() }
    }

    /// All `tau` refining `rho`.
    pub fn refinements(&self) -> Vec<Vec<usize>> {
        let n = self.rho.len();
        let mut out = Vec::new();
        let mut blocks: Vec<Vec<usize>> = (0..=self.r()).map(|a| self.block(a)).collect();
        let mut tau = vec![0; n];
        fill_blocks(&mut blocks, 0, 0, &mut tau, &mut out);
        out.sort();
        out
    }

    pub fn is_refined_by(&self, tau: &[usize]) -> bool {
        let n = self.rho.len();
        tau.len() == n && (0..n).all(|i| (0..n).all(|j| self.rho[i] >= self.rho[j] || tau[i] < tau[j]))
    }
}

fn fill_blocks(blocks: &mut [Vec<usize>], a: usize, start: usize, tau: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if a == blocks.len() {
        out.push(tau.clone());
        return;
    }
    let members = blocks[a].clone();
    for p in permutations(members.len()) {
        for (k, &j) in members.iter().enumerate() {
            tau[j] = start + p[k];
        }
        fill_blocks(blocks, a + 1, start + members.len(), tau, out);
    }
}

/// All positive facets of dimension `r` on `n` points.
pub fn facets(n: usize, r: usize) -> Vec<PosFacet> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut rho = vec![0usize; n];
    loop {
        if (1..=r).all(|a| rho.contains(&a)) {
            out.push(PosFacet { rho: rho.clone() });
        }
        let mut t = 0;
        loop {
            if t == n {
                return out;
            }
            rho[t] += 1;
            if rho[t] <= r {
                break;
            }
            rho[t] = 0;
            t += 1;
        }
    }
}

/// Sign of a permutation of `0..n`.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// `sgn(tau_1, tau_2)`: the sign of `tau_1 tau_2^{-1}`.
pub fn sgn_pair(t1: &[usize], t2: &[usize]) -> i64 {
    let mut inv = vec![0; t2.len()];
    for (j, &k) in t2.iter().enumerate() {
        inv[k] = j;
    }
    perm_sign(&(0..t1.len()).map(|k| t1[inv[k]]).collect::<Vec<_>>())
}

fn parity(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Incidence sign of the face `delta_i rho' < rho'`, `rho'` of dimension `r+1`:
/// `(-1)^{sum_{j=i+1}^{r+1} (|rho'^-1(j)| - 1)}`.
pub fn sign_face(rho_p: &PosFacet, i: usize) -> i64 {
    let r1 = rho_p.r();
    parity((i + 1..=r1).map(|j| rho_p.card(j) - 1).sum())
}

pub fn sign_rho(rho: &PosFacet, which: RhoSign) -> i64 {
    let r = rho.r();
    let e: usize = match which {
        RhoSign::Printed => (1..=r).map(|i| (r - i + 1) * (rho.card(i) - 1)).sum(),
        RhoSign::Corrected => (1..=r).map(|i| i * (rho.card(i) - 1)).sum(),
    };
    parity(e)
}

/// `theta_{rho<=tau}`: blocks `r, ..., 1, 0`, each read in decreasing `tau`.
pub fn cell_words(rho: &PosFacet, tau: &[usize]) -> Vec<Word> {
    (0..=rho.r()).rev().map(|a| block_word(rho, tau, a)).collect()
}

fn block_word(rho: &PosFacet, tau: &[usize], a: usize) -> Word {
    let mut b = rho.block(a);
    b.sort_by_key(|&j| std::cmp::Reverse(tau[j]));
    b
}

/// `tau'` in `Ord(delta_i rho')` keeping the order of `tau` inside every block of `rho'`.
pub fn merge_shuffles(rho_p: &PosFacet, tau: &[usize], i: usize) -> Vec<Vec<usize>> {
    let mut lo = rho_p.block(i);
    let mut hi = rho_p.block(i + 1);
    lo.sort_by_key(|&j| tau[j]);
    hi.sort_by_key(|&j| tau[j]);
    let mut slots: Vec<usize> = lo.iter().chain(&hi).map(|&j| tau[j]).collect();
    slots.sort();
    let n = lo.len() + hi.len();
    let mut out = Vec::new();
    // choose which slots take `lo`
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != lo.len() {
            continue;
        }
        let mut t = tau.to_vec();
        let (mut a, mut b) = (0, 0);
        for (k, &s) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                t[lo[a]] = s;
                a += 1;
            } else {
                t[hi[b]] = s;
                b += 1;
            }
        }
        out.push(t);
    }
    out.sort();
    out
}

/// `tau'` in `Ord(delta_0 rho')` equal to `tau` off blocks `0` and `1`.
pub fn merge_orders(rho_p: &PosFacet, tau: &[usize]) -> Vec<Vec<usize>> {
    let mut js = rho_p.block(0);
    js.extend(rho_p.block(1));
    let mut out = Vec::new();
    for p in permutations(js.len()) {
        let mut t = tau.to_vec();
        for (k, &j) in js.iter().enumerate() {
            t[j] = p[k];
        }
        out.push(t);
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct ConfigArrangement {
    field: Arc<CycField>,
    pi: Vec<usize>,
    lam: Vec<i64>,
    flavor: Flavor,
    unf: FreeAlg,
}

/// Basis of a positive complex: cells listed from `r = N` down to `r = 0`.
#[derive(Clone, Debug)]
pub struct PosCells {
    pub cells: Vec<Vec<(PosFacet, Vec<usize>)>>,
}

impl PosCells {
    pub fn new(n: usize) -> Self {
        let cells = (0..=n)
            .rev()
            .map(|r| facets(n, r).into_iter().flat_map(|f| f.refinements().into_iter().map(move |t| (f.clone(), t))).collect())
            .collect();
        PosCells { cells }
    }

    fn index(&self, p: usize) -> HashMap<(&PosFacet, &Vec<usize>), usize> {
        self.cells[p].iter().enumerate().map(|(k, (f, t))| ((f, t), k)).collect()
    }

    fn labels(&self) -> Vec<Vec<String>> {
        let s = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
        self.cells.iter().map(|c| c.iter().map(|(f, t)| format!("{}/{}", s(&f.rho), s(t))).collect()).collect()
    }
}

/// Result of [`skew_symmetrize`]: the subcomplex and, per degree, the basis
/// of the sign-isotypic part as columns in the original basis.
#[derive(Clone, Debug)]
pub struct SkewPart {
    pub complex: ChainComplex,
    pub bases: Vec<CycMatrix>,
}

impl ConfigArrangement {
    /// `lam[i] = Lambda . i'` on the colors; `pi[j]` is the color of point `j`.
    pub fn new(field: Arc<CycField>, cartan: &CartanDatum, pi: Vec<usize>, lam: Vec<i64>, flavor: Flavor) -> Result<Self> {
        if pi.iter().any(|&c| c >= cartan.rank()) {
            return Err(Error::Param("unfolding takes values outside the colors".into()));
        }
        if lam.len() != cartan.rank() {
            return Err(Error::Param("Lambda needs one value per color".into()));
        }
        let unf = FreeAlg::unfolded(field.clone(), cartan, &pi);
        Ok(ConfigArrangement { field, pi, lam, flavor, unf })
    }

    /// Points carry their own colors: `dot[a][b]` and `lam[a]` are given per point.
    pub fn with_pairing(field: Arc<CycField>, dot: Vec<Vec<i64>>, lam: Vec<i64>, flavor: Flavor) -> Result<Self> {
        let n = lam.len();
        if dot.len() != n || dot.iter().any(|r| r.len() != n) || (0..n).any(|a| (0..n).any(|b| dot[a][b] != dot[b][a])) {
            return Err(Error::Param("pairing must be a symmetric square matrix".into()));
        }
        let unf = FreeAlg::new(field.clone(), dot);
        Ok(ConfigArrangement { field, pi: (0..n).collect(), lam, flavor, unf })
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n_points(&self) -> usize {
        self.pi.len()
    }

    /// The free algebra on `J` with `j.j' = pi(j).pi(j')`.
    pub fn unfolded(&self) -> &FreeAlg {
        &self.unf
    }

    pub fn lam_unfolded(&self) -> Vec<i64> {
        self.pi.iter().map(|&c| self.lam[c]).collect()
    }

    pub fn q_diag(&self, a: usize, b: usize) -> CycNum {
        self.field.zeta_pow_int(self.unf.dot(a, b))
    }

    pub fn q_zero(&self, a: usize) -> CycNum {
        self.field.zeta_pow_int(-self.lam[self.pi[a]])
    }

    /// Product of `q(H)` over hyperplanes separating two chambers given by
    /// coordinate vectors (any representatives of the chambers).
    pub fn q_separating(&self, c1: &[i64], c2: &[i64]) -> CycNum {
        let n = self.n_points();
        let mut e = 0;
        for a in 0..n {
            if self.flavor == Flavor::Principal && c1[a].signum() != c2[a].signum() {
                e -= self.lam[self.pi[a]];
            }
            for b in a + 1..n {
                if (c1[a] - c1[b]).signum() != (c2[a] - c2[b]).signum() {
                    e += self.unf.dot(a, b);
                }
            }
        }
        self.field.zeta_pow_int(e)
    }

    fn require(&self, flavor: Flavor) -> Result<()> {
        if self.flavor != flavor {
            return Err(Error::Param(format!("needs the {:?} flavor", flavor).to_lowercase()));
        }
        Ok(())
    }

    fn pos_chamber(tau: &[usize]) -> Vec<i64> {
        tau.iter().map(|&t| t as i64 + 1).collect()
    }

    /// `q` over the pairs of one block ordered differently by `tau` and `tau'`.
    fn q_block(&self, block: &[usize], tau: &[usize], taup: &[usize]) -> CycNum {
        let mut e = 0;
        for (x, &a) in block.iter().enumerate() {
            for &b in &block[x + 1..] {
                if (tau[a] < tau[b]) != (taup[a] < taup[b]) {
                    e += self.unf.dot(a, b);
                }
            }
        }
        self.field.zeta_pow_int(e)
    }

    /// The positive `!`-complex: `d b_{rho'<=tau} = sum_i sign_face(rho', i) b_{delta_i rho'<=tau}`.
    pub fn complex_shriek(&self) -> Result<ChainComplex> {
        self.require(Flavor::Principal)?;
        let n = self.n_points();
        let cells = PosCells::new(n);
        let mut diffs = Vec::with_capacity(n);
        for p in 0..n {
            let idx = cells.index(p + 1);
            let mut m = CycMatrix::zeros(cells.cells[p + 1].len(), cells.cells[p].len());
            for (col, (rp, tau)) in cells.cells[p].iter().enumerate() {
                for i in 0..rp.r() {
                    let row = idx[&(&rp.delta(i), tau)];
                    m.add_at(row, col, &CycNum::from_int(sign_face(rp, i)));
                }
            }
            diffs.push(m);
        }
        Ok(ChainComplex::with_labels(-(n as i64), cells.labels(), diffs))
    }

    /// The positive `*`-complex. A face `i >= 1` sends `b*_{rho'<=tau}` to the
    /// shuffles `tau'` of blocks `i`, `i+1` with weight `sgn(tau', tau) q(C_tau, C_tau')`.
    /// The face `i = 0` reaches every order of the merged block; its weight is the
    /// coefficient of `theta_{tau,1} (x) theta_{tau,0}` in the `t`-operator
    /// evaluation of `Delta_Lambda(theta_{tau',0})`.
    pub fn complex_star(&self) -> Result<ChainComplex> {
        self.require(Flavor::Principal)?;
        let f = &self.field;
        let n = self.n_points();
        let cells = PosCells::new(n);
        let lam = self.lam_unfolded();
        let mut loops: HashMap<Word, TensorElement> = HashMap::new();
        let mut diffs = Vec::with_capacity(n);
        for p in 0..n {
            let idx = cells.index(p + 1);
            let mut m = CycMatrix::zeros(cells.cells[p + 1].len(), cells.cells[p].len());
            for (col, (rp, tau)) in cells.cells[p].iter().enumerate() {
                for i in 0..rp.r() {
                    let rho = rp.delta(i);
                    let s = sign_face(rp, i);
                    let targets = if i == 0 { merge_orders(rp, tau) } else { merge_shuffles(rp, tau, i) };
                    for taup in targets {
                        let w = if i == 0 {
                            let z = block_word(&rho, &taup, 0);
                            let delta = loops.entry(z.clone()).or_insert_with(|| t_coaction(&self.unf, &lam, &z));
                            delta.coeff(&[block_word(rp, tau, 1), block_word(rp, tau, 0)])
                        } else {
                            let merged: Vec<usize> = rho.block(i);
                            self.q_block(&merged, tau, &taup)
                        };
                        if w.is_zero() {
                            continue;
                        }
                        let c = f.mul(&w, &CycNum::from_int(s * sgn_pair(&taup, tau)));
                        m.add_at(idx[&(&rho, &taup)], col, &c);
                    }
                }
            }
            diffs.push(m);
        }
        Ok(ChainComplex::with_labels(-(n as i64), cells.labels(), diffs))
    }

    /// The canonical map from the `!`- to the `*`-complex:
    /// `m(b_{rho<=tau}) = sum_{tau'} sgn(tau', tau) prod_{a>=1} q(tau|_a, tau'|_a) S_Lambda(w_0(tau), w_0(tau')) b*_{rho<=tau'}`,
    /// the block at `0` paired by the closed formula for `S_Lambda`.
    pub fn m_map(&self) -> Result<ChainMap> {
        self.require(Flavor::Principal)?;
        let f = &self.field;
        let n = self.n_points();
        let cells = PosCells::new(n);
        let v = Verma::new(self.unf.clone(), self.lam_unfolded());
        let simply_laced = (1..n).all(|j| self.unf.dot(j, j) == self.unf.dot(0, 0));
        let mut sl: HashMap<(Word, Word), CycNum> = HashMap::new();
        let mut maps = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let idx = cells.index(p);
            let mut m = CycMatrix::zeros(cells.cells[p].len(), cells.cells[p].len());
            for (col, (rho, tau)) in cells.cells[p].iter().enumerate() {
                let w0 = block_word(rho, tau, 0);
                for taup in rho.refinements() {
                    let mut c = CycNum::from_int(sgn_pair(&taup, tau));
                    for a in 1..=rho.r() {
                        c = f.mul(&c, &self.q_block(&rho.block(a), tau, &taup));
                    }
                    let w0p = block_word(rho, &taup, 0);
                    let s = match sl.get(&(w0.clone(), w0p.clone())) {
                        Some(s) => s.clone(),
                        None => {
                            let s = if simply_laced { v.form_oracle(&w0, &w0p)? } else { v.form(&w0, &w0p) };
                            sl.insert((w0.clone(), w0p.clone()), s.clone());
                            s
                        }
                    };
                    c = f.mul(&c, &s);
                    if !c.is_zero() {
                        m.set(idx[&(rho, &taup)], col, c);
                    }
                }
            }
            maps.push(m);
        }
        Ok(ChainMap { maps })
    }

    /// Cohomology of the image of `m`, listed from degree `-N` to `0`.
    pub fn ic_cohomology(&self) -> Result<Vec<usize>> {
        let f = &self.field;
        let ic = image_complex(f, &self.complex_shriek()?, &self.complex_star()?, &self.m_map()?)?;
        cohomology_dims(f, &ic)
    }

    /// The Hochschild side: `'f` on `J` acting on one Verma module.
    pub fn hochschild(&self) -> Hochschild {
        Hochschild::new(self.unf.clone(), vec![self.lam_unfolded()])
    }

    /// `b_{rho<=tau} -> sgn(tau, eta) sgn(rho) theta_{rho<=tau}` into [`Hochschild::build_complex`]
    /// at `chi_J`. The matrix is the same for both extensions; for `Ext::Star` the
    /// target basis is the dual one.
    pub fn phi_iso(&self, eta: &[usize], which: RhoSign) -> Result<ChainMap> {
        self.require(Flavor::Principal)?;
        let n = self.n_points();
        check_order(eta, n)?;
        let h = self.hochschild();
        let chi = RootVec(vec![1; n]);
        let cells = PosCells::new(n);
        let mut maps = Vec::with_capacity(n + 1);
        for (p, row) in cells.cells.iter().enumerate() {
            let r = n - p;
            let hb = h.basis(&chi, r);
            let hidx: HashMap<&Vec<Word>, usize> = hb.iter().enumerate().map(|(k, l)| (l, k)).collect();
            let mut m = CycMatrix::zeros(hb.len(), row.len());
            for (col, (rho, tau)) in row.iter().enumerate() {
                let k = *hidx.get(&cell_words(rho, tau)).ok_or_else(|| Error::Contract("cell without a Hochschild label".into()))?;
                m.set(k, col, CycNum::from_int(sgn_pair(tau, eta) * sign_rho(rho, which)));
            }
            maps.push(m);
        }
        Ok(ChainMap { maps })
    }

    /// Checks that `phi_iso` is a chain isomorphism onto the free (resp. dual) side.
    pub fn check_phi(&self, eta: &[usize], ext: Ext, which: RhoSign) -> Result<()> {
        let f = &self.field;
        let chi = RootVec(vec![1; self.n_points()]);
        let h = self.hochschild();
        let (src, dst) = match ext {
            Ext::Shriek => (self.complex_shriek()?, h.build_complex(&chi, Side::Free)),
            Ext::Star => (self.complex_star()?, h.build_complex(&chi, Side::Dual)),
        };
        let phi = self.phi_iso(eta, which)?;
        phi.check(f, &src, &dst)?;
        if !phi.is_iso(f) {
            return Err(Error::Contract("phi is not bijective".into()));
        }
        Ok(())
    }

    /// `S phi_! = phi_* m`, degreewise.
    pub fn check_square(&self, eta: &[usize]) -> Result<()> {
        let f = &self.field;
        let chi = RootVec(vec![1; self.n_points()]);
        let s = self.hochschild().s_map(&chi);
        let m = self.m_map()?;
        m.check(f, &self.complex_shriek()?, &self.complex_star()?)?;
        let p1 = self.phi_iso(eta, RhoSign::Corrected)?;
        for p in 0..m.maps.len() {
            if s.maps[p].mul(f, &p1.maps[p]) != p1.maps[p].mul(f, &m.maps[p]) {
                return Err(Error::Contract(format!("comparison square fails at degree {}", p as i64 - self.n_points() as i64)));
            }
        }
        Ok(())
    }

    /// `(Sigma_pi, sgn)`-isotypic part of a positive complex.
    pub fn skew_symmetrize(&self, c: &ChainComplex) -> Result<SkewPart> {
        let perms: Vec<Vec<usize>> = sigma_pi(&self.pi);
        let cells = PosCells::new(self.n_points());
        let idx: Vec<_> = (0..cells.cells.len()).map(|p| cells.index(p)).collect();
        let mut actions = Vec::with_capacity(perms.len());
        for s in &perms {
            let sg = perm_sign(s);
            let per_deg: Vec<Vec<usize>> = (0..cells.cells.len())
                .map(|p| {
                    cells.cells[p]
                        .iter()
                        .map(|(rho, tau)| {
                            let mut r2 = vec![0; rho.rho.len()];
                            let mut t2 = vec![0; tau.len()];
                            for j in 0..tau.len() {
                                r2[s[j]] = rho.rho[j];
                                t2[s[j]] = tau[j];
                            }
                            idx[p][&(&PosFacet { rho: r2 }, &t2)]
                        })
                        .collect()
                })
                .collect();
            actions.push((sg, per_deg));
        }
        skew_symmetrize(&self.field, c, &actions)
    }

    /// `m` restricted to the sign-isotypic parts.
    pub fn skew_m(&self, shriek: &SkewPart, star: &SkewPart, m: &ChainMap) -> Result<ChainMap> {
        let f = &self.field;
        let mut maps = Vec::with_capacity(m.maps.len());
        for p in 0..m.maps.len() {
            let img = m.maps[p].mul(f, &shriek.bases[p]);
            maps.push(solve(f, &star.bases[p], &img).ok_or_else(|| Error::Contract("m does not preserve the isotypic part".into()))?);
        }
        Ok(ChainMap { maps })
    }

    /// The diagonal arrangement's `m` on chambers: entry `(tau', tau)` is
    /// `sgn(tau', tau) q(C_tau, C_tau')`; chambers are listed as
    /// [`diagonal_chambers`].
    pub fn diagonal_m_matrix(&self) -> Result<CycMatrix> {
        self.require(Flavor::Diagonal)?;
        let f = &self.field;
        let ch = diagonal_chambers(self.n_points());
        let mut m = CycMatrix::zeros(ch.len(), ch.len());
        for (a, t) in ch.iter().enumerate() {
            for (b, tp) in ch.iter().enumerate() {
                let q = self.q_separating(&Self::pos_chamber(t), &Self::pos_chamber(tp));
                m.set(b, a, f.mul(&q, &CycNum::from_int(sgn_pair(tp, t))));
            }
        }
        Ok(m)
    }

    /// Compares `sgn(tau, eta) sgn(tau', eta) m[tau'][tau]` with `S(theta_{J_tau}, theta_{J_tau'})`
    /// for the recursive `S`, and the skew-symmetrized `m` with `|Sigma_pi|` times the
    /// Gram matrix of `S` on the folded weight.
    pub fn check_diagonal(&self, cartan: &CartanDatum, eta: &[usize]) -> Result<()> {
        let f = &self.field;
        let n = self.n_points();
        check_order(eta, n)?;
        let m = self.diagonal_m_matrix()?;
        let ch = diagonal_chambers(n);
        let jt: Vec<Word> = ch.iter().map(|t| chamber_word(t)).collect();
        for (a, t) in ch.iter().enumerate() {
            for (b, tp) in ch.iter().enumerate() {
                let lhs = f.mul(m.get(b, a), &CycNum::from_int(sgn_pair(t, eta) * sgn_pair(tp, eta)));
                if lhs != self.unf.form_s_rec(&jt[a], &jt[b]) {
                    return Err(Error::Contract(format!("m differs from S at chambers {:?}, {:?}", t, tp)));
                }
            }
        }
        let folded = FreeAlg::from_cartan(f.clone(), cartan);
        let nu = RootVec::of_word(&self.pi, cartan.rank());
        let g = CycNum::from_int(sigma_pi(&self.pi).len() as i64);
        let basis = folded.basis(&nu);
        let to_chambers = |x: &FreeElement| -> Vec<CycNum> {
            ch.iter()
                .zip(&jt)
                .map(|(t, w)| f.mul(&x.coeff(w), &CycNum::from_int(sgn_pair(t, eta))))
                .collect()
        };
        let vecs: Vec<Vec<CycNum>> = basis
            .iter()
            .map(|x| symmetrize_average(&FreeElement::monomial(x.clone()), &self.pi, cartan.rank()).map(|e| to_chambers(&e)))
            .collect::<Result<_>>()?;
        for (x, vx) in basis.iter().zip(&vecs) {
            let mvx = m.apply(f, vx);
            for (y, vy) in basis.iter().zip(&vecs) {
                let mut s = CycNum::zero();
                for (a, b) in vy.iter().zip(&mvx) {
                    s += &f.mul(a, b);
                }
                if s != f.mul(&g, &folded.form_s(x, y)) {
                    return Err(Error::Contract(format!("skew m differs from S on {:?}, {:?}", x, y)));
                }
            }
        }
        Ok(())
    }
}

/// All total orders of `0..n` as rank vectors.
pub fn diagonal_chambers(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
}

/// `J_tau = (tau^-1(N), ..., tau^-1(1))`.
pub fn chamber_word(tau: &[usize]) -> Word {
    let mut w: Word = (0..tau.len()).collect();
    w.sort_by_key(|&j| std::cmp::Reverse(tau[j]));
    w
}

fn check_order(eta: &[usize], n: usize) -> Result<()> {
    let mut s = eta.to_vec();
    s.sort();
    if s != (0..n).collect::<Vec<_>>() {
        return Err(Error::Param("eta must be a total order on J".into()));
    }
    Ok(())
}

/// `Delta_Lambda(theta_z v)` by `t`-operators:
/// `t_i(x (x) y) = theta_i x (x) y - zeta^{i.nu - 2 lambda(y).i} x theta_i (x) y + zeta^{i.nu} x (x) theta_i y`
/// with `nu` the weight of `x` and `lambda(y).i = lam[i] - y.i`.
pub fn t_coaction(alg: &FreeAlg, lam: &[i64], z: &[usize]) -> TensorElement {
    let f = alg.field();
    let mut cur = TensorElement::zero();
    cur.add_term(vec![vec![], vec![]], &CycNum::one());
    for &i in z.iter().rev() {
        let mut next = TensorElement::zero();
        for (t, c) in &cur.terms {
            let (x, y) = (&t[0], &t[1]);
            let inu: i64 = x.iter().map(|&s| alg.dot(i, s)).sum();
            let ly = lam[i] - y.iter().map(|&s| alg.dot(s, i)).sum::<i64>();
            let mut ix = vec![i];
            ix.extend_from_slice(x);
            next.add_term(vec![ix, y.clone()], c);
            let mut xi = x.clone();
            xi.push(i);
            next.add_term(vec![xi, y.clone()], &-f.mul(c, &alg.zeta(inu - 2 * ly)));
            let mut iy = vec![i];
            iy.extend_from_slice(y);
            next.add_term(vec![x.clone(), iy], &f.mul(c, &alg.zeta(inu)));
        }
        cur = next;
    }
    cur
}

/// Sign-isotypic subcomplex under a group acting by signed permutations of
/// the basis: `actions[g] = (sign, per-degree images of basis indices)`.
pub fn skew_symmetrize(f: &CycField, c: &ChainComplex, actions: &[(i64, Vec<Vec<usize>>)]) -> Result<SkewPart> {
    let mut bases = Vec::with_capacity(c.dims.len());
    for (p, &d) in c.dims.iter().enumerate() {
        let mut proj = CycMatrix::zeros(d, d);
        for (sg, per) in actions {
            for (k, &img) in per[p].iter().enumerate() {
                proj.add_at(img, k, &CycNum::from_int(*sg));
            }
        }
        let cols = column_basis(f, &proj);
        bases.push(proj.select(&(0..d).collect::<Vec<_>>(), &cols));
    }
    let mut diffs = Vec::with_capacity(c.diffs.len());
    for p in 0..c.diffs.len() {
        let img = c.diffs[p].mul(f, &bases[p]);
        diffs.push(solve(f, &bases[p + 1], &img).ok_or_else(|| Error::Contract("isotypic part is not a subcomplex".into()))?);
    }
    let labels = bases.iter().map(|b| (0..b.cols()).map(|k| format!("s{}", k)).collect()).collect();
    Ok(SkewPart { complex: ChainComplex::with_labels(c.lo, labels, diffs), bases })
}

// ---------------------------------------------------------------------------
// The principal arrangement on all of R^J

/// A facet of the principal arrangement as integer levels: the nonzero levels
/// used are exactly `-s..=-1` and `1..=r`, and `dim = r + s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub lvl: Vec<i64>,
}

impl Facet {
    pub fn dim(&self) -> usize {
        let mut v: Vec<i64> = self.lvl.iter().copied().filter(|&x| x != 0).collect();
        v.sort();
        v.dedup();
        v.len()
    }

    /// Sign of the facet on `t_a = 0` (`b = None`) or on `t_a = t_b`.
    fn side(&self, a: usize, b: Option<usize>) -> i64 {
        match b {
            None => self.lvl[a].signum(),
            Some(b) => (self.lvl[a] - self.lvl[b]).signum(),
        }
    }

    /// `self` lies in the closure of `o`.
    pub fn le(&self, o: &Facet) -> bool {
        hyperplanes(self.lvl.len()).into_iter().all(|(a, b)| {
            let s = self.side(a, b);
            s == 0 || s == o.side(a, b)
        })
    }

    /// Functionals orienting the dual cell, one per coordinate that is not the
    /// smallest index of a nonzero level: `e_j - e_{min}`, or `e_j` at level 0.
    fn coorientation(&self) -> (Vec<Vec<i64>>, Vec<usize>) {
        let n = self.lvl.len();
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for j in 0..n {
            let l = self.lvl[j];
            let mut v = vec![0; n];
            v[j] = 1;
            if l != 0 {
                let m = (0..n).find(|&k| self.lvl[k] == l).unwrap();
                if m == j {
                    continue;
                }
                v[m] = -1;
            }
            rows.push(v);
            cols.push(j);
        }
        (rows, cols)
    }
}

fn hyperplanes(n: usize) -> Vec<(usize, Option<usize>)> {
    let mut out: Vec<(usize, Option<usize>)> = (0..n).map(|a| (a, None)).collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, Some(b)));
        }
    }
    out
}

/// All facets of the principal arrangement on `n` points.
pub fn all_facets(n: usize) -> Vec<Facet> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in 0..=n - r {
            let vals: Vec<i64> = (-(s as i64)..=r as i64).collect();
            let mut idx = vec![0usize; n];
            loop {
                let lvl: Vec<i64> = idx.iter().map(|&k| vals[k]).collect();
                if vals.iter().all(|&v| v == 0 || lvl.contains(&v)) {
                    out.push(Facet { lvl });
                }
                let mut t = 0;
                while t < n {
                    idx[t] += 1;
                    if idx[t] < vals.len() {
                        break;
                    }
                    idx[t] = 0;
                    t += 1;
                }
                if t == n {
                    break;
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn det_sign(mut m: Vec<Vec<i64>>) -> i64 {
    // fraction-free elimination on small integer matrices
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                m[r][k] = (m[r][k] * m[c][c] - m[r][c] * m[c][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    sign * m[n - 1][n - 1].signum()
}

/// `sgn(E, F)` for `E < F` of dimensions `k-1`, `k`: orient the dual cell of `F`
/// by the vectors `e_j` dual to its functionals, append `w_F - w_E`, and
/// evaluate against the functionals of `E`.
pub fn facet_sign(e: &Facet, fct: &Facet) -> i64 {
    let (pe, _) = e.coorientation();
    let (_, cols) = fct.coorientation();
    let n = e.lvl.len();
    let mut vecs: Vec<Vec<i64>> = cols
        .iter()
        .map(|&j| {
            let mut v = vec![0; n];
            v[j] = 1;
            v
        })
        .collect();
    vecs.push((0..n).map(|j| fct.lvl[j] - e.lvl[j]).collect());
    let m: Vec<Vec<i64>> = pe.iter().map(|row| vecs.iter().map(|v| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()).collect();
    det_sign(m)
}

/// Complexes of the principal arrangement on all of `R^J`, cells `(F, C)` with
/// `C` a chamber over `F`, degree `-dim F`.
#[derive(Clone, Debug)]
pub struct FullArrangement<'a> {
    arr: &'a ConfigArrangement,
    cells: Vec<Vec<(Facet, Facet)>>,
}

impl<'a> FullArrangement<'a> {
    pub fn new(arr: &'a ConfigArrangement) -> Result<Self> {
        arr.require(Flavor::Principal)?;
        let n = arr.n_points();
        let fs = all_facets(n);
        let chambers: Vec<&Facet> = fs.iter().filter(|f| f.dim() == n).collect();
        let cells = (0..=n)
            .rev()
            .map(|d| {
                fs.iter()
                    .filter(|f| f.dim() == d)
                    .flat_map(|f| chambers.iter().filter(|c| f.le(c)).map(move |c| (f.clone(), (*c).clone())))
                    .collect()
            })
            .collect();
        Ok(FullArrangement { arr, cells })
    }

    pub fn cells(&self) -> &[Vec<(Facet, Facet)>] {
        &self.cells
    }

    fn q(&self, c1: &Facet, c2: &Facet) -> CycNum {
        self.arr.q_separating(&c1.lvl, &c2.lvl)
    }

    fn labels(&self) -> Vec<Vec<String>> {
        let s = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        self.cells.iter().map(|c| c.iter().map(|(f, ch)| format!("{}<{}", s(&f.lvl), s(&ch.lvl))).collect()).collect()
    }

    pub fn complex(&self, ext: Ext) -> ChainComplex {
        let f = self.arr.field();
        let n = self.arr.n_points();
        let mut diffs = Vec::with_capacity(n);
        for p in 0..n {
            let mut m = CycMatrix::zeros(self.cells[p + 1].len(), self.cells[p].len());
            for (col, (big, c)) in self.cells[p].iter().enumerate() {
                for (row, (small, cp)) in self.cells[p + 1].iter().enumerate() {
                    if !small.le(big) {
                        continue;
                    }
                    let s = CycNum::from_int(facet_sign(small, big));
                    match ext {
                        Ext::Shriek => {
                            if cp == c {
                                m.add_at(row, col, &s);
                            }
                        }
                        Ext::Star => {
                            // the chamber over `big` agreeing with `cp` on the hyperplanes through `big`
                            let agrees = hyperplanes(n).into_iter().all(|(a, b)| big.side(a, b) != 0 || cp.side(a, b) == c.side(a, b));
                            if agrees {
                                m.add_at(row, col, &f.mul(&s, &self.q(c, cp)));
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        ChainComplex::with_labels(-(n as i64), self.labels(), diffs)
    }

    /// `m(b_{F<C}) = sum_{C'} q(C, C') b*_{F<C'}`.
    pub fn m_map(&self) -> ChainMap {
        let maps = self
            .cells
            .iter()
            .map(|cs| {
                let mut m = CycMatrix::zeros(cs.len(), cs.len());
                for (col, (fa, c)) in cs.iter().enumerate() {
                    for (row, (fb, cp)) in cs.iter().enumerate() {
                        if fa == fb {
                            m.set(row, col, self.q(c, cp));
                        }
                    }
                }
                m
            })
            .collect();
        ChainMap { maps }
    }
}

/// The one-point model: vanishing cycles at `0` with basis `(+, -)` and
/// nearby cycles with basis `(w+, w-)`. Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePoint {
    pub q: CycNum,
    /// `m` on the dual chains at `0`.
    pub m: CycMatrix,
    /// `u*` for `L_!`, from `(c+, c-)` to `(c_{w+}, c_{w-})`.
    pub u_shriek: CycMatrix,
    /// `u*` for `L_*`.
    pub u_star: CycMatrix,
    /// `v*` for `L_!`, from `(c_{w+}, c_{w-})` to `(c+, c-)`.
    pub v_shriek: CycMatrix,
    /// `v*` for `L_*`.
    pub v_star: CycMatrix,
}

impl OnePoint {
    /// `lam = Lambda . i'` for the single color; `q = zeta^{-lam}`.
    pub fn new(field: Arc<CycField>, cartan: &CartanDatum, color: usize, lam: i64) -> Result<OnePoint> {
        let mut lams = vec![0; cartan.rank()];
        lams[color] = lam;
        let arr = ConfigArrangement::new(field.clone(), cartan, vec![color], lams.clone(), Flavor::Principal)?;
        lams[color] = -lam;
        let inv = ConfigArrangement::new(field.clone(), cartan, vec![color], lams, Flavor::Principal)?;
        let full = FullArrangement::new(&arr)?;
        let full_inv = FullArrangement::new(&inv)?;
        // cells at degree 0 are (0 < +), (0 < -); at degree -1, (w+), (w-) after sorting by level
        let deg1 = reorder(&full.cells[0], &[1, -1]);
        let deg0 = reorder(&full.cells[1], &[1, -1]);
        let pick = |m: &CycMatrix| m.select(&deg0, &deg1);
        let d_shriek = pick(&full.complex(Ext::Shriek).diffs[0]);
        let d_star = pick(&full.complex(Ext::Star).diffs[0]);
        let d_star_inv = pick(&full_inv.complex(Ext::Star).diffs[0]);
        let d_shriek_inv = pick(&full_inv.complex(Ext::Shriek).diffs[0]);
        let mm = full.m_map().maps[1].select(&deg0, &deg0);
        let q = arr.q_zero(0);
        let qi = field.inv(&q)?;
        // pairing of dual chains at 0 for L_* against chains for L^{-1}_!: the
        // opposite chamber with weight q
        let pair_inv = CycMatrix::from_rows(vec![vec![CycNum::zero(), qi.clone()], vec![qi, CycNum::zero()]]);
        let u_shriek = d_shriek.transpose();
        let u_star = d_star.transpose();
        let v_shriek = d_star_inv;
        let v_star = pair_inv.transpose().mul(&field, &d_shriek_inv);
        Ok(OnePoint { q, m: mm, u_shriek, u_star, v_shriek, v_star })
    }
}

fn reorder(cells: &[(Facet, Facet)], chamber_levels: &[i64]) -> Vec<usize> {
    chamber_levels.iter().map(|&l| cells.iter().position(|(_, c)| c.lvl[0] == l).expect("one-point cell")).collect()
}
