//! The `verify` orchestrator. Each suite is a list of named checks; a check
//! counts its instances and records the first failure.

use qgroup_core::arrangement::{t_coaction, ConfigArrangement, Ext, Flavor, OnePoint, RhoSign};
use qgroup_core::catc::{conformal_blocks, irreducible_module, DualFlavor};
use qgroup_core::freealg::{FreeAlg, FreeElement, TensorElement, Word};
use qgroup_core::hochschild::{Hochschild, Side};
use qgroup_core::linalg::{cohomology_dims, image_complex};
use qgroup_core::verma::Verma;
use qgroup_core::{CycMatrix, CycNum, RootVec, Weight};
use serde_json::{json, Value};

use crate::{Job, Report, UsageError};

pub const SUITES: [&str; 6] = ["forms", "coaction", "hochschild", "arrangement", "comparison", "blocks"];

struct Check {
    tag: &'static str,
    cases: usize,
    failure: Option<String>,
    skipped: Option<String>,
}

impl Check {
    fn new(tag: &'static str) -> Check {
        Check { tag, cases: 0, failure: None, skipped: None }
    }

    fn skip(tag: &'static str, why: &str) -> Check {
        Check { skipped: Some(why.to_string()), ..Check::new(tag) }
    }

    fn case(&mut self, ok: bool, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(ctx());
        }
    }

    fn result<T, E: std::fmt::Display>(&mut self, r: Result<T, E>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => {
                self.cases += 1;
                Some(v)
            }
            Err(e) => {
                self.case(false, || format!("{}: {}", ctx(), e));
                None
            }
        }
    }

    fn pass(&self) -> bool {
        self.failure.is_none()
    }

    fn json(&self) -> Value {
        let mut v = json!({"tag": self.tag, "pass": self.pass(), "cases": self.cases});
        if let Some(f) = &self.failure {
            v["failure"] = json!(f);
        }
        if let Some(s) = &self.skipped {
            v["skipped"] = json!(s);
        }
        v
    }
}

struct Ctx<'a> {
    job: &'a Job,
    alg: FreeAlg,
    depth: usize,
    lams: Vec<Vec<i64>>,
}

fn words_up_to(rank: usize, depth: usize) -> Vec<Word> {
    (0..=depth).flat_map(|d| RootVec::of_depth(rank, d)).flat_map(|nu| qgroup_core::freealg::words_of_weight(&nu)).collect()
}

fn unfoldings(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let lo = p.last().copied().unwrap_or(0);
                (lo..rank).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// A fixed spread of integral weights, given by `Lambda . i'`.
fn sample_lams(job: &Job) -> Result<Vec<Vec<i64>>, UsageError> {
    if let Some(w) = job.weight()? {
        return Ok(vec![job.lam_dots(&w)?]);
    }
    let r = job.rank();
    let l = job.l() as i64;
    let coords: Vec<Vec<i64>> = vec![
        vec![0; r],
        (0..r).map(|i| i as i64 + 1).collect(),
        (0..r).map(|i| if i % 2 == 0 { -3 } else { 4 }).collect(),
        (0..r).map(|i| if i == 0 { l } else { -1 }).collect(),
    ];
    coords.iter().map(|c| job.lam_dots(&Weight::from_ints(c))).collect()
}

pub fn cmd_verify(job: &Job) -> Result<Report, UsageError> {
    let suite = job.cfg.suite.clone().unwrap_or_else(|| "all".into());
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite.as_str()) {
        vec![suite.as_str()]
    } else {
        return Err(UsageError(format!("unknown suite {:?}; expected one of {:?} or all", suite, SUITES)));
    };
    let depth = job.cfg.max_depth.unwrap_or(3);
    if depth > 6 {
        return Err(UsageError("--max-depth above 6 is not supported for verify".into()));
    }
    let ctx = Ctx { job, alg: FreeAlg::from_cartan(job.field.clone(), &job.cartan), depth, lams: sample_lams(job)? };
    let mut out = serde_json::Map::new();
    let mut ok = true;
    for name in names {
        let checks = match name {
            "forms" => forms(&ctx),
            "coaction" => coaction(&ctx),
            "hochschild" => hochschild(&ctx),
            "arrangement" => arrangement(&ctx),
            "comparison" => comparison(&ctx),
            _ => blocks(&ctx),
        };
        ok &= checks.iter().all(Check::pass);
        out.insert(name.to_string(), Value::Array(checks.iter().map(Check::json).collect()));
    }
    Ok(Report { result: json!({"suites": out, "pass": ok, "max_depth": depth}), ok })
}

fn forms(c: &Ctx) -> Vec<Check> {
    let a = &c.alg;
    let rank = a.rank();
    let mut eval = Check::new("form-evaluators");
    let mut sym = Check::new("form-symmetry");
    let mut oracle = if c.job.cartan.is_simply_laced() { Check::new("shapovalov-oracle") } else { Check::skip("shapovalov-oracle", "closed formula needs simply-laced data") };
    let mut contra = Check::new("contravariance");
    for d in 0..=c.depth {
        for nu in RootVec::of_depth(rank, d) {
            let ws = qgroup_core::freealg::words_of_weight(&nu);
            for x in &ws {
                for y in &ws {
                    eval.case(a.form_s_rec(x, y) == a.form_s_perm(x, y), || format!("{:?} {:?}", x, y));
                    for lam in &c.lams {
                        let v = Verma::new(a.clone(), lam.clone());
                        sym.case(v.form(x, y) == v.form(y, x), || format!("lam={:?} {:?} {:?}", lam, x, y));
                        if oracle.skipped.is_none() {
                            let o = v.form_oracle(x, y);
                            oracle.case(o.as_ref().ok() == Some(&v.form(x, y)), || format!("lam={:?} {:?} {:?}", lam, x, y));
                        }
                    }
                }
                if d == 0 {
                    continue;
                }
                for lam in &c.lams {
                    let v = Verma::new(a.clone(), lam.clone());
                    for i in 0..rank {
                        let Some(down) = nu.minus(&RootVec::simple(rank, i)) else { continue };
                        for z in qgroup_core::freealg::words_of_weight(&down) {
                            let mut iz = vec![i];
                            iz.extend_from_slice(&z);
                            let rhs = v.form_elem(&FreeElement::monomial(z.clone()), &v.epsilon_i(i, &FreeElement::monomial(x.clone())));
                            contra.case(v.form(&iz, x) == rhs, || format!("lam={:?} i={} {:?} {:?}", lam, i, z, x));
                        }
                    }
                }
            }
        }
    }
    let mut degen = Check::new("degeneration");
    match c.job.ell() {
        Ok(e) => {
            for i in 0..rank {
                let li = e.ell_i[i] as u32;
                if li > 16 {
                    continue;
                }
                for m in 0..=li {
                    let mut nu = RootVec::zero(rank);
                    nu.0[i] = m;
                    let expect = usize::from(m < li);
                    degen.case(a.dim_f(&nu) == expect, || format!("color {} multiplicity {}", i, m));
                }
            }
        }
        Err(e) => degen.skipped = Some(e.to_string()),
    }
    vec![eval, sym, oracle, contra, degen]
}

fn coaction(c: &Ctx) -> Vec<Check> {
    let a = &c.alg;
    let f = a.field();
    let rank = a.rank();
    let mut adj = Check::new("adjunction");
    let mut coassoc = Check::new("coassociativity");
    let mut evals = Check::new("coaction-evaluators");
    for lam in &c.lams {
        let v = Verma::new(a.clone(), lam.clone());
        for z in words_up_to(rank, c.depth) {
            let dz = v.coaction(&z);
            evals.case(dz == t_coaction(a, lam, &z), || format!("lam={:?} z={:?}", lam, z));
            let zn = RootVec::of_word(&z, rank);
            for x in words_up_to(rank, z.len()) {
                let Some(rest) = zn.minus(&RootVec::of_word(&x, rank)) else { continue };
                for y in a.basis(&rest) {
                    let xy = [x.as_slice(), y.as_slice()].concat();
                    let mut t = TensorElement::zero();
                    t.add_term(vec![x.clone(), y.clone()], &CycNum::one());
                    adj.case(v.form(&xy, &z) == v.form_pair(&t, &dz), || format!("lam={:?} x={:?} y={:?} z={:?}", lam, x, y, z));
                }
            }
            let mut left = TensorElement::zero();
            let mut right = TensorElement::zero();
            for (t, cf) in &dz.terms {
                for (s, e) in &v.coaction(&t[1]).terms {
                    left.add_term(vec![t[0].clone(), s[0].clone(), s[1].clone()], &f.mul(cf, e));
                }
                for (s, e) in &a.comult(&t[0]).terms {
                    right.add_term(vec![s[0].clone(), s[1].clone(), t[1].clone()], &f.mul(cf, e));
                }
            }
            coassoc.case(left == right, || format!("lam={:?} z={:?}", lam, z));
        }
    }
    vec![adj, coassoc, evals]
}

fn hochschild(c: &Ctx) -> Vec<Check> {
    let a = &c.alg;
    let f = a.field();
    let rank = a.rank();
    let mut d2 = Check::new("d-squared");
    let mut sm = Check::new("form-chain-map");
    let mut fc = Check::new("f-complex");
    for n in 1..=2usize {
        let lams: Vec<Vec<i64>> = (0..n).map(|k| c.lams[(k + 1) % c.lams.len()].clone()).collect();
        let h = Hochschild::new(a.clone(), lams.clone());
        for d in 0..=c.depth {
            for nu in RootVec::of_depth(rank, d) {
                let ctx = || format!("lams={:?} nu={}", lams, nu);
                let free = h.build_complex(&nu, Side::Free);
                let dual = h.build_complex(&nu, Side::Dual);
                d2.result(free.check_d2(f), ctx);
                d2.result(dual.check_d2(f), ctx);
                sm.result(h.s_map(&nu).check(f, &free, &dual), ctx);
                fc.result(h.build_complex_f(&nu).and_then(|x| cohomology_dims(f, &x)), ctx);
            }
        }
    }
    vec![d2, sm, fc]
}

fn arrangement(c: &Ctx) -> Vec<Check> {
    let f = &c.job.field;
    let cart = &c.job.cartan;
    let rank = cart.rank();
    let mut d2 = Check::new("d-squared");
    let mut mmap = Check::new("m-chain-map");
    let mut msym = Check::new("m-symmetric");
    let mut acyc = Check::new("shriek-acyclic");
    for n in 0..=c.depth.min(4) {
        for pi in unfoldings(rank, n) {
            for lam in &c.lams {
                let ctx = || format!("pi={:?} lam={:?}", pi, lam);
                let Some(arr) = d2.result(ConfigArrangement::new(f.clone(), cart, pi.clone(), lam.clone(), Flavor::Principal), ctx) else { continue };
                let (Some(sh), Some(st)) = (d2.result(arr.complex_shriek(), ctx), d2.result(arr.complex_star(), ctx)) else { continue };
                d2.result(sh.check_d2(f), ctx);
                d2.result(st.check_d2(f), ctx);
                if let Some(m) = mmap.result(arr.m_map(), ctx) {
                    mmap.result(m.check(f, &sh, &st), ctx);
                }
                if let Some(h) = acyc.result(cohomology_dims(f, &sh), ctx) {
                    acyc.cases -= 1;
                    acyc.case(n == 0 || h.iter().all(|&x| x == 0), ctx);
                }
            }
            if n > 0 {
                let ctx = || format!("diagonal pi={:?}", pi);
                if let Some(d) = ConfigArrangement::new(f.clone(), cart, pi.clone(), vec![0; rank], Flavor::Diagonal).ok().and_then(|d| d.diagonal_m_matrix().ok()) {
                    msym.case(d.is_symmetric(), ctx);
                } else {
                    msym.case(false, ctx);
                }
            }
        }
    }
    let mut one = Check::new("one-point");
    for color in 0..rank {
        for lam in [-2i64, 0, 1, 3, c.job.l() as i64] {
            let ctx = || format!("color={} lam={}", color, lam);
            let Some(op) = one.result(OnePoint::new(f.clone(), cart, color, lam), ctx) else { continue };
            let q = op.q.clone();
            let m = CycMatrix::from_rows(vec![vec![CycNum::one(), q.clone()], vec![q, CycNum::one()]]);
            one.case(op.m == m && op.u_shriek.mul(f, &op.m) == op.u_star && op.m.mul(f, &op.v_star) == op.v_shriek, ctx);
        }
    }
    vec![d2, mmap, msym, acyc, one]
}

fn comparison(c: &Ctx) -> Vec<Check> {
    let f = &c.job.field;
    let cart = &c.job.cartan;
    let rank = cart.rank();
    let mut shriek = Check::new("shriek-iso");
    let mut star = Check::new("star-iso");
    let mut square = Check::new("comparison-square");
    let mut tor = Check::new("skew-tor");
    let mut diag = Check::new("diagonal-form");
    for n in 1..=c.depth.min(4) {
        for (s, pi) in unfoldings(rank, n).into_iter().enumerate() {
            // a different eta per unfolding: rotate the identity order
            let eta: Vec<usize> = (0..n).map(|j| (j + s) % n).collect();
            for lam in &c.lams {
                let ctx = || format!("pi={:?} lam={:?} eta={:?}", pi, lam, eta);
                let Ok(arr) = ConfigArrangement::new(f.clone(), cart, pi.clone(), lam.clone(), Flavor::Principal) else {
                    shriek.case(false, ctx);
                    continue;
                };
                shriek.result(arr.check_phi(&eta, Ext::Shriek, RhoSign::Corrected), ctx);
                star.result(arr.check_phi(&eta, Ext::Star, RhoSign::Corrected), ctx);
                square.result(arr.check_square(&eta), ctx);
                let skew = (|| -> qgroup_core::Result<bool> {
                    let sh = arr.skew_symmetrize(&arr.complex_shriek()?)?;
                    let st = arr.skew_symmetrize(&arr.complex_star()?)?;
                    let m = arr.skew_m(&sh, &st, &arr.m_map()?)?;
                    let ic = image_complex(f, &sh.complex, &st.complex, &m)?;
                    let h = Hochschild::new(c.alg.clone(), vec![lam.clone()]);
                    let nu = RootVec::of_word(&pi, rank);
                    Ok(cohomology_dims(f, &sh.complex)? == h.tor_dims(&nu, Side::Free)?
                        && cohomology_dims(f, &st.complex)? == h.tor_dims(&nu, Side::Dual)?
                        && cohomology_dims(f, &ic)? == h.tor_dims_f(&nu)?)
                })();
                if let Some(ok) = tor.result(skew, ctx) {
                    tor.cases -= 1;
                    tor.case(ok, ctx);
                }
            }
            let ctx = || format!("diagonal pi={:?}", pi);
            match ConfigArrangement::new(f.clone(), cart, pi.clone(), vec![0; rank], Flavor::Diagonal) {
                Ok(d) => {
                    diag.result(d.check_diagonal(cart, &eta), ctx);
                }
                Err(e) => diag.case(false, || format!("{}: {}", ctx(), e)),
            }
        }
    }
    vec![shriek, star, square, tor, diag]
}

/// sl2 fusion at level `k`: multiplicity of the trivial weight in the product.
pub fn sl2_fusion(k: i64, ws: &[i64]) -> usize {
    let mut mult = std::collections::BTreeMap::from([(0i64, 1usize)]);
    for &a in ws {
        let mut next = std::collections::BTreeMap::new();
        for (&b, &m) in &mult {
            let mut c = (a - b).abs();
            while c <= (a + b).min(2 * k - a - b) {
                *next.entry(c).or_insert(0) += m;
                c += 2;
            }
        }
        mult = next;
    }
    mult.get(&0).copied().unwrap_or(0)
}

fn blocks(c: &Ctx) -> Vec<Check> {
    let f = &c.job.field;
    let cart = &c.job.cartan;
    let mut rel = Check::new("module-relations");
    let mut trel = Check::new("tensor-relations");
    let mut fus = Check::new("fusion");
    let mut symm = Check::new("block-symmetry");
    let e = match c.job.ell() {
        Ok(e) => e,
        Err(err) => {
            let why = err.to_string();
            return vec![Check::skip("module-relations", &why), Check::skip("tensor-relations", &why), Check::skip("fusion", &why), Check::skip("block-symmetry", &why)];
        }
    };
    let alcove = match e.alcove_weights() {
        Ok(a) => a,
        Err(err) => {
            rel.case(false, || err.to_string());
            return vec![rel];
        }
    };
    let alcove: Vec<Weight> = alcove.into_iter().take(6).collect();
    let mut mods = Vec::new();
    for w in &alcove {
        let ctx = || format!("L({})", w);
        if let Some(m) = rel.result(irreducible_module(f.clone(), cart, w, &e), ctx) {
            rel.result(m.check_relations(), ctx);
            rel.result(m.dual(DualFlavor::Star).check_relations(), || format!("L({})*", w));
            mods.push(m);
        }
    }
    for (x, mx) in mods.iter().enumerate().take(4) {
        for (y, my) in mods.iter().enumerate().take(4) {
            let ctx = || format!("L({}) (x) L({})", alcove[x], alcove[y]);
            if let Some(t) = trel.result(mx.tensor(my), ctx) {
                trel.result(t.check_relations(), ctx);
            }
        }
    }
    if cart.rank() == 1 {
        let level = e.ell as i64 - 2;
        let ints: Vec<i64> = alcove.iter().map(|w| w.to_ints().expect("integral")[0]).collect();
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for n in 1..=3 {
            tuples = tuples.iter().flat_map(|t| ints.iter().map(move |&a| [t.as_slice(), &[a]].concat())).collect();
            for t in &tuples {
                if n > 1 && t.windows(2).any(|p| p[0] > p[1]) {
                    continue;
                }
                let ws: Vec<Weight> = t.iter().map(|&a| Weight::from_ints(&[a])).collect();
                let ctx = || format!("{:?}", t);
                if let Some(d) = fus.result(conformal_blocks(f.clone(), cart, &ws, &e), ctx) {
                    fus.cases -= 1;
                    fus.case(d == sl2_fusion(level, t), || format!("{:?}: got {}, fusion {}", t, d, sl2_fusion(level, t)));
                }
            }
        }
    } else {
        fus.skipped = Some("fusion rule oracle is for rank one".into());
    }
    let sample: Vec<Weight> = alcove.iter().take(3).cloned().collect();
    for k in 0..sample.len() {
        let mut ws: Vec<Weight> = sample.clone();
        ws.rotate_left(k);
        let ctx = || format!("{:?}", ws.iter().map(|w| w.to_string()).collect::<Vec<_>>());
        let a = conformal_blocks(f.clone(), cart, &ws, &e);
        let mut rev = ws.clone();
        rev.reverse();
        let b = conformal_blocks(f.clone(), cart, &rev, &e);
        match (a, b) {
            (Ok(a), Ok(b)) => symm.case(a == b, ctx),
            (Err(err), _) | (_, Err(err)) => symm.case(false, || format!("{}: {}", ctx(), err)),
        }
    }
    vec![rel, trel, fus, symm]
}
