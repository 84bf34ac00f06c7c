//! Front end for `qgroup-core`: subcommands that print deterministic JSON.
//!
//! Every output is an object `{command, config, field, result}`. `field`
//! describes `Q[x]/Phi_N(x)`; a field element is the list of its coordinates
//! in `1, x, ..., x^{deg-1}` as rational strings, and a matrix is a list of
//! rows of such elements.

pub mod config;
pub mod verify;

use num_traits::ToPrimitive;
use qgroup_core::arrangement::{ConfigArrangement, Flavor};
use qgroup_core::catc::conformal_blocks;
use qgroup_core::freealg::FreeAlg;
use qgroup_core::hochschild::{Hochschild, Side};
use qgroup_core::linalg::{cohomology_dims, det, image_complex, ChainComplex, ChainMap};
use qgroup_core::verma::Verma;
use qgroup_core::{CycField, CycMatrix, CycNum, RootVec};
use serde_json::{json, Value};

pub use config::{decode_config, Job, JobConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dims,
    Gram,
    Verma,
    Tor,
    Arrcoh,
    Blocks,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Gram => "gram",
            Command::Verma => "verma",
            Command::Tor => "tor",
            Command::Arrcoh => "arrcoh",
            Command::Blocks => "blocks",
            Command::Verify => "verify",
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of a command: the JSON `result` and whether it passed.
pub struct Report {
    pub result: Value,
    pub ok: bool,
}

impl Report {
    fn ok(result: Value) -> Report {
        Report { result, ok: true }
    }
}

pub fn cyc_json(f: &CycField, x: &CycNum) -> Value {
    Value::Array(x.coeffs(f.degree()).iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn matrix_json(f: &CycField, m: &CycMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| cyc_json(f, x)).collect())).collect())
}

fn field_json(f: &CycField) -> Value {
    let phi: Vec<Value> = f.modulus().iter().map(|c| c.to_i64().map_or_else(|| Value::String(c.to_string()), Value::from)).collect();
    json!({"l": f.l(), "k": f.k(), "varpi": f.varpi(), "N": f.order(), "phi_N": phi})
}

fn word_json(w: &[usize]) -> Value {
    json!(w)
}

fn degrees(c: &ChainComplex) -> Vec<i64> {
    c.degrees().collect()
}

fn contract(e: qgroup_core::Error) -> UsageError {
    UsageError(e.to_string())
}

/// Runs a command on a merged config. Returns the exit code and the text to print.
pub fn run(cmd: Command, cfg: JobConfig) -> (i32, String) {
    let job = match Job::new(cfg) {
        Ok(j) => j,
        Err(e) => return (EXIT_USAGE, format!("usage error: {}", e)),
    };
    let res = match cmd {
        Command::Dims => cmd_dims(&job),
        Command::Gram => cmd_gram(&job),
        Command::Verma => cmd_verma(&job),
        Command::Tor => cmd_tor(&job),
        Command::Arrcoh => cmd_arrcoh(&job),
        Command::Blocks => cmd_blocks(&job),
        Command::Verify => verify::cmd_verify(&job),
    };
    match res {
        Ok(rep) => {
            let out = json!({
                "command": cmd.name(),
                "config": serde_json::to_value(&job.cfg).expect("config serializes"),
                "field": field_json(&job.field),
                "result": rep.result,
            });
            let text = serde_json::to_string_pretty(&out).expect("json") + "\n";
            (if rep.ok { EXIT_OK } else { EXIT_FAIL }, text)
        }
        Err(e) => (EXIT_USAGE, format!("usage error: {}", e)),
    }
}

fn alg(job: &Job) -> FreeAlg {
    FreeAlg::from_cartan(job.field.clone(), &job.cartan)
}

fn depth_bound(job: &Job, default: usize) -> Result<usize, UsageError> {
    let d = job.cfg.max_depth.unwrap_or(default);
    if d > 12 {
        return Err(UsageError("--max-depth above 12 is not supported".into()));
    }
    Ok(d)
}

pub fn cmd_dims(job: &Job) -> Result<Report, UsageError> {
    let a = alg(job);
    let f = &job.field;
    let depth = depth_bound(job, 4)?;
    let verma = match job.weight()? {
        Some(w) => Some(Verma::new(a.clone(), job.lam_dots(&w)?)),
        None => None,
    };
    let mut per_nu = Vec::new();
    let mut f_by_depth = Vec::new();
    let mut l_by_depth = Vec::new();
    for d in 0..=depth {
        let (mut fsum, mut lsum) = (0, 0);
        for nu in RootVec::of_depth(job.rank(), d) {
            let g = a.gram_s(&nu);
            let dim_f = a.dim_f(&nu);
            fsum += dim_f;
            let mut e = json!({"nu": nu.0, "words": g.rows(), "dim_f": dim_f, "det_f": cyc_json(f, &det(f, &g))});
            if let Some(v) = &verma {
                let gl = v.gram(&nu);
                let dl = v.dim_l(&nu);
                lsum += dl;
                e["dim_l"] = json!(dl);
                e["det_l"] = cyc_json(f, &det(f, &gl));
            }
            per_nu.push(e);
        }
        f_by_depth.push(fsum);
        l_by_depth.push(lsum);
    }
    let mut r = json!({"dims_f": f_by_depth, "weights": per_nu});
    if verma.is_some() {
        r["dims_l"] = json!(l_by_depth);
    }
    Ok(Report::ok(r))
}

pub fn cmd_gram(job: &Job) -> Result<Report, UsageError> {
    let a = alg(job);
    let f = &job.field;
    let nu = job.nu()?;
    if nu.depth() > 8 {
        return Err(UsageError("--nu deeper than 8 is not supported for gram".into()));
    }
    let basis: Vec<Value> = a.basis(&nu).iter().map(|w| word_json(w)).collect();
    let g = a.gram_s(&nu);
    let mut r = json!({"nu": nu.0, "basis": basis, "s": matrix_json(f, &g), "rank_s": a.dim_f(&nu)});
    if let Some(w) = job.weight()? {
        let v = Verma::new(a, job.lam_dots(&w)?);
        r["s_lambda"] = matrix_json(f, &v.gram(&nu));
        r["rank_s_lambda"] = json!(v.dim_l(&nu));
    }
    Ok(Report::ok(r))
}

pub fn cmd_verma(job: &Job) -> Result<Report, UsageError> {
    let w = job.weight()?.ok_or_else(|| UsageError("--weight is required".into()))?;
    let f = &job.field;
    let v = Verma::new(alg(job), job.lam_dots(&w)?);
    let depth = depth_bound(job, 4)?;
    let mut rows = Vec::new();
    for d in 0..=depth {
        for nu in RootVec::of_depth(job.rank(), d) {
            let g = v.gram(&nu);
            rows.push(json!({"nu": nu.0, "dim_v": g.rows(), "dim_l": v.dim_l(&nu), "det": cyc_json(f, &det(f, &g))}));
        }
    }
    Ok(Report::ok(json!({"lambda_dots": v.lam(), "weights": rows})))
}

pub fn cmd_tor(job: &Job) -> Result<Report, UsageError> {
    let ws = job.weights()?;
    if ws.is_empty() || ws.len() > 4 {
        return Err(UsageError("tor takes between 1 and 4 weights".into()));
    }
    let nu = job.nu()?;
    if nu.depth() > 6 {
        return Err(UsageError("--nu deeper than 6 is not supported for tor".into()));
    }
    let lams = ws.iter().map(|w| job.lam_dots(w)).collect::<Result<Vec<_>, _>>()?;
    let h = Hochschild::new(alg(job), lams);
    let free = h.tor_dims(&nu, Side::Free).map_err(contract)?;
    let dual = h.tor_dims(&nu, Side::Dual).map_err(contract)?;
    let fq = h.tor_dims_f(&nu).map_err(contract)?;
    let degs: Vec<i64> = (-(nu.depth() as i64)..=0).collect();
    Ok(Report::ok(json!({"nu": nu.0, "degrees": degs, "free": free, "dual": dual, "f": fq})))
}

fn m_json(f: &CycField, m: &ChainMap) -> Value {
    Value::Array(m.maps.iter().map(|x| matrix_json(f, x)).collect())
}

pub fn cmd_arrcoh(job: &Job) -> Result<Report, UsageError> {
    let f = &job.field;
    let lam = match job.weight()? {
        Some(w) => job.lam_dots(&w)?,
        None => vec![0; job.rank()],
    };
    let nu = job.nu()?;
    if nu.depth() > 5 {
        return Err(UsageError("--nu deeper than 5 is not supported for arrcoh".into()));
    }
    let ext = job.cfg.ext.clone().unwrap_or_else(|| "ic".into());
    let skew = job.cfg.skew.unwrap_or(false);
    let arr = ConfigArrangement::new(f.clone(), &job.cartan, nu.unfolding(), lam, Flavor::Principal).map_err(contract)?;
    let mut shriek = arr.complex_shriek().map_err(contract)?;
    let mut star = arr.complex_star().map_err(contract)?;
    let mut m = arr.m_map().map_err(contract)?;
    if skew {
        let sh = arr.skew_symmetrize(&shriek).map_err(contract)?;
        let st = arr.skew_symmetrize(&star).map_err(contract)?;
        m = arr.skew_m(&sh, &st, &m).map_err(contract)?;
        shriek = sh.complex;
        star = st.complex;
    }
    let (c, extra) = match ext.as_str() {
        "shriek" => (shriek, None),
        "star" => (star, None),
        "ic" => (image_complex(f, &shriek, &star, &m).map_err(contract)?, Some(m_json(f, &m))),
        other => return Err(UsageError(format!("unknown --ext {:?} (shriek, star or ic)", other))),
    };
    let h = cohomology_dims(f, &c).map_err(contract)?;
    let mut r = json!({"ext": ext, "skew": skew, "unfolding": nu.unfolding(), "degrees": degrees(&c), "complex_dims": c.dims, "cohomology": h});
    if let Some(mj) = extra {
        r["m"] = mj;
    }
    Ok(Report::ok(r))
}

pub fn cmd_blocks(job: &Job) -> Result<Report, UsageError> {
    let ws = job.weights()?;
    let e = job.ell()?;
    for w in &ws {
        if !e.in_first_alcove(w).map_err(contract)? {
            return Err(UsageError(format!("weight {} is outside the first alcove (alcove_ok: false)", w)));
        }
    }
    let dim = conformal_blocks(job.field.clone(), &job.cartan, &ws, &e).map_err(contract)?;
    let wj: Vec<Value> = ws.iter().map(|w| json!(w.to_string())).collect();
    Ok(Report::ok(json!({"weights": wj, "dim": dim, "alcove_ok": true})))
}
