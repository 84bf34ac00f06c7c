//! Text parsers for Cartan data, weights and root vectors.
//!
//! Matrices are written row by row, rows separated by `;` and entries by `,`
//! or whitespace. Outer brackets are ignored, so `[[2,-1],[-1,2]]` also works.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::rootdata::{CartanDatum, RootVec, Weight};
use crate::{Error, Result};

const MAX_RANK: usize = 16;
const MAX_ENTRY: i64 = 1 << 20;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn split_entries(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect()
}

fn parse_int(t: &str) -> Result<i64> {
    t.trim().parse::<i64>().map_err(|_| perr(format!("not an integer: {:?}", t)))
}

fn parse_rational(t: &str) -> Result<BigRational> {
    let t = t.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| perr(format!("not a rational: {:?}", t)))?;
    let d: BigInt = d.trim().parse().map_err(|_| perr(format!("not a rational: {:?}", t)))?;
    if d == BigInt::from(0) {
        return Err(perr(format!("zero denominator in {:?}", t)));
    }
    Ok(BigRational::new(n, d))
}

/// Rows of `[[a,b],[c,d]]`: exactly two levels of nesting, rows separated by commas.
fn bracket_rows(t: &str) -> Result<Vec<String>> {
    let mut rows = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut closed = false;
    for c in t.chars() {
        if closed && !c.is_whitespace() {
            return Err(perr("trailing input after matrix"));
        }
        match (c, depth) {
            ('[', 0 | 1) => depth += 1,
            (']', 2) => {
                rows.push(std::mem::take(&mut cur));
                depth = 1;
            }
            (']', 1) => {
                depth = 0;
                closed = true;
            }
            ('[' | ']', _) => return Err(perr("unbalanced brackets")),
            (c, 2) => cur.push(c),
            (c, 1) if c == ',' || c.is_whitespace() => {}
            _ => return Err(perr(format!("unexpected {:?} in matrix", c))),
        }
    }
    if !closed {
        return Err(perr("unbalanced brackets"));
    }
    Ok(rows)
}

/// Integer matrix, e.g. `2,-1;-1,2` or `[[2,-1],[-1,2]]`.
pub fn parse_int_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    let t = s.trim();
    let rows: Vec<String> = if t.starts_with('[') { bracket_rows(t)? } else { t.split(';').map(|r| r.to_string()).collect() };
    let m: Vec<Vec<i64>> = rows.iter().map(|r| split_entries(r).into_iter().map(parse_int).collect()).collect::<Result<_>>()?;
    if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
        return Err(perr("matrix must be square and nonempty"));
    }
    if m.iter().flatten().any(|x| x.unsigned_abs() > MAX_ENTRY as u64) {
        return Err(perr(format!("matrix entries must be at most {} in absolute value", MAX_ENTRY)));
    }
    if m.len() > MAX_RANK {
        return Err(perr(format!("rank {} exceeds {}", m.len(), MAX_RANK)));
    }
    Ok(m)
}

/// A preset name (`A1`, `A2`, `B2`, `G2`, ...) or an explicit matrix of `i.j`.
pub fn parse_cartan(s: &str) -> Result<CartanDatum> {
    let t = s.trim();
    if t.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return CartanDatum::preset(t).map_err(|e| perr(e.to_string()));
    }
    CartanDatum::new(parse_int_matrix(t)?).map_err(|e| perr(e.to_string()))
}

/// Coordinates `<i, lambda>`, comma separated, rationals allowed.
pub fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let v: Vec<BigRational> = split_entries(s).into_iter().map(parse_rational).collect::<Result<_>>()?;
    if v.len() != rank {
        return Err(perr(format!("weight {:?} has {} coordinates, expected {}", s, v.len(), rank)));
    }
    Ok(Weight::new(v))
}

/// Weights separated by `;`. In rank one a plain comma list is read as one
/// weight per entry (`2,2,3,3`).
pub fn parse_weight_list(s: &str, rank: usize) -> Result<Vec<Weight>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    if rank == 1 && !t.contains(';') {
        return split_entries(t).into_iter().map(|x| parse_weight(x, 1)).collect();
    }
    t.split(';').map(|w| parse_weight(w, rank)).collect()
}

/// Nonnegative coefficients of `nu` in the simple roots. A bare integer in
/// rank one is allowed.
pub fn parse_root_vec(s: &str, rank: usize) -> Result<RootVec> {
    let v: Vec<u32> = split_entries(s)
        .into_iter()
        .map(|t| t.parse::<u32>().map_err(|_| perr(format!("not a nonnegative integer: {:?}", t))))
        .collect::<Result<_>>()?;
    if v.len() != rank {
        return Err(perr(format!("root vector {:?} has {} coordinates, expected {}", s, v.len(), rank)));
    }
    if v.iter().map(|&x| x as u64).sum::<u64>() > 64 {
        return Err(perr("root vector depth above 64"));
    }
    Ok(RootVec(v))
}
