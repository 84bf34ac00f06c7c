//! Cartan data, weights in `<i, lambda>` coordinates, and l-arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(I, .)`: colors `0..rank` with the symmetric matrix `i.j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    name: Option<String>,
    dot: Vec<Vec<i64>>,
    // highest coroot and coroot dual to the highest root, when the type is known
    gamma0: Option<Vec<i64>>,
    beta0: Option<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(dot: Vec<Vec<i64>>) -> Result<Self> {
        let n = dot.len();
        if n == 0 {
            return Err(Error::Param("empty Cartan datum".into()));
        }
        for (i, row) in dot.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Param("dot matrix is not square".into()));
            }
            if row[i] <= 0 || row[i] % 2 != 0 {
                return Err(Error::Param(format!("i.i must be even and positive (color {})", i)));
            }
            for j in 0..n {
                if dot[j][i] != row[j] {
                    return Err(Error::Param("dot matrix is not symmetric".into()));
                }
                if i != j {
                    let c = 2 * row[j];
                    if c % row[i] != 0 || !(-3..=0).contains(&(c / row[i])) {
                        return Err(Error::Param(format!(
                            "2 i.j / i.i must lie in {{0,-1,-2,-3}} (colors {},{})",
                            i, j
                        )));
                    }
                }
            }
        }
        let m: Vec<Vec<BigRational>> = dot.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        for k in 1..=n {
            let minor: Vec<Vec<BigRational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !rat_det(&minor).is_positive() {
                return Err(Error::Param("dot matrix is not positive definite".into()));
            }
        }
        let (gamma0, beta0) = classify(&dot);
        Ok(CartanDatum { name: None, dot, gamma0, beta0 })
    }

    /// `A1`, `A2`, `B2`, `G2`; multi-color presets list the short color first.
    pub fn preset(name: &str) -> Result<Self> {
        let dot = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "B2" => vec![vec![2, -2], vec![-2, 4]],
            "G2" => vec![vec![2, -3], vec![-3, 6]],
            _ => return Err(Error::Param(format!("unknown Cartan preset '{}'", name))),
        };
        let mut c = Self::new(dot)?;
        c.name = Some(name.to_string());
        Ok(c)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
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

    pub fn d(&self, i: usize) -> i64 {
        self.dot[i][i] / 2
    }

    pub fn d_max(&self) -> i64 {
        (0..self.rank()).map(|i| self.d(i)).max().unwrap()
    }

    /// `<i, j'> = 2 i.j / i.i`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.dot[i][j] / self.dot[i][i]
    }

    pub fn is_simply_laced(&self) -> bool {
        (1..self.rank()).all(|i| self.d(i) == self.d(0))
    }

    /// `|det <i, j'>|`, the `varpi` of the cyclotomic field.
    pub fn varpi(&self) -> u64 {
        let m: Vec<Vec<BigRational>> = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| q(self.cartan(i, j))).collect())
            .collect();
        rat_det(&m).abs().to_integer().to_u64().expect("small determinant")
    }

    /// Scalar products `omega_a . omega_b` of the fundamental weights.
    pub fn weight_gram(&self) -> Vec<Vec<BigRational>> {
        // G = A^{-T} D with A[a][i] = <a, i'>
        let n = self.rank();
        let at: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|a| q(self.cartan(a, i))).collect()).collect();
        let inv = rat_inverse(&at).expect("Cartan matrix is invertible");
        (0..n)
            .map(|a| (0..n).map(|b| &inv[a][b] * q(self.d(b))).collect())
            .collect()
    }

    pub fn gamma0(&self) -> Option<&[i64]> {
        self.gamma0.as_deref()
    }

    pub fn beta0(&self) -> Option<&[i64]> {
        self.beta0.as_deref()
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    /// `nu'` in X: coordinate j is `<j, nu'>`.
    pub fn alpha_prime(&self, nu: &RootVec) -> Weight {
        let n = self.rank();
        Weight::new(
            (0..n)
                .map(|j| q((0..n).map(|i| nu.0[i] as i64 * self.cartan(j, i)).sum()))
                .collect(),
        )
    }

    pub fn dot_weight(&self, a: &Weight, b: &Weight) -> BigRational {
        let g = self.weight_gram();
        let mut s = BigRational::zero();
        for (x, ra) in a.0.iter().zip(&g) {
            for (y, gab) in b.0.iter().zip(ra) {
                s += x * y * gab;
            }
        }
        s
    }

    /// `lambda . i' = d_i <i, lambda>`.
    pub fn dot_simple(&self, lambda: &Weight, i: usize) -> BigRational {
        &lambda.0[i] * q(self.d(i))
    }

    /// `lambda . i'` as an integer, for lambda in `X_l`.
    pub fn dot_simple_int(&self, lambda: &Weight, i: usize) -> Result<i64> {
        let r = self.dot_simple(lambda, i);
        if !r.is_integer() {
            return Err(Error::Domain(format!("lambda.{}' = {} is not integral", i, r)));
        }
        Ok(r.to_integer().to_i64().expect("small weight"))
    }

    /// `(lambda . i')_i` for all colors.
    pub fn lambda_dots(&self, lambda: &Weight) -> Result<Vec<i64>> {
        (0..self.rank()).map(|i| self.dot_simple_int(lambda, i)).collect()
    }

    /// `rho` with `<i, rho> = 1`.
    pub fn rho(&self) -> Weight {
        Weight::new(vec![BigRational::one(); self.rank()])
    }
}

fn classify(dot: &[Vec<i64>]) -> (Option<Vec<i64>>, Option<Vec<i64>>) {
    match dot.len() {
        1 => (Some(vec![1]), Some(vec![1])),
        2 => {
            let (a, b, c) = (dot[0][0], dot[1][1], dot[0][1]);
            let (short, ratio) = if a <= b { (0, b / a) } else { (1, a / b) };
            let s = a.min(b);
            let expected = match ratio {
                1 => -s / 2,
                2 => -s,
                3 => -3 * s / 2,
                _ => return (None, None),
            };
            if a.max(b) != ratio * s || c != expected {
                return (None, None);
            }
            let (g, bt): ([i64; 2], [i64; 2]) = match ratio {
                1 => ([1, 1], [1, 1]),
                2 => ([1, 2], [1, 1]),
                _ => ([2, 3], [1, 2]),
            };
            let order = |v: [i64; 2]| if short == 0 { vec![v[0], v[1]] } else { vec![v[1], v[0]] };
            (Some(order(g)), Some(order(bt)))
        }
        _ => (None, None),
    }
}

/// A weight in coordinates `<i, lambda>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<BigRational>);

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigRational::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * q(c)).collect())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `nu = sum nu_i i` in `N[I]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<u32>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn depth(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn le(&self, o: &RootVec) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self - o`, if nonnegative.
    pub fn minus(&self, o: &RootVec) -> Option<RootVec> {
        if !o.le(self) {
            return None;
        }
        Some(RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect()))
    }

    pub fn of_word(word: &[usize], rank: usize) -> RootVec {
        let mut v = vec![0; rank];
        for &c in word {
            v[c] += 1;
        }
        RootVec(v)
    }

    /// All root vectors of the given depth, lexicographically.
    pub fn of_depth(rank: usize, depth: usize) -> Vec<RootVec> {
        fn rec(rank: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<RootVec>) {
            if cur.len() + 1 == rank {
                cur.push(left as u32);
                out.push(RootVec(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a as u32);
                rec(rank, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rank, depth, &mut Vec::new(), &mut out);
        out
    }

    /// The unfolding `J -> I` listing colors in increasing order.
    pub fn unfolding(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &m) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i).take(m as usize));
        }
        out
    }

    /// `nu . mu` for the Cartan pairing.
    pub fn dot(&self, c: &CartanDatum, o: &RootVec) -> i64 {
        let mut s = 0;
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                s += a as i64 * b as i64 * c.dot(i, j);
            }
        }
        s
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct EllData {
    pub cartan: CartanDatum,
    pub l: u64,
    pub ell: u64,
    pub ell_i: Vec<u64>,
    pub rho: Weight,
    pub rho_ell: Weight,
    /// Basis of `Y_l` in X-coordinates.
    pub y_ell: Vec<Vec<i64>>,
    /// `|X_l / Y_l|`.
    pub dd_ell: u64,
    pub warnings: Vec<String>,
}

impl EllData {
    pub fn new(cartan: &CartanDatum, l: u64) -> Result<EllData> {
        if l < 2 {
            return Err(Error::Param(format!("l must be > 1, got {}", l)));
        }
        let ell = if l % 2 == 0 { l / 2 } else { l };
        let n = cartan.rank();
        let ell_i: Vec<u64> = (0..n).map(|i| ell / ell.gcd(&(cartan.d(i) as u64))).collect();
        let mut warnings = Vec::new();
        for i in 0..n {
            if ell_i[i] <= 1 {
                warnings.push(format!("l_{} = {} <= 1", i, ell_i[i]));
            }
            for j in 0..n {
                if i != j && (ell_i[i] as i64) <= -cartan.cartan(j, i) + 1 {
                    warnings.push(format!("l_{} = {} <= -<{},{}'> + 1", i, ell_i[i], i, j));
                }
            }
        }
        let rho = cartan.rho();
        let rho_ell = Weight::new(ell_i.iter().map(|&x| q(x as i64 - 1)).collect());
        let y_ell = y_ell_basis(cartan, ell);
        let dd_ell = dd_of(cartan, &y_ell, ell);
        Ok(EllData { cartan: cartan.clone(), l, ell, ell_i, rho, rho_ell, y_ell, dd_ell, warnings })
    }

    /// Membership in `X_l = { mu : mu . Y_l in l Z }`.
    pub fn in_x_ell(&self, lambda: &Weight) -> bool {
        let g = self.cartan.weight_gram();
        let ell = q(self.ell as i64);
        self.y_ell.iter().all(|y| {
            let mut s = BigRational::zero();
            for a in 0..y.len() {
                for b in 0..y.len() {
                    s += &lambda.0[a] * q(y[b]) * &g[a][b];
                }
            }
            (s / &ell).is_integer()
        })
    }

    /// `ell_beta` for a coroot conjugate to a simple coroot of the long color.
    fn ell_beta0(&self) -> u64 {
        self.ell / self.ell.gcd(&(self.cartan.d_max() as u64))
    }

    /// The first alcove, with the two branches depending on whether all `l_i = l`.
    pub fn in_first_alcove(&self, lambda: &Weight) -> Result<bool> {
        if !lambda.is_integral() {
            return Ok(false);
        }
        let shifted = lambda + &self.rho;
        if shifted.0.iter().any(|c| !c.is_positive()) {
            return Ok(false);
        }
        let pair = |co: &[i64]| -> BigRational {
            co.iter().zip(&shifted.0).map(|(&c, x)| q(c) * x).sum()
        };
        if self.ell_i.iter().all(|&x| x == self.ell) {
            let g0 = self.cartan.gamma0().ok_or_else(|| {
                Error::Unsupported("alcove needs a known type (A1, A2, B2, G2)".into())
            })?;
            Ok(pair(g0) < q(self.ell as i64))
        } else {
            let b0 = self.cartan.beta0().ok_or_else(|| {
                Error::Unsupported("alcove needs a known type (A1, A2, B2, G2)".into())
            })?;
            Ok(pair(b0) < q(self.ell_beta0() as i64))
        }
    }

    /// Integral dominant weights of the first alcove.
    pub fn alcove_weights(&self) -> Result<Vec<Weight>> {
        let n = self.cartan.rank();
        let bound = self.ell as i64;
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            let w = Weight::from_ints(&cur);
            if self.in_first_alcove(&w)? {
                out.push(w);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(out);
                }
                cur[k] += 1;
                if cur[k] < bound {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }
}

/// `n(mu) = mu.mu / 2 + mu.nu0`.
pub fn balance_n(c: &CartanDatum, mu: &Weight, nu0: &Weight) -> BigRational {
    c.dot_weight(mu, mu) / q(2) + c.dot_weight(mu, nu0)
}

fn y_ell_basis(c: &CartanDatum, ell: u64) -> Vec<Vec<i64>> {
    // Y_l = { y in Z^n : G y in l Z^n }, containing (den*l) Z^n
    let g = c.weight_gram();
    let n = c.rank();
    let mut den = BigInt::one();
    for r in &g {
        for x in r {
            den = den.lcm(x.denom());
        }
    }
    let den = den.to_i64().unwrap();
    let gi: Vec<Vec<i64>> =
        g.iter().map(|r| r.iter().map(|x| (x * q(den)).to_integer().to_i64().unwrap()).collect()).collect();
    let m = den * ell as i64;
    let ok = |y: &[i64]| (0..n).all(|a| (0..n).map(|b| gi[a][b] * y[b]).sum::<i64>().rem_euclid(m) == 0);
    let mut gens: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| if a == b { m } else { 0 }).collect()).collect();
    // brute force over the box [0, m)^n when small; the result is the same lattice
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total <= 1_000_000 {
        let mut y = vec![0i64; n];
        'outer: loop {
            if y.iter().any(|&v| v != 0) && ok(&y) {
                gens.push(y.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    break 'outer;
                }
                y[k] += 1;
                if y[k] < m {
                    break;
                }
                y[k] = 0;
                k += 1;
            }
        }
    }
    hermite_basis(gens, n)
}

/// Row-style Hermite reduction of integer generators to a lattice basis.
fn hermite_basis(mut gens: Vec<Vec<i64>>, n: usize) -> Vec<Vec<i64>> {
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (0..gens.len()).filter(|&r| gens[r][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| gens[r][col].abs()).unwrap();
            let pv = gens[p].clone();
            for &r in &nz {
                if r != p {
                    let f = gens[r][col].div_euclid(pv[col]);
                    for t in 0..n {
                        gens[r][t] -= f * pv[t];
                    }
                }
            }
        }
        if let Some(p) = (0..gens.len()).find(|&r| gens[r][col] != 0) {
            let mut v = gens.remove(p);
            if v[col] < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(v);
        }
        gens.retain(|v| v.iter().any(|&x| x != 0));
    }
    basis
}

fn dd_of(c: &CartanDatum, y: &[Vec<i64>], ell: u64) -> u64 {
    let g = c.weight_gram();
    let n = y.len();
    let m: Vec<Vec<BigRational>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut s = BigRational::zero();
                    for s1 in 0..n {
                        for s2 in 0..n {
                            s += q(y[a][s1] * y[b][s2]) * &g[s1][s2];
                        }
                    }
                    s / q(ell as i64)
                })
                .collect()
        })
        .collect();
    rat_det(&m).abs().to_integer().to_u64().unwrap_or(0)
}

pub(crate) fn rat_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for t in c..n {
                    let v = &f * &a[c][t];
                    a[r][t] -= v;
                }
            }
        }
    }
    det
}

pub(crate) fn rat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for t in 0..2 * n {
            a[c][t] = &a[c][t] * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for t in 0..2 * n {
                    let v = &f * &a[c][t];
                    a[r][t] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
