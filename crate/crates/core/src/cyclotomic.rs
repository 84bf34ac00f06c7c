//! The cyclotomic field `Q(xi_N)` with `N = 2 * varpi * l`.
//!
//! `xi = x mod Phi_N`, `zeta' = xi^k` and `zeta^q = (zeta')^(2 varpi q)`.
//! Elements are stored as integer numerators over one positive common
//! denominator, fully reduced, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { num: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_parts(vec![BigInt::from(c)], BigInt::one())
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(vec![r.numer().clone()], r.denom().clone())
    }

    /// Builds `sum num[j] x^j / den`. The caller guarantees `num.len() <= phi(N)`.
    pub fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        while num.last().map_or(false, |c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = den / &g;
            }
        }
        CycNum { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num[0].is_one()
    }

    /// Coefficient of `xi^j` as a rational.
    pub fn coeff(&self, j: usize) -> BigRational {
        match self.num.get(j) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Coefficients of `1, xi, xi^2, ...` padded to `len`.
    pub fn coeffs(&self, len: usize) -> Vec<BigRational> {
        (0..len.max(self.num.len())).map(|j| self.coeff(j)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The element is a rational number (no positive powers of xi).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        if c == 0 || self.is_zero() {
            return Self::zero();
        }
        let c = BigInt::from(c);
        Self::from_parts(self.num.iter().map(|a| a * &c).collect(), self.den.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.num.iter().map(|a| a * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let len = self.num.len().max(other.num.len());
        let zero = BigInt::zero();
        let (den, fa, fb) = if self.den == other.den {
            (self.den.clone(), BigInt::one(), BigInt::one())
        } else {
            let g = self.den.gcd(&other.den);
            let fa = &other.den / &g;
            let fb = &self.den / &g;
            (&self.den * &fa, fa, fb)
        };
        let mut num = Vec::with_capacity(len);
        for j in 0..len {
            let a = self.num.get(j).unwrap_or(&zero);
            let b = other.num.get(j).unwrap_or(&zero);
            let (ta, tb) = if fa.is_one() && fb.is_one() {
                (a.clone(), b.clone())
            } else {
                (a * &fa, b * &fb)
            };
            num.push(if negate { ta - tb } else { ta + tb });
        }
        Self::from_parts(num, den)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        self.add_signed(&rhs, false)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.add_signed(rhs, false)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        self.add_signed(&rhs, true)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.add_signed(rhs, true)
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = self.add_signed(rhs, true);
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: self.num.into_iter().map(|c| -c).collect(), den: self.den }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let (sign, abs) = if r.is_negative() { ("-", -r) } else { ("+", r) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", abs)?;
                    }
                    if j == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", j)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Q[x]/Phi_N` together with the choice of `zeta' = xi^k`.
#[derive(Debug)]
pub struct CycField {
    l: u64,
    k: i64,
    varpi: u64,
    n: u64,
    phi: Vec<BigInt>,
    xi_pows: Vec<CycNum>,
}

impl CycField {
    pub fn new(l: u64, k: i64, varpi: u64) -> Result<Arc<CycField>> {
        if l < 2 {
            return Err(Error::Param(format!("l must be > 1, got {}", l)));
        }
        if varpi == 0 {
            return Err(Error::Param("varpi must be >= 1".into()));
        }
        if BigInt::from(k).gcd(&BigInt::from(l)) != BigInt::one() {
            return Err(Error::Param(format!("k={} is not coprime to l={}", k, l)));
        }
        let n = 2 * varpi * l;
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let mut xi_pows = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::one()];
        for _ in 0..n {
            xi_pows.push(CycNum::from_parts(cur.clone(), BigInt::one()));
            cur.insert(0, BigInt::zero());
            reduce_mod(&mut cur, &phi);
            cur.truncate(deg);
        }
        Ok(Arc::new(CycField { l, k, varpi, n, phi, xi_pows }))
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn varpi(&self) -> u64 {
        self.varpi
    }

    /// Order of the ambient root `xi`.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// `phi(N)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Phi_N`, constant term first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn xi_pow(&self, e: i64) -> CycNum {
        let e = e.rem_euclid(self.n as i64) as usize;
        self.xi_pows[e].clone()
    }

    /// `zeta^m` for an integer `m`.
    pub fn zeta_pow_int(&self, m: i64) -> CycNum {
        let n = self.n as i64;
        let e = (2 * self.varpi as i64).rem_euclid(n) * self.k.rem_euclid(n) % n;
        self.xi_pow(((e as i128 * m as i128).rem_euclid(n as i128)) as i64)
    }

    /// `zeta^q = (zeta')^(2 varpi q)`; requires `2 varpi q` integral.
    pub fn zeta_pow(&self, q: &BigRational) -> Result<CycNum> {
        let t = q * BigRational::from_integer(BigInt::from(2 * self.varpi));
        if !t.is_integer() {
            return Err(Error::Domain(format!(
                "zeta^({}) needs 2*{}*q integral",
                q, self.varpi
            )));
        }
        let n = BigInt::from(self.n);
        let e = (t.to_integer() * BigInt::from(self.k)).mod_floor(&n);
        Ok(self.xi_pow(e.to_i64().expect("exponent below N")))
    }

    /// `[a] = 1 - zeta^(-2a)`.
    pub fn q_bracket(&self, a: i64) -> CycNum {
        CycNum::one() - self.zeta_pow_int(-2 * a)
    }

    /// `[a]_i = 1 - zeta_i^(-2a)` with `zeta_i = zeta^(d_i)`.
    pub fn q_bracket_i(&self, a: i64, d_i: i64) -> CycNum {
        self.q_bracket(a * d_i)
    }

    /// `[x]` for rational `x` with `2 varpi x` integral.
    pub fn q_bracket_rat(&self, x: &BigRational) -> Result<CycNum> {
        Ok(CycNum::one() - self.zeta_pow(&(-x * BigRational::from_integer(BigInt::from(2))))?)
    }

    pub fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        if a.is_zero() || b.is_zero() {
            return CycNum::zero();
        }
        if a.num.len() == 1 && a.den.is_one() {
            return CycNum::from_parts(b.num.iter().map(|c| c * &a.num[0]).collect(), b.den.clone());
        }
        if b.num.len() == 1 && b.den.is_one() {
            return CycNum::from_parts(a.num.iter().map(|c| c * &b.num[0]).collect(), a.den.clone());
        }
        let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_mod(&mut prod, &self.phi);
        CycNum::from_parts(prod, &a.den * &b.den)
    }

    pub fn pow(&self, a: &CycNum, e: u32) -> CycNum {
        let mut acc = CycNum::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self, a: &CycNum) -> Result<CycNum> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = a.as_rational() {
            return Ok(CycNum::from_rational(&r.recip()));
        }
        let mut r0: Vec<BigRational> = self.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut r1: Vec<BigRational> = a.coeffs(0);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        trim(&mut r1);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let s2 = poly_sub(&s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_N is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut out: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
        // s0 has degree < deg(Phi_N) already, but normalize anyway
        let (_, rem) = poly_divrem(&out, &r0_phi(&self.phi));
        out = rem;
        Ok(from_rational_coeffs(&out))
    }

    pub fn div(&self, a: &CycNum, b: &CycNum) -> Result<CycNum> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Element with the given rational coefficients, reduced mod `Phi_N`.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> CycNum {
        let mut c = coeffs.to_vec();
        trim(&mut c);
        if c.len() >= self.phi.len() {
            let (_, rem) = poly_divrem(&c, &r0_phi(&self.phi));
            c = rem;
        }
        from_rational_coeffs(&c)
    }
}

fn r0_phi(phi: &[BigInt]) -> Vec<BigRational> {
    phi.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn from_rational_coeffs(c: &[BigRational]) -> CycNum {
    let mut den = BigInt::one();
    for x in c {
        den = den.lcm(x.denom());
    }
    let num = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    CycNum::from_parts(num, den)
}

/// In-place reduction of an integer polynomial modulo a monic one.
fn reduce_mod(p: &mut Vec<BigInt>, m: &[BigInt]) {
    let d = m.len() - 1;
    while p.len() > d {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let off = p.len() - d;
        for t in 0..d {
            if !m[t].is_zero() {
                p[off + t] -= &top * &m[t];
            }
        }
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    let mut out: Vec<BigRational> =
        (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (t, bt) in b.iter().enumerate() {
            r[shift + t] -= &c * bt;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)`, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut numer = vec![BigInt::one()];
    let mut denom = vec![BigInt::one()];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = BigInt::from(-1);
        f[d as usize] = BigInt::one();
        match mobius(n / d) {
            1 => numer = int_poly_mul(&numer, &f),
            -1 => denom = int_poly_mul(&denom, &f),
            _ => {}
        }
    }
    exact_div_monic(&numer, &denom)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` for `b` with leading coefficient +-1 and exact divisibility.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for shift in (0..q.len()).rev() {
        let c = &r[shift + b.len() - 1] * &lead;
        for (t, bt) in b.iter().enumerate() {
            r[shift + t] -= &c * bt;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_sizes() {
        let f = CycField::new(5, 1, 2).unwrap();
        assert_eq!((f.order(), f.degree()), (20, 8));
        let f = CycField::new(3, 1, 2).unwrap();
        assert_eq!((f.order(), f.degree()), (12, 4));
        let f = CycField::new(5, 2, 2).unwrap();
        assert_eq!((f.order(), f.degree()), (20, 8));
        assert!(CycField::new(6, 3, 1).is_err());
    }

    #[test]
    fn small_cyclotomic_polys() {
        let p = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(20), p(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
        // Phi_105 has a coefficient -2
        assert!(cyclotomic_poly(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn zeta_examples() {
        let f = CycField::new(5, 1, 2).unwrap();
        assert!(f.zeta_pow(&rat(0, 1)).unwrap().is_one());
        assert!(f.zeta_pow(&rat(5, 1)).unwrap().is_one());
        let h = f.zeta_pow(&rat(1, 2)).unwrap();
        assert_eq!(f.mul(&h, &h), f.zeta_pow_int(1));
        assert!(f.zeta_pow(&rat(1, 8)).is_err());
        for m in 1..5 {
            assert!(!f.zeta_pow_int(m).is_one());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f = CycField::new(5, 1, 2).unwrap();
        assert!((CycNum::one() + CycNum::from_int(-1)).is_zero());
        assert!(f.mul(&f.zeta_pow_int(1), &f.zeta_pow_int(4)).is_one());
        let a = CycNum::one() - f.zeta_pow_int(2);
        let b = CycNum::one() - f.zeta_pow_int(4);
        let got = f.mul(&f.inv(&a).unwrap(), &b);
        assert_eq!(got, CycNum::one() + f.zeta_pow_int(2));
        assert_eq!(f.inv(&CycNum::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn brackets() {
        let f = CycField::new(5, 1, 2).unwrap();
        assert!(f.q_bracket(0).is_zero());
        assert!(f.q_bracket(5).is_zero());
        assert_eq!(f.q_bracket(1), CycNum::one() - f.zeta_pow_int(3));
        for a in -15..=15 {
            assert_eq!(f.q_bracket(a).is_zero(), a % 5 == 0);
        }
        let f = CycField::new(10, 3, 1).unwrap();
        for a in -30i64..=30 {
            assert_eq!(f.q_bracket(a).is_zero(), (2 * a) % 10 == 0);
        }
    }

    #[test]
    fn multiplicativity_window() {
        let f = CycField::new(3, 2, 3).unwrap();
        let n = f.order() as i64;
        for a in -4 * n..=4 * n {
            for b in [-7, -1, 0, 1, 5, 13] {
                let qa = rat(a, 6);
                let qb = rat(b, 6);
                let lhs = f.zeta_pow(&(&qa + &qb)).unwrap();
                let rhs = f.mul(&f.zeta_pow(&qa).unwrap(), &f.zeta_pow(&qb).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn display() {
        let f = CycField::new(5, 1, 2).unwrap();
        assert_eq!(format!("{}", CycNum::zero()), "0");
        let a = CycNum::one() - f.xi_pow(3).scale_rational(&rat(1, 2));
        assert_eq!(format!("{}", a), "1 - 1/2*x^3");
    }
}
