use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `d` must be trimmed and non-empty.
fn poly_divrem(n: &[BigRational], d: &[BigRational]) -> (Poly, Poly) {
    let mut rem: Poly = n.to_vec();
    trim(&mut rem);
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() >= d.len() {
        let shift = rem.len() - d.len();
        let c = rem.last().unwrap() / &lead;
        for (i, di) in d.iter().enumerate() {
            rem[shift + i] -= &c * di;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn cyclotomic_poly(n: usize, memo: &mut BTreeMap<usize, Poly>) -> Poly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every proper-divisor cyclotomic factor
    let mut acc: Poly = vec![BigRational::zero(); n + 1];
    acc[0] = -BigRational::one();
    acc[n] = BigRational::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let f = cyclotomic_poly(d, memo);
        let (q, r) = poly_divrem(&acc, &f);
        debug_assert!(r.is_empty());
        acc = q;
    }
    memo.insert(n, acc.clone());
    acc
}

/// `Q(zeta_n)` with its minimal polynomial `Phi_n`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    phi: Poly,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Result<Arc<Self>> {
        if order == 0 {
            return domain("cyclotomic order must be at least 1");
        }
        let phi = cyclotomic_poly(order, &mut BTreeMap::new());
        Ok(Arc::new(CyclotomicField { order, phi }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `phi(n)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Integer coefficients of `Phi_n`, ascending.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        self.phi.iter().map(|c| c.to_integer()).collect()
    }

    fn reduce(&self, mut p: Poly) -> Vec<BigRational> {
        trim(&mut p);
        if p.len() > self.degree() {
            p = poly_divrem(&p, &self.phi).1;
        }
        p.resize(self.degree(), BigRational::zero());
        p
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicNumber {
        CyclotomicNumber { field: Arc::clone(self), coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicNumber {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, m: i64) -> CyclotomicNumber {
        self.from_rational(BigRational::from_integer(BigInt::from(m)))
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> CyclotomicNumber {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        CyclotomicNumber { field: Arc::clone(self), coeffs }
    }

    /// `zeta_n^e` for any integer exponent.
    pub fn zeta_pow(self: &Arc<Self>, e: i64) -> CyclotomicNumber {
        let e = e.rem_euclid(self.order as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        CyclotomicNumber { field: Arc::clone(self), coeffs: self.reduce(p) }
    }

    /// Element from coefficients of `1, zeta, zeta^2, ...` of any length.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<BigRational>) -> CyclotomicNumber {
        CyclotomicNumber { field: Arc::clone(self), coeffs: self.reduce(coeffs) }
    }
}

/// Exact element of `Q(zeta_n)`, always reduced modulo `Phi_n`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl CyclotomicNumber {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return domain(format!(
                "cyclotomic orders differ: {} vs {}",
                self.field.order, other.field.order
            ));
        }
        Ok(())
    }

    pub fn inv(&self) -> Result<CyclotomicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (phi, a); phi is irreducible so the gcd is a unit
        let mut r0 = self.field.phi.clone();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut t0: Poly = Vec::new();
        let mut t1: Poly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = r1[0].clone();
        let scaled: Poly = t1.into_iter().map(|x| x / &c).collect();
        Ok(self.field.from_coeffs(scaled))
    }

    pub fn div(&self, other: &Self) -> Result<CyclotomicNumber> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> CyclotomicNumber {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image under `zeta -> omega` in `F_q`; `None` if a denominator vanishes mod `q`.
    pub fn to_finite_field(&self, q: u64, omega: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let mut acc: u64 = 0;
        let mut w: u64 = 1;
        for c in &self.coeffs {
            if !c.is_zero() {
                let num = (c.numer() % &qb + &qb) % &qb;
                let den = (c.denom() % &qb + &qb) % &qb;
                let den = den.to_u64()?;
                if den == 0 {
                    return None;
                }
                let inv = mod_pow(den, q - 2, q);
                let term = (num.to_u64()? as u128 * inv as u128 % q as u128) as u64;
                acc = ((acc as u128 + term as u128 * w as u128) % q as u128) as u64;
            }
            w = (w as u128 * omega as u128 % q as u128) as u64;
        }
        Some(acc)
    }
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    /// Panics on mismatched orders; see [`cyclo_add`] for the checked form.
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.order, rhs.field.order, "cyclotomic order mismatch");
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.order, rhs.field.order, "cyclotomic order mismatch");
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field.order, rhs.field.order, "cyclotomic order mismatch");
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        self.field.from_coeffs(poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub fn cyclo_add(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    x.check_same(y)?;
    Ok(x + y)
}

pub fn cyclo_sub(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    x.check_same(y)?;
    Ok(x - y)
}

pub fn cyclo_mul(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    x.check_same(y)?;
    Ok(x * y)
}

pub fn cyclo_inv(x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    x.inv()
}

pub fn cyclo_is_zero(x: &CyclotomicNumber) -> bool {
    x.is_zero()
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{a}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.field.order, self)
    }
}
