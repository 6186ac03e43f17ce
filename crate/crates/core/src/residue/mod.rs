//! Arithmetic in Z_p, a few counting functions, and exact cyclotomic fields.

mod cyclotomic;

pub use cyclotomic::{
    cyclo_add, cyclo_inv, cyclo_is_zero, cyclo_mul, cyclo_sub, CyclotomicField, CyclotomicNumber,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest modulus accepted by [`solve_univariate_congruence`].
pub const DEFAULT_SOLVE_BOUND: u64 = 1000;

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(PrimeModulus { p })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `n (n-1) ... (n-r+1)`.
pub fn falling_factorial(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return domain(format!("falling factorial needs r <= n, got n={n}, r={r}"));
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::Domain(format!("falling factorial ({n}, {r}) overflows")))?;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Multiplicative order of `x` mod `p`; `None` for zero.
pub fn multiplicative_order(x: u64, p: PrimeModulus) -> Option<u64> {
    let x = x % p.get();
    if x == 0 {
        return None;
    }
    let mut y = x;
    let mut ord = 1;
    while y != 1 {
        y = p.mul(y, x);
        ord += 1;
    }
    Some(ord)
}

/// Residues `x` with `x^r = 1`, or of exact order `r` when `primitive_only`.
pub fn roots_of_unity_mod_p(r: u64, p: PrimeModulus, primitive_only: bool) -> Result<BTreeSet<u64>> {
    if r == 0 {
        return domain("root-of-unity order must be at least 1");
    }
    Ok((1..p.get())
        .filter(|&x| {
            if primitive_only {
                multiplicative_order(x, p) == Some(r)
            } else {
                p.pow(x, r) == 1
            }
        })
        .collect())
}

/// Roots of `poly` (coefficients in ascending degree) by exhaustive evaluation.
pub fn solve_univariate_congruence(poly: &[i64], p: PrimeModulus) -> Result<BTreeSet<u64>> {
    solve_univariate_congruence_bounded(poly, p, DEFAULT_SOLVE_BOUND)
}

pub fn solve_univariate_congruence_bounded(
    poly: &[i64],
    p: PrimeModulus,
    bound: u64,
) -> Result<BTreeSet<u64>> {
    if p.get() > bound {
        return domain(format!("modulus {p} exceeds the exhaustive-search bound {bound}"));
    }
    let coeffs: Vec<u64> = poly.iter().map(|&c| p.reduce(c)).collect();
    if coeffs.iter().all(|&c| c == 0) {
        return domain("zero polynomial modulo p");
    }
    Ok((0..p.get())
        .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, x), c)) == 0)
        .collect())
}
