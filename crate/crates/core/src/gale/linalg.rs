//! Dense exact linear algebra over a cyclotomic field.

use crate::error::{Error, Result};
use crate::residue::CyclotomicNumber;

pub type Mat = Vec<Vec<CyclotomicNumber>>;

/// Row-reduces in place; returns pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for t in c..cols {
                    let d = &f * &m[r][t];
                    m[i][t] = &m[i][t] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<CyclotomicNumber>> {
    let Some(field) = m.first().and_then(|r| r.first()).map(|x| x.field().clone()) else {
        return Vec::new();
    };
    let mut red = m.clone();
    let pivots = rref(&mut red);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&red[i][fc];
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix.
pub fn inverse(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Pivot("matrix is singular".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let field = a[0][0].field().clone();
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, t| {
                        if row[t].is_zero() || b[t][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[t] * &b[t][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant by Bareiss elimination; each division is exact.
pub fn det_bareiss(m: &Mat) -> CyclotomicNumber {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut a = m.clone();
    let mut prev = field.one();
    let mut sign = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return field.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div(&prev).expect("Bareiss divisor is a nonzero pivot");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Determinant over `F_q`.
pub fn det_mod(mut a: Vec<Vec<u64>>, q: u64) -> u64 {
    let n = a.len();
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % q as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else { return 0 };
        if piv != c {
            a.swap(piv, c);
            det = (q - det) % q;
        }
        det = mulm(det, a[c][c]);
        let inv = powm(a[c][c], q - 2);
        for i in c + 1..n {
            if a[i][c] != 0 {
                let f = mulm(a[i][c], inv);
                for j in c..n {
                    a[i][j] = (a[i][j] + q - mulm(f, a[c][j])) % q;
                }
            }
        }
    }
    det
}
