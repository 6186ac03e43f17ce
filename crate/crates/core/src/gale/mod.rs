//! Orbit point sets and their associated (Gale dual) configurations.
//!
//! A configuration of `n` points in `P^k` is stored as a `(k+1) × n`
//! matrix over `Q(zeta_N)`, one column per point. Two configurations
//! `A ⊂ P^k` and `B ⊂ P^(n-k-2)` are associated when
//! `A · diag(lambda) · Bᵀ = 0` for some `lambda` with no zero entry.

pub mod io;
pub mod linalg;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::residue::{is_prime, CyclotomicField, CyclotomicNumber, PrimeModulus};
use crate::subgroup::IdVector;
use linalg::Mat;

/// Projective coordinates of a point set, one column per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordMatrix {
    field: Arc<CyclotomicField>,
    rows: Mat,
}

impl CoordMatrix {
    pub fn new(field: Arc<CyclotomicField>, rows: Mat) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 || rows[0].is_empty() {
            return Err(Error::Domain("coordinate matrix must be non-empty".into()));
        }
        let ncols = rows[0].len();
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Domain("coordinate matrix rows differ in length".into()));
            }
            if r.iter().any(|x| x.order() != field.order()) {
                return Err(Error::Domain("entries from different cyclotomic fields".into()));
            }
        }
        if let Some(j) = (0..ncols).find(|&j| rows.iter().all(|r| r[j].is_zero())) {
            return Err(Error::Degenerate(format!("column {j} is zero")));
        }
        Ok(CoordMatrix { field, rows })
    }

    /// Monomial entries: `Some(e)` is `zeta^e`, `None` is zero.
    pub fn from_exponents(order: usize, grid: &[Vec<Option<i64>>]) -> Result<Self> {
        let field = CyclotomicField::new(order)?;
        let rows = grid
            .iter()
            .map(|r| r.iter().map(|e| e.map_or_else(|| field.zero(), |e| field.zeta_pow(e))).collect())
            .collect();
        CoordMatrix::new(field, rows)
    }

    pub fn from_ints(order: usize, grid: &[Vec<i64>]) -> Result<Self> {
        let field = CyclotomicField::new(order)?;
        let rows = grid.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        CoordMatrix::new(field, rows)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &Mat {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<CyclotomicNumber> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Monomial view: `Some` only if every entry is zero or a power of zeta.
    pub fn exponents(&self) -> Option<Vec<Vec<Option<i64>>>> {
        let n = self.order() as i64;
        let powers: Vec<CyclotomicNumber> = (0..n).map(|e| self.field.zeta_pow(e)).collect();
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        if x.is_zero() {
                            Some(None)
                        } else {
                            powers.iter().position(|z| z == x).map(|e| Some(e as i64))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Same points with columns reordered: column `j` of the result is column `perm[j]`.
    pub fn select_columns(&self, perm: &[usize]) -> Result<Self> {
        if perm.iter().any(|&j| j >= self.ncols()) {
            return Err(Error::Domain("column index out of range".into()));
        }
        let rows = self.rows.iter().map(|r| perm.iter().map(|&j| r[j].clone()).collect()).collect();
        CoordMatrix::new(self.field.clone(), rows)
    }

    pub fn rescale_column(&self, j: usize, c: &CyclotomicNumber) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("rescaling by zero".into()));
        }
        let mut rows = self.rows.clone();
        for r in rows.iter_mut() {
            r[j] = &r[j] * c;
        }
        CoordMatrix::new(self.field.clone(), rows)
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &CoordMatrix) -> Result<Self> {
        if self.nrows() != other.nrows() || self.order() != other.order() {
            return Err(Error::Domain("cannot concatenate matrices of different shape".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        CoordMatrix::new(self.field.clone(), rows)
    }
}

/// Diagonal of `Λ` in the association condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationWitness {
    lambda: Vec<CyclotomicNumber>,
}

impl AssociationWitness {
    pub fn new(lambda: Vec<CyclotomicNumber>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::Domain("empty witness".into()));
        }
        if let Some(i) = lambda.iter().position(|x| x.is_zero()) {
            return Err(Error::Domain(format!("lambda entry {i} is zero")));
        }
        Ok(AssociationWitness { lambda })
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        AssociationWitness { lambda: vec![field.one(); n] }
    }

    pub fn from_ints(field: &Arc<CyclotomicField>, signs: &[i64]) -> Result<Self> {
        AssociationWitness::new(signs.iter().map(|&x| field.from_int(x)).collect())
    }

    pub fn lambda(&self) -> &[CyclotomicNumber] {
        &self.lambda
    }
}

/// Orbit of a point under the diagonal generator `diag(zeta_p^gen[i])`.
///
/// `base[i]` is `Some(e)` for the coordinate `zeta_p^e` and `None` for zero.
/// Column `j - 1` holds the image under the `j`-th power, `j = 1..p`, so
/// the last column is the base point itself.
pub fn orbit_point_set(gen: &[u64], p: PrimeModulus, base: &[Option<i64>]) -> Result<CoordMatrix> {
    let field = CyclotomicField::new(p.get() as usize)?;
    let base: Vec<CyclotomicNumber> =
        base.iter().map(|e| e.map_or_else(|| field.zero(), |e| field.zeta_pow(e))).collect();
    orbit_point_set_general(gen, p, &base)
}

/// Orbit of the all-ones point.
pub fn identity_orbit(gen: &[u64], p: PrimeModulus) -> Result<CoordMatrix> {
    orbit_point_set(gen, p, &vec![Some(0); gen.len()])
}

/// Orbit of an arbitrary point with coordinates in `Q(zeta_p)`.
pub fn orbit_point_set_general(gen: &[u64], p: PrimeModulus, base: &[CyclotomicNumber]) -> Result<CoordMatrix> {
    if gen.len() != base.len() {
        return Err(Error::Domain("generator and base point differ in length".into()));
    }
    if gen.is_empty() {
        return Err(Error::Domain("empty generator".into()));
    }
    let field = CyclotomicField::new(p.get() as usize)?;
    if base.iter().any(|x| x.order() != field.order()) {
        return Err(Error::Domain("base point must lie in Q(zeta_p)".into()));
    }
    let support: Vec<usize> = (0..gen.len()).filter(|&i| !base[i].is_zero()).collect();
    if support.is_empty() {
        return Err(Error::Degenerate("base point is zero".into()));
    }
    let g0 = p.reduce(gen[support[0]] as i64);
    if support.iter().all(|&i| p.reduce(gen[i] as i64) == g0) {
        return Err(Error::Degenerate("generator fixes the base point".into()));
    }
    let rows = gen
        .iter()
        .zip(base)
        .map(|(&g, b)| {
            (1..=p.get())
                .map(|j| if b.is_zero() { field.zero() } else { b * &field.zeta_pow(p.mul(j % p.get(), g % p.get()) as i64) })
                .collect()
        })
        .collect();
    CoordMatrix::new(field, rows)
}

/// Union of the orbits of several base points, orbit by orbit.
pub fn multi_orbit_point_set(gen: &[u64], p: PrimeModulus, bases: &[Vec<CyclotomicNumber>]) -> Result<CoordMatrix> {
    let mut parts = bases.iter().map(|b| orbit_point_set_general(gen, p, b));
    let mut acc = parts.next().ok_or_else(|| Error::Domain("no base points".into()))??;
    for part in parts {
        acc = acc.hstack(&part?)?;
    }
    Ok(acc)
}

fn check_pair(a: &CoordMatrix, b: &CoordMatrix) -> Result<()> {
    if a.ncols() != b.ncols() {
        return Err(Error::Domain(format!("point counts differ: {} vs {}", a.ncols(), b.ncols())));
    }
    if a.nrows() + b.nrows() != a.ncols() {
        return Err(Error::Domain(format!(
            "dimensions do not complement: {} + {} rows for {} points",
            a.nrows(),
            b.nrows(),
            a.ncols()
        )));
    }
    if a.order() != b.order() {
        return Err(Error::Domain("matrices over different cyclotomic fields".into()));
    }
    Ok(())
}

/// `A · diag(lambda) · Bᵀ`.
pub fn association_product(a: &CoordMatrix, b: &CoordMatrix, w: &AssociationWitness) -> Result<Mat> {
    check_pair(a, b)?;
    if w.lambda.len() != a.ncols() || w.lambda.iter().any(|x| x.order() != a.order()) {
        return Err(Error::Domain("witness does not match the point sets".into()));
    }
    let scaled: Mat = a
        .rows
        .iter()
        .map(|r| r.iter().zip(&w.lambda).map(|(x, l)| x * l).collect())
        .collect();
    Ok(linalg::mat_mul(&scaled, &linalg::transpose(&b.rows)))
}

pub fn association_check(a: &CoordMatrix, b: &CoordMatrix, w: &AssociationWitness) -> Result<bool> {
    Ok(association_product(a, b, w)?.iter().flatten().all(|x| x.is_zero()))
}

/// Decides whether some `lambda` without zero entries associates `a` and `b`.
pub fn find_association_lambda(a: &CoordMatrix, b: &CoordMatrix) -> Result<Option<AssociationWitness>> {
    check_pair(a, b)?;
    let n = a.ncols();
    let system: Mat = (0..a.nrows())
        .flat_map(|r| (0..b.nrows()).map(move |s| (r, s)))
        .map(|(r, s)| (0..n).map(|j| &a.rows[r][j] * &b.rows[s][j]).collect())
        .collect();
    let basis = linalg::nullspace(&system, n);
    let Some(mut v) = basis.first().cloned() else { return Ok(None) };
    let zeros = |x: &[CyclotomicNumber]| -> Vec<bool> { x.iter().map(|c| c.is_zero()).collect() };
    for w in &basis[1..] {
        let target: Vec<bool> = zeros(&v).iter().zip(zeros(w)).map(|(a, b)| *a && b).collect();
        // each coordinate forbids at most one multiplier, so n + 1 tries suffice
        for c in 1..=(n as i64 + 1) {
            let cand: Vec<CyclotomicNumber> = v.iter().zip(w).map(|(x, y)| x + &y.scale(&num::BigRational::from_integer(c.into()))).collect();
            if zeros(&cand) == target {
                v = cand;
                break;
            }
        }
    }
    if v.iter().any(|x| x.is_zero()) {
        return Ok(None);
    }
    let lead = v[0].inv()?;
    Ok(Some(AssociationWitness::new(v.iter().map(|x| x * &lead).collect())?))
}

/// Sends the first `k+1` points to the fundamental simplex, giving `(I | A)`,
/// and returns `(Aᵀ | I)`.
pub fn gale_transform(points: &CoordMatrix) -> Result<CoordMatrix> {
    let d = points.nrows();
    let n = points.ncols();
    if n < d + 2 {
        return Err(Error::Domain(format!("need at least {} points in P^{}, got {n}", d + 2, d - 1)));
    }
    let frame: Mat = points.rows.iter().map(|r| r[..d].to_vec()).collect();
    let rest: Mat = points.rows.iter().map(|r| r[d..].to_vec()).collect();
    let inv = linalg::inverse(&frame).map_err(|_| Error::Pivot("first points are dependent".into()))?;
    let a = linalg::mat_mul(&inv, &rest);
    let field = points.field.clone();
    let rows = linalg::transpose(&a)
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n - d).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    CoordMatrix::new(field, rows)
}

/// Prime `q ≡ 1 (mod n)` above `2^31` and an element of order exactly `n` in `F_q`.
fn reduction_prime(n: u64) -> (u64, u64) {
    let mut q = (1u64 << 31) / n * n + 1;
    while !is_prime(q) {
        q += n;
    }
    let m = PrimeModulus::new(q).expect("q is prime");
    let mut primes = Vec::new();
    let mut r = n;
    let mut f = 2;
    while r > 1 {
        if r % f == 0 {
            primes.push(f);
            while r % f == 0 {
                r /= f;
            }
        }
        f += 1;
    }
    for x in 2..q {
        let w = m.pow(x, (q - 1) / n);
        if primes.iter().all(|&r| m.pow(w, n / r) != 1) {
            return (q, w);
        }
    }
    unreachable!("F_q has elements of every order dividing q - 1")
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First set of `k+1` columns that fails to span, if any.
pub fn general_position_witness(points: &CoordMatrix) -> Option<Vec<usize>> {
    let d = points.nrows();
    let n = points.ncols();
    if n <= d {
        return if linalg::rank(&points.rows) == n { None } else { Some((0..n).collect()) };
    }
    let (q, omega) = reduction_prime(points.order() as u64);
    let reduced: Option<Vec<Vec<u64>>> = points
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_finite_field(q, omega)).collect())
        .collect();
    let mut c: Vec<usize> = (0..d).collect();
    loop {
        let fast_nonzero = reduced.as_ref().is_some_and(|red| {
            let sub = red.iter().map(|r| c.iter().map(|&j| r[j]).collect()).collect();
            linalg::det_mod(sub, q) != 0
        });
        if !fast_nonzero {
            let sub: Mat = points.rows.iter().map(|r| c.iter().map(|&j| r[j].clone()).collect()).collect();
            if linalg::det_bareiss(&sub).is_zero() {
                return Some(c);
            }
        }
        if !next_combination(&mut c, n) {
            return None;
        }
    }
}

/// Every `k+1` of the points span `P^k`.
pub fn general_position_check(points: &CoordMatrix) -> bool {
    general_position_witness(points).is_none()
}

/// Matrix `g` with `g · a_j ∥ b_j` for every column `j`, normalized so its
/// first non-zero entry is 1.
pub fn projective_equivalence(a: &CoordMatrix, b: &CoordMatrix) -> Result<Option<CoordMatrix>> {
    let d = a.nrows();
    let n = a.ncols();
    if b.nrows() != d || b.ncols() != n || a.order() != b.order() {
        return Err(Error::Domain("point sets must have the same shape and field".into()));
    }
    if n < d + 1 {
        return Err(Error::Domain(format!("need a frame of {} points", d + 1)));
    }
    let first = |m: &CoordMatrix| -> Mat { m.rows.iter().map(|r| r[..d].to_vec()).collect() };
    let coords = |m: &CoordMatrix| -> Result<Vec<CyclotomicNumber>> {
        let inv = linalg::inverse(&first(m)).map_err(|_| Error::Pivot("frame points are dependent".into()))?;
        let c: Vec<CyclotomicNumber> = linalg::mat_mul(&inv, &m.column(d).into_iter().map(|x| vec![x]).collect())
            .into_iter()
            .map(|r| r[0].clone())
            .collect();
        if c.iter().any(|x| x.is_zero()) {
            return Err(Error::Pivot("frame is degenerate".into()));
        }
        Ok(c)
    };
    let alpha = coords(a)?;
    let beta = coords(b)?;
    let field = a.field.clone();
    let mut mb = first(b);
    for r in mb.iter_mut() {
        for (i, x) in r.iter_mut().enumerate() {
            *x = &*x * &beta[i].div(&alpha[i])?;
        }
    }
    let mut g = linalg::mat_mul(&mb, &linalg::inverse(&first(a))?);
    let lead = g.iter().flatten().find(|x| !x.is_zero()).expect("g is invertible").inv()?;
    for x in g.iter_mut().flatten() {
        *x = &*x * &lead;
    }
    let image = linalg::mat_mul(&g, &a.rows);
    for j in d + 1..n {
        // g a_j and b_j are parallel iff all 2x2 minors vanish
        for r in 0..d {
            for s in r + 1..d {
                let m = &(&image[r][j] * &b.rows[s][j]) - &(&image[s][j] * &b.rows[r][j]);
                if !m.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(CoordMatrix::new(field, g)?))
}

fn check_generator_source(h: &IdVector) -> Result<(PrimeModulus, usize)> {
    let p = h.p();
    let a = h.dim();
    if !h.is_admissible() {
        return Err(Error::Domain("identifying vector is not admissible".into()));
    }
    if a < 2 || a as u64 + 2 > p.get() {
        return Err(Error::Domain(format!("need 2 <= a <= p - 2, got a = {a}, p = {p}")));
    }
    Ok((p, a))
}

/// Negated complement of the entries of `h`, in decreasing order.
pub fn associated_generator(h: &IdVector) -> Result<Vec<u64>> {
    let (p, _) = check_generator_source(h)?;
    let mut out: Vec<u64> = (0..p.get()).filter(|x| !h.entries().contains(x)).map(|x| p.neg(x)).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Generator and seed points for the association of `l` orbits of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockExpansion {
    pub p: PrimeModulus,
    pub source_generator: Vec<u64>,
    pub generator: Vec<u64>,
    /// `t` copies of the negated complement.
    pub t: usize,
    /// `u` copies of the negated entries of `h`.
    pub u: usize,
    pub source_seeds: Vec<Vec<i64>>,
    pub target_seeds: Vec<Vec<i64>>,
}

impl BlockExpansion {
    fn points(&self, gen: &[u64], seeds: &[Vec<i64>]) -> Result<CoordMatrix> {
        let field = CyclotomicField::new(self.p.get() as usize)?;
        let bases: Vec<Vec<CyclotomicNumber>> =
            seeds.iter().map(|s| s.iter().map(|&x| field.from_int(x)).collect()).collect();
        multi_orbit_point_set(gen, self.p, &bases)
    }

    /// The `l` orbits of `h`, `l · p` points in `P^(a-1)`.
    pub fn source_points(&self) -> Result<CoordMatrix> {
        self.points(&self.source_generator, &self.source_seeds)
    }

    /// The `l` orbits of the expanded generator, `l · p` points in `P^(lp-a-1)`.
    pub fn target_points(&self) -> Result<CoordMatrix> {
        self.points(&self.generator, &self.target_seeds)
    }
}

/// Associates `l` orbits of `h` with `l` orbits of one diagonal generator.
///
/// Source seeds are the all-ones point and `(r-1)(a-1-i) + 1` for orbit
/// `r ≥ 2`. The first target seed carries ones on the first copy of the
/// negated complement and minus the other source seeds on the `z` blocks;
/// target seed `r ≥ 2` carries ones on copy `r` and on `z` block `r - 1`.
pub fn block_expand(h: &IdVector, l: usize) -> Result<BlockExpansion> {
    let (p, a) = check_generator_source(h)?;
    if l == 0 {
        return Err(Error::Domain("need at least one orbit".into()));
    }
    let neg_k = associated_generator(h)?;
    let z: Vec<u64> = h.entries().iter().map(|&x| p.neg(x)).collect();
    let u = (l * p.get() as usize - a) / p.get() as usize;
    let t = u + 1;
    let mut generator = Vec::with_capacity(l * p.get() as usize - a);
    for _ in 0..t {
        generator.extend_from_slice(&neg_k);
    }
    for _ in 0..u {
        generator.extend_from_slice(&z);
    }
    let source_seeds: Vec<Vec<i64>> =
        (0..l).map(|r| (0..a).map(|i| (r * (a - 1 - i) + 1) as i64).collect()).collect();
    let c = neg_k.len();
    let target_seeds = (0..l)
        .map(|r| {
            let mut seed = vec![0i64; generator.len()];
            seed[r * c..(r + 1) * c].fill(1);
            for s in 0..u {
                let block = &mut seed[t * c + s * a..t * c + (s + 1) * a];
                if r == 0 {
                    for (x, &y) in block.iter_mut().zip(&source_seeds[s + 1]) {
                        *x = -y;
                    }
                } else if s + 1 == r {
                    block.fill(1);
                }
            }
            seed
        })
        .collect();
    Ok(BlockExpansion { p, source_generator: h.entries().to_vec(), generator, t, u, source_seeds, target_seeds })
}
