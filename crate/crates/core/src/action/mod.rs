//! The symmetric group permuting coordinates of diagonal subgroups.
//!
//! Conjugating a diagonal matrix by a permutation matrix permutes its
//! entries. With `(s v)[s(i)] = v[i]` this is a left action, and two
//! subgroups are conjugate in `PGL` exactly when they lie in one orbit.

pub mod catalog;
mod permutation;

pub use catalog::{contains_conjugate, stabilizer_label};
pub use permutation::{all_permutations, generate_group, Permutation};

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::residue::{factorial, PrimeModulus};
use crate::subgroup::{canonicalize, canonicalize_in_place, enumerate_subgroups, subgroup_count, DiagonalSubgroup};

/// Default bound on the number of subgroups a classification may expand.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Stabilizers larger than this are reported by order only.
pub const STABILIZER_LIST_LIMIT: u128 = 1 << 16;

/// `PGLCENSUS_BUDGET` if set and valid, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("PGLCENSUS_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub fn act(sigma: &Permutation, g: &DiagonalSubgroup) -> Result<DiagonalSubgroup> {
    if sigma.degree() != g.dim() {
        return domain(format!("permutation degree {} on a {}-vector", sigma.degree(), g.dim()));
    }
    DiagonalSubgroup::from_vector(&sigma.act_on(g.canon()), g.p())
}

fn act_canon(sigma: &Permutation, v: &[u64], p: PrimeModulus) -> Vec<u64> {
    canonicalize(&sigma.act_on(v), p).expect("permutations keep vectors non-constant")
}

/// Affine maps `x -> a x + b` of `Z_p` sending each value class of `v`
/// onto one of the same size, i.e. the ways `s v = m v + c` can hold.
fn compatible_affine_maps(v: &[u64], p: PrimeModulus) -> Vec<(u64, u64)> {
    let pp = p.get();
    let mut size = vec![0usize; pp as usize];
    for &x in v {
        size[x as usize] += 1;
    }
    let mut out = Vec::new();
    for a in 1..pp {
        for b in 0..pp {
            if (0..pp).all(|x| size[x as usize] == size[p.add(p.mul(a, x), b) as usize]) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn stabilizer_order(g: &DiagonalSubgroup) -> u128 {
    let v = g.canon();
    let mut size = vec![0u64; g.p().get() as usize];
    for &x in v {
        size[x as usize] += 1;
    }
    let per_map: u128 = size.iter().map(|&s| factorial(s)).product();
    compatible_affine_maps(v, g.p()).len() as u128 * per_map
}

/// Elements of the stabilizer, sorted.
///
/// Built directly: `s` fixes the subgroup iff it carries the positions
/// holding value `x` onto those holding `f(x)` for an affine `f` that
/// preserves class sizes, so the stabilizer is a union of products of
/// symmetric groups on the value classes.
pub fn stabilizer(g: &DiagonalSubgroup) -> Vec<Permutation> {
    let v = g.canon();
    let n = v.len();
    let p = g.p();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); p.get() as usize];
    for (i, &x) in v.iter().enumerate() {
        classes[x as usize].push(i);
    }
    let mut out = Vec::new();
    for (a, b) in compatible_affine_maps(v, p) {
        let pairs: Vec<(&[usize], &[usize])> = (0..p.get())
            .filter(|&x| !classes[x as usize].is_empty())
            .map(|x| (classes[x as usize].as_slice(), classes[p.add(p.mul(a, x), b) as usize].as_slice()))
            .collect();
        let mut images = vec![0usize; n];
        extend_bijections(&pairs, 0, &mut images, &mut out);
    }
    out.sort();
    out
}

fn extend_bijections(
    pairs: &[(&[usize], &[usize])],
    idx: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if idx == pairs.len() {
        out.push(Permutation::from_images(images.clone()).expect("bijection"));
        return;
    }
    let (src, dst) = pairs[idx];
    for perm in all_permutations(src.len()) {
        for (i, &s) in src.iter().enumerate() {
            images[s] = dst[perm.apply(i)];
        }
        extend_bijections(pairs, idx + 1, images, out);
    }
}

/// Stabilizer by scanning all of `S_n`; the reference for [`stabilizer`].
pub fn stabilizer_exhaustive(g: &DiagonalSubgroup) -> Vec<Permutation> {
    all_permutations(g.dim())
        .filter(|s| act_canon(s, g.canon(), g.p()) == g.canon())
        .collect()
}

fn orbit_generators(n: usize) -> Vec<Permutation> {
    let mut swap: Vec<usize> = (0..n).collect();
    if n >= 2 {
        swap.swap(0, 1);
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![
        Permutation::from_images(swap).expect("bijection"),
        Permutation::from_images(cycle).expect("bijection"),
    ]
}

/// The orbit under `S_n`, sorted.
pub fn orbit(g: &DiagonalSubgroup) -> Vec<DiagonalSubgroup> {
    let mut seen = Visited::new(g.dim(), g.p());
    let mut out = Vec::new();
    let gens = orbit_generators(g.dim());
    expand_orbit(g.canon(), g.p(), &gens, &mut seen, |c| out.push(DiagonalSubgroup::from_canonical(c.to_vec(), g.p())));
    out.sort();
    out
}

/// Breadth-first closure under a transposition and an n-cycle, which
/// generate `S_n`. Returns the orbit size.
fn expand_orbit(
    start: &[u64],
    p: PrimeModulus,
    gens: &[Permutation],
    seen: &mut Visited,
    mut visit: impl FnMut(&[u64]),
) -> u128 {
    if !seen.insert(start) {
        return 0;
    }
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut count = 0u128;
    let mut w = vec![0u64; start.len()];
    while let Some(v) = queue.pop_front() {
        count += 1;
        visit(&v);
        for s in gens {
            for (i, &x) in v.iter().enumerate() {
                w[s.apply(i)] = x;
            }
            canonicalize_in_place(&mut w, p);
            if seen.insert(&w) {
                queue.push_back(w.clone());
            }
        }
    }
    count
}

/// Insert-if-absent set of canonical vectors, packed into `u128` when the
/// vector fits.
enum Visited {
    Packed { bits: u32, set: HashSet<u128> },
    Wide(HashSet<Vec<u64>>),
}

impl Visited {
    fn new(n: usize, p: PrimeModulus) -> Self {
        let bits = 64 - (p.get() - 1).leading_zeros().min(63);
        if bits as usize * n <= 128 {
            Visited::Packed { bits, set: HashSet::new() }
        } else {
            Visited::Wide(HashSet::new())
        }
    }

    fn insert(&mut self, v: &[u64]) -> bool {
        match self {
            Visited::Packed { bits, set } => {
                set.insert(v.iter().fold(0u128, |acc, &x| (acc << *bits) | x as u128))
            }
            Visited::Wide(set) => set.insert(v.to_vec()),
        }
    }
}

/// One conjugacy class.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    #[serde(serialize_with = "ser_display")]
    pub representative: DiagonalSubgroup,
    pub orbit_size: u128,
    pub stabilizer_order: u128,
    /// Empty when the stabilizer exceeds [`STABILIZER_LIST_LIMIT`].
    #[serde(serialize_with = "ser_perms")]
    pub stabilizer: Vec<Permutation>,
    pub stabilizer_label: String,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_perms<S: serde::Serializer>(v: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// Report for the class of a single subgroup.
pub fn report(g: &DiagonalSubgroup) -> OrbitReport {
    let n = g.dim();
    let order = stabilizer_order(g);
    let (stab, label) = if order <= STABILIZER_LIST_LIMIT {
        let stab = stabilizer(g);
        let label = stabilizer_label(&stab, n);
        (stab, label)
    } else {
        (Vec::new(), catalog::fallback_label(order))
    };
    OrbitReport {
        representative: g.clone(),
        orbit_size: factorial(n as u64) / order,
        stabilizer_order: order,
        stabilizer: stab,
        stabilizer_label: label,
    }
}

pub fn classify(k: usize, p: PrimeModulus) -> Result<Vec<OrbitReport>> {
    classify_with_budget(k, p, budget_from_env())
}

/// Partitions all admissible subgroups into conjugacy classes. The
/// representative of each class is its first member in enumeration order;
/// reports are sorted by orbit size, then representative.
pub fn classify_with_budget(k: usize, p: PrimeModulus, budget: u128) -> Result<Vec<OrbitReport>> {
    let total = subgroup_count(k, p)?;
    if total > budget {
        return Err(Error::Budget { needed: total, bound: budget });
    }
    let n = k + 1;
    let admissible = p.get() as usize >= n;
    let full = factorial(n as u64);
    let mut seen = Visited::new(n, p);
    let mut labels: HashMap<Vec<Permutation>, String> = HashMap::new();
    let mut reports = Vec::new();
    let mut covered = 0u128;
    let gens = orbit_generators(n);
    for g in enumerate_subgroups(k, p)? {
        let size = expand_orbit(g.canon(), p, &gens, &mut seen, |_| {});
        if size == 0 {
            continue;
        }
        covered += size;
        let order = full / size;
        let (stab, label) = if order <= STABILIZER_LIST_LIMIT {
            let stab = stabilizer(&g);
            debug_assert_eq!(stab.len() as u128, order);
            let label = labels.entry(stab.clone()).or_insert_with(|| stabilizer_label(&stab, n)).clone();
            (stab, label)
        } else {
            (Vec::new(), catalog::fallback_label(order))
        };
        reports.push(OrbitReport {
            representative: g,
            orbit_size: size,
            stabilizer_order: order,
            stabilizer: stab,
            stabilizer_label: label,
        });
    }
    if covered != total {
        return Err(Error::Internal(format!("orbits cover {covered} of {total} subgroups")));
    }
    let key = |r: &OrbitReport| {
        let rep = if admissible {
            r.representative.id_vec().map(|v| v.entries().to_vec())
        } else {
            None
        };
        (r.orbit_size, rep.unwrap_or_else(|| r.representative.canon().to_vec()))
    };
    reports.sort_by_cached_key(key);
    Ok(reports)
}
