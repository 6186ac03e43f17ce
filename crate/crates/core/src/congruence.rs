//! Congruence systems `v[s^-1(i)] = m v[i] + c (mod p)` whose admissible
//! solutions are the identifying vectors fixed by a permutation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{act, Permutation};
use crate::error::{domain, Error, Result};
use crate::residue::PrimeModulus;
use crate::subgroup::{all_distinct, enumerate_subgroups, IdVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSolutionSet {
    #[serde(serialize_with = "ser_perm")]
    pub sigma: Permutation,
    pub p: u64,
    #[serde(serialize_with = "ser_vectors")]
    pub solutions: Vec<IdVector>,
    /// `(m, c)` per solution, keyed by its entries.
    pub scaling_witnesses: BTreeMap<String, (u64, u64)>,
}

fn ser_perm<S: serde::Serializer>(v: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_vectors<S: serde::Serializer>(v: &[IdVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn check_args(sigma: &Permutation, k: usize, p: PrimeModulus) -> Result<()> {
    if sigma.degree() != k + 1 {
        return domain(format!("permutation of degree {} for k={k}", sigma.degree()));
    }
    if (p.get() as usize) < k + 1 {
        return domain(format!("congruence solving needs p >= k+1, got p={p}, k={k}"));
    }
    Ok(())
}

/// The unique `(m, c)` with `v[s^-1(i)] = m v[i] + c`, if any.
pub fn scaling_witness(sigma: &Permutation, v: &[u64], p: PrimeModulus) -> Option<(u64, u64)> {
    let w = sigma.act_on(v);
    let n = v.len();
    // the last two entries of an id vector are 1 and 0
    let (i, j) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| v[i] != v[j])?;
    let m = p.mul(p.sub(w[i], w[j]), p.inv(p.sub(v[i], v[j]))?);
    let c = p.sub(w[j], p.mul(m, v[j]));
    (m != 0 && (0..n).all(|t| w[t] == p.add(p.mul(m, v[t]), c))).then_some((m, c))
}

/// Method (i): filter every identifying vector through the action.
pub fn solutions_by_enumeration(sigma: &Permutation, k: usize, p: PrimeModulus) -> Result<Vec<IdVector>> {
    check_args(sigma, k, p)?;
    let mut out = Vec::new();
    for g in enumerate_subgroups(k, p)? {
        if act(sigma, &g)? == g {
            out.push(g.id_vec().expect("admissible"));
        }
    }
    out.sort();
    Ok(out)
}

/// Solution space of `A x = b` over `Z_p`: a particular solution and a
/// nullspace basis, or `None` when inconsistent.
fn solve_mod_p(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, cols: usize, p: PrimeModulus) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        b.swap(r, piv);
        let inv = p.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        b[r] = p.mul(b[r], inv);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for t in 0..cols {
                    a[i][t] = p.sub(a[i][t], p.mul(f, a[r][t]));
                }
                b[i] = p.sub(b[i], p.mul(f, b[r]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut particular = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = b[i];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = p.neg(a[i][fc]);
            }
            v
        })
        .collect();
    Some((particular, basis))
}

/// Method (ii): for each `(m, c)` solve the linear system in the free
/// entries `v[0..k-1]` and keep solutions with distinct entries.
pub fn solutions_by_linear_systems(
    sigma: &Permutation,
    k: usize,
    p: PrimeModulus,
) -> Result<Vec<(IdVector, (u64, u64))>> {
    check_args(sigma, k, p)?;
    let n = k + 1;
    let unknowns = k - 1;
    let inv = sigma.inverse();
    let mut out = Vec::new();
    for m in 1..p.get() {
        for c in 0..p.get() {
            // row i: v[inv(i)] - m v[i] = c, with v[k-1] = 1 and v[k] = 0 moved right
            let mut a = vec![vec![0u64; unknowns]; n];
            let mut b = vec![c; n];
            for i in 0..n {
                let add = |col: usize, coef: u64, row: &mut Vec<u64>, rhs: &mut u64| {
                    if col < unknowns {
                        row[col] = p.add(row[col], coef);
                    } else if col == k - 1 {
                        *rhs = p.sub(*rhs, coef);
                    }
                };
                let (row, rhs) = (&mut a[i], &mut b[i]);
                add(inv.apply(i), 1, row, rhs);
                add(i, p.neg(m), row, rhs);
            }
            let Some((x0, basis)) = solve_mod_p(a, b, unknowns, p) else { continue };
            let total = (p.get() as u128).pow(basis.len() as u32);
            for idx in 0..total {
                let mut x = x0.clone();
                let mut rest = idx;
                for bv in &basis {
                    let t = (rest % p.get() as u128) as u64;
                    rest /= p.get() as u128;
                    for (xi, bi) in x.iter_mut().zip(bv) {
                        *xi = p.add(*xi, p.mul(t, *bi));
                    }
                }
                x.extend([1, 0]);
                if all_distinct(&x) {
                    out.push((IdVector::new(x, p)?, (m, c)));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Identifying vectors fixed by `sigma`, computed two independent ways.
pub fn stabilizer_solutions(sigma: &Permutation, k: usize, p: PrimeModulus) -> Result<CongruenceSolutionSet> {
    let filtered = solutions_by_enumeration(sigma, k, p)?;
    let solved = solutions_by_linear_systems(sigma, k, p)?;
    let from_systems: Vec<IdVector> = solved.iter().map(|(v, _)| v.clone()).collect();
    if filtered != from_systems {
        return Err(Error::Internal(format!(
            "solution methods disagree for {sigma} at p={p}: {} vs {}",
            filtered.len(),
            from_systems.len()
        )));
    }
    let mut scaling_witnesses = BTreeMap::new();
    for (v, w) in &solved {
        if scaling_witness(sigma, v.entries(), p) != Some(*w) {
            return Err(Error::Internal(format!("witness {w:?} fails for {v}")));
        }
        scaling_witnesses.insert(v.to_string(), *w);
    }
    Ok(CongruenceSolutionSet { sigma: sigma.clone(), p: p.get(), solutions: filtered, scaling_witnesses })
}

/// `"transposition"`, `"4-cycle"`, or cycle lengths joined by `x`
/// (`"2x2"`, `"3x3"`, `"2x3"`); `"identity"` for the identity.
pub fn cycle_type_label(sigma: &Permutation) -> String {
    let mut lens: Vec<usize> = sigma.cycles().iter().map(Vec::len).collect();
    lens.sort_unstable();
    match lens.as_slice() {
        [] => "identity".into(),
        [2] => "transposition".into(),
        [l] => format!("{l}-cycle"),
        _ => lens.iter().map(usize::to_string).collect::<Vec<_>>().join("x"),
    }
}

const COVERED: &[(usize, &[&str])] = &[
    (2, &["transposition", "3-cycle"]),
    (3, &["transposition", "2x2", "3-cycle", "4-cycle"]),
    (4, &["transposition", "2x2", "3-cycle", "2x3", "4-cycle", "5-cycle"]),
    (5, &["transposition", "2x2", "2x2x2", "3-cycle", "2x3", "3x3", "4-cycle", "2x4", "5-cycle", "6-cycle"]),
];

/// Closed-form count of admissible solutions for a cycle type.
///
/// `Ok(None)` when no closed form applies, which is the case at `p = k+1`:
/// all residues are then used and the counts differ from the general ones.
pub fn solution_count_formula(label: &str, k: usize, p: PrimeModulus) -> Result<Option<u64>> {
    let known = COVERED.iter().any(|(kk, ls)| *kk == k && ls.contains(&label));
    if !known {
        return Err(Error::Unsupported(format!("no congruence table row for {label:?} at k={k}")));
    }
    let p = p.get();
    if (p as usize) < k + 1 {
        return domain(format!("need p >= k+1, got p={p}, k={k}"));
    }
    if p as usize == k + 1 {
        return Ok(None);
    }
    let gate = |r: u64, v: u64| if p % r == 1 { v } else { 0 };
    let count = match (k, label) {
        (2, "transposition") => 1,
        (2, "3-cycle") => gate(3, 2),
        (3, "2x2") | (4, "2x2") => p - 3,
        (3, "3-cycle") => gate(3, 2),
        (3, "4-cycle") | (4, "4-cycle") => gate(4, 2),
        (4, "5-cycle") => gate(5, 4),
        (5, "2x2x2") => (p - 3) * (p - 5),
        (5, "3x3") => gate(3, 2 * (p - 4)),
        (5, "5-cycle") => gate(5, 4),
        (5, "6-cycle") => gate(3, 2),
        _ => 0,
    };
    Ok(Some(count))
}

/// Identifying vectors fixed by both permutations.
pub fn overlap(s1: &Permutation, s2: &Permutation, k: usize, p: PrimeModulus) -> Result<Vec<IdVector>> {
    let a = stabilizer_solutions(s1, k, p)?.solutions;
    let b = stabilizer_solutions(s2, k, p)?.solutions;
    Ok(a.into_iter().filter(|v| b.binary_search(v).is_ok()).collect())
}
