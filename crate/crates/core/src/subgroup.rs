//! Exponent vectors of diagonal subgroups of order `p` and their
//! enumeration.
//!
//! A generator `diag(e^v_0, ..., e^v_k)` is determined by `v` in `Z_p^(k+1)`;
//! the subgroup it generates is the line through `v` modulo the all-ones
//! vector, so `v` and `m*v + c` (`m != 0`) describe the same subgroup.
//!
//! Two representatives are used. The identifying vector ends in `1, 0`
//! and exists whenever the last two entries differ. The canonical vector
//! is the lexicographic minimum of `{m*v + c}` and exists for every
//! non-constant `v`, which is what the block regime (`p < k+1`, repeated
//! entries) needs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::residue::{binomial, factorial, falling_factorial, PrimeModulus};

/// Exponent vector normalized to end in `1, 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdVector {
    p: PrimeModulus,
    entries: Vec<u64>,
}

impl IdVector {
    pub fn new(entries: Vec<u64>, p: PrimeModulus) -> Result<Self> {
        let n = entries.len();
        if n < 2 {
            return domain("identifying vector needs at least two entries");
        }
        if entries.iter().any(|&x| x >= p.get()) {
            return domain(format!("entries must be residues below {p}"));
        }
        if entries[n - 1] != 0 || entries[n - 2] != 1 {
            return domain("identifying vector must end in 1, 0");
        }
        Ok(IdVector { p, entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Pairwise distinct entries.
    pub fn is_admissible(&self) -> bool {
        all_distinct(&self.entries)
    }

    pub fn subgroup(&self) -> DiagonalSubgroup {
        DiagonalSubgroup::from_vector(&self.entries, self.p).expect("id vectors are never constant")
    }
}

impl fmt::Display for IdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_residues(&self.entries))
    }
}

/// Order-`p` diagonal subgroup, held by its canonical vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalSubgroup {
    p: PrimeModulus,
    canon: Vec<u64>,
}

impl DiagonalSubgroup {
    pub fn from_vector(raw: &[u64], p: PrimeModulus) -> Result<Self> {
        Ok(DiagonalSubgroup { p, canon: canonicalize(raw, p)? })
    }

    /// Trusts that `canon` is already canonical.
    pub(crate) fn from_canonical(canon: Vec<u64>, p: PrimeModulus) -> Self {
        debug_assert_eq!(canonicalize(&canon, p).as_ref(), Ok(&canon));
        DiagonalSubgroup { p, canon }
    }

    pub fn canon(&self) -> &[u64] {
        &self.canon
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.canon.len()
    }

    pub fn id_vec(&self) -> Option<IdVector> {
        normalize(&self.canon, self.p).ok()
    }

    pub fn is_admissible(&self) -> bool {
        all_distinct(&self.canon)
    }
}

impl fmt::Display for DiagonalSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id_vec() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str(&format_residues(&self.canon)),
        }
    }
}

pub(crate) fn all_distinct(v: &[u64]) -> bool {
    let mut seen = v.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

pub fn format_residues(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `"4,2,1,0"`; negative entries are reduced mod `p`.
pub fn parse_residues(s: &str, p: PrimeModulus) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map(|x| p.reduce(x))
                .map_err(|_| Error::Parse(format!("bad residue {t:?} in {s:?}")))
        })
        .collect()
}

fn check_nonconstant(raw: &[u64]) -> Result<()> {
    match raw.first() {
        None => domain("empty vector"),
        Some(&x0) if raw.iter().all(|&x| x == x0) => Err(Error::TrivialClass),
        _ => Ok(()),
    }
}

/// Shift so the last entry is 0, then scale so the second-to-last is 1.
pub fn normalize(raw: &[u64], p: PrimeModulus) -> Result<IdVector> {
    let raw: Vec<u64> = raw.iter().map(|&x| x % p.get()).collect();
    check_nonconstant(&raw)?;
    let n = raw.len();
    if n < 2 || raw[n - 1] == raw[n - 2] {
        return Err(Error::Normalization(format!(
            "last two entries of {} coincide",
            format_residues(&raw)
        )));
    }
    let shift = raw[n - 1];
    let m = p.inv(p.sub(raw[n - 2], shift)).expect("nonzero");
    let entries = raw.iter().map(|&x| p.mul(m, p.sub(x, shift))).collect();
    IdVector::new(entries, p)
}

/// Lexicographic minimum of `{m*raw + c}`.
///
/// The minimum starts with `0` (choose `c`), is zero up to the first index
/// `j` where `raw` differs from `raw[0]`, and then is `1` at `j`, which
/// pins `m`. So it is computed from that single pair.
pub fn canonicalize(raw: &[u64], p: PrimeModulus) -> Result<Vec<u64>> {
    let mut v: Vec<u64> = raw.iter().map(|&x| x % p.get()).collect();
    check_nonconstant(&v)?;
    canonicalize_in_place(&mut v, p);
    Ok(v)
}

/// [`canonicalize`] on reduced, non-constant input without allocating.
pub(crate) fn canonicalize_in_place(v: &mut [u64], p: PrimeModulus) {
    let x0 = v[0];
    let xj = *v.iter().find(|&&x| x != x0).expect("non-constant");
    let m = p.inv(p.sub(xj, x0)).expect("nonzero");
    for x in v.iter_mut() {
        *x = p.mul(m, p.sub(*x, x0));
    }
}

/// Multiplicity pattern forced on an admissible generator when `p < k+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    pub p: PrimeModulus,
    pub k: usize,
    /// `(k+1) mod p`.
    pub a: u64,
    pub l: usize,
    /// One representative assignment: residues `0..a` repeat `l` times,
    /// the rest `l-1` times. Any relabelling of residues is equivalent.
    pub multiplicities: BTreeMap<u64, usize>,
}

impl BlockProfile {
    pub fn new(k: usize, p: PrimeModulus) -> Result<Self> {
        let n = k + 1;
        let pp = p.get() as usize;
        if pp > n {
            return domain(format!("block profile needs p <= k+1, got p={p}, k+1={n}"));
        }
        let a = (n % pp) as u64;
        let l = if a == 0 { n / pp } else { (n - a as usize) / pp + 1 };
        let multiplicities = (0..p.get())
            .map(|r| (r, if r < a || a == 0 { l } else { l - 1 }))
            .collect();
        Ok(BlockProfile { p, k, a, l, multiplicities })
    }

    /// Sorted multiplicities of a vector equal the profile's.
    pub fn matches(&self, v: &[u64]) -> bool {
        let mut counts = vec![0usize; self.p.get() as usize];
        for &x in v {
            match counts.get_mut(x as usize) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        let mut want: Vec<usize> = self.multiplicities.values().copied().collect();
        counts.sort_unstable();
        want.sort_unstable();
        counts == want
    }

    /// Number of distinct subgroups with this pattern.
    pub fn subgroup_count(&self) -> u128 {
        let p = self.p.get();
        let lf = factorial(self.l as u64);
        let lf1 = factorial(self.l as u64 - 1);
        let a = if self.a == 0 { p } else { self.a };
        let vectors = binomial(p, a) * factorial(self.k as u64 + 1)
            / (lf.pow(a as u32) * lf1.pow((p - a) as u32));
        // the affine group acts freely on non-constant vectors
        vectors / (p as u128 * (p as u128 - 1))
    }
}

/// Number of subgroups [`enumerate_subgroups`] yields.
pub fn subgroup_count(k: usize, p: PrimeModulus) -> Result<u128> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    if p.get() as usize >= k + 1 {
        falling_factorial(p.get() - 2, k as u64 - 1)
    } else {
        Ok(BlockProfile::new(k, p)?.subgroup_count())
    }
}

enum Mode {
    Admissible,
    Block { l: usize, a: usize },
}

/// Lexicographic backtracking over exponent vectors.
pub struct SubgroupIter {
    p: PrimeModulus,
    len: usize,
    mode: Mode,
    v: Vec<u64>,
    counts: Vec<usize>,
    full: usize,
    started: bool,
    done: bool,
}

impl SubgroupIter {
    fn allowed(&self, x: u64) -> bool {
        let c = self.counts[x as usize];
        match self.mode {
            Mode::Admissible => x >= 2 && c == 0,
            Mode::Block { l, a } => {
                if self.v.is_empty() && x != 0 {
                    return false;
                }
                if x > 1 && self.v.iter().all(|&y| y == 0) {
                    return false;
                }
                if a == 0 {
                    c < l
                } else {
                    c + 1 < l || (c + 1 == l && self.full < a)
                }
            }
        }
    }

    fn push(&mut self, x: u64) {
        self.counts[x as usize] += 1;
        if let Mode::Block { l, .. } = self.mode {
            if self.counts[x as usize] == l {
                self.full += 1;
            }
        }
        self.v.push(x);
    }

    fn pop(&mut self) -> Option<u64> {
        let x = self.v.pop()?;
        if let Mode::Block { l, .. } = self.mode {
            if self.counts[x as usize] == l {
                self.full -= 1;
            }
        }
        self.counts[x as usize] -= 1;
        Some(x)
    }

    fn search(&mut self, mut start: u64) -> bool {
        loop {
            if self.v.len() == self.len {
                return true;
            }
            match (start..self.p.get()).find(|&x| self.allowed(x)) {
                Some(x) => {
                    self.push(x);
                    start = 0;
                }
                None => match self.pop() {
                    Some(x) => start = x + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for SubgroupIter {
    type Item = DiagonalSubgroup;

    fn next(&mut self) -> Option<DiagonalSubgroup> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.search(0)
        } else {
            match self.pop() {
                Some(x) => self.search(x + 1),
                None => false,
            }
        };
        if !found {
            self.done = true;
            return None;
        }
        Some(match self.mode {
            Mode::Admissible => {
                let mut raw = self.v.clone();
                raw.extend([1, 0]);
                DiagonalSubgroup::from_vector(&raw, self.p).expect("non-constant")
            }
            Mode::Block { .. } => DiagonalSubgroup::from_canonical(self.v.clone(), self.p),
        })
    }
}

/// All admissible subgroups: one per identifying vector (lexicographic) when
/// `p >= k+1`, else one per canonical vector matching the block profile.
pub fn enumerate_subgroups(k: usize, p: PrimeModulus) -> Result<SubgroupIter> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let pp = p.get() as usize;
    let (len, mode) = if pp >= k + 1 {
        (k - 1, Mode::Admissible)
    } else {
        let prof = BlockProfile::new(k, p)?;
        (k + 1, Mode::Block { l: prof.l, a: prof.a as usize })
    };
    Ok(SubgroupIter {
        p,
        len,
        mode,
        v: Vec::with_capacity(len),
        counts: vec![0; pp],
        full: 0,
        started: false,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1, 2, 0], pm(5)).unwrap().entries(), &[3, 1, 0]);
        assert_eq!(normalize(&[0, 2, 1], pm(5)).unwrap().entries(), &[4, 1, 0]);
        assert_eq!(normalize(&[4, 2, 1, 0], pm(11)).unwrap().entries(), &[4, 2, 1, 0]);
        assert!(matches!(normalize(&[1, 0, 0], pm(5)), Err(Error::Normalization(_))));
        assert_eq!(normalize(&[3, 3, 3], pm(5)), Err(Error::TrivialClass));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&[2, 1, 0], pm(5)).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            canonicalize(&[4, 2, 1, 0], pm(11)).unwrap(),
            canonicalize(&[8, 4, 2, 0], pm(11)).unwrap()
        );
        assert_eq!(canonicalize(&[2, 2, 1, 1, 0, 0], pm(3)).unwrap(), vec![0, 0, 1, 1, 2, 2]);
        assert_eq!(canonicalize(&[1, 1], pm(3)), Err(Error::TrivialClass));
    }

    #[test]
    fn enumeration_examples() {
        let ids: Vec<String> =
            enumerate_subgroups(2, pm(5)).unwrap().map(|g| g.to_string()).collect();
        assert_eq!(ids, vec!["2,1,0", "3,1,0", "4,1,0"]);
        assert_eq!(enumerate_subgroups(3, pm(11)).unwrap().count(), 72);
        let one: Vec<String> =
            enumerate_subgroups(2, pm(3)).unwrap().map(|g| g.to_string()).collect();
        assert_eq!(one, vec!["2,1,0"]);
    }

    #[test]
    fn block_profiles() {
        let b = BlockProfile::new(6, pm(5)).unwrap();
        assert_eq!((b.a, b.l), (2, 2));
        assert_eq!(b.multiplicities.values().sum::<usize>(), 7);
        let b = BlockProfile::new(9, pm(5)).unwrap();
        assert_eq!((b.a, b.l), (0, 2));
        assert!(b.multiplicities.values().all(|&m| m == 2));
        for (k1, p, n) in [(7usize, 5u64, 630u128), (8, 5, 2520), (9, 7, 45360), (10, 7, 378000), (12, 5, 831600)] {
            let prof = BlockProfile::new(k1 - 1, pm(p)).unwrap();
            assert_eq!(prof.subgroup_count(), n, "({k1},{p})");
        }
        assert_eq!(enumerate_subgroups(6, pm(5)).unwrap().count(), 630);
        assert_eq!(enumerate_subgroups(5, pm(3)).unwrap().count(), subgroup_count(5, pm(3)).unwrap() as usize);
    }

    #[test]
    fn id_vec_roundtrip() {
        for g in enumerate_subgroups(3, pm(7)).unwrap() {
            let v = g.id_vec().unwrap();
            assert!(v.is_admissible());
            assert_eq!(v.subgroup(), g);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_residues("4, 2,1,-1", pm(11)).unwrap(), vec![4, 2, 1, 10]);
        assert!(parse_residues("4,x", pm(11)).is_err());
    }
}
