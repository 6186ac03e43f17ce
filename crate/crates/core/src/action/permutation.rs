use std::fmt;

use crate::error::{Error, Result};

/// Permutation of `{0, .., n-1}`, written 1-indexed in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Cycles given 1-indexed.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::Domain(format!("point {x} outside 1..{n}")));
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(Error::Domain(format!("point {x} repeated in cycles")));
                }
                let y = cycle[(idx + 1) % cycle.len()];
                images[x - 1] = y - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Accepts `"(1 3)(2 4)"`, compact `"(13)(24)"` (degree at most 9),
    /// and `"e"` or `"()"` for the identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t == "e" || t == "()" || t.is_empty() {
            return Ok(Permutation::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad point {x:?} in {s:?}"))))
                    .collect::<Result<_>>()?
            } else {
                if n > 9 {
                    return Err(Error::Parse(format!("compact cycle notation needs degree <= 9: {s:?}")));
                }
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad point {c:?} in {s:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(&cycles, n)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `tau * self * tau^-1`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn pow(&self, e: usize) -> Permutation {
        (0..e).fold(Permutation::identity(self.degree()), |acc, _| acc.compose(self))
    }

    /// Non-trivial cycles, each starting at its smallest point, 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of all cycles including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().map(Vec::len).fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// `"(13)(24)"` style for degree at most 9, spaced otherwise.
    pub fn to_compact(&self) -> String {
        if self.degree() > 9 {
            return self.to_string();
        }
        let cs = self.cycles();
        if cs.is_empty() {
            return "e".into();
        }
        cs.iter()
            .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<String>()))
            .collect()
    }

    /// Vector permuted so that entry `i` moves to position `sigma(i)`.
    pub fn act_on<T: Copy>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.degree(), v.len(), "degree mismatch");
        let mut out = v.to_vec();
        for (i, &x) in v.iter().enumerate() {
            out[self.images[i]] = x;
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("e");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of degree `n` in lexicographic order of images.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let v = cur.as_mut().unwrap();
        // next lexicographic permutation
        match (1..n).rev().find(|&i| v[i - 1] < v[i]) {
            None => cur = None,
            Some(i) => {
                let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
                v.swap(i - 1, j);
                v[i..].reverse();
            }
        }
        Some(Permutation { images: out })
    })
}

/// Closure of a generating set, sorted.
pub fn generate_group(gens: &[Permutation], n: usize) -> Vec<Permutation> {
    let mut elems = vec![Permutation::identity(n)];
    let mut seen: std::collections::HashSet<Permutation> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = g.compose(&elems[i]);
            if seen.insert(h.clone()) {
                elems.push(h);
            }
        }
        i += 1;
    }
    elems.sort();
    elems
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let a = Permutation::parse("(1 3)(2 4)", 4).unwrap();
        let b = Permutation::parse("(13)(24)", 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1 3)(2 4)");
        assert_eq!(a.to_compact(), "(13)(24)");
        assert_eq!(Permutation::parse("e", 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(15)", 4).is_err());
        assert!(Permutation::parse("1 2", 4).is_err());
    }

    #[test]
    fn composition_convention() {
        // (12)(23) applies (23) first: 1->1->2, 2->3->3, 3->2->1
        let s = Permutation::parse("(12)", 3).unwrap();
        let t = Permutation::parse("(23)", 3).unwrap();
        assert_eq!(s.compose(&t), Permutation::parse("(123)", 3).unwrap());
        assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn cycle_data() {
        let s = Permutation::parse("(123)(45)", 6).unwrap();
        assert_eq!(s.cycle_type(), vec![3, 2, 1]);
        assert_eq!(s.order(), 6);
        assert_eq!(all_permutations(4).count(), 24);
        let g = generate_group(&[Permutation::parse("(12)", 3).unwrap(), Permutation::parse("(123)", 3).unwrap()], 3);
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn act_moves_entries() {
        let s = Permutation::parse("(12)", 3).unwrap();
        assert_eq!(s.act_on(&[2, 1, 0]), vec![1, 2, 0]);
        let c = Permutation::parse("(123)", 3).unwrap();
        assert_eq!(c.act_on(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }
}
