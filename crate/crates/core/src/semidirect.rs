//! Extensions of an admissible `C_p` by a permutation matrix that
//! normalizes it. `Int` groups have an intransitive twist, `Imp` groups a
//! transitive (imprimitive) one.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::Serialize;

use crate::action::{catalog, classify, contains_conjugate, Permutation};
use crate::census::count_closed_form;
use crate::congruence::scaling_witness;
use crate::error::{domain, Error, Result};
use crate::residue::{solve_univariate_congruence, PrimeModulus};
use crate::subgroup::{all_distinct, IdVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemidirectLabel {
    Int12,
    Imp123,
    ImpS3,
    Int1324,
    Int123,
    Imp1234,
    Int1423,
    Int1234K4,
    Imp12345,
    Int142536,
    Int135246,
    Int12345K5,
    Imp123456,
}

use SemidirectLabel::*;

impl SemidirectLabel {
    pub const ALL: [SemidirectLabel; 13] = [
        Int12, Imp123, ImpS3, Int1324, Int123, Imp1234, Int1423, Int1234K4, Imp12345, Int142536,
        Int135246, Int12345K5, Imp123456,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Int12 => "Int_12",
            Imp123 => "Imp_123",
            ImpS3 => "Imp_S3",
            Int1324 => "Int_(13)(24)",
            Int123 => "Int_(123)",
            Imp1234 => "Imp_(1234)",
            Int1423 => "Int_(14)(23)",
            Int1234K4 => "Int_(1234)^k=4",
            Imp12345 => "Imp_(12345)",
            Int142536 => "Int_(14)(25)(36)",
            Int135246 => "Int_(135)(246)",
            Int12345K5 => "Int_(12345)^k=5",
            Imp123456 => "Imp_(123456)",
        }
    }

    pub fn k(self) -> usize {
        match self {
            Int12 | Imp123 | ImpS3 => 2,
            Int1324 | Int123 | Imp1234 => 3,
            Int1423 | Int1234K4 | Imp12345 => 4,
            Int142536 | Int135246 | Int12345K5 | Imp123456 => 5,
        }
    }

    pub fn twist_cycles(self) -> &'static [&'static str] {
        match self {
            Int12 => &["(12)"],
            Imp123 => &["(123)"],
            ImpS3 => &["(123)", "(12)"],
            Int1324 => &["(13)(24)"],
            Int123 => &["(123)"],
            Imp1234 => &["(1234)"],
            Int1423 => &["(14)(23)"],
            Int1234K4 => &["(1243)"],
            Imp12345 => &["(12345)"],
            Int142536 => &["(14)(25)(36)"],
            Int135246 => &["(135)(246)"],
            Int12345K5 => &["(12345)"],
            Imp123456 => &["(123456)"],
        }
    }

    pub fn twist(self) -> Vec<Permutation> {
        let n = self.k() + 1;
        self.twist_cycles().iter().map(|c| Permutation::parse(c, n).expect("static cycle")).collect()
    }

    /// The table's congruence condition on `p`, read as "an admissible
    /// parameter exists"; this adds `p = k+1` where a root exists there.
    pub fn parity_holds(self, p: u64) -> bool {
        match self {
            Int12 | Int1324 | Int1423 | Int142536 => true,
            Imp123 => p % 3 == 1 || p == 3,
            ImpS3 => p == 3,
            Int123 | Imp123456 | Int135246 => p % 3 == 1,
            Imp1234 | Int1234K4 => p % 4 == 1,
            Imp12345 => p % 5 == 1 || p == 5,
            Int12345K5 => p % 5 == 1,
        }
    }

    /// Labels whose printed count is 1 under the parity condition.
    pub fn is_gated(self) -> bool {
        !matches!(self, Int12 | Int1324 | Int1423 | Int142536 | Int135246)
    }
}

impl fmt::Display for SemidirectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemidirectLabel {
    type Err = Error;

    /// Accepts the display names, with or without braces, e.g. `Int_{(13)(24)}`.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| !matches!(c, '{' | '}' | ' ')).collect::<String>().to_lowercase();
        let alias = match norm.as_str() {
            "int_(12)" => Some(Int12),
            "imp_(123)" => Some(Imp123),
            "imp_(s3)" => Some(ImpS3),
            "int_(1234)" => Some(Int1234K4),
            "int_(12345)" => Some(Int12345K5),
            _ => None,
        };
        alias
            .or_else(|| SemidirectLabel::ALL.into_iter().find(|l| l.name().to_lowercase() == norm))
            .ok_or_else(|| Error::Parse(format!("unknown semidirect label {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectGroup {
    pub label: SemidirectLabel,
    pub diag_generator: IdVector,
    pub twist: Vec<Permutation>,
    /// `(m, c)` with `twist(v) = m v + c`, one per twist generator.
    pub witness: Vec<(u64, u64)>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessOut {
    One([u64; 2]),
    Many(Vec<[u64; 2]>),
}

impl Serialize for SemidirectGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            label: &'a str,
            p: u64,
            diag: String,
            twist: String,
            witness: WitnessOut,
        }
        let ws: Vec<[u64; 2]> = self.witness.iter().map(|&(m, c)| [m, c]).collect();
        Out {
            label: self.label.name(),
            p: self.diag_generator.p().get(),
            diag: self.diag_generator.to_string(),
            twist: self.twist.iter().map(Permutation::to_compact).collect::<Vec<_>>().join(","),
            witness: if ws.len() == 1 { WitnessOut::One(ws[0]) } else { WitnessOut::Many(ws) },
        }
        .serialize(s)
    }
}

fn roots(poly: &[i64], p: PrimeModulus) -> Result<Vec<u64>> {
    Ok(solve_univariate_congruence(poly, p)?.into_iter().collect())
}

/// Builds the group. `free` supplies the unconstrained parameters
/// (`s` for `Int_(13)(24)`, `t` for `Int_(14)(23)`, `u, v` for
/// `Int_(14)(25)(36)`, `v` for `Int_(135)(246)`); when empty the first
/// admissible choice is taken. Parameters fixed by a congruence are solved.
pub fn build(label: SemidirectLabel, p: PrimeModulus, free: &[u64]) -> Result<SemidirectGroup> {
    let k = label.k();
    let pp = p.get();
    if (pp as usize) < k + 1 {
        return domain(format!("{label} needs p >= {}", k + 1));
    }
    if !label.parity_holds(pp) {
        return Err(Error::Precondition(format!("{label} is not defined for p = {pp}")));
    }
    let r = |x: i64| p.reduce(x);
    let want_free = match label {
        Int1324 | Int1423 | Int135246 => 1,
        Int142536 => 2,
        _ => 0,
    };
    if !free.is_empty() && free.len() != want_free {
        return Err(Error::Precondition(format!("{label} takes {want_free} free parameters, got {}", free.len())));
    }
    let q = pp as i64;
    let candidates: Vec<Vec<u64>> = match label {
        Int12 => vec![vec![pp - 1, 1, 0]],
        ImpS3 => vec![vec![2, 1, 0]],
        Imp123 => roots(&[1, -1, 1], p)?.into_iter().map(|s| vec![s, 1, 0]).collect(),
        Int1324 => param_range(free, 0, 2..q - 1).map(|s| vec![r(s), r(s + 1), 1, 0]).collect(),
        Int123 => roots(&[1, 1, 1], p)?.into_iter().map(|t| vec![p.mul(t, t), t, 1, 0]).collect(),
        Imp1234 => roots(&[1, 0, 1], p)?.into_iter().map(|s| vec![s, p.add(s, 1), 1, 0]).collect(),
        Int1423 => param_range(free, 0, 2..q - 1).map(|t| vec![pp - 1, r(t), r(-t), 1, 0]).collect(),
        Int1234K4 => roots(&[1, 0, 1], p)?.into_iter().map(|t| vec![pp - 1, t, p.neg(t), 1, 0]).collect(),
        Imp12345 => roots(&[1, -1, 1, -1, 1], p)?
            .into_iter()
            .map(|s| {
                let (s, s2, s3) = (s as i64, p.pow(s, 2) as i64, p.pow(s, 3) as i64);
                vec![r(s), r(s - s2), r(s3 - s2 + s), 1, 0]
            })
            .collect(),
        Int142536 => {
            let us: Vec<i64> = param_range(free, 0, 0..q).collect();
            let vs: Vec<i64> = param_range(free, 1, 0..q).collect();
            us.iter()
                .flat_map(|&u| vs.iter().map(move |&v| vec![r(u - v), r(u - 1), r(u), r(v), 1, 0]))
                .collect()
        }
        Int135246 => {
            let i = roots(&[1, 1, 1], p)?.first().copied().ok_or_else(|| {
                Error::Construction(format!("no primitive cube root of unity mod {pp}"))
            })? as i64;
            let i2 = (i * i) % q;
            param_range(free, 0, 0..q)
                .map(|v| vec![r(i2 - i2 * v), r(-i2 * v), r(i + v), r(v), 1, 0])
                .collect()
        }
        Int12345K5 => roots(&[1, 1, 1, 1, 1], p)?
            .into_iter()
            .map(|v| (1..=4).rev().map(|e| p.pow(v, e)).chain([1, 0]).collect())
            .collect(),
        Imp123456 => roots(&[1, 1, 1], p)?
            .into_iter()
            .map(|s| {
                let (s, s2) = (s as i64, p.pow(s, 2) as i64);
                vec![r(s), r(s - s2), r(1 + s - s2), r(1 - s2), 1, 0]
            })
            .collect(),
    };
    let twist = label.twist();
    for v in candidates {
        if !all_distinct(&v) {
            continue;
        }
        let witness: Option<Vec<(u64, u64)>> = twist.iter().map(|t| scaling_witness(t, &v, p)).collect();
        let Some(witness) = witness else {
            return Err(Error::Construction(format!(
                "{label}: vector {} is not normalized by the twist",
                crate::subgroup::format_residues(&v)
            )));
        };
        return Ok(SemidirectGroup { label, diag_generator: IdVector::new(v, p)?, twist, witness });
    }
    Err(Error::Construction(format!("{label}: no admissible parameters at p = {pp}")))
}

fn param_range(free: &[u64], idx: usize, default: std::ops::Range<i64>) -> Box<dyn Iterator<Item = i64>> {
    match free.get(idx) {
        Some(&x) => Box::new(std::iter::once(x as i64)),
        None => Box::new(default),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The count as printed in the class tables; not always an integer.
pub fn printed_count(label: SemidirectLabel, p: PrimeModulus) -> BigRational {
    let q = p.get() as i64;
    if !label.parity_holds(p.get()) {
        return BigRational::zero();
    }
    match label {
        Int1324 => rat(3 * (q - 3), 12),
        Int1423 => rat(15 * (q - 3), 60),
        Int142536 => rat(15 * (q - 3) * (q - 5), 360),
        Int135246 => rat(2 * (q - 4) * 20, 240),
        _ => rat(1, 1),
    }
}

fn group_of_row(label: &str, n: usize) -> Result<Vec<Permutation>> {
    if label == "trivial" {
        return Ok(vec![Permutation::identity(n)]);
    }
    catalog::group_for_label(label, n)
        .map(<[Permutation]>::to_vec)
        .ok_or_else(|| Error::Internal(format!("census row {label} has no catalog group")))
}

/// Classes of admissible `C_p` whose normalizer contains a conjugate of the
/// twist: the closed-form rows whose stabilizer contains it, so the cyclic
/// classes absorbed by larger stabilizers are counted once.
pub fn count_semidirect_classes(label: SemidirectLabel, p: PrimeModulus) -> Result<u128> {
    let n = label.k() + 1;
    let twist = label.twist();
    let census = count_closed_form(label.k(), p)?;
    let mut total = 0;
    for r in &census.breakdown {
        if contains_conjugate(&group_of_row(&r.label, n)?, &twist, n) {
            total += r.classes;
        }
    }
    Ok(total)
}

/// The same count read off the brute-force classification.
pub fn count_semidirect_brute_force(label: SemidirectLabel, p: PrimeModulus) -> Result<u128> {
    let n = label.k() + 1;
    let twist = label.twist();
    Ok(classify(label.k(), p)?.iter().filter(|r| contains_conjugate(&r.stabilizer, &twist, n)).count() as u128)
}

pub fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}
