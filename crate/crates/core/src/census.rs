//! Class counts: the closed forms for `k = 2..5`, the brute-force
//! classifier, and the reduction for `p < k+1` (or large `k`) through the
//! correspondence between `PGL_a` and `PGL_(p-a)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{classify_with_budget, budget_from_env};
use crate::error::{domain, Error, Result};
use crate::residue::{binomial, falling_factorial, PrimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    BruteForce,
    Duality,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::BruteForce => "brute_force",
            Method::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakdownRow {
    pub label: String,
    pub classes: u128,
    pub orbit: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCensus {
    pub k: usize,
    pub p: u64,
    pub method: Method,
    pub total: u128,
    pub breakdown: Vec<BreakdownRow>,
}

impl ClassCensus {
    /// `sum classes * m_H`.
    pub fn mass(&self) -> u128 {
        self.breakdown.iter().map(|r| r.classes * r.orbit).sum()
    }

    /// `(m_H, label) -> classes`, order-free view for comparisons.
    pub fn rows(&self) -> BTreeMap<(u128, String), u128> {
        self.breakdown.iter().map(|r| ((r.orbit, r.label.clone()), r.classes)).collect()
    }

    /// `m_H -> classes`.
    pub fn by_orbit(&self) -> BTreeMap<u128, u128> {
        let mut m = BTreeMap::new();
        for r in &self.breakdown {
            *m.entry(r.orbit).or_insert(0) += r.classes;
        }
        m
    }

    fn sorted(mut self) -> Self {
        self.breakdown.sort_by(|a, b| (a.orbit, &a.label).cmp(&(b.orbit, &b.label)));
        self
    }
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<u128> {
    if num < 0 || num % den != 0 {
        return Err(Error::Internal(format!("{what}: {num}/{den} is not a count")));
    }
    Ok((num / den) as u128)
}

fn row(label: &str, classes: u128, orbit: u128) -> BreakdownRow {
    BreakdownRow { label: label.into(), classes, orbit }
}

/// The closed-form census for `2 <= k <= 5`, `p >= k+1`.
pub fn count_closed_form(k: usize, p: PrimeModulus) -> Result<ClassCensus> {
    if !(2..=5).contains(&k) {
        return Err(Error::Unsupported(format!("closed form covers 2 <= k <= 5, got k={k}")));
    }
    let pp = p.get();
    if (pp as usize) < k + 1 {
        return domain(format!("closed form needs p >= k+1 (p={pp}, k={k}); use the duality count"));
    }
    let q = pp as i128;
    let total_vectors = falling_factorial(pp - 2, k as u64 - 1)? as i128;
    let m3 = pp % 3 == 1;
    let m4 = pp % 4 == 1;
    let m5 = pp % 5 == 1;
    let ind = |b: bool| b as i128;
    let mut rows = Vec::new();
    match k {
        2 if pp == 3 => rows.push(row("S3-(12),(123)", 1, 1)),
        2 => {
            rows.push(row("C2-(12)", 1, 3));
            if m3 {
                rows.push(row("C3-(123)", 1, 2));
            }
            rows.push(row("trivial", exact_div(total_vectors - 3 - 2 * ind(m3), 6, "k=2 generic")?, 6));
        }
        3 => {
            if m4 {
                rows.push(row("C4-(1234)", 1, 6));
            }
            rows.push(row("C2-(13)(24)", exact_div((q - 3 - 2 * ind(m4)) * 3, 12, "k=3 2x2")?, 12));
            if m3 {
                rows.push(row("C3-(123)", 1, 8));
            }
            let rest = total_vectors - (q - 3) * 3 - 8 * ind(m3);
            rows.push(row("trivial", exact_div(rest, 24, "k=3 generic")?, 24));
        }
        4 if pp == 5 => rows.push(row("D20-(12345),(1243)", 1, 6)),
        4 => {
            if m4 {
                rows.push(row("C4-(1243)", 1, 30));
            }
            rows.push(row("C2-(14)(23)", exact_div((q - 3 - 2 * ind(m4)) * 15, 60, "k=4 2x2")?, 60));
            if m5 {
                rows.push(row("C5-(12345)", 1, 24));
            }
            let rest = total_vectors - 24 * ind(m5) - (q - 3) * 15;
            rows.push(row("trivial", exact_div(rest, 120, "k=4 generic")?, 120));
        }
        5 => {
            let alpha = (q - 3) * (q - 5) * 15;
            let mut rest = total_vectors;
            if m3 {
                // the 6-cycle class absorbs 120 solutions from each of the
                // (14)(25)(36) and (135)(246) counts
                let beta = alpha - 120;
                let delta = 2 * (q - 4) * 20 - 120;
                rows.push(row("C6-(123456)", 1, 120));
                rows.push(row("C2-(14)(25)(36)", exact_div(beta, 360, "k=5 beta")?, 360));
                rows.push(row("C3-(135)(246)", exact_div(delta, 240, "k=5 delta")?, 240));
                rest -= 120 + beta + delta;
            } else {
                rows.push(row("C2-(14)(25)(36)", exact_div(alpha, 360, "k=5 alpha")?, 360));
                rest -= alpha;
            }
            if m5 {
                rows.push(row("C5-(12345)", 1, 144));
                rest -= 144;
            }
            rows.push(row("trivial", exact_div(rest, 720, "k=5 generic")?, 720));
        }
        _ => unreachable!(),
    }
    let breakdown: Vec<BreakdownRow> = rows.into_iter().filter(|r| r.classes > 0).collect();
    let total = breakdown.iter().map(|r| r.classes).sum();
    Ok(ClassCensus { k, p: pp, method: Method::ClosedForm, total, breakdown }.sorted())
}

pub fn count_brute_force(k: usize, p: PrimeModulus) -> Result<ClassCensus> {
    count_brute_force_with_budget(k, p, budget_from_env())
}

pub fn count_brute_force_with_budget(k: usize, p: PrimeModulus, budget: u128) -> Result<ClassCensus> {
    let reports = classify_with_budget(k, p, budget)?;
    let mut agg: BTreeMap<(u128, String), u128> = BTreeMap::new();
    for r in &reports {
        *agg.entry((r.orbit_size, r.stabilizer_label.clone())).or_insert(0) += 1;
    }
    let breakdown = agg.into_iter().map(|((orbit, label), classes)| BreakdownRow { label, classes, orbit }).collect();
    Ok(ClassCensus { k, p: p.get(), method: Method::BruteForce, total: reports.len() as u128, breakdown }.sorted())
}

/// Total number of classes through the `a <-> p-a` correspondence, with
/// `a = (k+1) mod p`. Totals only.
pub fn count_duality(k: usize, p: PrimeModulus) -> Result<ClassCensus> {
    let pp = p.get();
    let n = k as u64 + 1;
    let a = n % pp;
    let m = a.min(pp - a);
    let total = if a <= 1 || a == pp - 1 || m == 2 {
        1
    } else if (3..=6).contains(&m) {
        count_closed_form(m as usize - 1, p)?.total
    } else {
        return Err(Error::Unsupported(format!(
            "k+1={n}, p={pp}: a={a} and p-a={} both exceed 6, no base census for PGL_{m}",
            pp - a
        )));
    };
    Ok(ClassCensus { k, p: pp, method: Method::Duality, total, breakdown: Vec::new() })
}

/// Number `e` of inequivalent eigenvalue patterns when `p < k+1`.
pub fn projective_rep_count(k: usize, p: PrimeModulus) -> Result<u128> {
    let pp = p.get();
    let n = k as u64 + 1;
    if pp >= n {
        return domain(format!("representation count needs p < k+1, got p={pp}, k+1={n}"));
    }
    let a = n % pp;
    if a == 0 {
        return Ok(1);
    }
    let c = binomial(pp - 1, a - 1);
    if c % a as u128 != 0 {
        return Err(Error::Internal(format!("C({}, {}) = {c} is not divisible by {a}", pp - 1, a - 1)));
    }
    Ok(c / a as u128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub k: usize,
    pub p: u64,
    pub equal: bool,
    pub predicted: ClassCensus,
    pub observed: ClassCensus,
    /// First row present on one side only or with differing counts.
    pub first_difference: Option<String>,
}

/// Closed form (or duality) against brute force.
pub fn reconcile(k: usize, p: PrimeModulus) -> Result<Reconciliation> {
    let predicted = if (2..=5).contains(&k) && p.get() as usize >= k + 1 {
        count_closed_form(k, p)?
    } else {
        count_duality(k, p)?
    };
    let observed = count_brute_force(k, p)?;
    let mut first_difference = None;
    if predicted.total != observed.total {
        first_difference = Some(format!("total {} vs {}", predicted.total, observed.total));
    } else if predicted.method != Method::Duality {
        let (a, b) = (predicted.rows(), observed.rows());
        for key in a.keys().chain(b.keys()) {
            if a.get(key) != b.get(key) {
                first_difference = Some(format!(
                    "m_H={} {}: {:?} vs {:?}",
                    key.0,
                    key.1,
                    a.get(key),
                    b.get(key)
                ));
                break;
            }
        }
    }
    Ok(Reconciliation { k, p: p.get(), equal: first_difference.is_none(), predicted, observed, first_difference })
}
