//! CSV reproductions of the reference tables, all computed on the fly.

use std::collections::BTreeMap;

use clap::ValueEnum;

use pglcensus::census::{count_closed_form, count_duality};
use pglcensus::residue::PrimeModulus;
use pglcensus::semidirect::{count_semidirect_classes, printed_count, SemidirectLabel};
use pglcensus::Result;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Table {
    K2,
    K3,
    K4,
    K5,
    T15,
    T16,
    S4,
}

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("table primes are prime")
}

/// One row per stabilizer class, primes in the order of the reference table.
fn census_rows(k: usize, primes: &[u64]) -> Result<String> {
    let mut s = String::from("p,classes,m_H,stabilizer\n");
    for &p in primes {
        let c = count_closed_form(k, pm(p))?;
        let mut rows: Vec<_> = c.breakdown.iter().collect();
        rows.sort_by_key(|r| r.orbit);
        for r in rows {
            s += &format!("{p},{},{},{}\n", r.classes, r.orbit, r.label);
        }
    }
    Ok(s)
}

/// Residues `a = (k+1) mod p` grouped by class count.
fn t15() -> Result<String> {
    let mut s = String::from("p,a_values,classes\n");
    for p in [5u64, 7, 11, 13] {
        let mut groups: BTreeMap<u128, Vec<u64>> = BTreeMap::new();
        for a in 0..p {
            let total = count_duality((p + a) as usize - 1, pm(p))?.total;
            groups.entry(total).or_default().push(a);
        }
        for (total, avals) in groups {
            let avals: Vec<String> = avals.iter().map(u64::to_string).collect();
            s += &format!("{p},{},{total}\n", avals.join(" "));
        }
    }
    Ok(s)
}

fn t16() -> Result<String> {
    let mut s = String::from("k+1,classes\n");
    for n in (13..=19usize).rev() {
        s += &format!("{n},{}\n", count_duality(n - 1, pm(19))?.total);
    }
    Ok(s)
}

fn s4() -> Result<String> {
    let mut s = String::from("label,k,parity,p,printed,corrected\n");
    for label in SemidirectLabel::ALL {
        for p in [7u64, 11, 13, 17, 19, 31] {
            s += &format!(
                "{},{},{},{p},{},{}\n",
                label.name(),
                label.k(),
                label.parity_holds(p),
                printed_count(label, pm(p)),
                count_semidirect_classes(label, pm(p))?
            );
        }
    }
    Ok(s)
}

pub fn render(t: Table) -> Result<String> {
    match t {
        Table::K2 => census_rows(2, &[5, 7, 17, 19]),
        Table::K3 => census_rows(3, &[11, 7, 17, 13]),
        Table::K4 => census_rows(4, &[7, 13, 11, 41]),
        Table::K5 => census_rows(5, &[17, 11, 13, 31]),
        Table::T15 => t15(),
        Table::T16 => t16(),
        Table::S4 => s4(),
    }
}
