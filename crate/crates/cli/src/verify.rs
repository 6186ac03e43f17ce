//! Full reconciliation run with per-case timing.

use std::time::Instant;

use rayon::prelude::*;

use pglcensus::action::classify;
use pglcensus::census::reconcile;
use pglcensus::gale::{associated_generator, association_check, block_expand, identity_orbit, AssociationWitness};
use pglcensus::residue::{is_prime, PrimeModulus};
use pglcensus::Result;

use crate::{Failure, Outcome};

const MAX_P: u64 = 31;

#[derive(Clone, Copy)]
enum Case {
    Reconcile { k: usize, p: u64 },
    /// Orbit of every class representative of `PGL_a` against its associated orbit.
    OrbitPairs { a: usize, p: u64 },
    MultiOrbit { l: usize },
}

impl Case {
    fn name(self) -> String {
        match self {
            Case::Reconcile { k, p } => format!("reconcile k={k} p={p}"),
            Case::OrbitPairs { a, p } => format!("associate PGL_{a} p={p}"),
            Case::MultiOrbit { l } => format!("multi-orbit l={l} p=11"),
        }
    }

    fn run(self) -> Result<std::result::Result<(), String>> {
        match self {
            Case::Reconcile { k, p } => {
                let r = reconcile(k, PrimeModulus::new(p)?)?;
                Ok(if r.equal { Ok(()) } else { Err(r.first_difference.unwrap_or_default()) })
            }
            Case::OrbitPairs { a, p } => {
                let q = PrimeModulus::new(p)?;
                for rep in classify(a - 1, q)? {
                    let h = rep.representative.id_vec().expect("admissible regime");
                    let s = identity_orbit(h.entries(), q)?;
                    let t = identity_orbit(&associated_generator(&h)?, q)?;
                    if !association_check(&s, &t, &AssociationWitness::identity(s.field(), p as usize))? {
                        return Ok(Err(format!("orbit of {h} is not associated")));
                    }
                }
                Ok(Ok(()))
            }
            Case::MultiOrbit { l } => {
                let q = PrimeModulus::new(11)?;
                let h = pglcensus::subgroup::IdVector::new(vec![4, 2, 1, 0], q)?;
                let e = block_expand(&h, l)?;
                let (s, t) = (e.source_points()?, e.target_points()?);
                let ok = association_check(&s, &t, &AssociationWitness::identity(s.field(), s.ncols()))?;
                Ok(if ok { Ok(()) } else { Err("product is not zero".into()) })
            }
        }
    }
}

pub fn run(max_p: u64, max_k: usize) -> Outcome {
    if max_p > MAX_P {
        return Err(Failure::Domain(format!("--max-p {max_p} exceeds the supported bound {MAX_P}")));
    }
    if !(2..=5).contains(&max_k) {
        return Err(Failure::Domain(format!("--max-k must lie in 2..=5, got {max_k}")));
    }
    let primes: Vec<u64> = (2..=max_p).filter(|&p| is_prime(p)).collect();
    let mut cases = Vec::new();
    for k in 2..=max_k {
        cases.extend(primes.iter().filter(|&&p| p as usize > k).map(|&p| Case::Reconcile { k, p }));
    }
    for &p in primes.iter().filter(|&&p| (5..=13).contains(&p)) {
        cases.extend((2..=(p as usize - 2).min(6)).map(|a| Case::OrbitPairs { a, p }));
    }
    if max_p >= 11 {
        cases.extend([Case::MultiOrbit { l: 2 }, Case::MultiOrbit { l: 3 }]);
    }
    let results: Vec<(String, f64, std::result::Result<(), String>)> = cases
        .par_iter()
        .map(|&c| {
            let t = Instant::now();
            let r = c.run().unwrap_or_else(|e| Err(e.to_string()));
            (c.name(), t.elapsed().as_secs_f64(), r)
        })
        .collect();
    let mut out = String::new();
    let mut failures = 0;
    for (name, secs, r) in &results {
        match r {
            Ok(()) => out += &format!("ok   {name} ({secs:.3}s)\n"),
            Err(e) => {
                failures += 1;
                out += &format!("FAIL {name} ({secs:.3}s): {e}\n");
            }
        }
    }
    out += &format!("{} cases, {failures} failed\n", results.len());
    if failures == 0 {
        Ok(out)
    } else {
        Err(Failure::Negative(out))
    }
}
