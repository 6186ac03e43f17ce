//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pglcensus::action::{act, all_permutations, orbit, stabilizer_order, Permutation};
use pglcensus::census::{count_brute_force, count_closed_form, count_duality, reconcile, ClassCensus};
use pglcensus::congruence::stabilizer_solutions;
use pglcensus::gale::{
    associated_generator, association_check, association_product, block_expand, find_association_lambda,
    gale_transform, general_position_check, identity_orbit, projective_equivalence, AssociationWitness,
    CoordMatrix,
};
use pglcensus::residue::{factorial, falling_factorial, is_prime, CyclotomicField, PrimeModulus};
use pglcensus::semidirect::{count_semidirect_brute_force, count_semidirect_classes, SemidirectLabel};
use pglcensus::subgroup::{canonicalize, enumerate_subgroups, subgroup_count, DiagonalSubgroup, IdVector};

type Outcome = Result<(), String>;

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn breakdown(c: &ClassCensus) -> BTreeMap<u128, u128> {
    c.by_orbit()
}

/// Closed form and brute force against a table of `(p, total, {m_H: classes})`.
fn census_table(k: usize, rows: &[(u64, u128, &[(u128, u128)])]) -> Outcome {
    for &(p, total, want) in rows {
        let want: BTreeMap<u128, u128> = want.iter().copied().collect();
        for c in [count_closed_form(k, pm(p)).map_err(err)?, count_brute_force(k, pm(p)).map_err(err)?] {
            ensure(c.total == total && breakdown(&c) == want, || {
                format!("k={k} p={p} {}: total {} breakdown {:?}", c.method.as_str(), c.total, breakdown(&c))
            })?;
        }
    }
    Ok(())
}

fn c1() -> Outcome {
    census_table(
        2,
        &[(5, 1, &[(3, 1)]), (7, 2, &[(2, 1), (3, 1)]), (17, 3, &[(3, 1), (6, 2)]), (19, 4, &[(2, 1), (3, 1), (6, 2)])],
    )
}

fn c2() -> Outcome {
    census_table(
        3,
        &[
            (7, 2, &[(8, 1), (12, 1)]),
            (11, 4, &[(12, 2), (24, 2)]),
            (13, 7, &[(6, 1), (8, 1), (12, 2), (24, 3)]),
            (17, 11, &[(6, 1), (12, 3), (24, 7)]),
        ],
    )
}

fn c3() -> Outcome {
    census_table(
        4,
        &[
            (7, 1, &[(60, 1)]),
            (11, 6, &[(24, 1), (60, 2), (120, 3)]),
            (13, 10, &[(30, 1), (60, 2), (120, 7)]),
            (41, 463, &[(24, 1), (30, 1), (60, 9), (120, 452)]),
        ],
    )
}

fn c4() -> Outcome {
    census_table(
        5,
        &[
            (11, 6, &[(144, 1), (360, 2), (720, 3)]),
            (13, 14, &[(120, 1), (240, 1), (360, 3), (720, 9)]),
            (17, 49, &[(360, 7), (720, 42)]),
            (31, 811, &[(120, 1), (144, 1), (240, 4), (360, 30), (720, 775)]),
        ],
    )
}

fn c5() -> Outcome {
    for k in 2..=5usize {
        for p in primes(k as u64 + 1, 31) {
            let r = reconcile(k, pm(p)).map_err(err)?;
            ensure(r.equal, || format!("k={k} p={p}: {:?}", r.first_difference))?;
        }
    }
    for (k, p, m) in [(2usize, 3u64, 1u128), (4, 5, 6)] {
        for c in [count_closed_form(k, pm(p)).map_err(err)?, count_brute_force(k, pm(p)).map_err(err)?] {
            ensure(c.total == 1 && breakdown(&c) == BTreeMap::from([(m, 1)]), || {
                format!("k={k} p={p}: {:?}", breakdown(&c))
            })?;
        }
    }
    Ok(())
}

fn c6() -> Outcome {
    let count = |s: &str, k: usize, p: u64| -> Result<u64, String> {
        let sigma = Permutation::parse(s, k + 1).map_err(err)?;
        Ok(stabilizer_solutions(&sigma, k, pm(p)).map_err(err)?.solutions.len() as u64)
    };
    let gate = |p: u64, r: u64, v: u64| if p % r == 1 { v } else { 0 };
    for k in 2..=5usize {
        for p in primes(k as u64 + 2, 31) {
            let mut checks: Vec<(&str, u64)> = Vec::new();
            match k {
                2 => checks.push(("(123)", gate(p, 3, 2))),
                3 => checks.extend([("(12)(34)", p - 3), ("(1234)", gate(p, 4, 2))]),
                4 => checks.extend([("(12)(34)", p - 3), ("(12345)", gate(p, 5, 4))]),
                _ => checks.extend([("(12)(34)(56)", (p - 3) * (p - 5)), ("(123)(456)", gate(p, 3, 2 * (p - 4)))]),
            }
            if k >= 3 {
                checks.push(("(12)", 0));
            }
            for (s, want) in checks {
                let got = count(s, k, p)?;
                ensure(got == want, || format!("{s} k={k} p={p}: {got} solutions, expected {want}"))?;
            }
        }
    }
    Ok(())
}

fn c7() -> Outcome {
    let t15: &[(u64, &[(&[u64], u128)])] = &[
        (5, &[(&[0, 1, 2, 3, 4], 1)]),
        (7, &[(&[0, 1, 2, 5, 6], 1), (&[3, 4], 2)]),
        (11, &[(&[0, 1, 2, 9, 10], 1), (&[3, 8], 2), (&[4, 7], 4), (&[5, 6], 6)]),
        (13, &[(&[0, 1, 2, 11, 12], 1), (&[3, 10], 3), (&[4, 9], 7), (&[5, 8], 10), (&[6, 7], 14)]),
    ];
    for &(p, rows) in t15 {
        for &(avals, want) in rows {
            for &a in avals {
                // k+1 = p + a lies in the block regime
                let k = (p + a) as usize - 1;
                let got = count_duality(k, pm(p)).map_err(err)?.total;
                ensure(got == want, || format!("p={p} a={a}: {got}, expected {want}"))?;
            }
        }
    }
    for (n, want) in [(19usize, 1u128), (18, 1), (17, 1), (16, 4), (15, 14), (14, 36), (13, 86)] {
        let got = count_duality(n - 1, pm(19)).map_err(err)?.total;
        ensure(got == want, || format!("p=19 k+1={n}: {got}, expected {want}"))?;
    }
    // count in PGL_a against an independent brute force in PGL_(p-a)
    for p in primes(5, 31) {
        for a in 2..=(p as usize - 2) {
            let k = p as usize - a - 1;
            let (x, y) = (count_duality(a - 1, pm(p)), count_duality(k, pm(p)));
            let (Ok(x), Ok(y)) = (x, y) else { continue };
            ensure(x.total == y.total, || format!("p={p} a={a}: {} vs {}", x.total, y.total))?;
            if k >= 1 && subgroup_count(k, pm(p)).map_err(err)? <= 400_000 {
                let b = count_brute_force(k, pm(p)).map_err(err)?.total;
                ensure(b == x.total, || format!("p={p} PGL_{}: brute force {b}, duality {}", p as usize - a, x.total))?;
            }
        }
    }
    Ok(())
}

fn c8() -> Outcome {
    for (n, p, want) in [(7usize, 5u64, 1u128), (8, 5, 1), (12, 5, 1), (9, 7, 1), (10, 7, 2)] {
        let t = Instant::now();
        let brute = count_brute_force(n - 1, pm(p)).map_err(err)?.total;
        let secs = t.elapsed().as_secs_f64();
        let pred = count_duality(n - 1, pm(p)).map_err(err)?.total;
        ensure(brute == pred && pred == want, || {
            format!("k+1={n} p={p}: brute force {brute}, prediction {pred}, expected {want}")
        })?;
        ensure(secs < 5.0, || format!("k+1={n} p={p}: took {secs:.2}s"))?;
    }
    Ok(())
}

// Transpose of B in the p = 11 example, one row per point.
const WORKED_BT: [[i64; 7]; 11] = [
    [1, 2, 3, 4, 5, 6, 8],
    [2, 4, 6, 8, 10, 1, 5],
    [3, 6, 9, 1, 4, 7, 2],
    [4, 8, 1, 5, 9, 2, 10],
    [5, 10, 4, 9, 3, 8, 7],
    [6, 1, 7, 2, 8, 3, 4],
    [7, 3, 10, 6, 2, 9, 1],
    [8, 5, 2, 10, 7, 4, 9],
    [9, 7, 5, 3, 1, 10, 6],
    [10, 9, 8, 7, 6, 5, 3],
    [0, 0, 0, 0, 0, 0, 0],
];

fn zero_product(a: &CoordMatrix, b: &CoordMatrix, w: &AssociationWitness, what: &str) -> Outcome {
    let m = association_product(a, b, w).map_err(err)?;
    ensure(m.len() == a.nrows() && m[0].len() == b.nrows(), || format!("{what}: wrong product shape"))?;
    ensure(m.iter().flatten().all(|x| x.is_zero()), || format!("{what}: product is not zero"))
}

fn c9() -> Outcome {
    let p = pm(11);
    let h = IdVector::new(vec![4, 2, 1, 0], p).map_err(err)?;
    let a = identity_orbit(h.entries(), p).map_err(err)?;
    let id = AssociationWitness::identity(a.field(), 11);
    let grid: Vec<Vec<Option<i64>>> = (0..7).map(|i| WORKED_BT.iter().map(|r| Some(r[i])).collect()).collect();
    let shown = CoordMatrix::from_exponents(11, &grid).map_err(err)?;
    zero_product(&a, &shown, &id, "displayed pair")?;
    let gen = associated_generator(&h).map_err(err)?;
    let b = identity_orbit(&gen, p).map_err(err)?;
    zero_product(&a, &b, &id, "associated generator")?;
    // [10,9,8,7,6,5,3] traces the same 11 points in the order j -> 11 - j
    let k = identity_orbit(&[10, 9, 8, 7, 6, 5, 3], p).map_err(err)?;
    let rev: Vec<usize> = (0..11).map(|j| (20 - j) % 11).collect();
    zero_product(&a, &k.select_columns(&rev).map_err(err)?, &id, "complement generator")?;
    for (l, dim) in [(2usize, 18usize), (3, 29)] {
        let e = block_expand(&h, l).map_err(err)?;
        ensure(e.generator.len() == dim, || format!("l={l}: generator length {}", e.generator.len()))?;
        let (s, t) = (e.source_points().map_err(err)?, e.target_points().map_err(err)?);
        zero_product(&s, &t, &AssociationWitness::identity(s.field(), s.ncols()), &format!("l={l}"))?;
    }
    let f = CyclotomicField::new(8).map_err(err)?;
    let r2 = &f.zeta_pow(1) + &f.zeta_pow(7);
    ensure((&r2 * &r2) == f.from_int(2), || "sqrt 2 encoding".into())?;
    let (o, z) = (f.one(), f.zero());
    let line = CoordMatrix::new(
        f.clone(),
        vec![
            vec![o.clone(), z.clone(), o.clone(), o.clone(), o.clone()],
            vec![z.clone(), o.clone(), o.clone(), r2.clone(), -&r2],
        ],
    )
    .map_err(err)?;
    let plane = CoordMatrix::new(
        f.clone(),
        vec![
            vec![o.clone(), o.clone(), o.clone(), z.clone(), z.clone()],
            vec![o.clone(), r2.clone(), z.clone(), o.clone(), z.clone()],
            vec![o.clone(), -&r2, z.clone(), z.clone(), o.clone()],
        ],
    )
    .map_err(err)?;
    let lam = AssociationWitness::from_ints(&f, &[1, 1, -1, -1, -1]).map_err(err)?;
    zero_product(&line, &plane, &lam, "five points")
}

fn random_points(rng: &mut StdRng) -> CoordMatrix {
    loop {
        let d = rng.gen_range(2..=4usize);
        let n = rng.gen_range(d + 2..=9usize);
        let f = CyclotomicField::new(1).unwrap();
        let rows = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let q = BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
                        f.from_rational(q)
                    })
                    .collect()
            })
            .collect();
        if let Ok(m) = CoordMatrix::new(f, rows) {
            if general_position_check(&m) {
                return m;
            }
        }
    }
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x6a1e);
    for trial in 0..20 {
        let pts = random_points(&mut rng);
        let b = gale_transform(&pts).map_err(err)?;
        let w = find_association_lambda(&pts, &b).map_err(err)?;
        let Some(w) = w else { return Err(format!("trial {trial}: transform not associated")) };
        ensure(association_check(&pts, &b, &w).map_err(err)?, || format!("trial {trial}: witness fails"))?;
        let back = gale_transform(&b).map_err(err)?;
        ensure(projective_equivalence(&pts, &back).map_err(err)?.is_some(), || {
            format!("trial {trial}: double transform is not equivalent ({} points in P^{})", pts.ncols(), pts.nrows() - 1)
        })?;
    }
    Ok(())
}

fn c11() -> Outcome {
    for k in 1..=3usize {
        let perms: Vec<Permutation> = all_permutations(k + 1).collect();
        for p in primes(k as u64 + 2, 11) {
            let all: Vec<DiagonalSubgroup> = enumerate_subgroups(k, pm(p)).map_err(err)?.collect();
            let mass = falling_factorial(p - 2, k as u64 - 1).map_err(err)?;
            ensure(all.len() as u128 == mass, || format!("k={k} p={p}: enumeration size"))?;
            let mut classes = 0u128;
            let mut orbit_mass = 0u128;
            for g in &all {
                for s in &perms {
                    for t in &perms {
                        let lhs = act(&s.compose(t), g).map_err(err)?;
                        let rhs = act(s, &act(t, g).map_err(err)?).map_err(err)?;
                        ensure(lhs == rhs, || format!("action law fails at {:?}", g.canon()))?;
                    }
                }
                let o = orbit(g);
                ensure(o.len() as u128 * stabilizer_order(g) == factorial(k as u64 + 1), || "orbit-stabilizer".into())?;
                if o.first() == Some(g) {
                    classes += 1;
                    orbit_mass += o.len() as u128;
                }
                for (m, c) in [(2u64, 1u64), (p - 1, 3)] {
                    let q = pm(p);
                    let w: Vec<u64> = g.canon().iter().map(|&x| q.add(q.mul(m, x), c)).collect();
                    ensure(canonicalize(&w, q).map_err(err)? == g.canon(), || "canonical form moved".into())?;
                }
            }
            ensure(orbit_mass == mass && classes > 0, || format!("k={k} p={p}: mass {orbit_mass}"))?;
            if k >= 2 {
                let c = count_closed_form(k, pm(p)).map_err(err)?;
                ensure(c.mass() == mass && c.total == classes, || format!("k={k} p={p}: closed form mass"))?;
            }
        }
    }
    let p = pm(13);
    let h = IdVector::new(vec![9, 3, 1, 0], p).map_err(err)?;
    let a = identity_orbit(h.entries(), p).map_err(err)?;
    let b = identity_orbit(&associated_generator(&h).map_err(err)?, p).map_err(err)?;
    let id = AssociationWitness::identity(a.field(), 13);
    ensure(association_check(&a, &b, &id).map_err(err)? && association_check(&b, &a, &id).map_err(err)?, || {
        "association is not symmetric".into()
    })?;
    let perm: Vec<usize> = (0..13).map(|j| (5 * j + 7) % 13).collect();
    let (pa, pb) = (a.select_columns(&perm).map_err(err)?, b.select_columns(&perm).map_err(err)?);
    ensure(association_check(&pa, &pb, &id).map_err(err)?, || "permuted pair is not associated".into())
}

fn c12() -> Outcome {
    for (label, p, want) in [(SemidirectLabel::Int1324, 11u64, 2u128), (SemidirectLabel::Int142536, 17, 7)] {
        let c = count_semidirect_classes(label, pm(p)).map_err(err)?;
        let b = count_semidirect_brute_force(label, pm(p)).map_err(err)?;
        ensure(c == want && b == want, || format!("{label} p={p}: {c} (brute force {b}), expected {want}"))?;
    }
    for label in SemidirectLabel::ALL.into_iter().filter(|l| l.is_gated()) {
        for p in primes(label.k() as u64 + 1, 31) {
            let want = label.parity_holds(p) as u128;
            let c = count_semidirect_classes(label, pm(p)).map_err(err)?;
            let b = count_semidirect_brute_force(label, pm(p)).map_err(err)?;
            ensure(c == want && b == want, || format!("{label} p={p}: {c} (brute force {b}), expected {want}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("k=2 census for p in {5,7,17,19}", c1),
        ("k=3 census for p in {7,11,13,17}", c2),
        ("k=4 census for p in {7,11,13,41}", c3),
        ("k=5 census for p in {11,13,17,31}", c4),
        ("closed form equals brute force, k=2..5, p<=31, plus p=k+1", c5),
        ("congruence solution counts, k+1 < p <= 31", c6),
        ("duality tables and count(a) = count(p-a)", c7),
        ("block regime brute force equals prediction (1,1,1,1,2)", c8),
        ("exact association of the worked, multi-orbit and sqrt 2 examples", c9),
        ("Gale transform round trip on 20 random rational sets", c10),
        ("action, orbit-stabilizer, canonical form, mass and association laws", c11),
        ("semidirect class counts and parity gates, p <= 31", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2}. {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
