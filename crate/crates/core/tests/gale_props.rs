use pglcensus::gale::{
    associated_generator, association_check, block_expand, find_association_lambda, gale_transform,
    general_position_check, identity_orbit, projective_equivalence, AssociationWitness, CoordMatrix,
};
use pglcensus::residue::PrimeModulus;
use pglcensus::subgroup::{enumerate_subgroups, IdVector};
use proptest::prelude::*;

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn orbit_pair_holds(h: &IdVector) -> bool {
    let p = h.p();
    let a = identity_orbit(h.entries(), p).unwrap();
    let b = identity_orbit(&associated_generator(h).unwrap(), p).unwrap();
    association_check(&a, &b, &AssociationWitness::identity(a.field(), p.get() as usize)).unwrap()
}

#[test]
fn every_small_orbit_pair_is_associated() {
    for p in [5u64, 7] {
        for a in 2..=p as usize - 2 {
            for g in enumerate_subgroups(a - 1, pm(p)).unwrap() {
                assert!(orbit_pair_holds(&g.id_vec().unwrap()), "{:?}", g.canon());
            }
        }
    }
}

#[test]
fn multi_orbit_constructions() {
    for p in [5u64, 7, 11] {
        for a in 2..=p as usize - 2 {
            for g in enumerate_subgroups(a - 1, pm(p)).unwrap().step_by(97).take(4) {
                let h = g.id_vec().unwrap();
                for l in 1..=3 {
                    let e = block_expand(&h, l).unwrap();
                    let (s, t) = (e.source_points().unwrap(), e.target_points().unwrap());
                    let w = AssociationWitness::identity(s.field(), s.ncols());
                    assert!(association_check(&s, &t, &w).unwrap(), "h={h} l={l}");
                }
            }
        }
    }
}

fn id_vector() -> impl Strategy<Value = IdVector> {
    prop::sample::select(vec![11u64, 13])
        .prop_flat_map(|p| (Just(p), 2..=p as usize - 2, Just((2..p).collect::<Vec<u64>>()).prop_shuffle()))
        .prop_map(|(p, a, rest)| {
            let mut v: Vec<u64> = rest[..a - 2].to_vec();
            v.extend([1, 0]);
            IdVector::new(v, pm(p)).unwrap()
        })
}

/// Integer points in general position in `P^(d-1)`, `n` of them.
fn rational_points() -> impl Strategy<Value = CoordMatrix> {
    (2usize..=4)
        .prop_flat_map(|d| (Just(d), d + 2..=9))
        .prop_flat_map(|(d, n)| prop::collection::vec(prop::collection::vec(-7i64..=7, n), d))
        .prop_filter_map("not in general position", |grid| {
            CoordMatrix::from_ints(1, &grid).ok().filter(general_position_check)
        })
}

fn scalars(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_orbit_pairs_are_associated(h in id_vector()) {
        prop_assert!(orbit_pair_holds(&h));
    }

    #[test]
    fn transform_output_is_associated(pts in rational_points()) {
        let b = gale_transform(&pts).unwrap();
        let w = find_association_lambda(&pts, &b).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(association_check(&pts, &b, &w).unwrap());
        // symmetric in the two point sets
        prop_assert!(association_check(&b, &pts, &w).unwrap());
        prop_assert!(general_position_check(&b));
    }

    #[test]
    fn association_respects_permutation_and_rescaling(
        (pts, perm, scale) in rational_points().prop_flat_map(|m| {
            let n = m.ncols();
            (Just(m), Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), scalars(n))
        })
    ) {
        let b = gale_transform(&pts).unwrap();
        let w = find_association_lambda(&pts, &b).unwrap().unwrap();
        let pa = pts.select_columns(&perm).unwrap();
        let pb = b.select_columns(&perm).unwrap();
        let pw = AssociationWitness::new(perm.iter().map(|&j| w.lambda()[j].clone()).collect()).unwrap();
        prop_assert!(association_check(&pa, &pb, &pw).unwrap());
        prop_assert!(find_association_lambda(&pa, &pb).unwrap().is_some());
        let f = pts.field().clone();
        let mut scaled = pts.clone();
        for (j, &c) in scale.iter().enumerate() {
            scaled = scaled.rescale_column(j, &f.from_int(c)).unwrap();
        }
        prop_assert!(find_association_lambda(&scaled, &b).unwrap().is_some());
        prop_assert!(projective_equivalence(&pts, &scaled).unwrap().is_some());
    }

    #[test]
    fn double_transform_returns_the_input(pts in rational_points()) {
        let back = gale_transform(&gale_transform(&pts).unwrap()).unwrap();
        prop_assert!(projective_equivalence(&pts, &back).unwrap().is_some());
    }
}
