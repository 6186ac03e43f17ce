//! Names for subgroups of S_3 .. S_6, one representative per conjugacy
//! class that matters here. A label reads `Iso-gens`, e.g. `C2-(13)(24)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use super::permutation::{all_permutations, generate_group, Permutation};

const S3: &[(&str, &[&str])] = &[
    ("C2", &["(12)"]),
    ("C3", &["(123)"]),
    ("S3", &["(12)", "(123)"]),
];

const S4: &[(&str, &[&str])] = &[
    ("C2", &["(12)"]),
    ("C2", &["(13)(24)"]),
    ("C3", &["(123)"]),
    ("C4", &["(1234)"]),
    ("V4", &["(12)", "(34)"]),
    ("V4", &["(12)(34)", "(13)(24)"]),
    ("S3", &["(12)", "(123)"]),
    ("D8", &["(1234)", "(13)"]),
    ("A4", &["(123)", "(12)(34)"]),
    ("S4", &["(1234)", "(12)"]),
];

const S5: &[(&str, &[&str])] = &[
    ("C2", &["(12)"]),
    ("C2", &["(14)(23)"]),
    ("C3", &["(123)"]),
    ("C4", &["(1243)"]),
    ("C5", &["(12345)"]),
    ("C6", &["(123)(45)"]),
    ("V4", &["(12)", "(34)"]),
    ("V4", &["(12)(34)", "(13)(24)"]),
    ("S3", &["(12)", "(123)"]),
    ("S3", &["(123)", "(12)(45)"]),
    ("D8", &["(1234)", "(13)"]),
    ("D10", &["(12345)", "(14)(23)"]),
    ("D12", &["(123)", "(12)", "(45)"]),
    ("A4", &["(123)", "(12)(34)"]),
    ("D20", &["(12345)", "(1243)"]),
    ("S4", &["(1234)", "(12)"]),
    ("A5", &["(123)", "(12345)"]),
    ("S5", &["(12345)", "(12)"]),
];

// partial: the classes that occur as stabilizers, plus a few neighbours
const S6: &[(&str, &[&str])] = &[
    ("C2", &["(12)"]),
    ("C2", &["(12)(34)"]),
    ("C2", &["(14)(25)(36)"]),
    ("C3", &["(123)"]),
    ("C3", &["(135)(246)"]),
    ("C4", &["(1234)"]),
    ("C4", &["(1234)(56)"]),
    ("C5", &["(12345)"]),
    ("C6", &["(123456)"]),
    ("C6", &["(123)(45)"]),
    ("S3", &["(12)", "(123)"]),
    ("D12", &["(123456)", "(16)(25)(34)"]),
];

pub struct CatalogEntry {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    histogram: BTreeMap<Vec<usize>, usize>,
}

fn histogram(group: &[Permutation]) -> BTreeMap<Vec<usize>, usize> {
    let mut h = BTreeMap::new();
    for g in group {
        *h.entry(g.cycle_type()).or_insert(0) += 1;
    }
    h
}

fn entries() -> &'static Vec<CatalogEntry> {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        for (n, table) in [(3usize, S3), (4, S4), (5, S5), (6, S6)] {
            for (name, gens) in table {
                let generators: Vec<Permutation> =
                    gens.iter().map(|g| Permutation::parse(g, n).expect("catalog entry")).collect();
                let elements = generate_group(&generators, n);
                out.push(CatalogEntry {
                    label: format!("{name}-{}", gens.join(",")),
                    degree: n,
                    histogram: histogram(&elements),
                    generators,
                    elements,
                });
            }
        }
        out
    })
}

/// Catalog entries of the given degree.
pub fn catalog(degree: usize) -> impl Iterator<Item = &'static CatalogEntry> {
    entries().iter().filter(move |e| e.degree == degree)
}

/// Some `tau` with `tau * inner * tau^-1` contained in `outer`.
pub fn contains_conjugate(outer: &[Permutation], inner_gens: &[Permutation], n: usize) -> bool {
    let types: HashSet<Vec<usize>> = outer.iter().map(Permutation::cycle_type).collect();
    if !inner_gens.iter().all(|g| types.contains(&g.cycle_type())) {
        return false;
    }
    let set: HashSet<&Permutation> = outer.iter().collect();
    all_permutations(n).any(|tau| inner_gens.iter().all(|g| set.contains(&g.conjugate_by(&tau))))
}

/// Label of a permutation group given by its full element list.
pub fn stabilizer_label(group: &[Permutation], n: usize) -> String {
    if group.len() <= 1 {
        return "trivial".into();
    }
    if n == group.len() && n == 2 {
        return "C2-(12)".into();
    }
    let h = histogram(group);
    for e in catalog(n) {
        if e.elements.len() == group.len() && e.histogram == h && contains_conjugate(group, &e.generators, n) {
            return e.label.clone();
        }
    }
    fallback_label(group.len() as u128)
}

pub fn fallback_label(order: u128) -> String {
    if order == 1 {
        "trivial".into()
    } else {
        format!("order-{order}")
    }
}

/// Group elements for a catalog label of the given degree.
pub fn group_for_label(label: &str, n: usize) -> Option<&'static [Permutation]> {
    catalog(n).find(|e| e.label == label).map(|e| e.elements.as_slice())
}
