//! Corpus helpers shared by the integration suites.
#![allow(dead_code)]

use rand::Rng;
use topsym_core::spaces::{builtin_example, CATALOG_SAMPLE};
use topsym_core::{BoundarySplit, ComplexPair, SimplicialComplex};

pub fn catalog_splits() -> Vec<(&'static str, BoundarySplit)> {
    CATALOG_SAMPLE
        .iter()
        .map(|&name| (name, builtin_example(name).unwrap().into_split()))
        .collect()
}

/// `(W, P)`, `(W, Nn)` and `(W, empty)` for every catalog entry, without repeats.
pub fn catalog_pairs() -> Vec<(String, ComplexPair)> {
    let mut out: Vec<(String, ComplexPair)> = Vec::new();
    for (name, split) in catalog_splits() {
        let w = split.complex().clone();
        for (label, sub) in [
            ("P", split.positive().clone()),
            ("Nn", split.negative().clone()),
            ("empty", SimplicialComplex::new()),
        ] {
            let pair = ComplexPair::new(w.clone(), sub).unwrap();
            if !out.iter().any(|(_, p)| *p == pair) {
                out.push((format!("{name}/{label}"), pair));
            }
        }
    }
    out
}

/// Closure of a random subset of the maximal simplices (at least one kept).
pub fn random_subcomplex(
    x: &SimplicialComplex,
    keep: f64,
    rng: &mut impl Rng,
) -> SimplicialComplex {
    let maximal = x.maximal_simplices();
    if maximal.is_empty() {
        return SimplicialComplex::new();
    }
    let mut kept: Vec<_> = maximal
        .iter()
        .filter(|_| rng.gen_bool(keep))
        .cloned()
        .collect();
    if kept.is_empty() {
        kept.push(maximal[rng.gen_range(0..maximal.len())].clone());
    }
    SimplicialComplex::from_simplices(kept.iter())
}

/// A random pair `(Y, B)` with `Y` a subcomplex of a catalog space and `B`
/// the closure of random simplices of `Y`; at most `max_size` simplices.
pub fn random_pair(rng: &mut impl Rng, max_size: usize) -> (String, ComplexPair) {
    loop {
        let name = CATALOG_SAMPLE[rng.gen_range(0..CATALOG_SAMPLE.len())];
        let x = builtin_example(name).unwrap().complex().clone();
        let y = random_subcomplex(&x, 0.8, rng);
        if y.len() > max_size {
            continue;
        }
        let picked: Vec<_> = y.iter().filter(|_| rng.gen_bool(0.25)).cloned().collect();
        let b = SimplicialComplex::from_simplices(picked.iter());
        return (name.to_string(), ComplexPair::new(y, b).unwrap());
    }
}
