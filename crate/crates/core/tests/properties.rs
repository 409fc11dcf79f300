mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use topsym_core::complexes::{absolute_betti, reduced_betti, relative_betti};
use topsym_core::exactness::lefschetz_duality_check;
use topsym_core::spaces::{self, cone, full_double};
use topsym_core::symmetry::factor2_check;
use topsym_core::{
    analyze_action, build_matching, check_sphere_action, check_symmetry, euler_characteristic,
    les_exactness_check, morse_complex, AnalyzeOptions, CheckStatus, ComplexPair, Gf2Matrix,
    SeedOrder, SimplicialComplex,
};

fn catalog_index() -> impl Strategy<Value = usize> {
    0..common::catalog_pairs().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_is_invariant_under_relabeling(idx in catalog_index(), seed in any::<u64>()) {
        let (_, pair) = common::catalog_pairs().swap_remove(idx);
        let mut labels: Vec<u32> = (0..=pair.ambient().max_vertex().unwrap_or(0)).collect();
        labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let map = |v: u32| labels[v as usize] + 100;
        let moved = ComplexPair::new(
            pair.ambient().relabel(map).unwrap(),
            pair.sub().relabel(map).unwrap(),
        ).unwrap();
        prop_assert_eq!(relative_betti(&pair), relative_betti(&moved));
    }

    #[test]
    fn simplicial_excision(seed in any::<u64>()) {
        // (A ∪ B, B) and (A, A ∩ B) have the same homology
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, pair) = common::random_pair(&mut rng, 300);
        let x = pair.ambient();
        let a = common::random_subcomplex(x, 0.6, &mut rng);
        let b = common::random_subcomplex(x, 0.6, &mut rng);
        let lhs = relative_betti(&ComplexPair::new(a.union(&b), b.clone()).unwrap());
        let rhs = relative_betti(&ComplexPair::new(a.clone(), a.intersection(&b)).unwrap());
        prop_assert!(lhs.same_dims(&rhs));
    }

    #[test]
    fn euler_characteristic_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, pair) = common::random_pair(&mut rng, 500);
        let chi = euler_characteristic(&pair);
        prop_assert_eq!(chi, relative_betti(&pair).euler_characteristic());
        let x = euler_characteristic(&ComplexPair::absolute(pair.ambient().clone()));
        let a = euler_characteristic(&ComplexPair::absolute(pair.sub().clone()));
        prop_assert_eq!(chi, x - a);
    }

    #[test]
    fn long_exact_sequence_on_random_pairs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, pair) = common::random_pair(&mut rng, 200);
        let report = les_exactness_check(&pair).unwrap();
        prop_assert!(report.passed(), "{}:\n{}", name, report);
    }

    #[test]
    fn rank_nullity(rows in 1usize..14, cols in 1usize..14, seed in any::<u64>()) {
        let m = random_matrix(rows, cols, seed);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn morse_inequalities_and_euler(idx in catalog_index(), seed in any::<u64>()) {
        let (_, pair) = common::catalog_pairs().swap_remove(idx);
        let m = build_matching(&pair, &SeedOrder::Shuffled(seed)).unwrap();
        let mc = morse_complex(&m).unwrap();
        let betti = mc.betti();
        prop_assert!(betti.same_dims(&relative_betti(&pair)));
        for (k, count) in mc.critical_counts().into_iter().enumerate() {
            prop_assert!(count >= betti.get(k as i64));
        }
        prop_assert_eq!(mc.euler_characteristic(), euler_characteristic(&pair));
        for cells in &mc.critical {
            prop_assert!(cells.iter().all(|c| !pair.sub().contains(c)));
        }
    }
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> Gf2Matrix {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense: Vec<Vec<u8>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect())
        .collect();
    Gf2Matrix::from_dense(&dense)
}

#[test]
fn poincare_duality_for_full_doubles() {
    for w in [
        spaces::ball(1),
        spaces::ball(2),
        spaces::ball(3),
        spaces::disk(),
        spaces::annulus(),
        spaces::mobius_band(),
    ] {
        let closed = full_double(&w).unwrap();
        closed.validate_pseudomanifold().unwrap();
        let d = closed.dimension();
        let b = absolute_betti(&closed);
        for k in 0..=d {
            assert_eq!(b.get(k), b.get(d - k), "degree {k} of double of {w:?}");
        }
    }
}

#[test]
fn factor_two_on_every_catalog_split() {
    for (name, split) in common::catalog_splits() {
        let r = factor2_check(&split).unwrap();
        assert_eq!(r.status, CheckStatus::Pass, "{name}: {r:?}");
    }
}

#[test]
fn regions_give_the_same_verdict_when_duality_applies() {
    for (name, split) in common::catalog_splits() {
        if lefschetz_duality_check(&split).is_err() {
            continue;
        }
        let r = analyze_action(&split, &AnalyzeOptions::default()).unwrap();
        assert!(r.regions_agree(), "{name}");
        let swapped = analyze_action(&split.swapped(), &AnalyzeOptions::default()).unwrap();
        assert_eq!(swapped.verdict_positive, r.verdict_negative, "{name}");
    }
}

#[test]
fn sphere_action_matches_the_cone_pair() {
    let mut corpus: Vec<SimplicialComplex> = common::catalog_splits()
        .into_iter()
        .map(|(_, s)| s.complex().clone())
        .collect();
    corpus.push(SimplicialComplex::new());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        corpus.push(common::random_subcomplex(
            &spaces::cross_polytope_sphere(2),
            0.5,
            &mut rng,
        ));
    }
    for p in corpus {
        let reduced = check_sphere_action(&p);
        let pair = ComplexPair::new(cone(&p), p.clone()).unwrap();
        let relative = check_symmetry(&relative_betti(&pair));
        assert_eq!(reduced.symmetric, relative.symmetric, "{p:?}");
        if !reduced_betti(&p).is_zero() && reduced.symmetric {
            assert_eq!(relative.shifts[0], reduced.shifts[0] + 2, "{p:?}");
        }
    }
}
