//! Fixtures shared by the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topsym_core::{BitVec, Gf2Matrix};

/// A reproducible random matrix with each entry set with probability `density`.
pub fn random_matrix(n_rows: usize, n_cols: usize, density: f64, seed: u64) -> Gf2Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n_rows)
        .map(|_| {
            BitVec::from_bools(
                &(0..n_cols)
                    .map(|_| rng.gen_bool(density))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Gf2Matrix::from_rows(n_cols, rows).expect("rows have n_cols bits")
}
