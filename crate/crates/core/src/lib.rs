//! Homological verification toolkit for contact circle actions modeled on
//! triangulated Liouville domains.
//!
//! Everything is computed exactly over GF(2): homology of simplicial pairs,
//! the long exact sequence of a pair, relative Mayer-Vietoris, Lefschetz
//! duality tables, discrete Morse homology of a pair with an exit region,
//! and the symmetry verdict on the resulting Betti tables.

pub mod complexes;
pub mod error;
pub mod exactness;
pub mod gf2;
pub mod morse;
pub mod spaces;
pub mod symmetry;

pub use complexes::{
    betti, chain_complex, euler_characteristic, BettiTable, ChainComplex, ComplexPair, Flavor,
    HomologyBasis, Simplex, SimplicialComplex, Vertex,
};
pub use error::{Result, TopologyError};
pub use exactness::{
    connecting_map, induced_map, lefschetz_duality_check, les_exactness_check,
    mayer_vietoris_check, PairMorphism,
};
pub use gf2::{BitVec, Gf2Matrix};
pub use morse::{build_matching, morse_betti, morse_complex, AcyclicMatching, SeedOrder};
pub use spaces::{builtin_example, truncated_double, BoundarySplit, CatalogEntry};
pub use symmetry::{
    analyze_action, check_sphere_action, check_symmetry, check_symmetry_rolled, roll_up,
    ActionReport, AnalyzeOptions, CheckStatus, SymmetryVerdict,
};
