//! Block decomposition, exact block spectra and index/nullity totals.

pub mod block;
pub mod factored;
pub mod report;

pub use block::{block, block_matrix, block_signature, float_signature, jp_float_matrix, BasisElement, Block, BlockLabel, BASIS_ORDERING};
pub use factored::{check_factorisation, expected_char_poly, i2_cubic, i2_quartic, sign_pattern_holds};
pub use report::{
    composition_condition, eigenvalue_multiplicity, enumerate_blocks, index_nullity, jacobi_composition_condition, pharmonic_sweep,
    poly_from_roots, BlockSummary, Composition, Mode, SpectrumReport, SweepRow, Witness, DEFAULT_CUTOFF,
};
