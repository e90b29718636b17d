//! Exact power moments of Kloosterman sums over GF(2^r).
//!
//! The moments are computed two independent ways: by brute-force summation
//! over the field, and by recursions that feed the weight distributions of
//! two families of binary codes through the Pless power-moment identity.
//! Supporting identities (fiber counts, dual weights, MacWilliams duality,
//! `K_2 = K^2 - q`, the value range of `K`) are exposed so they can be
//! verified on their own.
//!
//! ```
//! use kloo_core::{FieldCtx, MomentKind, moment_oracle_sequence, recursive_moments_md};
//!
//! let f = FieldCtx::new(3, None).unwrap();
//! let rec = recursive_moments_md(&f, 2, 4).unwrap();
//! let brute = moment_oracle_sequence(&f, MomentKind::Md { n: 2 }, 4).unwrap();
//! assert_eq!(rec.values, brute.values);
//! ```

pub mod char_sums;
pub mod codes;
pub mod counts;
pub mod error;
pub mod field;
pub mod moments;

pub use char_sums::{
    artin_schreier_sum, kloosterman, kloosterman_md_all, kloosterman_md_direct, predicted_range,
    value_range, within_deligne_bound, KsumTable, ValueEntry, ValueRangeReport,
    DEFAULT_ENUM_BUDGET,
};
pub use codes::{
    build_defining_vector, dual_codeword, dual_weight, dual_weight_enumerator, dual_weights,
    exhaustive_weight_distribution, injectivity_check, macwilliams_transform, weight_distribution,
    weight_distribution_truncated, CodeOptions, CodeSpec, DefiningVector, InjectivityReport,
    WeightEnumerator, DEFAULT_DP_LIMIT, EXHAUSTIVE_LIMIT,
};
pub use counts::{
    counts_direct, counts_formula, delta_direct, delta_formula, sigma2_closed_form, sigma_direct,
    sigma_formula, CodeFamily, CountTable,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldSpec, Fq};
pub use moments::{
    k2_from_square_moments, moment_oracle, moment_oracle_sequence, pless_check, recursive_moments,
    recursive_moments_k2, recursive_moments_k2_with, recursive_moments_md,
    recursive_moments_md_with, recursive_moments_power, recursive_moments_power_with, stirling2,
    MomentKind, MomentSequence, PlessReport, StirlingCache,
};
