//! Shared fixtures for the criterion benches in `benches/`.

use kloo_core::{CodeFamily, CountTable, FieldCtx};

/// GF(2^r) with the default modulus.
pub fn field(r: u32) -> FieldCtx {
    FieldCtx::new(r, None).expect("default modulus exists for 2..=20")
}

pub fn counts(ctx: &FieldCtx, family: CodeFamily, param: u32) -> CountTable {
    kloo_core::counts_formula(ctx, family, param).expect("valid parameters")
}
