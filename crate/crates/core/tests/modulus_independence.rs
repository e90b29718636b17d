//! Isomorphic fields built from different moduli must give identical
//! moments, value distributions and code weight distributions.

use std::collections::BTreeMap;

use kloo_core::field::is_irreducible;
use kloo_core::*;

fn all_moduli(r: u32) -> Vec<u32> {
    ((1u32 << r) + 1..(1u32 << (r + 1)))
        .step_by(2)
        .filter(|&p| is_irreducible(p))
        .collect()
}

fn value_multiset(f: &FieldCtx, m: u32) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (_, v) in kloosterman_md_all(f, m).unwrap().iter() {
        *out.entry(v).or_default() += 1;
    }
    out
}

#[test]
fn moduli_counts() {
    assert_eq!(all_moduli(3), [0xb, 0xd]);
    assert_eq!(all_moduli(4), [0x13, 0x19, 0x1f]);
    assert_eq!(all_moduli(5).len(), 6);
}

#[test]
fn moments_do_not_depend_on_modulus() {
    for r in 3..=5 {
        let reference = FieldCtx::new(r, None).unwrap();
        let md = recursive_moments_md(&reference, 4, 6).unwrap();
        let pow = recursive_moments_power(&reference, 2, 5).unwrap();
        for p in all_moduli(r) {
            let f = FieldCtx::new(r, Some(p)).unwrap();
            assert_eq!(
                recursive_moments_md(&f, 4, 6).unwrap().values,
                md.values,
                "r={r} modulus={p:x}"
            );
            assert_eq!(
                recursive_moments_power(&f, 2, 5).unwrap().values,
                pow.values,
                "r={r} modulus={p:x}"
            );
            for m in 1..=3 {
                assert_eq!(
                    value_multiset(&f, m),
                    value_multiset(&reference, m),
                    "r={r} modulus={p:x} m={m}"
                );
            }
        }
    }
}

#[test]
fn weight_distributions_do_not_depend_on_modulus() {
    let o = CodeOptions::default();
    let dist = |f: &FieldCtx| {
        let spec = CodeSpec::pow(f, 2, o).unwrap();
        weight_distribution(&spec.counts().unwrap(), DEFAULT_DP_LIMIT).unwrap()
    };
    let reference = dist(&FieldCtx::new(4, None).unwrap());
    for p in all_moduli(4) {
        assert_eq!(
            dist(&FieldCtx::new(4, Some(p)).unwrap()),
            reference,
            "modulus={p:x}"
        );
    }
}
