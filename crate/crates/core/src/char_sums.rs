//! Kloosterman sums and their multi-dimensional analogues for the canonical
//! additive character, plus the identities relating them.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// Default cap on the number of terms any brute-force enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000_000;

/// `(q-1)^m` if it fits in a `u64`.
pub fn tuple_count(q: u32, m: u32) -> Option<u64> {
    u64::from(q - 1).checked_pow(m)
}

pub(crate) fn check_budget(q: u32, m: u32, budget: u64) -> Result<u64> {
    match tuple_count(q, m) {
        Some(n) if n <= budget => Ok(n),
        Some(n) => Err(Error::BudgetExceeded {
            required: u128::from(n),
            budget: u128::from(budget),
        }),
        None => Err(Error::BudgetExceeded {
            required: u128::MAX,
            budget: u128::from(budget),
        }),
    }
}

/// `K(psi; a) = sum over nonzero alpha of psi(alpha + a/alpha)` with
/// `psi(x) = lambda(twist * x)`.
pub fn kloosterman(ctx: &FieldCtx, a: Fq, twist: Fq) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroParameter("a"));
    }
    if twist.is_zero() {
        return Err(Error::ZeroParameter("twist"));
    }
    Ok(ctx
        .nonzero()
        .map(|alpha| {
            let arg = alpha + ctx.mul(a, ctx.inv_or_zero(alpha));
            i64::from(ctx.psi(twist, arg))
        })
        .sum())
}

/// `K_m(lambda; a)` by literal enumeration of `(F_q^*)^m`.
pub fn kloosterman_md_direct(ctx: &FieldCtx, m: u32, a: Fq, budget: u64) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroParameter("a"));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "dimension m must be positive".into(),
        ));
    }
    check_budget(ctx.q(), m, budget)?;

    let m = m as usize;
    let nonzero: Vec<Fq> = ctx.nonzero().collect();
    // Odometer over digit tuples; sums[i]/prods[i] cover the first i coordinates.
    let mut digits = vec![0usize; m];
    let mut sums = vec![Fq::ZERO; m + 1];
    let mut prods = vec![Fq::ONE; m + 1];
    let mut total = 0i64;
    let mut level = 0;
    loop {
        while level < m {
            let alpha = nonzero[digits[level]];
            sums[level + 1] = sums[level] + alpha;
            prods[level + 1] = ctx.mul(prods[level], alpha);
            level += 1;
        }
        let arg = sums[m] + ctx.mul(a, ctx.inv_or_zero(prods[m]));
        total += i64::from(ctx.lambda(arg));

        // advance
        loop {
            if level == 0 {
                return Ok(total);
            }
            level -= 1;
            digits[level] += 1;
            if digits[level] < nonzero.len() {
                break;
            }
            digits[level] = 0;
        }
    }
}

/// `K_m(lambda; a)` for every nonzero `a`, indexed by element code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsumTable {
    m: u32,
    /// `values[0]` is unused and kept at 0.
    values: Vec<i64>,
}

impl KsumTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Panics on `a = 0`.
    pub fn get(&self, a: Fq) -> i64 {
        assert!(!a.is_zero(), "K_m is defined on nonzero arguments only");
        self.values[a.idx()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Fq, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| (Fq::from_code(i as u32), v))
    }
}

/// All `K_m(lambda; a)` through the convolution
/// `K_m(a) = sum_alpha lambda(alpha) K_{m-1}(a / alpha)`, `K_0(a) = lambda(a)`.
///
/// `m = 0` is accepted and yields the character table itself. Fails when
/// `(q-1)^m` does not fit in an `i64`, the trivial bound on `|K_m|`.
pub fn kloosterman_md_all(ctx: &FieldCtx, m: u32) -> Result<KsumTable> {
    match tuple_count(ctx.q(), m) {
        Some(n) if n <= i64::MAX as u64 => {}
        _ => {
            return Err(Error::InvalidParameter(format!(
                "(q-1)^{m} overflows 64-bit sums"
            )))
        }
    }
    let q = ctx.q() as usize;
    let mut cur: Vec<i64> = ctx.elements().map(|x| i64::from(ctx.lambda(x))).collect();
    cur[0] = 0;
    let inverses: Vec<Fq> = ctx.elements().map(|x| ctx.inv_or_zero(x)).collect();
    for _ in 0..m {
        let mut next = vec![0i64; q];
        for a in ctx.nonzero() {
            next[a.idx()] = ctx
                .nonzero()
                .map(|alpha| {
                    let prev = cur[ctx.mul(a, inverses[alpha.idx()]).idx()];
                    i64::from(ctx.lambda(alpha)) * prev
                })
                .sum();
        }
        cur = next;
    }
    Ok(KsumTable { m, values: cur })
}

/// `sum over alpha not in {0, 1} of lambda(beta / (alpha^2 + alpha))`.
pub fn artin_schreier_sum(ctx: &FieldCtx, beta: Fq) -> Result<i64> {
    if beta.is_zero() {
        return Err(Error::ZeroParameter("beta"));
    }
    Ok(ctx
        .elements()
        .skip(2)
        .map(|alpha| {
            let den = ctx.square(alpha) + alpha;
            i64::from(ctx.lambda(ctx.mul(beta, ctx.inv_or_zero(den))))
        })
        .sum())
}

/// `|value| <= (m+1) q^(m/2)`, checked exactly as `value^2 <= (m+1)^2 q^m`.
pub fn within_deligne_bound(q: u32, m: u32, value: i64) -> bool {
    let lhs = BigInt::from(value) * BigInt::from(value);
    let rhs = BigInt::from((m + 1) * (m + 1)) * BigInt::from(q).pow(m);
    lhs <= rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueEntry {
    pub t: i64,
    pub predicted: bool,
    pub count: u64,
    /// `t^2 - q`, one of the two class-number conventions in use.
    pub class_arg_q: i64,
    /// `t^2 - 4q`, the usual convention in the literature.
    pub class_arg_4q: i64,
}

/// Observed range of `K(lambda; a)` against `{t : |t| < 2 sqrt(q), t = -1 mod 4}`.
///
/// Multiplicities are reported as observed; they are never compared with a
/// class-number prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueRangeReport {
    pub q: u32,
    pub predicted: Vec<i64>,
    pub observed: BTreeMap<i64, u64>,
    /// Predicted values never attained.
    pub missing: Vec<i64>,
    /// Attained values outside the predicted set.
    pub unexpected: Vec<i64>,
    pub entries: Vec<ValueEntry>,
}

impl ValueRangeReport {
    pub fn is_consistent(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.observed.values().sum()
    }
}

pub fn predicted_range(q: u32) -> Vec<i64> {
    let four_q = 4 * i64::from(q);
    let mut t = 0i64;
    while (t + 1) * (t + 1) < four_q {
        t += 1;
    }
    (-t..=t)
        .filter(|v| v * v < four_q && v.rem_euclid(4) == 3)
        .collect()
}

pub fn value_range(ctx: &FieldCtx) -> Result<ValueRangeReport> {
    if ctx.r() < 2 {
        return Err(Error::UnsupportedDegree {
            r: ctx.r(),
            min: 2,
            max: crate::field::MAX_DEGREE,
        });
    }
    let q = ctx.q();
    let table = kloosterman_md_all(ctx, 1)?;
    let mut observed = BTreeMap::new();
    for (_, v) in table.iter() {
        *observed.entry(v).or_insert(0u64) += 1;
    }
    let predicted = predicted_range(q);
    let missing = predicted
        .iter()
        .copied()
        .filter(|t| !observed.contains_key(t))
        .collect();
    let unexpected = observed
        .keys()
        .copied()
        .filter(|t| predicted.binary_search(t).is_err())
        .collect();
    let mut ts: Vec<i64> = predicted.iter().chain(observed.keys()).copied().collect();
    ts.sort_unstable();
    ts.dedup();
    let entries = ts
        .into_iter()
        .map(|t| ValueEntry {
            t,
            predicted: predicted.binary_search(&t).is_ok(),
            count: observed.get(&t).copied().unwrap_or(0),
            class_arg_q: t * t - i64::from(q),
            class_arg_4q: t * t - 4 * i64::from(q),
        })
        .collect();
    Ok(ValueRangeReport {
        q,
        predicted,
        observed,
        missing,
        unexpected,
        entries,
    })
}
