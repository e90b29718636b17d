//! Fiber counts of the two defining maps on `(F_q^*)^k`:
//!
//! * MD:  `(a_1..a_k) -> a_1 + ... + a_k + (a_1 ... a_k)^-1`   (delta)
//! * POW: `(a_1..a_k) -> a_1 + ... + a_k + a_1^-1 + ... + a_k^-1` (sigma)
//!
//! Each is computed by literal enumeration and by a character-sum formula.

use std::fmt;

use crate::char_sums::{check_budget, kloosterman_md_all, tuple_count};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    /// Multi-dimensional: the code `C_{n-1}` built from `v_{n-1}`.
    Md,
    /// Power: the code `D_m` built from `w_m`.
    Pow,
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeFamily::Md => "md",
            CodeFamily::Pow => "pow",
        })
    }
}

/// How many tuples of the family's domain land on each `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: CodeFamily,
    /// `n - 1` for MD, `m` for POW.
    pub param: u32,
    /// Indexed by element code.
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn get(&self, beta: Fq) -> u64 {
        self.counts[beta.idx()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Fq, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (Fq::from_code(i as u32), c))
    }

    /// `sum_beta count(beta) * lambda(a beta)`.
    pub fn character_sum(&self, ctx: &FieldCtx, a: Fq) -> i64 {
        self.iter()
            .map(|(b, c)| c as i64 * i64::from(ctx.psi(a, b)))
            .sum()
    }
}

/// Visits every tuple in `(F_q^*)^k` in odometer order (last coordinate
/// fastest, nonzero elements in increasing code order), handing the callback
/// the coordinate sum, product and inverse-sum.
pub(crate) fn for_each_tuple<F>(ctx: &FieldCtx, k: u32, mut visit: F)
where
    F: FnMut(Fq, Fq, Fq),
{
    let k = k as usize;
    let nonzero: Vec<Fq> = ctx.nonzero().collect();
    let mut digits = vec![0usize; k];
    let mut sums = vec![Fq::ZERO; k + 1];
    let mut prods = vec![Fq::ONE; k + 1];
    let mut inv_sums = vec![Fq::ZERO; k + 1];
    let mut level = 0;
    loop {
        while level < k {
            let alpha = nonzero[digits[level]];
            sums[level + 1] = sums[level] + alpha;
            prods[level + 1] = ctx.mul(prods[level], alpha);
            inv_sums[level + 1] = inv_sums[level] + ctx.inv_or_zero(alpha);
            level += 1;
        }
        visit(sums[k], prods[k], inv_sums[k]);
        loop {
            if level == 0 {
                return;
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

fn require_positive(param: u32, name: &str) -> Result<()> {
    if param == 0 {
        Err(Error::InvalidParameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// `delta(nm1, q; beta)` by enumeration.
pub fn delta_direct(ctx: &FieldCtx, nm1: u32, budget: u64) -> Result<CountTable> {
    require_positive(nm1, "n - 1")?;
    check_budget(ctx.q(), nm1, budget)?;
    let mut counts = vec![0u64; ctx.q() as usize];
    for_each_tuple(ctx, nm1, |sum, prod, _| {
        counts[(sum + ctx.inv_or_zero(prod)).idx()] += 1;
    });
    Ok(CountTable {
        family: CodeFamily::Md,
        param: nm1,
        counts,
    })
}

/// `sigma(m, q; beta)` by enumeration.
pub fn sigma_direct(ctx: &FieldCtx, m: u32, budget: u64) -> Result<CountTable> {
    require_positive(m, "m")?;
    check_budget(ctx.q(), m, budget)?;
    let mut counts = vec![0u64; ctx.q() as usize];
    for_each_tuple(ctx, m, |sum, _, inv_sum| {
        counts[(sum + inv_sum).idx()] += 1;
    });
    Ok(CountTable {
        family: CodeFamily::Pow,
        param: m,
        counts,
    })
}

fn exact_div(num: i128, q: u32) -> Result<i128> {
    let d = i128::from(q);
    if num % d != 0 {
        return Err(Error::NonIntegralCount {
            numerator: num.into(),
            divisor: d.into(),
        });
    }
    Ok(num / d)
}

fn to_count(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("negative fiber count {v}")))
}

fn tuples_i128(q: u32, k: u32) -> Result<i128> {
    tuple_count(q, k)
        .map(i128::from)
        .ok_or_else(|| Error::InvalidParameter(format!("(q-1)^{k} overflows")))
}

/// `delta(nm1, q; beta)` from Kloosterman sums.
///
/// When `nm1 + 1` is a power of two this is the closed form
/// `delta(0) = ((q-1)^nm1 + 1)/q`, `delta(beta) = K_{nm1-1}(beta^-1) + delta(0)`
/// with `K_0 = lambda`. Otherwise `a -> a^(nm1+1)` is not a Frobenius power
/// and the count is taken from the full inversion
/// `q delta(beta) = (q-1)^nm1 + sum_{a != 0} lambda(a beta) K_nm1(a^(nm1+1))`.
pub fn delta_formula(ctx: &FieldCtx, nm1: u32) -> Result<CountTable> {
    require_positive(nm1, "n - 1")?;
    let q = ctx.q();
    let total = tuples_i128(q, nm1)?;
    let mut counts = vec![0u64; q as usize];

    if (nm1 + 1).is_power_of_two() {
        let base = exact_div(total + 1, q)?;
        let k = kloosterman_md_all(ctx, nm1 - 1)?;
        counts[0] = to_count(base)?;
        for beta in ctx.nonzero() {
            let kv = i128::from(k.get(ctx.inv_or_zero(beta)));
            counts[beta.idx()] = to_count(kv + base)?;
        }
    } else {
        let k = kloosterman_md_all(ctx, nm1)?;
        let twisted: Vec<(Fq, i128)> = ctx
            .nonzero()
            .map(|a| (a, i128::from(k.get(ctx.pow(a, u64::from(nm1) + 1)))))
            .collect();
        for beta in ctx.elements() {
            let s: i128 = twisted
                .iter()
                .map(|&(a, kv)| i128::from(ctx.psi(a, beta)) * kv)
                .sum();
            counts[beta.idx()] = to_count(exact_div(total + s, q)?)?;
        }
    }
    Ok(CountTable {
        family: CodeFamily::Md,
        param: nm1,
        counts,
    })
}

/// `sigma(m, q; beta) = sum_{inverse-sum = beta} lambda(a_1 + ... + a_m)
/// + ((q-1)^m + (-1)^(m+1))/q`.
///
/// The character sum is the `m`-fold XOR convolution of
/// `x -> lambda(x^-1)` (zero at `x = 0`), so the cost is `O(m q^2)`.
pub fn sigma_formula(ctx: &FieldCtx, m: u32) -> Result<CountTable> {
    require_positive(m, "m")?;
    let q = ctx.q();
    let total = tuples_i128(q, m)?;
    let sign: i128 = if m % 2 == 1 { 1 } else { -1 };
    let base = exact_div(total + sign, q)?;

    let kernel: Vec<i128> = ctx
        .elements()
        .map(|x| {
            if x.is_zero() {
                0
            } else {
                i128::from(ctx.lambda(ctx.inv_or_zero(x)))
            }
        })
        .collect();
    let mut acc = kernel.clone();
    for _ in 1..m {
        let mut next = vec![0i128; q as usize];
        for (s, &v) in acc.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for (x, &w) in kernel.iter().enumerate() {
                next[s ^ x] += v * w;
            }
        }
        acc = next;
    }
    let counts = acc
        .into_iter()
        .map(|x| to_count(x + base))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable {
        family: CodeFamily::Pow,
        param: m,
        counts,
    })
}

/// `sigma(2, q; beta)`: `2q - 3` at zero, `K(beta^-1) + q - 3` elsewhere.
pub fn sigma2_closed_form(ctx: &FieldCtx) -> Result<CountTable> {
    let q = i64::from(ctx.q());
    let k = kloosterman_md_all(ctx, 1)?;
    let mut counts = vec![0u64; ctx.q() as usize];
    counts[0] = (2 * q - 3) as u64;
    for beta in ctx.nonzero() {
        let v = k.get(ctx.inv_or_zero(beta)) + q - 3;
        counts[beta.idx()] = to_count(i128::from(v))?;
    }
    Ok(CountTable {
        family: CodeFamily::Pow,
        param: 2,
        counts,
    })
}

/// Dispatch on family: enumeration path.
pub fn counts_direct(
    ctx: &FieldCtx,
    family: CodeFamily,
    param: u32,
    budget: u64,
) -> Result<CountTable> {
    match family {
        CodeFamily::Md => delta_direct(ctx, param, budget),
        CodeFamily::Pow => sigma_direct(ctx, param, budget),
    }
}

/// Dispatch on family: formula path.
pub fn counts_formula(ctx: &FieldCtx, family: CodeFamily, param: u32) -> Result<CountTable> {
    match family {
        CodeFamily::Md => delta_formula(ctx, param),
        CodeFamily::Pow => sigma_formula(ctx, param),
    }
}
