//! The binary codes `C_{n-1}` and `D_m` cut out by a defining vector over
//! GF(q), their duals `{c(a)}` / `{d(a)}`, and exact weight distributions.
//!
//! A binary word `u` lies in the code when `sum_i u_i g_i = 0` in GF(q),
//! where `g` is the defining vector. The distribution is computed from the
//! fiber counts alone by a dynamic program over `(weight, accumulated sum)`;
//! it is cross-checked against brute-force enumeration and against the
//! MacWilliams transform of the dual enumerator.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::char_sums::{check_budget, kloosterman_md_all, tuple_count};
use crate::counts::{counts_formula, for_each_tuple, CodeFamily, CountTable};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// Largest code length the weight-distribution DP accepts by default.
pub const DEFAULT_DP_LIMIT: usize = 5000;

/// Largest length for which exhaustive codeword enumeration is offered.
pub const EXHAUSTIVE_LIMIT: usize = 26;

/// Escape hatches for configurations outside the theory's hypotheses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CodeOptions {
    /// Permit MD codes with `n` not a power of two.
    pub allow_any_n: bool,
    /// Permit `r = 2`, where `a -> c(a)` need not be injective.
    pub allow_r2: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CodeSpec<'a> {
    ctx: &'a FieldCtx,
    family: CodeFamily,
    param: u32,
    length: u64,
    options: CodeOptions,
}

impl<'a> CodeSpec<'a> {
    /// `C_{n-1}`, of length `(q-1)^(n-1)`.
    pub fn md(ctx: &'a FieldCtx, n: u32, options: CodeOptions) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} must be at least 2"
            )));
        }
        if !n.is_power_of_two() && !options.allow_any_n {
            return Err(Error::NotPowerOfTwo(n));
        }
        Self::build(ctx, CodeFamily::Md, n - 1, options)
    }

    /// `D_m`, of length `(q-1)^m`.
    pub fn pow(ctx: &'a FieldCtx, m: u32, options: CodeOptions) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        Self::build(ctx, CodeFamily::Pow, m, options)
    }

    /// From a family and its tuple dimension (`n - 1` or `m`).
    pub fn new(
        ctx: &'a FieldCtx,
        family: CodeFamily,
        param: u32,
        options: CodeOptions,
    ) -> Result<Self> {
        match family {
            CodeFamily::Md => Self::md(ctx, param + 1, options),
            CodeFamily::Pow => Self::pow(ctx, param, options),
        }
    }

    fn build(
        ctx: &'a FieldCtx,
        family: CodeFamily,
        param: u32,
        options: CodeOptions,
    ) -> Result<Self> {
        let length = tuple_count(ctx.q(), param)
            .ok_or_else(|| Error::InvalidParameter(format!("(q-1)^{param} overflows")))?;
        Ok(CodeSpec {
            ctx,
            family,
            param,
            length,
            options,
        })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn family(&self) -> CodeFamily {
        self.family
    }

    pub fn param(&self) -> u32 {
        self.param
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn options(&self) -> CodeOptions {
        self.options
    }

    /// Fiber counts of the defining vector, via the formula path.
    pub fn counts(&self) -> Result<CountTable> {
        counts_formula(self.ctx, self.family, self.param)
    }

    /// Length as `usize`, subject to `limit`.
    fn length_within(&self, limit: usize) -> Result<usize> {
        match usize::try_from(self.length) {
            Ok(n) if n <= limit => Ok(n),
            _ => Err(Error::BudgetExceeded {
                required: u128::from(self.length),
                budget: limit as u128,
            }),
        }
    }
}

/// The defining vector `v_{n-1}` or `w_m`.
///
/// Index `i` decodes, in base `q - 1` with the last coordinate least
/// significant, to a tuple of nonzero elements taken in increasing code
/// order.
#[derive(Clone, Debug)]
pub struct DefiningVector<'a> {
    spec: CodeSpec<'a>,
    entries: Vec<Fq>,
}

impl<'a> DefiningVector<'a> {
    pub fn spec(&self) -> &CodeSpec<'a> {
        &self.spec
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    /// Multiset of entries as a count table.
    pub fn count_table(&self) -> CountTable {
        let mut counts = vec![0u64; self.spec.ctx.q() as usize];
        for e in &self.entries {
            counts[e.idx()] += 1;
        }
        CountTable {
            family: self.spec.family,
            param: self.spec.param,
            counts,
        }
    }
}

pub fn build_defining_vector<'a>(spec: &CodeSpec<'a>, budget: u64) -> Result<DefiningVector<'a>> {
    let ctx = spec.ctx;
    let n = check_budget(ctx.q(), spec.param, budget)?;
    let mut entries = Vec::with_capacity(n as usize);
    match spec.family {
        CodeFamily::Md => for_each_tuple(ctx, spec.param, |sum, prod, _| {
            entries.push(sum + ctx.inv_or_zero(prod));
        }),
        CodeFamily::Pow => for_each_tuple(ctx, spec.param, |sum, _, inv_sum| {
            entries.push(sum + inv_sum);
        }),
    }
    Ok(DefiningVector {
        spec: *spec,
        entries,
    })
}

/// `c(a)` / `d(a)`: bit `i` is `tr(a g_i)`.
pub fn dual_codeword(vector: &DefiningVector<'_>, a: Fq) -> Vec<bool> {
    let ctx = vector.spec.ctx;
    vector
        .entries
        .iter()
        .map(|&g| ctx.trace(ctx.mul(a, g)) == 1)
        .collect()
}

fn halve(length: u64, sum: i128) -> Result<u64> {
    let diff = i128::from(length) - sum;
    if diff.rem_euclid(2) != 0 {
        return Err(Error::ParityViolation {
            length: length.into(),
            value: sum.into(),
        });
    }
    u64::try_from(diff / 2)
        .map_err(|_| Error::InvalidParameter(format!("negative weight from sum {sum}")))
}

/// Closed-form weights of every dual codeword, indexed by the code of `a`.
///
/// MD: `w(c(a)) = (N - K_{n-1}(a^n)) / 2`, which is `(N - K_{n-1}(a)) / 2`
/// when `n` is a power of two. POW: `w(d(a)) = (N - K(a)^m) / 2`.
pub fn dual_weights(spec: &CodeSpec<'_>) -> Result<Vec<u64>> {
    let ctx = spec.ctx;
    let mut weights = vec![0u64; ctx.q() as usize];
    match spec.family {
        CodeFamily::Md => {
            let n = u64::from(spec.param) + 1;
            let k = kloosterman_md_all(ctx, spec.param)?;
            for a in ctx.nonzero() {
                let kv = if n.is_power_of_two() {
                    k.get(a)
                } else {
                    k.get(ctx.pow(a, n))
                };
                weights[a.idx()] = halve(spec.length, i128::from(kv))?;
            }
        }
        CodeFamily::Pow => {
            let k = kloosterman_md_all(ctx, 1)?;
            for a in ctx.nonzero() {
                let kv = i128::from(k.get(a))
                    .checked_pow(spec.param)
                    .ok_or_else(|| Error::InvalidParameter("K(a)^m overflows".into()))?;
                weights[a.idx()] = halve(spec.length, kv)?;
            }
        }
    }
    Ok(weights)
}

pub fn dual_weight(spec: &CodeSpec<'_>, a: Fq) -> Result<u64> {
    if a.is_zero() {
        return Ok(0);
    }
    Ok(dual_weights(spec)?[a.idx()])
}

/// Exact weight distribution `freq[j]`, `j = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    freq: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn new(freq: Vec<BigUint>) -> Self {
        assert!(
            !freq.is_empty(),
            "a weight enumerator covers at least weight 0"
        );
        WeightEnumerator { freq }
    }

    /// Code length `N` (the enumerator has `N + 1` entries).
    pub fn length(&self) -> usize {
        self.freq.len() - 1
    }

    pub fn freq(&self) -> &[BigUint] {
        &self.freq
    }

    pub fn get(&self, j: usize) -> BigUint {
        self.freq.get(j).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.freq.iter().sum()
    }

    pub fn freq_mut(&mut self) -> &mut [BigUint] {
        &mut self.freq
    }
}

/// Enumerator of the dual code `{c(a) : a in F_q}` from the closed-form
/// weights. Requires `r >= 3` and an injective `a -> c(a)` unless
/// `allow_r2` is set.
pub fn dual_weight_enumerator(spec: &CodeSpec<'_>) -> Result<WeightEnumerator> {
    let ctx = spec.ctx;
    if ctx.r() < 3 && !spec.options.allow_r2 {
        return Err(Error::UnsupportedDegree {
            r: ctx.r(),
            min: 3,
            max: crate::field::MAX_DEGREE,
        });
    }
    let n = spec.length_within(usize::MAX)?;
    let weights = dual_weights(spec)?;
    let mut freq = vec![BigUint::zero(); n + 1];
    freq[0] += 1u32;
    for a in ctx.nonzero() {
        let w = weights[a.idx()];
        if w == 0 && !spec.options.allow_r2 {
            return Err(Error::InjectivityFailure { witness: a.code() });
        }
        freq[w as usize] += 1u32;
    }
    Ok(WeightEnumerator { freq })
}

/// In place: `p <- p * (1 + sign x)^times`, keeping at most `cap` terms.
/// `p` must already hold room for the product (or `cap` entries).
fn mul_binomial_power(p: &mut [BigInt], used: usize, times: u64, negate: bool) {
    let cap = p.len();
    let mut len = used;
    for _ in 0..times {
        let top = len.min(cap - 1);
        for i in (1..=top).rev() {
            let (lo, hi) = p.split_at_mut(i);
            if negate {
                hi[0] -= &lo[i - 1];
            } else {
                hi[0] += &lo[i - 1];
            }
        }
        len = (len + 1).min(cap);
    }
}

fn into_nonnegative(v: BigInt) -> BigUint {
    match v.sign() {
        Sign::Minus => panic!("negative codeword count {v}"),
        _ => v.magnitude().clone(),
    }
}

/// Weight distribution of `{u : sum_i u_i g_i = 0}` from the fiber counts
/// of `g`, i.e. `freq[j] = sum prod_beta binom(count[beta], nu_beta)` over
/// `{nu_beta}` with `sum nu_beta = j` and `sum nu_beta beta = 0`.
///
/// The DP state is a polynomial in the weight for every accumulated sum
/// `s`. Since `nu beta` is `beta` or `0` by the parity of `nu`, a symbol
/// `beta` with count `c` maps `(P_s)` to
/// `P'_s = E(x) P_s + O(x) P_{s+beta}` where `E`/`O` are the even/odd parts
/// of `(1+x)^c`. On each pair `{s, s+beta}` this is applied through the
/// sum and difference, which get multiplied by `(1+x)^c` and `(1-x)^c`.
pub fn weight_distribution(counts: &CountTable, limit: usize) -> Result<WeightEnumerator> {
    let n = usize::try_from(counts.total()).unwrap_or(usize::MAX);
    if n > limit {
        return Err(Error::BudgetExceeded {
            required: n as u128,
            budget: limit as u128,
        });
    }
    weight_distribution_truncated(counts, n)
}

/// As [`weight_distribution`] but only weights `0..=max_weight` are
/// tracked; the returned enumerator has `min(N, max_weight) + 1` entries.
pub fn weight_distribution_truncated(
    counts: &CountTable,
    max_weight: usize,
) -> Result<WeightEnumerator> {
    let q = counts.counts.len();
    let n = usize::try_from(counts.total())
        .map_err(|_| Error::InvalidParameter("code length overflows".into()))?;
    let cap = n.min(max_weight) + 1;

    let mut state: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cap]; q];
    state[0][0] = BigInt::one();
    let mut used = 1usize;

    for (beta, &c) in counts.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if beta == 0 {
            for p in state.iter_mut() {
                mul_binomial_power(p, used, c, false);
            }
        } else {
            for u in 0..q {
                let v = u ^ beta;
                if v < u {
                    continue;
                }
                let mut sum = std::mem::take(&mut state[u]);
                let mut diff = std::mem::take(&mut state[v]);
                for (s, d) in sum.iter_mut().zip(diff.iter_mut()).take(used) {
                    let a = std::mem::take(s);
                    let b = std::mem::take(d);
                    *d = &a - &b;
                    *s = a + b;
                }
                mul_binomial_power(&mut sum, used, c, false);
                mul_binomial_power(&mut diff, used, c, true);
                let new_used = (used + c as usize).min(cap);
                for (s, d) in sum.iter_mut().zip(diff.iter_mut()).take(new_used) {
                    let a = std::mem::take(s);
                    let b = std::mem::take(d);
                    *d = (&a - &b) >> 1u32;
                    *s = (a + b) >> 1u32;
                }
                state[u] = sum;
                state[v] = diff;
            }
        }
        used = (used + c as usize).min(cap);
    }

    let freq = std::mem::take(&mut state[0])
        .into_iter()
        .map(into_nonnegative)
        .collect();
    Ok(WeightEnumerator { freq })
}

/// Brute force over all `2^N` binary words (Gray-code order).
pub fn exhaustive_weight_distribution(entries: &[Fq]) -> Result<WeightEnumerator> {
    let n = entries.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::BudgetExceeded {
            required: n as u128,
            budget: EXHAUSTIVE_LIMIT as u128,
        });
    }
    let mut freq = vec![0u64; n + 1];
    freq[0] = 1;
    let mut syndrome = Fq::ZERO;
    let mut word = 0u64;
    for i in 1u64..(1u64 << n) {
        let bit = i.trailing_zeros();
        word ^= 1 << bit;
        syndrome += entries[bit as usize];
        if syndrome.is_zero() {
            freq[word.count_ones() as usize] += 1;
        }
    }
    Ok(WeightEnumerator {
        freq: freq.into_iter().map(BigUint::from).collect(),
    })
}

/// Binary MacWilliams identity: the enumerator of `B^perp` from that of
/// `B`, `freq[j] = |B|^-1 sum_i B_i [x^j] (1+x)^(N-i) (1-x)^i`.
///
/// The Krawtchouk coefficients come from
/// `(j+1) K_{j+1} = (N - 2i) K_j - (N - j + 1) K_{j-1}`.
pub fn macwilliams_transform(dual: &WeightEnumerator) -> Result<WeightEnumerator> {
    let n = dual.length();
    let size = BigInt::from(dual.total());
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, bi) in dual.freq.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        let bi = BigInt::from(bi.clone());
        let lin = BigInt::from(n as i64 - 2 * i as i64);
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += &bi * &cur;
            let next = (&lin * &cur - BigInt::from(n - j + 1) * &prev) / BigInt::from(j + 1);
            prev = std::mem::replace(&mut cur, next);
        }
    }
    let freq = acc
        .into_iter()
        .map(|v| {
            let (quot, rem) = v.div_rem(&size);
            if !rem.is_zero() || quot.is_negative() {
                Err(Error::NonIntegralCount {
                    numerator: v,
                    divisor: size.clone(),
                })
            } else {
                Ok(into_nonnegative(quot))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightEnumerator { freq })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    /// `(q-1)^(n-1) > n q^((n-1)/2)` for MD, `(q-1)^m > 2^m q^(m/2)` for POW.
    pub sufficient_inequality: bool,
    /// Every nonzero `a` gives a nonzero word.
    pub injective: bool,
    /// Nonzero `a` whose word vanishes.
    pub kernel: Vec<Fq>,
}

impl InjectivityReport {
    /// The inequality is sufficient, so it must never hold without injectivity.
    pub fn consistent(&self) -> bool {
        !self.sufficient_inequality || self.injective
    }
}

/// Sufficient inequality compared in squared form, exactly.
pub fn sufficient_inequality(family: CodeFamily, q: u32, param: u32) -> bool {
    let lhs = BigUint::from(q - 1).pow(2 * param);
    let rhs = match family {
        CodeFamily::Md => BigUint::from((param + 1) * (param + 1)) * BigUint::from(q).pow(param),
        CodeFamily::Pow => BigUint::from(4u32).pow(param) * BigUint::from(q).pow(param),
    };
    lhs > rhs
}

/// Checks the sufficient inequality and, directly, that some symbol of the
/// defining vector has `tr(a beta) = 1` for every nonzero `a`.
pub fn injectivity_check(spec: &CodeSpec<'_>) -> Result<InjectivityReport> {
    let ctx = spec.ctx;
    let counts = spec.counts()?;
    let support: Vec<Fq> = counts
        .iter()
        .filter(|&(_, c)| c > 0)
        .map(|(b, _)| b)
        .collect();
    let kernel: Vec<Fq> = ctx
        .nonzero()
        .filter(|&a| support.iter().all(|&b| ctx.trace(ctx.mul(a, b)) == 0))
        .collect();
    Ok(InjectivityReport {
        sufficient_inequality: sufficient_inequality(spec.family, ctx.q(), spec.param),
        injective: kernel.is_empty(),
        kernel,
    })
}

/// Popcount of a word.
pub fn hamming_weight(word: &[bool]) -> u64 {
    word.iter().filter(|&&b| b).count() as u64
}

/// Freq entry as `u64` if it fits.
pub fn small(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
