//! Power moments of Kloosterman sums: brute-force sums over the field and
//! the recursive formulas obtained by applying the Pless power-moment
//! identity to the dual pairs `C_{n-1}^perp` / `C_{n-1}` and `D_m^perp` / `D_m`.
//!
//! Every quantity here is an exact integer; nothing is approximated.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::char_sums::kloosterman_md_all;
use crate::codes::{weight_distribution_truncated, CodeOptions, CodeSpec, WeightEnumerator};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MomentKind {
    /// `MK_{n-1}^h`, moments of the `(n-1)`-dimensional sum.
    Md { n: u32 },
    /// `MK^{m h}`, moments of the `m`-th power of the ordinary sum.
    Pow { m: u32 },
    /// `MK_2^h`.
    K2,
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentKind::Md { n } => write!(f, "md(n={n})"),
            MomentKind::Pow { m } => write!(f, "pow(m={m})"),
            MomentKind::K2 => f.write_str("k2"),
        }
    }
}

/// `values[h]` for `h = 0..=h_max`; `values[0] = q - 1` by definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    pub kind: MomentKind,
    pub q: u32,
    pub values: Vec<BigInt>,
}

impl MomentSequence {
    pub fn h_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `|values[h]| <= (q-1) B^h` with `B` the Deligne/Weil bound on a single
    /// term, compared in squared form.
    pub fn within_bounds(&self) -> bool {
        let q = BigUint::from(self.q);
        let b2 = match self.kind {
            MomentKind::Md { n } => BigUint::from(n * n) * q.pow(n - 1),
            MomentKind::Pow { m } => BigUint::from(4u32).pow(m) * q.pow(m),
            MomentKind::K2 => BigUint::from(9u32) * &q * &q,
        };
        let terms = BigUint::from(self.q - 1);
        self.values.iter().enumerate().all(|(h, v)| {
            let lhs = v.magnitude() * v.magnitude();
            lhs <= &terms * &terms * b2.pow(h as u32)
        })
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Triangle of Stirling numbers of the second kind, `S(h, t)` for
/// `t <= h <= h_max`, from `S(h, t) = t S(h-1, t) + S(h-1, t-1)`.
#[derive(Clone, Debug)]
pub struct StirlingCache {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingCache {
    pub fn new(h_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(h_max + 1);
        rows.push(vec![BigUint::one()]);
        for h in 1..=h_max {
            let prev = &rows[h - 1];
            let mut row = vec![BigUint::zero(); h + 1];
            for t in 1..=h {
                let keep = if t < h {
                    &prev[t] * BigUint::from(t)
                } else {
                    BigUint::zero()
                };
                row[t] = keep + &prev[t - 1];
            }
            rows.push(row);
        }
        StirlingCache { rows }
    }

    pub fn h_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, h: usize, t: usize) -> BigUint {
        if t > h {
            return BigUint::zero();
        }
        self.rows[h][t].clone()
    }
}

pub fn stirling2(h: usize, t: usize) -> BigUint {
    if t > h {
        return BigUint::zero();
    }
    StirlingCache::new(h).get(h, t)
}

/// `S(h, t) = (1/t!) sum_j (-1)^(t-j) binom(t, j) j^h`.
pub fn stirling2_alternating(h: usize, t: usize) -> BigUint {
    if t > h {
        return BigUint::zero();
    }
    let mut acc = BigInt::zero();
    for j in 0..=t {
        let term = BigInt::from(binomial(t as u64, j as u64)) * BigInt::from(j).pow(h as u32);
        if (t - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let (quot, rem) = acc.div_rem(&BigInt::from(factorial(t)));
    assert!(rem.is_zero(), "alternating sum must be divisible by t!");
    quot.magnitude().clone()
}

fn require_r3(ctx: &FieldCtx) -> Result<()> {
    if ctx.r() < 3 {
        Err(Error::UnsupportedDegree {
            r: ctx.r(),
            min: 3,
            max: crate::field::MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// Per-`a` values whose powers the kind sums: `K_{n-1}(a)`, `K(a)^m` or `K_2(a)`.
fn oracle_terms(ctx: &FieldCtx, kind: MomentKind) -> Result<Vec<BigInt>> {
    let terms = match kind {
        MomentKind::Md { n } => {
            if n == 0 {
                return Err(Error::InvalidParameter("n must be positive".into()));
            }
            let t = kloosterman_md_all(ctx, n - 1)?;
            t.iter().map(|(_, v)| BigInt::from(v)).collect()
        }
        MomentKind::Pow { m } => {
            let t = kloosterman_md_all(ctx, 1)?;
            t.iter().map(|(_, v)| BigInt::from(v).pow(m)).collect()
        }
        MomentKind::K2 => {
            let t = kloosterman_md_all(ctx, 2)?;
            t.iter().map(|(_, v)| BigInt::from(v)).collect()
        }
    };
    Ok(terms)
}

/// `sum_{a != 0} term(a)^h` straight from the Kloosterman tables.
pub fn moment_oracle(ctx: &FieldCtx, kind: MomentKind, h: usize) -> Result<BigInt> {
    Ok(oracle_terms(ctx, kind)?
        .iter()
        .map(|v| v.pow(h as u32))
        .sum())
}

pub fn moment_oracle_sequence(
    ctx: &FieldCtx,
    kind: MomentKind,
    h_max: usize,
) -> Result<MomentSequence> {
    let terms = oracle_terms(ctx, kind)?;
    let mut values = vec![BigInt::zero(); h_max + 1];
    for v in &terms {
        let mut p = BigInt::one();
        for slot in values.iter_mut() {
            *slot += &p;
            p *= v;
        }
    }
    Ok(MomentSequence {
        kind,
        q: ctx.q(),
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlessRow {
    pub h: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlessReport {
    pub rows: Vec<PlessRow>,
}

/// Binary Pless identity for a code `B` of dimension `k` and its dual:
/// `sum_i i^h B_i = sum_i (-1)^i B_i^perp sum_t t! S(h,t) 2^(k-t) binom(N-i, N-t)`.
///
/// `small` is `B` (here the `q`-word dual whose weights are known in closed
/// form), `big` is `B^perp`. Only `big.freq[0..=min(N, h_max)]` is read, so a
/// truncated distribution suffices. Both sides are compared after scaling
/// by `2^h`; the first failing `h` is returned as an error.
pub fn pless_check(
    small: &WeightEnumerator,
    big: &WeightEnumerator,
    k: u32,
    h_max: usize,
) -> Result<PlessReport> {
    let n = small.length();
    let stirling = StirlingCache::new(h_max);
    let mut rows = Vec::with_capacity(h_max + 1);
    for h in 0..=h_max {
        let lhs: BigInt = small
            .freq()
            .iter()
            .enumerate()
            .map(|(i, b)| BigInt::from(b.clone()) * BigInt::from(i).pow(h as u32))
            .sum();

        let mut scaled = BigInt::zero();
        for i in 0..=n.min(h) {
            let ci = big.get(i);
            if ci.is_zero() {
                continue;
            }
            let mut inner = BigUint::zero();
            for t in i..=h {
                inner += factorial(t)
                    * stirling.get(h, t)
                    * (BigUint::one() << (k as usize + h - t))
                    * binomial((n - i) as u64, (t - i) as u64);
            }
            let term = BigInt::from(ci * inner);
            if i % 2 == 0 {
                scaled += term;
            } else {
                scaled -= term;
            }
        }
        let unit = BigInt::one() << h;
        let (rhs, rem) = scaled.div_rem(&unit);
        if !rem.is_zero() || rhs != lhs {
            return Err(Error::IdentityViolation { h, lhs, rhs });
        }
        rows.push(PlessRow { h, lhs, rhs });
    }
    Ok(PlessReport { rows })
}

/// The common recursion behind every formula here:
///
/// `M^h = sum_{l<h} (-1)^(h+l+1) binom(h,l) base^(h-l) M^l
///      + q sum_{j<=min(N,h)} (-1)^(h+j) W_j sum_{t=j..h} t! S(h,t) 2^(h-t) binom(N-j, N-t)`
///
/// seeded with `M^0 = q - 1`. `base` is the code length `N` for the MD and
/// POW recursions and `q^2 - 3q + 1` for the `K_2` variant; `W` is the
/// weight distribution of the code (only `W_0..W_{h_max}` are read).
pub fn recursive_moments(
    q: u32,
    base: &BigInt,
    length: u64,
    dist: &WeightEnumerator,
    h_max: usize,
) -> Result<Vec<BigInt>> {
    if dist.length() < (h_max as u64).min(length) as usize {
        return Err(Error::InvalidParameter(format!(
            "distribution covers weights up to {}, recursion needs {}",
            dist.length(),
            h_max.min(length as usize)
        )));
    }
    let stirling = StirlingCache::new(h_max);
    let qb = BigInt::from(q);
    let mut values = vec![BigInt::from(q - 1)];
    for h in 1..=h_max {
        let mut acc = BigInt::zero();
        for (l, ml) in values.iter().enumerate() {
            let term = BigInt::from(binomial(h as u64, l as u64)) * base.pow((h - l) as u32) * ml;
            // sign (-1)^(h+l+1)
            if (h + l + 1) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let mut code_part = BigInt::zero();
        for j in 0..=(h as u64).min(length) as usize {
            let wj = dist.get(j);
            if wj.is_zero() {
                continue;
            }
            let mut inner = BigUint::zero();
            for t in j..=h {
                inner += factorial(t)
                    * stirling.get(h, t)
                    * (BigUint::one() << (h - t))
                    * binomial(length - j as u64, (t - j) as u64);
            }
            let term = BigInt::from(wj * inner);
            if (h + j) % 2 == 0 {
                code_part += term;
            } else {
                code_part -= term;
            }
        }
        acc += &qb * code_part;
        values.push(acc);
    }
    Ok(values)
}

fn code_length(q: u32, param: u32) -> u64 {
    u64::from(q - 1).pow(param)
}

/// `MK_{n-1}^h` for `h = 0..=h_max` from a weight distribution of `C_{n-1}`
/// (weights `0..=h_max` are enough).
pub fn recursive_moments_md_with(
    ctx: &FieldCtx,
    n: u32,
    dist: &WeightEnumerator,
    h_max: usize,
) -> Result<MomentSequence> {
    require_r3(ctx)?;
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let length = code_length(ctx.q(), n - 1);
    let values = recursive_moments(ctx.q(), &BigInt::from(length), length, dist, h_max)?;
    Ok(MomentSequence {
        kind: MomentKind::Md { n },
        q: ctx.q(),
        values,
    })
}

/// `MK_{n-1}^h` for `h = 0..=h_max`, computing the needed part of the
/// `C_{n-1}` distribution on the way.
pub fn recursive_moments_md(ctx: &FieldCtx, n: u32, h_max: usize) -> Result<MomentSequence> {
    require_r3(ctx)?;
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let spec = CodeSpec::md(ctx, n, CodeOptions::default())?;
    let dist = weight_distribution_truncated(&spec.counts()?, h_max)?;
    recursive_moments_md_with(ctx, n, &dist, h_max)
}

/// `MK^{m h}` for `h = 0..=h_max` from a distribution of `D_m`.
pub fn recursive_moments_power_with(
    ctx: &FieldCtx,
    m: u32,
    dist: &WeightEnumerator,
    h_max: usize,
) -> Result<MomentSequence> {
    require_r3(ctx)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let length = code_length(ctx.q(), m);
    let values = recursive_moments(ctx.q(), &BigInt::from(length), length, dist, h_max)?;
    Ok(MomentSequence {
        kind: MomentKind::Pow { m },
        q: ctx.q(),
        values,
    })
}

pub fn recursive_moments_power(ctx: &FieldCtx, m: u32, h_max: usize) -> Result<MomentSequence> {
    require_r3(ctx)?;
    let spec = CodeSpec::pow(ctx, m, CodeOptions::default())?;
    let dist = weight_distribution_truncated(&spec.counts()?, h_max)?;
    recursive_moments_power_with(ctx, m, &dist, h_max)
}

/// `MK_2^h` from the `D_2` distribution with base `q^2 - 3q + 1`.
pub fn recursive_moments_k2_with(
    ctx: &FieldCtx,
    dist: &WeightEnumerator,
    h_max: usize,
) -> Result<MomentSequence> {
    require_r3(ctx)?;
    let q = i64::from(ctx.q());
    let base = BigInt::from(q * q - 3 * q + 1);
    let values = recursive_moments(ctx.q(), &base, code_length(ctx.q(), 2), dist, h_max)?;
    Ok(MomentSequence {
        kind: MomentKind::K2,
        q: ctx.q(),
        values,
    })
}

pub fn recursive_moments_k2(ctx: &FieldCtx, h_max: usize) -> Result<MomentSequence> {
    require_r3(ctx)?;
    let spec = CodeSpec::pow(ctx, 2, CodeOptions::default())?;
    let dist = weight_distribution_truncated(&spec.counts()?, h_max)?;
    recursive_moments_k2_with(ctx, &dist, h_max)
}

/// `MK_2^h = sum_i binom(h, i) (-q)^(h-i) MK^{2i}`, from the `m = 2` sequence.
pub fn k2_from_square_moments(q: u32, square_moments: &[BigInt]) -> Vec<BigInt> {
    let neg_q = -BigInt::from(q);
    (0..square_moments.len())
        .map(|h| {
            (0..=h)
                .map(|i| {
                    BigInt::from(binomial(h as u64, i as u64))
                        * neg_q.pow((h - i) as u32)
                        * &square_moments[i]
                })
                .sum()
        })
        .collect()
}

/// `sum_{a != 0} w(a)^h` for `h = 0..=h_max`, straight from the weights.
pub fn weight_power_sums(weights: &[u64], h_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); h_max + 1];
    for &w in weights {
        let mut p = BigInt::one();
        for slot in out.iter_mut() {
            *slot += &p;
            p *= w;
        }
    }
    out
}

/// `sum_{a != 0} w(a)^h = 2^-h sum_l (-1)^l binom(h,l) base^(h-l) M^l`, where
/// `w(a) = (base - term(a)) / 2` and `M` are the moments of `term`.
pub fn weight_power_sums_from_moments(base: &BigInt, moments: &[BigInt]) -> Result<Vec<BigInt>> {
    (0..moments.len())
        .map(|h| {
            let mut acc = BigInt::zero();
            for (l, ml) in moments.iter().enumerate().take(h + 1) {
                let term =
                    BigInt::from(binomial(h as u64, l as u64)) * base.pow((h - l) as u32) * ml;
                if l % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let unit = BigInt::one() << h;
            let (quot, rem) = acc.div_rem(&unit);
            if rem.is_zero() {
                Ok(quot)
            } else {
                Err(Error::NonIntegralCount {
                    numerator: acc,
                    divisor: unit,
                })
            }
        })
        .collect()
}

/// Index of the first disagreement between two sequences, if any.
pub fn first_mismatch(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .or(if a.len() == b.len() {
            None
        } else {
            Some(a.len().min(b.len()))
        })
}

/// `|x|` as a `BigUint`.
pub fn magnitude(x: &BigInt) -> BigUint {
    x.abs().magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        dual_weight_enumerator, dual_weights, weight_distribution, DEFAULT_DP_LIMIT,
    };
    use proptest::prelude::*;

    fn field(r: u32) -> FieldCtx {
        FieldCtx::new(r, None).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), BigUint::from(7u32));
        assert_eq!(stirling2(5, 5), BigUint::one());
        assert_eq!(stirling2(5, 0), BigUint::zero());
        assert_eq!(stirling2(0, 0), BigUint::one());
        assert_eq!(stirling2(3, 5), BigUint::zero());
        assert_eq!(stirling2(10, 3), BigUint::from(9330u32));
        let cache = StirlingCache::new(30);
        for h in 0..=30 {
            for t in 0..=h {
                assert_eq!(cache.get(h, t), stirling2_alternating(h, t), "S({h},{t})");
            }
            if h >= 1 {
                assert_eq!(cache.get(h, 1), BigUint::one());
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(3375, 0), BigUint::one());
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
    }

    #[test]
    fn oracle_q8_frozen() {
        let f = field(3);
        let pow1 = moment_oracle_sequence(&f, MomentKind::Pow { m: 1 }, 8).unwrap();
        assert_eq!(
            pow1.values,
            ints(&[7, 1, 55, -47, 871, -2399, 17815, -71567, 410311])
        );
        let md4 = moment_oracle_sequence(&f, MomentKind::Md { n: 4 }, 6).unwrap();
        assert_eq!(
            md4.values,
            ints(&[7, 1, 3511, -10031, 2013799, -9971039, 1176647191])
        );
        let k2 = moment_oracle_sequence(&f, MomentKind::K2, 5).unwrap();
        assert_eq!(k2.values, ints(&[7, -1, 439, 3887, 90727, 1369439]));
        assert_eq!(
            moment_oracle(&f, MomentKind::Md { n: 2 }, 1).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            moment_oracle(&f, MomentKind::Pow { m: 3 }, 0).unwrap(),
            BigInt::from(7)
        );
        // MK_2^1 = MK^2 - q (q - 1)
        assert_eq!(k2.values[1], &pow1.values[2] - BigInt::from(8 * 7));
        assert!(pow1.within_bounds() && md4.within_bounds() && k2.within_bounds());
    }

    #[test]
    fn recursion_q8() {
        let f = field(3);
        let md2 = recursive_moments_md(&f, 2, 8).unwrap();
        assert_eq!(md2.values[1], BigInt::one());
        assert_eq!(
            md2.values,
            moment_oracle_sequence(&f, MomentKind::Md { n: 2 }, 8)
                .unwrap()
                .values
        );
        let md4 = recursive_moments_md(&f, 4, 6).unwrap();
        assert_eq!(
            md4.values,
            moment_oracle_sequence(&f, MomentKind::Md { n: 4 }, 6)
                .unwrap()
                .values
        );
        let p1 = recursive_moments_power(&f, 1, 8).unwrap();
        assert_eq!(p1.values, md2.values);
        let p2 = recursive_moments_power(&f, 2, 5).unwrap();
        assert_eq!(
            p2.values,
            moment_oracle_sequence(&f, MomentKind::Pow { m: 2 }, 5)
                .unwrap()
                .values
        );
        let k2 = recursive_moments_k2(&f, 5).unwrap();
        assert_eq!(
            k2.values,
            moment_oracle_sequence(&f, MomentKind::K2, 5)
                .unwrap()
                .values
        );
        assert_eq!(k2_from_square_moments(8, &p2.values), k2.values);
    }

    #[test]
    fn recursion_preconditions() {
        let f = field(2);
        assert!(matches!(
            recursive_moments_md(&f, 2, 3),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            recursive_moments_power(&f, 2, 3),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            recursive_moments_k2(&f, 3),
            Err(Error::UnsupportedDegree { .. })
        ));
        let f = field(3);
        assert_eq!(
            recursive_moments_md(&f, 3, 3).unwrap_err(),
            Error::NotPowerOfTwo(3)
        );
        let short = WeightEnumerator::new(vec![BigUint::one()]);
        assert!(recursive_moments_md_with(&f, 2, &short, 3).is_err());
    }

    #[test]
    fn pless_on_c1_and_d2() {
        let f = field(3);
        for spec in [
            CodeSpec::md(&f, 2, CodeOptions::default()).unwrap(),
            CodeSpec::pow(&f, 2, CodeOptions::default()).unwrap(),
        ] {
            let dual = dual_weight_enumerator(&spec).unwrap();
            let code = weight_distribution(&spec.counts().unwrap(), DEFAULT_DP_LIMIT).unwrap();
            let rep = pless_check(&dual, &code, 3, 8).unwrap();
            assert_eq!(rep.rows.len(), 9);
            assert_eq!(rep.rows[0].lhs, BigInt::from(8));
        }
    }

    #[test]
    fn pless_pinpoints_tampering() {
        let f = field(3);
        let spec = CodeSpec::pow(&f, 2, CodeOptions::default()).unwrap();
        let dual = dual_weight_enumerator(&spec).unwrap();
        let mut code = weight_distribution(&spec.counts().unwrap(), DEFAULT_DP_LIMIT).unwrap();
        code.freq_mut()[3] += 1u32;
        match pless_check(&dual, &code, 3, 8) {
            Err(Error::IdentityViolation { h, lhs, rhs }) => {
                assert_eq!(h, 3);
                assert_ne!(lhs, rhs);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn weight_sums_identity() {
        let f = field(3);
        for (spec, kind) in [
            (
                CodeSpec::md(&f, 4, CodeOptions::default()).unwrap(),
                MomentKind::Md { n: 4 },
            ),
            (
                CodeSpec::pow(&f, 3, CodeOptions::default()).unwrap(),
                MomentKind::Pow { m: 3 },
            ),
        ] {
            let weights: Vec<u64> = dual_weights(&spec).unwrap()[1..].to_vec();
            let moments = moment_oracle_sequence(&f, kind, 6).unwrap();
            let base = BigInt::from(spec.length());
            assert_eq!(
                weight_power_sums(&weights, 6),
                weight_power_sums_from_moments(&base, &moments.values).unwrap()
            );
        }
        let spec = CodeSpec::pow(&f, 2, CodeOptions::default()).unwrap();
        let weights: Vec<u64> = dual_weights(&spec).unwrap()[1..].to_vec();
        let k2 = moment_oracle_sequence(&f, MomentKind::K2, 6).unwrap();
        assert_eq!(
            weight_power_sums(&weights, 6),
            weight_power_sums_from_moments(&BigInt::from(64 - 24 + 1), &k2.values).unwrap()
        );
    }

    #[test]
    fn mismatch_helper() {
        let a = ints(&[1, 2, 3]);
        assert_eq!(first_mismatch(&a, &a), None);
        assert_eq!(first_mismatch(&a, &ints(&[1, 5, 3])), Some(1));
        assert_eq!(first_mismatch(&a, &ints(&[1, 2])), Some(2));
    }

    proptest! {
        #[test]
        fn stirling_recurrence_matches_alternating(h in 0usize..40, t in 0usize..40) {
            prop_assert_eq!(stirling2(h, t), stirling2_alternating(h, t));
        }

        #[test]
        fn bridge_is_binomial_expansion(ks in proptest::collection::vec(-20i64..20, 1..8), q in 4u32..40) {
            // sum over a of (K^2 - q)^h computed directly vs via the bridge
            let sq: Vec<BigInt> = (0..6).map(|h| ks.iter().map(|&k| BigInt::from(k * k).pow(h)).sum()).collect();
            let direct: Vec<BigInt> = (0..6u32)
                .map(|h| ks.iter().map(|&k| BigInt::from(k * k - i64::from(q)).pow(h)).sum())
                .collect();
            prop_assert_eq!(k2_from_square_moments(q, &sq), direct);
        }
    }
}
