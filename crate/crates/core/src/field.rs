//! Table-driven arithmetic in GF(2^r).
//!
//! Elements are stored as polynomial-basis bitmasks (bit `i` is the
//! coefficient of `x^i`), so addition is XOR. Multiplication goes through
//! discrete log / antilog tables built against a generator found at
//! construction time; inverse, trace and canonical character values are
//! fully materialized.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 20;

/// A field element, identified by its polynomial-basis code in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Wraps a raw code without range checking; use [`FieldCtx::elem`] for
    /// untrusted input.
    pub const fn from_code(code: u32) -> Self {
        Fq(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) const fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Add for Fq {
    type Output = Fq;
    /// Characteristic 2: addition is XOR.
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Fq) -> Fq {
        Fq(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fq {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Fq) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Degree of a nonzero GF(2)[x] polynomial given as a bitmask.
fn degree(poly: u64) -> u32 {
    63 - poly.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let p = u64::from(poly);
    let d = degree(p);
    for fd in 1..=d / 2 {
        for f in (1u64 << fd)..(1u64 << (fd + 1)) {
            if poly_rem(p, f) == 0 {
                return false;
            }
        }
    }
    true
}

/// The numerically smallest irreducible polynomial of degree `r`.
pub fn default_modulus(r: u32) -> Result<u32> {
    check_degree(r)?;
    (1u32 << r..1u32 << (r + 1))
        .find(|&p| is_irreducible(p))
        .ok_or(Error::UnsupportedDegree {
            r,
            min: MIN_DEGREE,
            max: MAX_DEGREE,
        })
}

fn check_degree(r: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&r) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree {
            r,
            min: MIN_DEGREE,
            max: MAX_DEGREE,
        })
    }
}

/// Schoolbook carry-less multiplication reduced modulo `modulus`.
fn mul_reduce(a: u32, b: u32, modulus: u32, r: u32) -> u32 {
    let mut acc = 0u64;
    let (a, mut b) = (u64::from(a), b);
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    poly_rem(acc, u64::from(modulus)) as u32 & ((1 << r) - 1)
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A field description as accepted on the command line: `"r"` or
/// `"r:modulus_hex"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub r: u32,
    pub modulus: Option<u32>,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFieldSpec(s.to_string());
        let (r, modulus) = match s.trim().split_once(':') {
            None => (s.trim(), None),
            Some((r, m)) => (r, Some(m)),
        };
        let r: u32 = r.parse().map_err(|_| bad())?;
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let m = m.trim_start_matches("0x").trim_start_matches("0X");
                Some(u32::from_str_radix(m, 16).map_err(|_| bad())?)
            }
        };
        Ok(FieldSpec { r, modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Some(m) => write!(f, "{}:{:x}", self.r, m),
            None => write!(f, "{}", self.r),
        }
    }
}

/// A fully materialized GF(2^r). Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    r: u32,
    modulus: u32,
    q: u32,
    generator: Fq,
    log: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so log sums need no reduction.
    exp: Vec<u32>,
    inverse: Vec<u32>,
    trace: Vec<u8>,
    chi: Vec<i8>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("r", &self.r)
            .field("q", &self.q)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish_non_exhaustive()
    }
}

impl FieldCtx {
    /// Builds GF(2^r). With `modulus == None` the smallest irreducible
    /// polynomial of degree `r` is used.
    pub fn new(r: u32, modulus: Option<u32>) -> Result<Self> {
        check_degree(r)?;
        let modulus = match modulus {
            None => default_modulus(r)?,
            Some(m) => {
                let actual = if m == 0 { 0 } else { degree(u64::from(m)) };
                if actual != r {
                    return Err(Error::DegreeMismatch {
                        modulus: m,
                        expected: r,
                        actual,
                    });
                }
                if !is_irreducible(m) {
                    return Err(Error::ReducibleModulus { modulus: m });
                }
                m
            }
        };
        let q = 1u32 << r;
        let order = q - 1;

        let factors = prime_factors(order);
        let pow_slow = |base: u32, mut e: u32| {
            let (mut acc, mut b) = (1u32, base);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_reduce(acc, b, modulus, r);
                }
                b = mul_reduce(b, b, modulus, r);
                e >>= 1;
            }
            acc
        };
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&p| pow_slow(g, order / p) != 1))
            .expect("multiplicative group of a field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            exp[(i + order) as usize] = x;
            log[x as usize] = i;
            x = mul_reduce(x, generator, modulus, r);
        }

        let mut inverse = vec![0u32; q as usize];
        for x in 1..q {
            let l = log[x as usize];
            inverse[x as usize] = exp[((order - l) % order) as usize];
        }

        // tr(x) = x + x^2 + ... + x^(2^(r-1)); evaluate on the basis, extend linearly.
        let mut basis_trace = 0u32;
        for i in 0..r {
            let mut y = 1u32 << i;
            let mut acc = 0u32;
            for _ in 0..r {
                acc ^= y;
                y = mul_reduce(y, y, modulus, r);
            }
            debug_assert!(acc <= 1, "trace must land in GF(2)");
            basis_trace |= (acc & 1) << i;
        }
        let trace: Vec<u8> = (0..q)
            .map(|x| ((x & basis_trace).count_ones() & 1) as u8)
            .collect();
        let chi = trace.iter().map(|&t| 1 - 2 * t as i8).collect();

        Ok(FieldCtx {
            r,
            modulus,
            q,
            generator: Fq(generator),
            log,
            exp,
            inverse,
            trace,
            chi,
        })
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        Self::new(spec.r, spec.modulus)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The primitive element backing the log tables.
    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elem(&self, code: u32) -> Result<Fq> {
        if code < self.q {
            Ok(Fq(code))
        } else {
            Err(Error::ElementOutOfRange { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q).map(Fq)
    }

    /// Nonzero elements in increasing code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Fq> + Clone {
        (1..self.q).map(Fq)
    }

    #[inline]
    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if x.0 == 0 || y.0 == 0 {
            return Fq::ZERO;
        }
        let l = self.log[x.idx()] + self.log[y.idx()];
        Fq(self.exp[l as usize])
    }

    /// Polynomial multiplication without tables, for cross-checking.
    pub fn mul_slow(&self, x: Fq, y: Fq) -> Fq {
        Fq(mul_reduce(x.0, y.0, self.modulus, self.r))
    }

    pub fn inv(&self, x: Fq) -> Result<Fq> {
        if x.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Fq(self.inverse[x.idx()]))
        }
    }

    /// Inverse with `0 -> 0`; callers guarantee a nonzero argument where it
    /// matters.
    #[inline]
    pub(crate) fn inv_or_zero(&self, x: Fq) -> Fq {
        Fq(self.inverse[x.idx()])
    }

    #[inline]
    pub fn div(&self, x: Fq, y: Fq) -> Result<Fq> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if x.is_zero() {
            return Fq::ZERO;
        }
        let order = u64::from(self.q - 1);
        let l = (u64::from(self.log[x.idx()]) * (e % order)) % order;
        Fq(self.exp[l as usize])
    }

    #[inline]
    pub fn square(&self, x: Fq) -> Fq {
        self.mul(x, x)
    }

    /// Absolute trace to GF(2), as 0 or 1.
    #[inline]
    pub fn trace(&self, x: Fq) -> u8 {
        self.trace[x.idx()]
    }

    /// The canonical additive character `(-1)^tr(x)`.
    #[inline]
    pub fn lambda(&self, x: Fq) -> i32 {
        i32::from(self.chi[x.idx()])
    }

    /// The additive character `x -> lambda(c x)`; trivial when `c = 0`.
    #[inline]
    pub fn psi(&self, c: Fq, x: Fq) -> i32 {
        self.lambda(self.mul(c, x))
    }

    pub fn trace_table(&self) -> &[u8] {
        &self.trace
    }

    pub fn char_table(&self) -> &[i8] {
        &self.chi
    }

    /// Number of elements with trace zero.
    pub fn trace_zero_count(&self) -> u32 {
        self.trace.iter().filter(|&&t| t == 0).count() as u32
    }
}
