use std::time::Instant;

use kloo_core::char_sums::tuple_count;
use kloo_core::codes::hamming_weight;
use kloo_core::{
    artin_schreier_sum, build_defining_vector, counts_direct, counts_formula, dual_codeword,
    dual_weight_enumerator, dual_weights, kloosterman, kloosterman_md_direct,
    macwilliams_transform, moment_oracle_sequence, pless_check, recursive_moments_k2,
    recursive_moments_md, recursive_moments_power, weight_distribution,
    weight_distribution_truncated, CodeFamily, CodeSpec, Error, FieldCtx, Fq, MomentKind,
    WeightEnumerator, DEFAULT_DP_LIMIT,
};
use serde::Serialize;

use crate::commands::{build_field, Outcome};
use crate::output::{FieldInfo, Report};
use crate::{GlobalOpts, Level, Verdict};

const PLESS_HMAX: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Serialize)]
struct VerifyBody {
    level: &'static str,
    passed: usize,
    failed: usize,
    skipped: usize,
    checks: Vec<CheckResult>,
}

enum Check {
    Pass(String),
    Fail(Counterexample),
    Skip(String),
}

fn fail(input: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Check {
    Check::Fail(Counterexample {
        input: input.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Core errors inside a check mean the check cannot run at this size.
fn guarded(f: impl FnOnce() -> Result<Check, Error>) -> Check {
    f().unwrap_or_else(|e| Check::Skip(e.to_string()))
}

struct Suite<'a> {
    ctx: &'a FieldCtx,
    g: &'a GlobalOpts,
    level: Level,
    tamper: Option<usize>,
    results: Vec<CheckResult>,
}

impl Suite<'_> {
    fn run(&mut self, name: String, f: impl FnOnce(&Self) -> Check) {
        let start = Instant::now();
        let outcome = f(self);
        let elapsed = (!self.g.deterministic).then(|| start.elapsed().as_secs_f64() * 1e3);
        let (status, detail, counterexample) = match outcome {
            Check::Pass(d) => (Status::Pass, d, None),
            Check::Skip(d) => (Status::Skipped, d, None),
            Check::Fail(c) => (
                Status::Fail,
                format!("first counterexample at {}", c.input),
                Some(c),
            ),
        };
        self.results.push(CheckResult {
            name,
            status,
            elapsed_ms: elapsed,
            detail,
            counterexample,
        });
    }

    fn fits(&self, work: Option<u64>) -> bool {
        work.is_some_and(|w| w <= self.g.budget)
    }

    /// Largest code length whose full weight distribution is computed.
    fn dp_limit(&self) -> u64 {
        match self.level {
            Level::Fast => 400,
            Level::Full => DEFAULT_DP_LIMIT as u64,
        }
    }
}

fn field_axioms(ctx: &FieldCtx) -> Check {
    let span = ctx.q().min(256);
    let els: Vec<Fq> = ctx.elements().take(span as usize).collect();
    for &x in &els {
        for &y in &els {
            let p = ctx.mul(x, y);
            if p != ctx.mul_slow(x, y) {
                return fail(format!("mul x={x} y={y}"), p, ctx.mul_slow(x, y));
            }
            if p != ctx.mul(y, x) {
                return fail(format!("commutativity x={x} y={y}"), p, ctx.mul(y, x));
            }
            let t = ctx.trace(x + y);
            if t != ctx.trace(x) ^ ctx.trace(y) {
                return fail(
                    format!("trace additivity x={x} y={y}"),
                    t,
                    ctx.trace(x) ^ ctx.trace(y),
                );
            }
        }
    }
    let few = &els[..els.len().min(32)];
    for &x in few {
        for &y in few {
            for &z in few {
                let lhs = ctx.mul(x, y + z);
                let rhs = ctx.mul(x, y) + ctx.mul(x, z);
                if lhs != rhs {
                    return fail(format!("distributivity x={x} y={y} z={z}"), lhs, rhs);
                }
                let lhs = ctx.mul(ctx.mul(x, y), z);
                let rhs = ctx.mul(x, ctx.mul(y, z));
                if lhs != rhs {
                    return fail(format!("associativity x={x} y={y} z={z}"), lhs, rhs);
                }
            }
        }
    }
    for x in ctx.nonzero() {
        let one = ctx.mul(x, ctx.inv(x).expect("nonzero"));
        if one != Fq::ONE {
            return fail(format!("inverse x={x}"), one, Fq::ONE);
        }
        if ctx.trace(ctx.square(x)) != ctx.trace(x) {
            return fail(
                format!("trace of square x={x}"),
                ctx.trace(ctx.square(x)),
                ctx.trace(x),
            );
        }
    }
    let zeros = ctx.trace_zero_count();
    if zeros != ctx.q() / 2 {
        return fail("trace-zero count", zeros, ctx.q() / 2);
    }
    Check::Pass(format!("{span}x{span} products, all inverses and traces"))
}

fn k2_identity(s: &Suite<'_>) -> Check {
    let ctx = s.ctx;
    let work = tuple_count(ctx.q(), 2).and_then(|t| t.checked_mul(u64::from(ctx.q())));
    if !s.fits(work) {
        return Check::Skip("enumeration exceeds budget".into());
    }
    guarded(|| {
        let q = i64::from(ctx.q());
        for a in ctx.nonzero() {
            let k = kloosterman(ctx, a, Fq::ONE)?;
            let k2 = kloosterman_md_direct(ctx, 2, a, s.g.budget)?;
            if k2 != k * k - q {
                return Ok(fail(format!("a={a}"), k2, k * k - q));
            }
        }
        Ok(Check::Pass(format!("{} values of a", q - 1)))
    })
}

fn artin_schreier(s: &Suite<'_>) -> Check {
    let ctx = s.ctx;
    if !s.fits(u64::from(ctx.q()).checked_mul(u64::from(ctx.q()))) {
        return Check::Skip("enumeration exceeds budget".into());
    }
    guarded(|| {
        for b in ctx.nonzero() {
            let lhs = artin_schreier_sum(ctx, b)?;
            let k = kloosterman(ctx, b, Fq::ONE)?;
            if lhs != k - 1 {
                return Ok(fail(format!("beta={b}"), lhs, k - 1));
            }
        }
        Ok(Check::Pass(format!("{} values of beta", ctx.q() - 1)))
    })
}

fn fiber_counts(s: &Suite<'_>, family: CodeFamily, param: u32) -> Check {
    let ctx = s.ctx;
    if !s.fits(tuple_count(ctx.q(), param)) {
        return Check::Skip("enumeration exceeds budget".into());
    }
    guarded(|| {
        let formula = counts_formula(ctx, family, param)?;
        let direct = counts_direct(ctx, family, param, s.g.budget)?;
        for b in ctx.elements() {
            if formula.get(b) != direct.get(b) {
                return Ok(fail(format!("beta={b}"), formula.get(b), direct.get(b)));
            }
        }
        Ok(Check::Pass(format!("{} fibers", ctx.q())))
    })
}

fn dual_weight_check(s: &Suite<'_>, spec: &CodeSpec<'_>) -> Check {
    let work = spec.length().checked_mul(u64::from(s.ctx.q()));
    if spec.length() > s.dp_limit() || !s.fits(work) {
        return Check::Skip(format!(
            "length {} above the limit for this level",
            spec.length()
        ));
    }
    guarded(|| {
        let v = build_defining_vector(spec, s.g.budget)?;
        let closed = dual_weights(spec)?;
        for a in s.ctx.elements() {
            let bits = hamming_weight(&dual_codeword(&v, a));
            if bits != closed[a.code() as usize] {
                return Ok(fail(format!("a={a}"), bits, closed[a.code() as usize]));
            }
        }
        Ok(Check::Pass(format!(
            "{} codewords of length {}",
            s.ctx.q(),
            spec.length()
        )))
    })
}

fn value_range(ctx: &FieldCtx) -> Check {
    guarded(|| {
        let rep = kloo_core::value_range(ctx)?;
        if let Some(t) = rep.unexpected.first() {
            return Ok(fail(
                format!("K = {t}"),
                "attained",
                "outside predicted range",
            ));
        }
        if let Some(t) = rep.missing.first() {
            return Ok(fail(format!("t = {t}"), "never attained", "predicted"));
        }
        Ok(Check::Pass(format!(
            "{} predicted values all attained",
            rep.predicted.len()
        )))
    })
}

fn recursion(s: &Suite<'_>, kind: MomentKind, h_max: usize) -> Check {
    let ctx = s.ctx;
    let q = u64::from(ctx.q());
    let param = match kind {
        MomentKind::Md { n } => n - 1,
        _ => 1,
    };
    if !s.fits(
        q.checked_mul(q)
            .and_then(|w| w.checked_mul(u64::from(param))),
    ) {
        return Check::Skip("oracle table exceeds budget".into());
    }
    guarded(|| {
        let rec = match kind {
            MomentKind::Md { n } => recursive_moments_md(ctx, n, h_max)?,
            MomentKind::Pow { m } => recursive_moments_power(ctx, m, h_max)?,
            MomentKind::K2 => recursive_moments_k2(ctx, h_max)?,
        };
        let oracle = moment_oracle_sequence(ctx, kind, h_max)?;
        for h in 1..=h_max {
            if rec.values[h] != oracle.values[h] {
                return Ok(fail(format!("h={h}"), &rec.values[h], &oracle.values[h]));
            }
        }
        Ok(Check::Pass(format!("h = 1..{h_max}")))
    })
}

/// Full distribution when the level allows it, otherwise weights `0..=PLESS_HMAX`.
fn code_distribution(
    s: &Suite<'_>,
    spec: &CodeSpec<'_>,
) -> Result<(WeightEnumerator, bool), Error> {
    let counts = spec.counts()?;
    let (mut dist, full) = if spec.length() <= s.dp_limit() {
        (weight_distribution(&counts, s.dp_limit() as usize)?, true)
    } else {
        (weight_distribution_truncated(&counts, PLESS_HMAX)?, false)
    };
    if let Some(j) = s.tamper {
        if let Some(slot) = dist.freq_mut().get_mut(j) {
            *slot += 1u32;
        }
    }
    Ok((dist, full))
}

fn code_checks(s: &mut Suite<'_>, spec: &CodeSpec<'_>, label: &str) {
    let prepared = spec_data(s, spec);
    s.run(format!("macwilliams {label}"), |_| match &prepared {
        Err(e) => Check::Skip(e.to_string()),
        Ok((_, _, false)) => Check::Skip(format!(
            "length {} above the limit for this level",
            spec.length()
        )),
        Ok((dual, code, true)) => guarded(|| {
            let mw = macwilliams_transform(dual)?;
            match mw.freq().iter().zip(code.freq()).position(|(a, b)| a != b) {
                Some(j) => Ok(fail(format!("weight {j}"), &code.freq()[j], &mw.freq()[j])),
                None => Ok(Check::Pass(format!("{} weights", code.freq().len()))),
            }
        }),
    });
    s.run(format!("pless {label}"), |_| match &prepared {
        Err(e) => Check::Skip(e.to_string()),
        Ok((dual, code, _)) => {
            let k = s.ctx.r();
            match pless_check(dual, code, k, PLESS_HMAX) {
                Ok(_) => Check::Pass(format!("h = 0..{PLESS_HMAX}")),
                Err(Error::IdentityViolation { h, lhs, rhs }) => fail(format!("h={h}"), lhs, rhs),
                Err(e) => Check::Skip(e.to_string()),
            }
        }
    });
}

fn spec_data(
    s: &Suite<'_>,
    spec: &CodeSpec<'_>,
) -> Result<(WeightEnumerator, WeightEnumerator, bool), Error> {
    let dual = dual_weight_enumerator(spec)?;
    let (code, full) = code_distribution(s, spec)?;
    Ok((dual, code, full))
}

pub fn run(g: &GlobalOpts, level: Level, tamper: Option<usize>) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let mut suite = Suite {
        ctx: &ctx,
        g,
        level,
        tamper,
        results: Vec::new(),
    };
    let max_param = match level {
        Level::Fast => 2,
        Level::Full => 3,
    };

    suite.run("field axioms".into(), |s| field_axioms(s.ctx));
    suite.run("K2 = K^2 - q".into(), k2_identity);
    suite.run("Artin-Schreier sum = K - 1".into(), artin_schreier);
    for k in 1..=max_param {
        suite.run(format!("counts md n-1={k}"), |s| {
            fiber_counts(s, CodeFamily::Md, k)
        });
    }
    for k in 1..=max_param {
        suite.run(format!("counts pow m={k}"), |s| {
            fiber_counts(s, CodeFamily::Pow, k)
        });
    }

    let opts = g.code_options();
    let mut specs = Vec::new();
    for n in [2, 4] {
        specs.push((format!("md n={n}"), CodeSpec::md(&ctx, n, opts)));
    }
    for m in 1..=3 {
        specs.push((format!("pow m={m}"), CodeSpec::pow(&ctx, m, opts)));
    }
    for (label, spec) in &specs {
        suite.run(format!("dual weights {label}"), |s| match spec {
            Ok(spec) => dual_weight_check(s, spec),
            Err(e) => Check::Skip(e.to_string()),
        });
    }

    suite.run("value range".into(), |s| value_range(s.ctx));

    let kinds = [
        (MomentKind::Md { n: 2 }, 6),
        (MomentKind::Md { n: 4 }, 6),
        (MomentKind::Pow { m: 1 }, 5),
        (MomentKind::Pow { m: 2 }, 5),
        (MomentKind::Pow { m: 3 }, 5),
        (MomentKind::K2, 5),
    ];
    for (kind, h_max) in kinds {
        suite.run(format!("recursion {kind}"), |s| recursion(s, kind, h_max));
    }

    for (label, spec) in &specs {
        match spec {
            Ok(spec) => code_checks(&mut suite, spec, label),
            Err(e) => {
                let why = e.to_string();
                suite.run(format!("macwilliams {label}"), |_| Check::Skip(why.clone()));
                suite.run(format!("pless {label}"), |_| Check::Skip(why.clone()));
            }
        }
    }

    let count = |st: Status| suite.results.iter().filter(|c| c.status == st).count();
    let body = VerifyBody {
        level: match level {
            Level::Fast => "fast",
            Level::Full => "full",
        },
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks: suite.results.clone(),
    };
    let rows = body
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                format!("{:?}", c.status).to_lowercase(),
                c.elapsed_ms.map(|t| format!("{t:.1}")).unwrap_or_default(),
                c.detail.clone(),
            ]
        })
        .collect();
    let verdict = Verdict::from_ok(body.failed == 0);
    let report = Report::new("verify", FieldInfo::of(&ctx), &body)?
        .summary("level", body.level)
        .summary("passed", body.passed)
        .summary("failed", body.failed)
        .summary("skipped", body.skipped)
        .table(vec!["check", "status", "ms", "detail"], rows);
    Ok((report, verdict))
}
