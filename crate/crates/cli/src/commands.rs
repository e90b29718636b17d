use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context};
use kloo_core::{
    counts_direct, counts_formula, dual_weight_enumerator, kloosterman, kloosterman_md_all,
    kloosterman_md_direct, macwilliams_transform, moment_oracle_sequence, recursive_moments_k2,
    recursive_moments_md, recursive_moments_power, weight_distribution,
    weight_distribution_truncated, within_deligne_bound, CodeSpec, CountTable, FieldCtx, FieldSpec,
    MomentSequence,
};
use num_bigint::BigUint;
use serde::Serialize;

use crate::output::{FieldInfo, Report};
use crate::{GlobalOpts, Kind, KindArgs, Source, Verdict};

pub type Outcome = (Report, Verdict);

pub fn build_field(spec: Option<FieldSpec>) -> anyhow::Result<FieldCtx> {
    let spec =
        spec.ok_or_else(|| anyhow!("no field given; pass --field r or --field r:modulus_hex"))?;
    FieldCtx::from_spec(spec).with_context(|| format!("field {spec}"))
}

#[derive(Serialize)]
struct FieldBody {
    generator: u32,
    trace_zero_count: u32,
}

pub fn field(spec: Option<FieldSpec>) -> anyhow::Result<Outcome> {
    let ctx = build_field(spec)?;
    let body = FieldBody {
        generator: ctx.generator().code(),
        trace_zero_count: ctx.trace_zero_count(),
    };
    let report = Report::new("field", FieldInfo::of(&ctx), &body)?
        .summary("generator", body.generator)
        .summary("trace_zero_count", body.trace_zero_count);
    Ok((report, Verdict::Agree))
}

#[derive(Serialize)]
struct KsumBody {
    a: u32,
    m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    twist: Option<u32>,
    value: i64,
    within_deligne_bound: bool,
}

pub fn ksum(g: &GlobalOpts, a: u32, m: u32, twist: Option<u32>) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let a_el = ctx.elem(a)?;
    let value = match (m, twist) {
        (1, t) => kloosterman(&ctx, a_el, ctx.elem(t.unwrap_or(1))?)?,
        (_, None) => kloosterman_md_direct(&ctx, m, a_el, g.budget)?,
        (_, Some(_)) => bail!("--twist is only supported with --m 1"),
    };
    let body = KsumBody {
        a,
        m,
        twist,
        value,
        within_deligne_bound: within_deligne_bound(ctx.q(), m, value),
    };
    let report = Report::new("ksum", FieldInfo::of(&ctx), &body)?
        .summary("a", a)
        .summary("m", m)
        .summary("value", value)
        .summary("within_deligne_bound", body.within_deligne_bound);
    Ok((report, Verdict::Agree))
}

#[derive(Serialize)]
struct KsumTableBody {
    m: u32,
    values: BTreeMap<u32, i64>,
    sum: i64,
    all_within_deligne_bound: bool,
}

pub fn ksum_table(g: &GlobalOpts, m: u32) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let table = kloosterman_md_all(&ctx, m)?;
    let values: BTreeMap<u32, i64> = table.iter().map(|(a, v)| (a.code(), v)).collect();
    let body = KsumTableBody {
        m,
        sum: values.values().sum(),
        all_within_deligne_bound: values
            .values()
            .all(|&v| within_deligne_bound(ctx.q(), m, v)),
        values,
    };
    let rows = body
        .values
        .iter()
        .map(|(a, v)| vec![a.to_string(), v.to_string()])
        .collect();
    let report = Report::new("ksum-table", FieldInfo::of(&ctx), &body)?
        .summary("m", m)
        .summary("sum", body.sum)
        .summary("all_within_deligne_bound", body.all_within_deligne_bound)
        .table(vec!["a", "value"], rows);
    Ok((report, Verdict::Agree))
}

#[derive(Serialize)]
struct ValueRow {
    t: i64,
    predicted: bool,
    count: u64,
    class_arg_q: i64,
    class_arg_4q: i64,
}

#[derive(Serialize)]
struct ValueRangeBody {
    predicted: Vec<i64>,
    missing: Vec<i64>,
    unexpected: Vec<i64>,
    consistent: bool,
    entries: Vec<ValueRow>,
}

pub fn value_range(g: &GlobalOpts) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let rep = kloo_core::value_range(&ctx)?;
    let entries: Vec<ValueRow> = rep
        .entries
        .iter()
        .map(|e| ValueRow {
            t: e.t,
            predicted: e.predicted,
            count: e.count,
            class_arg_q: e.class_arg_q,
            class_arg_4q: e.class_arg_4q,
        })
        .collect();
    let rows = entries
        .iter()
        .map(|e| {
            vec![
                e.t.to_string(),
                e.predicted.to_string(),
                e.count.to_string(),
                e.class_arg_q.to_string(),
                e.class_arg_4q.to_string(),
            ]
        })
        .collect();
    let consistent = rep.is_consistent();
    let body = ValueRangeBody {
        predicted: rep.predicted,
        missing: rep.missing,
        unexpected: rep.unexpected,
        consistent,
        entries,
    };
    let report = Report::new("value-range", FieldInfo::of(&ctx), &body)?
        .summary("consistent", consistent)
        .summary("missing", format!("{:?}", body.missing))
        .summary("unexpected", format!("{:?}", body.unexpected))
        .table(vec!["t", "predicted", "count", "t^2-q", "t^2-4q"], rows);
    Ok((report, Verdict::from_ok(consistent)))
}

#[derive(Serialize)]
struct CountsBody {
    family: String,
    param: u32,
    source: &'static str,
    total: u64,
    counts: BTreeMap<u32, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<BTreeMap<u32, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn count_map(t: &CountTable) -> BTreeMap<u32, u64> {
    t.iter().map(|(b, c)| (b.code(), c)).collect()
}

pub fn counts(g: &GlobalOpts, kind: KindArgs, source: Source) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let (family, param) = kind.family();
    if param == 0 {
        bail!("the parameter must be positive (n >= 2, m >= 1)");
    }
    let (primary, direct, label) = match source {
        Source::Formula => (counts_formula(&ctx, family, param)?, None, "formula"),
        Source::Direct => (
            counts_direct(&ctx, family, param, g.budget)?,
            None,
            "direct",
        ),
        Source::Both => (
            counts_formula(&ctx, family, param)?,
            Some(counts_direct(&ctx, family, param, g.budget)?),
            "both",
        ),
    };
    let counts = count_map(&primary);
    let direct = direct.as_ref().map(count_map);
    let matches = direct.as_ref().map(|d| *d == counts);
    let mut rows = Vec::new();
    for (b, c) in &counts {
        let mut row = vec![b.to_string(), c.to_string()];
        if let Some(d) = &direct {
            row.push(d[b].to_string());
        }
        rows.push(row);
    }
    let mut columns = vec!["beta", "count"];
    if direct.is_some() {
        columns.push("direct");
    }
    let body = CountsBody {
        family: family.to_string(),
        param,
        source: label,
        total: primary.total(),
        counts,
        direct,
        matches,
    };
    let mut report = Report::new("counts", FieldInfo::of(&ctx), &body)?
        .summary("family", family)
        .summary("param", param)
        .summary("total", body.total);
    if let Some(m) = matches {
        report = report.summary("matches", m);
    }
    Ok((
        report.table(columns, rows),
        Verdict::from_ok(matches.unwrap_or(true)),
    ))
}

fn code_spec<'a>(
    ctx: &'a FieldCtx,
    g: &GlobalOpts,
    kind: KindArgs,
) -> anyhow::Result<CodeSpec<'a>> {
    let opts = g.code_options();
    Ok(match kind.kind {
        Kind::Md => CodeSpec::md(ctx, kind.n, opts)?,
        Kind::Pow => CodeSpec::pow(ctx, kind.m, opts)?,
        Kind::K2 => CodeSpec::pow(ctx, 2, opts)?,
    })
}

fn decimal(v: &BigUint) -> String {
    v.to_str_radix(10)
}

#[derive(Serialize)]
struct WeightsBody {
    family: String,
    param: u32,
    length: u64,
    /// Weight distribution of the dual (the `q`-word code).
    dual: Vec<String>,
    /// Weight distribution of the code itself, possibly truncated.
    code: Vec<String>,
    code_complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    macwilliams_matches: Option<bool>,
}

pub fn weights(
    g: &GlobalOpts,
    kind: KindArgs,
    max_weight: Option<usize>,
    limit: usize,
) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let spec = code_spec(&ctx, g, kind)?;
    let dual = dual_weight_enumerator(&spec)?;
    let counts = spec.counts()?;
    let (code, complete) = match max_weight {
        Some(w) if (w as u64) < spec.length() => {
            (weight_distribution_truncated(&counts, w)?, false)
        }
        _ => (weight_distribution(&counts, limit)?, true),
    };
    let matches = if complete {
        Some(macwilliams_transform(&dual)? == code)
    } else {
        None
    };
    let n = spec.length() as usize;
    let zero = BigUint::default();
    let rows = (0..=n)
        .filter(|&j| dual.freq()[j] != zero || code.freq().get(j).is_some_and(|c| *c != zero))
        .map(|j| {
            vec![
                j.to_string(),
                decimal(&dual.freq()[j]),
                code.freq().get(j).map(decimal).unwrap_or_default(),
            ]
        })
        .collect();
    let body = WeightsBody {
        family: spec.family().to_string(),
        param: spec.param(),
        length: spec.length(),
        dual: dual.freq().iter().map(decimal).collect(),
        code: code.freq().iter().map(decimal).collect(),
        code_complete: complete,
        macwilliams_matches: matches,
    };
    let mut report = Report::new("weights", FieldInfo::of(&ctx), &body)?
        .summary("family", &body.family)
        .summary("param", body.param)
        .summary("length", body.length)
        .summary("code_words", decimal(&code.total()));
    if let Some(m) = matches {
        report = report.summary("macwilliams_matches", m);
    }
    Ok((
        report.table(vec!["weight", "dual", "code"], rows),
        Verdict::from_ok(matches.unwrap_or(true)),
    ))
}

#[derive(Serialize)]
struct MomentRow {
    h: usize,
    recursive: String,
    oracle: String,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct MomentsBody {
    kind: String,
    rows: Vec<MomentRow>,
    all_match: bool,
}

pub fn moments(g: &GlobalOpts, kind: KindArgs, hmax: usize) -> anyhow::Result<Outcome> {
    let ctx = build_field(g.field)?;
    let rec: MomentSequence = match kind.kind {
        Kind::Md => recursive_moments_md(&ctx, kind.n, hmax)?,
        Kind::Pow => recursive_moments_power(&ctx, kind.m, hmax)?,
        Kind::K2 => recursive_moments_k2(&ctx, hmax)?,
    };
    let oracle = moment_oracle_sequence(&ctx, kind.moment_kind(), hmax)?;
    let rows: Vec<MomentRow> = (1..=hmax)
        .map(|h| MomentRow {
            h,
            recursive: rec.values[h].to_string(),
            oracle: oracle.values[h].to_string(),
            matches: rec.values[h] == oracle.values[h],
        })
        .collect();
    let all_match = rows.iter().all(|r| r.matches);
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.h.to_string(),
                r.recursive.clone(),
                r.oracle.clone(),
                r.matches.to_string(),
            ]
        })
        .collect();
    let body = MomentsBody {
        kind: kind.moment_kind().to_string(),
        rows,
        all_match,
    };
    let report = Report::new("moments", FieldInfo::of(&ctx), &body)?
        .summary("kind", &body.kind)
        .summary("all_match", all_match)
        .table(vec!["h", "recursive", "oracle", "match"], table);
    Ok((report, Verdict::from_ok(all_match)))
}
