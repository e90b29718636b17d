//! Acceptance gate: one line per criterion, exit status nonzero if any fails.
//! Every comparison is exact integer equality.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kloo_core::codes::hamming_weight;
use kloo_core::*;
use num_bigint::{BigInt, BigUint};

type Check = Result<String, String>;

const MOMENT_FIELDS: [u32; 2] = [3, 4];
const MD_NS: [u32; 2] = [2, 4];
const POW_MS: [u32; 3] = [1, 2, 3];
const SMALL_TO_256: [u32; 7] = [2, 3, 4, 5, 6, 7, 8];

fn field(r: u32) -> FieldCtx {
    FieldCtx::new(r, None).expect("default field")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

/// Code pairs from criteria 1-2: MD n in {2,4} and POW m in {1,2,3}, q in {8,16}.
fn code_grid(f: &FieldCtx) -> Vec<CodeSpec<'_>> {
    let o = CodeOptions::default();
    let mut out: Vec<CodeSpec<'_>> = MD_NS
        .iter()
        .map(|&n| CodeSpec::md(f, n, o).unwrap())
        .collect();
    out.extend(POW_MS.iter().map(|&m| CodeSpec::pow(f, m, o).unwrap()));
    out
}

fn label(spec: &CodeSpec<'_>) -> String {
    match spec.family() {
        CodeFamily::Md => format!("q={} C_{}", spec.ctx().q(), spec.param()),
        CodeFamily::Pow => format!("q={} D_{}", spec.ctx().q(), spec.param()),
    }
}

fn c1_md_recursion() -> Check {
    let start = Instant::now();
    let mut n_cmp = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        for n in MD_NS {
            let rec = recursive_moments_md(&f, n, 6).map_err(|e| e.to_string())?;
            let oracle =
                moment_oracle_sequence(&f, MomentKind::Md { n }, 6).map_err(|e| e.to_string())?;
            for h in 1..=6 {
                ensure(rec.values[h] == oracle.values[h], || {
                    format!(
                        "q={} n={n} h={h}: recursive {} vs oracle {}",
                        f.q(),
                        rec.values[h],
                        oracle.values[h]
                    )
                })?;
                n_cmp += 1;
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{n_cmp} exact matches"))
}

fn c2_power_recursion() -> Check {
    let start = Instant::now();
    let mut n_cmp = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        let k = kloosterman_md_all(&f, 1).unwrap();
        for m in POW_MS {
            let rec = recursive_moments_power(&f, m, 5).map_err(|e| e.to_string())?;
            for h in 1..=5usize {
                // MK^{mh} summed directly from K(a)
                let oracle: BigInt = k
                    .iter()
                    .map(|(_, v)| BigInt::from(v).pow(m * h as u32))
                    .sum();
                ensure(rec.values[h] == oracle, || {
                    format!(
                        "q={} m={m} h={h}: recursive {} vs MK^{} {}",
                        f.q(),
                        rec.values[h],
                        m as usize * h,
                        oracle
                    )
                })?;
                n_cmp += 1;
            }
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{n_cmp} exact matches"))
}

#[allow(clippy::needless_range_loop)]
fn c3_k2_bridge() -> Check {
    let mut n_cmp = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        let k2 = recursive_moments_k2(&f, 5).map_err(|e| e.to_string())?;
        let oracle = moment_oracle_sequence(&f, MomentKind::K2, 5).unwrap();
        let squares = recursive_moments_power(&f, 2, 5).unwrap();
        let bridge = k2_from_square_moments(f.q(), &squares.values);
        for h in 0..=5 {
            ensure(k2.values[h] == oracle.values[h], || {
                format!(
                    "q={} h={h}: recursion {} vs oracle {}",
                    f.q(),
                    k2.values[h],
                    oracle.values[h]
                )
            })?;
            ensure(k2.values[h] == bridge[h], || {
                format!(
                    "q={} h={h}: recursion {} vs bridge {}",
                    f.q(),
                    k2.values[h],
                    bridge[h]
                )
            })?;
            n_cmp += 2;
        }
    }
    Ok(format!("{n_cmp} exact matches"))
}

fn c4_k2_identity() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for r in SMALL_TO_256 {
        let f = field(r);
        let q = i64::from(f.q());
        for a in f.nonzero() {
            let k = kloosterman(&f, a, Fq::ONE).unwrap();
            let k2 = kloosterman_md_direct(&f, 2, a, DEFAULT_ENUM_BUDGET).unwrap();
            ensure(k2 == k * k - q, || format!("q={q} a={a}: K2={k2}, K={k}"))?;
            n += 1;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{n} values of a, q=4..256"))
}

fn c5_artin_schreier() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for r in SMALL_TO_256 {
        let f = field(r);
        for b in f.nonzero() {
            let lhs = artin_schreier_sum(&f, b).unwrap();
            let k = kloosterman(&f, b, Fq::ONE).unwrap();
            ensure(lhs == k - 1, || {
                format!("q={} beta={b}: sum {lhs}, K-1 = {}", f.q(), k - 1)
            })?;
            n += 1;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{n} values of beta, q=4..256"))
}

fn c6_fiber_counts() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        for k in 1..=3 {
            for family in [CodeFamily::Md, CodeFamily::Pow] {
                let formula = counts_formula(&f, family, k).map_err(|e| e.to_string())?;
                let direct = counts_direct(&f, family, k, DEFAULT_ENUM_BUDGET).unwrap();
                for beta in f.elements() {
                    ensure(formula.get(beta) == direct.get(beta), || {
                        format!(
                            "q={} {family} param={k} beta={beta}: formula {} direct {}",
                            f.q(),
                            formula.get(beta),
                            direct.get(beta)
                        )
                    })?;
                    n += 1;
                }
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{n} per-beta counts"))
}

fn c7_dual_weights() -> Check {
    let mut n = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        for spec in code_grid(&f).into_iter().filter(|s| s.length() <= 400) {
            let v = build_defining_vector(&spec, DEFAULT_ENUM_BUDGET).unwrap();
            let closed = dual_weights(&spec).map_err(|e| e.to_string())?;
            for a in f.elements() {
                let bits = hamming_weight(&dual_codeword(&v, a));
                ensure(bits == closed[a.code() as usize], || {
                    format!(
                        "{} a={a}: popcount {bits} vs closed form {}",
                        label(&spec),
                        closed[a.code() as usize]
                    )
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} codewords"))
}

struct CodeData {
    label: String,
    dual: WeightEnumerator,
    code: WeightEnumerator,
}

fn c8_weight_distributions(store: &mut Vec<CodeData>) -> Check {
    let mut notes = Vec::new();
    for r in MOMENT_FIELDS {
        let f = field(r);
        for spec in code_grid(&f) {
            let name = label(&spec);
            let counts = spec.counts().unwrap();
            let dp = weight_distribution(&counts, DEFAULT_DP_LIMIT)
                .map_err(|e| format!("{name}: {e}"))?;
            if spec.length() <= 20 {
                let v = build_defining_vector(&spec, DEFAULT_ENUM_BUDGET).unwrap();
                let brute = exhaustive_weight_distribution(v.entries()).unwrap();
                ensure(dp == brute, || {
                    format!("{name}: DP differs from exhaustive enumeration")
                })?;
                notes.push(format!("{name} exhaustive"));
            }
            let dual = dual_weight_enumerator(&spec).map_err(|e| e.to_string())?;
            let mw = macwilliams_transform(&dual).map_err(|e| format!("{name}: {e}"))?;
            if let Some(j) = dp.freq().iter().zip(mw.freq()).position(|(a, b)| a != b) {
                return Err(format!("{name}: DP and MacWilliams differ at weight {j}"));
            }
            let expected = BigUint::from(1u32) << (spec.length() as usize - r as usize);
            ensure(dp.total() == expected, || {
                format!("{name}: total is not 2^(N-r)")
            })?;
            store.push(CodeData {
                label: name,
                dual,
                code: dp,
            });
        }
    }
    Ok(format!(
        "{} codes match MacWilliams; {}",
        store.len(),
        notes.join(", ")
    ))
}

fn c9_pless(store: &[CodeData]) -> Check {
    ensure(!store.is_empty(), || {
        "no code data (criterion 8 failed early)".into()
    })?;
    for d in store {
        let k = d.dual.total().bits() as u32 - 1;
        pless_check(&d.dual, &d.code, k, 8).map_err(|e| format!("{}: {e}", d.label))?;
    }
    Ok(format!("{} code pairs, h=0..8", store.len()))
}

fn c10_value_range() -> Check {
    let start = Instant::now();
    let mut lines = Vec::new();
    for r in SMALL_TO_256 {
        let f = field(r);
        let rep = value_range(&f).unwrap();
        let observed: Vec<i64> = rep.observed.keys().copied().collect();
        ensure(observed == rep.predicted, || {
            format!(
                "q={}: observed {observed:?} predicted {:?}",
                f.q(),
                rep.predicted
            )
        })?;
        ensure(rep.total() == u64::from(f.q() - 1), || {
            format!("q={}: multiplicities do not sum to q-1", f.q())
        })?;
        let table: BTreeMap<i64, u64> = rep.observed.clone();
        lines.push(format!("q={} {:?}", f.q(), table));
    }
    within(Duration::from_secs(5), start)?;
    for l in &lines {
        println!("      multiplicities {l}");
    }
    Ok("observed range equals predicted for q=4..256".into())
}

fn c11_injectivity() -> Check {
    let o = CodeOptions::default();
    let mut n = 0;
    for r in 3..=8 {
        let f = field(r);
        let mut specs: Vec<CodeSpec<'_>> = [2u32, 4, 8]
            .iter()
            .filter(|&&n| u64::from(f.q() - 1).pow(n - 1) <= 1 << 40)
            .map(|&n| CodeSpec::md(&f, n, o).unwrap())
            .collect();
        specs.extend((1..=4).map(|m| CodeSpec::pow(&f, m, o).unwrap()));
        for spec in specs {
            let rep = injectivity_check(&spec).map_err(|e| e.to_string())?;
            ensure(rep.sufficient_inequality, || {
                format!("{}: inequality fails", label(&spec))
            })?;
            ensure(rep.injective, || {
                format!("{}: kernel {:?}", label(&spec), rep.kernel)
            })?;
            n += 1;
        }
    }
    // below the range of the inequality the report must stay consistent
    let f = field(2);
    for spec in [
        CodeSpec::md(&f, 2, o).unwrap(),
        CodeSpec::pow(&f, 1, o).unwrap(),
        CodeSpec::pow(&f, 2, o).unwrap(),
    ] {
        let rep = injectivity_check(&spec).unwrap();
        ensure(rep.consistent(), || {
            format!("{}: inequality holds without injectivity", label(&spec))
        })?;
    }
    Ok(format!("{n} (q, family, param) configurations with q >= 8"))
}

fn c12_properties() -> Check {
    let mut n = 0;
    for r in MOMENT_FIELDS {
        let f = field(r);
        let q = f.q();
        let k1 = kloosterman_md_all(&f, 1).unwrap();
        for m in 0..=4 {
            let t = kloosterman_md_all(&f, m).unwrap();
            let len = i64::from(q - 1).pow(m);
            for (a, v) in t.iter() {
                ensure(within_deligne_bound(q, m, v), || {
                    format!("q={q} m={m} a={a}: |K|={v} exceeds bound")
                })?;
                ensure((len - v) % 2 == 0, || format!("q={q} m={m} a={a}: parity"))?;
                n += 1;
            }
        }
        for n_md in MD_NS {
            let counts = delta_formula(&f, n_md - 1).unwrap();
            let k = kloosterman_md_all(&f, n_md - 1).unwrap();
            for (a, v) in k.iter() {
                let s = counts.character_sum(&f, a);
                ensure(s == v, || {
                    format!("q={q} n={n_md} a={a}: sum delta*lambda = {s}, K = {v}")
                })?;
                n += 1;
            }
        }
        for m in POW_MS {
            let counts = sigma_formula(&f, m).unwrap();
            for (a, v) in k1.iter() {
                let s = counts.character_sum(&f, a);
                ensure(s == v.pow(m), || {
                    format!(
                        "q={q} m={m} a={a}: sum sigma*lambda = {s}, K^m = {}",
                        v.pow(m)
                    )
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} property instances"))
}

fn report(id: usize, name: &str, start: Instant, outcome: Check, failures: &mut usize) {
    let took = start.elapsed();
    match outcome {
        Ok(detail) => println!("PASS  [{id:>2}] {name}: {detail} ({took:.2?})"),
        Err(why) => {
            *failures += 1;
            println!("FAIL  [{id:>2}] {name}: {why} ({took:.2?})");
        }
    }
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut store = Vec::new();

    macro_rules! run {
        ($id:expr, $name:expr, $body:expr) => {{
            let t = Instant::now();
            let out = $body;
            report($id, $name, t, out, &mut failures);
        }};
    }

    println!("acceptance criteria");
    run!(1, "multi-dimensional recursion = oracle", c1_md_recursion());
    run!(2, "m-multiple recursion = oracle", c2_power_recursion());
    run!(3, "K2 recursion = oracle = bridge", c3_k2_bridge());
    run!(4, "K2 = K^2 - q", c4_k2_identity());
    run!(5, "Artin-Schreier sum = K - 1", c5_artin_schreier());
    run!(6, "fiber counts formula = enumeration", c6_fiber_counts());
    run!(7, "dual weights closed form = popcount", c7_dual_weights());
    run!(
        8,
        "weight distributions DP = brute = MacWilliams",
        c8_weight_distributions(&mut store)
    );
    run!(9, "Pless identity", c9_pless(&store));
    run!(10, "Kloosterman value range", c10_value_range());
    run!(11, "injectivity inequalities", c11_injectivity());
    run!(
        12,
        "Deligne, parity, character reconstruction",
        c12_properties()
    );

    if failures == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
