//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p quadtau --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadtau::arith::{build_sieves, tau_of};
use quadtau::bounds::{
    constants_for, refined_constants_derivation, theorem2_constants_derivation, Positivity,
    SQUAREFREE_DENSITY_CAP, SQUAREFREE_HARMONIC_CONST,
};
use quadtau::character::{g_of, k_majorant, kappa, make_character, qiu_rhs};
use quadtau::divisor_sum::{evaluate, exhaustive_check, running_sums, BoundKind, WorkLimits};
use quadtau::quadratic::{make_poly, QuadraticPoly};
use quadtau::rho::RhoContext;
use quadtau::table::{example_table, UNIT_GENERAL_PRINTED};

const TABLE_TOLERANCE: f64 = 0.02;
const UNIT_GENERAL_TOLERANCE: f64 = 0.005;

const TEST_POLYS: [(i64, i64); 5] = [(0, 1), (5, 27), (2, 10), (26, 706), (5, -26)];
const TEST_DELTAS: [i64; 5] = [-1, -2, -6, -30, 51];

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table_reproduction() -> Result<String, String> {
    let rows = example_table(None, &WorkLimits::default()).map_err(err)?;
    ensure(rows.len() == 5, "expected five rows")?;
    let mut worst: f64 = 0.0;
    for row in &rows {
        for (p, c) in row.published.constants.iter().zip(row.computed) {
            let dev = p.relative_deviation(c);
            worst = worst.max(dev);
            ensure(dev <= TABLE_TOLERANCE, format!("{}: computed {c} vs printed {}", row.poly, p.value))?;
        }
    }
    let bc = constants_for(&make_poly(0, 1), Positivity::Require).map_err(err)?;
    let mut unit_worst: f64 = 0.0;
    for (p, c) in UNIT_GENERAL_PRINTED.iter().zip([bc.c1, bc.c2, bc.c3]) {
        let dev = p.relative_deviation(c);
        unit_worst = unit_worst.max(dev);
        ensure(dev <= UNIT_GENERAL_TOLERANCE, format!("n^2+1 general: computed {c} vs printed {}", p.value))?;
    }
    Ok(format!("max rel dev {worst:.4} (rows), {unit_worst:.4} (n^2+1 general)"))
}

fn rho_identity() -> Result<String, String> {
    let mut checked = 0;
    for (b, c) in TEST_POLYS {
        let ctx = RhoContext::new(make_poly(b, c), 10_000).map_err(err)?;
        let bad = ctx.mismatches().map_err(err)?;
        if let Some(t) = bad.first() {
            return Err(format!(
                "delta {}: {} mismatches, first d = {} ({}, {}, {})",
                ctx.poly().delta(),
                bad.len(),
                t.d,
                t.brute,
                t.closed,
                t.convolved
            ));
        }
        checked += ctx.d_max();
    }
    Ok(format!("0 mismatches over {checked} (delta, d) pairs"))
}

fn theorem2_exhaustive() -> Result<String, String> {
    let unit = make_poly(0, 1);
    let limits = WorkLimits::default();
    let sums = running_sums(&unit, 10_000, &limits).map_err(err)?;
    let mut naive = 0u64;
    for n in 1..=10_000u64 {
        naive += tau_of(unit.eval(n).map_err(err)? as u128).map_err(err)?;
        ensure(naive == sums[n as usize - 1], format!("sieve and naive totals differ at N = {n}"))?;
    }
    let t2 = exhaustive_check(&unit, 100_000, BoundKind::Theorem2, &limits).map_err(err)?;
    ensure(t2.holds(), format!("1.216 N log N + 4.332 N fails at {:?}", t2.first_violation))?;
    let refined = exhaustive_check(&unit, 100_000, BoundKind::Refined, &limits).map_err(err)?;
    ensure(refined.holds(), format!("refined bound fails at {:?}", refined.first_violation))?;
    Ok(format!(
        "sieve = naive to 1e4; smallest margins {:.1} at N = {} and {:.1} at N = {} (refined)",
        t2.tightest.margin,
        t2.tightest.n,
        refined.tightest.margin,
        refined.tightest.n
    ))
}

fn theorem1_margins() -> Result<String, String> {
    let ns = [10, 100, 1000, 10_000];
    let limits = WorkLimits::default();
    let mut smallest = f64::INFINITY;
    for (b, c) in &TEST_POLYS[..4] {
        let p: QuadraticPoly = make_poly(*b, *c);
        for kind in [BoundKind::Theorem1, BoundKind::SqrtF] {
            for r in evaluate(&p, &ns, kind, &limits).map_err(err)? {
                ensure(r.holds(), format!("{p} {kind}: margin {} at N = {}", r.margin, r.n))?;
                smallest = smallest.min(r.margin);
            }
        }
    }
    Ok(format!("32 margins positive, smallest {smallest:.1}"))
}

fn character_sums() -> Result<String, String> {
    let mut worst_ratio: f64 = 0.0;
    for delta in TEST_DELTAS {
        let ch = make_character(delta).map_err(err)?;
        let (max_abs, at) = ch.max_abs_partial_sum(100_000);
        let k = kappa(i128::from(delta));
        ensure((max_abs as f64) < k, format!("delta {delta}: |X({at})| = {max_abs} >= kappa {k}"))?;
        worst_ratio = worst_ratio.max(max_abs as f64 / k);
    }
    for q in [4u64, 8, 24, 120, 204] {
        let g = g_of(q as f64);
        for n in 1..=10_000 {
            let r = qiu_rhs(q, n);
            ensure(r <= g, format!("qiu_rhs({q}, {n}) = {r} > g(q) = {g}"))?;
        }
    }
    let samples = 100_000;
    for i in 0..=samples {
        let x = 1.0 + 999.0 * f64::from(i) / f64::from(samples);
        let rhs = x * x.ln() + 1.2 * x;
        ensure(k_majorant(x) < rhs, format!("K({x}) = {} >= {rhs}", k_majorant(x)))?;
    }
    Ok(format!("max |X|/kappa = {worst_ratio:.3}; qiu chain and K(x) hold"))
}

fn squarefree_inputs() -> Result<String, String> {
    let sieve = build_sieves(1_000_000).map_err(err)?;
    let harmonic = sieve.squarefree_harmonic_prefix();
    let mut min_slack = f64::INFINITY;
    for (i, &h) in harmonic.iter().enumerate() {
        let x = (i + 1) as f64;
        let bound = 6.0 / (PI * PI) * x.ln() + SQUAREFREE_HARMONIC_CONST;
        ensure(h <= bound, format!("squarefree harmonic sum {h} > {bound} at x = {x}"))?;
        min_slack = min_slack.min(bound - h);
    }
    let counts = sieve.squarefree_count_prefix();
    let mut max_density: f64 = 0.0;
    for n in 1000..1700usize {
        let q = counts[n - 1];
        let density = q as f64 / n as f64;
        ensure(density <= SQUAREFREE_DENSITY_CAP, format!("{q} squarefree numbers up to {n}"))?;
        max_density = max_density.max(density);
    }
    Ok(format!("min harmonic slack {min_slack:.5}; max density on [1000, 1700) {max_density:.5}"))
}

fn character_harmonic() -> Result<String, String> {
    let mut min_slack = f64::INFINITY;
    for delta in TEST_DELTAS {
        let ch = make_character(delta).map_err(err)?;
        let cap = kappa(i128::from(delta)).ln() + 2.0;
        for (i, &s) in ch.char_harmonic_prefix(100_000).iter().enumerate() {
            ensure(s < cap, format!("delta {delta}: sum to {} is {s} >= {cap}", i + 1))?;
            min_slack = min_slack.min(cap - s);
        }
    }
    Ok(format!("min slack {min_slack:.4}"))
}

fn constant_derivation() -> Result<String, String> {
    let t2 = theorem2_constants_derivation();
    ensure(t2 == (1.216, 4.332), format!("n^2+1 constants {t2:?}"))?;
    let refined = refined_constants_derivation();
    ensure(refined == (1.216, 3.336), format!("refined constants {refined:?}"))?;
    let bc = constants_for(&make_poly(0, 1), Positivity::Require).map_err(err)?;
    for (p, c) in UNIT_GENERAL_PRINTED.iter().zip([bc.c1, bc.c2, bc.c3]) {
        ensure(
            p.relative_deviation(c) <= UNIT_GENERAL_TOLERANCE,
            format!("general pipeline gives {c}, printed {}", p.value),
        )?;
    }
    Ok(format!("{t2:?}, {refined:?}; general ({:.3}, {:.2}, {:.2})", bc.c1, bc.c2, bc.c3))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 8] = [
        ("table reproduction", table_reproduction, Duration::from_secs(1)),
        ("rho identity d <= 1e4", rho_identity, Duration::from_secs(30)),
        ("n^2+1 bounds at every N <= 1e5", theorem2_exhaustive, Duration::from_secs(120)),
        ("general bound margins", theorem1_margins, Duration::from_secs(60)),
        ("character sums and qiu chain", character_sums, Duration::from_secs(30)),
        ("squarefree harmonic and density", squarefree_inputs, Duration::from_secs(60)),
        ("character harmonic sums", character_harmonic, Duration::from_secs(10)),
        ("constant derivation", constant_derivation, Duration::from_secs(1)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > *budget => ("FAIL", format!("took {elapsed:.2?}, budget {budget:?}")),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {} {status} [{elapsed:.2?}] {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
