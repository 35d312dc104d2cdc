//! One line per acceptance criterion. Exits non-zero if any line fails.

use std::time::{Duration, Instant};
use tableau_core::checks::*;

const EXAMPLES_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const COMPLEXITY_LIMIT: Duration = Duration::from_secs(60);

const BOX: (usize, usize, usize) = (3, 4, 12);
const STAIRCASE: (usize, usize) = (4, 8);
const SLIDE_SAMPLES: usize = 500;
const RANDOM_INSTANCES: usize = 1000;
const SEED: u64 = 2024;

struct Line {
    ok: bool,
    text: String,
}

fn line(n: u32, title: &str, reports: &[&Report], extra: Option<(bool, String)>, took: Duration, limit: Option<Duration>) -> Line {
    let mut ok = reports.iter().all(|r| r.ok());
    let mut parts: Vec<String> = reports.iter().map(|r| format!("{} {}", r.name, r.summary())).collect();
    if let Some((good, msg)) = extra {
        ok &= good;
        parts.push(msg);
    }
    if let Some(l) = limit {
        ok &= took < l;
        parts.push(format!("{:.2}s (limit {}s)", took.as_secs_f64(), l.as_secs()));
    } else {
        parts.push(format!("{:.2}s", took.as_secs_f64()));
    }
    let mut text = format!("criterion {n} {title}: {} | {}", if ok { "PASS" } else { "FAIL" }, parts.join("; "));
    for r in reports {
        for f in &r.failures {
            text.push_str(&format!("\n    {}: {}", r.name, f.replace('\n', "/")));
        }
    }
    Line { ok, text }
}

fn main() {
    let mut lines = Vec::new();

    let t = Instant::now();
    let r = examples();
    lines.push(line(1, "worked examples", &[&r], None, t.elapsed(), Some(EXAMPLES_LIMIT)));

    let a = type_a_sweep(BOX.0, BOX.1, BOX.2);
    let b = type_b_sweep(STAIRCASE.0, STAIRCASE.1);

    let t = Instant::now();
    let ea = equivalences_a(&a);
    let eb = equivalences_b(&b);
    lines.push(line(2, "oracle equivalence", &[&ea, &eb], None, t.elapsed(), Some(SWEEP_LIMIT)));

    let t = Instant::now();
    let ia = inversions_a(&a);
    let ib = inversions_b(&b);
    lines.push(line(3, "inversion", &[&ia, &ib], None, t.elapsed(), None));

    let t = Instant::now();
    let (inv, witnesses) = involutions(&a);
    let order = (witnesses > 0, format!("pesh^2 != id on {witnesses} instances"));
    lines.push(line(4, "algebraic structure", &[&inv], Some(order), t.elapsed(), None));

    let t = Instant::now();
    let samples = slide_samples(SEED, SLIDE_SAMPLES, 3, 4, 9);
    let cop = coplacticity(&samples, COPLACTIC);
    lines.push(line(5, "coplacticity", &[&cop], None, t.elapsed(), None));

    let t = Instant::now();
    let inv = invariants(&a);
    lines.push(line(6, "invariant suite", &[&inv], None, t.elapsed(), None));

    let t = Instant::now();
    let bound = step_bounds(&random_instances(SEED, RANDOM_INSTANCES));
    let scaling = match alpha_scaling() {
        Ok((r, rows)) => {
            let local: Vec<usize> = rows.iter().map(|x| x.local()).collect();
            let oracle: Vec<usize> = rows.iter().map(|x| x.oracle).collect();
            let mut r = r;
            r.name = format!("alpha 0..{} local {:?} oracle {:?}", rows.len() - 1, local, oracle);
            r
        }
        Err(e) => {
            let mut r = Report::new("alpha scaling");
            r.fail(e.to_string());
            r
        }
    };
    lines.push(line(7, "complexity", &[&bound, &scaling], None, t.elapsed(), Some(COMPLEXITY_LIMIT)));

    for l in &lines {
        println!("{}", l.text);
    }
    let failed = lines.iter().filter(|l| !l.ok).count();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
