//! Acceptance criteria, one PASS/FAIL line each. Tolerances are pinned
//! here rather than inherited from the process-wide epsilon.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use isocover_core::classify::{enumerate, sigma4_obstruction, Classification, Label, Order};
use isocover_core::verify::{run_suite, RunReport, Theorem};
use isocover_core::{set_epsilon, Backend};

const EPS: f64 = 1e-9;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(theorem: Theorem, trials: usize, seed: u64, backend: Backend) -> RunReport {
    run_suite(theorem, trials, seed, backend)
}

fn describe(r: &RunReport) -> String {
    match r.failures.first() {
        None => format!("{} trials, 0 failures", r.trials),
        Some(f) => format!("{} trials, {} failures, first: {} ({})", r.trials, r.failures.len(), f.violated_invariant, f.case_id),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn fricke() -> Outcome {
    let ((float, exact), took) = timed(|| {
        (suite(Theorem::Fricke, 1000, 1, Backend::Float), suite(Theorem::Fricke, 100, 2, Backend::Exact))
    });
    Outcome {
        ok: float.passed() && exact.passed() && took < Duration::from_secs(1),
        detail: format!("float: {}; exact: {}; {took:.2?}", describe(&float), describe(&exact)),
    }
}

fn involution() -> Outcome {
    let (r, took) = timed(|| suite(Theorem::Involution, 1000, 3, Backend::Float));
    Outcome { ok: r.passed() && took < Duration::from_secs(1), detail: format!("{}; {took:.2?}", describe(&r)) }
}

fn plain(theorem: Theorem, trials: usize, seed: u64) -> Outcome {
    let r = suite(theorem, trials, seed, Backend::Float);
    Outcome { ok: r.passed(), detail: describe(&r) }
}

type Row = (Label, u32, Vec<Order>, u32, u32, u32, bool);

fn rows(c: &Classification) -> Vec<Row> {
    c.entries
        .iter()
        .map(|e| {
            let k = &e.candidate;
            (e.label, k.degree, k.base.orders.clone(), k.cover_genus, k.cover_orbifold_count, k.branch_count, e.realizable)
        })
        .collect()
}

/// Re-derived independently by a brute-force enumeration (exact fractions,
/// tuple permutations) over a wider box than the reduced search.
fn golden() -> Vec<Row> {
    use Order::{Finite, Infinite};
    let two = Finite(2);
    vec![
        (Label::Quadratic, 2, vec![two, two, Infinite, Infinite], 0, 4, 0, true),
        (Label::Lame, 2, vec![two, two, two, Infinite], 1, 1, 0, true),
        (Label::UncompleteTwicePuncturedTorus, 2, vec![two, two, two, Infinite], 1, 2, 1, true),
        (Label::Bielliptic1, 2, vec![two, two, two, two, Infinite], 1, 2, 0, true),
        (Label::UncompleteGenus2, 2, vec![two; 5], 2, 0, 1, true),
        (Label::Genus2, 2, vec![two; 6], 2, 0, 0, true),
        (Label::Quartic, 4, vec![two, two, two, Infinite], 0, 4, 0, true),
        (Label::EliminatedSigma4, 4, vec![two, two, two, Finite(3)], 1, 1, 0, false),
    ]
}

fn classification() -> Outcome {
    let ((pruned, wide), took) = timed(|| (enumerate(4, false), enumerate(4, true)));
    let mut got = rows(&pruned);
    let mut want = golden();
    got.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    want.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    let admissible: Vec<Row> = got.iter().filter(|r| r.0.is_admissible()).cloned().collect();
    let mut wide_admissible: Vec<Row> = rows(&wide).into_iter().filter(|r| r.0.is_admissible()).collect();
    wide_admissible.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    let eliminated = pruned.eliminated().count();
    let ok = got == want && eliminated == 1 && admissible == wide_admissible && took < Duration::from_secs(10);
    Outcome {
        ok,
        detail: format!(
            "{} admissible, {eliminated} eliminated, widened search {}; {took:.2?}",
            admissible.len(),
            if admissible == wide_admissible { "agrees" } else { "DISAGREES" }
        ),
    }
}

fn sigma4() -> Outcome {
    let (r, took) = timed(sigma4_obstruction);
    let orders_ok = r.rows.len() == 27 && r.rows.iter().all(|row| row.order <= 2);
    Outcome {
        ok: orders_ok && r.obstruction_confirmed && r.verdict == "cover nonexistent" && took < Duration::from_millis(10),
        detail: format!("{} products, all of order 1 or 2: {orders_ok}; verdict \"{}\"; {took:.2?}", r.rows.len(), r.verdict),
    }
}

fn main() -> ExitCode {
    set_epsilon(EPS);
    let criteria: [Criterion; 8] = [
        ("fricke identity", fricke),
        ("involution determinant law", involution),
        ("descent suite (500 torus reps)", || plain(Theorem::R0, 500, 7)),
        ("fiber count (200 torus reps)", || plain(Theorem::TwoToOne, 200, 8)),
        ("bielliptic suite (300 runs)", || plain(Theorem::Bielliptic, 300, 9)),
        ("classification golden list", classification),
        ("sigma4 obstruction", sigma4),
        // ten random words per trial: 1000 involution checks
        ("word/matrix consistency", || plain(Theorem::Words, 100, 10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        println!("{} {}. {name}: {}", if out.ok { "PASS" } else { "FAIL" }, i + 1, out.detail);
        failed += !out.ok as usize;
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
