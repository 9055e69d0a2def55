//! Randomized checks of the identities behind each map, with a report that
//! records every failing case together with its input.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::ParseError;
use crate::maps::{genus2_to_five, phi1_descend, phi1_descend_with_diagnostics, phi1_fiber, phi1_pullback, pi_descend, pi_pullback};
use crate::mat2::{product, Mat2};
use crate::reps::{
    is_conjugate, random_scalar, random_unimodular, reparam_c_to_d, sample_five_rep, sample_torus_c_rep,
    sample_torus_rep, validate, AnyRep, Equivalence, Representation, Theta,
};
use crate::scalar::{epsilon, Backend, Scalar};
use crate::sl2::{commutator, commutator_trace, fricke_trace, inverting_involution, raw_involution};
use crate::words::{
    eval_word, involution, orbifold_relation, phi_star, random_word, reduce_with_sign, torus_relation, Assignment,
    Group, Letter, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Fricke,
    Involution,
    R0,
    TwoToOne,
    Bielliptic,
    Words,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Fricke,
        Theorem::Involution,
        Theorem::R0,
        Theorem::TwoToOne,
        Theorem::Bielliptic,
        Theorem::Words,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Fricke => "fricke",
            Theorem::Involution => "involution",
            Theorem::R0 => "r0",
            Theorem::TwoToOne => "two-to-one",
            Theorem::Bielliptic => "bielliptic",
            Theorem::Words => "words",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| ParseError::Theorem(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case_id: String,
    pub violated_invariant: String,
    pub input: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Failures of one trial.
struct Case<'a> {
    id: String,
    input: Value,
    out: &'a mut Vec<Failure>,
}

impl Case<'_> {
    fn check(&mut self, ok: bool, invariant: impl Into<String>) -> bool {
        if !ok {
            self.out.push(Failure {
                case_id: self.id.clone(),
                violated_invariant: invariant.into(),
                input: self.input.clone(),
            });
        }
        ok
    }

    fn fail(&mut self, invariant: impl fmt::Display) {
        self.check(false, invariant.to_string());
    }
}

fn rep_json(rep: impl Into<AnyRep>) -> Value {
    serde_json::to_value(rep.into()).unwrap_or(Value::Null)
}

/// Identities that hold by construction, checked to `10 eps`.
fn tight() -> f64 {
    10.0 * epsilon()
}

fn close(x: &Mat2, y: &Mat2, tol: f64) -> bool {
    x.approx_eq(y, tol)
}

const THETAS: [fn() -> Theta; 3] = [Theta::half, || Theta::rational(1, 3), || Theta::Float(0.137)];

/// Runs `trials` cases of one suite. Trial `i` draws its input from its own
/// seed, derived from `seed`, so reports are reproducible.
pub fn run_suite(theorem: Theorem, trials: usize, seed: u64, backend: Backend) -> RunReport {
    let start = Instant::now();
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..trials {
        let trial_seed = seeds.next_u64();
        let mut case = Case { id: format!("{}-{i}", theorem.name()), input: json!({ "seed": trial_seed }), out: &mut failures };
        match theorem {
            Theorem::Fricke => fricke_case(&mut case, trial_seed, backend),
            Theorem::Involution => involution_case(&mut case, trial_seed, backend),
            Theorem::R0 => r0_case(&mut case, i, trial_seed, backend),
            Theorem::TwoToOne => two_to_one_case(&mut case, i, trial_seed, backend),
            Theorem::Bielliptic => bielliptic_case(&mut case, trial_seed, backend),
            Theorem::Words => words_case(&mut case, i, trial_seed, backend),
        }
    }
    RunReport {
        command: format!("verify {} --backend {}", theorem.name(), backend_name(backend)),
        seed,
        trials,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn backend_name(backend: Backend) -> &'static str {
    match backend {
        Backend::Float => "float",
        Backend::Exact => "exact",
    }
}

fn fricke_case(case: &mut Case, seed: u64, backend: Backend) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = match (random_unimodular(&mut rng, backend), random_unimodular(&mut rng, backend)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return case.fail("sampler exhausted"),
    };
    case.input = json!({ "a": a, "b": b });
    let lhs = commutator_trace(&a, &b);
    let rhs = fricke_trace(&a.trace(), &b.trace(), &(&a * &b).trace());
    case.check(lhs.near(&rhs), "tr[A,B] = a^2 + b^2 + c^2 - abc - 2");
    let ab_inv = (&a * &b.adjugate()).trace();
    case.check(((&a * &b).trace() + ab_inv).near(&(a.trace() * b.trace())), "tr(AB) + tr(AB^-1) = tr(A) tr(B)");
}

fn involution_case(case: &mut Case, seed: u64, backend: Backend) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // normal-form triple (a, b, gamma); gamma bounded away from zero
    let (ta, tb, gamma) = loop {
        let ta = random_scalar(&mut rng, backend);
        let tb = random_scalar(&mut rng, backend);
        let gamma = random_scalar(&mut rng, backend) * Scalar::int(2);
        if gamma.abs() > 0.25 {
            break (ta, tb, gamma);
        }
    };
    case.input = json!({ "a": ta, "b": tb, "gamma": gamma });
    let a = Mat2::new(ta.clone(), Scalar::int(-1), Scalar::one(), Scalar::zero());
    let b = Mat2::new(Scalar::zero(), gamma.checked_inv().expect("gamma is nonzero"), -&gamma, tb.clone());
    let comm = commutator_trace(&a, &b);
    let raw = raw_involution(&ta, &tb, &gamma);
    let law = (Scalar::int(2) - &comm) * Scalar::ratio(1, 4);
    case.check(raw.det().near(&law), "det(M0) = (2 - tr[A,B]) / 4");
    if (comm.clone() - Scalar::int(2)).abs() < 1e-3 {
        // reducible pair, no unimodular rescaling
        return;
    }
    let m = match inverting_involution(&a, &b) {
        Ok(inv) => inv.m,
        Err(e) => return case.fail(format!("inverting_involution: {e}")),
    };
    let tol = tight();
    case.check(m.det().approx_eq(&Scalar::one(), tol), "det M = 1");
    case.check(close(&(&m * &m), &-Mat2::identity(), tol), "M^2 = -I");
    case.check(close(&m.conjugate(&a), &a.adjugate(), tol), "M A M^-1 = A^-1");
    case.check(close(&m.conjugate(&b), &b.adjugate(), tol), "M B M^-1 = B^-1");
}

fn r0_case(case: &mut Case, i: usize, seed: u64, backend: Backend) {
    let theta = THETAS[i % 3]();
    let rep = match sample_torus_rep(theta, seed, backend) {
        Ok(r) => r,
        Err(e) => return case.fail(format!("sampler: {e}")),
    };
    case.input = rep_json(rep.clone());
    let d = match phi1_descend_with_diagnostics(&rep) {
        Ok(d) => d,
        Err(e) => return case.fail(format!("phi1_descend: {e}")),
    };
    let tol = tight();
    let q = &d.rep;
    let prod = product([&q.m0, &q.m1, &q.mt, &q.mlambda, &q.minf]);
    case.check(close(&prod, &Mat2::identity(), tol), "M0 M1 Mt Mlambda Minf = I");
    for (name, m) in [("M0", &q.m0), ("M1", &q.m1), ("Mlambda", &q.mlambda), ("Minf", &q.minf)] {
        case.check(m.trace().approx_eq(&Scalar::zero(), tol), format!("tr {name} = 0"));
    }
    case.check(q.mt.trace().approx_eq(&theta.trace(), tol), "tr Mt = 2cos(pi theta)");
    case.check(d.trace_bamd1.approx_eq(&Scalar::zero(), tol), "tr(B A M D1) = 0");
    match phi1_pullback(q) {
        Ok(back) => {
            let same = [(&back.a, &rep.a), (&back.b, &rep.b), (&back.d1, &rep.d1), (&back.d2, &rep.d2)]
                .iter()
                .all(|(x, y)| close(x, y, tol));
            case.check(same, "phi1_pullback(phi1_descend(r)) = r");
        }
        Err(e) => case.fail(format!("phi1_pullback: {e}")),
    }
}

fn two_to_one_case(case: &mut Case, i: usize, seed: u64, backend: Backend) {
    let theta = THETAS[i % 3]();
    let rep = match sample_torus_rep(theta, seed, backend) {
        Ok(r) => r,
        Err(e) => return case.fail(format!("sampler: {e}")),
    };
    case.input = rep_json(rep.clone());
    let fiber = match phi1_fiber(&rep) {
        Ok(f) => f,
        Err(e) => return case.fail(format!("phi1_fiber: {e}")),
    };
    let [p, q] = &fiber.elements;
    let distinct = p.matrices().iter().zip(q.matrices().iter()).any(|(x, y)| !close(x, y, tight()));
    case.check(distinct, "fiber elements are distinct");
    case.check(fiber.projectively_equal, "fiber elements agree up to sign");
    let tol = tight();
    for (k, e) in fiber.elements.iter().enumerate() {
        case.check(validate(e).is_empty(), format!("fiber element {k} is valid"));
        let ok = phi1_pullback(e).is_ok_and(|back| {
            [(&back.a, &rep.a), (&back.b, &rep.b), (&back.d1, &rep.d1), (&back.d2, &rep.d2)]
                .iter()
                .all(|(x, y)| close(x, y, tol))
        });
        case.check(ok, format!("fiber element {k} pulls back to r"));
    }
}

/// Margin from `tr[A1, B1] = 2` below which the descent chain is not run.
pub const REDUCIBLE_MARGIN: f64 = 1e-3;

fn bielliptic_case(case: &mut Case, seed: u64, backend: Backend) {
    let c = match sample_torus_c_rep(seed, backend) {
        Ok(c) => c,
        Err(e) => return case.fail(format!("sampler: {e}")),
    };
    case.input = rep_json(c.clone());
    let g = match pi_pullback(&c) {
        Ok(g) => g,
        Err(e) => return case.fail(format!("pi_pullback: {e}")),
    };
    case.check(validate(&g).is_empty(), "pi_pullback output is valid");
    case.check(g.a1.trace().near(&g.a2.trace()) && g.b1.trace().near(&g.b2.trace()), "handles have equal traces");
    let tol = tight() * c.c1.max_abs().max(1.0);
    match pi_descend(&g) {
        Ok(back) => {
            let up_to_sign = back.c1.near_up_to_sign(&c.c1, tol);
            case.check(up_to_sign, "pi_descend recovers C1 up to sign");
        }
        Err(e) => case.fail(format!("pi_descend: {e}")),
    }
    if (commutator(&g.a1, &g.b1).trace() - Scalar::int(2)).abs() <= REDUCIBLE_MARGIN {
        return;
    }
    let original = match phi1_descend(&reparam_c_to_d(&c)) {
        Ok(r) => r,
        Err(e) => return case.fail(format!("phi1_descend of the original: {e}")),
    };
    match genus2_to_five(&g) {
        Ok(five) => {
            case.check(validate(&five).is_empty(), "descent chain output is valid");
            let conj = is_conjugate(&original, &five, Equivalence::Projective).unwrap_or(false);
            case.check(conj, "descent chain is projectively conjugate to the original");
        }
        Err(e) => case.fail(format!("descent chain: {e}")),
    }
}

fn words_case(case: &mut Case, i: usize, seed: u64, backend: Backend) {
    let theta = THETAS[i % 3]();
    let rep = match sample_five_rep(theta, seed, backend) {
        Ok(r) => r,
        Err(e) => return case.fail(format!("sampler: {e}")),
    };
    case.input = rep_json(rep.clone());
    let asg = Assignment::from(&rep);
    let torus = match phi1_pullback(&rep) {
        Ok(t) => t,
        Err(e) => return case.fail(format!("phi1_pullback: {e}")),
    };
    let tol = epsilon();
    for (letter, m) in Letter::TORUS.iter().zip([&torus.a, &torus.b, &torus.d1, &torus.d2]) {
        let img = phi_star(&Word::letters(&[*letter])).expect("torus letter");
        let ok = eval_word(&img, &asg).is_ok_and(|e| close(&e, m, tol));
        case.check(ok, format!("eval(phi_star({})) matches the pullback", letter.name()));
    }
    let rel = eval_word(&orbifold_relation(), &asg).map(|e| close(&e, &Mat2::identity(), tol));
    case.check(rel == Ok(true), "g0 g1 gt glambda ginf = I");
    let raw = phi_star(&torus_relation()).expect("torus word");
    let (reduced, sign) = reduce_with_sign(&raw);
    let expected = Mat2::identity().scale(&Scalar::int(sign as i64));
    let ok = eval_word(&reduced, &asg).is_ok_and(|e| close(&e, &expected, tight()));
    case.check(ok, "reduced relation word evaluates to the predicted sign");
    case.check(raw.involutive_count().is_multiple_of(2), "phi_star image has even parity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        let len = rng.gen_range(0..24);
        let w = random_word(&mut rng, Group::Torus, len);
        let twice = involution(&w).and_then(|x| involution(&x));
        if !case.check(twice == Ok(w.clone()), "involution twice is the identity") {
            case.out.last_mut().expect("just pushed").input = json!({ "word": w.to_string() });
        }
    }
    // pullbacks near the reducible locus have large entries; scale like the conjugacy check
    let s = torus.matrices().iter().map(|m| m.max_abs()).fold(1.0, f64::max);
    let inv_rel = involution(&torus_relation()).expect("torus word");
    let ok = eval_word(&inv_rel, &Assignment::from(&torus)).is_ok_and(|e| close(&e, &Mat2::identity(), tight() * s * s));
    case.check(ok, "involution preserves the torus relation");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_runs() {
        for theorem in Theorem::ALL {
            let report = run_suite(theorem, 12, 3, Backend::Float);
            assert!(report.passed(), "{theorem}: {:?}", report.failures);
            assert_eq!(report.trials, 12);
        }
    }

    #[test]
    fn exact_fricke_is_exact() {
        let report = run_suite(Theorem::Fricke, 20, 1, Backend::Exact);
        assert!(report.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Theorem::R0, 5, 9, Backend::Float);
        let b = run_suite(Theorem::R0, 5, 9, Backend::Float);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.command, "verify r0 --backend float");
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("riemann".parse::<Theorem>().is_err());
    }
}
