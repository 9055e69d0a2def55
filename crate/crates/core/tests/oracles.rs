//! Values computed independently in exact symbolic arithmetic (nullspace
//! solves, direct matrix products) and frozen here.

use isocover_core::maps::{phi1_descend, phi1_descend_with_diagnostics};
use isocover_core::mat2::product;
use isocover_core::reps::{validate, Theta, TorusTwoRep};
use isocover_core::sl2::{commutator_trace, inverting_involution};
use isocover_core::{Mat2, Scalar};
use serde_json::json;

/// Gaussian rational from `re`, `im` literals such as `"-4/5"`.
fn q(re: &str, im: &str) -> Scalar {
    serde_json::from_value(json!([re, im])).unwrap()
}

fn r(x: &str) -> Scalar {
    q(x, "0")
}

fn m(e: [Scalar; 4]) -> Mat2 {
    let [a, b, c, d] = e;
    Mat2::new(a, b, c, d)
}

fn c(re: f64, im: f64) -> Scalar {
    Scalar::float(re, im)
}

#[test]
fn commutator_traces_exact() {
    let cases = [
        (m([r("2"), r("1"), r("1"), r("1")]), m([r("1"), r("2"), r("0"), r("1")]), r("6")),
        (m([r("3"), r("1/2"), r("4"), r("1")]), m([r("1/3"), r("0"), r("5"), r("3")]), r("-695/36")),
        (m([q("1", "1"), r("1"), r("1"), q("1", "-1")]), m([r("0"), r("-1"), r("1"), q("0", "1")]), r("3")),
    ];
    for (a, b, want) in cases {
        let got = commutator_trace(&a, &b);
        assert!(got.is_exact());
        assert_eq!(got, want);
    }
}

#[test]
fn involutions_match_nullspace_solutions() {
    let cases = [
        (
            m([r("2"), r("1"), r("1"), r("1")]),
            m([r("1"), r("2"), r("0"), r("1")]),
            m([c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0), c(0.0, -1.0)]),
        ),
        (
            m([r("1"), r("1"), r("0"), r("1")]),
            m([r("1"), r("0"), r("-2"), r("1")]),
            m([c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]),
        ),
        (
            m([r("3"), r("1/2"), r("4"), r("1")]),
            m([r("1/3"), r("0"), r("5"), r("3")]),
            m([
                c(-0.5416186085055892, 0.0),
                c(-0.28886325786964756, 0.0),
                c(4.477380496979537, 0.0),
                c(0.5416186085055892, 0.0),
            ]),
        ),
    ];
    for (a, b, want) in cases {
        let inv = inverting_involution(&a, &b).unwrap();
        assert!(inv.m.to_float().near_up_to_sign(&want, 1e-12), "{:?} vs {want:?}", inv.m);
    }
}

#[test]
fn exact_descent_matches_direct_computation() {
    let a = m([r("1"), r("1"), r("1"), r("2")]);
    let b = m([r("2"), q("0", "1"), q("0", "1"), r("0")]);
    let d1 = m([q("0", "1"), r("0"), q("-4/5", "7/5"), q("0", "-1")]);
    let d2 = product([&(&b * &a).adjugate(), &d1.adjugate(), &a, &b]);
    let torus = TorusTwoRep { a, b, d1, d2, theta: Theta::half() };
    assert!(validate(&torus).is_empty());

    let d = phi1_descend_with_diagnostics(&torus).unwrap();
    // tr(AB)^2 - 4 is not a square in Q(i), so the normal form goes through floats
    assert!(d.promoted);
    assert!(d.trace_bamd1.abs() < 1e-12);
    // the oracle took M = [[0, -1], [1, 0]]; the canonical sign is the other one
    let oracle = [
        m([r("-1"), r("1"), r("-2"), r("1")]),
        m([q("-2", "2"), q("1", "-2"), q("-17/5", "6/5"), q("2", "-2")]),
        m([q("0", "1"), r("0"), q("-4/5", "7/5"), q("0", "-1")]),
        m([q("0", "-1"), r("2"), r("0"), q("0", "1")]),
        m([r("0"), r("-1"), r("1"), r("0")]),
    ];
    let signs = [-1, -1, 1, -1, -1];
    let five = phi1_descend(&torus).unwrap();
    let got = [&five.m0, &five.m1, &five.mt, &five.mlambda, &five.minf];
    for ((g, o), s) in got.into_iter().zip(&oracle).zip(signs) {
        assert!(g.approx_eq(&o.scale(&Scalar::int(s)), 1e-12), "{g:?} vs {o:?}");
    }
}
