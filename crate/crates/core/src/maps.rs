//! Maps between representation spaces induced by the elliptic double cover
//! of the sphere branched at four points, and by the bielliptic double
//! cover of a genus-two curve.

use crate::error::{MapError, RepError};
use crate::mat2::{product, Mat2};
use crate::reps::{
    reparam_c_to_d, reparam_d_to_c, validate, FivePuncturedRep, GenusTwoRep, Theta, TorusTwoRep,
    TorusTwoRepC,
};
use crate::scalar::{epsilon, Scalar};
use crate::sl2::{commutator, conjugator_within, inverting_involution, is_reducible_pair};

/// Tolerance for identities that hold by construction: `10 eps`, widened by
/// the size of the matrices involved.
fn internal_tol(ms: &[&Mat2]) -> f64 {
    let scale = ms.iter().map(|m| m.max_abs()).fold(1.0, f64::max);
    10.0 * epsilon() * scale
}

fn require_valid<R: crate::reps::Representation>(rep: &R) -> Result<(), RepError> {
    let violations = validate(rep);
    if violations.is_empty() {
        return Ok(());
    }
    let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    Err(RepError::Invalid(text.join("; ")))
}

/// Picks the sign of `m` whose first entry that is not (numerically) zero
/// has argument in (-pi/2, pi/2].
pub fn canonical_sign(m: Mat2) -> Mat2 {
    let eps = epsilon();
    let lead = m.entries().into_iter().find(|x| x.abs() > eps).cloned();
    match lead {
        Some(x) if !x.in_right_half_plane() => -m,
        _ => m,
    }
}

/// Pullback along the double cover of the sphere branched over
/// `0, 1, lambda, infinity`: `A = M1 Mt Mlambda`, `B = Mlambda Minf`,
/// `D1 = Mt`, `D2 = Minf Mt Minf^-1`.
pub fn phi1_pullback(rep: &FivePuncturedRep) -> Result<TorusTwoRep, MapError> {
    require_valid(rep)?;
    Ok(TorusTwoRep {
        a: product([&rep.m1, &rep.mt, &rep.mlambda]),
        b: &rep.mlambda * &rep.minf,
        d1: rep.mt.clone(),
        d2: rep.minf.conjugate(&rep.mt),
        theta: rep.theta,
    })
}

/// Descent with the quantities used along the way.
#[derive(Clone, Debug, PartialEq)]
pub struct Phi1Descent {
    pub rep: FivePuncturedRep,
    /// The involution inverting `A` and `B`, sign fixed by [`canonical_sign`].
    pub m: Mat2,
    /// `tr(B A M D1)`, which vanishes for every point in the image.
    pub trace_bamd1: Scalar,
    /// Exact input whose involution needed an irrational square root.
    pub promoted: bool,
}

fn descend_with(rep: &TorusTwoRep, m: &Mat2) -> FivePuncturedRep {
    FivePuncturedRep {
        m0: -(&rep.a * m),
        m1: product([&rep.a, &rep.b, &rep.d2.adjugate(), m]),
        mt: rep.d1.clone(),
        mlambda: -(&rep.b * m),
        minf: m.clone(),
        theta: rep.theta,
    }
}

/// Inverse of [`phi1_pullback`] on its image, returning the diagnostics.
pub fn phi1_descend_with_diagnostics(rep: &TorusTwoRep) -> Result<Phi1Descent, MapError> {
    require_valid(rep)?;
    let eps = epsilon();
    if rep.d1.is_plus_minus_identity(eps) {
        return Err(MapError::ScalarLocalMonodromy("D1"));
    }
    if rep.d2.is_plus_minus_identity(eps) {
        return Err(MapError::ScalarLocalMonodromy("D2"));
    }
    if is_reducible_pair(&rep.a, &rep.b) {
        return Err(RepError::Sl2(crate::error::Sl2Error::Reducible).into());
    }
    let inv = inverting_involution(&rep.a, &rep.b)?;
    let m = canonical_sign(inv.m);

    // M D1 M^-1 = D2 holds on the whole space; failure means a bug upstream
    let image = m.conjugate(&rep.d1);
    let tol = internal_tol(&[&rep.a, &rep.b, &rep.d1, &rep.d2, &m]);
    if !image.approx_eq(&rep.d2, tol) {
        return Err(MapError::InternalInvariant {
            what: "M D1 M^-1 = D2",
            residual: image.max_abs_diff(&rep.d2),
        });
    }
    let trace_bamd1 = product([&rep.b, &rep.a, &m, &rep.d1]).trace();
    Ok(Phi1Descent { rep: descend_with(rep, &m), m, trace_bamd1, promoted: inv.promoted })
}

pub fn phi1_descend(rep: &TorusTwoRep) -> Result<FivePuncturedRep, MapError> {
    phi1_descend_with_diagnostics(rep).map(|d| d.rep)
}

/// Both preimages of a generic point under [`phi1_pullback`].
#[derive(Clone, Debug, PartialEq)]
pub struct Phi1Fiber {
    /// Descents through `M` and `-M`, in that order.
    pub elements: [FivePuncturedRep; 2],
    /// The two quintuples agree up to per-matrix sign.
    pub projectively_equal: bool,
}

pub fn phi1_fiber(rep: &TorusTwoRep) -> Result<Phi1Fiber, MapError> {
    let d = phi1_descend_with_diagnostics(rep)?;
    let other = descend_with(rep, &-&d.m);
    let tol = internal_tol(&[&d.m]);
    let projectively_equal = [
        (&d.rep.m0, &other.m0),
        (&d.rep.m1, &other.m1),
        (&d.rep.mt, &other.mt),
        (&d.rep.mlambda, &other.mlambda),
        (&d.rep.minf, &other.minf),
    ]
    .iter()
    .all(|(x, y)| x.near_up_to_sign(y, tol * (1.0 + y.max_abs())));
    Ok(Phi1Fiber { elements: [d.rep, other], projectively_equal })
}

/// Pullback along the bielliptic cover: `A1 = A`, `B1 = B`,
/// `A2 = C1^-1 A C1`, `B2 = C1^-1 B C1`.
pub fn pi_pullback(rep: &TorusTwoRepC) -> Result<GenusTwoRep, MapError> {
    require_valid(rep)?;
    let c1_inv = rep.c1.adjugate();
    Ok(GenusTwoRep {
        a1: rep.a.clone(),
        b1: rep.b.clone(),
        a2: c1_inv.conjugate(&rep.a),
        b2: c1_inv.conjugate(&rep.b),
    })
}

fn pi_descend_with(rep: &GenusTwoRep, m: &Mat2) -> Result<TorusTwoRepC, MapError> {
    let k = commutator(&rep.a1, &rep.b1);
    let c2 = &m.adjugate() * &k;
    let tr = c2.trace();
    if !tr.approx_eq(&Scalar::zero(), internal_tol(&[&c2, m])) {
        return Err(MapError::InternalInvariant { what: "tr(C2) = 0", residual: tr.abs() });
    }
    Ok(TorusTwoRepC { a: rep.a1.clone(), b: rep.b1.clone(), c1: m.clone(), c2 })
}

/// The unimodular `M` with `M (A1, B1) M^-1 = (A2, B2)`, provided it
/// squares to `-I`; sign fixed by [`canonical_sign`].
fn bielliptic_involution(rep: &GenusTwoRep) -> Result<Mat2, MapError> {
    require_valid(rep)?;
    if is_reducible_pair(&rep.a1, &rep.b1) {
        return Err(RepError::Sl2(crate::error::Sl2Error::Reducible).into());
    }
    let s = [&rep.a1, &rep.b1, &rep.a2, &rep.b2].iter().map(|m| m.max_abs()).fold(1.0, f64::max);
    let m = conjugator_within(&rep.a1, &rep.b1, &rep.a2, &rep.b2, epsilon() * s * s)?
        .ok_or(MapError::NoConjugator)?;
    // M^2 = -I for unimodular M exactly when tr M = 0; the sign of M does not matter
    let tr = m.trace();
    if !tr.approx_eq(&Scalar::zero(), internal_tol(&[&m])) {
        return Err(MapError::ConjugatorNotInvolutive);
    }
    Ok(canonical_sign(m))
}

/// Inverse of [`pi_pullback`] up to the sign of `C1`.
pub fn pi_descend(rep: &GenusTwoRep) -> Result<TorusTwoRepC, MapError> {
    let m = bielliptic_involution(rep)?;
    pi_descend_with(rep, &m)
}

/// Both preimages under [`pi_pullback`]: `C1 = M` and `C1 = -M`.
pub fn pi_fiber(rep: &GenusTwoRep) -> Result<[TorusTwoRepC; 2], MapError> {
    let m = bielliptic_involution(rep)?;
    Ok([pi_descend_with(rep, &m)?, pi_descend_with(rep, &-&m)?])
}

/// `pi_pullback . reparam_d_to_c . phi1_pullback`, defined at theta = 1/2.
pub fn five_to_genus2(rep: &FivePuncturedRep) -> Result<GenusTwoRep, MapError> {
    let torus = phi1_pullback(rep)?;
    let c = reparam_d_to_c(&torus)?;
    pi_pullback(&c)
}

/// `phi1_descend . reparam_c_to_d . pi_descend`. Refuses points where
/// `tr[A1, B1] = 2`.
pub fn genus2_to_five(rep: &GenusTwoRep) -> Result<FivePuncturedRep, MapError> {
    let c = pi_descend(rep)?;
    let torus = reparam_c_to_d(&c);
    debug_assert_eq!(torus.theta, Theta::half());
    phi1_descend(&torus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{
        is_conjugate, sample_five_rep, sample_genus2_rep, sample_torus_c_rep, sample_torus_rep,
        Equivalence,
    };
    use crate::Backend;

    fn close(x: &Mat2, y: &Mat2) -> bool {
        x.approx_eq(y, 1e-8 * (1.0 + y.max_abs()))
    }

    #[test]
    fn pullback_of_sample_is_valid() {
        for seed in 0..20 {
            let rep = sample_five_rep(Theta::rational(1, 3), seed, Backend::Float).unwrap();
            let torus = phi1_pullback(&rep).unwrap();
            assert!(validate(&torus).is_empty(), "seed {seed}: {:?}", validate(&torus));
            assert!(torus.d2.trace().near(&rep.mt.trace()));
        }
    }

    #[test]
    fn pullback_accepts_trivial_local_monodromy() {
        let rep = sample_five_rep(Theta::rational(0, 1), 4, Backend::Exact).unwrap();
        let torus = phi1_pullback(&rep).unwrap();
        assert!(validate(&torus).is_empty());
        assert!(matches!(phi1_descend(&torus), Err(MapError::ScalarLocalMonodromy(_)) | Ok(_)));
    }

    #[test]
    fn descent_inverts_pullback() {
        for seed in 0..20 {
            let torus = sample_torus_rep(Theta::rational(1, 3), seed, Backend::Float).unwrap();
            let d = phi1_descend_with_diagnostics(&torus).unwrap();
            assert!(validate(&d.rep).is_empty(), "seed {seed}");
            assert!(d.trace_bamd1.abs() < 1e-8);
            let back = phi1_pullback(&d.rep).unwrap();
            assert!(close(&back.a, &torus.a) && close(&back.b, &torus.b));
            assert!(close(&back.d1, &torus.d1) && close(&back.d2, &torus.d2));
        }
    }

    #[test]
    fn exact_descent_round_trips_exactly() {
        let torus = sample_torus_rep(Theta::half(), 3, Backend::Exact).unwrap();
        let d = phi1_descend_with_diagnostics(&torus).unwrap();
        let back = phi1_pullback(&d.rep).unwrap();
        if !d.promoted {
            assert!(d.rep.m0.is_exact());
            assert_eq!(back, torus);
        }
        assert!(validate(&back).is_empty());
    }

    #[test]
    fn fiber_has_two_sign_related_points() {
        let torus = sample_torus_rep(Theta::Float(0.3), 11, Backend::Float).unwrap();
        let fiber = phi1_fiber(&torus).unwrap();
        let [p, q] = &fiber.elements;
        assert!(fiber.projectively_equal);
        assert_ne!(p, q);
        assert!(close(&p.m0, &-&q.m0) && close(&p.m1, &-&q.m1));
        assert!(close(&p.mlambda, &-&q.mlambda) && close(&p.minf, &-&q.minf));
        assert_eq!(p.mt, q.mt);
        for e in &fiber.elements {
            assert!(validate(e).is_empty());
            let back = phi1_pullback(e).unwrap();
            assert!(close(&back.a, &torus.a) && close(&back.d2, &torus.d2));
        }
    }

    #[test]
    fn descent_rejects_reducible_pairs() {
        let u = Mat2::ints(1, 1, 0, 1);
        let v = Mat2::ints(1, 2, 0, 1);
        let rep = TorusTwoRep { a: u.clone(), b: v, d1: u.clone(), d2: u.adjugate(), theta: Theta::rational(0, 1) };
        assert!(phi1_descend(&rep).is_err());
    }

    #[test]
    fn bielliptic_pullback_and_descent() {
        for seed in 0..10 {
            let c = sample_torus_c_rep(seed, Backend::Float).unwrap();
            let g = pi_pullback(&c).unwrap();
            assert!(validate(&g).is_empty());
            assert!(g.a1.trace().near(&g.a2.trace()));
            assert!((&g.a1 * &g.b1).trace().near(&(&g.a2 * &g.b2).trace()));
            let fiber = pi_fiber(&g).unwrap();
            assert!(fiber.iter().any(|f| close(&f.c1, &c.c1)));
            assert!(close(&fiber[0].c1, &-&fiber[1].c1));
            for f in &fiber {
                assert!(validate(f).is_empty());
            }
        }
    }

    #[test]
    fn bielliptic_descent_needs_a_conjugator() {
        // generic genus-two points have non-conjugate handles
        let g = sample_genus2_rep(5, Backend::Float).unwrap();
        assert!(matches!(pi_descend(&g), Err(MapError::NoConjugator)));
    }

    #[test]
    fn sphere_to_genus_two_and_back() {
        for seed in 0..10 {
            let rep = sample_five_rep(Theta::half(), seed, Backend::Float).unwrap();
            let g = five_to_genus2(&rep).unwrap();
            assert!(validate(&g).is_empty());
            let back = genus2_to_five(&g).unwrap();
            assert!(validate(&back).is_empty());
            assert!(is_conjugate(&rep, &back, Equivalence::Projective).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn canonical_sign_rule() {
        let m = Mat2::ints(0, -1, 1, 0);
        assert_eq!(canonical_sign(m.clone()), -m.clone());
        assert_eq!(canonical_sign(-m.clone()), -m);
    }
}
