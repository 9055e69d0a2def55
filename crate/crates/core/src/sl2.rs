//! Trace identities for pairs of unimodular 2x2 matrices, the normal form of
//! an irreducible pair, simultaneous conjugators, and the involution that
//! inverts both members of a pair.

use crate::error::Sl2Error;
use crate::mat2::Mat2;
use crate::scalar::{epsilon, Scalar};

/// `A B A^-1 B^-1`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    a * b * a.adjugate() * b.adjugate()
}

/// Trace of the commutator of a pair with traces `a`, `b` and `c = tr(AB)`.
pub fn fricke_trace(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    a * a + b * b + c * c - a * b * c - Scalar::int(2)
}

pub fn commutator_trace(a: &Mat2, b: &Mat2) -> Scalar {
    commutator(a, b).trace()
}

/// A pair is reducible exactly when its commutator has trace 2.
pub fn is_reducible_pair(a: &Mat2, b: &Mat2) -> bool {
    commutator_trace(a, b).near(&Scalar::int(2))
}

/// `tr(XY) + tr(XY^-1) = tr(X) tr(Y)` in SL2.
pub fn trace_product_identity_check(x: &Mat2, y: &Mat2) -> bool {
    let lhs = (x * y).trace() + (x * y.adjugate()).trace();
    lhs.near(&(x.trace() * y.trace()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub a: Scalar,
    pub b: Scalar,
    pub gamma: Scalar,
    /// Columns `(v, -B v / gamma)` where `A B v = gamma v`.
    pub p: Mat2,
}

impl NormalForm {
    /// `[[a, -1], [1, 0]]`
    pub fn a_matrix(&self) -> Mat2 {
        Mat2::new(self.a.clone(), Scalar::int(-1), Scalar::one(), Scalar::zero())
    }

    /// `[[0, 1/gamma], [-gamma, b]]`
    pub fn b_matrix(&self) -> Mat2 {
        let inv = self.gamma.checked_inv().expect("gamma is an eigenvalue of an SL2 matrix");
        Mat2::new(Scalar::zero(), inv, -&self.gamma, self.b.clone())
    }
}

/// Roots of `x^2 - c x + 1`, ordered so that the first has modulus >= 1
/// (ties: nonnegative imaginary part, then nonnegative real part).
pub fn eigenvalues_of_trace(c: &Scalar) -> (Scalar, Scalar) {
    let disc = (c * c - Scalar::int(4)).sqrt();
    let half = Scalar::ratio(1, 2);
    let g1 = (c + &disc) * &half;
    let g2 = (c - &disc) * &half;
    if prefer_first(&g1, &g2) {
        (g1, g2)
    } else {
        (g2, g1)
    }
}

fn prefer_first(g1: &Scalar, g2: &Scalar) -> bool {
    let eps = epsilon();
    let (z1, z2) = (g1.to_c64(), g2.to_c64());
    let (r1, r2) = (z1.norm(), z2.norm());
    if (r1 - r2).abs() > eps {
        return r1 > r2;
    }
    if (z1.im - z2.im).abs() > eps {
        return z1.im > z2.im;
    }
    z1.re >= z2.re
}

/// Eigenvector of `m` for eigenvalue `lambda`, as a column (x, y), scaled so
/// that its larger coordinate is 1.
fn eigenvector(m: &Mat2, lambda: &Scalar) -> (Scalar, Scalar) {
    // rows of m - lambda I are (m11 - l, m12) and (m21, m22 - l)
    let c1 = (m.m12.clone(), lambda - &m.m11);
    let c2 = (lambda - &m.m22, m.m21.clone());
    let size = |v: &(Scalar, Scalar)| v.0.abs().max(v.1.abs());
    let exact_nonzero = |v: &(Scalar, Scalar)| v.0.is_exact() && v.1.is_exact() && !(v.0.is_zero() && v.1.is_zero());
    let (x, y) = if exact_nonzero(&c1) || (!exact_nonzero(&c2) && size(&c1) >= size(&c2)) {
        c1
    } else {
        c2
    };
    let pivot = if x.abs() >= y.abs() { &x } else { &y };
    match pivot.checked_inv() {
        Some(inv) => (&x * &inv, &y * &inv),
        None => (x, y),
    }
}

fn normal_form_for_gamma(a: &Mat2, b: &Mat2, gamma: Scalar) -> Result<NormalForm, Sl2Error> {
    let ab = a * b;
    let (vx, vy) = eigenvector(&ab, &gamma);
    let inv_gamma = gamma.checked_inv().ok_or(Sl2Error::ScalarProduct)?;
    let bv = (&b.m11 * &vx + &b.m12 * &vy, &b.m21 * &vx + &b.m22 * &vy);
    let w = (-(&bv.0 * &inv_gamma), -(&bv.1 * &inv_gamma));
    let p = Mat2::new(vx, w.0, vy, w.1);
    if p.det().near_zero() {
        // v is an eigenvector of B, which only happens for reducible pairs
        return Err(Sl2Error::Reducible);
    }
    Ok(NormalForm { a: a.trace(), b: b.trace(), gamma, p })
}

/// Change of basis bringing an irreducible pair to
/// `P^-1 A P = [[a, -1], [1, 0]]`, `P^-1 B P = [[0, 1/gamma], [-gamma, b]]`.
pub fn normal_form_pair(a: &Mat2, b: &Mat2) -> Result<NormalForm, Sl2Error> {
    let ab = a * b;
    if ab.is_plus_minus_identity(epsilon()) {
        return Err(Sl2Error::ScalarProduct);
    }
    if is_reducible_pair(a, b) {
        return Err(Sl2Error::Reducible);
    }
    let (gamma, _) = eigenvalues_of_trace(&ab.trace());
    normal_form_for_gamma(a, b, gamma)
}

/// Unimodular `M` with `M A M^-1 = A2` and `M B M^-1 = B2`, or `None` when
/// the trace coordinates differ. Errors when `(A, B)` is reducible.
pub fn conjugator(a: &Mat2, b: &Mat2, a2: &Mat2, b2: &Mat2) -> Result<Option<Mat2>, Sl2Error> {
    conjugator_within(a, b, a2, b2, epsilon())
}

/// [`conjugator`] with an explicit tolerance: traces are compared within
/// `tol`, the two conjugations within `10 tol (1 + max entry)`.
pub fn conjugator_within(a: &Mat2, b: &Mat2, a2: &Mat2, b2: &Mat2, tol: f64) -> Result<Option<Mat2>, Sl2Error> {
    let nf1 = normal_form_pair(a, b)?;
    let c1 = (a * b).trace();
    let c2 = (a2 * b2).trace();
    if !a.trace().approx_eq(&a2.trace(), tol)
        || !b.trace().approx_eq(&b2.trace(), tol)
        || !c1.approx_eq(&c2, tol)
    {
        return Ok(None);
    }
    let Ok(nf2) = normal_form_for_gamma(a2, b2, nf1.gamma.clone()) else {
        return Ok(None);
    };
    let Ok(p1_inv) = nf1.p.inverse() else {
        return Ok(None);
    };
    let Ok(m) = (&nf2.p * &p1_inv).normalized() else {
        return Ok(None);
    };
    let check = 10.0 * tol * (1.0 + a2.max_abs().max(b2.max_abs()));
    if m.conjugate(a).approx_eq(a2, check) && m.conjugate(b).approx_eq(b2, check) {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

/// The involution matrix in normal-form coordinates, as printed:
/// `[[(g^2-1)/(2g), (a-bg)/(2g)], [(ag-b)/2, -(g^2-1)/(2g)]]`.
/// Its determinant is `(2 - tr[A,B]) / 4`, so it is only projectively
/// unimodular.
pub fn raw_involution(a: &Scalar, b: &Scalar, gamma: &Scalar) -> Mat2 {
    let two = Scalar::int(2);
    let two_g = &two * gamma;
    let diag = (gamma * gamma - Scalar::one()) / &two_g;
    Mat2::new(
        diag.clone(),
        (a - b * gamma) / &two_g,
        (a * gamma - b) / &two,
        -diag,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    pub m: Mat2,
    /// Inputs were exact but a square root forced the result onto floats.
    pub promoted: bool,
}

/// The unimodular `M` (unique up to sign) with `M A M^-1 = A^-1`,
/// `M B M^-1 = B^-1`; it satisfies `M^2 = -I`.
pub fn inverting_involution(a: &Mat2, b: &Mat2) -> Result<Involution, Sl2Error> {
    let nf = normal_form_pair(a, b)?;
    let comm = commutator_trace(a, b);
    let raw = raw_involution(&nf.a, &nf.b, &nf.gamma);
    // rescale by 2 / sqrt(2 - tr[A,B]) to reach determinant one
    let root = (Scalar::int(2) - comm).sqrt();
    let scale = Scalar::int(2) * root.checked_inv().ok_or(Sl2Error::Reducible)?;
    let m_nf = raw.scale(&scale);
    let p_inv = nf.p.inverse()?;
    let m = &nf.p * &m_nf * &p_inv;
    let promoted = a.is_exact() && b.is_exact() && !m.is_exact();
    Ok(Involution { m, promoted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Mat2 {
        Mat2::ints(1, 1, 0, 1)
    }

    fn l() -> Mat2 {
        Mat2::ints(1, 0, 1, 1)
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator(&u(), &Mat2::identity()), Mat2::identity());
        assert_eq!(commutator(&u(), &u()), Mat2::identity());
        assert_eq!(commutator(&u(), &l()), Mat2::ints(3, -1, 1, 0));
    }

    #[test]
    fn fricke_examples() {
        let s = |n| Scalar::int(n);
        assert_eq!(fricke_trace(&s(2), &s(2), &s(2)), s(2));
        assert_eq!(fricke_trace(&s(0), &s(0), &s(0)), s(-2));
        assert_eq!(fricke_trace(&s(2), &s(2), &s(3)), s(3));
        assert_eq!(commutator_trace(&u(), &l()), s(3));
    }

    #[test]
    fn reducibility() {
        assert!(is_reducible_pair(&Mat2::identity(), &l()));
        let upper = Mat2::new(Scalar::int(2), Scalar::int(5), Scalar::zero(), Scalar::ratio(1, 2));
        assert!(is_reducible_pair(&upper, &u()));
        assert!(!is_reducible_pair(&u(), &l()));
    }

    #[test]
    fn normal_form_fixed_point() {
        let a = Mat2::ints(0, -1, 1, 0);
        let b = Mat2::new(Scalar::zero(), Scalar::ratio(1, 2), Scalar::int(-2), Scalar::zero());
        let nf = normal_form_pair(&a, &b).unwrap();
        assert_eq!(nf.a, Scalar::zero());
        assert_eq!(nf.b, Scalar::zero());
        assert_eq!(nf.gamma, Scalar::int(2));
        assert_eq!(nf.p, Mat2::identity());
    }

    #[test]
    fn normal_form_of_unipotent_pair() {
        let nf = normal_form_pair(&u(), &l()).unwrap();
        assert_eq!(nf.a, Scalar::int(2));
        assert_eq!(nf.b, Scalar::int(2));
        // gamma^2 - 3 gamma + 1 = 0
        let g = &nf.gamma;
        assert!((g * g - Scalar::int(3) * g + Scalar::one()).near_zero());
        assert!(g.abs() >= 1.0);
        let p_inv = nf.p.inverse().unwrap();
        assert!((&p_inv * u() * &nf.p).approx_eq(&nf.a_matrix(), 1e-12));
        assert!((&p_inv * l() * &nf.p).approx_eq(&nf.b_matrix(), 1e-12));
    }

    #[test]
    fn normal_form_rejects_degenerate_pairs() {
        assert_eq!(normal_form_pair(&u(), &u().adjugate()), Err(Sl2Error::ScalarProduct));
        let d = Mat2::new(Scalar::int(2), Scalar::zero(), Scalar::zero(), Scalar::ratio(1, 2));
        assert_eq!(normal_form_pair(&d, &u()), Err(Sl2Error::Reducible));
    }

    #[test]
    fn involution_on_normal_form_example() {
        let a = Mat2::ints(0, -1, 1, 0);
        let b = Mat2::new(Scalar::zero(), Scalar::ratio(1, 2), Scalar::int(-2), Scalar::zero());
        let inv = inverting_involution(&a, &b).unwrap();
        let expected = Mat2::new(-Scalar::i(), Scalar::zero(), Scalar::zero(), Scalar::i());
        assert!(inv.m.near_up_to_sign(&expected, 1e-12), "{}", inv.m);
        assert!((&inv.m * &inv.m).near(&-Mat2::identity()));
    }

    #[test]
    fn involution_stays_exact_when_root_is_rational() {
        // tr[A,B] = 3 for the unipotent pair, 2 - 3 = -1 has root i
        let inv = inverting_involution(&u(), &l()).unwrap();
        let m = &inv.m;
        assert!((m * u() * m.adjugate()).approx_eq(&u().adjugate(), 1e-12));
        assert!((m * l() * m.adjugate()).approx_eq(&l().adjugate(), 1e-12));
        assert!((m * m).approx_eq(&-Mat2::identity(), 1e-12));
        // gamma is irrational here, so the result is promoted
        assert!(inv.promoted);
    }

    #[test]
    fn involution_rejects_reducible() {
        let upper = Mat2::new(Scalar::int(2), Scalar::int(5), Scalar::zero(), Scalar::ratio(1, 2));
        assert_eq!(inverting_involution(&upper, &u()), Err(Sl2Error::Reducible));
    }

    #[test]
    fn conjugator_trace_mismatch_is_none() {
        let a2 = Mat2::ints(2, 1, 1, 1);
        assert_eq!(conjugator(&u(), &l(), &a2, &l()).unwrap(), None);
    }

    #[test]
    fn conjugator_identity() {
        let m = conjugator(&u(), &l(), &u(), &l()).unwrap().unwrap();
        assert!(m.is_plus_minus_identity(1e-12));
    }

    #[test]
    fn trace_product_examples() {
        assert!(trace_product_identity_check(&Mat2::identity(), &l()));
        assert!(trace_product_identity_check(&u(), &u()));
        assert_eq!((&u() * &u()).trace() + Scalar::int(2), Scalar::int(4));
    }
}
