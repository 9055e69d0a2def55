//! Representation spaces of the five-punctured sphere (four order-two
//! punctures), the twice-punctured torus (in the `D` and the `C`
//! generators) and the closed genus-two surface.

mod json;
mod sample;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use crate::error::{ParseError, RepError};
use crate::mat2::{product, Mat2};
use crate::scalar::{epsilon, Scalar};
use crate::sl2::{commutator, commutator_trace, conjugator_within};

pub use json::AnyRep;
pub use sample::{
    random_scalar, random_unimodular, random_with_trace, sample_five_rep, sample_genus2_rep, sample_torus_c_rep,
    sample_torus_rep, MAX_ATTEMPTS,
};

/// Local exponent at the moving puncture; its monodromy has trace `2cos(pi theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Theta {
    Rational(Ratio<i64>),
    Float(f64),
}

impl Theta {
    pub fn half() -> Self {
        Theta::Rational(Ratio::new(1, 2))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Theta::Rational(Ratio::new(num, den))
    }

    pub fn value(&self) -> f64 {
        match self {
            Theta::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Theta::Float(x) => *x,
        }
    }

    /// `2cos(pi theta)`, exact when theta is rational with denominator 1, 2 or 3.
    pub fn trace(&self) -> Scalar {
        if let Theta::Rational(r) = self {
            let q = *r.denom();
            if q <= 3 {
                let k = r.numer().rem_euclid(2 * q);
                let exact = match (q, k) {
                    (1, 0) => Some(2),
                    (1, 1) => Some(-2),
                    (2, _) => Some(0),
                    (3, 1) | (3, 5) => Some(1),
                    (3, 2) | (3, 4) => Some(-1),
                    _ => None,
                };
                if let Some(t) = exact {
                    return Scalar::int(t);
                }
            }
        }
        Scalar::real(2.0 * (std::f64::consts::PI * self.value()).cos())
    }

    pub fn is_half(&self) -> bool {
        match self {
            Theta::Rational(r) => *r == Ratio::new(1, 2),
            Theta::Float(x) => (x - 0.5).abs() <= epsilon(),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Rational(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Theta::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Theta::Float(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Theta {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Theta(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            let r = Ratio::new(n, d);
            if r.is_negative() {
                return Err(bad());
            }
            return Ok(Theta::Rational(r));
        }
        if let Ok(n) = t.parse::<i64>() {
            if n < 0 {
                return Err(bad());
            }
            return Ok(Theta::Rational(Ratio::from_integer(n)));
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        if !x.is_finite() || x < 0.0 {
            return Err(bad());
        }
        Ok(Theta::Float(x))
    }
}

/// One failed defining relation, with the size of the failure.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Violation {
    pub relation: String,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (residual {:e})", self.relation, self.residual)
    }
}

/// Which notion of conjugacy `is_conjugate` decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Equivalence {
    /// One `M` with `M X_i M^-1 = Y_i` for every matrix.
    #[default]
    Linear,
    /// One `M` with `M X_i M^-1 = ±Y_i`, sign chosen per matrix.
    Projective,
}

/// Common behaviour of the four representation types.
pub trait Representation: Clone + fmt::Debug {
    const KIND: &'static str;
    const NAMES: &'static [&'static str];

    fn matrices(&self) -> Vec<&Mat2>;

    /// Same type and exponent, new matrices (in `NAMES` order).
    fn with_matrices(&self, ms: Vec<Mat2>) -> Self;

    /// Defining relations other than unimodularity.
    fn relation_violations(&self) -> Vec<Violation>;

    fn conjugated_by(&self, c: &Mat2) -> Self {
        self.with_matrices(self.matrices().into_iter().map(|m| c.conjugate(m)).collect())
    }

    fn is_exact(&self) -> bool {
        self.matrices().iter().all(|m| m.is_exact())
    }
}

/// Size factor for a product of the given matrices: floating residuals of
/// a product grow with the entries of its factors, so every relation is
/// tested against `eps * scale` rather than bare `eps`.
pub fn factor_scale<'a>(ms: impl IntoIterator<Item = &'a Mat2>) -> f64 {
    ms.into_iter().map(|m| m.max_abs().max(1.0)).product()
}

/// Every defining relation the representation fails, empty when valid.
/// Exact representations are checked exactly.
pub fn validate<R: Representation>(rep: &R) -> Vec<Violation> {
    let mut out = Vec::new();
    for (name, m) in R::NAMES.iter().zip(rep.matrices()) {
        let det = m.det();
        if !det.approx_eq(&Scalar::one(), epsilon() * factor_scale([m, m])) {
            out.push(Violation {
                relation: format!("det({name}) = 1"),
                residual: (det - Scalar::one()).abs(),
            });
        }
    }
    out.extend(rep.relation_violations());
    out
}

fn check_eq(out: &mut Vec<Violation>, relation: impl Into<String>, lhs: &Mat2, rhs: &Mat2, scale: f64) {
    if !lhs.approx_eq(rhs, epsilon() * scale) {
        out.push(Violation { relation: relation.into(), residual: lhs.max_abs_diff(rhs) });
    }
}

fn check_trace(out: &mut Vec<Violation>, name: &str, m: &Mat2, target: &Scalar, label: &str) {
    let t = m.trace();
    if !t.approx_eq(target, epsilon() * factor_scale([m])) {
        out.push(Violation {
            relation: format!("tr({name}) = {label}"),
            residual: (t - target).abs(),
        });
    }
}

/// `(M0, M1, Mt, Mlambda, Minf)` with product one, four traceless members and
/// `tr(Mt) = 2cos(pi theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FivePuncturedRep {
    pub m0: Mat2,
    pub m1: Mat2,
    pub mt: Mat2,
    pub mlambda: Mat2,
    pub minf: Mat2,
    pub theta: Theta,
}

impl Representation for FivePuncturedRep {
    const KIND: &'static str = "five";
    const NAMES: &'static [&'static str] = &["m0", "m1", "mt", "mlambda", "minf"];

    fn matrices(&self) -> Vec<&Mat2> {
        vec![&self.m0, &self.m1, &self.mt, &self.mlambda, &self.minf]
    }

    fn with_matrices(&self, ms: Vec<Mat2>) -> Self {
        let [m0, m1, mt, mlambda, minf]: [Mat2; 5] = ms.try_into().expect("five matrices");
        FivePuncturedRep { m0, m1, mt, mlambda, minf, theta: self.theta }
    }

    fn relation_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ms = self.matrices();
        check_eq(&mut out, "m0*m1*mt*mlambda*minf = I", &product(ms.clone()), &Mat2::identity(), factor_scale(ms));
        for (name, m) in [("m0", &self.m0), ("m1", &self.m1), ("mlambda", &self.mlambda), ("minf", &self.minf)] {
            check_trace(&mut out, name, m, &Scalar::zero(), "0");
        }
        check_trace(&mut out, "mt", &self.mt, &self.theta.trace(), "2cos(pi theta)");
        out
    }
}

/// `(A, B, D1, D2)` with `AB = D1 BA D2` and `tr(D1) = tr(D2) = 2cos(pi theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusTwoRep {
    pub a: Mat2,
    pub b: Mat2,
    pub d1: Mat2,
    pub d2: Mat2,
    pub theta: Theta,
}

impl Representation for TorusTwoRep {
    const KIND: &'static str = "torus";
    const NAMES: &'static [&'static str] = &["a", "b", "d1", "d2"];

    fn matrices(&self) -> Vec<&Mat2> {
        vec![&self.a, &self.b, &self.d1, &self.d2]
    }

    fn with_matrices(&self, ms: Vec<Mat2>) -> Self {
        let [a, b, d1, d2]: [Mat2; 4] = ms.try_into().expect("four matrices");
        TorusTwoRep { a, b, d1, d2, theta: self.theta }
    }

    fn relation_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let lhs = &self.a * &self.b;
        let rhs = product([&self.d1, &self.b, &self.a, &self.d2]);
        check_eq(&mut out, "a*b = d1*b*a*d2", &lhs, &rhs, factor_scale(self.matrices()) * factor_scale([&self.a, &self.b]));
        let tau = self.theta.trace();
        check_trace(&mut out, "d1", &self.d1, &tau, "2cos(pi theta)");
        check_trace(&mut out, "d2", &self.d2, &tau, "2cos(pi theta)");
        out
    }
}

/// `(A, B, C1, C2)` with `[A, B] = C1 C2` and traceless `C1`, `C2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusTwoRepC {
    pub a: Mat2,
    pub b: Mat2,
    pub c1: Mat2,
    pub c2: Mat2,
}

impl Representation for TorusTwoRepC {
    const KIND: &'static str = "torusC";
    const NAMES: &'static [&'static str] = &["a", "b", "c1", "c2"];

    fn matrices(&self) -> Vec<&Mat2> {
        vec![&self.a, &self.b, &self.c1, &self.c2]
    }

    fn with_matrices(&self, ms: Vec<Mat2>) -> Self {
        let [a, b, c1, c2]: [Mat2; 4] = ms.try_into().expect("four matrices");
        TorusTwoRepC { a, b, c1, c2 }
    }

    fn relation_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let scale = factor_scale([&self.a, &self.b, &self.a, &self.b]).max(factor_scale([&self.c1, &self.c2]));
        check_eq(&mut out, "[a,b] = c1*c2", &commutator(&self.a, &self.b), &(&self.c1 * &self.c2), scale);
        check_trace(&mut out, "c1", &self.c1, &Scalar::zero(), "0");
        check_trace(&mut out, "c2", &self.c2, &Scalar::zero(), "0");
        out
    }
}

/// `(A1, B1, A2, B2)` with `[A1, B1][A2, B2] = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusTwoRep {
    pub a1: Mat2,
    pub b1: Mat2,
    pub a2: Mat2,
    pub b2: Mat2,
}

impl GenusTwoRep {
    /// `(c1 - c2)(c1 + c2 - ab)` with `c_i = tr(A_i B_i)`, `a = tr(A1)`,
    /// `b = tr(B1)`. Vanishes whenever the two handles have equal `a`, `b`.
    pub fn handle_trace_defect(&self) -> Scalar {
        let c1 = (&self.a1 * &self.b1).trace();
        let c2 = (&self.a2 * &self.b2).trace();
        let ab = self.a1.trace() * self.b1.trace();
        (&c1 - &c2) * (c1 + c2 - ab)
    }
}

impl Representation for GenusTwoRep {
    const KIND: &'static str = "genus2";
    const NAMES: &'static [&'static str] = &["a1", "b1", "a2", "b2"];

    fn matrices(&self) -> Vec<&Mat2> {
        vec![&self.a1, &self.b1, &self.a2, &self.b2]
    }

    fn with_matrices(&self, ms: Vec<Mat2>) -> Self {
        let [a1, b1, a2, b2]: [Mat2; 4] = ms.try_into().expect("four matrices");
        GenusTwoRep { a1, b1, a2, b2 }
    }

    fn relation_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let lhs = commutator(&self.a1, &self.b1) * commutator(&self.a2, &self.b2);
        let ms = self.matrices();
        let scale = factor_scale(ms.clone()) * factor_scale(ms);
        check_eq(&mut out, "[a1,b1]*[a2,b2] = I", &lhs, &Mat2::identity(), scale);
        out
    }
}

/// Whether one unimodular matrix conjugates every matrix of `rep1` to the
/// corresponding matrix of `rep2` (up to a per-matrix sign in projective mode).
///
/// Floating comparisons use `eps * s^2`, with `s` the largest entry of
/// either representation (at least one).
pub fn is_conjugate<R: Representation>(rep1: &R, rep2: &R, mode: Equivalence) -> Result<bool, RepError> {
    // the conjugator is pinned down by the pair farthest from reducible
    let (ms1, ms2) = (rep1.matrices(), rep2.matrices());
    let (i, j) = (0..ms1.len())
        .flat_map(|i| (i + 1..ms1.len()).map(move |j| (i, j)))
        .max_by(|&(i, j), &(k, l)| {
            let margin = |x: usize, y: usize| (commutator_trace(ms1[x], ms1[y]) - Scalar::int(2)).abs();
            margin(i, j).total_cmp(&margin(k, l))
        })
        .expect("at least two matrices");
    let (a, b, a2, b2) = (ms1[i], ms1[j], ms2[i], ms2[j]);
    let signs: &[(i64, i64)] = match mode {
        Equivalence::Linear => &[(1, 1)],
        Equivalence::Projective => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
    };
    let s = rep1.matrices().into_iter().chain(rep2.matrices()).map(|m| m.max_abs()).fold(1.0, f64::max);
    let tol = epsilon() * s * s;
    for &(sa, sb) in signs {
        let ta = a2.scale(&Scalar::int(sa));
        let tb = b2.scale(&Scalar::int(sb));
        let Some(m) = conjugator_within(a, b, &ta, &tb, tol)? else {
            continue;
        };
        let all = rep1.matrices().into_iter().zip(rep2.matrices()).all(|(x, y)| {
            let check = 10.0 * tol * (1.0 + y.max_abs());
            let image = m.conjugate(x);
            match mode {
                Equivalence::Linear => image.approx_eq(y, check),
                Equivalence::Projective => image.near_up_to_sign(y, check),
            }
        });
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(A, B, D1, D2) -> (A, B, C1, C2)` with `C1 = D1`, `C2 = (BA) D2 (BA)^-1`,
/// so that `[A, B] = C1 C2`. Only defined for theta = 1/2.
pub fn reparam_d_to_c(rep: &TorusTwoRep) -> Result<TorusTwoRepC, RepError> {
    if !rep.theta.is_half() {
        return Err(RepError::ThetaNotHalf(rep.theta.to_string()));
    }
    let ba = &rep.b * &rep.a;
    Ok(TorusTwoRepC {
        a: rep.a.clone(),
        b: rep.b.clone(),
        c1: rep.d1.clone(),
        c2: ba.conjugate(&rep.d2),
    })
}

/// Inverse of [`reparam_d_to_c`].
pub fn reparam_c_to_d(rep: &TorusTwoRepC) -> TorusTwoRep {
    let ba = &rep.b * &rep.a;
    TorusTwoRep {
        a: rep.a.clone(),
        b: rep.b.clone(),
        d1: rep.c1.clone(),
        d2: ba.adjugate().conjugate(&rep.c2),
        theta: Theta::half(),
    }
}
