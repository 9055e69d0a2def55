//! Complex scalars under two backends: double-precision floats and exact
//! Gaussian rationals.
//!
//! Arithmetic between two exact values stays exact. Any operation that
//! touches a float, or a square root that leaves the Gaussian-rational
//! field, produces a float.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Default tolerance for floating equality checks.
pub const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current global tolerance.
pub fn epsilon() -> f64 {
    f64::from_bits(EPSILON_BITS.load(Ordering::Relaxed))
}

/// Overrides the global tolerance used by every floating comparison.
pub fn set_epsilon(eps: f64) {
    assert!(eps > 0.0 && eps.is_finite(), "epsilon must be positive");
    EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

pub type GaussianRational = Complex<BigRational>;

/// Which arithmetic a value (or a run) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    #[default]
    Float,
    Exact,
}

impl FromStr for Backend {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Backend::Float),
            "exact" => Ok(Backend::Exact),
            other => Err(ParseError::Backend(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Float(Complex64),
    Exact(GaussianRational),
}

fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range: divide in big-integer space first
        let (n, d) = (q.numer(), q.denom());
        let shift = (n.bits().max(d.bits()) as i64 - 1000).max(0) as u32;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Square root of a nonnegative rational, if it is rational.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Principal square root in Q(i), when it exists.
fn gaussian_sqrt(z: &GaussianRational) -> Option<GaussianRational> {
    let zero = BigRational::zero();
    if z.im.is_zero() {
        if z.re >= zero {
            return rational_sqrt(&z.re).map(|r| Complex::new(r, zero));
        }
        return rational_sqrt(&-z.re.clone()).map(|r| Complex::new(BigRational::zero(), r));
    }
    let modulus = rational_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = BigRational::from_integer(BigInt::from(2));
    let u = rational_sqrt(&((&modulus + &z.re) / &two))?;
    // im != 0 forces u != 0
    let v = &z.im / (&two * &u);
    Some(Complex::new(u, v))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(GaussianRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(GaussianRational::one())
    }

    pub fn i() -> Self {
        Scalar::Exact(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(Complex::new(BigRational::from_integer(n.into()), BigRational::zero()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Complex::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        ))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact(Complex::new(re, im))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        Scalar::Float(Complex64::new(re, 0.0))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Float(z) => *z,
            Scalar::Exact(q) => Complex64::new(rat_to_f64(&q.re), rat_to_f64(&q.im)),
        }
    }

    /// Same value on the floating backend.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_c64())
    }

    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
            Scalar::Exact(q) => q.is_zero(),
        }
    }

    /// Equality: exact when both sides are exact, otherwise `|x - y| <= eps`.
    pub fn approx_eq(&self, other: &Scalar, eps: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_c64() - other.to_c64()).norm() <= eps,
        }
    }

    /// `approx_eq` against the global tolerance.
    pub fn near(&self, other: &Scalar) -> bool {
        self.approx_eq(other, epsilon())
    }

    pub fn near_zero(&self) -> bool {
        self.near(&Scalar::zero())
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Float(z) => Scalar::Float(z.conj()),
            Scalar::Exact(q) => Scalar::Exact(q.conj()),
        }
    }

    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Float(z) => Scalar::Float(z.inv()),
            Scalar::Exact(q) => Scalar::Exact(q.inv()),
        })
    }

    /// Principal square root. Exact inputs stay exact when the root lies in
    /// Q(i); otherwise the result is promoted to a float.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Float(z) => Scalar::Float(z.sqrt()),
            Scalar::Exact(q) => match gaussian_sqrt(q) {
                Some(r) => Scalar::Exact(r),
                None => Scalar::Float(self.to_c64().sqrt()),
            },
        }
    }

    /// True when the argument lies in (-pi/2, pi/2].
    pub fn in_right_half_plane(&self) -> bool {
        match self {
            Scalar::Float(z) => z.re > 0.0 || (z.re == 0.0 && z.im > 0.0),
            Scalar::Exact(q) => {
                q.re.is_positive() || (q.re.is_zero() && q.im.is_positive())
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::real(x)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    _ => Scalar::Float(self.to_c64().$method(rhs.to_c64())),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Float(z) => Scalar::Float(-z),
            Scalar::Exact(q) => Scalar::Exact(-q.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
            Scalar::Exact(q) => write!(f, "{}{}{}i", q.re, if q.im.is_negative() { "" } else { "+" }, q.im),
        }
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::Rational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

mod serde_impl {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    // [re, im]: floats as JSON numbers, exact parts as "p/q" strings.
    impl Serialize for Scalar {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                Scalar::Float(z) => [z.re, z.im].serialize(s),
                Scalar::Exact(q) => [format_rational(&q.re), format_rational(&q.im)].serialize(s),
            }
        }
    }

    enum Part {
        Float(f64),
        Exact(BigRational),
    }

    fn part(v: &Value) -> Result<Part, String> {
        match v {
            Value::Number(n) => n.as_f64().map(Part::Float).ok_or_else(|| format!("bad number {n}")),
            Value::String(s) => parse_rational(s).map(Part::Exact).map_err(|e| e.to_string()),
            other => Err(format!("expected number or rational string, got {other}")),
        }
    }

    impl<'de> Deserialize<'de> for Scalar {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let [re, im]: [Value; 2] = Deserialize::deserialize(d)?;
            let re = part(&re).map_err(D::Error::custom)?;
            let im = part(&im).map_err(D::Error::custom)?;
            Ok(match (re, im) {
                (Part::Exact(a), Part::Exact(b)) => Scalar::gaussian(a, b),
                (a, b) => {
                    let f = |p: Part| match p {
                        Part::Float(x) => x,
                        Part::Exact(q) => rat_to_f64(&q),
                    };
                    Scalar::float(f(a), f(b))
                }
            })
        }
    }
}
