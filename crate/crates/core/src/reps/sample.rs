//! Seeded samplers. Float entries are uniform on the square [-1,1]^2 of the
//! complex plane; exact entries are small Gaussian rationals.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    reparam_d_to_c, Representation, validate, FivePuncturedRep, GenusTwoRep, Theta, TorusTwoRep, TorusTwoRepC,
};
use crate::error::RepError;
use crate::mat2::{product, Mat2};
use crate::scalar::{Backend, Scalar};
use crate::sl2::commutator_trace;

pub const MAX_ATTEMPTS: usize = 100;
/// Lower bound on |det| before normalization.
const DET_MARGIN: f64 = 1e-3;
/// Lower bound on |tr[A,B] - 2| for sampled pairs.
const IRREDUCIBLE_MARGIN: f64 = 1e-3;
/// Float samples with a larger entry are redrawn, to keep round-off small.
pub const MAX_ENTRY: f64 = 20.0;

/// Entry bound for exact unimodular draws, which are conjugators as often as not.
const EXACT_ENTRY: f64 = 3.0;
const EXACT_CONJUGATE_ENTRY: f64 = 4.0;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on [-1,1]^2 (float) or a Gaussian rational with parts in
/// {0, ±1/2, ±1, ±2} (exact).
pub fn random_scalar(rng: &mut impl Rng, backend: Backend) -> Scalar {
    match backend {
        Backend::Float => Scalar::Float(Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))),
        Backend::Exact => {
            let mut part = || BigRational::new(rng.gen_range(-2i64..=2).into(), rng.gen_range(1i64..=2).into());
            Scalar::gaussian(part(), part())
        }
    }
}

/// Random unimodular matrix: float entries are normalized by `1/sqrt(det)`,
/// exact ones get `m22 = (1 + m12 m21) / m11`.
pub fn random_unimodular(rng: &mut impl Rng, backend: Backend) -> Result<Mat2, RepError> {
    for _ in 0..MAX_ATTEMPTS {
        let m11 = random_scalar(rng, backend);
        let m12 = random_scalar(rng, backend);
        let m21 = random_scalar(rng, backend);
        match backend {
            Backend::Float => {
                let m22 = random_scalar(rng, backend);
                let m = Mat2::new(m11, m12, m21, m22);
                if m.det().abs() > DET_MARGIN {
                    return Ok(m.normalized()?);
                }
            }
            Backend::Exact => {
                if m11.abs() < 1.0 {
                    continue;
                }
                let inv = m11.checked_inv().expect("nonzero");
                let m = Mat2::new(m11, m12.clone(), m21.clone(), (Scalar::one() + &m12 * &m21) * inv);
                if m.max_abs() <= EXACT_ENTRY {
                    return Ok(m);
                }
            }
        }
    }
    Err(RepError::SamplerExhausted(MAX_ATTEMPTS))
}

/// `X [[0, -1], [1, tau]] X^-1` for random unimodular `X`; never `±I`.
pub fn random_with_trace(rng: &mut impl Rng, tau: &Scalar, backend: Backend) -> Result<Mat2, RepError> {
    let companion = Mat2::new(Scalar::zero(), Scalar::int(-1), Scalar::one(), tau.clone());
    for _ in 0..MAX_ATTEMPTS {
        let m = random_unimodular(rng, backend)?.conjugate(&companion);
        // exact draws are otherwise heavy-tailed; products of three get large fast
        if backend == Backend::Float || m.max_abs() <= EXACT_CONJUGATE_ENTRY {
            return Ok(m);
        }
    }
    Err(RepError::SamplerExhausted(MAX_ATTEMPTS))
}

fn acceptable<R: Representation>(rep: &R, backend: Backend) -> bool {
    // exact samples feed float stages downstream too, so they are bounded as well
    let _ = backend;
    rep.matrices().iter().all(|m| m.max_abs() <= MAX_ENTRY) && validate(rep).is_empty()
}

fn irreducible_enough(a: &Mat2, b: &Mat2) -> bool {
    (commutator_trace(a, b) - Scalar::int(2)).abs() > IRREDUCIBLE_MARGIN
}

/// Solves for `D1` with `tr(D1) = tau`, `det(D1) = 1` and
/// `tr(D1^-1 K) = tau`, where `K = [A, B]`. The last condition is what makes
/// `D2 = (BA)^-1 D1^-1 (AB)` have trace `tau` as well.
fn solve_d1(rng: &mut impl Rng, k: &Mat2, tau: &Scalar, backend: Backend) -> Option<Mat2> {
    // D1 = [[p, q], [r, s]], s = tau - p, qr = ps - 1, q k21 + r k12 = s k11 + p k22 - tau
    let p = match backend {
        Backend::Float => random_scalar(rng, backend),
        // an eigenvalue of trace tau makes qr = 0, so r = 0 keeps everything rational
        // whenever tau^2 - 4 is a square
        Backend::Exact => (tau + (tau * tau - Scalar::int(4)).sqrt()) * Scalar::ratio(1, 2),
    };
    let s = tau - &p;
    let prod = &p * &s - Scalar::one();
    let lin = &s * &k.m11 + &p * &k.m22 - tau;
    let (q, r) = match backend {
        Backend::Exact => (lin * k.m21.checked_inv()?, Scalar::zero()),
        Backend::Float => {
            // k21 q^2 - lin q + prod k12 = 0
            let a = k.m21.clone();
            let disc = (&lin * &lin - Scalar::int(4) * &a * &prod * &k.m12).sqrt();
            let root = if rng.gen_bool(0.5) { &lin + &disc } else { &lin - &disc };
            let q = root * (Scalar::int(2) * a).checked_inv()?;
            let r = (lin - &q * &k.m21) * k.m12.checked_inv()?;
            (q, r)
        }
    };
    Some(Mat2::new(p, q, r, s))
}

/// Random point of the twice-punctured torus space: random irreducible
/// `(A, B)`, `D1` of trace `2cos(pi theta)` on the curve where
/// `D2 = (BA)^-1 D1^-1 (AB)` has the same trace.
///
/// Float samples are generic. Exact samples take `D1` triangular and then
/// conjugate everything by a random exact matrix; they stay exact when
/// `tau^2 - 4` is a square in Q(i) (theta = 0, 1/2, 1) and are promoted to
/// floats otherwise.
pub fn sample_torus_rep(theta: Theta, seed: u64, backend: Backend) -> Result<TorusTwoRep, RepError> {
    let mut rng = rng_for(seed);
    let tau = theta.trace();
    for _ in 0..MAX_ATTEMPTS {
        let a = random_unimodular(&mut rng, backend)?;
        let b = random_unimodular(&mut rng, backend)?;
        if !irreducible_enough(&a, &b) {
            continue;
        }
        let k = crate::sl2::commutator(&a, &b);
        let Some(d1) = solve_d1(&mut rng, &k, &tau, backend) else {
            continue;
        };
        if d1.is_plus_minus_identity(crate::scalar::epsilon()) {
            continue;
        }
        let d2 = product([&(&b * &a).adjugate(), &d1.adjugate(), &a, &b]);
        let mut rep = TorusTwoRep { a, b, d1, d2, theta };
        if backend == Backend::Exact {
            let x = random_unimodular(&mut rng, backend)?;
            rep = rep.conjugated_by(&x);
        }
        if acceptable(&rep, backend) {
            return Ok(rep);
        }
    }
    Err(RepError::SamplerExhausted(MAX_ATTEMPTS))
}

/// Random point of the five-punctured sphere space. `Mlambda` is drawn from
/// the traceless matrices with `tr(M0 M1 Mt Mlambda) = 0`, then rescaled to
/// determinant one; `Minf` closes the product.
pub fn sample_five_rep(theta: Theta, seed: u64, backend: Backend) -> Result<FivePuncturedRep, RepError> {
    let mut rng = rng_for(seed);
    let tau = theta.trace();
    for _ in 0..MAX_ATTEMPTS {
        let m0 = random_with_trace(&mut rng, &Scalar::zero(), backend)?;
        let m1 = random_with_trace(&mut rng, &Scalar::zero(), backend)?;
        let mt = random_with_trace(&mut rng, &tau, backend)?;
        let p = product([&m0, &m1, &mt]);
        // Mlambda = [[x, y], [z, -x]]; tr(P Mlambda) = (p11 - p22) x + p21 y + p12 z
        let coeffs = [&p.m11 - &p.m22, p.m21.clone(), p.m12.clone()];
        let pivot = (0..3)
            .max_by(|&i, &j| coeffs[i].abs().total_cmp(&coeffs[j].abs()))
            .expect("three coefficients");
        let Some(pivot_inv) = coeffs[pivot].checked_inv() else {
            continue;
        };
        let raw = match backend {
            Backend::Float => {
                let mut xyz = [random_scalar(&mut rng, backend), random_scalar(&mut rng, backend), random_scalar(&mut rng, backend)];
                let rest = (0..3)
                    .filter(|&i| i != pivot)
                    .fold(Scalar::zero(), |acc, i| acc + &coeffs[i] * &xyz[i]);
                xyz[pivot] = -(rest * pivot_inv);
                let [x, y, z] = xyz;
                Mat2::new(x.clone(), y, z, -x)
            }
            // x = i with y = 0 or z = 0 lies on the conic -x^2 - yz = 1; the
            // linear condition fixes the other entry, divided by the larger coefficient
            Backend::Exact => {
                let upper = coeffs[1].abs() >= coeffs[2].abs();
                let Some(inv) = coeffs[if upper { 1 } else { 2 }].checked_inv() else {
                    continue;
                };
                let off = -(&coeffs[0] * Scalar::i() * inv);
                if upper {
                    Mat2::new(Scalar::i(), off, Scalar::zero(), -Scalar::i())
                } else {
                    Mat2::new(Scalar::i(), Scalar::zero(), off, -Scalar::i())
                }
            }
        };
        let mlambda = raw.normalized()?;
        let minf = product([&p, &mlambda]).adjugate();
        let mut rep = FivePuncturedRep { m0, m1, mt, mlambda, minf, theta };
        if backend == Backend::Exact {
            let x = random_unimodular(&mut rng, backend)?;
            rep = rep.conjugated_by(&x);
        }
        if acceptable(&rep, backend) {
            return Ok(rep);
        }
    }
    Err(RepError::SamplerExhausted(MAX_ATTEMPTS))
}

/// `reparam_d_to_c` of a theta = 1/2 torus sample.
pub fn sample_torus_c_rep(seed: u64, backend: Backend) -> Result<TorusTwoRepC, RepError> {
    reparam_d_to_c(&sample_torus_rep(Theta::half(), seed, backend)?)
}

/// Genus-two representation whose second handle is unrelated to the first:
/// `A2 = X B1 X^-1`, `B2 = X A1 X^-1` with `X` commuting with `[B1, A1]`.
pub fn sample_genus2_rep(seed: u64, backend: Backend) -> Result<GenusTwoRep, RepError> {
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let a1 = random_unimodular(&mut rng, backend)?;
        let b1 = random_unimodular(&mut rng, backend)?;
        if !irreducible_enough(&a1, &b1) {
            continue;
        }
        let k = crate::sl2::commutator(&b1, &a1);
        let x = Mat2::scalar(random_scalar(&mut rng, backend)).add(&k.scale(&random_scalar(&mut rng, backend)));
        if x.det().abs() <= DET_MARGIN {
            continue;
        }
        let x = match backend {
            Backend::Float => x.normalized()?,
            // keep exactness: conjugation by X only needs X invertible
            Backend::Exact => x,
        };
        let x_inv = x.inverse()?;
        let a2 = &x * &b1 * &x_inv;
        let b2 = &x * &a1 * &x_inv;
        let rep = GenusTwoRep { a1, b1, a2, b2 };
        if acceptable(&rep, backend) {
            return Ok(rep);
        }
    }
    Err(RepError::SamplerExhausted(MAX_ATTEMPTS))
}
