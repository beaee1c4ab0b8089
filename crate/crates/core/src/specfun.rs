//! Special-function kernel: complex log-gamma, Pochhammer symbols, Gauss
//! ₂F₁ and terminating ₃F₂ at unit argument.
//!
//! Everything here is a pure function of its arguments. The hypergeometric
//! evaluators distinguish three regimes:
//!
//! * terminating series (an upper parameter is a non-positive integer), summed
//!   exactly as a finite polynomial;
//! * the power series for |z| < 1;
//! * the z → 1 connection formula for z close to 1, used when `c − a − b` is
//!   not an integer.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Parameter triple (a′, b′; c′) of a Gauss hypergeometric function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperTriple {
    pub a_param: Complex64,
    pub b_param: Complex64,
    pub c_param: Complex64,
}

impl HyperTriple {
    pub fn new(a_param: Complex64, b_param: Complex64, c_param: Complex64) -> Self {
        Self {
            a_param,
            b_param,
            c_param,
        }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.b_param, self.a_param, self.c_param)
    }
}

/// Term cutoff relative to the partial sum.
const SERIES_EPS: f64 = 1e-16;
/// Consecutive small terms required before the series is accepted.
const SERIES_QUIET_TERMS: usize = 3;
pub const SERIES_MAX_TERMS: usize = 100_000;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
/// B₂ₖ / (2k(2k−1)) for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];
/// |z| above which the Stirling series is used directly.
const STIRLING_MIN_ABS: f64 = 15.0;

/// Returns `Some(n)` when `z` is exactly the non-positive integer `−n`.
pub fn non_positive_integer(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -(u64::MAX as f64) {
        Some((-z.re) as u64)
    } else {
        None
    }
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} is not finite: {z}")))
    }
}

/// log Γ(z) on the branch that is real on the positive real axis and
/// continuous on the plane cut along (−∞, 0].
///
/// Uses upward recurrence to |z| ≥ 15 followed by the Stirling series, and
/// the reflection formula for Re z < 1/2.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if non_positive_integer(z).is_some() {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re >= 0.5 {
        Ok(log_gamma_right(z))
    } else if z.im < 0.0 {
        Ok(log_gamma_reflected(z.conj()).conj())
    } else {
        Ok(log_gamma_reflected(z))
    }
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::zero();
    while z.norm() < STIRLING_MIN_ABS {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::zero();
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - shift
}

/// Reflection for Re z < 1/2 and Im z ≥ 0.
fn log_gamma_reflected(z: Complex64) -> Complex64 {
    Complex64::new(PI.ln(), 0.0) - log_sin_pi_upper(z) - log_gamma_right(1.0 - z)
}

/// log sin(πz) for Im z ≥ 0, continuous across the upper half plane:
/// sin(πz) = (i/2) e^{−iπz} (1 − e^{2πiz}).
fn log_sin_pi_upper(z: Complex64) -> Complex64 {
    let reduced = z.re - z.re.round();
    let w = Complex64::new(-2.0 * PI * z.im, 2.0 * PI * reduced);
    let one_minus = -expm1_complex(w);
    Complex64::new(0.5f64.ln(), PI / 2.0) - Complex64::i() * PI * z + one_minus.ln()
}

fn expm1_complex(w: Complex64) -> Complex64 {
    let half = (0.5 * w.im).sin();
    Complex64::new(
        w.re.exp_m1() * w.im.cos() - 2.0 * half * half,
        w.re.exp() * w.im.sin(),
    )
}

/// Γ(z), evaluated as exp(log Γ(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z); zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Result<Complex64> {
    if non_positive_integer(z).is_some() {
        return Ok(Complex64::zero());
    }
    Ok((-log_gamma(z)?).exp())
}

/// Rising factorial (x)_k = x(x+1)…(x+k−1), (x)_0 = 1.
pub fn pochhammer(x: Complex64, k: u32) -> Complex64 {
    pochhammer_generic(&x, k as usize)
}

/// Rising factorial over any ring with a unit; used with `Complex64` and with
/// exact rationals.
pub fn pochhammer_generic<T>(x: &T, k: usize) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = x.clone();
    for _ in 0..k {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// Finite sum of ₃F₂(a₁,a₂,a₃; b₁,b₂; 1) over its first `terms` terms.
///
/// Returns `None` if a denominator vanishes inside the summed range.
pub fn terminating_3f2<T>(upper: [&T; 3], lower: [&T; 2], terms: usize) -> Option<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let mut sum = T::zero();
    let mut term = T::one();
    let mut k = T::zero();
    for i in 0..terms {
        sum = sum + term.clone();
        if i + 1 == terms {
            break;
        }
        let den = (lower[0].clone() + k.clone())
            * (lower[1].clone() + k.clone())
            * (k.clone() + T::one());
        if den.is_zero() {
            return None;
        }
        let num = (upper[0].clone() + k.clone())
            * (upper[1].clone() + k.clone())
            * (upper[2].clone() + k.clone());
        term = term * num / den;
        k = k + T::one();
    }
    Some(sum)
}

/// Terminating ₃F₂(ν, α, β; μ+ν, γ; 1).
///
/// `alpha` or `beta` must be a non-positive integer; the sum then stops after
/// the last non-zero term.
pub fn f3f2_unit(
    nu: Complex64,
    alpha: Complex64,
    beta: Complex64,
    mu_plus_nu: Complex64,
    gamma: Complex64,
) -> Result<Complex64> {
    for (v, name) in [
        (nu, "nu"),
        (alpha, "alpha"),
        (beta, "beta"),
        (mu_plus_nu, "mu_plus_nu"),
        (gamma, "gamma"),
    ] {
        check_finite(v, name)?;
    }
    let degree = match (non_positive_integer(alpha), non_positive_integer(beta)) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => {
            return Err(Error::NonConvergence(
                "3F2 at unit argument needs alpha or beta to be a non-positive integer".into(),
            ))
        }
    };
    terminating_3f2(
        [&nu, &alpha, &beta],
        [&mu_plus_nu, &gamma],
        degree as usize + 1,
    )
    .ok_or_else(|| Error::Pole("3F2 denominator vanishes before termination".into()))
}

/// Gauss hypergeometric function ₂F₁(a′, b′; c′; z).
pub fn gauss_2f1(params: &HyperTriple, z: Complex64) -> Result<Complex64> {
    let HyperTriple {
        a_param: a,
        b_param: b,
        c_param: c,
    } = *params;
    for (v, name) in [(a, "a_param"), (b, "b_param"), (c, "c_param"), (z, "z")] {
        check_finite(v, name)?;
    }

    let degree = match (non_positive_integer(a), non_positive_integer(b)) {
        (Some(p), Some(q)) => Some(p.min(q)),
        (Some(p), None) | (None, Some(p)) => Some(p),
        (None, None) => None,
    };
    if let Some(n) = degree {
        return terminating_2f1(a, b, c, z, n);
    }
    if non_positive_integer(c).is_some() {
        return Err(Error::Pole(format!(
            "c′ = {} is a non-positive integer",
            c.re
        )));
    }
    if z == Complex64::zero() {
        return Ok(Complex64::one());
    }
    if z.norm() >= 1.0 {
        return Err(Error::NonConvergence(format!(
            "2F1 series diverges at |z| = {} and no transformation applies",
            z.norm()
        )));
    }

    let w = 1.0 - z;
    let s = c - a - b;
    let s_is_integer = s.im == 0.0 && s.re.fract() == 0.0;
    if z.norm() > 0.9 && w.norm() < 0.5 && !s_is_integer {
        return connection_at_one(a, b, c, z);
    }
    power_series(a, b, c, z)
}

fn terminating_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    n: u64,
) -> Result<Complex64> {
    let mut sum = Complex64::one();
    let mut term = Complex64::one();
    for k in 0..n {
        let kf = k as f64;
        let den = (c + kf) * (kf + 1.0);
        if den == Complex64::zero() {
            return Err(Error::Pole(format!(
                "c′ + {k} vanishes before the series terminates"
            )));
        }
        term = term * (a + kf) * (b + kf) / den * z;
        sum += term;
    }
    Ok(sum)
}

fn power_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::one();
    let mut term = Complex64::one();
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        let den = (c + kf) * (kf + 1.0);
        if den == Complex64::zero() {
            return Err(Error::Pole(format!("c′ + {k} vanishes")));
        }
        term = term * (a + kf) * (b + kf) / den * z;
        sum += term;
        if term.norm() <= SERIES_EPS * sum.norm() {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "2F1 series exceeded {SERIES_MAX_TERMS} terms"
    )))
}

/// ₂F₁(a,b;c;z) = A ₂F₁(a,b;a+b−c+1;1−z) + (1−z)^{c−a−b} B ₂F₁(c−a,c−b;c−a−b+1;1−z).
fn connection_at_one(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let w = 1.0 - z;
    let s = c - a - b;
    let lg_c = log_gamma(c)?;

    let first = if non_positive_integer(c - a).is_some() || non_positive_integer(c - b).is_some() {
        Complex64::zero()
    } else {
        let coeff = (lg_c + log_gamma(s)? - log_gamma(c - a)? - log_gamma(c - b)?).exp();
        coeff * power_series_or_poly(a, b, 1.0 - s, w)?
    };
    let second = if non_positive_integer(a).is_some() || non_positive_integer(b).is_some() {
        Complex64::zero()
    } else {
        let coeff = (lg_c + log_gamma(-s)? - log_gamma(a)? - log_gamma(b)?).exp();
        coeff * w.powc(s) * power_series_or_poly(c - a, c - b, 1.0 + s, w)?
    };
    Ok(first + second)
}

fn power_series_or_poly(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    gauss_2f1(&HyperTriple::new(a, b, c), z)
}
