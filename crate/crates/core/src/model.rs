//! Potential instances, unit conventions, the variant substitutions and the
//! two exponential approximations (of 1/r² and of 1/r).

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::sig;

/// One Hellmann potential instance together with its unit convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Coulomb strength (energy·length).
    pub a: f64,
    /// Screened strength (energy·length).
    pub b: f64,
    /// Screening rate (1/length).
    pub lambda: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, lambda: f64, mass: f64, hbar: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            lambda,
            mass,
            hbar,
        };
        p.validate()?;
        Ok(p)
    }

    /// Unit mass and ħ.
    pub fn natural(a: f64, b: f64, lambda: f64) -> Result<Self> {
        Self::new(a, b, lambda, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.a, "a"),
            (self.b, "b"),
            (self.lambda, "lambda"),
            (self.mass, "mass"),
            (self.hbar, "hbar"),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.mass <= 0.0 {
            return Err(Error::domain(format!(
                "mass must be positive, got {}",
                self.mass
            )));
        }
        if self.hbar <= 0.0 {
            return Err(Error::domain(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        if self.lambda < 0.0 {
            return Err(Error::domain(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        Ok(())
    }

    /// 2m/ħ².
    pub fn kinetic_scale(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// How the dimensionless table parameters map onto a physical instance:
/// `a` and `b` are multiplied by `coupling`, mass and ħ are set explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitConvention {
    pub mass: f64,
    pub hbar: f64,
    pub coupling: f64,
}

impl UnitConvention {
    pub const NATURAL: UnitConvention = UnitConvention {
        mass: 1.0,
        hbar: 1.0,
        coupling: 1.0,
    };

    pub fn apply(&self, a: f64, b: f64, lambda: f64) -> Result<PotentialParams> {
        PotentialParams::new(
            self.coupling * a,
            self.coupling * b,
            lambda,
            self.mass,
            self.hbar,
        )
    }

    /// 2m/ħ².
    pub fn kinetic_scale(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// Which member of the Hellmann family is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Three-dimensional radial problem, Hermitian.
    #[serde(rename = "radial")]
    RadialHermitian,
    /// b = 0, λ = 0.
    #[serde(rename = "coulomb")]
    CoulombLimit,
    /// Real one-dimensional potential −a/x + b e^{−λx}/x.
    #[serde(rename = "pt1d")]
    PTSymmetric1D,
    /// a → ia, b → ib, λ → iλ.
    #[serde(rename = "nhpt")]
    NonHermitianPT,
    /// a, b real, λ → iλ.
    #[serde(rename = "nonpt1")]
    NonPTCase1,
    /// λ real, a → ia, b → ib.
    #[serde(rename = "nonpt2")]
    NonPTCase2,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::RadialHermitian,
        Variant::CoulombLimit,
        Variant::PTSymmetric1D,
        Variant::NonHermitianPT,
        Variant::NonPTCase1,
        Variant::NonPTCase2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Variant::RadialHermitian => "radial",
            Variant::CoulombLimit => "coulomb",
            Variant::PTSymmetric1D => "pt1d",
            Variant::NonHermitianPT => "nhpt",
            Variant::NonPTCase1 => "nonpt1",
            Variant::NonPTCase2 => "nonpt2",
        }
    }

    pub fn is_one_dimensional(&self) -> bool {
        matches!(
            self,
            Variant::PTSymmetric1D
                | Variant::NonHermitianPT
                | Variant::NonPTCase1
                | Variant::NonPTCase2
        )
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.label() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown variant '{s}' (expected radial, coulomb, pt1d, nhpt, nonpt1, nonpt2)"
                ))
            })
    }
}

/// Treatment of the singular terms of the radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ApproxScheme {
    /// ℓ(ℓ+1)/r² and 1/r kept exactly.
    #[serde(rename = "exact")]
    ExactCentrifugal,
    /// 1/r² → λ²/(1−e^{−λr})² together with 1/r → λ/(1−e^{−λr}) in the
    /// potential: the equation whose spectrum is known in closed form.
    #[serde(rename = "pekeris")]
    PekerisCentrifugal,
    /// Only 1/x → λ/(1−e^{−λx}).
    #[serde(rename = "inverse-x-exp")]
    InverseXExp,
}

impl ApproxScheme {
    pub fn label(&self) -> &'static str {
        match self {
            ApproxScheme::ExactCentrifugal => "exact",
            ApproxScheme::PekerisCentrifugal => "pekeris",
            ApproxScheme::InverseXExp => "inverse-x-exp",
        }
    }

    pub(crate) fn approximates_potential(&self) -> bool {
        !matches!(self, ApproxScheme::ExactCentrifugal)
    }

    pub(crate) fn approximates_centrifugal(&self) -> bool {
        matches!(self, ApproxScheme::PekerisCentrifugal)
    }
}

impl FromStr for ApproxScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ApproxScheme::ExactCentrifugal),
            "pekeris" => Ok(ApproxScheme::PekerisCentrifugal),
            "inverse-x-exp" => Ok(ApproxScheme::InverseXExp),
            _ => Err(Error::domain(format!(
                "unknown scheme '{s}' (expected exact, pekeris, inverse-x-exp)"
            ))),
        }
    }
}

/// V(r) = (−a + b e^{−λr})/r.
pub fn potential_radial(params: &PotentialParams, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::domain(format!("r must be positive, got {r}")));
    }
    Ok((-params.a + params.b * (-params.lambda * r).exp()) / r)
}

/// The potential with 1/r → λ/(1−e^{−λr}): λ(−a + b e^{−λr})/(1−e^{−λr}).
pub fn potential_radial_approx(params: &PotentialParams, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::domain(format!("r must be positive, got {r}")));
    }
    if params.lambda == 0.0 {
        return potential_radial(params, r);
    }
    Ok((-params.a + params.b * (-params.lambda * r).exp()) * inverse_x_approx(params.lambda, r))
}

/// λ/(1−e^{−λx}), the exponential stand-in for 1/x.
pub fn inverse_x_approx(lambda: f64, x: f64) -> f64 {
    lambda / -(-lambda * x).exp_m1()
}

/// λ²/(1−e^{−λr})², the exponential stand-in for 1/r².
pub fn centrifugal_approx(lambda: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::domain(format!("r must be positive, got {r}")));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let s = inverse_x_approx(lambda, r);
    Ok(s * s)
}

/// One row of an exact-vs-approximate comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub r: f64,
    pub exact: f64,
    pub approx: f64,
    pub rel_err: f64,
}

/// Tabulates 1/x against λ/(1−e^{−λx}) ([`ApproxScheme::InverseXExp`]) or
/// 1/r² against λ²/(1−e^{−λr})² ([`ApproxScheme::PekerisCentrifugal`]) on a
/// uniform grid.
pub fn approx_profile(
    lambda: f64,
    r_min: f64,
    r_max: f64,
    points: usize,
    scheme: ApproxScheme,
) -> Result<Vec<ProfileRow>> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Error::domain(format!(
            "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    if points < 2 {
        return Err(Error::domain(format!(
            "need at least 2 points, got {points}"
        )));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let h = (r_max - r_min) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let r = if i + 1 == points {
                r_max
            } else {
                r_min + h * i as f64
            };
            let (exact, approx) = match scheme {
                ApproxScheme::InverseXExp => (1.0 / r, inverse_x_approx(lambda, r)),
                ApproxScheme::PekerisCentrifugal => (1.0 / (r * r), centrifugal_approx(lambda, r)?),
                ApproxScheme::ExactCentrifugal => {
                    return Err(Error::domain(
                        "approx_profile needs an approximating scheme (pekeris or inverse-x-exp)",
                    ))
                }
            };
            Ok(ProfileRow {
                r,
                exact,
                approx,
                rel_err: ((approx - exact) / exact).abs(),
            })
        })
        .collect()
}

pub const PROFILE_CSV_HEADER: &str = "r,exact,approx,rel_err";

pub fn write_profile_csv<W: Write>(rows: &[ProfileRow], mut out: W) -> Result<()> {
    writeln!(out, "{PROFILE_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            sig(row.r),
            sig(row.exact),
            sig(row.approx),
            sig(row.rel_err)
        )?;
    }
    Ok(())
}

/// Potential coefficients after the variant substitution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub lambda: Complex64,
}

impl EffectiveCoefficients {
    /// −a/x + b e^{−λx}/x at real x ≠ 0.
    pub fn potential_1d(&self, x: f64) -> Complex64 {
        (-self.a + self.b * (-self.lambda * x).exp()) / x
    }
}

pub fn variant_map(params: &PotentialParams, variant: Variant) -> EffectiveCoefficients {
    let i = Complex64::i();
    let (a, b, l) = (
        Complex64::from(params.a),
        Complex64::from(params.b),
        Complex64::from(params.lambda),
    );
    let (a, b, lambda) = match variant {
        Variant::NonHermitianPT => (i * a, i * b, i * l),
        Variant::NonPTCase1 => (a, b, i * l),
        Variant::NonPTCase2 => (i * a, i * b, l),
        Variant::RadialHermitian | Variant::CoulombLimit | Variant::PTSymmetric1D => (a, b, l),
    };
    EffectiveCoefficients { a, b, lambda }
}
