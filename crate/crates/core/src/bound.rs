//! Closed-form bound states: energies for every variant, the exponent pair
//! of the trial solution u^{λ₁}(1−u)^{λ₂}·₂F₁, the quantization residual and
//! normalized hypergeometric wave functions.
//!
//! # Energies
//!
//! For the radial problem (u = e^{−λr}) the hypergeometric series terminates
//! when λ₁ + λ₂ + Λ₁ = −n. With λ₂ = ℓ+1, N = n+ℓ+1 and s = 2m/ħ² this has
//! the closed-form root
//!
//! ```text
//! λ₁ = (s(a−b)/λ − ℓ(ℓ+1) − N²) / 2N
//! E  = −s(a−b)²/4N² + λ[(a−b)(N²+ℓ(ℓ+1))/2N² − a] − λ²(N²−ℓ(ℓ+1))²/(4sN²)
//! ```
//!
//! which is what [`bound_energy`] returns. [`printed_energy`] keeps the
//! reference closed forms unmodified; they agree with the quantization root for
//! the Coulomb, PT-symmetric and both non-PT cases, differ in the λ-dependent
//! terms for the radial case and by an overall sign for the non-Hermitian PT
//! case.
//!
//! # Normalization
//!
//! ∫₀¹ u^{2λ₁}(1−u)^{2λ₂} F(u)² du is expanded as a finite sum of terminating
//! ₃F₂(·;1) values. With λ₂ = ℓ+1 every factor is rational in λ₁, so the sum
//! is carried out exactly over big rationals; in floating point it cancels
//! catastrophically once λ₁ is in the hundreds.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PotentialParams, Variant};
use crate::specfun::{gauss_2f1, pochhammer_generic, terminating_3f2, HyperTriple};

/// Radial index `n` and angular momentum `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32) -> Self {
        Self { n, ell }
    }

    /// n + ℓ + 1.
    pub fn principal(&self) -> u32 {
        self.n + self.ell + 1
    }

    fn centrifugal(&self) -> f64 {
        let l = self.ell as f64;
        l * (l + 1.0)
    }

    /// 1D variants carry no angular momentum.
    pub fn check_for(&self, variant: Variant) -> Result<()> {
        if variant.is_one_dimensional() && self.ell != 0 {
            return Err(Error::Convention(format!(
                "variant {variant} is one-dimensional; ell must be 0, got {}",
                self.ell
            )));
        }
        Ok(())
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, ell={})", self.n, self.ell)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Oracle,
}

/// One eigenvalue together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub energy: Complex64,
    pub variant: Variant,
    pub qn: QuantumNumbers,
    pub source: Source,
    /// `Some(false)` flags a formal root whose wave function does not decay;
    /// `None` where no criterion applies.
    pub normalizable: Option<bool>,
}

fn check_params(params: &PotentialParams, variant: Variant) -> Result<()> {
    params.validate()?;
    match variant {
        Variant::CoulombLimit => {
            if params.lambda != 0.0 || params.b != 0.0 {
                return Err(Error::domain(format!(
                    "coulomb variant requires b = 0 and lambda = 0, got b = {}, lambda = {}",
                    params.b, params.lambda
                )));
            }
        }
        _ => {
            if params.lambda <= 0.0 {
                return Err(Error::domain(format!(
                    "variant {variant} requires lambda > 0 (use the coulomb variant for lambda = 0)"
                )));
            }
        }
    }
    Ok(())
}

/// λ₁ at the quantized radial energy.
pub fn radial_lambda1(params: &PotentialParams, qn: QuantumNumbers) -> f64 {
    let np = qn.principal() as f64;
    let s = params.kinetic_scale();
    (s * (params.a - params.b) / params.lambda - qn.centrifugal() - np * np) / (2.0 * np)
}

fn radial_energy(params: &PotentialParams, qn: QuantumNumbers) -> f64 {
    let n2 = (qn.principal() as f64).powi(2);
    let l = qn.centrifugal();
    let s = params.kinetic_scale();
    let (a, b, lam) = (params.a, params.b, params.lambda);
    -s * (a - b).powi(2) / (4.0 * n2) + lam * ((a - b) * (n2 + l) / (2.0 * n2) - a)
        - lam * lam * (n2 - l).powi(2) / (4.0 * s * n2)
}

fn coulomb_energy(params: &PotentialParams, qn: QuantumNumbers) -> f64 {
    let n2 = (qn.principal() as f64).powi(2);
    -params.mass * params.a * params.a / (2.0 * params.hbar * params.hbar * n2)
}

/// The PT-symmetric one-dimensional spectrum in its reference grouping.
fn pt1d_energy(params: &PotentialParams, n: u32) -> f64 {
    let big_a = params.kinetic_scale() / params.lambda;
    let k = (1.0 + n as f64).powi(2);
    let (a, b) = (params.a, params.b);
    -params.lambda / (4.0 * big_a * k)
        * (a * a * big_a * big_a + 2.0 * a * big_a * (-big_a * b + k) + (big_a * b + k).powi(2))
}

/// Same spectrum, expanded: −λ[A²(a−b)² + 2AK(a+b) + K²]/(4AK).
pub fn pt1d_energy_expanded(params: &PotentialParams, n: u32) -> f64 {
    let big_a = params.kinetic_scale() / params.lambda;
    let k = (1.0 + n as f64).powi(2);
    let (a, b) = (params.a, params.b);
    -params.lambda * (big_a * big_a * (a - b).powi(2) + 2.0 * big_a * k * (a + b) + k * k)
        / (4.0 * big_a * k)
}

fn nonpt_energy(params: &PotentialParams, n: u32, case_two: bool) -> Complex64 {
    let (m, hb, lam) = (params.mass, params.hbar, params.lambda);
    let (a, b) = (params.a, params.b);
    let k = (1.0 + n as f64).powi(2);
    let i = Complex64::i();
    let t = i * lam * hb * hb * k;
    let den = 8.0 * m * hb * hb * k;
    if case_two {
        (4.0 * m * m * a * a - 4.0 * m * a * (2.0 * m * b + t) + (2.0 * m * b - t).powi(2)) / den
    } else {
        -(4.0 * m * m * a * a - 4.0 * m * a * (2.0 * m * b - t) + (2.0 * m * b + t).powi(2)) / den
    }
}

/// Eigenvalue from the closed-form root of the variant's quantization condition.
pub fn bound_energy(
    params: &PotentialParams,
    variant: Variant,
    qn: QuantumNumbers,
) -> Result<SpectrumEntry> {
    check_params(params, variant)?;
    qn.check_for(variant)?;
    let (energy, normalizable) = match variant {
        Variant::RadialHermitian => (
            Complex64::from(radial_energy(params, qn)),
            Some(radial_lambda1(params, qn) > 0.0),
        ),
        Variant::CoulombLimit => (
            Complex64::from(coulomb_energy(params, qn)),
            Some(params.a > 0.0),
        ),
        Variant::PTSymmetric1D => (Complex64::from(pt1d_energy(params, qn.n)), None),
        Variant::NonHermitianPT => (Complex64::from(-pt1d_energy(params, qn.n)), None),
        Variant::NonPTCase1 => (nonpt_energy(params, qn.n, false), None),
        Variant::NonPTCase2 => (nonpt_energy(params, qn.n, true), None),
    };
    Ok(SpectrumEntry {
        energy,
        variant,
        qn,
        source: Source::Analytic,
        normalizable,
    })
}

/// The reference energy expressions, unmodified and without reconciliation
/// against the quantization condition.
pub fn printed_energy(
    params: &PotentialParams,
    variant: Variant,
    qn: QuantumNumbers,
) -> Result<Complex64> {
    check_params(params, variant)?;
    qn.check_for(variant)?;
    let (m, hb, lam, a, b) = (params.mass, params.hbar, params.lambda, params.a, params.b);
    let (n, l) = (qn.n as f64, qn.ell as f64);
    let e = match variant {
        Variant::RadialHermitian => {
            let np = n + l + 1.0;
            let bracket_b = 2.0 * l * l + (n + l).powi(2) + l * (3.0 + 2.0 * n);
            let bracket_c = l * (1.0 + 2.0 * n) + (n + l).powi(2);
            let curly = 4.0 * m * m * (a * a + b * b)
                + 4.0 * m * hb * hb * lam * b * bracket_b
                + lam * lam * hb.powi(4) * bracket_c * bracket_c
                + 4.0 * a * m * (-2.0 * b * m + lam * hb * hb * bracket_c);
            Complex64::from(-curly / (8.0 * m * hb * hb * np * np))
        }
        Variant::CoulombLimit => Complex64::from(coulomb_energy(params, qn)),
        Variant::PTSymmetric1D => Complex64::from(pt1d_energy(params, qn.n)),
        Variant::NonHermitianPT => {
            let k = (1.0 + n).powi(2);
            let curly = 4.0 * m * m * a * a
                + 4.0 * m * a * (-2.0 * m * b + lam * hb * hb * k)
                + (2.0 * m * b + lam * hb * hb * k).powi(2);
            Complex64::from(-curly / (8.0 * m * hb * hb * k))
        }
        Variant::NonPTCase1 => nonpt_energy(params, qn.n, false),
        Variant::NonPTCase2 => nonpt_energy(params, qn.n, true),
    };
    Ok(e)
}

/// Exponents of the trial solution u^{λ₁}(1−u)^{λ₂}ψ(u), principal roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// Re λ₁ ≤ 0: the trial solution does not decay.
    pub non_normalizable: bool,
}

/// Squares (λ₁², λ₂²) as functions of the energy. For the radial problem
/// λ₂² is replaced by λ₂ = ℓ+1 directly.
fn exponent_squares(
    params: &PotentialParams,
    variant: Variant,
    energy: Complex64,
    ell: u32,
) -> Result<(Complex64, Complex64)> {
    let lam = params.lambda;
    let s = params.kinetic_scale();
    let big_a = s / lam;
    let i = Complex64::i();
    let (a, b) = (params.a, params.b);
    let l = (ell as f64) * (ell as f64 + 1.0);
    let eps = energy / lam;
    Ok(match variant {
        Variant::RadialHermitian => (
            -s / (lam * lam) * (energy + a * lam) + l,
            Complex64::from((ell as f64 + 1.0).powi(2)),
        ),
        Variant::PTSymmetric1D => (-big_a * (b + eps), -big_a * (a + eps)),
        Variant::NonHermitianPT => (-big_a * (b - eps), -big_a * (a - eps)),
        Variant::NonPTCase1 => (big_a * (i * b + eps), big_a * (i * a + eps)),
        Variant::NonPTCase2 => (-big_a * (i * b + eps), -big_a * (i * a + eps)),
        Variant::CoulombLimit => {
            return Err(Error::domain(
                "the coulomb variant has no exponential variable (lambda = 0)",
            ))
        }
    })
}

pub fn exponent_pair(
    params: &PotentialParams,
    variant: Variant,
    energy: Complex64,
    ell: u32,
) -> Result<ExponentPair> {
    check_params(params, variant)?;
    QuantumNumbers::new(0, ell).check_for(variant)?;
    let (sq1, sq2) = exponent_squares(params, variant, energy, ell)?;
    let lambda1 = sq1.sqrt();
    let lambda2 = match variant {
        Variant::RadialHermitian => Complex64::from(ell as f64 + 1.0),
        _ => sq2.sqrt(),
    };
    Ok(ExponentPair {
        lambda1,
        lambda2,
        non_normalizable: lambda1.re <= 0.0,
    })
}

/// Signs (σ₁, σ₂) of the 1D exponents closest to satisfying n + 1 + λ₁ + λ₂ = 0.
fn select_branches(l1: Complex64, l2: Complex64, n: u32) -> (Complex64, Complex64, Complex64) {
    let target = n as f64 + 1.0;
    let mut best: Option<(Complex64, Complex64, Complex64)> = None;
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let (x1, x2) = (l1 * s1, l2 * s2);
            let r = target + x1 + x2;
            if best.is_none_or(|(_, _, b)| r.norm() < b.norm()) {
                best = Some((x1, x2, r));
            }
        }
    }
    best.expect("four candidates")
}

/// Residual of the quantization condition at a candidate energy; zero iff
/// the energy is an eigenvalue of the approximated problem.
///
/// * radial: n + λ₁ + λ₂ + Λ₁ with Λ₁ = −√(−s(E+bλ)/λ²);
/// * 1D variants: n + 1 + λ₁ + λ₂, minimized over the four root branches;
/// * Coulomb: the λ → 0 limit n + ℓ + 1 − (a/2)√(s/(−E)).
pub fn quantization_residual(
    params: &PotentialParams,
    variant: Variant,
    qn: QuantumNumbers,
    energy: Complex64,
) -> Result<Complex64> {
    check_params(params, variant)?;
    qn.check_for(variant)?;
    let n = qn.n as f64;
    match variant {
        Variant::CoulombLimit => {
            let s = params.kinetic_scale();
            Ok(qn.principal() as f64 - 0.5 * params.a * (s / -energy).sqrt())
        }
        Variant::RadialHermitian => {
            let (sq1, _) = exponent_squares(params, variant, energy, qn.ell)?;
            let lam = params.lambda;
            let s = params.kinetic_scale();
            let cap_sq = -s / (lam * lam) * (energy + params.b * lam);
            let (l1, cap) = (sq1.sqrt(), cap_sq.sqrt());
            let lambda2 = qn.ell as f64 + 1.0;
            // λ₁ − √Λ₁² = (λ₁² − Λ₁²)/(λ₁ + √Λ₁²); the numerator is energy-free.
            let diff_sq = qn.centrifugal() - s * (params.a - params.b) / lam;
            let denom = l1 + cap;
            if denom.norm() > 0.0 {
                Ok(n + lambda2 + diff_sq / denom)
            } else {
                Ok(n + lambda2 + l1 - cap)
            }
        }
        _ => {
            let (sq1, sq2) = exponent_squares(params, variant, energy, qn.ell)?;
            Ok(select_branches(sq1.sqrt(), sq2.sqrt(), qn.n).2)
        }
    }
}

/// Which integral defines the normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// ∫₀¹ |R(u)|² du in the mapped variable.
    #[default]
    Mapped,
    /// ∫₀^∞ |R(r)|² dr = ∫₀¹ |R(u)|² du/(λu).
    Physical,
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mapped" => Ok(Measure::Mapped),
            "physical" => Ok(Measure::Physical),
            _ => Err(Error::domain(format!(
                "unknown measure '{s}' (expected mapped or physical)"
            ))),
        }
    }
}

/// Everything needed to evaluate one eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolution {
    pub energy: Complex64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub hyper: HyperTriple,
    pub norm_constant: Complex64,
    /// Radial problem only.
    pub capital_lambda1: Option<Complex64>,
    pub normalized: bool,
}

impl WaveSolution {
    /// N·u^{λ₁}(1−u)^{λ₂}·₂F₁(a′,b′;c′;u) for 0 < u < 1.
    pub fn value_at(&self, u: f64) -> Result<Complex64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain(format!(
                "mapped coordinate must lie in (0,1), got {u}"
            )));
        }
        let poly = gauss_2f1(&self.hyper, u.into())?;
        let prefactor = if self.lambda1.im == 0.0 && self.lambda2.im == 0.0 {
            Complex64::from(u.powf(self.lambda1.re) * (1.0 - u).powf(self.lambda2.re))
        } else {
            Complex64::from(u).powc(self.lambda1) * Complex64::from(1.0 - u).powc(self.lambda2)
        };
        Ok(self.norm_constant * prefactor * poly)
    }
}

/// Builds the eigenfunction for `(variant, qn)`. Normalization is available
/// for the radial problem only; other variants get N = 1.
pub fn wave_solution(
    params: &PotentialParams,
    variant: Variant,
    qn: QuantumNumbers,
    normalize: Option<Measure>,
) -> Result<WaveSolution> {
    let entry = bound_energy(params, variant, qn)?;
    let minus_n = Complex64::from(-(qn.n as f64));
    match variant {
        Variant::RadialHermitian => {
            let l1 = radial_lambda1(params, qn);
            let l2 = qn.ell as f64 + 1.0;
            let s = params.kinetic_scale();
            let lam = params.lambda;
            let cap = -(-s / (lam * lam) * (entry.energy + params.b * lam)).sqrt();
            let hyper = HyperTriple::new(
                minus_n,
                Complex64::from(qn.n as f64 + 2.0 * l1 + 2.0 * l2),
                Complex64::from(1.0 + 2.0 * l1),
            );
            let norm = match normalize {
                Some(measure) => normalization_constant_with(params, qn, measure)?,
                None => 1.0,
            };
            Ok(WaveSolution {
                energy: entry.energy,
                lambda1: l1.into(),
                lambda2: l2.into(),
                hyper,
                norm_constant: norm.into(),
                capital_lambda1: Some(cap),
                normalized: normalize.is_some(),
            })
        }
        Variant::CoulombLimit => Err(Error::domain(
            "the coulomb variant has no hypergeometric wave function in u (lambda = 0)",
        )),
        _ => {
            if normalize.is_some() {
                return Err(Error::domain(format!(
                    "normalization is only defined for the radial variant, not {variant}"
                )));
            }
            let (sq1, sq2) = exponent_squares(params, variant, entry.energy, qn.ell)?;
            let (l1, l2, _) = select_branches(sq1.sqrt(), sq2.sqrt(), qn.n);
            Ok(WaveSolution {
                energy: entry.energy,
                lambda1: l1,
                lambda2: l2,
                hyper: HyperTriple::new(minus_n, l1 + l2, 1.0 + 2.0 * l1),
                norm_constant: Complex64::one(),
                capital_lambda1: None,
                normalized: false,
            })
        }
    }
}

/// Position at which a wave function is sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinate {
    /// Physical radius, mapped through u = e^{−λr} (radial variant only).
    Radial(f64),
    /// The hypergeometric variable u ∈ (0,1).
    Mapped(f64),
}

pub fn wavefunction(
    params: &PotentialParams,
    variant: Variant,
    qn: QuantumNumbers,
    coordinate: Coordinate,
    normalized: bool,
    measure: Measure,
) -> Result<Complex64> {
    let u = match coordinate {
        Coordinate::Mapped(u) => u,
        Coordinate::Radial(r) => {
            if variant != Variant::RadialHermitian {
                return Err(Error::domain(format!(
                    "physical coordinates are only mapped for the radial variant, not {variant}"
                )));
            }
            if r.is_nan() || r <= 0.0 {
                return Err(Error::domain(format!("r must be positive, got {r}")));
            }
            (-params.lambda * r).exp()
        }
    };
    let solution = wave_solution(params, variant, qn, normalized.then_some(measure))?;
    solution.value_at(u)
}

/// N > 0 with ∫₀¹ |R(u)|² du = 1.
pub fn normalization_constant(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    normalization_constant_with(params, qn, Measure::Mapped)
}

pub fn normalization_constant_with(
    params: &PotentialParams,
    qn: QuantumNumbers,
    measure: Measure,
) -> Result<f64> {
    check_params(params, Variant::RadialHermitian)?;
    let l1 = radial_lambda1(params, qn);
    if !(l1 > 0.0) {
        return Err(Error::NonNormalizable(format!(
            "lambda1 = {l1} <= 0 for {qn}; the state is not bound"
        )));
    }
    let inverse = inverse_norm_squared(l1, qn, measure)?;
    let inverse = match measure {
        Measure::Mapped => inverse,
        Measure::Physical => inverse / params.lambda,
    };
    if !(inverse > 0.0 && inverse.is_finite()) {
        return Err(Error::NonConvergence(format!(
            "normalization integral evaluated to {inverse} for {qn}"
        )));
    }
    Ok(inverse.sqrt().recip())
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// ∫₀¹ u^{ν₀−1}(1−u)^{2λ₂} F(u)² du with F = ₂F₁(−n, n+2λ₁+2λ₂; 1+2λ₁; u),
/// ν₀ = 1+2λ₁ (mapped measure) or 2λ₁ (physical measure, without the 1/λ).
///
/// Each power u^m of one factor F is integrated against the other with
/// ∫₀¹ s^{ν−1}(1−s)^{μ−1} ₂F₁(α,β;γ;s) ds = B(ν,μ) ₃F₂(ν,α,β;μ+ν,γ;1),
/// the Γ(−n+m)/Γ(−n) ratios becoming (−n)_m.
fn inverse_norm_squared(lambda1: f64, qn: QuantumNumbers, measure: Measure) -> Result<f64> {
    let l1 = BigRational::from_float(lambda1)
        .ok_or_else(|| Error::domain(format!("lambda1 = {lambda1} is not finite")))?;
    let n = qn.n as i64;
    let two_l1 = rational(2) * &l1;
    let two_l2 = rational(2 * (qn.ell as i64 + 1));
    // μ = 2λ₂ + 1 is the integer 2ℓ + 3.
    let mu = 2 * qn.ell as usize + 3;
    let mu_q = rational(mu as i64);
    let nu0 = match measure {
        Measure::Mapped => rational(1) + &two_l1,
        Measure::Physical => two_l1.clone(),
    };
    let upper_b = rational(n) + &two_l1 + &two_l2;
    let lower_c = rational(1) + &two_l1;
    let minus_n = rational(-n);

    // B(ν₀, μ) = (μ−1)!/(ν₀)_μ for integer μ.
    let factorial = (1..mu as i64).fold(rational(1), |acc, k| acc * rational(k));
    let beta = factorial / pochhammer_generic(&nu0, mu);

    let mut sum = BigRational::zero();
    let mut m_factorial = rational(1);
    for m in 0..=qn.n as usize {
        if m > 0 {
            m_factorial *= rational(m as i64);
        }
        let series_coeff = pochhammer_generic(&minus_n, m) * pochhammer_generic(&upper_b, m)
            / (pochhammer_generic(&lower_c, m) * &m_factorial);
        if series_coeff.is_zero() {
            continue;
        }
        let beta_ratio = pochhammer_generic(&nu0, m) / pochhammer_generic(&(&nu0 + &mu_q), m);
        let nu = &nu0 + rational(m as i64);
        let mu_plus_nu = &nu + &mu_q;
        let f32 = terminating_3f2(
            [&nu, &minus_n, &upper_b],
            [&mu_plus_nu, &lower_c],
            qn.n as usize + 1,
        )
        .ok_or_else(|| Error::Pole("3F2 denominator vanished in the normalization sum".into()))?;
        sum += series_coeff * beta_ratio * f32;
    }
    (beta * sum)
        .to_f64()
        .ok_or_else(|| Error::NonConvergence("normalization integral not representable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn natural(a: f64, b: f64, lambda: f64) -> PotentialParams {
        PotentialParams::natural(a, b, lambda).unwrap()
    }

    #[test]
    fn coulomb_ground_state() {
        let p = PotentialParams::new(1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let e = bound_energy(&p, Variant::CoulombLimit, QuantumNumbers::new(0, 0)).unwrap();
        assert_eq!(e.energy, Complex64::from(-0.5));
        assert_eq!(e.source, Source::Analytic);
        let r = quantization_residual(
            &p,
            Variant::CoulombLimit,
            QuantumNumbers::new(0, 0),
            e.energy,
        )
        .unwrap();
        assert!(r.norm() < 1e-14);
    }

    #[test]
    fn coulomb_rejects_screening() {
        let p = natural(1.0, 0.5, 0.0);
        assert!(bound_energy(&p, Variant::CoulombLimit, QuantumNumbers::new(0, 0)).is_err());
        let p = natural(1.0, 0.0, 0.1);
        assert!(bound_energy(&p, Variant::CoulombLimit, QuantumNumbers::new(0, 0)).is_err());
    }

    #[test]
    fn radial_needs_positive_lambda() {
        let p = natural(1.0, 0.5, 0.0);
        assert!(matches!(
            bound_energy(&p, Variant::RadialHermitian, QuantumNumbers::new(0, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn one_dimensional_variants_reject_angular_momentum() {
        let p = natural(1.0, 0.5, 0.1);
        for v in [
            Variant::PTSymmetric1D,
            Variant::NonHermitianPT,
            Variant::NonPTCase1,
            Variant::NonPTCase2,
        ] {
            assert!(matches!(
                bound_energy(&p, v, QuantumNumbers::new(0, 1)),
                Err(Error::Convention(_))
            ));
        }
    }

    #[test]
    fn radial_exponent_lambda2() {
        let p = natural(1.0, 0.5, 0.01);
        let e = Complex64::from(-0.1);
        for (ell, want) in [(0, 1.0), (2, 3.0)] {
            let pair = exponent_pair(&p, Variant::RadialHermitian, e, ell).unwrap();
            assert_eq!(pair.lambda2, Complex64::from(want));
        }
    }

    #[test]
    fn radial_quantization_plug_back() {
        let p = natural(1.0, 0.5, 0.001);
        let qn = QuantumNumbers::new(0, 0);
        let e = bound_energy(&p, Variant::RadialHermitian, qn)
            .unwrap()
            .energy;
        let pair = exponent_pair(&p, Variant::RadialHermitian, e, 0).unwrap();
        assert!((pair.lambda1.re - radial_lambda1(&p, qn)).abs() < 1e-9 * pair.lambda1.re);
        let r = quantization_residual(&p, Variant::RadialHermitian, qn, e).unwrap();
        assert!(r.norm() < 1e-10, "residual {r}");
        let shifted = quantization_residual(&p, Variant::RadialHermitian, qn, e + 1e-3).unwrap();
        assert!(shifted.norm() > 1e-5, "residual {shifted}");
    }

    #[test]
    fn residual_vanishes_for_every_variant() {
        let p = natural(0.8, 0.3, 0.2);
        for v in Variant::ALL {
            if v == Variant::CoulombLimit {
                continue;
            }
            for n in 0..4 {
                let qn = QuantumNumbers::new(n, 0);
                let entry = bound_energy(&p, v, qn).unwrap();
                if entry.normalizable == Some(false) {
                    continue;
                }
                let r = quantization_residual(&p, v, qn, entry.energy).unwrap();
                assert!(r.norm() < 1e-10, "{v} n={n}: residual {r}");
            }
        }
    }

    #[test]
    fn coulomb_limit_of_radial_residual() {
        let p = natural(1.0, 0.0, 1e-8);
        let hydrogen = PotentialParams::new(1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        for (n, ell) in [(0, 0), (1, 0), (2, 1), (4, 3)] {
            let qn = QuantumNumbers::new(n, ell);
            let e = bound_energy(&hydrogen, Variant::CoulombLimit, qn)
                .unwrap()
                .energy;
            let r = quantization_residual(&p, Variant::RadialHermitian, qn, e).unwrap();
            // The O(λ) energy shift enters the residual amplified by ~N³.
            assert!(r.norm() < 1e-5, "{qn}: residual {r}");
        }
    }

    #[test]
    fn printed_forms_agree_where_consistent() {
        let p = PotentialParams::new(1.1, 0.4, 0.05, 0.7, 1.3).unwrap();
        for v in [
            Variant::PTSymmetric1D,
            Variant::NonPTCase1,
            Variant::NonPTCase2,
        ] {
            for n in 0..5 {
                let qn = QuantumNumbers::new(n, 0);
                let e = bound_energy(&p, v, qn).unwrap().energy;
                let printed = printed_energy(&p, v, qn).unwrap();
                assert!(
                    (e - printed).norm() <= 1e-12 * e.norm().max(1.0),
                    "{v} n={n}"
                );
            }
        }
        for n in 0..5 {
            let qn = QuantumNumbers::new(n, 0);
            let nh = bound_energy(&p, Variant::NonHermitianPT, qn)
                .unwrap()
                .energy;
            let printed = printed_energy(&p, Variant::NonHermitianPT, qn).unwrap();
            let pt = printed_energy(&p, Variant::PTSymmetric1D, qn).unwrap();
            assert!((nh + printed).norm() <= 1e-12 * nh.norm().max(1.0));
            assert!((printed - pt).norm() <= 1e-12 * pt.norm().max(1.0));
        }
    }

    #[test]
    fn printed_radial_form_shares_the_coulomb_term() {
        // Both expressions reduce to −m(a−b)²/(2ħ²N²) as λ → 0.
        let p = PotentialParams::new(1.0, 0.5, 1e-9, 0.5, 1.0).unwrap();
        for (n, ell) in [(0, 0), (1, 2), (3, 1)] {
            let qn = QuantumNumbers::new(n, ell);
            let e = bound_energy(&p, Variant::RadialHermitian, qn)
                .unwrap()
                .energy;
            let printed = printed_energy(&p, Variant::RadialHermitian, qn).unwrap();
            assert!((e - printed).norm() < 1e-8);
        }
    }

    #[test]
    fn pt1d_grouping_matches_expansion() {
        for (a, b, lam) in [(1.0, 0.5, 0.1), (2.0, -0.7, 0.03), (0.3, 1.9, 1.5)] {
            let p = natural(a, b, lam);
            for n in 0..6 {
                let grouped = pt1d_energy(&p, n);
                let expanded = pt1d_energy_expanded(&p, n);
                assert!((grouped - expanded).abs() <= 1e-12 * grouped.abs().max(1.0));
            }
        }
    }

    #[test]
    fn non_pt_cases_are_negated_conjugates() {
        let p = natural(1.0, 0.5, 0.1);
        let qn = QuantumNumbers::new(2, 0);
        let e1 = bound_energy(&p, Variant::NonPTCase1, qn).unwrap().energy;
        let e2 = bound_energy(&p, Variant::NonPTCase2, qn).unwrap().energy;
        assert!((e2 + e1.conj()).norm() < 1e-12);
        assert!(e1.im.abs() > 1e-3);
    }

    #[test]
    fn unbound_radial_state_is_reported() {
        // s(a−b)/λ = 10 < ℓ(ℓ+1) + N² for n = 3.
        let p = natural(1.0, 0.5, 0.1);
        let entry = bound_energy(&p, Variant::RadialHermitian, QuantumNumbers::new(3, 0)).unwrap();
        assert_eq!(entry.normalizable, Some(false));
        assert!(matches!(
            normalization_constant(&p, QuantumNumbers::new(3, 0)),
            Err(Error::NonNormalizable(_))
        ));
        let entry = bound_energy(&p, Variant::RadialHermitian, QuantumNumbers::new(0, 0)).unwrap();
        assert_eq!(entry.normalizable, Some(true));
    }

    #[test]
    fn ground_state_normalization_is_a_beta_function() {
        // n = 0: ∫ u^{2λ₁}(1−u)^{2λ₂} du = B(1+2λ₁, 1+2λ₂) = Γ(2λ₂+1)/(1+2λ₁)_{2λ₂+1}.
        let p = natural(1.0, 0.5, 0.05);
        let qn = QuantumNumbers::new(0, 1);
        let l1 = radial_lambda1(&p, qn);
        let beta: f64 = 24.0 / (0..5).map(|k| 1.0 + 2.0 * l1 + k as f64).product::<f64>();
        let n = normalization_constant(&p, qn).unwrap();
        assert!((n * n * beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wavefunction_boundary_behaviour() {
        let p = natural(1.0, 0.5, 0.05);
        let qn = QuantumNumbers::new(1, 0);
        let w = wave_solution(&p, Variant::RadialHermitian, qn, Some(Measure::Mapped)).unwrap();
        assert_eq!(w.hyper.a_param, Complex64::from(-1.0));
        assert!(w.value_at(1e-9).unwrap().norm() < 1e-30);
        assert!(w.value_at(1.0 - 1e-12).unwrap().norm() < 1e-6);
        assert!(w.value_at(0.0).is_err());
        assert!(w.value_at(1.0).is_err());
        let cap = w.capital_lambda1.unwrap();
        let sum = w.lambda1 + w.lambda2 + cap;
        assert!((sum + 1.0).norm() < 1e-9, "λ₁+λ₂+Λ₁ = {sum}");
    }

    #[test]
    fn first_excited_state_has_one_node() {
        let p = natural(1.0, 0.5, 0.05);
        for (n, nodes) in [(0u32, 0usize), (1, 1), (2, 2)] {
            let w = wave_solution(
                &p,
                Variant::RadialHermitian,
                QuantumNumbers::new(n, 0),
                None,
            )
            .unwrap();
            let values: Vec<f64> = (1..2000)
                .map(|i| w.value_at(i as f64 / 2000.0).unwrap().re)
                .collect();
            let changes = values.windows(2).filter(|v| v[0] * v[1] < 0.0).count();
            assert_eq!(changes, nodes, "n = {n}");
        }
    }

    #[test]
    fn physical_coordinate_maps_through_exponential() {
        let p = natural(1.0, 0.5, 0.05);
        let qn = QuantumNumbers::new(1, 1);
        let r = 3.0;
        let via_r = wavefunction(
            &p,
            Variant::RadialHermitian,
            qn,
            Coordinate::Radial(r),
            true,
            Measure::Mapped,
        )
        .unwrap();
        let via_u = wavefunction(
            &p,
            Variant::RadialHermitian,
            qn,
            Coordinate::Mapped((-0.05f64 * r).exp()),
            true,
            Measure::Mapped,
        )
        .unwrap();
        assert_eq!(via_r, via_u);
        assert!(wavefunction(
            &p,
            Variant::PTSymmetric1D,
            QuantumNumbers::new(0, 0),
            Coordinate::Radial(1.0),
            false,
            Measure::Mapped
        )
        .is_err());
        assert!(wavefunction(
            &p,
            Variant::PTSymmetric1D,
            QuantumNumbers::new(0, 0),
            Coordinate::Mapped(0.5),
            true,
            Measure::Mapped
        )
        .is_err());
    }

    #[test]
    fn one_dimensional_wave_terminates() {
        let p = natural(1.0, 0.5, 0.1);
        for v in [
            Variant::PTSymmetric1D,
            Variant::NonHermitianPT,
            Variant::NonPTCase1,
            Variant::NonPTCase2,
        ] {
            let w = wave_solution(&p, v, QuantumNumbers::new(2, 0), None).unwrap();
            assert_eq!(w.hyper.a_param, Complex64::from(-2.0));
            assert!((w.lambda1 + w.lambda2 + 3.0).norm() < 1e-9);
            assert!(w.value_at(0.3).unwrap().norm().is_finite());
        }
    }
}
