//! Scattering states of the approximated radial equation.
//!
//! With t = 1 − e^{−λr} and ε = −E/λ the regular solution is
//! t^μ e^{iκλr} ₂F₁(ξ₁, ξ₂; ξ₃; t), where
//!
//! ```text
//! κ  = √(s(a−ε)/λ − ℓ(ℓ+1)),   Λ₂ = √(s(ε−b)/λ),   μ = ℓ + 1,
//! ξ₁ = μ − iκ + Λ₂,   ξ₂ = μ − iκ − Λ₂,   ξ₃ = 2μ,
//! ```
//!
//! s = 2m/ħ². Its r → ∞ limit is A sin(λκr − πℓ/2 + δ_ℓ) with
//!
//! ```text
//! δ_ℓ = π(1+ℓ)/2 + arg Γ(2iκ) − arg Γ(μ+iκ−Λ₂) − arg Γ(μ+iκ+Λ₂)
//! A   = 2Γ(2μ) |Γ(2iκ) / (Γ(μ+iκ−Λ₂) Γ(μ+iκ+Λ₂))|
//! ```
//!
//! when the solution is scaled to t^{ℓ+1} at the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::PotentialParams;
use crate::specfun::{log_gamma, non_positive_integer};

/// Kinematics of one partial wave at fixed energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterState {
    pub energy: f64,
    pub ell: u32,
    /// ε = −E/λ.
    pub epsilon: f64,
    pub kappa: Complex64,
    pub capital_lambda2: Complex64,
    pub mu: f64,
    pub xi: [Complex64; 3],
    /// κ² ≤ 0: no propagating wave.
    pub evanescent: bool,
    /// Λ₂² < 0 (ε < b); the formulas are still evaluated on the principal branch.
    pub outside_derivation_regime: bool,
}

impl ScatterState {
    /// Asymptotic wavenumber λκ.
    pub fn wavenumber(&self, lambda: f64) -> f64 {
        lambda * self.kappa.re
    }

    fn propagating(&self) -> Result<()> {
        if self.evanescent {
            return Err(Error::Evanescent(format!(
                "kappa^2 <= 0 at E = {}, ell = {}",
                self.energy, self.ell
            )));
        }
        Ok(())
    }
}

/// Sign of ν in the trial factor e^{−νλr}; `Outgoing` is ν = −iκ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NuSign {
    #[default]
    Outgoing,
    Incoming,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseShiftResult {
    pub ell: u32,
    /// Phase reduced into (−π/2, π/2].
    pub delta: f64,
    /// Unreduced value; `delta_raw = delta + branch·π`.
    pub delta_raw: f64,
    pub branch: i64,
    /// arg Γ(2iκ), arg Γ(μ+iκ−Λ₂), arg Γ(μ+iκ+Λ₂), each as Im log Γ.
    pub components: [f64; 3],
    pub outside_derivation_regime: bool,
}

pub fn scatter_state(params: &PotentialParams, energy: f64, ell: u32) -> Result<ScatterState> {
    params.validate()?;
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::domain(format!(
            "scattering energy must be positive, got {energy}"
        )));
    }
    if params.lambda <= 0.0 {
        return Err(Error::domain("scattering states require lambda > 0"));
    }
    let s = params.kinetic_scale();
    let lam = params.lambda;
    let l = ell as f64 * (ell as f64 + 1.0);
    let epsilon = -energy / lam;
    let kappa_sq = s * (params.a - epsilon) / lam - l;
    let cap_sq = s * (epsilon - params.b) / lam;
    let kappa = Complex64::from(kappa_sq).sqrt();
    let capital_lambda2 = Complex64::from(cap_sq).sqrt();
    let mu = 1.0 + ell as f64;
    let i = Complex64::i();
    let xi = [
        mu - i * kappa + capital_lambda2,
        mu - i * kappa - capital_lambda2,
        Complex64::from(2.0 * mu),
    ];
    Ok(ScatterState {
        energy,
        ell,
        epsilon,
        kappa,
        capital_lambda2,
        mu,
        xi,
        evanescent: kappa_sq <= 0.0,
        outside_derivation_regime: cap_sq < 0.0,
    })
}

fn arg_gamma(z: Complex64) -> Result<f64> {
    if let Some(k) = non_positive_integer(z) {
        return Err(Error::Pole(format!("gamma argument at the pole -{k}")));
    }
    Ok(log_gamma(z)?.im)
}

/// Maps x to (−π/2, π/2] and returns the number of π steps removed.
pub fn reduce_mod_pi(x: f64) -> (f64, i64) {
    let mut k = (x / PI).round();
    let mut y = x - k * PI;
    if y <= -PI / 2.0 {
        y += PI;
        k -= 1.0;
    } else if y > PI / 2.0 {
        y -= PI;
        k += 1.0;
    }
    (y, k as i64)
}

pub fn phase_shift(params: &PotentialParams, energy: f64, ell: u32) -> Result<PhaseShiftResult> {
    phase_shift_with(params, energy, ell, NuSign::Outgoing)
}

/// Phase shift with either sign of ν. `Incoming` replaces iκ by −iκ in every
/// Γ argument.
pub fn phase_shift_with(
    params: &PotentialParams,
    energy: f64,
    ell: u32,
    nu: NuSign,
) -> Result<PhaseShiftResult> {
    let st = scatter_state(params, energy, ell)?;
    st.propagating()?;
    let ik = match nu {
        NuSign::Outgoing => Complex64::i() * st.kappa,
        NuSign::Incoming => -Complex64::i() * st.kappa,
    };
    let components = [
        arg_gamma(2.0 * ik)?,
        arg_gamma(st.mu + ik - st.capital_lambda2)?,
        arg_gamma(st.mu + ik + st.capital_lambda2)?,
    ];
    let delta_raw = PI * (1.0 + ell as f64) / 2.0 + components[0] - components[1] - components[2];
    let (delta, branch) = reduce_mod_pi(delta_raw);
    Ok(PhaseShiftResult {
        ell,
        delta,
        delta_raw,
        branch,
        components,
        outside_derivation_regime: st.outside_derivation_regime,
    })
}

pub fn asymptotic_amplitude(params: &PotentialParams, energy: f64, ell: u32) -> Result<f64> {
    let st = scatter_state(params, energy, ell)?;
    st.propagating()?;
    let ik = Complex64::i() * st.kappa;
    for z in [
        st.mu + ik - st.capital_lambda2,
        st.mu + ik + st.capital_lambda2,
        2.0 * ik,
    ] {
        if non_positive_integer(z).is_some() {
            return Err(Error::Pole(format!("gamma argument {z} is a pole")));
        }
    }
    let log_mod = log_gamma(Complex64::from(2.0 * st.mu))?.re + log_gamma(2.0 * ik)?.re
        - log_gamma(st.mu + ik - st.capital_lambda2)?.re
        - log_gamma(st.mu + ik + st.capital_lambda2)?.re;
    Ok(2.0 * log_mod.exp())
}
