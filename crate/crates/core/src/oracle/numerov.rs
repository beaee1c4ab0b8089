//! Numerov integration of the radial equation on a logarithmic grid.
//!
//! With r = eˣ and u(r) = e^{x/2} y(x) the radial equation
//! u'' = [s(V − E) + W(r)] u becomes y'' = [1/4 + r²(s(V − E) + W)] y, which
//! is regular at the origin and resolves both the Coulomb cusp and the long
//! tail with a few ten thousand points. W is ℓ(ℓ+1)/r² or its exponential
//! stand-in, depending on the scheme.
//!
//! Eigenvalues are found by bisection on the node count of the outward
//! solution. Integration stops once the solution has decayed through a WKB
//! exponent of [`STOP_EXPONENT`] past the outer turning point, so the box
//! edge never enters the count.

use num_complex::Complex64;
use serde::Serialize;

use crate::bound::{QuantumNumbers, Source, SpectrumEntry};
use crate::error::{Error, Result};
use crate::model::{ApproxScheme, PotentialParams, Variant};

/// WKB exponent past the outer turning point after which node counting stops.
pub const STOP_EXPONENT: f64 = 40.0;
/// Minimum exponent the box must contain at the converged eigenvalue.
pub const REQUIRED_DECAY: f64 = 18.0;
/// Phase fits are rejected above this relative waveform residual.
/// Largest grid the scattering integration will allocate.
pub const MAX_GRID_POINTS: f64 = 2e7;
pub const FIT_RESIDUAL_LIMIT: f64 = 1e-2;

const MAX_R_MAX: f64 = 1e7;
const RESCALE: f64 = 1e200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Inner end of the grid.
    pub r_min: f64,
    /// Outer end; `None` starts from 50 and doubles as needed.
    pub r_max: Option<f64>,
    /// Step in x = ln r.
    pub step: f64,
    pub energy_bracket: Option<(f64, f64)>,
    /// Absolute bisection width at which the search stops.
    pub tolerance: f64,
    /// Overrides the node count taken from the quantum numbers.
    pub node_target: Option<u32>,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-7,
            r_max: None,
            step: 2e-3,
            energy_bracket: None,
            tolerance: 1e-12,
            node_target: None,
            max_iterations: 200,
        }
    }
}

impl SolverConfig {
    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::domain(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::domain(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.r_min > 0.0) {
            return Err(Error::domain(format!(
                "r_min must be positive, got {}",
                self.r_min
            )));
        }
        if let Some(r_max) = self.r_max {
            if !(r_max > self.r_min) {
                return Err(Error::domain(format!("r_max = {r_max} must exceed r_min")));
            }
            if (r_max / self.r_min).ln() / self.step < 1e3 {
                return Err(Error::domain("grid must contain at least 1000 steps"));
            }
        }
        if let Some((lo, hi)) = self.energy_bracket {
            if !(lo < hi) {
                return Err(Error::domain(format!("empty energy bracket ({lo}, {hi})")));
            }
        }
        Ok(())
    }
}

/// Samples of u(r).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialTrace {
    pub r: Vec<f64>,
    pub u: Vec<f64>,
}

impl RadialTrace {
    /// Sign changes among samples with |u| above `floor`·max|u|.
    pub fn sign_changes(&self, floor: f64) -> usize {
        let cut = floor * self.u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut last = 0.0;
        let mut changes = 0;
        for &v in &self.u {
            if v.abs() <= cut {
                continue;
            }
            if last != 0.0 && v * last < 0.0 {
                changes += 1;
            }
            last = v;
        }
        changes
    }
}

/// r²(sV + W) evaluated once per grid; f(x) = 1/4 + static[i] − r²s·E.
struct Grid {
    x0: f64,
    h: f64,
    r: Vec<f64>,
    stat: Vec<f64>,
    r2s: Vec<f64>,
}

fn check_scheme(params: &PotentialParams, scheme: ApproxScheme) -> Result<()> {
    params.validate()?;
    if scheme.approximates_potential() && params.lambda <= 0.0 {
        return Err(Error::domain(format!(
            "scheme {} requires lambda > 0",
            scheme.label()
        )));
    }
    Ok(())
}

impl Grid {
    fn new(
        params: &PotentialParams,
        ell: u32,
        scheme: ApproxScheme,
        r_min: f64,
        r_max: f64,
        h: f64,
    ) -> Self {
        let x0 = r_min.ln();
        let points = ((r_max.ln() - x0) / h).ceil() as usize + 1;
        let s = params.kinetic_scale();
        let lam = params.lambda;
        let l = ell as f64 * (ell as f64 + 1.0);
        let mut r = Vec::with_capacity(points);
        let mut stat = Vec::with_capacity(points);
        let mut r2s = Vec::with_capacity(points);
        for i in 0..points {
            let ri = (x0 + i as f64 * h).exp();
            let screen = -params.a + params.b * (-lam * ri).exp();
            // λr/(1 − e^{−λr}), the ratio of each stand-in to the exact 1/r power.
            let ratio = if lam > 0.0 {
                lam * ri / -(-lam * ri).exp_m1()
            } else {
                1.0
            };
            let potential = match scheme {
                ApproxScheme::ExactCentrifugal => s * ri * screen,
                _ => s * ri * screen * ratio,
            };
            let centrifugal = if scheme.approximates_centrifugal() {
                l * ratio * ratio
            } else {
                l
            };
            r.push(ri);
            stat.push(potential + centrifugal);
            r2s.push(s * ri * ri);
        }
        Self {
            x0,
            h,
            r,
            stat,
            r2s,
        }
    }

    fn f(&self, i: usize, e: f64) -> f64 {
        0.25 + self.stat[i] - self.r2s[i] * e
    }
}

/// Outcome of one outward integration.
struct Shot {
    nodes: u32,
    /// Largest decay exponent accumulated past a classically allowed region.
    decay: f64,
}

fn start_values(grid: &Grid, ell: u32, log_scale: f64) -> (f64, f64) {
    let p = ell as f64 + 0.5;
    let x1 = grid.x0 + grid.h;
    ((log_scale + p * grid.x0).exp(), (log_scale + p * x1).exp())
}

fn shoot(grid: &Grid, ell: u32, e: f64, mut trace: Option<&mut Vec<f64>>) -> Shot {
    let h2 = grid.h * grid.h / 12.0;
    let n = grid.r.len();
    let (mut y_prev, mut y) = start_values(grid, ell, 0.0);
    let mut f_prev = grid.f(0, e);
    let mut f_cur = grid.f(1, e);
    let mut nodes = 0u32;
    let mut decay = 0.0f64;
    let mut best_decay = 0.0f64;
    let mut seen_allowed = false;
    let mut scale = 1.0f64;
    if let Some(t) = trace.as_deref_mut() {
        t.push(y_prev);
        t.push(y);
    }
    for i in 1..n - 1 {
        let f_next = grid.f(i + 1, e);
        let w_prev = (1.0 - h2 * f_prev) * y_prev;
        let w = (1.0 - h2 * f_cur) * y;
        let w_next = 2.0 * w - w_prev + 12.0 * h2 * f_cur * y;
        let mut y_next = w_next / (1.0 - h2 * f_next);
        if y_next * y < 0.0 {
            nodes += 1;
        }
        let local = f_next - 0.25;
        if local <= 0.0 {
            seen_allowed = true;
            decay = 0.0;
        } else if seen_allowed {
            decay += local.sqrt() * grid.h;
            best_decay = best_decay.max(decay);
        }
        if y_next.abs() > RESCALE {
            y_next /= RESCALE;
            y /= RESCALE;
            scale *= RESCALE;
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(y_next * scale);
        }
        y_prev = y;
        y = y_next;
        f_prev = f_cur;
        f_cur = f_next;
        // Deep in a forbidden region the step no longer resolves the growth
        // and the recursion can flip sign spuriously.
        if decay >= STOP_EXPONENT {
            break;
        }
        if f_next > 0.0 && h2 * f_next > 0.5 {
            if seen_allowed {
                best_decay = best_decay.max(STOP_EXPONENT);
            }
            break;
        }
    }
    Shot {
        nodes,
        decay: best_decay,
    }
}

/// Continuum threshold lim_{r→∞} of the effective potential.
pub fn threshold(params: &PotentialParams, ell: u32, scheme: ApproxScheme) -> f64 {
    let l = ell as f64 * (ell as f64 + 1.0);
    match scheme {
        ApproxScheme::ExactCentrifugal => 0.0,
        ApproxScheme::InverseXExp => -params.a * params.lambda,
        ApproxScheme::PekerisCentrifugal => {
            -params.a * params.lambda + l * params.lambda * params.lambda / params.kinetic_scale()
        }
    }
}

/// Node count of the outward solution at energy `e`.
pub fn count_nodes(
    params: &PotentialParams,
    ell: u32,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
    e: f64,
) -> Result<u32> {
    check_scheme(params, scheme)?;
    cfg.validate()?;
    let grid = Grid::new(
        params,
        ell,
        scheme,
        cfg.r_min,
        cfg.r_max.unwrap_or(50.0),
        cfg.step,
    );
    Ok(shoot(&grid, ell, e, None).nodes)
}

struct Located {
    energy: f64,
    /// Lower end of the final bracket; the solution there has exactly the
    /// target node count.
    below: f64,
    grid: Grid,
}

/// Returns the final bracket (lo, hi) with nodes(lo) ≤ target < nodes(hi).
fn bisect(
    grid: &Grid,
    ell: u32,
    target: u32,
    mut lo: f64,
    mut hi: f64,
    cfg: &SolverConfig,
) -> Result<(f64, f64)> {
    for _ in 0..cfg.max_iterations {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= cfg.tolerance || mid <= lo || mid >= hi {
            return Ok((lo, hi));
        }
        if shoot(grid, ell, mid, None).nodes > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence(format!(
        "bisection did not reach width {} within {} iterations",
        cfg.tolerance, cfg.max_iterations
    )))
}

fn locate_in(
    grid: &Grid,
    ell: u32,
    target: u32,
    cfg: &SolverConfig,
    top: f64,
) -> Result<Option<(f64, f64)>> {
    if let Some((lo, hi)) = cfg.energy_bracket {
        let nodes_lo = shoot(grid, ell, lo, None).nodes;
        let nodes_hi = shoot(grid, ell, hi, None).nodes;
        if nodes_lo > target || nodes_hi <= target {
            return Err(Error::BracketMiss(format!(
                "bracket ({lo}, {hi}) holds nodes {nodes_lo}..{nodes_hi}, need a level with {target}"
            )));
        }
        // Coarse scan to the sub-interval where the count first exceeds the target.
        let (mut a, mut b) = (lo, hi);
        let steps = 16;
        for k in 1..steps {
            let e = lo + (hi - lo) * k as f64 / steps as f64;
            if shoot(grid, ell, e, None).nodes > target {
                b = e;
                break;
            }
            a = e;
        }
        return bisect(grid, ell, target, a, b, cfg).map(Some);
    }
    if shoot(grid, ell, top, None).nodes <= target {
        return Ok(None);
    }
    let mut width = 1.0f64;
    let mut lo = top - width;
    let mut guard = 0;
    while shoot(grid, ell, lo, None).nodes > target {
        width *= 2.0;
        lo = top - width;
        guard += 1;
        if guard > 200 {
            return Err(Error::NonConvergence("no lower energy bound found".into()));
        }
    }
    bisect(grid, ell, target, lo, top, cfg).map(Some)
}

fn locate(
    params: &PotentialParams,
    qn: QuantumNumbers,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
) -> Result<Located> {
    check_scheme(params, scheme)?;
    cfg.validate()?;
    let target = cfg.node_target.unwrap_or(qn.n);
    let top = threshold(params, qn.ell, scheme);
    let mut r_max = cfg.r_max.unwrap_or(50.0);
    loop {
        let grid = Grid::new(params, qn.ell, scheme, cfg.r_min, r_max, cfg.step);
        let found = locate_in(&grid, qn.ell, target, cfg, top)?;
        if let Some((below, above)) = found {
            let energy = 0.5 * (below + above);
            let decay = shoot(&grid, qn.ell, energy, None).decay;
            if decay >= REQUIRED_DECAY || cfg.r_max.is_some() {
                return Ok(Located {
                    energy,
                    below,
                    grid,
                });
            }
        } else if cfg.r_max.is_some() {
            return Err(Error::BracketMiss(format!(
                "no level with {target} nodes below the threshold {top} inside r_max = {r_max}"
            )));
        }
        r_max *= 2.0;
        if r_max > MAX_R_MAX {
            return Err(Error::BracketMiss(format!(
                "no level with {target} nodes below the threshold {top} for r_max up to {MAX_R_MAX}"
            )));
        }
    }
}

/// Eigenvalue of the radial equation with `qn.n` interior nodes.
pub fn numerov_eigen(
    params: &PotentialParams,
    qn: QuantumNumbers,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
) -> Result<SpectrumEntry> {
    let located = locate(params, qn, scheme, cfg)?;
    Ok(entry(located.energy, qn))
}

fn entry(energy: f64, qn: QuantumNumbers) -> SpectrumEntry {
    SpectrumEntry {
        energy: Complex64::from(energy),
        variant: Variant::RadialHermitian,
        qn,
        source: Source::Oracle,
        normalizable: Some(true),
    }
}

/// Eigenvalue together with the (unnormalized) eigenfunction u(r), cut at
/// its smallest magnitude past the outer turning point, before the
/// unavoidable divergence of the outward solution.
pub fn numerov_eigenstate(
    params: &PotentialParams,
    qn: QuantumNumbers,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
) -> Result<(SpectrumEntry, RadialTrace)> {
    let located = locate(params, qn, scheme, cfg)?;
    let grid = &located.grid;
    let mut ys = Vec::new();
    shoot(grid, qn.ell, located.below, Some(&mut ys));
    let turning = (0..ys.len())
        .rev()
        .find(|&i| grid.f(i, located.below) <= 0.25)
        .unwrap_or(0);
    let u: Vec<f64> = ys.iter().zip(&grid.r).map(|(y, r)| y * r.sqrt()).collect();
    let cut = (turning..u.len())
        .min_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))
        .map_or(u.len(), |i| i + 1);
    let r = grid.r[..cut].to_vec();
    let u = u[..cut].to_vec();
    Ok((entry(located.energy, qn), RadialTrace { r, u }))
}

/// Result of the asymptotic least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseFit {
    /// Phase reduced into (−π/2, π/2].
    pub delta: f64,
    /// Amplitude of the wave scaled to (λr)^{ℓ+1} at the origin.
    pub amplitude: f64,
    pub wavenumber: f64,
    /// Relative RMS misfit over the fit window.
    pub residual: f64,
}

/// Asymptotic wavenumber for `scheme`, or an error if the channel is closed.
pub fn asymptotic_wavenumber(
    params: &PotentialParams,
    energy: f64,
    ell: u32,
    scheme: ApproxScheme,
) -> Result<f64> {
    let k2 = params.kinetic_scale() * (energy - threshold(params, ell, scheme));
    if !(k2 > 0.0) {
        return Err(Error::Evanescent(format!(
            "k^2 = {k2} <= 0 at E = {energy}"
        )));
    }
    Ok(k2.sqrt())
}

struct Window {
    start: f64,
    end: f64,
}

fn scattering_window(params: &PotentialParams, k: f64) -> Window {
    let wavelength = 2.0 * std::f64::consts::PI / k;
    let start = (45.0 / params.lambda).max(50.0 * wavelength);
    Window {
        start,
        end: start + 10.0 * wavelength,
    }
}

fn check_phase_scheme(params: &PotentialParams, scheme: ApproxScheme, energy: f64) -> Result<()> {
    check_scheme(params, scheme)?;
    if params.lambda <= 0.0 {
        return Err(Error::domain("phase extraction requires lambda > 0"));
    }
    if scheme == ApproxScheme::ExactCentrifugal && params.a != 0.0 {
        return Err(Error::domain(
            "the exact scheme with a != 0 has a Coulomb tail and no constant phase shift",
        ));
    }
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::domain(format!(
            "scattering energy must be positive, got {energy}"
        )));
    }
    Ok(())
}

/// Regular scattering solution, scaled to (λr)^{ℓ+1} near the origin, on a
/// log grid fine enough to resolve the asymptotic oscillation out to `r_end`.
pub fn scattering_wave(
    params: &PotentialParams,
    energy: f64,
    ell: u32,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
    r_end: f64,
) -> Result<RadialTrace> {
    check_phase_scheme(params, scheme, energy)?;
    cfg.validate()?;
    let k = asymptotic_wavenumber(params, energy, ell, scheme)?;
    let h = cfg.step.min(0.05 / (r_end * k));
    let points = (r_end / cfg.r_min).ln() / h;
    if !(points <= MAX_GRID_POINTS) {
        return Err(Error::NonConvergence(format!(
            "resolving the asymptotic wave needs {points:.3e} grid points (limit {MAX_GRID_POINTS:.0e})"
        )));
    }
    let grid = Grid::new(params, ell, scheme, cfg.r_min, r_end, h);
    let h2 = h * h / 12.0;
    let log_scale = (ell as f64 + 1.0) * params.lambda.ln();
    let (mut y_prev, mut y) = start_values(&grid, ell, log_scale);
    let mut u = Vec::with_capacity(grid.r.len());
    u.push(y_prev * grid.r[0].sqrt());
    u.push(y * grid.r[1].sqrt());
    for i in 1..grid.r.len() - 1 {
        let (fp, fc, fnx) = (
            grid.f(i - 1, energy),
            grid.f(i, energy),
            grid.f(i + 1, energy),
        );
        let w_prev = (1.0 - h2 * fp) * y_prev;
        let w = (1.0 - h2 * fc) * y;
        let y_next = (2.0 * w - w_prev + 12.0 * h2 * fc * y) / (1.0 - h2 * fnx);
        if !y_next.is_finite() {
            return Err(Error::NonConvergence(
                "scattering solution overflowed".into(),
            ));
        }
        u.push(y_next * grid.r[i + 1].sqrt());
        y_prev = y;
        y = y_next;
    }
    Ok(RadialTrace { r: grid.r, u })
}

/// Riccati–Bessel ĵ_ℓ(x) and n̂_ℓ(x) (ĵ₀ = sin x, n̂₀ = −cos x), upward
/// recurrence; valid for x well above ℓ.
pub fn riccati_bessel(ell: u32, x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let (mut j0, mut n0) = (s, -c);
    if ell == 0 {
        return (j0, n0);
    }
    let (mut j1, mut n1) = (s / x - c, -c / x - s);
    for l in 1..ell {
        let f = (2 * l + 1) as f64 / x;
        let (j2, n2) = (f * j1 - j0, f * n1 - n0);
        j0 = j1;
        n0 = n1;
        j1 = j2;
        n1 = n2;
    }
    (j1, n1)
}

/// Integrates outward and fits the last ten asymptotic wavelengths.
///
/// The approximated-centrifugal scheme tends to a constant effective
/// potential, so u ≈ c₁ sin kr + c₂ cos kr and δ = atan2(c₂, c₁) + πℓ/2. The
/// other schemes keep ℓ(ℓ+1)/r² and fit c₁ĵ_ℓ(kr) − c₂n̂_ℓ(kr), δ = atan2(c₂, c₁).
pub fn numeric_phase(
    params: &PotentialParams,
    energy: f64,
    ell: u32,
    scheme: ApproxScheme,
    cfg: &SolverConfig,
) -> Result<PhaseFit> {
    check_phase_scheme(params, scheme, energy)?;
    let k = asymptotic_wavenumber(params, energy, ell, scheme)?;
    let window = scattering_wave_window(params, k, cfg);
    let trace = scattering_wave(params, energy, ell, scheme, cfg, window.end)?;
    let basis = |r: f64| -> (f64, f64) {
        match scheme {
            ApproxScheme::PekerisCentrifugal => (k * r).sin_cos(),
            _ => {
                let (j, n) = riccati_bessel(ell, k * r);
                (j, -n)
            }
        }
    };
    let (mut s11, mut s12, mut s22, mut b1, mut b2, mut uu) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let samples: Vec<(f64, f64)> = trace
        .r
        .iter()
        .zip(&trace.u)
        .filter(|(r, _)| **r >= window.start)
        .map(|(r, u)| (*r, *u))
        .collect();
    for &(r, u) in &samples {
        let (p, q) = basis(r);
        s11 += p * p;
        s12 += p * q;
        s22 += q * q;
        b1 += p * u;
        b2 += q * u;
        uu += u * u;
    }
    let det = s11 * s22 - s12 * s12;
    if samples.len() < 20 || det <= 0.0 || uu <= 0.0 {
        return Err(Error::NonConvergence("degenerate phase-fit window".into()));
    }
    let c1 = (s22 * b1 - s12 * b2) / det;
    let c2 = (s11 * b2 - s12 * b1) / det;
    let misfit: f64 = samples
        .iter()
        .map(|&(r, u)| {
            let (p, q) = basis(r);
            (u - c1 * p - c2 * q).powi(2)
        })
        .sum();
    let residual = (misfit / uu).sqrt();
    if residual > FIT_RESIDUAL_LIMIT {
        return Err(Error::FitResidual {
            residual,
            limit: FIT_RESIDUAL_LIMIT,
        });
    }
    let phi = c2.atan2(c1);
    let raw = match scheme {
        ApproxScheme::PekerisCentrifugal => phi + std::f64::consts::FRAC_PI_2 * ell as f64,
        _ => phi,
    };
    Ok(PhaseFit {
        delta: crate::scatter::reduce_mod_pi(raw).0,
        amplitude: c1.hypot(c2),
        wavenumber: k,
        residual,
    })
}

fn scattering_wave_window(params: &PotentialParams, k: f64, cfg: &SolverConfig) -> Window {
    let auto = scattering_window(params, k);
    match cfg.r_max {
        Some(r_max) if r_max > auto.end - auto.start => Window {
            start: r_max - (auto.end - auto.start),
            end: r_max,
        },
        _ => auto,
    }
}
