//! Hellmann-Feynman expectation values for the closed-form states.
//!
//! Differentiating the closed-form energy with respect to `l` (treated as
//! continuous) and `Z` gives `<r^-2>` and `<V>`. Both are exact for the
//! Hamiltonian the eigenfunctions actually solve, i.e. with the exponential
//! centrifugal term, so the `<r^-2>` value is the expectation of
//! `alpha^2 e^{-alpha r}/(1 - e^{-alpha r})^2`. The expectation of the true
//! `1/r^2` is available by quadrature as a diagnostic.

use crate::error::{domain, Error, Result};
use crate::hulthen::{bound_epsilon, centrifugal_at, gamma_coeff, m_index, potential_at, Eigenstate, PotentialParams, QuantumNumbers};
use crate::oracle::{adaptive_quad_points, radial_breakpoints};

/// Absolute tolerance of [`quadrature_expect`].
pub const QUAD_TOL: f64 = 1e-10;
/// Neglected tail mass of `|U|^2` when truncating the radial integral.
pub const QUAD_TAIL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationReport {
    pub qn: QuantumNumbers,
    pub energy: f64,
    /// `None` when `2l + D - 2 <= 0`, where the `l`-derivative does not
    /// determine `<r^-2>`.
    pub inv_r2_hft: Option<f64>,
    pub v_hft: f64,
    pub t_value: f64,
    /// `None` for `D = 2, l = 0`, where `U^2 ~ r` and both `r^-2`
    /// integrals diverge logarithmically at the origin.
    pub inv_r2_quad_approx: Option<f64>,
    pub inv_r2_quad_exact: Option<f64>,
    pub v_quad: f64,
}

fn require(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    bound_epsilon(params, qn).ok_or(Error::NoBoundState {
        n: qn.n,
        l: qn.l,
        dim: params.dim,
    })
}

/// Capital `Λ = 2n + 2l + D - 1`.
fn big_lambda(qn: QuantumNumbers, dim: u32) -> f64 {
    2.0 * m_index(qn, dim)
}

/// `dE/dl = alpha^2 hbar^2 (16 delta^2 - Λ^4) / (8 mu Λ^3)`.
pub fn de_dl(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    require(params, qn)?;
    let lam = big_lambda(qn, params.dim);
    let delta = params.delta();
    let a2h2 = params.alpha * params.alpha * params.hbar * params.hbar;
    Ok(a2h2 * (16.0 * delta * delta - lam.powi(4)) / (8.0 * params.mu * lam.powi(3)))
}

/// `<alpha^2 e^{-alpha r}/(1-e^{-alpha r})^2> = (alpha^2/4)(16 delta^2 - Λ^4)/((2l+D-2) Λ^3)`.
///
/// Undefined for `2l + D - 2 <= 0` (`l = 0` with `D = 1` or `2`).
pub fn inv_r2_expect(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    require(params, qn)?;
    let c = 2.0 * f64::from(qn.l) + f64::from(params.dim) - 2.0;
    if c <= 0.0 {
        return Err(domain(format!(
            "<r^-2> from dE/dl needs 2l + D - 2 > 0 (l = {}, D = {})",
            qn.l, params.dim
        )));
    }
    let lam = big_lambda(qn, params.dim);
    let delta = params.delta();
    let a2 = params.alpha * params.alpha;
    Ok(0.25 * a2 * (16.0 * delta * delta - lam.powi(4)) / (c * lam.powi(3)))
}

/// `<V> = (2 alpha Z / Λ) [1/2 + (n(n+2l+D-2) + gamma - delta)/Λ]`, which
/// simplifies to `-2 alpha Z eps / Λ`.
pub fn potential_expect(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    require(params, qn)?;
    let lam = big_lambda(qn, params.dim);
    let n = f64::from(qn.n);
    let shift = n * (n + 2.0 * f64::from(qn.l) + f64::from(params.dim) - 2.0);
    let bracket = 0.5 + (shift + gamma_coeff(qn.l, params.dim) - params.delta()) / lam;
    Ok(2.0 * params.alpha * params.z / lam * bracket)
}

/// `<T> = E - <V>`.
pub fn kinetic_expect(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    let eps = require(params, qn)?;
    let energy = -params.energy_scale() * eps * eps;
    Ok(energy - potential_expect(params, qn)?)
}

/// `∫_0^∞ f(r) |U(r)|^2 dr` for the normalized state.
pub fn quadrature_expect<F: Fn(f64) -> f64>(f: F, params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    let state = Eigenstate::new(params, qn)?;
    state_quadrature(&state, f)
}

fn state_quadrature<F: Fn(f64) -> f64>(state: &Eigenstate, f: F) -> Result<f64> {
    let r_max = state.tail_radius(QUAD_TAIL);
    adaptive_quad_points(
        |r| {
            let u = state.u_of_r(r);
            f(r) * u * u
        },
        &radial_breakpoints(r_max),
        QUAD_TOL,
    )
}

/// All closed-form and quadrature expectation values of one state.
pub fn expectation_report(params: &PotentialParams, qn: QuantumNumbers) -> Result<ExpectationReport> {
    let state = Eigenstate::new(params, qn)?;
    let v_hft = potential_expect(params, qn)?;
    let inv_r2_hft = match inv_r2_expect(params, qn) {
        Ok(v) => Some(v),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    let (z, alpha) = (params.z, params.alpha);
    let finite_r2 = state.v != 1.0;
    let r2_quad = |f: &dyn Fn(f64) -> f64| -> Result<Option<f64>> {
        if finite_r2 {
            state_quadrature(&state, f).map(Some)
        } else {
            Ok(None)
        }
    };
    Ok(ExpectationReport {
        qn,
        energy: state.energy,
        inv_r2_hft,
        v_hft,
        t_value: state.energy - v_hft,
        inv_r2_quad_approx: r2_quad(&|r| centrifugal_at(r, alpha))?,
        inv_r2_quad_exact: r2_quad(&|r| 1.0 / (r * r))?,
        v_quad: state_quadrature(&state, |r| potential_at(r, z, alpha))?,
    })
}
