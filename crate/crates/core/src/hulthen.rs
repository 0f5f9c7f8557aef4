//! The D-dimensional Hulthén model: closed-form spectrum, eigenfunctions
//! and normalization constants.
//!
//! With the exponential approximation of the centrifugal barrier the
//! hyperradial equation in `s = exp(-alpha r)` is of hypergeometric type and
//! has the bound states
//!
//! ```text
//! E_n   = -(alpha^2 hbar^2 / 2 mu) eps^2,   eps = (delta - m^2) / (2 m)
//! U(s)  = C_n s^eps (1 - s)^(v/2) P_n^(2 eps, v - 1)(1 - 2 s)
//! ```
//!
//! where `m = n + l + (D-1)/2`, `v = 2l + D - 1` and `delta = 2 Z mu / (alpha hbar^2)`.
//! Radial indices start at `n = 0` (the nodeless ground state).

use crate::error::{domain, Error, Result};
use crate::nu_engine::NUProblem;
use crate::specfun::{jacobi_at_one, jacobi_p, ln_beta, ln_gamma};

/// Default cap on the radial index when enumerating a spectrum.
pub const DEFAULT_N_MAX: u32 = 64;

/// Physical inputs of the potential `V(r) = -Z alpha e^{-alpha r} / (1 - e^{-alpha r})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub z: f64,
    pub alpha: f64,
    pub mu: f64,
    pub hbar: f64,
    pub dim: u32,
}

impl PotentialParams {
    pub fn new(z: f64, alpha: f64, mu: f64, hbar: f64, dim: u32) -> Result<Self> {
        for (name, value) in [("Z", z), ("alpha", alpha), ("mu", mu), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(domain(format!("{name} must be finite and > 0, got {value}")));
            }
        }
        if dim < 1 {
            return Err(domain("dimension must be >= 1"));
        }
        Ok(Self {
            z,
            alpha,
            mu,
            hbar,
            dim,
        })
    }

    /// `hbar = mu = 1`.
    pub fn reduced(z: f64, alpha: f64, dim: u32) -> Result<Self> {
        Self::new(z, alpha, 1.0, 1.0, dim)
    }

    /// `delta = 2 Z mu / (alpha hbar^2)`.
    pub fn delta(&self) -> f64 {
        2.0 * self.z * self.mu / (self.alpha * self.hbar * self.hbar)
    }

    /// Energy unit `alpha^2 hbar^2 / (2 mu)`.
    pub fn energy_scale(&self) -> f64 {
        self.alpha * self.alpha * self.hbar * self.hbar / (2.0 * self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub const fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

/// Dimensionless combinations that parameterize a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub epsilon: f64,
    pub delta: f64,
    pub gamma: f64,
    pub v: f64,
    /// `2n + 2l + D - 1`, the denominator of the spectrum formula.
    pub lambda_denom: f64,
}

/// `v = 2l + D - 1`.
pub fn v_index(l: u32, dim: u32) -> f64 {
    f64::from(2 * l + dim) - 1.0
}

/// Centrifugal coefficient `gamma = (2l+D-1)(2l+D-3)/4`.
pub fn gamma_coeff(l: u32, dim: u32) -> f64 {
    let v = v_index(l, dim);
    v * (v - 2.0) / 4.0
}

/// `m = n + l + (D-1)/2`, half the spectrum denominator.
pub fn m_index(qn: QuantumNumbers, dim: u32) -> f64 {
    f64::from(qn.n + qn.l) + 0.5 * (f64::from(dim) - 1.0)
}

/// Dimensionless parameters for a given (non-positive) energy.
pub fn dimensionless(params: &PotentialParams, qn: QuantumNumbers, energy: f64) -> Result<DimensionlessParams> {
    if energy > 0.0 || energy.is_nan() {
        return Err(domain(format!("scattering energies are out of scope (E = {energy})")));
    }
    let v = v_index(qn.l, params.dim);
    Ok(DimensionlessParams {
        epsilon: (-2.0 * params.mu * energy).sqrt() / (params.alpha * params.hbar),
        delta: params.delta(),
        gamma: gamma_coeff(qn.l, params.dim),
        v,
        lambda_denom: v + 2.0 * f64::from(qn.n),
    })
}

/// Bracket of the spectrum formula, `1/2 + (n(n+2l+D-2) + gamma - delta)/(2n+2l+D-1)`,
/// with `n`, `l` and `D` taken as real numbers. At a bound state this is `-eps`.
pub fn spectrum_bracket(n: f64, l: f64, dim: f64, delta: f64) -> f64 {
    let v = 2.0 * l + dim - 1.0;
    let gamma = v * (v - 2.0) / 4.0;
    0.5 + (n * (n + 2.0 * l + dim - 2.0) + (gamma - delta)) / (2.0 * n + v)
}

/// `eps = (delta - m^2) / (2m)`, algebraically equal to `-spectrum_bracket`.
pub fn compact_epsilon(delta: f64, m: f64) -> f64 {
    (delta - m * m) / (2.0 * m)
}

/// Closed-form three-dimensional spectrum,
/// `-(hbar^2/2mu) [(Z mu/hbar^2)/(n+l+1) - (n+l+1) alpha/2]^2`.
pub fn energy_3d(params: &PotentialParams, qn: QuantumNumbers) -> f64 {
    let k = f64::from(qn.n + qn.l + 1);
    let h2 = params.hbar * params.hbar;
    let b = params.z * params.mu / h2 / k - 0.5 * k * params.alpha;
    -h2 / (2.0 * params.mu) * b * b
}

/// A state of the closed-form spectrum. `energy` and `norm_const` are `None`
/// when no bound state exists for these quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub qn: QuantumNumbers,
    pub epsilon: f64,
    pub energy: Option<f64>,
    pub norm_const: Option<f64>,
}

impl BoundState {
    pub fn exists(&self) -> bool {
        self.energy.is_some()
    }
}

/// `eps` for a state, or `None` when it is not bound.
///
/// Besides `delta > m^2` this needs `m > 0`; the only case with `m = 0` is
/// `D = 1, l = 0, n = 0`, whose formal `eps` is infinite (collapse onto the
/// Coulomb singularity) and which is not a normalizable state.
pub fn bound_epsilon(params: &PotentialParams, qn: QuantumNumbers) -> Option<f64> {
    let m = m_index(qn, params.dim);
    let delta = params.delta();
    (m > 0.0 && delta > m * m).then(|| compact_epsilon(delta, m))
}

/// Closed-form energy of the state `(n, l)`.
pub fn energy(params: &PotentialParams, qn: QuantumNumbers) -> BoundState {
    let m = m_index(qn, params.dim);
    match bound_epsilon(params, qn) {
        Some(eps) => BoundState {
            qn,
            epsilon: eps,
            energy: Some(-params.energy_scale() * eps * eps),
            norm_const: normalization_constant(params, qn).ok(),
        },
        None => BoundState {
            qn,
            epsilon: if m > 0.0 {
                compact_epsilon(params.delta(), m)
            } else {
                f64::INFINITY
            },
            energy: None,
            norm_const: None,
        },
    }
}

/// Number of bound states `n = 0..=n_max` for angular momentum `l`.
pub fn bound_state_count(params: &PotentialParams, l: u32, n_max: u32) -> usize {
    (0..=n_max)
        .filter(|&n| bound_epsilon(params, QuantumNumbers::new(n, l)).is_some())
        .count()
}

/// Interior nodes of `U` for the state. Equals `n`, except for `D = 1, l = 0`
/// where `P_n^{(2eps,-1)}` carries a factor `(1 - s)` and one zero sits at `r = 0`.
pub fn expected_nodes(qn: QuantumNumbers, dim: u32) -> u32 {
    if v_index(qn.l, dim) == 0.0 {
        qn.n.saturating_sub(1)
    } else {
        qn.n
    }
}

/// Coulomb limit `-(mu/2hbar^2) (2Z/(2n+2l+D-1))^2`.
pub fn coulomb_limit_energy(params: &PotentialParams, qn: QuantumNumbers) -> f64 {
    let denom = 2.0 * m_index(qn, params.dim);
    let ratio = 2.0 * params.z / denom;
    -params.mu / (2.0 * params.hbar * params.hbar) * ratio * ratio
}

/// Hulthén potential at `r > 0`.
pub fn potential(r: f64, params: &PotentialParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("potential requires r > 0, got {r}")));
    }
    Ok(potential_at(r, params.z, params.alpha))
}

// e^{-x}/(1-e^{-x}) = 1/expm1(x), accurate at both small and large x
pub(crate) fn potential_at(r: f64, z: f64, alpha: f64) -> f64 {
    -z * alpha / (alpha * r).exp_m1()
}

/// Exponential stand-in for `1/r^2`: `alpha^2 e^{-alpha r} / (1 - e^{-alpha r})^2`.
pub fn centrifugal_approx(r: f64, alpha: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("centrifugal term requires r > 0, got {r}")));
    }
    if !(alpha > 0.0) {
        return Err(domain(format!("alpha must be > 0, got {alpha}")));
    }
    Ok(centrifugal_at(r, alpha))
}

pub(crate) fn centrifugal_at(r: f64, alpha: f64) -> f64 {
    let x = alpha * r;
    alpha * alpha / (x.exp_m1() * -(-x).exp_m1())
}

/// NU problem of the state for a trial `eps`.
pub fn nu_problem(params: &PotentialParams, l: u32, epsilon: f64) -> Result<NUProblem> {
    NUProblem::hulthen(epsilon, params.delta(), gamma_coeff(l, params.dim))
}

/// Normalization constant `C_n > 0` from the terminating double sum
///
/// ```text
/// C_n^2 [Γ(2eps+n+1)/(n! Γ(2eps+1))]^2 S = alpha / B(2eps, v+1)
/// S = sum_k (-n)_k (2eps)_k (n+2eps+v)_k / ((1+2eps+v)_k (1+2eps)_k k!)
///     * sum_j (-n)_j (2eps+k)_j (n+2eps+v)_j / ((1+2eps+v+k)_j (1+2eps)_j j!)
/// ```
pub fn normalization_constant(params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    let eps = bound_epsilon(params, qn).ok_or(Error::NoBoundState {
        n: qn.n,
        l: qn.l,
        dim: params.dim,
    })?;
    let v = v_index(qn.l, params.dim);
    let sum = normalization_sum(qn.n, eps, v);
    if !(sum > 0.0) {
        return Err(Error::Normalization(sum));
    }
    let n = f64::from(qn.n);
    let ln_pref = ln_gamma(2.0 * eps + n + 1.0)? - ln_gamma(n + 1.0)? - ln_gamma(2.0 * eps + 1.0)?;
    let ln_c2 = params.alpha.ln() - ln_beta(2.0 * eps, v + 1.0)? - 2.0 * ln_pref - sum.ln();
    Ok((0.5 * ln_c2).exp())
}

/// The double sum `S` of [`normalization_constant`]; equals 1 for `n = 0`.
///
/// The inner sums cancel heavily (for `0 < k < n` they vanish identically),
/// so they are accumulated in double-double arithmetic.
pub fn normalization_sum(n: u32, eps: f64, v: f64) -> f64 {
    let one = Dd::from(1.0);
    let poch = |a: Dd, k: u32| (0..k).fold(one, |acc, j| acc * (a + f64::from(j)));
    let nf = Dd::from(-f64::from(n));
    let e2 = Dd::from(2.0 * eps);
    let b = e2 + (f64::from(n) + v);
    let c1 = e2 + (1.0 + v);
    let c2 = e2 + 1.0;
    let fact = |k: u32| poch(one, k);
    let mut total = Dd::from(0.0);
    for k in 0..=n {
        let kf = f64::from(k);
        let outer = poch(nf, k) * poch(e2, k) * poch(b, k) / (poch(c1, k) * poch(c2, k) * fact(k));
        let mut inner = Dd::from(0.0);
        for j in 0..=n {
            inner = inner + poch(nf, j) * poch(e2 + kf, j) * poch(b, j) / (poch(c1 + kf, j) * poch(c2, j) * fact(j));
        }
        total = total + outer * inner;
    }
    total.hi + total.lo
}

/// Minimal double-double number (unevaluated sum `hi + lo`).
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn fast_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, rhs.hi);
        let t = Dd::two_sum(self.lo, rhs.lo);
        let u = Dd::fast_two_sum(s.hi, s.lo + t.hi);
        Dd::fast_two_sum(u.hi, u.lo + t.lo)
    }
}

impl std::ops::Add<f64> for Dd {
    type Output = Dd;
    fn add(self, rhs: f64) -> Dd {
        self + Dd::from(rhs)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let p = self.hi * rhs.hi;
        let err = self.hi.mul_add(rhs.hi, -p);
        Dd::fast_two_sum(p, err + (self.hi * rhs.lo + self.lo * rhs.hi))
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self + Dd::from(-1.0) * (rhs * Dd::from(q1));
        let q2 = r.hi / rhs.hi;
        let r = r + Dd::from(-1.0) * (rhs * Dd::from(q2));
        let q3 = r.hi / rhs.hi;
        let q = Dd::fast_two_sum(q1, q2);
        q + q3
    }
}

/// Ground-state normalization `sqrt(alpha / B(2eps, v+1))`.
pub fn ground_state_norm(params: &PotentialParams, l: u32) -> Result<f64> {
    let qn = QuantumNumbers::new(0, l);
    let eps = bound_epsilon(params, qn).ok_or(Error::NoBoundState {
        n: 0,
        l,
        dim: params.dim,
    })?;
    let ln_b = ln_beta(2.0 * eps, v_index(l, params.dim) + 1.0)?;
    Ok((0.5 * (params.alpha.ln() - ln_b)).exp())
}

/// A normalized closed-form eigenfunction ready for repeated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate {
    pub params: PotentialParams,
    pub qn: QuantumNumbers,
    pub epsilon: f64,
    pub energy: f64,
    pub v: f64,
    pub norm_const: f64,
}

impl Eigenstate {
    pub fn new(params: &PotentialParams, qn: QuantumNumbers) -> Result<Self> {
        let eps = bound_epsilon(params, qn).ok_or(Error::NoBoundState {
            n: qn.n,
            l: qn.l,
            dim: params.dim,
        })?;
        Ok(Self {
            params: *params,
            qn,
            epsilon: eps,
            energy: -params.energy_scale() * eps * eps,
            v: v_index(qn.l, params.dim),
            norm_const: normalization_constant(params, qn)?,
        })
    }

    /// `U` in terms of `s` and `1 - s`, both passed so that neither end loses precision.
    fn u_split(&self, s: f64, one_minus_s: f64) -> f64 {
        if s <= 0.0 || one_minus_s <= 0.0 {
            // v = 0 still vanishes at s = 1 through the Jacobi factor
            return 0.0;
        }
        let envelope = (self.epsilon * s.ln() + 0.5 * self.v * one_minus_s.ln()).exp();
        let x = one_minus_s - s;
        self.norm_const * envelope * jacobi_p(self.qn.n, 2.0 * self.epsilon, self.v - 1.0, x)
    }

    /// `U(s)` for `s` in `(0, 1)`.
    pub fn u_of_s(&self, s: f64) -> f64 {
        self.u_split(s, 1.0 - s)
    }

    /// Reduced radial function `U(r)`.
    pub fn u_of_r(&self, r: f64) -> f64 {
        let x = self.params.alpha * r;
        self.u_split((-x).exp(), -(-x).exp_m1())
    }

    /// Hyperradial function `R(r) = r^{-(D-1)/2} U(r)`.
    pub fn big_r_of_r(&self, r: f64) -> f64 {
        self.u_of_r(r) * r.powf(-0.5 * (f64::from(self.params.dim) - 1.0))
    }

    /// Radius beyond which `∫ U^2 dr` is below `tail`.
    pub fn tail_radius(&self, tail: f64) -> f64 {
        let rate = 2.0 * self.epsilon * self.params.alpha;
        let amp = self.norm_const * jacobi_at_one(self.qn.n, 2.0 * self.epsilon);
        let r_tail = ((amp * amp / (rate * tail)).max(1.0)).ln() / rate;
        r_tail.max(10.0 / rate)
    }
}

/// `U(s)` of the normalized eigenfunction, `s = exp(-alpha r)` in `(0, 1)`.
pub fn wavefunction_u(s: f64, params: &PotentialParams, qn: QuantumNumbers) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain(format!("s must lie in (0, 1), got {s}")));
    }
    Ok(Eigenstate::new(params, qn)?.u_of_s(s))
}

/// Uniform hyperradial grid `r_i = r_start + i (r_end - r_start)/(points - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_start: f64,
    pub r_end: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(r_start: f64, r_end: f64, points: usize) -> Result<Self> {
        if !(r_start > 0.0 && r_end > r_start && r_end.is_finite()) || points < 2 {
            return Err(domain(format!(
                "grid needs 0 < r_start < r_end and at least 2 points, got [{r_start}, {r_end}] x {points}"
            )));
        }
        Ok(Self {
            r_start,
            r_end,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.r_end - self.r_start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.r_start + step * i as f64)
            .collect()
    }
}

/// Sampled eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSamples {
    pub r_values: Vec<f64>,
    pub u_values: Vec<f64>,
    pub big_r_values: Vec<f64>,
    pub grid: GridSpec,
    pub epsilon: f64,
    pub norm_const: f64,
}

impl RadialSamples {
    /// Sign changes of `U` across the grid.
    pub fn node_count(&self) -> usize {
        count_sign_changes(&self.u_values)
    }
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &u in values {
        if u == 0.0 {
            continue;
        }
        if last != 0.0 && (u > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = u;
    }
    count
}

/// `U` and `R` of the normalized eigenfunction on a grid.
pub fn wavefunction_samples(params: &PotentialParams, qn: QuantumNumbers, grid: &GridSpec) -> Result<RadialSamples> {
    let state = Eigenstate::new(params, qn)?;
    let r_values = grid.values();
    let exponent = -0.5 * (f64::from(params.dim) - 1.0);
    let u_values: Vec<f64> = r_values.iter().map(|&r| state.u_of_r(r)).collect();
    let big_r_values = r_values
        .iter()
        .zip(&u_values)
        .map(|(&r, &u)| u * r.powf(exponent))
        .collect();
    Ok(RadialSamples {
        r_values,
        u_values,
        big_r_values,
        grid: *grid,
        epsilon: state.epsilon,
        norm_const: state.norm_const,
    })
}
