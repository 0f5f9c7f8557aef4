//! Shooting solver for the exact reduced hyperradial equation
//!
//! ```text
//! U'' = [ g / r^2 + (2 mu / hbar^2) (V(r) - E) ] U,   g = (2l+D-1)(2l+D-3)/4
//! ```
//!
//! with the true `1/r^2` barrier. The equation is integrated outward with
//! Numerov's method on a logarithmic grid (`r = e^x`, `U = r^{1/2} w`), which
//! turns it into `w'' = [g + 1/4 + (2 mu/hbar^2) r^2 (V - E)] w`.
//!
//! Eigenvalues are located by bisection on the node count of the solution
//! over `(r_min, r_max]`: by Sturm's oscillation theorem the number of nodes
//! at energy `E` equals the number of eigenvalues of the box problem below
//! `E`, so the state with `k` nodes is the point where the count steps from
//! `k` to `k + 1`.

use crate::error::{domain, Error, Result};
use crate::hulthen::{self, expected_nodes, PotentialParams, QuantumNumbers};

/// Default number of Numerov steps.
pub const DEFAULT_STEPS: usize = 40_000;
/// Default energy tolerance (reduced units).
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default bisection cap.
pub const DEFAULT_MAX_ITER: usize = 200;

const RESCALE_AT: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub step_count: usize,
    /// `(E_lo, E_hi)` with `E_lo < E_hi <= 0`.
    pub energy_bracket: (f64, f64),
    /// Bisection stops once the bracket is narrower than this, both in
    /// absolute terms and relative to `|E|`.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_max > self.r_min && self.r_max.is_finite()) {
            return Err(domain(format!(
                "need 0 < r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.step_count < 16 {
            return Err(domain("step_count must be at least 16"));
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi && hi <= 0.0 && lo.is_finite()) {
            return Err(domain(format!("energy bracket must satisfy E_lo < E_hi <= 0, got ({lo}, {hi})")));
        }
        if !(self.tolerance > 0.0) {
            return Err(domain("tolerance must be > 0"));
        }
        Ok(())
    }

    /// Defaults built around the closed-form energy of `qn`: bracket at
    /// ±20 % of it, `r_min = 1e-6 / alpha`, `r_max = max(40/kappa, 20/alpha)`.
    pub fn for_state(params: &PotentialParams, qn: QuantumNumbers) -> Result<Self> {
        let st = hulthen::energy(params, qn);
        let e = st.energy.ok_or(Error::NoBoundState {
            n: qn.n,
            l: qn.l,
            dim: params.dim,
        })?;
        let kappa = (-2.0 * params.mu * e).sqrt() / params.hbar;
        let bohr = params.hbar * params.hbar / (params.mu * params.z);
        Ok(Self {
            r_min: 1e-6 * (1.0 / params.alpha).min(bohr),
            r_max: (40.0 / kappa).max(20.0 / params.alpha),
            step_count: DEFAULT_STEPS,
            energy_bracket: (1.2 * e, 0.8 * e),
            tolerance: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_steps(mut self, step_count: usize) -> Self {
        self.step_count = step_count;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub energy: f64,
    pub node_count: u32,
    pub converged: bool,
    /// Width of the final energy bracket around the box eigenvalue.
    pub residual: f64,
}

/// A reduced radial equation with an arbitrary potential whose small-`r`
/// behaviour is at most Coulombic, `V ~ -coulomb_charge / r`.
pub struct RadialProblem<V> {
    pub mu: f64,
    pub hbar: f64,
    /// Coefficient of the exact `1/r^2` term.
    pub centrifugal: f64,
    pub coulomb_charge: f64,
    pub potential: V,
}

impl<V: Fn(f64) -> f64> RadialProblem<V> {
    /// Larger root of `p (p - 1) = centrifugal`: `U ~ r^p` at the origin.
    pub fn regular_exponent(&self) -> f64 {
        0.5 + (0.25 + self.centrifugal).sqrt()
    }

    fn mass_factor(&self) -> f64 {
        2.0 * self.mu / (self.hbar * self.hbar)
    }

    fn grid(&self, r_min: f64, r_max: f64, steps: usize) -> LogGrid {
        let x0 = r_min.ln();
        let h = (r_max.ln() - x0) / steps as f64;
        let m = self.mass_factor();
        let shift = self.centrifugal + 0.25;
        let mut r2 = Vec::with_capacity(steps + 1);
        let mut base = Vec::with_capacity(steps + 1);
        for i in 0..=steps {
            let r = (x0 + h * i as f64).exp();
            r2.push(r * r);
            base.push(shift + m * r * r * (self.potential)(r));
        }
        LogGrid {
            r_min,
            h,
            r2,
            base,
            mass_factor: m,
            exponent: self.regular_exponent(),
            first_order: -self.mu * self.coulomb_charge / (self.hbar * self.hbar * self.regular_exponent()),
        }
    }

    /// Energy of the bound state with `target_nodes` interior nodes.
    pub fn solve(&self, target_nodes: u32, cfg: &ShootingConfig) -> Result<OracleResult> {
        cfg.validate()?;
        let grid = self.grid(cfg.r_min, cfg.r_max, cfg.step_count);
        let (mut lo, mut hi) = cfg.energy_bracket;
        grid.check_resolution(lo)?;
        let nodes_lo = grid.shoot(lo).nodes;
        let nodes_hi = grid.shoot(hi).nodes;
        if !(nodes_lo <= target_nodes && nodes_hi > target_nodes) {
            return Err(Error::BracketNotStraddling {
                lo,
                hi,
                target: target_nodes,
                nodes_lo,
                nodes_hi,
            });
        }
        let mut converged = false;
        for _ in 0..cfg.max_iter {
            let mid = 0.5 * (lo + hi);
            let width = hi - lo;
            if width <= cfg.tolerance.min(cfg.tolerance * mid.abs()) || mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if grid.shoot(mid).nodes <= target_nodes {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if !converged {
            return Err(Error::NotConverged {
                max_iter: cfg.max_iter,
                width: hi - lo,
            });
        }
        let found = grid.shoot(lo).nodes;
        if found != target_nodes {
            return Err(Error::NodeMismatch {
                expected: target_nodes,
                found,
            });
        }
        Ok(OracleResult {
            energy: 0.5 * (lo + hi),
            node_count: found,
            converged,
            residual: hi - lo,
        })
    }

    /// Number of bound states: nodes of the zero-energy solution out to
    /// `r_max`, plus one if its power-law tail still turns over beyond.
    ///
    /// `r_max` must lie where the potential is negligible.
    pub fn count_bound_states(&self, r_min: f64, r_max: f64, steps: usize) -> Result<u32> {
        if !(r_min > 0.0 && r_max > r_min) {
            return Err(domain("need 0 < r_min < r_max"));
        }
        let grid = self.grid(r_min, r_max, steps);
        let shot = grid.shoot(0.0);
        // U'/U r = 1/2 + w'/w on the log grid
        let log_deriv = 0.5 + (shot.last - shot.before_last) / (grid.h * shot.last);
        let tail_zero = log_deriv < 1.0 - self.regular_exponent();
        Ok(shot.nodes + u32::from(tail_zero))
    }
}

struct LogGrid {
    r_min: f64,
    h: f64,
    r2: Vec<f64>,
    base: Vec<f64>,
    mass_factor: f64,
    exponent: f64,
    first_order: f64,
}

struct Shot {
    nodes: u32,
    last: f64,
    before_last: f64,
}

impl LogGrid {
    fn check_resolution(&self, energy: f64) -> Result<()> {
        let k = self.h * self.h / 12.0;
        let worst = self
            .r2
            .iter()
            .zip(&self.base)
            .map(|(r2, b)| (b - self.mass_factor * r2 * energy).abs())
            .fold(0.0, f64::max);
        if k * worst > 0.5 {
            return Err(domain(format!(
                "grid too coarse for this energy range (h^2 F/12 = {:.3})",
                k * worst
            )));
        }
        Ok(())
    }

    fn shoot(&self, energy: f64) -> Shot {
        let k = self.h * self.h / 12.0;
        let f = |i: usize| self.base[i] - self.mass_factor * self.r2[i] * energy;
        // w = r^{p - 1/2} (1 + c1 r), scaled to w(r_min) ~ 1
        let r1 = self.r_min * self.h.exp();
        let mut prev = 1.0 + self.first_order * self.r_min;
        let mut cur = (self.h * (self.exponent - 0.5)).exp() * (1.0 + self.first_order * r1);
        let mut f_prev = f(0);
        let mut f_cur = f(1);
        let mut nodes = 0;
        let mut sign = if cur != 0.0 { cur > 0.0 } else { prev > 0.0 };
        for i in 2..self.base.len() {
            let f_next = f(i);
            let next = (2.0 * (1.0 + 5.0 * k * f_cur) * cur - (1.0 - k * f_prev) * prev) / (1.0 - k * f_next);
            prev = cur;
            cur = next;
            f_prev = f_cur;
            f_cur = f_next;
            if cur != 0.0 && (cur > 0.0) != sign {
                nodes += 1;
                sign = cur > 0.0;
            }
            if cur.abs() > RESCALE_AT {
                prev /= RESCALE_AT;
                cur /= RESCALE_AT;
            }
        }
        Shot {
            nodes,
            last: cur,
            before_last: prev,
        }
    }
}

/// The exact Hulthén problem for angular momentum `l`.
pub fn hulthen_problem(params: &PotentialParams, l: u32) -> RadialProblem<impl Fn(f64) -> f64> {
    let (z, alpha) = (params.z, params.alpha);
    RadialProblem {
        mu: params.mu,
        hbar: params.hbar,
        centrifugal: hulthen::gamma_coeff(l, params.dim),
        coulomb_charge: z,
        potential: move |r| hulthen::potential_at(r, z, alpha),
    }
}

/// Energy of the exact Hulthén state with `target_nodes` nodes.
pub fn solve_exact(params: &PotentialParams, l: u32, target_nodes: u32, cfg: &ShootingConfig) -> Result<OracleResult> {
    hulthen_problem(params, l).solve(target_nodes, cfg)
}

/// `|E_closed - E_oracle| / |E_oracle|` for the state `qn`.
pub fn approximation_error(params: &PotentialParams, qn: QuantumNumbers, cfg: &ShootingConfig) -> Result<f64> {
    let closed = hulthen::energy(params, qn).energy.ok_or(Error::NoBoundState {
        n: qn.n,
        l: qn.l,
        dim: params.dim,
    })?;
    let exact = solve_exact(params, qn.l, expected_nodes(qn, params.dim), cfg)?;
    Ok((closed - exact.energy).abs() / exact.energy.abs())
}

/// Bound states of the exact Hulthén problem at angular momentum `l`.
pub fn count_bound_states(params: &PotentialParams, l: u32) -> Result<u32> {
    let bohr = params.hbar * params.hbar / (params.mu * params.z);
    let r_min = 1e-6 * (1.0 / params.alpha).min(bohr);
    hulthen_problem(params, l).count_bound_states(r_min, 400.0 / params.alpha, DEFAULT_STEPS)
}
