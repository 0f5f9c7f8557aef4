//! Nikiforov-Uvarov reduction for equations of hypergeometric type
//!
//! ```text
//! psi'' + (tau~/sigma) psi' + (sigma~/sigma^2) psi = 0
//! ```
//!
//! with `sigma`, `sigma~` of degree at most two and `tau~` of degree at most
//! one. The engine works on numeric coefficients: it finds every real `t`
//! that turns the under-root polynomial into a perfect square, builds both
//! sign choices of `pi(s)`, and keeps the branch whose `tau(s)` decreases.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Tolerance on the scaled residual discriminant of the under-root quadratic.
pub const PERFECT_SQUARE_TOL: f64 = 1e-10;

/// `c0 + c1 s + c2 s^2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadPoly {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl QuadPoly {
    pub const ZERO: QuadPoly = QuadPoly::new(0.0, 0.0, 0.0);

    pub const fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Self { c0, c1, c2 }
    }

    pub const fn linear(c0: f64, c1: f64) -> Self {
        Self::new(c0, c1, 0.0)
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.c0 + s * (self.c1 + s * self.c2)
    }

    pub fn derivative(&self) -> QuadPoly {
        QuadPoly::linear(self.c1, 2.0 * self.c2)
    }

    pub fn second_derivative(&self) -> f64 {
        2.0 * self.c2
    }

    pub fn is_finite(&self) -> bool {
        self.c0.is_finite() && self.c1.is_finite() && self.c2.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0.0 && self.c1 == 0.0 && self.c2 == 0.0
    }

    /// Discriminant `c1^2 - 4 c0 c2`.
    pub fn discriminant(&self) -> f64 {
        self.c1 * self.c1 - 4.0 * self.c0 * self.c2
    }

    /// Square of a polynomial of degree at most one.
    fn square_linear(&self) -> QuadPoly {
        debug_assert_eq!(self.c2, 0.0);
        QuadPoly::new(self.c0 * self.c0, 2.0 * self.c0 * self.c1, self.c1 * self.c1)
    }

    fn max_abs(&self) -> f64 {
        self.c0.abs().max(self.c1.abs()).max(self.c2.abs())
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(self, o: QuadPoly) -> QuadPoly {
        QuadPoly::new(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl Sub for QuadPoly {
    type Output = QuadPoly;
    fn sub(self, o: QuadPoly) -> QuadPoly {
        QuadPoly::new(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2)
    }
}

impl Mul<QuadPoly> for f64 {
    type Output = QuadPoly;
    fn mul(self, p: QuadPoly) -> QuadPoly {
        QuadPoly::new(self * p.c0, self * p.c1, self * p.c2)
    }
}

/// Coefficient polynomials of a hypergeometric-type equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NUProblem {
    pub sigma: QuadPoly,
    pub sigma_tilde: QuadPoly,
    pub tau_tilde: QuadPoly,
}

impl NUProblem {
    pub fn new(sigma: QuadPoly, sigma_tilde: QuadPoly, tau_tilde: QuadPoly) -> Result<Self> {
        if !(sigma.is_finite() && sigma_tilde.is_finite() && tau_tilde.is_finite()) {
            return Err(Error::Domain("NU coefficients must be finite".into()));
        }
        if tau_tilde.c2 != 0.0 {
            return Err(Error::Domain("tau~ must have degree at most one".into()));
        }
        if sigma.is_zero() {
            return Err(Error::Domain("sigma must not vanish identically".into()));
        }
        Ok(Self {
            sigma,
            sigma_tilde,
            tau_tilde,
        })
    }

    /// The Hulthén equation in `s = exp(-alpha r)` after the centrifugal
    /// approximation: `sigma = s(1-s)`, `tau~ = 1-s`,
    /// `sigma~ = -(eps^2+delta) s^2 + (2 eps^2 + delta - gamma) s - eps^2`.
    pub fn hulthen(epsilon: f64, delta: f64, gamma: f64) -> Result<Self> {
        let e2 = epsilon * epsilon;
        Self::new(
            QuadPoly::new(0.0, 1.0, -1.0),
            QuadPoly::new(-e2, 2.0 * e2 + delta - gamma, -e2 - delta),
            QuadPoly::linear(1.0, -1.0),
        )
    }

    /// `(sigma' - tau~)/2`, the rational part of `pi(s)`.
    pub fn half_shift(&self) -> QuadPoly {
        0.5 * (self.sigma.derivative() - self.tau_tilde)
    }

    /// Polynomial under the square root of `pi(s)` for a given `t`:
    /// `((sigma' - tau~)/2)^2 - sigma~ + t sigma`.
    pub fn under_root(&self, t: f64) -> QuadPoly {
        self.half_shift().square_linear() - self.sigma_tilde + t * self.sigma
    }

    fn coeff_scale(&self) -> f64 {
        let a = self.half_shift().square_linear();
        a.max_abs()
            .max(self.sigma_tilde.max_abs())
            .max(self.sigma.max_abs())
            .max(1.0)
    }
}

/// One sign/root choice of the NU auxiliary polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NUBranch {
    pub t: f64,
    pub pi: QuadPoly,
    pub tau: QuadPoly,
    pub lambda: f64,
    pub tau_slope: f64,
}

impl NUBranch {
    pub fn new(problem: &NUProblem, t: f64, pi: QuadPoly) -> Self {
        let tau = problem.tau_tilde + 2.0 * pi;
        Self {
            t,
            pi,
            tau,
            lambda: t + pi.c1,
            tau_slope: tau.c1,
        }
    }
}

/// Outcome of [`select_branch`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSelection {
    pub branch: NUBranch,
    /// More than one candidate had a negative `tau` slope.
    pub ambiguous: bool,
}

/// All real `t` for which the under-root quadratic has a double root,
/// sorted ascending.
///
/// The discriminant of `under_root(t)` is itself a quadratic in `t`. When it
/// vanishes identically every `t` qualifies and `0.0` is returned as the
/// representative.
pub fn t_roots(p: &NUProblem) -> Vec<f64> {
    let base = p.half_shift().square_linear() - p.sigma_tilde;
    let s = p.sigma;
    // disc(t) = (b1 + t s1)^2 - 4 (b0 + t s0)(b2 + t s2)
    let qa = s.c1 * s.c1 - 4.0 * s.c0 * s.c2;
    let qb = 2.0 * base.c1 * s.c1 - 4.0 * (base.c0 * s.c2 + s.c0 * base.c2);
    let qc = base.c1 * base.c1 - 4.0 * base.c0 * base.c2;

    let scale = p.coeff_scale().powi(2);
    let tiny = 1e-14 * scale;

    let mut roots = if qa.abs() <= tiny {
        if qb.abs() <= tiny {
            if qc.abs() <= PERFECT_SQUARE_TOL * scale {
                vec![0.0]
            } else {
                Vec::new()
            }
        } else {
            vec![-qc / qb]
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        // qc itself is a difference of products; its rounding sets the scale
        let qc_size = base.c1 * base.c1 + 4.0 * (base.c0 * base.c2).abs();
        let band = 1e-13 * (qb * qb + 4.0 * qa.abs() * qc_size);
        if disc < -band {
            Vec::new()
        } else if disc <= band {
            // a double root; sqrt would turn rounding noise into a spurious split
            vec![-qb / (2.0 * qa)]
        } else {
            let q = -0.5 * (qb + qb.signum() * disc.sqrt());
            if q == 0.0 {
                vec![0.0]
            } else {
                vec![q / qa, qc / q]
            }
        }
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// The two polynomials `pi(s) = (sigma' - tau~)/2 ± sqrt(under_root(t))`,
/// plus sign first.
pub fn pi_branches(p: &NUProblem, t: f64) -> Result<[QuadPoly; 2]> {
    let q = p.under_root(t);
    let scale = p.coeff_scale().max(t.abs()).powi(2);
    let residual = q.discriminant();
    if residual.abs() > PERFECT_SQUARE_TOL * scale {
        return Err(Error::NotPerfectSquare { residual });
    }
    let tol = PERFECT_SQUARE_TOL * scale.sqrt();
    if q.c2 < -tol || q.c0 < -tol {
        // a negative multiple of a square: the root is imaginary
        return Err(Error::NotPerfectSquare { residual });
    }
    // sqrt(q) = r1 s + r0 with 2 r1 r0 = q1, so r0 carries the sign of q1
    let r1 = q.c2.max(0.0).sqrt();
    let r0 = q.c0.max(0.0).sqrt().copysign(if r1 == 0.0 { 1.0 } else { q.c1 });
    let root = QuadPoly::linear(r0, r1);
    let shift = p.half_shift();
    Ok([shift + root, shift - root])
}

/// Every `(t, ±)` branch of the problem.
pub fn branches(p: &NUProblem) -> Result<Vec<NUBranch>> {
    let mut out = Vec::new();
    for t in t_roots(p) {
        for pi in pi_branches(p, t)? {
            out.push(NUBranch::new(p, t, pi));
        }
    }
    Ok(out)
}

/// Pick the branch with a negative `tau` slope; the most negative one wins
/// when several qualify.
pub fn select_branch(candidates: &[NUBranch]) -> Result<BranchSelection> {
    let mut negative = candidates.iter().filter(|b| b.tau_slope < 0.0);
    let first = *negative.next().ok_or(Error::NoNegativeSlope)?;
    let mut ambiguous = false;
    let best = negative.fold(first, |best, b| {
        ambiguous = true;
        if b.tau_slope < best.tau_slope {
            *b
        } else {
            best
        }
    });
    Ok(BranchSelection {
        branch: best,
        ambiguous,
    })
}

/// Residual of the quantization condition
/// `lambda = -n tau' - n(n-1)/2 sigma''`.
pub fn eigen_condition(branch: &NUBranch, sigma: &QuadPoly, n: u32) -> f64 {
    let n = f64::from(n);
    branch.lambda - (-n * branch.tau_slope - 0.5 * n * (n - 1.0) * sigma.second_derivative())
}

/// Run the whole pipeline: enumerate branches and select the physical one.
pub fn solve(p: &NUProblem) -> Result<BranchSelection> {
    select_branch(&branches(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: QuadPoly, b: QuadPoly, tol: f64) -> bool {
        (a.c0 - b.c0).abs() < tol && (a.c1 - b.c1).abs() < tol && (a.c2 - b.c2).abs() < tol
    }

    #[test]
    fn hulthen_t_roots_hand_values() {
        let p = NUProblem::hulthen(1.0, 2.0, 2.0).unwrap();
        let t = t_roots(&p);
        assert_eq!(t.len(), 2);
        assert!((t[0] + 3.0).abs() < 1e-12 && (t[1] - 3.0).abs() < 1e-12, "{t:?}");
    }

    #[test]
    fn linear_sigma_forces_t_zero() {
        let p = NUProblem::new(QuadPoly::linear(0.0, 1.0), QuadPoly::ZERO, QuadPoly::ZERO).unwrap();
        let q = p.under_root(0.3);
        assert_eq!(q, QuadPoly::new(0.25, 0.3, 0.0));
        assert_eq!(t_roots(&p), vec![0.0]);
    }

    #[test]
    fn degenerate_discriminant_identically_zero() {
        // sigma = s^2, sigma~ = 0, tau~ = 0: under-root = (1 + t) s^2 for every t
        let p = NUProblem::new(QuadPoly::new(0.0, 0.0, 1.0), QuadPoly::ZERO, QuadPoly::ZERO).unwrap();
        assert_eq!(t_roots(&p), vec![0.0]);
        let [plus, minus] = pi_branches(&p, 0.0).unwrap();
        assert!(close(plus, QuadPoly::linear(0.0, 2.0), 1e-14));
        assert!(close(minus, QuadPoly::ZERO, 1e-14));
    }

    #[test]
    fn hulthen_pi_branches_hand_values() {
        let p = NUProblem::hulthen(1.0, 2.0, 2.0).unwrap();
        let [plus, minus] = pi_branches(&p, -3.0).unwrap();
        assert!(close(minus, QuadPoly::linear(1.0, -3.0), 1e-12), "{minus:?}");
        assert!(close(plus, QuadPoly::linear(-1.0, 2.0), 1e-12), "{plus:?}");
    }

    #[test]
    fn zero_pi_when_shift_and_root_vanish() {
        let sigma = QuadPoly::new(0.0, 1.0, -1.0);
        let p = NUProblem::new(sigma, QuadPoly::ZERO, sigma.derivative()).unwrap();
        let [plus, minus] = pi_branches(&p, 0.0).unwrap();
        assert!(plus.is_zero() && minus.is_zero());
    }

    #[test]
    fn pi_branches_rejects_non_square() {
        let p = NUProblem::hulthen(1.0, 2.0, 2.0).unwrap();
        assert!(matches!(pi_branches(&p, 0.5), Err(Error::NotPerfectSquare { .. })));
    }

    #[test]
    fn hulthen_branch_selection() {
        let p = NUProblem::hulthen(1.0, 2.0, 2.0).unwrap();
        let minus = NUBranch::new(&p, -3.0, QuadPoly::linear(1.0, -3.0));
        assert_eq!(minus.tau, QuadPoly::linear(3.0, -7.0));
        assert_eq!(minus.tau_slope, -7.0);
        let plus = NUBranch::new(&p, -3.0, QuadPoly::linear(-1.0, 2.0));
        assert_eq!(plus.tau_slope, 3.0);

        let sel = select_branch(&[plus, minus]).unwrap();
        assert_eq!(sel.branch, minus);
        assert!(!sel.ambiguous);

        let sel = select_branch(&[minus]).unwrap();
        assert_eq!(sel.branch, minus);
        assert!(select_branch(&[plus]).is_err());
    }

    #[test]
    fn full_pipeline_flags_ambiguity_but_picks_steepest() {
        // for small eps + sqrt(1+4 gamma) several branches descend
        let p = NUProblem::hulthen(0.3, 5.0, 0.0).unwrap();
        let sel = solve(&p).unwrap();
        assert!(sel.ambiguous);
        assert!((sel.branch.tau_slope - (-2.0 - 0.6 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn eigen_condition_trivial_n0() {
        let p = NUProblem::hulthen(1.0, 2.0, 2.0).unwrap();
        let b = NUBranch::new(&p, -3.0, QuadPoly::linear(1.0, -3.0));
        assert_eq!(eigen_condition(&b, &p.sigma, 0), b.lambda);
    }

    #[test]
    fn eigen_condition_changes_sign_across_root() {
        // D=3, l=1, n=1, delta=40: eps = (delta - m^2)/(2m), m = 3
        let (delta, gamma, n) = (40.0, 2.0, 1);
        let eps0 = (delta - 9.0) / 6.0;
        let resid = |eps: f64| {
            let p = NUProblem::hulthen(eps, delta, gamma).unwrap();
            eigen_condition(&solve(&p).unwrap().branch, &p.sigma, n)
        };
        assert!(resid(eps0).abs() < 1e-10);
        let (lo, hi) = (resid(eps0 - 0.1), resid(eps0 + 0.1));
        assert!(lo.abs() > 1e-3 && hi.abs() > 1e-3);
        assert!(lo.signum() != hi.signum());
    }

    proptest! {
        #[test]
        fn under_root_is_square_at_every_root(
            eps in 0.01f64..20.0, delta in 0.01f64..200.0, gamma in 0.0f64..60.0
        ) {
            let p = NUProblem::hulthen(eps, delta, gamma).unwrap();
            for t in t_roots(&p) {
                let q = p.under_root(t);
                // value at the double root relative to the size of the terms
                let size = (q.c1 * q.c1).max((4.0 * q.c0 * q.c2).abs()).max(1.0);
                prop_assert!(q.discriminant().abs() <= 1e-10 * size, "{:?}", q);
                for pi in pi_branches(&p, t).unwrap() {
                    let b = NUBranch::new(&p, t, pi);
                    prop_assert_eq!(b.lambda, t + pi.derivative().c0);
                }
            }
        }
    }
}
