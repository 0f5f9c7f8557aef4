//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hulthen::expectation::{de_dl, inv_r2_expect, potential_expect, quadrature_expect};
use hulthen::hulthen::{
    bound_epsilon, bound_state_count, centrifugal_approx, energy, energy_3d, expected_nodes, ground_state_norm,
    m_index, normalization_constant, potential, spectrum_bracket, wavefunction_samples, Eigenstate,
    GridSpec, DEFAULT_N_MAX,
};
use hulthen::nu_engine::{eigen_condition, solve, NUProblem};
use hulthen::oracle::{
    adaptive_quad_points, approximation_error, count_bound_states, radial_breakpoints, solve_exact, ShootingConfig,
};
use hulthen::specfun::{hyp_terms, jacobi_p, pochhammer};
use hulthen::{PotentialParams, QuantumNumbers};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn atomic(alpha: f64, dim: u32) -> PotentialParams {
    PotentialParams::reduced(1.0, alpha, dim).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sci(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// Energy with continuous l and Z.
fn energy_cont(p: &PotentialParams, n: u32, l: f64, z: f64) -> f64 {
    let delta = 2.0 * z * p.mu / (p.alpha * p.hbar * p.hbar);
    let b = spectrum_bracket(f64::from(n), l, f64::from(p.dim), delta);
    -p.energy_scale() * b * b
}

fn reduction_identity() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = r.gen_range(0..=10);
        let l = r.gen_range(0..=5);
        let alpha = r.gen_range(1e-4..0.2);
        let p = PotentialParams::new(r.gen_range(0.5..2.0), alpha, r.gen_range(0.5..2.0), r.gen_range(0.5..2.0), 3)
            .unwrap();
        let qn = QuantumNumbers::new(n, l);
        let general = energy_cont(&p, n, f64::from(l), p.z);
        let three = energy_3d(&p, qn);
        let e = rel(general, three);
        worst = worst.max(e);
        check(e <= 1e-12, || format!("n={n} l={l} {p:?}: {general} vs {three}"))?;
        if let Some(eb) = energy(&p, qn).energy {
            check(rel(eb, three) <= 1e-12, || format!("bound-state path n={n} l={l}: {eb} vs {three}"))?;
        }
    }
    Ok(format!("1000 tuples, max rel diff {worst:.2e}"))
}

fn coulomb_limit() -> Outcome {
    let qn = QuantumNumbers::new(0, 0);
    let e = energy(&atomic(1e-6, 3), qn).energy.unwrap();
    let err = (e + 0.5).abs() / 0.5;
    check(err < 1e-4, || format!("alpha=1e-6: E={e}"))?;
    let errs: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&a| (energy(&atomic(a, 3), qn).energy.unwrap() + 0.5).abs())
        .collect();
    check(errs.windows(2).all(|w| w[1] < w[0]), || format!("not monotone: {errs:?}"))?;
    Ok(format!("alpha=1e-6 rel err {err:.2e}; sweep |E+1/2| = {}", sci(&errs)))
}

fn exact_s_wave() -> Outcome {
    let mut states = 0;
    let mut worst: f64 = 0.0;
    for dim in [1, 3] {
        for alpha in [0.05, 0.1] {
            let p = atomic(alpha, dim);
            for n in 0..=DEFAULT_N_MAX {
                let qn = QuantumNumbers::new(n, 0);
                let Some(closed) = energy(&p, qn).energy else {
                    continue;
                };
                let cfg = ShootingConfig::for_state(&p, qn).map_err(|e| e.to_string())?;
                let res = solve_exact(&p, 0, expected_nodes(qn, dim), &cfg)
                    .map_err(|e| format!("D={dim} alpha={alpha} n={n}: {e}"))?;
                let e = rel(closed, res.energy);
                worst = worst.max(e);
                check(e <= 1e-6, || format!("D={dim} alpha={alpha} n={n}: {closed} vs {}", res.energy))?;
                if dim == 3 && n == 0 && alpha == 0.05 {
                    check(rel(res.energy, -0.4753125) <= 1e-6, || format!("anchor {}", res.energy))?;
                }
                states += 1;
            }
        }
    }
    Ok(format!("{states} states, max rel err {worst:.2e}"))
}

fn approximation_validity() -> Outcome {
    let qn = QuantumNumbers::new(0, 1);
    let mut errs = Vec::new();
    for alpha in [0.2, 0.1, 0.05, 0.025] {
        let p = atomic(alpha, 3);
        let cfg = ShootingConfig::for_state(&p, qn).map_err(|e| e.to_string())?;
        errs.push(approximation_error(&p, qn, &cfg).map_err(|e| format!("alpha={alpha}: {e}"))?);
    }
    check(errs.windows(2).all(|w| w[1] < w[0]), || format!("not strictly decreasing: {errs:?}"))?;
    Ok(format!("D=3 l=1 n=0 rel err over alpha 0.2..0.025: {}", sci(&errs)))
}

fn normalization() -> Outcome {
    let mut states = 0;
    let mut worst: f64 = 0.0;
    for (dim, l) in [(3, 0), (3, 1), (3, 2), (5, 0), (4, 1)] {
        let p = atomic(0.05, dim);
        for n in 0..=5 {
            let qn = QuantumNumbers::new(n, l);
            if bound_epsilon(&p, qn).is_none() {
                continue;
            }
            let st = Eigenstate::new(&p, qn).map_err(|e| e.to_string())?;
            let norm = adaptive_quad_points(|r| st.u_of_r(r).powi(2), &radial_breakpoints(st.tail_radius(1e-14)), 1e-11)
                .map_err(|e| e.to_string())?;
            worst = worst.max((norm - 1.0).abs());
            check((norm - 1.0).abs() <= 1e-8, || format!("D={dim} l={l} n={n}: {norm}"))?;
            if n == 0 {
                let sum = normalization_constant(&p, qn).unwrap();
                let closed = ground_state_norm(&p, l).unwrap();
                check(rel(sum, closed) <= 1e-12, || format!("D={dim} l={l}: C_0 {sum} vs {closed}"))?;
            }
            states += 1;
        }
    }
    Ok(format!("{states} states, max |norm - 1| {worst:.2e}"))
}

fn hft_closed_forms() -> Outcome {
    let mut r = rng(6);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    let h = 1e-5;
    while done < 200 {
        let dim = r.gen_range(2..=6);
        let n = r.gen_range(0..=5);
        let l = r.gen_range(0..=3);
        let p = PotentialParams::new(
            r.gen_range(0.5..2.0),
            r.gen_range(0.01..0.2),
            r.gen_range(0.5..2.0),
            r.gen_range(0.5..2.0),
            dim,
        )
        .unwrap();
        let qn = QuantumNumbers::new(n, l);
        let m = m_index(qn, dim);
        if p.delta() <= 1.2 * m * m {
            continue;
        }
        let lf = f64::from(l);
        let fd_l = (energy_cont(&p, n, lf + h, p.z) - energy_cont(&p, n, lf - h, p.z)) / (2.0 * h);
        let dl = de_dl(&p, qn).unwrap();
        let fd_z = p.z * (energy_cont(&p, n, lf, p.z + h) - energy_cont(&p, n, lf, p.z - h)) / (2.0 * h);
        let v = potential_expect(&p, qn).unwrap();
        let v_quad = quadrature_expect(|x| potential(x, &p).unwrap(), &p, qn).map_err(|e| e.to_string())?;
        let mut errs = vec![rel(fd_l, dl), rel(fd_z, v), rel(v_quad, v)];
        if 2 * l + dim > 2 {
            let w = inv_r2_expect(&p, qn).unwrap();
            let alpha = p.alpha;
            let w_quad =
                quadrature_expect(|x| centrifugal_approx(x, alpha).unwrap(), &p, qn).map_err(|e| e.to_string())?;
            errs.push(rel(w_quad, w));
        }
        let e = errs.iter().copied().fold(0.0, f64::max);
        worst = worst.max(e);
        check(e <= 1e-6, || format!("n={n} l={l} {p:?}: rel errs {errs:?}"))?;
        done += 1;
    }
    Ok(format!("200 states, max rel err {worst:.2e}"))
}

fn nu_regression() -> Outcome {
    let mut r = rng(7);
    let mut worst_lambda: f64 = 0.0;
    let mut worst_resid: f64 = 0.0;
    for _ in 0..100 {
        let eps = r.gen_range(1e-3..20.0);
        let delta = r.gen_range(0.0..60.0);
        let gamma = r.gen_range(0.0..20.0);
        let prob = NUProblem::hulthen(eps, delta, gamma).map_err(|e| e.to_string())?;
        let sel = solve(&prob).map_err(|e| format!("eps={eps} delta={delta} gamma={gamma}: {e}"))?;
        let a = (1.0 + 4.0 * gamma).sqrt();
        let slope = -2.0 - 2.0 * eps - a;
        check(sel.branch.tau_slope < 0.0 && (sel.branch.tau_slope - slope).abs() <= 1e-10 * slope.abs(), || {
            format!("eps={eps} delta={delta} gamma={gamma}: slope {} vs {slope}", sel.branch.tau_slope)
        })?;
        let lambda = delta - gamma - 0.5 * (1.0 + 2.0 * eps) * (1.0 + a);
        let e = (sel.branch.lambda - lambda).abs() / lambda.abs().max(1.0);
        worst_lambda = worst_lambda.max(e);
        check(e <= 1e-10, || format!("lambda {} vs {lambda}", sel.branch.lambda))?;
    }
    let mut checked = 0;
    while checked < 100 {
        let dim = r.gen_range(1..=8);
        let n = r.gen_range(0..=12);
        let l = r.gen_range(0..=6);
        let p = atomic(r.gen_range(1e-3..0.3), dim);
        let qn = QuantumNumbers::new(n, l);
        let Some(eps) = bound_epsilon(&p, qn) else {
            continue;
        };
        let prob = NUProblem::hulthen(eps, p.delta(), hulthen::hulthen::gamma_coeff(l, dim)).unwrap();
        let sel = solve(&prob).map_err(|e| e.to_string())?;
        let resid = eigen_condition(&sel.branch, &prob.sigma, expected_nodes(qn, dim)).abs();
        worst_resid = worst_resid.max(resid);
        check(resid <= 1e-9, || format!("D={dim} n={n} l={l}: residual {resid:e}"))?;
        checked += 1;
    }
    Ok(format!(
        "100 free triples, max lambda err {worst_lambda:.2e}; 100 bound states, max residual {worst_resid:.2e}"
    ))
}

fn structural() -> Outcome {
    // nodes
    for (dim, l) in [(3, 0), (3, 1), (3, 2), (4, 1), (5, 0), (2, 0), (1, 1)] {
        let p = atomic(0.05, dim);
        for n in 0..=5 {
            let qn = QuantumNumbers::new(n, l);
            let Ok(st) = Eigenstate::new(&p, qn) else {
                continue;
            };
            let r_end = st.tail_radius(1e-14);
            let grid = GridSpec::new(r_end / 20000.0, r_end, 20000).unwrap();
            let s = wavefunction_samples(&p, qn, &grid).unwrap();
            check(s.node_count() == n as usize, || format!("D={dim} l={l} n={n}: {} nodes", s.node_count()))?;
        }
    }
    // interdimensional degeneracy
    let mut r = rng(8);
    for _ in 0..500 {
        let dim = r.gen_range(3..=12);
        let n = r.gen_range(0..=8);
        let l = r.gen_range(0..=5);
        let alpha = r.gen_range(1e-3..0.3);
        let a = energy(&atomic(alpha, dim), QuantumNumbers::new(n, l));
        let b = energy(&atomic(alpha, dim - 2), QuantumNumbers::new(n, l + 1));
        check(a.exists() == b.exists(), || format!("existence differs at D={dim} n={n} l={l}"))?;
        if let (Some(x), Some(y)) = (a.energy, b.energy) {
            check(rel(x, y) <= 1e-12, || format!("D={dim} n={n} l={l}: {x} vs {y}"))?;
        }
    }
    // bound-state count in the exact s-wave cases
    let mut counts = Vec::new();
    for dim in [1, 3] {
        for alpha in [0.05, 0.1] {
            let p = atomic(alpha, dim);
            let closed = bound_state_count(&p, 0, DEFAULT_N_MAX);
            let oracle = count_bound_states(&p, 0).map_err(|e| e.to_string())? as usize;
            check(closed == oracle, || format!("D={dim} alpha={alpha}: closed {closed}, oracle {oracle}"))?;
            counts.push(closed);
        }
    }
    // Jacobi recurrence against the hypergeometric form
    let mut worst: f64 = 0.0;
    for _ in 0..400 {
        let n = r.gen_range(0..=20);
        let a = r.gen_range(0.0..40.0);
        let b = r.gen_range(-0.9..12.0);
        let s: f64 = r.gen_range(0.0..1.0);
        let rec = jacobi_p(n, a, b, 1.0 - 2.0 * s);
        let terms = hyp_terms(n, f64::from(n) + a + b + 1.0, a + 1.0, s).unwrap();
        let pref = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
        let hyp = pref * terms.iter().sum::<f64>();
        let scale = pref * terms.iter().map(|t| t.abs()).sum::<f64>();
        let e = (rec - hyp).abs() / scale;
        worst = worst.max(e);
        check(e <= 1e-12, || format!("n={n} a={a} b={b} s={s}: {rec} vs {hyp}"))?;
    }
    Ok(format!(
        "nodes ok; degeneracy ok; s-wave counts {counts:?}; Jacobi max scaled diff {worst:.2e}"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "3D reduction identity", budget: Duration::from_secs(1), run: reduction_identity },
        Criterion { id: 2, name: "Coulomb limit", budget: Duration::from_secs(1), run: coulomb_limit },
        Criterion { id: 3, name: "exact s-wave cross-validation", budget: Duration::from_secs(30), run: exact_s_wave },
        Criterion { id: 4, name: "approximation validity", budget: Duration::from_secs(60), run: approximation_validity },
        Criterion { id: 5, name: "normalization", budget: Duration::from_secs(10), run: normalization },
        Criterion { id: 6, name: "Hellmann-Feynman closed forms", budget: Duration::from_secs(60), run: hft_closed_forms },
        Criterion { id: 7, name: "NU engine regression", budget: Duration::from_secs(1), run: nu_regression },
        Criterion { id: 8, name: "structural properties", budget: Duration::from_secs(30), run: structural },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} budget", c.budget)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] AC{} {} ({:.2} s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
