//! Real-valued special functions: log-gamma, Beta, Pochhammer symbols,
//! terminating Gauss hypergeometric sums and Jacobi polynomials.
//!
//! Everything here is a pure function of its arguments.

use crate::error::{domain, Result};

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("ln_gamma requires a finite x > 0, got {x}")));
    }
    // series about 1 and 2, where a relative-accuracy lgamma is hardest
    if (x - 2.0).abs() < 0.5 {
        return Ok(ln_gamma_two_plus(x - 2.0));
    }
    if (x - 1.0).abs() < 0.5 {
        let z = x - 1.0;
        return Ok(ln_gamma_two_plus(z) - z.ln_1p());
    }
    Ok(libm::lgamma_r(x).0)
}

// zeta(k) - 1 for k = 2..=40
const ZETA_MINUS_ONE: [f64; 39] = [
    6.44934066848226406e-01,
    2.02056903159594292e-01,
    8.23232337111381857e-02,
    3.69277551433699266e-02,
    1.73430619844491402e-02,
    8.34927738192282713e-03,
    4.07735619794433960e-03,
    2.00839282608221426e-03,
    9.94575127818085256e-04,
    4.94188604119464529e-04,
    2.46086553308048320e-04,
    1.22713347578489145e-04,
    6.12481350587048277e-05,
    3.05882363070204933e-05,
    1.52822594086518710e-05,
    7.63719763789976257e-06,
    3.81729326499984022e-06,
    1.90821271655393897e-06,
    9.53962033872796212e-07,
    4.76932986787806447e-07,
    2.38450502727733004e-07,
    1.19219925965311064e-07,
    5.96081890512594801e-08,
    2.98035035146522793e-08,
    1.49015548283650427e-08,
    7.45071178983543006e-09,
    3.72533402478845728e-09,
    1.86265972351304914e-09,
    9.31327432419668166e-10,
    4.65662906503378366e-10,
    2.32831183367650534e-10,
    1.16415501727005193e-10,
    5.82077208790270145e-11,
    2.91038504449710001e-11,
    1.45519218910419849e-11,
    7.27595983505748180e-12,
    3.63797954737865086e-12,
    1.81898965030706607e-12,
    9.09494784026388841e-13,
];

// ln Γ(2 + z) = (1 - γ) z + Σ_k (-1)^k (ζ(k) - 1) z^k / k, |z| < 1/2
fn ln_gamma_two_plus(z: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;
    let mut sum = 0.0;
    let mut power = -z;
    for (i, c) in ZETA_MINUS_ONE.iter().enumerate() {
        power *= -z;
        sum += c * power / (i + 2) as f64;
    }
    (1.0 - EULER_GAMMA) * z + sum
}

/// Log of the Beta function, `ln B(x, y)`.
pub fn ln_beta(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(domain(format!("beta requires x > 0 and y > 0, got ({x}, {y})")));
    }
    Ok(ln_gamma(x)? + ln_gamma(y)? - ln_gamma(x + y)?)
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`, evaluated in log space.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    ln_beta(x, y).map(f64::exp)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
///
/// Computed as a product so that negative-integer bases give an exact zero.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + f64::from(j)))
}

/// Terminating series `2F1(-n, b; c; s) = sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) s^k`.
pub fn hyp_terminating(n: u32, b: f64, c: f64, s: f64) -> Result<f64> {
    Ok(hyp_terms(n, b, c, s)?.iter().sum())
}

/// Individual terms of [`hyp_terminating`], k = 0..=n.
pub fn hyp_terms(n: u32, b: f64, c: f64, s: f64) -> Result<Vec<f64>> {
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut term = 1.0;
    terms.push(term);
    for k in 0..n {
        let kf = f64::from(k);
        let denom = (c + kf) * (kf + 1.0);
        if denom == 0.0 {
            return Err(domain(format!(
                "2F1 denominator (c)_k vanishes at k={} for c={c}",
                k + 1
            )));
        }
        term *= (kf - f64::from(n)) * (b + kf) / denom * s;
        terms.push(term);
    }
    Ok(terms)
}

/// Arguments of a Jacobi polynomial `P_n^{(a,b)}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl JacobiParams {
    pub fn new(n: u32, a: f64, b: f64, x: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(domain(format!("Jacobi argument must lie in [-1, 1], got {x}")));
        }
        Ok(Self { n, a, b, x })
    }

    pub fn eval(&self) -> f64 {
        jacobi_p(self.n, self.a, self.b, self.x)
    }
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence in degree.
///
/// The recurrence is defined for all real `a`, `b` except where one of its
/// leading coefficients vanishes (possible only when `a + b` is a negative
/// integer); those cases fall back to the explicit finite sum.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    if n == 1 {
        return p1;
    }
    let ab = a + b;
    let mut prev = 1.0;
    let mut cur = p1;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let lead = 2.0 * k * (k + ab) * (c - 2.0);
        if lead.abs() < 1e-300 {
            return jacobi_explicit(n, a, b, x);
        }
        let next = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

// P_n = sum_k (a+k+1)_{n-k} (a+b+n+1)_k / ((n-k)! k!) ((x-1)/2)^k
fn jacobi_explicit(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let y = 0.5 * (x - 1.0);
    (0..=n)
        .map(|k| {
            pochhammer(a + f64::from(k) + 1.0, n - k) * pochhammer(a + b + f64::from(n) + 1.0, k)
                / (factorial(n - k) * factorial(k))
                * y.powi(k as i32)
        })
        .sum()
}

pub(crate) fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * f64::from(j))
}

/// `P_n^{(a,b)}(1) = (a+1)_n / n!`.
pub fn jacobi_at_one(n: u32, a: f64) -> f64 {
    pochhammer(a + 1.0, n) / factorial(n)
}
