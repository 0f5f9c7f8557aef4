//! Globally adaptive 7/15-point Gauss-Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below the tolerance. Integrable endpoint singularities
//! (`x^p`, `p > -1`) are handled by repeated bisection toward the endpoint;
//! the rule never evaluates the integrand at an interval end.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Upper bound on the number of live subintervals.
pub const MAX_INTERVALS: usize = 4000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes plus the centre
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f(x) dx` to absolute accuracy `abs_tol`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    adaptive_quad_points(f, &[a, b], abs_tol)
}

/// Like [`adaptive_quad`], starting from the panels delimited by `points`
/// (strictly increasing, first and last are the integration limits).
pub fn adaptive_quad_points<F: Fn(f64) -> f64>(f: F, points: &[f64], abs_tol: f64) -> Result<f64> {
    if points.len() < 2 || !points.windows(2).all(|w| w[0] < w[1]) {
        return Err(domain("quadrature limits must be strictly increasing"));
    }
    if !points.iter().all(|x| x.is_finite()) {
        return Err(domain("quadrature limits must be finite"));
    }
    if !(abs_tol > 0.0) {
        return Err(domain(format!("abs_tol must be > 0, got {abs_tol}")));
    }

    let mut heap: BinaryHeap<Segment> = points
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    // segments too narrow to split further
    let mut frozen_error = 0.0;
    let mut error: f64 = heap.iter().map(|s| s.error).sum();

    loop {
        if !value.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                intervals: heap.len(),
            });
        }
        if error <= abs_tol {
            // resum to shed drift from the running totals
            error = frozen_error + heap.iter().map(|s| s.error).sum::<f64>();
            if error <= abs_tol || heap.is_empty() {
                return Ok(value);
            }
        }
        if heap.len() >= MAX_INTERVALS || frozen_error > abs_tol {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                intervals: heap.len(),
            });
        }
        let Some(worst) = heap.pop() else {
            return Ok(value);
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen_error += worst.error;
            continue;
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

/// Starting panels for radial integrals on `[0, r_max]`: uniform panels plus
/// a geometric sequence toward the origin.
pub fn radial_breakpoints(r_max: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=64).map(|i| r_max * f64::from(i) / 64.0).collect();
    pts.extend((1..=24).map(|k| r_max / 64.0 * 0.5f64.powi(k)));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}
