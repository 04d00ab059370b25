//! Grid-based certification of every identity, inequality, monotonicity,
//! convexity, and range claim the crate's functions are documented to satisfy.
//!
//! Each claim gets a stable string id and runs as an independent check over a
//! configurable grid, producing a [`CheckReport`] with the worst margin seen
//! and where it occurred. `run_all` sweeps the whole registry; `run_check`
//! runs one claim on a caller-supplied grid.

use crate::elliptic::{agm_sums, elliptic_combination, Combination, Modulus};
use crate::grid::{GridLaw, GridSpec};
use crate::landen::{landen_residuals, quadratic_residuals};
use crate::modulus::{
    comparison_gap, modulus_power_mean_check, r0_constant, reciprocity_residual, MeanCheckKind,
};
use crate::psi::PowerMeanSpec;
use crate::{Error, Result};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorstPoint {
    Scalar(f64),
    Pair(f64, f64),
}

impl std::fmt::Display for WorstPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WorstPoint::Scalar(x) => write!(f, "{x}"),
            WorstPoint::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// Outcome of one claim check. `worst_margin` is oriented so that positive
/// means the claim held with room to spare; the sign convention is uniform
/// across claim kinds (residual claims report `tolerance - worst_residual`).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub claim_id: &'static str,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub worst_point: WorstPoint,
    pub points_tested: usize,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "{} {} margin={:e} point={} points={}",
            self.claim_id, self.verdict, self.worst_margin, self.worst_point, self.points_tested
        )
    }
}

/// Grid defaults for the standard sweep. Identity checks use a moderate grid
/// because each point is cheap and the residuals are flat; one-variable shape
/// claims get a dense grid pushed hard toward both endpoints where the
/// interesting behaviour lives.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub identity_grid: GridSpec,
    pub one_var_grid: GridSpec,
    pub pair_axis_grid: GridSpec,
    pub aspect_grid: GridSpec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            identity_grid: GridSpec::new(1e-3, 1.0 - 1e-3, 1000, GridLaw::EndpointRefined)
                .expect("static grid"),
            one_var_grid: GridSpec::new(1e-6, 1.0 - 1e-6, 10_000, GridLaw::EndpointRefined)
                .expect("static grid"),
            pair_axis_grid: GridSpec::new(0.02, 0.98, 100, GridLaw::Uniform).expect("static grid"),
            aspect_grid: GridSpec::new(1e-3, 1e3, 1000, GridLaw::Logarithmic).expect("static grid"),
        }
    }
}

/// Which of the configurable (or fixed special-purpose) grids a claim reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GridClass {
    Identity,
    OneVar,
    PairAxis,
    Aspect,
    /// cosh-argument axis for the convexity-in-x claim.
    CoshArg,
    /// full r > 1 sweep for the comparison-gap unimodality claim.
    GapSweep,
    /// narrow window around the comparison-gap maximum.
    GapPeak,
    /// logarithmic tail r in [1e2, 1e6].
    GapTail,
    /// aspect-ratio axis for the modulus mean inequalities.
    MeanAxis,
}

fn grid_for(class: GridClass, cfg: &VerifyConfig) -> GridSpec {
    match class {
        GridClass::Identity => cfg.identity_grid,
        GridClass::OneVar => cfg.one_var_grid,
        GridClass::PairAxis => cfg.pair_axis_grid,
        GridClass::Aspect => cfg.aspect_grid,
        GridClass::CoshArg => {
            GridSpec::new(0.05, 10.0, 2000, GridLaw::Uniform).expect("static grid")
        }
        GridClass::GapSweep => {
            GridSpec::new(1.0 + 1e-6, 1e6, 2000, GridLaw::Logarithmic).expect("static grid")
        }
        GridClass::GapPeak => {
            GridSpec::new(8.0, 8.5, 1001, GridLaw::Uniform).expect("static grid")
        }
        GridClass::GapTail => {
            GridSpec::new(1e2, 1e6, 400, GridLaw::Logarithmic).expect("static grid")
        }
        GridClass::MeanAxis => {
            GridSpec::new(0.1, 10.0, 20, GridLaw::Logarithmic).expect("static grid")
        }
    }
}

struct Claim {
    id: &'static str,
    class: GridClass,
    run: fn(&'static str, &GridSpec) -> CheckReport,
}

/// Residual tolerance for exact identities checked on a grid.
const IDENTITY_TOL: f64 = 1e-10;
/// Strictness floor for off-diagonal inequality margins.
const STRICT_FLOOR: f64 = 1e-12;
/// How closely an endpoint probe must match the claimed limit.
const LIMIT_TOL: f64 = 1e-3;

// ---------------------------------------------------------------------------
// margin plumbing

struct Worst {
    margin: f64,
    point: WorstPoint,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            margin: f64::INFINITY,
            point: WorstPoint::Scalar(f64::NAN),
            count: 0,
        }
    }

    fn feed(&mut self, margin: f64, point: WorstPoint) {
        self.count += 1;
        // NaN must never pass: treat it as -inf.
        let m = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if m < self.margin {
            self.margin = m;
            self.point = point;
        }
    }

    fn report(self, claim_id: &'static str) -> CheckReport {
        let verdict = if self.margin >= 0.0 && self.count > 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            claim_id,
            verdict,
            worst_margin: self.margin,
            worst_point: self.point,
            points_tested: self.count,
        }
    }
}

/// Residual claim: pass iff every |residual| ≤ IDENTITY_TOL.
fn identity_scan(
    id: &'static str,
    grid: &GridSpec,
    mut residual: impl FnMut(f64) -> f64,
) -> CheckReport {
    let mut worst = Worst::new();
    for x in grid.points() {
        let r = residual(x).abs();
        worst.feed(IDENTITY_TOL - r, WorstPoint::Scalar(x));
    }
    worst.report(id)
}

/// Minimum consecutive difference, oriented so positive means the claimed
/// direction holds strictly.
fn feed_monotone(worst: &mut Worst, xs: &[f64], ys: &[f64], increasing: bool) {
    for i in 1..xs.len() {
        let d = if increasing {
            ys[i] - ys[i - 1]
        } else {
            ys[i - 1] - ys[i]
        };
        worst.feed(d, WorstPoint::Scalar(xs[i]));
    }
}

/// Chord test on consecutive triples; positive margin means strictly convex
/// (or strictly concave with `convex = false`). Handles uneven spacing.
fn feed_convex(worst: &mut Worst, xs: &[f64], ys: &[f64], convex: bool) {
    for i in 1..xs.len() - 1 {
        let lam = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
        let chord = ys[i - 1] + lam * (ys[i + 1] - ys[i - 1]);
        let d = if convex { chord - ys[i] } else { ys[i] - chord };
        worst.feed(d, WorstPoint::Scalar(xs[i]));
    }
}

fn eval_on(grid: &GridSpec, f: impl Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
    let xs = grid.points();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    (xs, ys)
}

/// Endpoint-limit probe: margin is `tol` minus the deviation from the
/// claimed limit (relative when the limit is away from zero).
fn feed_limit(worst: &mut Worst, at: f64, value: f64, limit: f64, tol: f64) {
    let dev = if limit.abs() > 1.0 {
        ((value - limit) / limit).abs()
    } else {
        (value - limit).abs()
    };
    worst.feed(tol - dev, WorstPoint::Scalar(at));
}

// ---------------------------------------------------------------------------
// f64 adapters over the Modulus-typed API (grids hand us raw points that are
// already validated by construction)

fn m(x: f64) -> Modulus {
    Modulus::trusted(x)
}

fn psi(x: f64) -> f64 {
    crate::psi::psi(m(x))
}

fn mu(x: f64) -> f64 {
    crate::psi::mu(m(x))
}

fn f8(x: f64) -> f64 {
    crate::psi::f8(m(x))
}

fn psi_bounds(x: f64) -> crate::psi::BoundPair {
    crate::psi::psi_bounds(m(x))
}

fn pm(p: f64, x: f64, y: f64) -> f64 {
    PowerMeanSpec::new(p, x, y).expect("positive arguments").value()
}

// ---------------------------------------------------------------------------
// shared shape functions (forms chosen to avoid catastrophic cancellation;
// see the elliptic module for the regrouped tail identities they rely on)

/// E - (1-r)K, increasing from (0,1) onto (0,1).
fn f1(x: f64) -> f64 {
    elliptic_combination(Combination::EMinus1MinusRK, m(x))
}

/// (E - (1-r)K)/r, decreasing onto (1, π/2).
fn f2(x: f64) -> f64 {
    f1(x) / x
}

/// E' - rK', decreasing from (0,1) onto (0,1).
fn f3(x: f64) -> f64 {
    elliptic_combination(Combination::EcMinusRKc, m(x))
}

/// (E' - rK')/(1-r), decreasing onto (0, 1).
fn f4(x: f64) -> f64 {
    f3(x) / (1.0 - x)
}

/// (E - r'K)/(1-√r')², decreasing onto (1, π/2). The numerator regroups as
/// K·(r⁴/(2(1+r')²) - tail) and the denominator as (r²/((1+r')(1+√r')))² —
/// both exact — so no cancellation survives near r = 0.
fn f5(x: f64) -> f64 {
    let rc = m(x).complement();
    let s = agm_sums(x, rc);
    let head = x.powi(4) / (2.0 * (1.0 + rc) * (1.0 + rc));
    let den = x * x / ((1.0 + rc) * (1.0 + rc.sqrt()));
    s.k * (head - s.tail) / (den * den)
}

/// (3-r)E' - (1+r)K' = K'·(δ³/2 - (2+δ)·tail'), δ = 1-r.
/// Increasing from (0,1) onto (-∞, 0).
fn f6(x: f64) -> f64 {
    let rc = m(x).complement();
    let s = agm_sums(rc, x);
    let delta = 1.0 - x;
    s.k * (0.5 * delta * delta * delta - (2.0 + delta) * s.tail)
}

/// (1+r)(E' - rK')/(1-r), decreasing onto (0, 1).
fn f7(x: f64) -> f64 {
    (1.0 + x) * f3(x) / (1.0 - x)
}

/// (E - r'²K)/r², increasing onto (π/4, 1).
fn growth_ratio(x: f64) -> f64 {
    elliptic_combination(Combination::EMinusRc2K, m(x)) / (x * x)
}

/// r'^c · K(r), evaluated directly.
fn rk_decay(c: f64, x: f64) -> f64 {
    let rc = m(x).complement();
    rc.powf(c) * agm_sums(x, rc).k
}

/// Same quantity parameterized by the complement ε = r', for probing the
/// r → 1 endpoint where r itself rounds to 1.
fn rk_from_complement(c: f64, eps: f64) -> f64 {
    let r = ((1.0 - eps) * (1.0 + eps)).sqrt();
    eps.powf(c) * agm_sums(r, eps).k
}

// ---------------------------------------------------------------------------
// identity claims

fn check_legendre(id: &'static str, grid: &GridSpec) -> CheckReport {
    identity_scan(id, grid, |x| crate::elliptic::legendre_residual(m(x)))
}

fn landen_claim(id: &'static str, grid: &GridSpec, index: usize) -> CheckReport {
    identity_scan(id, grid, |x| landen_residuals(m(x))[index].residual)
}

fn quad_claim(id: &'static str, grid: &GridSpec, index: usize) -> CheckReport {
    identity_scan(id, grid, |x| quadratic_residuals(m(x))[index].residual)
}

fn check_psi_square_identity(id: &'static str, grid: &GridSpec) -> CheckReport {
    identity_scan(id, grid, |x| crate::psi::psi_identity_residuals(m(x)).0)
}

fn check_psi_conjugate_identity(id: &'static str, grid: &GridSpec) -> CheckReport {
    identity_scan(id, grid, |x| crate::psi::psi_identity_residuals(m(x)).1)
}

fn check_reciprocity_psi(id: &'static str, grid: &GridSpec) -> CheckReport {
    identity_scan(id, grid, |x| reciprocity_residual(m(x)).0)
}

fn check_reciprocity_mu(id: &'static str, grid: &GridSpec) -> CheckReport {
    identity_scan(id, grid, |x| reciprocity_residual(m(x)).1)
}

// ---------------------------------------------------------------------------
// one-variable shape claims

fn check_psi_increasing(id: &'static str, grid: &GridSpec) -> CheckReport {
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, psi);
    feed_monotone(&mut worst, &xs, &ys, true);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y, WorstPoint::Scalar(x));
    }
    worst.report(id)
}

fn check_psi_convex(id: &'static str, grid: &GridSpec) -> CheckReport {
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, psi);
    feed_convex(&mut worst, &xs, &ys, true);
    worst.report(id)
}

fn check_psi_ratio_increasing(id: &'static str, grid: &GridSpec) -> CheckReport {
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, |x| psi(x) / x);
    feed_monotone(&mut worst, &xs, &ys, true);
    worst.report(id)
}

fn check_psi_sqrt_ratio_shape(id: &'static str, grid: &GridSpec) -> CheckReport {
    // g(r) = (1-√r)² ψ(r) / r decreases from π to 4/π. The left probe sits at
    // 1e-8 rather than 1e-6: the limit is approached like √r, so at 1e-6 the
    // value is still 2e-4 short of π while 1e-8 leaves clear headroom.
    // 1-√r is formed as (1-r)/(1+√r) — near r = 1 the direct subtraction
    // loses half the mantissa and the noise would swamp the tiny margins.
    let g = |x: f64| {
        let s = (1.0 - x) / (1.0 + x.sqrt());
        s * s * psi(x) / x
    };
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, g);
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y - 4.0 / PI, WorstPoint::Scalar(x));
        worst.feed(PI - y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1e-8, g(1e-8), PI, LIMIT_TOL);
    feed_limit(&mut worst, 1.0 - 1e-6, g(1.0 - 1e-6), 4.0 / PI, LIMIT_TOL);
    worst.report(id)
}

fn check_psi_sqrt_bounds(id: &'static str, grid: &GridSpec) -> CheckReport {
    let mut worst = Worst::new();
    for x in grid.points() {
        let b = psi_bounds(x);
        let p = psi(x);
        let scale = p.max(1.0);
        let s = (1.0 - x) / (1.0 + x.sqrt()); // 1-√x without cancellation
        let lo = 4.0 * x / (PI * s * s);
        let hi = PI * x / (s * s);
        worst.feed((p - lo) / scale, WorstPoint::Scalar(x));
        worst.feed((hi - p) / scale, WorstPoint::Scalar(x));
        // the bounds module must never report looser than the raw pair
        worst.feed((b.lower - lo) / scale + STRICT_FLOOR, WorstPoint::Scalar(x));
        worst.feed((hi - b.upper) / scale + STRICT_FLOOR, WorstPoint::Scalar(x));
    }
    worst.report(id)
}

fn check_psi_rational_bounds(id: &'static str, grid: &GridSpec) -> CheckReport {
    // πr/(1-r)² < ψ(r) < 16r/(π(1-r)²): tight at 0 from below and at 1 from
    // above, complementary to the sqrt pair.
    let mut worst = Worst::new();
    for x in grid.points() {
        let p = psi(x);
        let scale = p.max(1.0);
        let omr = 1.0 - x;
        let lo = PI * x / (omr * omr);
        let hi = 16.0 * x / (PI * omr * omr);
        worst.feed((p - lo) / scale, WorstPoint::Scalar(x));
        worst.feed((hi - p) / scale, WorstPoint::Scalar(x));
    }
    worst.report(id)
}

fn check_psi_combined_bounds(id: &'static str, grid: &GridSpec) -> CheckReport {
    // The reported pair takes the max of the two lower bounds and the min of
    // the two upper bounds, so it must still contain ψ.
    let mut worst = Worst::new();
    for x in grid.points() {
        let b = psi_bounds(x);
        let p = psi(x);
        let scale = p.max(1.0);
        worst.feed((p - b.lower) / scale, WorstPoint::Scalar(x));
        worst.feed((b.upper - p) / scale, WorstPoint::Scalar(x));
    }
    worst.report(id)
}

fn check_psi_arctanh_shape(id: &'static str, grid: &GridSpec) -> CheckReport {
    // g(r) = (1-√r)·artanh(1-√r)·ψ(r)/r decreases onto (4/π, ∞).
    let g = |x: f64| {
        let s = (1.0 - x) / (1.0 + x.sqrt()); // 1-√x without cancellation
        s * s.atanh() * psi(x) / x
    };
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, g);
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y - 4.0 / PI, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1.0 - 1e-6, g(1.0 - 1e-6), 4.0 / PI, LIMIT_TOL);
    // left endpoint diverges; just confirm the blow-up is underway
    worst.feed(g(1e-6) - 10.0, WorstPoint::Scalar(1e-6));
    worst.report(id)
}

fn check_mu_psi_increasing(id: &'static str, grid: &GridSpec) -> CheckReport {
    // μ(r)·ψ(r) is strictly increasing (μ decreases slower than ψ grows).
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, |x| mu(x) * psi(x));
    feed_monotone(&mut worst, &xs, &ys, true);
    worst.report(id)
}

fn check_psi_cosh_convex(id: &'static str, grid: &GridSpec) -> CheckReport {
    // h(x) = ψ(1/cosh x) is decreasing and convex on the cosh-argument axis.
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, |x| psi(1.0 / x.cosh()));
    feed_monotone(&mut worst, &xs, &ys, false);
    feed_convex(&mut worst, &xs, &ys, true);
    worst.report(id)
}

// ---------------------------------------------------------------------------
// two-variable (pair) claims

/// Sweep the symmetric pair grid. `margin(r, s)` must be positive off the
/// diagonal; `diag(r)` is a relative residual that must stay ≤ IDENTITY_TOL.
fn pair_scan(
    id: &'static str,
    grid: &GridSpec,
    margin: impl Fn(f64, f64) -> f64,
    diag: impl Fn(f64) -> f64,
) -> CheckReport {
    let axis = grid.points();
    let mut worst = Worst::new();
    for (i, &r) in axis.iter().enumerate() {
        for &s in &axis[i..] {
            if r == s {
                worst.feed(IDENTITY_TOL - diag(r).abs(), WorstPoint::Pair(r, s));
            } else {
                worst.feed(margin(r, s) - STRICT_FLOOR, WorstPoint::Pair(r, s));
            }
        }
    }
    worst.report(id)
}

fn cosh_mean_arg(r: f64, s: f64) -> f64 {
    let rc = m(r).complement();
    let sc = m(s).complement();
    (2.0 * r * s).sqrt() / (1.0 + r * s + rc * sc).sqrt()
}

fn check_pair_cosh(id: &'static str, grid: &GridSpec) -> CheckReport {
    // ψ(w(r,s)) ≤ √(ψ(r)ψ(s)) with w = √(2rs)/√(1+rs+r's'); equality on the
    // diagonal since w(r,r) = r up to rounding.
    pair_scan(
        id,
        grid,
        |r, s| (psi(r) * psi(s)).sqrt() - psi(cosh_mean_arg(r, s)),
        |r| {
            let p = psi(r);
            (psi(cosh_mean_arg(r, r)) - p) / p
        },
    )
}

fn check_pair_cosh_weak(id: &'static str, grid: &GridSpec) -> CheckReport {
    // v(r,s) = rs/(1 + r's') satisfies ψ(v) < √(ψψ) strictly, including on
    // the diagonal, and is dominated by the sharp argument w: ψ(v) < ψ(w).
    let mut worst = Worst::new();
    let axis = grid.points();
    for (i, &r) in axis.iter().enumerate() {
        let rc = m(r).complement();
        for &s in &axis[i..] {
            let sc = m(s).complement();
            let v = r * s / (1.0 + rc * sc);
            let pv = psi(v);
            worst.feed(
                (psi(r) * psi(s)).sqrt() - pv - STRICT_FLOOR,
                WorstPoint::Pair(r, s),
            );
            worst.feed(
                psi(cosh_mean_arg(r, s)) - pv - STRICT_FLOOR,
                WorstPoint::Pair(r, s),
            );
        }
    }
    worst.report(id)
}

fn check_pair_geometric(id: &'static str, grid: &GridSpec) -> CheckReport {
    pair_scan(
        id,
        grid,
        |r, s| (psi(r) * psi(s)).sqrt() - psi((r * s).sqrt()),
        |r| {
            let p = psi(r);
            (psi((r * r).sqrt()) - p) / p
        },
    )
}

fn power_mean_margin(p: f64, r: f64, s: f64) -> f64 {
    let gap = pm(p, psi(r), psi(s)) - psi(pm(p, r, s));
    // ψ(H_p(r,s)) ≤ H_p(ψ,ψ) for p ≥ 0; reversed for p ≤ -1.
    if p >= 0.0 {
        gap
    } else {
        -gap
    }
}

fn pair_power_claim(id: &'static str, grid: &GridSpec, p: f64) -> CheckReport {
    pair_scan(
        id,
        grid,
        move |r, s| power_mean_margin(p, r, s),
        move |r| {
            // H_p(r, r) = r exactly, so this residual is pure rounding
            let pv = psi(r);
            (psi(pm(p, r, r)) - pv) / pv
        },
    )
}

// ---------------------------------------------------------------------------
// auxiliary combination shapes

/// Monotone claim plus range containment plus endpoint-limit probes, with an
/// optional curvature clause for the shapes that claim one.
struct RangeSpec {
    increasing: bool,
    /// Some(true) = strictly convex, Some(false) = strictly concave.
    curvature: Option<bool>,
    /// claimed open range (lo, hi); an infinite end skips containment.
    lo: f64,
    hi: f64,
    /// probe location and expected limit; None skips that side.
    left: Option<(f64, f64)>,
    right: Option<(f64, f64)>,
}

fn shape_claim(
    id: &'static str,
    grid: &GridSpec,
    f: impl Fn(f64) -> f64,
    spec: RangeSpec,
) -> CheckReport {
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, &f);
    feed_monotone(&mut worst, &xs, &ys, spec.increasing);
    if let Some(convex) = spec.curvature {
        feed_convex(&mut worst, &xs, &ys, convex);
    }
    for (&x, &y) in xs.iter().zip(&ys) {
        if spec.lo.is_finite() {
            worst.feed(y - spec.lo, WorstPoint::Scalar(x));
        }
        if spec.hi.is_finite() {
            worst.feed(spec.hi - y, WorstPoint::Scalar(x));
        }
    }
    if let Some((at, limit)) = spec.left {
        feed_limit(&mut worst, at, f(at), limit, LIMIT_TOL);
    }
    if let Some((at, limit)) = spec.right {
        feed_limit(&mut worst, at, f(at), limit, LIMIT_TOL);
    }
    worst.report(id)
}

fn check_growth_ratio(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        growth_ratio,
        RangeSpec {
            increasing: true,
            curvature: Some(true),
            lo: PI / 4.0,
            hi: 1.0,
            left: Some((1e-6, PI / 4.0)),
            right: Some((1.0 - 1e-6, 1.0)),
        },
    )
}

fn check_decay_k_half(id: &'static str, grid: &GridSpec) -> CheckReport {
    // √r'·K decreases from π/2 to 0. Variation below r ≈ 0.02 is O(r⁴) —
    // under grid noise — so the monotone scan starts there; the right limit
    // is probed in the complement variable at r' = 1e-9, where the value
    // √(1e-9)·log(4e9) ≈ 7e-4 is already inside the probe tolerance.
    let f = |x: f64| rk_decay(0.5, x);
    let mut worst = Worst::new();
    let xs: Vec<f64> = grid.points().into_iter().filter(|&x| x >= 0.02).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(PI / 2.0 - y, WorstPoint::Scalar(x));
        worst.feed(y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1e-6, f(1e-6), PI / 2.0, LIMIT_TOL);
    feed_limit(&mut worst, 1.0, rk_from_complement(0.5, 1e-9), 0.0, LIMIT_TOL);
    worst.report(id)
}

fn check_decay_k_one(id: &'static str, grid: &GridSpec) -> CheckReport {
    // r'·K decreases from π/2 to 0; the right limit dies like r'·log(4/r')
    // so the probe at r' = 1e-5 already sits at 1.3e-4.
    let f = |x: f64| rk_decay(1.0, x);
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, f);
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(PI / 2.0 - y, WorstPoint::Scalar(x));
        worst.feed(y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1e-6, f(1e-6), PI / 2.0, LIMIT_TOL);
    feed_limit(&mut worst, 1.0, rk_from_complement(1.0, 1e-5), 0.0, LIMIT_TOL);
    worst.report(id)
}

fn check_f1(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        f1,
        RangeSpec {
            increasing: true,
            curvature: Some(false),
            lo: 0.0,
            hi: 1.0,
            left: Some((1e-6, 0.0)),
            right: Some((1.0 - 1e-6, 1.0)),
        },
    )
}

fn check_f2(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        f2,
        RangeSpec {
            increasing: false,
            curvature: None,
            lo: 1.0,
            hi: PI / 2.0,
            left: Some((1e-6, PI / 2.0)),
            right: Some((1.0 - 1e-6, 1.0)),
        },
    )
}

fn check_f3(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        f3,
        RangeSpec {
            increasing: false,
            curvature: Some(true),
            lo: 0.0,
            hi: 1.0,
            left: Some((1e-6, 1.0)),
            right: Some((1.0 - 1e-6, 0.0)),
        },
    )
}

fn check_f4(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        f4,
        RangeSpec {
            increasing: false,
            curvature: None,
            lo: 0.0,
            hi: 1.0,
            left: Some((1e-6, 1.0)),
            right: Some((1.0 - 1e-6, 0.0)),
        },
    )
}

fn check_f5(id: &'static str, grid: &GridSpec) -> CheckReport {
    // Decreasing onto (1, π/2). Variation below r ≈ 0.02 is O(r⁴) — flat at
    // grid resolution — so the monotone scan starts there. The right limit 1
    // is approached like 2√r' ~ 2(2(1-r))^(1/4) — a quartic root — so the
    // probe must sit all the way out at 1-1e-14, where the deviation is
    // still 7.5e-4.
    let mut worst = Worst::new();
    let xs: Vec<f64> = grid.points().into_iter().filter(|&x| x >= 0.02).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f5(x)).collect();
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y - 1.0, WorstPoint::Scalar(x));
        worst.feed(PI / 2.0 - y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1e-6, f5(1e-6), PI / 2.0, LIMIT_TOL);
    feed_limit(&mut worst, 1.0 - 1e-14, f5(1.0 - 1e-14), 1.0, LIMIT_TOL);
    worst.report(id)
}

fn check_f6(id: &'static str, grid: &GridSpec) -> CheckReport {
    // Increasing onto (-∞, 0): strictly negative everywhere, right limit 0.
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, f6);
    feed_monotone(&mut worst, &xs, &ys, true);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(-y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1.0 - 1e-6, f6(1.0 - 1e-6), 0.0, LIMIT_TOL);
    // left end diverges to -∞
    worst.feed(-f6(1e-6) - 10.0, WorstPoint::Scalar(1e-6));
    worst.report(id)
}

fn check_f7(id: &'static str, grid: &GridSpec) -> CheckReport {
    shape_claim(
        id,
        grid,
        f7,
        RangeSpec {
            increasing: false,
            curvature: None,
            lo: 0.0,
            hi: 1.0,
            left: Some((1e-6, 1.0)),
            right: Some((1.0 - 1e-6, 0.0)),
        },
    )
}

fn check_f8(id: &'static str, grid: &GridSpec) -> CheckReport {
    // Increasing onto (0, ∞), crossing 1 at the constant f8_root() captures.
    // The left limit is approached like √r, so the probe sits at 1e-8 where
    // the value is ≈ 1e-4; the right end must already have blown up well
    // past 1 by 1-1e-6.
    let mut worst = Worst::new();
    let (xs, ys) = eval_on(grid, f8);
    feed_monotone(&mut worst, &xs, &ys, true);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y, WorstPoint::Scalar(x));
    }
    feed_limit(&mut worst, 1e-8, f8(1e-8), 0.0, LIMIT_TOL);
    worst.feed(f8(1.0 - 1e-6) - 1e4, WorstPoint::Scalar(1.0 - 1e-6));
    let root = crate::psi::f8_root().get();
    worst.feed(1e-12 - (f8(root) - 1.0).abs(), WorstPoint::Scalar(root));
    worst.report(id)
}

// ---------------------------------------------------------------------------
// modulus claims (aspect-ratio domain)

fn check_modulus_sign(id: &'static str, grid: &GridSpec) -> CheckReport {
    // (M(b) - 1)·(b - 1) > 0 away from the square; M(1) = 1.
    let mut worst = Worst::new();
    for b in grid.points() {
        let mval = crate::modulus::exterior_modulus(b).expect("grid within range");
        if (b - 1.0).abs() < 1e-12 {
            worst.feed(IDENTITY_TOL - (mval - 1.0).abs(), WorstPoint::Scalar(b));
        } else {
            worst.feed((mval - 1.0) * (b - 1.0).signum(), WorstPoint::Scalar(b));
        }
    }
    worst.report(id)
}

fn check_modulus_bracket(id: &'static str, grid: &GridSpec) -> CheckReport {
    let mut worst = Worst::new();
    for b in grid.points() {
        let mval = crate::modulus::exterior_modulus(b).expect("grid within range");
        let bounds = crate::modulus::modulus_bounds(b).expect("grid within range");
        worst.feed(mval - bounds.lower, WorstPoint::Scalar(b));
        worst.feed(bounds.upper - mval, WorstPoint::Scalar(b));
    }
    worst.report(id)
}

fn check_modulus_bracket_relaxed(id: &'static str, grid: &GridSpec) -> CheckReport {
    // The relaxed pair must still bracket and must be no tighter than the
    // sharp pair it relaxes.
    let mut worst = Worst::new();
    for b in grid.points() {
        let mval = crate::modulus::exterior_modulus(b).expect("grid within range");
        let bounds = crate::modulus::modulus_bounds(b).expect("grid within range");
        worst.feed(mval - bounds.lower_relaxed, WorstPoint::Scalar(b));
        worst.feed(bounds.upper_relaxed - mval, WorstPoint::Scalar(b));
        worst.feed(bounds.lower - bounds.lower_relaxed, WorstPoint::Scalar(b));
        worst.feed(bounds.upper_relaxed - bounds.upper, WorstPoint::Scalar(b));
    }
    worst.report(id)
}

fn check_gap_sign(id: &'static str, grid: &GridSpec) -> CheckReport {
    // μ(ψ⁻¹(r))/π - 1/r changes sign with r - 1 and vanishes at r = 1.
    let mut worst = Worst::new();
    for r in grid.points() {
        let g = comparison_gap(r).expect("grid within range");
        if (r - 1.0).abs() < 1e-12 {
            worst.feed(IDENTITY_TOL - g.abs(), WorstPoint::Scalar(r));
        } else {
            worst.feed(g * (r - 1.0).signum(), WorstPoint::Scalar(r));
        }
    }
    worst.report(id)
}

fn check_gap_unimodal(id: &'static str, grid: &GridSpec) -> CheckReport {
    // On r > 1 the gap rises to a single interior maximum then decays:
    // positive throughout, with exactly one direction flip over the sweep.
    let mut worst = Worst::new();
    let xs = grid.points();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&r| comparison_gap(r).expect("sweep within range"))
        .collect();
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y, WorstPoint::Scalar(x));
    }
    let mut flips = 0usize;
    let mut rising = true;
    for i in 1..xs.len() {
        let d = ys[i] - ys[i - 1];
        if rising && d < 0.0 {
            flips += 1;
            rising = false;
        } else if !rising && d > 0.0 {
            flips += 1;
            rising = true;
        }
    }
    worst.feed(0.5 - (flips as f64 - 1.0).abs(), WorstPoint::Scalar(f64::NAN));
    worst.report(id)
}

fn check_gap_turning_point(id: &'static str, grid: &GridSpec) -> CheckReport {
    // The gap's maximizer coincides with the constant captured by
    // r0_constant(): locate the grid argmax in a narrow window around it and
    // require agreement within 1e-3 (the window grid is finer than that).
    let xs = grid.points();
    let mut best = f64::NEG_INFINITY;
    let mut arg = xs[0];
    let mut worst = Worst::new();
    for &r in &xs {
        let g = comparison_gap(r).expect("grid within range");
        worst.feed(g, WorstPoint::Scalar(r));
        if g > best {
            best = g;
            arg = r;
        }
    }
    worst.feed(1e-3 - (arg - r0_constant()).abs(), WorstPoint::Scalar(arg));
    // the window must actually contain the peak, not clip it
    worst.feed(
        if arg > xs[0] && arg < xs[xs.len() - 1] { 1.0 } else { -1.0 },
        WorstPoint::Scalar(arg),
    );
    worst.report(id)
}

fn check_gap_tail(id: &'static str, grid: &GridSpec) -> CheckReport {
    // Past the peak the gap decays like π/log(πr): strictly decreasing over
    // the logarithmic tail grid, positive throughout, below 0.2 by r = 1e6.
    let mut worst = Worst::new();
    let xs = grid.points();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&r| comparison_gap(r).expect("grid within range"))
        .collect();
    feed_monotone(&mut worst, &xs, &ys, false);
    for (&x, &y) in xs.iter().zip(&ys) {
        worst.feed(y, WorstPoint::Scalar(x));
    }
    worst.feed(0.2 - ys[ys.len() - 1], WorstPoint::Scalar(xs[xs.len() - 1]));
    worst.report(id)
}

fn check_mean_chain(id: &'static str, grid: &GridSpec) -> CheckReport {
    let axis = grid.points();
    let mut worst = Worst::new();
    for (i, &a) in axis.iter().enumerate() {
        for &b in &axis[i..] {
            let rep = modulus_power_mean_check(a, b, MeanCheckKind::Chain)
                .expect("grid within range");
            worst.feed(rep.worst_margin, WorstPoint::Pair(a, b));
        }
    }
    worst.report(id)
}

fn check_modulus_power_mean(id: &'static str, grid: &GridSpec) -> CheckReport {
    let axis = grid.points();
    let mut worst = Worst::new();
    for p in [-2.0, -1.0, 1.0, 2.0] {
        for (i, &a) in axis.iter().enumerate() {
            for &b in &axis[i..] {
                let rep = modulus_power_mean_check(a, b, MeanCheckKind::Power(p))
                    .expect("grid within range");
                worst.feed(rep.worst_margin, WorstPoint::Pair(a, b));
            }
        }
    }
    worst.report(id)
}

// ---------------------------------------------------------------------------
// registry

macro_rules! claims {
    ($(($id:literal, $class:ident, $run:expr)),* $(,)?) => {
        &[$(Claim { id: $id, class: GridClass::$class, run: $run }),*]
    };
}

static CLAIMS: &[Claim] = claims![
    // exact identities
    ("identity-legendre", Identity, check_legendre),
    ("identity-landen-k-up", Identity, |id, g| landen_claim(id, g, 0)),
    ("identity-landen-k-down", Identity, |id, g| landen_claim(id, g, 1)),
    ("identity-landen-e-up", Identity, |id, g| landen_claim(id, g, 2)),
    ("identity-landen-e-down", Identity, |id, g| landen_claim(id, g, 3)),
    ("identity-quad-k", Identity, |id, g| quad_claim(id, g, 0)),
    ("identity-quad-kc", Identity, |id, g| quad_claim(id, g, 1)),
    ("identity-quad-e", Identity, |id, g| quad_claim(id, g, 2)),
    ("identity-quad-ec", Identity, |id, g| quad_claim(id, g, 3)),
    ("identity-psi-square", Identity, check_psi_square_identity),
    ("identity-psi-conjugate", Identity, check_psi_conjugate_identity),
    ("reciprocity-psi", Identity, check_reciprocity_psi),
    ("reciprocity-mu", Identity, check_reciprocity_mu),
    // ψ shape
    ("psi-increasing", OneVar, check_psi_increasing),
    ("psi-convex", OneVar, check_psi_convex),
    ("psi-ratio-increasing", OneVar, check_psi_ratio_increasing),
    ("psi-sqrt-ratio-shape", OneVar, check_psi_sqrt_ratio_shape),
    ("psi-sqrt-bounds", OneVar, check_psi_sqrt_bounds),
    ("psi-rational-bounds", OneVar, check_psi_rational_bounds),
    ("psi-combined-bounds", OneVar, check_psi_combined_bounds),
    ("psi-arctanh-shape", OneVar, check_psi_arctanh_shape),
    ("mu-psi-increasing", OneVar, check_mu_psi_increasing),
    ("psi-cosh-convex", CoshArg, check_psi_cosh_convex),
    // two-variable mean comparisons
    ("pair-mean-cosh", PairAxis, check_pair_cosh),
    ("pair-mean-cosh-weak", PairAxis, check_pair_cosh_weak),
    ("pair-mean-geometric", PairAxis, check_pair_geometric),
    ("pair-power-mean-m2", PairAxis, |id, g| pair_power_claim(id, g, -2.0)),
    ("pair-power-mean-m1", PairAxis, |id, g| pair_power_claim(id, g, -1.0)),
    ("pair-power-mean-0", PairAxis, |id, g| pair_power_claim(id, g, 0.0)),
    ("pair-power-mean-p1", PairAxis, |id, g| pair_power_claim(id, g, 1.0)),
    ("pair-power-mean-p2", PairAxis, |id, g| pair_power_claim(id, g, 2.0)),
    // auxiliary elliptic combinations
    ("aux-growth-ratio", OneVar, check_growth_ratio),
    ("aux-decay-k-half", OneVar, check_decay_k_half),
    ("aux-decay-k-one", OneVar, check_decay_k_one),
    ("aux-f1", OneVar, check_f1),
    ("aux-f2", OneVar, check_f2),
    ("aux-f3", OneVar, check_f3),
    ("aux-f4", OneVar, check_f4),
    ("aux-f5", OneVar, check_f5),
    ("aux-f6", OneVar, check_f6),
    ("aux-f7", OneVar, check_f7),
    ("aux-f8", OneVar, check_f8),
    // rectangle modulus
    ("modulus-sign", Aspect, check_modulus_sign),
    ("modulus-bracket", Aspect, check_modulus_bracket),
    ("modulus-bracket-relaxed", Aspect, check_modulus_bracket_relaxed),
    ("gap-sign", Aspect, check_gap_sign),
    ("gap-unimodal", GapSweep, check_gap_unimodal),
    ("gap-turning-point", GapPeak, check_gap_turning_point),
    ("gap-tail", GapTail, check_gap_tail),
    ("modulus-mean-chain", MeanAxis, check_mean_chain),
    ("modulus-power-mean", MeanAxis, check_modulus_power_mean),
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// Run one registered claim on the given grid.
pub fn run_check(claim_id: &str, grid: GridSpec) -> Result<CheckReport> {
    let claim = CLAIMS
        .iter()
        .find(|c| c.id == claim_id)
        .ok_or_else(|| Error::UnknownClaim {
            id: claim_id.to_string(),
        })?;
    Ok((claim.run)(claim.id, &grid))
}

/// Run every registered claim with the standard grids.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    CLAIMS
        .iter()
        .map(|c| {
            let grid = grid_for(c.class, cfg);
            (c.run)(c.id, &grid)
        })
        .collect()
}

/// Claims whose id starts with `prefix`, run with the standard grids.
/// An empty result means the prefix matched nothing.
pub fn run_matching(prefix: &str, cfg: &VerifyConfig) -> Vec<CheckReport> {
    CLAIMS
        .iter()
        .filter(|c| c.id.starts_with(prefix))
        .map(|c| {
            let grid = grid_for(c.class, cfg);
            (c.run)(c.id, &grid)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_size_and_unique_ids() {
        let ids = claim_ids();
        assert_eq!(ids.len(), 51);
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn unknown_claim_is_an_error() {
        let grid = GridSpec::new(0.1, 0.9, 10, GridLaw::Uniform).unwrap();
        let err = run_check("no-such-claim", grid).unwrap_err();
        assert!(matches!(err, Error::UnknownClaim { .. }));
    }

    #[test]
    fn single_claim_on_custom_grid() {
        let grid = GridSpec::new(0.05, 0.95, 50, GridLaw::Uniform).unwrap();
        let rep = run_check("identity-legendre", grid).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.points_tested, 50);
        assert!(rep.worst_margin > 0.0);
    }

    #[test]
    fn report_line_format() {
        let rep = CheckReport {
            claim_id: "demo",
            verdict: Verdict::Pass,
            worst_margin: 1.5e-11,
            worst_point: WorstPoint::Scalar(0.25),
            points_tested: 42,
        };
        assert_eq!(rep.line(), "demo pass margin=1.5e-11 point=0.25 points=42");
        let rep2 = CheckReport {
            claim_id: "demo2",
            verdict: Verdict::Fail,
            worst_margin: -2.0e-3,
            worst_point: WorstPoint::Pair(0.1, 0.2),
            points_tested: 7,
        };
        assert!(rep2.line().contains("fail"));
        assert!(rep2.line().contains("(0.1, 0.2)"));
    }

    #[test]
    fn prefix_matching() {
        let cfg = VerifyConfig {
            identity_grid: GridSpec::new(0.1, 0.9, 20, GridLaw::Uniform).unwrap(),
            ..VerifyConfig::default()
        };
        let reps = run_matching("identity-quad", &cfg);
        assert_eq!(reps.len(), 4);
        assert!(run_matching("zzz", &cfg).is_empty());
    }

    // The full standard sweep lives in the acceptance suite; here a thinned
    // configuration exercises every claim end to end.
    #[test]
    fn thinned_sweep_all_pass() {
        let cfg = VerifyConfig {
            identity_grid: GridSpec::new(1e-3, 1.0 - 1e-3, 60, GridLaw::EndpointRefined).unwrap(),
            one_var_grid: GridSpec::new(1e-6, 1.0 - 1e-6, 400, GridLaw::EndpointRefined).unwrap(),
            pair_axis_grid: GridSpec::new(0.02, 0.98, 14, GridLaw::Uniform).unwrap(),
            aspect_grid: GridSpec::new(1e-3, 1e3, 80, GridLaw::Logarithmic).unwrap(),
        };
        let reports = run_all(&cfg);
        assert_eq!(reports.len(), 51);
        for rep in &reports {
            assert_eq!(rep.verdict, Verdict::Pass, "failed: {}", rep.line());
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = VerifyConfig {
            identity_grid: GridSpec::new(1e-3, 1.0 - 1e-3, 30, GridLaw::Uniform).unwrap(),
            one_var_grid: GridSpec::new(1e-4, 1.0 - 1e-4, 200, GridLaw::Uniform).unwrap(),
            pair_axis_grid: GridSpec::new(0.05, 0.95, 8, GridLaw::Uniform).unwrap(),
            aspect_grid: GridSpec::new(1e-2, 1e2, 40, GridLaw::Logarithmic).unwrap(),
        };
        let a: Vec<String> = run_all(&cfg).iter().map(|r| r.line()).collect();
        let b: Vec<String> = run_all(&cfg).iter().map(|r| r.line()).collect();
        assert_eq!(a, b);
    }
}
