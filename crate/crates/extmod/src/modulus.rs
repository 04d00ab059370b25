//! The exterior modulus of a rectangle's connecting curve family, its
//! logarithmic growth bounds, and the comparison with the interior modulus.
//!
//! For the rectangle `R = [0,1] x [0,b]`, the family of curves joining the
//! two horizontal sides *inside* R has modulus `b`; the family joining them
//! through the *exterior* of R has modulus `M(b) = mu(psi_inv(1/b)) / pi`.
//! The two agree exactly at the square `b = 1` and the exterior modulus
//! grows only logarithmically, so the gap `m(r) - 1/r` (in the reciprocal
//! variable) changes sign once and has a single interior maximum at
//! [`r0_constant`].

use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::psi::{f8_root, mu, power_mean, psi, psi_inv};
use crate::verify::{CheckReport, Verdict, WorstPoint};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Aspect-ratio range on which the `psi` inversion is certified; outside it
/// the modulus operations refuse input rather than degrade silently.
const B_LO: f64 = 1e-8;
const B_HI: f64 = 1e8;

fn check_aspect(op: &'static str, b: f64) -> Result<()> {
    if b.is_finite() && (B_LO..=B_HI).contains(&b) {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            value: b,
            expected: "[1e-8, 1e8], where the psi inversion is certified",
        })
    }
}

/// The rectangle `[0,1] x [0,b]` with its cached preimage `r = psi_inv(1/b)`.
#[derive(Debug, Clone, Copy)]
pub struct RectangleAspect {
    pub b: f64,
    pub preimage: Modulus,
}

impl RectangleAspect {
    pub fn new(b: f64) -> Result<Self> {
        check_aspect("RectangleAspect::new", b)?;
        Ok(RectangleAspect {
            b,
            preimage: psi_inv(1.0 / b)?,
        })
    }
}

/// `M(b) = mu(psi_inv(1/b)) / pi`, the modulus of the curves connecting the
/// horizontal sides of `[0,1] x [0,b]` through its exterior. Strictly
/// increasing in `b`; equals 1 at `b = 1`.
pub fn exterior_modulus(b: f64) -> Result<f64> {
    check_aspect("exterior_modulus", b)?;
    Ok(mu(psi_inv(1.0 / b)?) / PI)
}

/// The interior modulus, which is simply `b`; wrapped with the same
/// signature as [`exterior_modulus`] so the two can be compared uniformly.
pub fn interior_modulus(b: f64) -> Result<f64> {
    if b.is_finite() && b > 0.0 {
        Ok(b)
    } else {
        Err(Error::Domain {
            op: "interior_modulus",
            value: b,
            expected: "positive finite aspect ratios",
        })
    }
}

/// Closed-form growth bounds `lower < M(b) < upper` together with the
/// one-line relaxations `lower_relaxed < lower` and `upper < upper_relaxed`.
#[derive(Debug, Clone, Copy)]
pub struct ModulusBounds {
    pub lower: f64,
    pub upper: f64,
    pub lower_relaxed: f64,
    pub upper_relaxed: f64,
}

/// Elementary bounds on the exterior modulus:
/// `L(b) = (2/pi)(1 - t^-4)^(1/4) log(2t)` with `t = 1 + sqrt(4b/pi)`, and
/// `U(b) = (1/pi) log(2s^2 (1 + sqrt(1 - s^-4)))` with `s = 1 + sqrt(pi b)`.
/// The relaxations replace `(1 - t^-4)^(1/4)` by `1 - t^-1` below and drop
/// the `s^-4` correction above.
pub fn modulus_bounds(b: f64) -> Result<ModulusBounds> {
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::Domain {
            op: "modulus_bounds",
            value: b,
            expected: "positive finite aspect ratios",
        });
    }
    let t = 1.0 + (4.0 * b / PI).sqrt();
    let log2t = (2.0 * t).ln();
    let lower = (2.0 / PI) * (1.0 - t.powi(-4)).powf(0.25) * log2t;
    let lower_relaxed = (2.0 / PI) * (1.0 - 1.0 / t) * log2t;
    let s = 1.0 + (PI * b).sqrt();
    let s2 = s * s;
    let upper = (2.0 * s2 * (1.0 + (1.0 - 1.0 / (s2 * s2)).sqrt())).ln() / PI;
    let upper_relaxed = (2.0 / PI) * (2.0 * s).ln();
    Ok(ModulusBounds {
        lower,
        upper,
        lower_relaxed,
        upper_relaxed,
    })
}

/// The comparison function `f(r) = mu(psi_inv(r))/pi - 1/r`: negative on
/// (0, 1), zero at 1, positive on (1, ∞), rising to its single maximum at
/// [`r0_constant`] and then decaying (only logarithmically) back toward 0.
pub fn comparison_gap(r: f64) -> Result<f64> {
    check_aspect("comparison_gap", r)?;
    Ok(mu(psi_inv(r)?) / PI - 1.0 / r)
}

/// The turning point `r0 = psi(f8_root()) = 8.24639...` of the comparison
/// gap, computed once from the root of `f8 = 1` and cached.
pub fn r0_constant() -> f64 {
    static R0: OnceLock<f64> = OnceLock::new();
    *R0.get_or_init(|| psi(f8_root()))
}

/// Residuals of the reciprocity pair at `r`, with
/// `s = ((1 - sqrt r)/(1 + sqrt r))^2` the conjugate aspect preimage:
/// `|psi(r) psi(s) - 1|` and the equivalent ring-function form
/// `|mu(r) mu(s) / pi^2 - 1|`. Both vanish identically; `r = 3 - 2 sqrt 2`
/// is the common fixed point.
pub fn reciprocity_residual(r: Modulus) -> (f64, f64) {
    let x = r.get();
    // (1 - sqrt r)/(1 + sqrt r) with the numerator expanded against (1 - r).
    let frac = (1.0 - x) / ((1.0 + x.sqrt()) * (1.0 + x.sqrt()));
    let s = Modulus::trusted(frac * frac);
    let psi_form = (psi(r) * psi(s) - 1.0).abs();
    let mu_form = (mu(r) * mu(s) / (PI * PI) - 1.0).abs();
    (psi_form, mu_form)
}

/// Which relation [`modulus_power_mean_check`] verifies for one aspect pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanCheckKind {
    /// The three-link chain: `M(harmonic mean of aspects)` ≤ geometric mean
    /// of the moduli ≤ arithmetic mean of the moduli ≤ `M(arithmetic mean)`.
    Chain,
    /// `M(H_p(a, b))` against `H_p(M(a), M(b))`: the modulus side dominates
    /// for `p >= 1` and is dominated for `p <= -1`. Exponents outside
    /// {-2, -1, 1, 2} are refused.
    Power(f64),
}

/// Checks the selected mean relation at one pair of aspect ratios. Off the
/// diagonal every inequality must hold strictly (margin > 1e-12); on the
/// diagonal `a = b` they all collapse to equalities (residual ≤ 1e-10).
pub fn modulus_power_mean_check(a: f64, b: f64, kind: MeanCheckKind) -> Result<CheckReport> {
    check_aspect("modulus_power_mean_check", a)?;
    check_aspect("modulus_power_mean_check", b)?;
    let ma = exterior_modulus(a)?;
    let mb = exterior_modulus(b)?;
    let (claim_id, margins) = match kind {
        MeanCheckKind::Chain => {
            let m_harm = exterior_modulus(2.0 * a * b / (a + b))?;
            let m_arith = exterior_modulus(0.5 * (a + b))?;
            let gm = (ma * mb).sqrt();
            let am = 0.5 * (ma + mb);
            ("modulus-mean-chain", vec![gm - m_harm, am - gm, m_arith - am])
        }
        MeanCheckKind::Power(p) => {
            if ![-2.0, -1.0, 1.0, 2.0].contains(&p) {
                return Err(Error::Domain {
                    op: "modulus_power_mean_check",
                    value: p,
                    expected: "exponents -2, -1, 1, or 2",
                });
            }
            let m_mean = exterior_modulus(power_mean(p, a, b)?)?;
            let mean_m = power_mean(p, ma, mb)?;
            let margin = if p >= 1.0 {
                m_mean - mean_m
            } else {
                mean_m - m_mean
            };
            ("modulus-power-mean", vec![margin])
        }
    };
    let (verdict, worst_margin) = if a == b {
        let worst = margins.iter().fold(0.0_f64, |acc, m| acc.max(m.abs()));
        let pass = worst <= 1e-10 * ma.max(1.0);
        (if pass { Verdict::Pass } else { Verdict::Fail }, worst)
    } else {
        let worst = margins.iter().fold(f64::INFINITY, |acc, &m| acc.min(m));
        let pass = worst > 1e-12;
        (if pass { Verdict::Pass } else { Verdict::Fail }, worst)
    };
    Ok(CheckReport {
        claim_id,
        verdict,
        worst_margin,
        worst_point: WorstPoint::Pair(a, b),
        points_tested: 1,
    })
}
