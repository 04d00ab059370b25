//! The rectangle map coefficient `psi` and the Grötzsch ring function `mu`.
//!
//! `psi(r) = 2 (E - (1-r)K) / (E' - rK')` is a strictly increasing
//! homeomorphism of (0, 1) onto (0, ∞); `mu(r) = (pi/2) K'/K` is the module
//! of the Grötzsch ring in the unit disk. The exterior modulus of a
//! rectangle ([`crate::modulus`]) is built from the composition of `mu` with
//! the inverse of `psi`.

use crate::elliptic::{agm_sums, elliptic_combination, Combination, Modulus};
use crate::error::{Error, Result};
use crate::root::newton_bracketed;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Above this, `psi` is evaluated through its reciprocal identity.
const RECIPROCAL_SWITCH: f64 = 0.99;
/// Below this, the combinations feeding `psi` come from series heads.
const SMALL_SWITCH: f64 = 1e-4;

/// Route taken by [`psi_value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiPath {
    /// Quotient of the two stabilized elliptic combinations.
    Direct,
    /// `r` above the reciprocal switch: returned as `1/psi(s)` for the
    /// conjugate point `s = ((1 - r)/(1 + sqrt r)^2)^2`, which is tiny and
    /// numerically friendly where `r` itself is not.
    ReciprocalIdentity,
    /// `r` below the small switch: numerator and denominator from series.
    SmallRSeries,
}

/// `psi(r)` together with the route that produced it.
#[derive(Debug, Clone, Copy)]
pub struct PsiValue {
    pub value: f64,
    pub path: PsiPath,
}

fn psi_quotient(x: f64) -> f64 {
    let r = Modulus::trusted(x);
    2.0 * elliptic_combination(Combination::EMinus1MinusRK, r)
        / elliptic_combination(Combination::EcMinusRKc, r)
}

pub fn psi_value(r: Modulus) -> PsiValue {
    let x = r.get();
    if x > RECIPROCAL_SWITCH {
        // s = ((1 - sqrt r)/(1 + sqrt r))^2 with 1 - sqrt r expanded so the
        // subtraction happens at full precision.
        let frac = (1.0 - x) / ((1.0 + x.sqrt()) * (1.0 + x.sqrt()));
        let s = frac * frac;
        PsiValue {
            value: 1.0 / psi_quotient(s),
            path: PsiPath::ReciprocalIdentity,
        }
    } else {
        let path = if x < SMALL_SWITCH {
            PsiPath::SmallRSeries
        } else {
            PsiPath::Direct
        };
        PsiValue {
            value: psi_quotient(x),
            path,
        }
    }
}

/// `psi(r) = 2 (E - (1-r)K) / (E' - rK')`.
pub fn psi(r: Modulus) -> f64 {
    psi_value(r).value
}

/// `d psi / dr = pi (1 - r) / ((1 + r) (E' - rK')^2)`.
pub fn psi_prime(r: Modulus) -> f64 {
    let x = r.get();
    let d = elliptic_combination(Combination::EcMinusRKc, r);
    PI * (1.0 - x) / ((1.0 + x) * d * d)
}

/// Inverse of [`psi`]: the unique `r` with `psi(r) = y`.
///
/// The starting bracket inverts the sharp elementary bounds
/// `4r/(pi (1 - sqrt r)^2) < psi(r) < pi r/(1 - sqrt r)^2` in closed form,
/// and a bracket-guarded Newton iteration polishes to a relative residual
/// near 1e-13. The verification suite exercises `y` across `[1e-8, 1e8]`;
/// the construction itself is sound on the whole positive axis.
pub fn psi_inv(y: f64) -> Result<Modulus> {
    if !y.is_finite() || y <= 0.0 {
        return Err(Error::Domain {
            op: "psi_inv",
            value: y,
            expected: "positive finite reals",
        });
    }
    let sy = y.sqrt();
    let lo = (sy / (PI.sqrt() + sy)).powi(2);
    let hi = (sy / ((4.0 / PI).sqrt() + sy)).powi(2);
    let x = newton_bracketed(
        "psi_inv",
        lo,
        hi,
        0.5 * (lo + hi),
        true,
        |x| {
            let r = Modulus::trusted(x);
            (psi(r) - y, psi_prime(r))
        },
        |_, fx| fx.abs() <= 1e-13 * y,
    )?;
    Ok(Modulus::trusted(x))
}

/// The Grötzsch ring function `mu(r) = (pi/2) K'(r) / K(r)`, strictly
/// decreasing from ∞ to 0 on (0, 1).
pub fn mu(r: Modulus) -> f64 {
    let x = r.get();
    let rc = r.complement();
    FRAC_PI_2 * agm_sums(rc, x).k / agm_sums(x, rc).k
}

/// `d mu / dr = -pi^2 / (4 r (1 - r^2) K(r)^2)`.
pub fn mu_prime(r: Modulus) -> f64 {
    let x = r.get();
    let k = agm_sums(x, r.complement()).k;
    -(PI * PI) / (4.0 * x * (1.0 - x) * (1.0 + x) * k * k)
}

/// Inverse of [`mu`] on (0, ∞).
///
/// Seeds from `mu(r) ≈ log(4/r)`, expands to a straddling bracket
/// geometrically, then runs the guarded Newton iteration. Values whose
/// preimage is too close to 0 or 1 for f64 to resolve produce a convergence
/// error; everything the rectangle problem needs (`mu` in roughly
/// `[0.1, 700]`) resolves fine.
pub fn mu_inv(value: f64) -> Result<Modulus> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::Domain {
            op: "mu_inv",
            value,
            expected: "positive finite reals",
        });
    }
    let seed = (4.0 * (-value).exp()).clamp(1e-300, 0.5);
    let f_seed = mu(Modulus::trusted(seed));
    if f_seed == value {
        return Ok(Modulus::trusted(seed));
    }
    let mut lo = seed;
    let mut hi = seed;
    if f_seed > value {
        // mu is decreasing, so the preimage lies to the right of the seed.
        loop {
            hi = 0.5 * (1.0 + hi);
            if 1.0 - hi < 1e-12 {
                return Err(Error::Convergence {
                    op: "mu_inv",
                    detail: "target below the resolvable range of mu",
                });
            }
            if mu(Modulus::trusted(hi)) <= value {
                break;
            }
        }
    } else {
        loop {
            lo *= 0.25;
            if lo < 1e-300 {
                return Err(Error::Convergence {
                    op: "mu_inv",
                    detail: "target above the resolvable range of mu",
                });
            }
            if mu(Modulus::trusted(lo)) >= value {
                break;
            }
        }
    }
    let x = newton_bracketed(
        "mu_inv",
        lo,
        hi,
        0.5 * (lo + hi),
        false,
        |x| {
            let r = Modulus::trusted(x);
            (mu(r) - value, mu_prime(r))
        },
        |_, fx| fx.abs() <= 1e-13 * value,
    )?;
    Ok(Modulus::trusted(x))
}

/// Residuals `|product - 1|` of the two product identities satisfied by
/// `psi`: `psi(r^2) psi(t^2) = 1` with `t = (1-r)/(1+r)`, and
/// `psi(t) psi(t~) = 1` with `t~ = (1-r')/(1+r')`.
pub fn psi_identity_residuals(r: Modulus) -> (f64, f64) {
    let x = r.get();
    let rc = r.complement();
    let t = (1.0 - x) / (1.0 + x);
    let square = psi(Modulus::trusted(x * x)) * psi(Modulus::trusted(t * t)) - 1.0;
    // (1 - r')/(1 + r') = r^2/(1 + r')^2, exact where r' is near 1.
    let tc = x * x / ((1.0 + rc) * (1.0 + rc));
    let conj = psi(Modulus::trusted(t)) * psi(Modulus::trusted(tc)) - 1.0;
    (square.abs(), conj.abs())
}

/// A two-sided elementary bound with the identity of the winning formulas.
#[derive(Debug, Clone, Copy)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    /// `"rational"` for the `(1-r)`-quotient, `"sqrt"` for the
    /// `(1-sqrt r)`-quotient.
    pub lower_id: &'static str,
    pub upper_id: &'static str,
}

/// The tighter of the elementary bounds on `psi` at `r`:
/// `pi r/(1-r)^2` and `4r/(pi (1-sqrt r)^2)` from below,
/// `16r/(pi (1-r)^2)` and `pi r/(1-sqrt r)^2` from above. Which formula is
/// tighter switches inside (0, 1), so the winner is reported by name.
pub fn psi_bounds(r: Modulus) -> BoundPair {
    let x = r.get();
    let omr = 1.0 - x;
    let oms = omr / (1.0 + x.sqrt()); // 1 - sqrt r without cancellation
    let rat_lo = PI * x / (omr * omr);
    let sqrt_lo = 4.0 * x / (PI * oms * oms);
    let rat_hi = 16.0 * x / (PI * omr * omr);
    let sqrt_hi = PI * x / (oms * oms);
    let (lower, lower_id) = if rat_lo >= sqrt_lo {
        (rat_lo, "rational")
    } else {
        (sqrt_lo, "sqrt")
    };
    let (upper, upper_id) = if rat_hi <= sqrt_hi {
        (rat_hi, "rational")
    } else {
        (sqrt_hi, "sqrt")
    };
    BoundPair {
        lower,
        upper,
        lower_id,
        upper_id,
    }
}

/// `f8(r) = (E - (1-r)K) / (sqrt r (1-r) K)`, strictly increasing on (0, 1)
/// from 0 to ∞.
pub fn f8(r: Modulus) -> f64 {
    let x = r.get();
    let k = agm_sums(x, r.complement()).k;
    elliptic_combination(Combination::EMinus1MinusRK, r) / (x.sqrt() * (1.0 - x) * k)
}

fn f8_with_derivative(x: f64) -> (f64, f64) {
    let r = Modulus::trusted(x);
    let s = agm_sums(x, r.complement());
    let k = s.k;
    let e = k * (1.0 - (0.5 * x * x + s.tail));
    let val = elliptic_combination(Combination::EMinus1MinusRK, r)
        / (x.sqrt() * (1.0 - x) * k);
    // f8' = ((1+r)K - E)(2E - r'^2 K) / (2 r^{3/2} (1+r)(1-r)^2 K^2),
    // with 2E - r'^2 K assembled as E + (E - r'^2 K) to stay stable.
    let a = (1.0 + x) * k - e;
    let b = e + k * (0.5 * x * x - s.tail);
    let der = a * b / (2.0 * x * x.sqrt() * (1.0 + x) * (1.0 - x) * (1.0 - x) * k * k);
    (val, der)
}

/// The unique solution of `f8(r) = 1`, solved once and cached.
pub fn f8_root() -> Modulus {
    static ROOT: OnceLock<f64> = OnceLock::new();
    Modulus::trusted(*ROOT.get_or_init(|| {
        newton_bracketed(
            "f8_root",
            0.1,
            0.9,
            0.5,
            true,
            |x| {
                let (v, d) = f8_with_derivative(x);
                (v - 1.0, d)
            },
            |_, fx| fx.abs() <= 1e-14,
        )
        .expect("f8 - 1 changes sign on [0.1, 0.9]")
    }))
}

/// A power mean `H_p(x, y) = ((x^p + y^p)/2)^(1/p)` of two positive reals,
/// with the geometric mean filling the `p = 0` slot.
#[derive(Debug, Clone, Copy)]
pub struct PowerMeanSpec {
    pub p: f64,
    pub x: f64,
    pub y: f64,
}

impl PowerMeanSpec {
    // `!(v > 0.0)` rather than `v <= 0.0`: the negation is what catches NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(p: f64, x: f64, y: f64) -> Result<Self> {
        for v in [x, y] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain {
                    op: "PowerMeanSpec::new",
                    value: v,
                    expected: "positive finite reals",
                });
            }
        }
        if !p.is_finite() {
            return Err(Error::Domain {
                op: "PowerMeanSpec::new",
                value: p,
                expected: "finite exponents",
            });
        }
        Ok(PowerMeanSpec { p, x, y })
    }

    /// Evaluated with the dominant argument factored out so `x^p` cannot
    /// overflow for any magnitudes this crate meets, and through
    /// `exp_m1`/`ln_1p` so precision survives `p → 0` (the naive
    /// `(..)^(1/p)` loses a digit for every decade `p` shrinks).
    pub fn value(self) -> f64 {
        let PowerMeanSpec { p, x, y } = self;
        if x == y {
            return x;
        }
        if p == 0.0 {
            return x.sqrt() * y.sqrt();
        }
        let (w, z) = if p > 0.0 {
            (x.max(y), x.min(y))
        } else {
            (x.min(y), x.max(y))
        };
        let d = (p * (z / w).ln()).exp_m1(); // (z/w)^p - 1
        w * ((0.5 * d).ln_1p() / p).exp()
    }
}

/// `H_p(x, y)`; see [`PowerMeanSpec`].
pub fn power_mean(p: f64, x: f64, y: f64) -> Result<f64> {
    Ok(PowerMeanSpec::new(p, x, y)?.value())
}
