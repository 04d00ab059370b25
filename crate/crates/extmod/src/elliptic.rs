//! Complete elliptic integrals in the modulus convention, computed through
//! the arithmetic–geometric mean.
//!
//! Throughout, `r` is the modulus and `r' = sqrt(1 - r^2)` the complementary
//! modulus; `K(r)` and `E(r)` are the complete integrals of the first and
//! second kind, and `K'(r) = K(r')`, `E'(r) = E(r')`.
//!
//! Everything rests on one AGM sweep that carries the quadratically
//! collapsing `c`-sequence without ever subtracting nearly equal numbers, so
//! the differences that cancel catastrophically when assembled from finished
//! values of `K` and `E` are available directly in stable form through
//! [`elliptic_combination`].

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Below this modulus, `K` and `E` switch to short Maclaurin series.
const SMALL_R: f64 = 1e-4;
/// Above this modulus, `E' - rK'` switches to its complementary expansion.
const NEAR_ONE: f64 = 1.0 - 1e-4;

/// A modulus confined to the open interval (0, 1).
///
/// The constructor is the single domain gate for the functions defined on
/// (0, 1); everything accepting a `Modulus` is total.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r < 1.0 {
            Ok(Modulus(r))
        } else {
            Err(Error::Domain {
                op: "Modulus::new",
                value: r,
                expected: "the open interval (0, 1)",
            })
        }
    }

    /// Wraps a value already proven to lie in (0, 1).
    pub(crate) fn trusted(r: f64) -> Self {
        debug_assert!(r > 0.0 && r < 1.0, "trusted modulus {r} outside (0, 1)");
        Modulus(r)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// The complementary modulus, grouped as `sqrt((1 - r)(1 + r))` so no
    /// accuracy is lost when `r` is near 1.
    pub fn complement(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

fn complement_of(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// Result of one AGM sweep at a modulus/complement pair.
///
/// `k` is `pi / (2 agm(1, complement))`, i.e. `K` at the modulus. `tail` is
/// `sum_{n>=1} 2^{n-1} c_n^2` for the subtraction-free recurrence
/// `c_{n+1} = c_n^2 / (4 a_{n+1})` started at `c_0 = modulus`; the full sum
/// `S = c_0^2/2 + tail` gives `E = K (1 - S)`. The leading term is left to
/// the caller so it can be regrouped exactly against neighbouring terms.
pub(crate) struct AgmSums {
    pub k: f64,
    pub tail: f64,
}

pub(crate) fn agm_sums(modulus: f64, complement: f64) -> AgmSums {
    debug_assert!(modulus >= 0.0 && complement > 0.0);
    let mut a = 1.0_f64;
    let mut b = complement;
    let mut c = modulus;
    let mut tail = 0.0_f64;
    let mut weight = 0.5_f64;
    // c collapses quadratically once a and b meet, so the cap is generous:
    // even complement = 1e-300 converges in under twenty sweeps.
    for _ in 0..64 {
        if c <= 2.0 * f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        c = c * c / (4.0 * an);
        a = an;
        weight *= 2.0;
        tail += weight * c * c;
    }
    AgmSums {
        k: PI / (2.0 * a),
        tail,
    }
}

/// `K` and `E` at the given modulus from a single sweep.
pub(crate) fn k_and_e(modulus: f64, complement: f64) -> (f64, f64) {
    let s = agm_sums(modulus, complement);
    let full = 0.5 * modulus * modulus + s.tail;
    (s.k, s.k * (1.0 - full))
}

/// Arithmetic–geometric mean of two positive reals.
// `!(v > 0.0)` rather than `v <= 0.0`: the negation is what catches NaN.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn agm(a: f64, b: f64) -> Result<f64> {
    for v in [a, b] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain {
                op: "agm",
                value: v,
                expected: "positive finite reals",
            });
        }
    }
    // Scale by the larger argument so intermediate products cannot overflow.
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let mut x = 1.0_f64;
    let mut y = lo / hi;
    for _ in 0..64 {
        if x - y <= 2.0 * f64::EPSILON * x {
            break;
        }
        let xn = 0.5 * (x + y);
        y = (x * y).sqrt();
        x = xn;
    }
    Ok(hi * 0.5 * (x + y))
}

fn check_range(op: &'static str, r: f64, lo_open: bool, hi_open: bool) -> Result<()> {
    let lo_ok = if lo_open { r > 0.0 } else { r >= 0.0 };
    let hi_ok = if hi_open { r < 1.0 } else { r <= 1.0 };
    if r.is_finite() && lo_ok && hi_ok {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            value: r,
            expected: match (lo_open, hi_open) {
                (false, true) => "[0, 1): the integral diverges at 1",
                (true, false) => "(0, 1]: the integral diverges at 0",
                _ => "[0, 1]",
            },
        })
    }
}

/// Complete elliptic integral of the first kind on `[0, 1)`.
pub fn ellip_k(r: f64) -> Result<f64> {
    check_range("ellip_k", r, false, true)?;
    if r < SMALL_R {
        return Ok(k_small(r));
    }
    Ok(agm_sums(r, complement_of(r)).k)
}

/// Complete elliptic integral of the second kind on `[0, 1]`, with `E(1) = 1`.
pub fn ellip_e(r: f64) -> Result<f64> {
    check_range("ellip_e", r, false, false)?;
    if r < SMALL_R {
        return Ok(e_small(r));
    }
    if r == 1.0 {
        return Ok(1.0);
    }
    Ok(k_and_e(r, complement_of(r)).1)
}

/// `K'(r) = K(r')` on `(0, 1]`.
pub fn ellip_kc(r: f64) -> Result<f64> {
    check_range("ellip_kc", r, true, false)?;
    Ok(agm_sums(complement_of(r), r).k)
}

/// `E'(r) = E(r')` on `[0, 1]`.
pub fn ellip_ec(r: f64) -> Result<f64> {
    check_range("ellip_ec", r, false, false)?;
    if r == 0.0 {
        return Ok(1.0);
    }
    let rc = complement_of(r);
    if rc < SMALL_R {
        return Ok(e_small(rc));
    }
    Ok(k_and_e(rc, r).1)
}

// Maclaurin heads of K and E. The coefficients are ((2n-1)!!/(2n)!!)^2 and
// its E-variant; truncation after r^6 keeps the relative error below 1e-16
// for r up to ~0.02, well past every switch point that uses them.
fn k_small(r: f64) -> f64 {
    let r2 = r * r;
    FRAC_PI_2 * (1.0 + r2 * (0.25 + r2 * (9.0 / 64.0 + r2 * (25.0 / 256.0))))
}

fn e_small(r: f64) -> f64 {
    let r2 = r * r;
    FRAC_PI_2 * (1.0 - r2 * (0.25 + r2 * (3.0 / 64.0 + r2 * (5.0 / 256.0))))
}

/// Which route produced a set of [`EllipticValues`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    /// All four integrals from AGM sweeps.
    Agm,
    /// `r` below the small-modulus switch: `K`, `E` from series heads.
    SeriesSmallR,
    /// `r` above the near-one switch: `K'`, `E'` from series heads at `r'`.
    SeriesNearOne,
}

/// `K`, `E`, `K'`, `E'` at one modulus, tagged with the evaluation route.
#[derive(Debug, Clone, Copy)]
pub struct EllipticValues {
    pub k: f64,
    pub e: f64,
    pub kc: f64,
    pub ec: f64,
    pub path: EvalPath,
}

pub fn elliptic_values(r: Modulus) -> EllipticValues {
    let x = r.get();
    let rc = r.complement();
    if x < SMALL_R {
        let (kc, ec) = k_and_e(rc, x);
        EllipticValues {
            k: k_small(x),
            e: e_small(x),
            kc,
            ec,
            path: EvalPath::SeriesSmallR,
        }
    } else if x > NEAR_ONE {
        let (k, e) = k_and_e(x, rc);
        EllipticValues {
            k,
            e,
            kc: k_small(rc),
            ec: e_small(rc),
            path: EvalPath::SeriesNearOne,
        }
    } else {
        let (k, e) = k_and_e(x, rc);
        let (kc, ec) = k_and_e(rc, x);
        EllipticValues {
            k,
            e,
            kc,
            ec,
            path: EvalPath::Agm,
        }
    }
}

/// Differences of elliptic integrals that vanish at an endpoint and therefore
/// cannot be formed accurately by subtracting finished values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combination {
    /// `E - r'^2 K`, which vanishes like `(pi/4) r^2` at 0.
    EMinusRc2K,
    /// `K - E`, which vanishes like `(pi/4) r^2` at 0.
    KMinusE,
    /// `E - (1 - r)K`, which vanishes like `(pi/2) r` at 0 and tends to 1 at 1.
    EMinus1MinusRK,
    /// `E' - rK'`, which equals `pi/2` at 0 and vanishes like `(pi/4)(1-r)^2`
    /// at 1.
    EcMinusRKc,
}

/// Evaluates the requested combination in a form whose rounding error stays
/// a small multiple of machine epsilon over the whole of (0, 1).
///
/// Each case regroups the AGM `c`-series against the polynomial part of the
/// combination exactly, e.g. `E - r'^2 K = K (r^2/2 - tail)` and
/// `E' - rK' = K' ((1-r)^2/2 - tail')`, so the only subtractions left are
/// benign. Near the endpoints the affected cases switch to series.
pub fn elliptic_combination(kind: Combination, r: Modulus) -> f64 {
    let x = r.get();
    match kind {
        Combination::EcMinusRKc => {
            if x > NEAR_ONE {
                return ec_minus_r_kc_near_one(x);
            }
            let s = agm_sums(r.complement(), x);
            s.k * (0.5 * (1.0 - x) * (1.0 - x) - s.tail)
        }
        _ if x < SMALL_R => combination_small(kind, x),
        Combination::EMinusRc2K => {
            let s = agm_sums(x, r.complement());
            s.k * (0.5 * x * x - s.tail)
        }
        Combination::KMinusE => {
            let s = agm_sums(x, r.complement());
            s.k * (0.5 * x * x + s.tail)
        }
        Combination::EMinus1MinusRK => {
            let s = agm_sums(x, r.complement());
            s.k * (x - 0.5 * x * x - s.tail)
        }
    }
}

fn combination_small(kind: Combination, x: f64) -> f64 {
    let r2 = x * x;
    let series = match kind {
        Combination::EMinusRc2K => r2 * (0.5 + r2 * (1.0 / 16.0 + r2 * (3.0 / 128.0))),
        Combination::KMinusE => r2 * (0.5 + r2 * (3.0 / 16.0 + r2 * (15.0 / 128.0))),
        Combination::EMinus1MinusRK => {
            x * (1.0 + x * (-0.5 + x * (0.25 + x * (-3.0 / 16.0 + x * (9.0 / 64.0)))))
        }
        Combination::EcMinusRKc => unreachable!("handled on the complementary path"),
    };
    FRAC_PI_2 * series
}

// E' - rK' for r near 1, expanded in p^2 = (1-r)(1+r) = r'^2:
// E(p) - p' K(p) = (pi/2) sum_{n>=2} d_n p^(2n), where d_n combines the
// Maclaurin coefficients of K, E and sqrt(1 - t). The n = 0, 1 terms vanish
// identically; d_2 = 1/16.
fn ec_minus_r_kc_near_one(x: f64) -> f64 {
    const N: usize = 10;
    let mut a = [0.0_f64; N]; // ((2n-1)!!/(2n)!!)^2
    let mut s = [0.0_f64; N]; // binomial coefficients of sqrt(1 - t)
    a[0] = 1.0;
    s[0] = 1.0;
    for n in 1..N {
        let nf = n as f64;
        let f = (2.0 * nf - 1.0) / (2.0 * nf);
        a[n] = a[n - 1] * f * f;
        s[n] = s[n - 1] * (2.0 * nf - 3.0) / (2.0 * nf);
    }
    let p2 = (1.0 - x) * (1.0 + x);
    let mut total = 0.0_f64;
    let mut pw = p2 * p2;
    for n in 2..N {
        let e_n = a[n] / (1.0 - 2.0 * n as f64);
        let mut conv = 0.0_f64;
        for j in 0..=n {
            conv += s[j] * a[n - j];
        }
        total += (e_n - conv) * pw;
        pw *= p2;
    }
    FRAC_PI_2 * total
}

/// Which integral [`series_oracle`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticKind {
    K,
    E,
}

/// Sums the defining Maclaurin series of `K` or `E` term by term until a term
/// falls below `tol`. Deliberately independent of the AGM machinery so the
/// two routes can be played against each other; restricted to `r <= 0.99`
/// where the series still converges at a useful rate.
pub fn series_oracle(kind: EllipticKind, r: f64, tol: f64) -> Result<f64> {
    if !r.is_finite() || !(0.0..=0.99).contains(&r) {
        return Err(Error::Domain {
            op: "series_oracle",
            value: r,
            expected: "[0, 0.99]",
        });
    }
    if !tol.is_finite() || tol < 1e-15 {
        return Err(Error::Domain {
            op: "series_oracle",
            value: tol,
            expected: "tolerances at or above 1e-15",
        });
    }
    let r2 = r * r;
    let mut coeff = 1.0_f64;
    let mut pow = 1.0_f64;
    let mut total = 1.0_f64;
    for n in 1..20_000_u32 {
        let nf = f64::from(n);
        let f = (2.0 * nf - 1.0) / (2.0 * nf);
        coeff *= f * f;
        pow *= r2;
        let term = match kind {
            EllipticKind::K => coeff * pow,
            EllipticKind::E => coeff * pow / (1.0 - 2.0 * nf),
        };
        total += term;
        if term.abs() < tol {
            return Ok(FRAC_PI_2 * total);
        }
    }
    Err(Error::Convergence {
        op: "series_oracle",
        detail: "term cap reached before tolerance",
    })
}

/// Signed residual of the Legendre relation,
/// `E K' + E' K - K K' - pi/2`, which is identically zero.
pub fn legendre_residual(r: Modulus) -> f64 {
    let v = elliptic_values(r);
    v.e * v.kc + v.ec * v.k - v.k * v.kc - FRAC_PI_2
}
