//! Bracket-guarded Newton iteration for strictly monotone functions.

use crate::error::{Error, Result};

/// Solves `f(x) = 0` for a strictly monotone `f` on the bracket `[lo, hi]`.
///
/// `eval` returns `(f(x), f'(x))`. Newton steps are taken from `start`; any
/// step that leaves the current bracket (or produces a non-finite value)
/// falls back to bisection, so progress is guaranteed. `done(x, fx)` decides
/// convergence. `increasing` states the sign structure of `f` so the bracket
/// can shrink on every evaluation.
///
/// A bracket that does not straddle a sign change is reported as a
/// convergence error up front rather than iterated on.
pub(crate) fn newton_bracketed(
    op: &'static str,
    mut lo: f64,
    mut hi: f64,
    start: f64,
    increasing: bool,
    eval: impl Fn(f64) -> (f64, f64),
    done: impl Fn(f64, f64) -> bool,
) -> Result<f64> {
    debug_assert!(lo < hi && start >= lo && start <= hi);
    let (f_lo, _) = eval(lo);
    let (f_hi, _) = eval(hi);
    let (f_neg, f_pos) = if increasing { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if !(f_neg <= 0.0 && f_pos >= 0.0) {
        return Err(Error::Convergence {
            op,
            detail: "bracket does not straddle a sign change",
        });
    }
    let mut x = start;
    for _ in 0..100 {
        let (fx, dfx) = eval(x);
        if done(x, fx) {
            return Ok(x);
        }
        if (fx > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - fx / dfx;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if next == x {
            // The bracket has collapsed to adjacent floats; x is as good as
            // f64 permits even if `done` wants more.
            return Ok(x);
        }
        x = next;
    }
    Err(Error::Convergence {
        op,
        detail: "iteration cap reached before the tolerance was met",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let f = |x: f64| (x * x * x - 2.0, 3.0 * x * x);
        let root = newton_bracketed("cube", 0.0, 2.0, 1.0, true, f, |_, fx| fx.abs() < 1e-14)
            .unwrap();
        assert!((root - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn survives_bad_derivative() {
        // f'(start) = 0 sends the Newton step to infinity; the bisection
        // fallback must take over (and here lands on the root exactly).
        let f = |x: f64| (x * x * x - 1.0, 3.0 * x * x);
        let root =
            newton_bracketed("cube0", 0.0, 2.0, 0.0, true, f, |_, fx| fx.abs() < 1e-14).unwrap();
        assert!((root - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decreasing_function() {
        let f = |x: f64| ((-x).exp() - 0.5, -(-x).exp());
        let root = newton_bracketed("exp", 0.0, 5.0, 2.5, false, f, |_, fx| fx.abs() < 1e-15)
            .unwrap();
        assert!((root - std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn reports_bad_bracket() {
        // No root in [3, 4]; the solver must error out, not hang.
        let f = |x: f64| (x * x - 2.0, 2.0 * x);
        assert!(newton_bracketed("none", 3.0, 4.0, 3.5, true, f, |_, fx| fx.abs() < 1e-14)
            .is_err());
    }
}
