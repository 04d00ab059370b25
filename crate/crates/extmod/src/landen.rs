//! Residuals of the Landen transformation identities and the squared-argument
//! identities that follow from composing them.
//!
//! Every identity is evaluated at *stably derived* arguments: the transformed
//! modulus and its complement are each produced by their own cancellation-free
//! formula (e.g. the complement of `2 sqrt r/(1+r)` is `(1-r)/(1+r)` exactly),
//! never by `sqrt(1 - u^2)` of an already-rounded `u`. That keeps the
//! residuals at the 1e-14 level over the whole test range, endpoints included.

use crate::elliptic::{agm_sums, k_and_e, Modulus};

/// The eight checked identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandenIdentity {
    /// `K(2 sqrt r/(1+r)) = (1+r) K(r)` — ascending transformation.
    KAscending,
    /// `K((1-r)/(1+r)) = (1+r) K'(r) / 2` — descending transformation.
    KDescending,
    /// `E(2 sqrt r/(1+r)) = (2E(r) - r'^2 K(r))/(1+r)`.
    EAscending,
    /// `E((1-r)/(1+r)) = (E'(r) + r K'(r))/(1+r)`.
    EDescending,
    /// `K(t^2) = (1+r)^2 K'(r^2) / 4` with `t = (1-r)/(1+r)`.
    QuadraticK,
    /// `K'(t^2) = (1+r)^2 K(r^2)`.
    QuadraticKComp,
    /// `E(t^2) = (E'(r^2) + (r + r^2 + r^3) K'(r^2)) / (1+r)^2`.
    QuadraticE,
    /// `E'(t^2) = (4E(r^2) - (1-r^2)(3+r^2) K(r^2)) / (1+r)^2`.
    QuadraticEComp,
}

/// One identity instance: both sides and their relative gap.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResidual {
    pub identity: LandenIdentity,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / max(|lhs|, |rhs|)`.
    pub residual: f64,
}

fn residual(identity: LandenIdentity, lhs: f64, rhs: f64) -> IdentityResidual {
    IdentityResidual {
        identity,
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / lhs.abs().max(rhs.abs()),
    }
}

/// The four first-order transformation identities at `r`.
pub fn landen_residuals(r: Modulus) -> [IdentityResidual; 4] {
    let x = r.get();
    let rc = r.complement();
    // Ascending modulus u = 2 sqrt r/(1+r) has complement t = (1-r)/(1+r);
    // the pair is exact in both directions.
    let u = 2.0 * x.sqrt() / (1.0 + x);
    let t = (1.0 - x) / (1.0 + x);
    let (k, e) = k_and_e(x, rc);
    let (kc, ec) = k_and_e(rc, x);
    let (ku, eu) = k_and_e(u, t);
    let (kt, et) = k_and_e(t, u);
    let s = agm_sums(x, rc);
    // 2E - r'^2 K assembled as E + (E - r'^2 K) to dodge the cancellation.
    let two_e_minus = e + s.k * (0.5 * x * x - s.tail);
    [
        residual(LandenIdentity::KAscending, ku, (1.0 + x) * k),
        residual(LandenIdentity::KDescending, kt, 0.5 * (1.0 + x) * kc),
        residual(LandenIdentity::EAscending, eu, two_e_minus / (1.0 + x)),
        residual(LandenIdentity::EDescending, et, (ec + x * kc) / (1.0 + x)),
    ]
}

/// The four squared-argument identities at `r`.
pub fn quadratic_residuals(r: Modulus) -> [IdentityResidual; 4] {
    let x = r.get();
    let rc = r.complement();
    let t = (1.0 - x) / (1.0 + x);
    let u = 2.0 * x.sqrt() / (1.0 + x);
    let t2 = t * t;
    let x2 = x * x;
    // Complements of the squared moduli, again in exact product form:
    // (t^2)' = u sqrt(1 + t^2) and (r^2)' = r' sqrt(1 + r^2).
    let t2c = u * (1.0 + t2).sqrt();
    let x2c = rc * (1.0 + x2).sqrt();
    let (kt2, et2) = k_and_e(t2, t2c);
    let (kt2c, et2c) = k_and_e(t2c, t2);
    let (kx2, ex2) = k_and_e(x2, x2c);
    let (kx2c, ex2c) = k_and_e(x2c, x2);
    let sq = (1.0 + x) * (1.0 + x);
    // 3 - 2r^2 - r^4 factored as (1 - r^2)(3 + r^2) keeps the near-one case
    // exact.
    let poly = (1.0 - x2) * (3.0 + x2);
    [
        residual(LandenIdentity::QuadraticK, kt2, 0.25 * sq * kx2c),
        residual(LandenIdentity::QuadraticKComp, kt2c, sq * kx2),
        residual(
            LandenIdentity::QuadraticE,
            et2,
            (ex2c + x * (1.0 + x + x2) * kx2c) / sq,
        ),
        residual(
            LandenIdentity::QuadraticEComp,
            et2c,
            (4.0 * ex2 - poly * kx2) / sq,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn m(r: f64) -> Modulus {
        Modulus::new(r).unwrap()
    }

    #[test]
    fn all_residuals_tiny_on_refined_grid() {
        let grid = crate::grid::GridSpec::new(
            1e-3,
            1.0 - 1e-3,
            1000,
            crate::grid::GridLaw::EndpointRefined,
        )
        .unwrap();
        let mut worst = 0.0_f64;
        for x in grid.points() {
            let r = m(x);
            for res in landen_residuals(r).iter().chain(quadratic_residuals(r).iter()) {
                assert!(
                    res.residual <= 1e-11,
                    "{:?} at r = {x}: residual {:e}",
                    res.identity,
                    res.residual
                );
                worst = worst.max(res.residual);
            }
        }
        // Headroom check: the stable-argument evaluation keeps a safety
        // factor of ~100 below the asserted bound.
        assert!(worst < 5e-13, "worst residual {worst:e} lost its margin");
    }

    #[test]
    fn descending_hits_silver_ratio() {
        // r = 1/sqrt 2 maps down to t = 3 - 2 sqrt 2.
        let x = FRAC_1_SQRT_2;
        let t = (1.0 - x) / (1.0 + x);
        assert!((t - (3.0 - 2.0 * std::f64::consts::SQRT_2)).abs() < 5e-16);
        let kt = crate::elliptic::ellip_k(t).unwrap();
        let kc = crate::elliptic::ellip_kc(x).unwrap();
        assert!((kt - 0.5 * (1.0 + x) * kc).abs() < 5e-14);
    }

    #[test]
    fn residual_struct_is_coherent() {
        let r = m(0.37);
        for res in landen_residuals(r) {
            let expect = (res.lhs - res.rhs).abs() / res.lhs.abs().max(res.rhs.abs());
            assert_eq!(res.residual, expect);
        }
    }

    #[test]
    fn ascending_then_descending_returns() {
        // Descending applied to the ascending modulus lands back at r:
        // (1 - t)/(1 + t) = r for t = (1-r)/(1+r).
        for x in [0.1f64, 0.5, 0.9] {
            let t = (1.0 - x) / (1.0 + x);
            let back = (1.0 - t) / (1.0 + t);
            assert!((back - x).abs() < 1e-15);
        }
    }
}
