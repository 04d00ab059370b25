//! Deterministic evaluation grids for the verification scans.

use crate::error::{Error, Result};

/// How points are spaced across `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridLaw {
    /// Equal steps.
    Uniform,
    /// A quarter of the points crowd into a band of width `(hi-lo)/100` at
    /// each endpoint, uniformly; the rest spread uniformly over the middle.
    /// Falls back to plain uniform when there are too few points to split.
    EndpointRefined,
    /// Equal ratios; requires `lo > 0`.
    Logarithmic,
}

/// A fully specified scan grid. Point generation is pure arithmetic on the
/// stored fields, so a spec always reproduces the identical point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub law: GridLaw,
}

impl GridSpec {
    // `!(lo < hi)` rather than `lo >= hi`: the negation is what catches NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(lo: f64, hi: f64, n: usize, law: GridLaw) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::Domain {
                op: "GridSpec::new",
                value: lo,
                expected: "finite endpoints with lo < hi",
            });
        }
        if n < 2 {
            return Err(Error::Domain {
                op: "GridSpec::new",
                value: n as f64,
                expected: "at least two points",
            });
        }
        if law == GridLaw::Logarithmic && lo <= 0.0 {
            return Err(Error::Domain {
                op: "GridSpec::new",
                value: lo,
                expected: "positive lo for logarithmic spacing",
            });
        }
        Ok(GridSpec { lo, hi, n, law })
    }

    /// The grid points, strictly increasing, containing `lo` and `hi`.
    pub fn points(&self) -> Vec<f64> {
        let GridSpec { lo, hi, n, law } = *self;
        let steps = (n - 1) as f64;
        match law {
            GridLaw::Uniform => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / steps)
                .collect(),
            GridLaw::Logarithmic => {
                let ratio = hi / lo;
                let mut pts: Vec<f64> =
                    (0..n).map(|i| lo * ratio.powf(i as f64 / steps)).collect();
                // powf rounding can nudge the last point off the endpoint.
                pts[0] = lo;
                pts[n - 1] = hi;
                pts
            }
            GridLaw::EndpointRefined => {
                let q = n / 4;
                if q < 2 {
                    return GridSpec {
                        law: GridLaw::Uniform,
                        ..*self
                    }
                    .points();
                }
                let band = (hi - lo) / 100.0;
                let m = n - 2 * q;
                let mut pts = Vec::with_capacity(n);
                for i in 0..q {
                    pts.push(lo + band * i as f64 / (q - 1) as f64);
                }
                let inner = hi - lo - 2.0 * band;
                for i in 0..m {
                    pts.push(lo + band + inner * (i + 1) as f64 / (m + 1) as f64);
                }
                for i in 0..q {
                    pts.push(hi - band + band * i as f64 / (q - 1) as f64);
                }
                pts
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GridSpec::new(0.0, 1.0, 10, GridLaw::Uniform).is_ok());
        assert!(GridSpec::new(1.0, 1.0, 10, GridLaw::Uniform).is_err());
        assert!(GridSpec::new(2.0, 1.0, 10, GridLaw::Uniform).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1, GridLaw::Uniform).is_err());
        assert!(GridSpec::new(0.0, 1.0, 10, GridLaw::Logarithmic).is_err());
        assert!(GridSpec::new(f64::NAN, 1.0, 10, GridLaw::Uniform).is_err());
    }

    #[test]
    fn uniform_points() {
        let pts = GridSpec::new(1.0, 3.0, 5, GridLaw::Uniform).unwrap().points();
        assert_eq!(pts, vec![1.0, 1.5, 2.0, 2.5, 3.0]);
    }

    #[test]
    fn logarithmic_points() {
        let pts = GridSpec::new(1e-2, 1e2, 5, GridLaw::Logarithmic)
            .unwrap()
            .points();
        assert_eq!(pts[0], 1e-2);
        assert_eq!(pts[4], 1e2);
        for w in pts.windows(2) {
            assert!((w[1] / w[0] - 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn refined_points_crowd_the_endpoints() {
        let spec = GridSpec::new(0.0, 1.0, 1000, GridLaw::EndpointRefined).unwrap();
        let pts = spec.points();
        assert_eq!(pts.len(), 1000);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[999], 1.0);
        for w in pts.windows(2) {
            assert!(w[1] > w[0], "not strictly increasing at {w:?}");
        }
        let in_left_band = pts.iter().filter(|&&p| p <= 0.01).count();
        let in_right_band = pts.iter().filter(|&&p| p >= 0.99).count();
        assert_eq!(in_left_band, 250);
        assert_eq!(in_right_band, 250);
    }

    #[test]
    fn refined_falls_back_to_uniform_when_tiny() {
        let a = GridSpec::new(0.0, 1.0, 5, GridLaw::EndpointRefined)
            .unwrap()
            .points();
        let b = GridSpec::new(0.0, 1.0, 5, GridLaw::Uniform).unwrap().points();
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic() {
        let spec = GridSpec::new(1e-6, 1.0 - 1e-6, 10_000, GridLaw::EndpointRefined).unwrap();
        assert_eq!(spec.points(), spec.points());
    }
}
