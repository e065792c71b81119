//! Linear stability from the spectrum of the drift matrix.

use alloc::vec::Vec;

use crate::axis::{grid, AxisSpec};
use crate::dynmat::{build_full, DynamicalSystem};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::params::SystemParams;

/// Relative slack on `min Re λ`, scaled by the largest matrix entry.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityVerdict<const N: usize = 6> {
    /// All eigenvalues of `M` have positive real part.
    pub stable: bool,
    /// `min Re λ` in THz; negative when unstable.
    pub margin: f64,
    pub eigenvalues: [C64; N],
}

pub fn classify_matrix<const N: usize>(m: &CMatrix<N>) -> Result<StabilityVerdict<N>> {
    let eigenvalues = m.eigenvalues()?;
    let margin = eigenvalues.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
    let stable = margin > MARGIN_TOLERANCE * m.max_abs();
    Ok(StabilityVerdict { stable, margin, eigenvalues })
}

pub fn classify(sys: &DynamicalSystem) -> Result<StabilityVerdict> {
    classify_matrix(&sys.m)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityPoint {
    pub x: f64,
    pub y: f64,
    pub stable: bool,
    /// `NaN` when the eigensolver failed.
    pub margin: f64,
    /// The eigenvalue iteration did not converge; the point counts as unstable.
    pub solver_failed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityMap {
    pub x: AxisSpec,
    pub y: AxisSpec,
    /// `x` outermost.
    pub points: Vec<StabilityPoint>,
}

/// Stability of `base` with the two axis parameters overridden.
pub fn point_stability(base: &SystemParams, x: &AxisSpec, xv: f64, y: &AxisSpec, yv: f64) -> Result<StabilityPoint> {
    let mut p = base.clone();
    x.param.apply(&mut p, xv)?;
    y.param.apply(&mut p, yv)?;
    match classify(&build_full(&p.operating_point()?)) {
        Ok(v) => Ok(StabilityPoint { x: xv, y: yv, stable: v.stable, margin: v.margin, solver_failed: false }),
        Err(Error::EigensolverFailure) => {
            Ok(StabilityPoint { x: xv, y: yv, stable: false, margin: f64::NAN, solver_failed: true })
        }
        Err(e) => Err(e),
    }
}

pub fn map(base: &SystemParams, x: &AxisSpec, y: &AxisSpec) -> Result<StabilityMap> {
    let points = grid(&[*x, *y])?
        .into_iter()
        .map(|c| point_stability(base, x, c[0], y, c[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityMap { x: *x, y: *y, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::SweepParam;
    use crate::params::{DriveSpec, Freq, OperatingPoint};

    fn op(delta: f64, g: f64) -> OperatingPoint {
        OperatingPoint {
            delta,
            g_a_enh: C64::new(g, 0.0),
            g_c: 0.316_227_766_016_837_9,
            omega_b: 30.0,
            omega_c: 30.0,
            kappa_a: 30.0,
            kappa_c: 0.5,
            gamma_b: 0.1,
        }
    }

    #[test]
    fn decoupled_margin_is_smallest_damping() {
        let mut o = op(30.0, 0.0);
        o.g_c = 0.0;
        let v = classify(&build_full(&o)).unwrap();
        assert!(v.stable);
        assert!((v.margin - 0.1).abs() < 1e-12);
    }

    #[test]
    fn red_side_stays_stable() {
        for g in [0.0, 1.0, 2.5, 3.5, 5.0] {
            assert!(classify(&build_full(&op(30.0, g))).unwrap().stable, "{g}");
        }
    }

    #[test]
    fn blue_side_loses_stability() {
        assert!(classify(&build_full(&op(-30.0, 2.0))).unwrap().stable);
        let v = classify(&build_full(&op(-30.0, 3.5))).unwrap();
        assert!(!v.stable);
        assert!(v.margin < 0.0);
    }

    #[test]
    fn map_shape() {
        let base = SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(30.0),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10_000_000,
            drive: DriveSpec::Direct { delta: Freq::thz(-30.0), g_a_enh: C64::new(0.0, 0.0) },
        };
        let m = map(
            &base,
            &AxisSpec::linear(SweepParam::GA, 0.0, 5.0, 3),
            &AxisSpec::log(SweepParam::N, 1e5, 1e7, 2),
        )
        .unwrap();
        assert_eq!(m.points.len(), 6);
        assert!(m.points[0].stable);
        assert!(!m.points[5].stable);
    }
}
