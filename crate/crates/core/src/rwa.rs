//! Rotating-wave reduced models and their closed-form sideband results.

use crate::dynmat::{RwaKind, RwaSystem};
use crate::error::{Error, Result};
use crate::linalg::{solve_diag_rhs, CMatrix, C64, I};
use crate::params::OperatingPoint;
use crate::scattering::{Sideband, REGIME_TOLERANCE, SINGULAR_CONDITION};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaScattering {
    pub kind: RwaKind,
    pub omega: f64,
    /// `𝒰 = 𝒥 (ℳ + iω)⁻¹ 𝒥 − I`
    pub u: CMatrix<3>,
}

impl RwaScattering {
    /// `|𝒰₁₂|²`
    pub fn t_ac(&self) -> f64 {
        self.u[(0, 1)].norm_sqr()
    }

    /// Vacuum noise reaching the visible output in the reduced model.
    pub fn s_add(&self) -> f64 {
        0.5 * (self.u[(0, 0)].norm_sqr() + self.u[(0, 2)].norm_sqr())
    }
}

pub fn rwa_scattering(r: &RwaSystem, omega: f64) -> Result<RwaScattering> {
    let a = r.m3.shifted(I * omega);
    let (mut u, condition) = solve_diag_rhs(&a, &r.j3).ok_or(Error::SingularAtFrequency {
        omega,
        condition: f64::INFINITY,
    })?;
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(Error::SingularAtFrequency { omega, condition });
    }
    for row in 0..3 {
        for col in 0..3 {
            u.0[row][col] *= r.j3[row];
        }
        u.0[row][row] -= 1.0;
    }
    Ok(RwaScattering { kind: r.kind, omega, u })
}

/// Explicit `𝒰₁₂(ω)` of the reduced models.
pub fn closed_form_rwa_u12(kind: RwaKind, op: &OperatingPoint, omega: f64) -> Result<C64> {
    let w = omega;
    let g2 = op.g_a_sq();
    let gc = op.g_c;
    let root = libm::sqrt(op.kappa_a * op.kappa_c);
    let xa = I * (op.delta + w) + op.kappa_a;
    let (num, terms) = match kind {
        RwaKind::RedDetuned => {
            let xb = I * (op.omega_b + w) + op.gamma_b;
            let xc = I * (op.omega_c + w) + op.kappa_c;
            (-2.0 * gc * op.g_a_enh * root, [gc * gc * xa, g2 * xc, xa * xb * xc])
        }
        RwaKind::BlueDetuned => {
            let xb = I * (w - op.omega_b) + op.gamma_b;
            let xc = I * (w - op.omega_c) + op.kappa_c;
            (2.0 * gc * op.g_a_enh * root, [gc * gc * xa, -g2 * xc, xa * xb * xc])
        }
    };
    let den: C64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    if den.norm() <= 1e-13 * scale {
        return Err(Error::PoleAtFrequency { omega });
    }
    Ok(num / den)
}

/// `T_ac` at both sidebands from the resonant closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SidebandClosedForms {
    pub t_as: f64,
    pub t_s: f64,
}

impl SidebandClosedForms {
    pub fn get(&self, s: Sideband) -> f64 {
        match s {
            Sideband::AntiStokes => self.t_as,
            Sideband::Stokes => self.t_s,
        }
    }
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= REGIME_TOLERANCE * scale
}

/// Closed-form sideband efficiencies. Requires `ω_c = ω_b` and
/// `Δ = +ω_b` (red) or `Δ = −ω_b` (blue).
pub fn sideband_closed_forms(kind: RwaKind, op: &OperatingPoint) -> Result<SidebandClosedForms> {
    let wb = op.omega_b;
    if !near(op.omega_c, wb, wb) {
        return Err(Error::PrereqViolation("omega_c = omega_b"));
    }
    let (ka, kc, gb) = (op.kappa_a, op.kappa_c, op.gamma_b);
    let g2 = op.g_a_sq();
    let gc2 = op.g_c * op.g_c;
    let num = 4.0 * gc2 * g2 * ka * kc;
    let ga = C64::new(ka, 2.0 * wb);
    let gcc = C64::new(kc, 2.0 * wb);
    let gbb = C64::new(gb, 2.0 * wb);
    match kind {
        RwaKind::RedDetuned => {
            if !near(op.delta, wb, wb) {
                return Err(Error::PrereqViolation("delta = +omega_b"));
            }
            let d_as = gc2 * ka + g2 * kc + ka * kc * gb;
            let d_s = gc2 * ga + g2 * gcc + ga * gcc * gbb;
            Ok(SidebandClosedForms { t_as: num / (d_as * d_as), t_s: num / d_s.norm_sqr() })
        }
        RwaKind::BlueDetuned => {
            if !near(op.delta, -wb, wb) {
                return Err(Error::PrereqViolation("delta = -omega_b"));
            }
            let d_as = gc2 * ga - g2 * gcc + ga * gcc * gbb;
            let d_s = gc2 * ka + ka * kc * gb - g2 * kc;
            let scale = gc2 * ka + ka * kc * gb + g2 * kc;
            if d_s.abs() <= REGIME_TOLERANCE * scale {
                return Err(Error::PoleAtFrequency { omega: Sideband::Stokes.omega(wb) });
            }
            Ok(SidebandClosedForms { t_as: num / d_as.norm_sqr(), t_s: num / (d_s * d_s) })
        }
    }
}

/// Coupling `|𝒢ₐ|` that extremizes the resonant sideband.
///
/// Red: `G_c √(κa/κc)`, impedance matching of the anti-Stokes line in the
/// `γB → 0` limit. Blue: `√(G_c² κa/κc + κa γB)`, where the Stokes
/// denominator vanishes and the reduced model loses stability.
pub fn optimal_coupling(kind: RwaKind, op: &OperatingPoint) -> f64 {
    let gc2 = op.g_c * op.g_c;
    match kind {
        RwaKind::RedDetuned => libm::sqrt(gc2 * op.kappa_a / op.kappa_c),
        RwaKind::BlueDetuned => libm::sqrt(gc2 * op.kappa_a / op.kappa_c + op.kappa_a * op.gamma_b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynmat::build_rwa;

    const GC: f64 = 0.316_227_766_016_837_9;

    fn op(delta: f64, g: f64) -> OperatingPoint {
        OperatingPoint {
            delta,
            g_a_enh: C64::new(g, 0.0),
            g_c: GC,
            omega_b: 30.0,
            omega_c: 30.0,
            kappa_a: 30.0,
            kappa_c: 0.5,
            gamma_b: 0.1,
        }
    }

    #[test]
    fn optimal_couplings() {
        assert!((optimal_coupling(RwaKind::RedDetuned, &op(30.0, 0.0)) - 6f64.sqrt()).abs() < 1e-12);
        assert!((optimal_coupling(RwaKind::BlueDetuned, &op(-30.0, 0.0)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn red_anti_stokes_value() {
        let f = sideband_closed_forms(RwaKind::RedDetuned, &op(30.0, 1.0)).unwrap();
        let num = 4.0 * 0.1 * 30.0 * 0.5;
        let den: f64 = 0.1 * 30.0 + 0.5 + 30.0 * 0.5 * 0.1;
        assert!((f.t_as - num / (den * den)).abs() < 1e-14);
    }

    #[test]
    fn red_coupling_is_a_local_maximum() {
        let g0 = optimal_coupling(RwaKind::RedDetuned, &op(30.0, 0.0));
        let t = |g: f64| sideband_closed_forms(RwaKind::RedDetuned, &op(30.0, g)).unwrap().t_as;
        assert!(t(g0) > t(0.5 * g0));
        assert!(t(g0) > t(2.0 * g0));
    }

    #[test]
    fn blue_stokes_diverges_at_threshold() {
        let e = sideband_closed_forms(RwaKind::BlueDetuned, &op(-30.0, 3.0)).unwrap_err();
        assert_eq!(e, Error::PoleAtFrequency { omega: 30.0 });
        let below = sideband_closed_forms(RwaKind::BlueDetuned, &op(-30.0, 2.99)).unwrap();
        assert!(below.t_s > 1e3);
    }

    #[test]
    fn prerequisites() {
        let mut o = op(30.0, 1.0);
        o.omega_c = 31.0;
        assert!(matches!(sideband_closed_forms(RwaKind::RedDetuned, &o), Err(Error::PrereqViolation(_))));
        assert!(matches!(
            sideband_closed_forms(RwaKind::BlueDetuned, &op(30.0, 1.0)),
            Err(Error::PrereqViolation(_))
        ));
    }

    #[test]
    fn closed_forms_match_reduced_resolvent() {
        for (kind, delta) in [(RwaKind::RedDetuned, 30.0), (RwaKind::BlueDetuned, -30.0)] {
            let o = op(delta, 1.7).with_g_a_enh(C64::new(1.2, -0.9));
            let sys = build_rwa(kind, &o);
            for w in [-45.0, -30.0, -1.0, 0.0, 12.5, 30.0] {
                let num = rwa_scattering(&sys, w).unwrap().u[(0, 1)];
                let cf = closed_form_rwa_u12(kind, &o, w).unwrap();
                assert!((num - cf).norm() <= 1e-10 * cf.norm(), "{kind:?} {w}: {num} vs {cf}");
            }
            let s = sideband_closed_forms(kind, &o).unwrap();
            for sb in [Sideband::AntiStokes, Sideband::Stokes] {
                let t = rwa_scattering(&sys, sb.omega(30.0)).unwrap().t_ac();
                assert!((t - s.get(sb)).abs() <= 1e-9 * t, "{kind:?} {sb}");
            }
        }
    }
}
