//! Input-output scattering: `U(ω) = L (M + iωI)⁻¹ L − I`, the scattering
//! probabilities `T(ω)`, output spectra and sideband figures of merit.
//!
//! Fourier convention: `õ(ω) = (2π)^{-1/2} ∫ o(t) e^{−iωt} dt`, so
//! `[õ(ω)]† = õ†(−ω)`.

use core::fmt;

use crate::dynmat::{DynamicalSystem, CONJ, MODE_A, MODE_B, MODE_C};
use crate::error::{Error, Result};
use crate::linalg::{solve_diag_rhs, CMatrix, C64, I};
use crate::params::OperatingPoint;

/// Resolvent condition number above which a frequency counts as a pole.
pub const SINGULAR_CONDITION: f64 = 1e12;
/// Conversion efficiencies below this make the added noise undefined.
pub const ZERO_EFFICIENCY: f64 = 1e-30;
/// Relative tolerance for recognising `Δ = ±ω_b`.
pub const REGIME_TOLERANCE: f64 = 1e-6;

/// First-order sidebands of the pump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sideband {
    /// Output at `ω_p + ω_b`.
    AntiStokes,
    /// Output at `ω_p − ω_b`.
    Stokes,
}

impl Sideband {
    /// Sign `s` of the Fourier frequency `ω = s·ω_b` at which the sideband
    /// is read off: anti-Stokes at `ω = −ω_b`, Stokes at `ω = +ω_b`.
    ///
    /// Every sideband quantity in the crate goes through this map; flipping
    /// a sign here silently swaps all Stokes and anti-Stokes results.
    pub const fn sign(self) -> f64 {
        match self {
            Sideband::AntiStokes => -1.0,
            Sideband::Stokes => 1.0,
        }
    }

    pub fn omega(self, omega_b: f64) -> f64 {
        self.sign() * omega_b
    }
}

impl fmt::Display for Sideband {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sideband::AntiStokes => "anti-Stokes",
            Sideband::Stokes => "Stokes",
        })
    }
}

/// `T[o][o']`: probability of scattering from mode `o'` into mode `o`,
/// indexed `(a, c, B)`.
pub type TMatrix = [[f64; 3]; 3];

/// Scattering matrix at Fourier frequency `omega` (THz).
pub fn scattering_matrix(sys: &DynamicalSystem, omega: f64) -> Result<CMatrix<6>> {
    let a = sys.m.shifted(I * omega);
    let (x, condition) = solve_diag_rhs(&a, &sys.l).ok_or(Error::SingularAtFrequency {
        omega,
        condition: f64::INFINITY,
    })?;
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(Error::SingularAtFrequency { omega, condition });
    }
    let mut u = x;
    for r in 0..6 {
        for c in 0..6 {
            u.0[r][c] *= sys.l[r];
        }
        u.0[r][r] -= 1.0;
    }
    Ok(u)
}

/// `T_oo' = |U_oo'|² + |U_o,o'+3|²`.
pub fn t_matrix(u: &CMatrix<6>) -> TMatrix {
    let mut t = [[0.0; 3]; 3];
    for (o, row) in t.iter_mut().enumerate() {
        for (o2, entry) in row.iter_mut().enumerate() {
            *entry = u[(o, o2)].norm_sqr() + u[(o, o2 + CONJ)].norm_sqr();
        }
    }
    t
}

/// Vacuum noise reaching the visible output from modes `a` and `B`.
pub fn added_noise_spectrum(t: &TMatrix) -> f64 {
    0.5 * (t[MODE_A][MODE_A] + t[MODE_A][MODE_B])
}

/// `S_out = T (S_in + ½)`.
pub fn output_spectrum(t: &TMatrix, s_in: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (o, v) in out.iter_mut().enumerate() {
        *v = (0..3).map(|k| t[o][k] * (s_in[k] + 0.5)).sum();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringResult {
    pub omega: f64,
    pub u: CMatrix<6>,
    pub t: TMatrix,
    pub s_add: f64,
}

impl ScatteringResult {
    pub fn t_ac(&self) -> f64 {
        self.t[MODE_A][MODE_C]
    }

    /// `S_a,add / T_ac` at this frequency, if the efficiency is nonzero.
    pub fn pointwise_added_noise(&self) -> Option<f64> {
        let t = self.t_ac();
        (t >= ZERO_EFFICIENCY).then(|| self.s_add / t)
    }
}

pub fn evaluate(sys: &DynamicalSystem, omega: f64) -> Result<ScatteringResult> {
    let u = scattering_matrix(sys, omega)?;
    let t = t_matrix(&u);
    Ok(ScatteringResult { omega, u, t, s_add: added_noise_spectrum(&t) })
}

/// Common denominator `F(ω)` of the closed-form first row.
pub fn closed_form_denominator(op: &OperatingPoint, omega: f64) -> Result<C64> {
    let w = C64::new(omega, 0.0);
    let d = op.delta;
    let (ka, kc, gb) = (op.kappa_a, op.kappa_c, op.gamma_b);
    let (wb, wc) = (op.omega_b, op.omega_c);
    let g2 = op.g_a_sq();
    let gc = op.g_c;
    let kc_iw_sq_wc = (kc + I * w) * (kc + I * w) + wc * wc;
    let d_sq_ka = d * d + (ka + I * w) * (ka + I * w);
    let f1 = ((gb * gb + 2.0 * I * gb * w) * d_sq_ka - 4.0 * g2 * d * wb) * kc_iw_sq_wc;
    let f2 = d_sq_ka * ((wb * wb - w * w) * kc_iw_sq_wc - 4.0 * gc * gc * wb * wc);
    let f = f1 + f2;
    if f.norm() <= 1e-13 * (f1.norm() + f2.norm()) {
        return Err(Error::PoleAtFrequency { omega });
    }
    Ok(f)
}

/// First row `U₁₁ … U₁₆` from the explicit rational expressions with common
/// denominator `F(ω)`; an independent route to the dense solve.
pub fn closed_form_u1j(op: &OperatingPoint, omega: f64) -> Result<[C64; 6]> {
    let w = C64::new(omega, 0.0);
    let d = op.delta;
    let (ka, kc, gb) = (op.kappa_a, op.kappa_c, op.gamma_b);
    let (wb, wc) = (op.omega_b, op.omega_c);
    let g = op.g_a_enh;
    let g2 = op.g_a_sq();
    let gc = op.g_c;

    let kc_iw_sq_wc = (kc + I * w) * (kc + I * w) + wc * wc;
    let da = d + I * ka;
    let da_sq_w = da * da - w * w;
    let f = closed_form_denominator(op, omega)?;

    let u11 = (kc_iw_sq_wc * (da_sq_w * ((w - I * gb) * (w - I * gb) - wb * wb) + 4.0 * g2 * wb * da)
        + 4.0 * gc * gc * wb * wc * da_sq_w)
        / f;
    let common = 4.0 * gc * g * libm::sqrt(ka * kc) * wb * (d - w + I * ka);
    let u12 = common * (kc + I * (w - wc)) / f;
    let u15 = common * (kc + I * (w + wc)) / f;
    let vib = 2.0 * I * g * libm::sqrt(ka * gb) * (d - w + I * ka) * ((w - I * kc) * (w - I * kc) - wc * wc);
    let u13 = vib * (w - wb - I * gb) / f;
    let u16 = vib * (w + wb - I * gb) / f;
    let u14 = 4.0 * I * g * g * ka * wb * kc_iw_sq_wc / f;
    Ok([u11, u12, u13, u14, u15, u16])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetuningRegime {
    /// `Δ = +ω_b`
    Red,
    /// `Δ = −ω_b`
    Blue,
    Other,
}

impl DetuningRegime {
    pub fn name(self) -> &'static str {
        match self {
            DetuningRegime::Red => "red",
            DetuningRegime::Blue => "blue",
            DetuningRegime::Other => "other",
        }
    }
}

pub fn detuning_regime(op: &OperatingPoint) -> DetuningRegime {
    let tol = REGIME_TOLERANCE * op.omega_b.abs();
    if (op.delta - op.omega_b).abs() <= tol {
        DetuningRegime::Red
    } else if (op.delta + op.omega_b).abs() <= tol {
        DetuningRegime::Blue
    } else {
        DetuningRegime::Other
    }
}

/// Conversion efficiency and added noise at both first-order sidebands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SidebandReport {
    pub t_ac_as: f64,
    pub t_ac_s: f64,
    pub n_add_as: f64,
    pub n_add_s: f64,
    pub regime: DetuningRegime,
}

/// `(T_ac, S_a,add)` at one sideband.
pub fn sideband_point(sys: &DynamicalSystem, sideband: Sideband) -> Result<(f64, f64)> {
    let r = evaluate(sys, sideband.omega(sys.point.omega_b))?;
    Ok((r.t_ac(), r.s_add))
}

/// Assumes a stable system; an unstable one may still return numbers that
/// carry no physical meaning.
pub fn sideband_report(sys: &DynamicalSystem) -> Result<SidebandReport> {
    let (t_as, s_as) = sideband_point(sys, Sideband::AntiStokes)?;
    let (t_s, s_s) = sideband_point(sys, Sideband::Stokes)?;
    if t_as < ZERO_EFFICIENCY {
        return Err(Error::ZeroEfficiency(Sideband::AntiStokes));
    }
    if t_s < ZERO_EFFICIENCY {
        return Err(Error::ZeroEfficiency(Sideband::Stokes));
    }
    Ok(SidebandReport {
        t_ac_as: t_as,
        t_ac_s: t_s,
        n_add_as: s_as / t_as,
        n_add_s: s_s / t_s,
        regime: detuning_regime(&sys.point),
    })
}
