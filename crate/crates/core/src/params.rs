//! Physical parameters, unit handling and validation.

use core::f64::consts::TAU;
use core::fmt;

use crate::error::Result;
use crate::linalg::C64;
use crate::steady_state;

/// An ordinary frequency in THz: the number `X` of `2π × X THz`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Freq(f64);

impl Freq {
    pub const ZERO: Freq = Freq(0.0);

    pub const fn thz(value: f64) -> Self {
        Freq(value)
    }

    /// From an angular frequency in rad/ps.
    pub fn from_angular(rad_per_ps: f64) -> Self {
        Freq(rad_per_ps / TAU)
    }

    pub const fn value(self) -> f64 {
        self.0
    }

    /// Angular frequency in rad/ps (`2π × value`).
    pub fn angular(self) -> f64 {
        self.0 * TAU
    }
}

impl fmt::Display for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} THz", self.0)
    }
}

/// First violated invariant of a parameter set.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{field} {reason}")]
pub struct ValidationError {
    pub field: &'static str,
    pub reason: &'static str,
}

impl ValidationError {
    const fn new(field: &'static str, reason: &'static str) -> Self {
        Self { field, reason }
    }
}

/// How the pump enters the model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DriveSpec {
    /// Effective detuning and enhanced coupling given directly.
    Direct { delta: Freq, g_a_enh: C64 },
    /// Bare detuning, single-molecule optomechanical coupling and pump
    /// amplitude; the effective quantities come from the mean-field solve.
    Physical { delta0: Freq, g_a: Freq, eps_p: Freq },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    /// Molecular vibrational frequency.
    pub omega_b: Freq,
    /// Infrared mode frequency.
    pub omega_c: Freq,
    /// Visible mode decay rate.
    pub kappa_a: Freq,
    /// Infrared mode decay rate.
    pub kappa_c: Freq,
    /// Collective vibrational decay rate.
    pub gamma_b: Freq,
    /// Single-molecule infrared-vibration coupling.
    pub g_c: Freq,
    pub n_molecules: u64,
    pub drive: DriveSpec,
}

fn finite(field: &'static str, x: f64) -> Result<(), ValidationError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(ValidationError::new(field, "must be finite"))
    }
}

fn non_negative(field: &'static str, x: f64) -> Result<(), ValidationError> {
    finite(field, x)?;
    if x >= 0.0 {
        Ok(())
    } else {
        Err(ValidationError::new(field, "must be >= 0"))
    }
}

fn positive(field: &'static str, x: f64) -> Result<(), ValidationError> {
    finite(field, x)?;
    if x > 0.0 {
        Ok(())
    } else {
        Err(ValidationError::new(field, "must be > 0"))
    }
}

impl SystemParams {
    /// Returns the first violated invariant, checked in declaration order.
    pub fn validate(&self) -> Result<(), ValidationError> {
        non_negative("omega_b", self.omega_b.0)?;
        non_negative("omega_c", self.omega_c.0)?;
        positive("kappa_a", self.kappa_a.0)?;
        positive("kappa_c", self.kappa_c.0)?;
        positive("gamma_B", self.gamma_b.0)?;
        finite("g_c", self.g_c.0)?;
        if self.n_molecules < 1 {
            return Err(ValidationError::new("n_molecules", "must be >= 1"));
        }
        finite("g_c", self.collective_g_c().0)?;
        match self.drive {
            DriveSpec::Direct { delta, g_a_enh } => {
                finite("drive.delta", delta.0)?;
                finite("drive.g_a_enh", g_a_enh.norm())?;
            }
            DriveSpec::Physical { delta0, g_a, eps_p } => {
                finite("drive.delta0", delta0.0)?;
                finite("drive.g_a", g_a.0)?;
                non_negative("drive.eps_p", eps_p.0)?;
                finite("drive.g_a", self.collective_g_a().map_or(0.0, |g| g.0))?;
            }
        }
        Ok(())
    }

    fn sqrt_n(&self) -> f64 {
        libm::sqrt(self.n_molecules as f64)
    }

    /// `G_c = g_c √N`.
    pub fn collective_g_c(&self) -> Freq {
        Freq(self.g_c.0 * self.sqrt_n())
    }

    /// `G_a = g_a √N`, present only for a physical drive.
    pub fn collective_g_a(&self) -> Option<Freq> {
        match self.drive {
            DriveSpec::Physical { g_a, .. } => Some(Freq(g_a.0 * self.sqrt_n())),
            DriveSpec::Direct { .. } => None,
        }
    }

    /// Collective couplings `(G_c, G_a)` after validation.
    pub fn collective_couplings(&self) -> Result<(Freq, Option<Freq>), ValidationError> {
        self.validate()?;
        Ok((self.collective_g_c(), self.collective_g_a()))
    }

    /// Sets `Δ` for a direct drive or the bare `Δ0` for a physical one.
    pub fn set_detuning(&mut self, value: Freq) {
        match &mut self.drive {
            DriveSpec::Direct { delta, .. } => *delta = value,
            DriveSpec::Physical { delta0, .. } => *delta0 = value,
        }
    }

    /// Linearization point. A physical drive triggers the mean-field solve
    /// and uses its selected branch.
    pub fn operating_point(&self) -> Result<OperatingPoint> {
        self.validate()?;
        let (delta, g_a_enh) = match self.drive {
            DriveSpec::Direct { delta, g_a_enh } => (delta.0, g_a_enh),
            DriveSpec::Physical { .. } => {
                let sol = steady_state::solve_steady_state(self)?;
                (sol.delta_eff().0, sol.g_a_enh())
            }
        };
        Ok(OperatingPoint {
            delta,
            g_a_enh,
            g_c: self.collective_g_c().0,
            omega_b: self.omega_b.0,
            omega_c: self.omega_c.0,
            kappa_a: self.kappa_a.0,
            kappa_c: self.kappa_c.0,
            gamma_b: self.gamma_b.0,
        })
    }
}

/// The eight numbers that fully determine the linearized dynamics.
///
/// Plain `f64` fields in THz; this is the numeric kernel input shared by the
/// matrix builders, closed forms and RWA models.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatingPoint {
    /// Effective detuning `Δ`.
    pub delta: f64,
    /// Enhanced collective optomechanical coupling `𝒢ₐ = Gₐ⟨a⟩`.
    pub g_a_enh: C64,
    /// Collective bilinear coupling `G_c`.
    pub g_c: f64,
    pub omega_b: f64,
    pub omega_c: f64,
    pub kappa_a: f64,
    pub kappa_c: f64,
    pub gamma_b: f64,
}

impl OperatingPoint {
    /// Multiplies every frequency by `factor`; `2π` converts to rad/ps.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            delta: self.delta * factor,
            g_a_enh: self.g_a_enh * factor,
            g_c: self.g_c * factor,
            omega_b: self.omega_b * factor,
            omega_c: self.omega_c * factor,
            kappa_a: self.kappa_a * factor,
            kappa_c: self.kappa_c * factor,
            gamma_b: self.gamma_b * factor,
        }
    }

    pub fn with_g_a_enh(mut self, g_a_enh: C64) -> Self {
        self.g_a_enh = g_a_enh;
        self
    }

    /// `|𝒢ₐ|²`
    pub fn g_a_sq(&self) -> f64 {
        self.g_a_enh.norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig4() -> SystemParams {
        SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(30.0),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10_000_000,
            drive: DriveSpec::Direct { delta: Freq::thz(30.0), g_a_enh: C64::new(3.0, 0.0) },
        }
    }

    #[test]
    fn collective_coupling_at_fig4_values() {
        let (g_c, g_a) = fig4().collective_couplings().unwrap();
        assert!((g_c.value() - 0.316_227_766_016_837_9).abs() < 1e-15);
        assert!(g_a.is_none());
    }

    #[test]
    fn single_molecule_and_zero_coupling() {
        let mut p = fig4();
        p.n_molecules = 1;
        assert_eq!(p.collective_g_c(), p.g_c);
        p.g_c = Freq::ZERO;
        p.n_molecules = 12345;
        assert_eq!(p.collective_g_c().value(), 0.0);
    }

    #[test]
    fn physical_drive_reports_g_a() {
        let mut p = fig4();
        p.n_molecules = 100;
        p.drive = DriveSpec::Physical {
            delta0: Freq::thz(30.0),
            g_a: Freq::thz(0.5),
            eps_p: Freq::thz(500.0),
        };
        let (_, g_a) = p.collective_couplings().unwrap();
        assert_eq!(g_a, Some(Freq::thz(5.0)));
    }

    #[test]
    fn validation_messages() {
        let mut p = fig4();
        p.kappa_a = Freq::ZERO;
        let err = p.validate().unwrap_err();
        assert_eq!(err.field, "kappa_a");
        assert_eq!(std::format!("{err}"), "kappa_a must be > 0");

        let mut p = fig4();
        p.n_molecules = 0;
        assert_eq!(std::format!("{}", p.validate().unwrap_err()), "n_molecules must be >= 1");

        let mut p = fig4();
        p.gamma_b = Freq::thz(f64::NAN);
        assert_eq!(p.validate().unwrap_err().field, "gamma_B");

        let mut p = fig4();
        p.drive = DriveSpec::Physical {
            delta0: Freq::ZERO,
            g_a: Freq::thz(1.0),
            eps_p: Freq::thz(-1.0),
        };
        assert_eq!(p.validate().unwrap_err().field, "drive.eps_p");

        assert!(fig4().validate().is_ok());
    }

    #[test]
    fn negative_detuning_is_allowed() {
        let mut p = fig4();
        p.drive = DriveSpec::Direct { delta: Freq::thz(-30.0), g_a_enh: C64::new(0.0, 0.0) };
        assert!(p.validate().is_ok());
    }

    #[test]
    fn angular_round_trip() {
        for x in [0.0, 1e-4, 0.1, 0.5, 3.48, 30.0, 500.0, -30.0] {
            let back = Freq::from_angular(Freq::thz(x).angular()).value();
            assert!((back - x).abs() <= f64::EPSILON * x.abs());
        }
    }
}
