//! Built-in parameter sets behind the `reproduce` figures.
//!
//! All presets share the base set below and use a direct drive, so the
//! pump amplitude does not enter.
//!
//! | preset | detuning | `|𝒢ₐ|` | `κa` | used for |
//! |---|---|---|---|---|
//! | `fig2a` | `−ω_b` | swept | 30 | stability map over `|𝒢ₐ|` and `N` |
//! | `fig2b` | `−ω_b` | 0.75 | swept | stability map over `κa` and `N` |
//! | `fig4-red` | `+ω_b` | 3 | 30 | spectra and coupling sweeps, red pump |
//! | `fig4-blue` | `−ω_b` | 3 | 30 | spectra and coupling sweeps, blue pump |
//! | `fig5-red` | `+ω_b` | 3 | 30 | anti-Stokes noise spectra (also 1 and 2) |
//! | `fig5-blue` | `−ω_b` | 2 | 30 | Stokes noise spectra (also 1 and 3) |
//! | `fig6-red` | `+ω_b` | 0.75 | 2 | efficiency and noise vs `|𝒢ₐ|`, `κa` |
//! | `fig6-blue` | `−ω_b` | 0.75 | 2 | efficiency and noise vs `|𝒢ₐ|`, `κa` |
//!
//! Base set (THz): `ω_b = ω_c = 30`, `g_c = 1e-4` (0.1 GHz), `N = 10⁷`,
//! `κc = 0.5`, `γB = 0.1`.

use moloconv_core::{DriveSpec, Freq, SystemParams, C64};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub delta: f64,
    pub g_a_enh: f64,
    pub kappa_a: f64,
}

pub const PRESETS: [Preset; 8] = [
    Preset { name: "fig2a", delta: -30.0, g_a_enh: 0.0, kappa_a: 30.0 },
    Preset { name: "fig2b", delta: -30.0, g_a_enh: 0.75, kappa_a: 30.0 },
    Preset { name: "fig4-red", delta: 30.0, g_a_enh: 3.0, kappa_a: 30.0 },
    Preset { name: "fig4-blue", delta: -30.0, g_a_enh: 3.0, kappa_a: 30.0 },
    Preset { name: "fig5-red", delta: 30.0, g_a_enh: 3.0, kappa_a: 30.0 },
    Preset { name: "fig5-blue", delta: -30.0, g_a_enh: 2.0, kappa_a: 30.0 },
    Preset { name: "fig6-red", delta: 30.0, g_a_enh: 0.75, kappa_a: 2.0 },
    Preset { name: "fig6-blue", delta: -30.0, g_a_enh: 0.75, kappa_a: 2.0 },
];

impl Preset {
    pub fn params(&self) -> SystemParams {
        SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(self.kappa_a),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10_000_000,
            drive: DriveSpec::Direct { delta: Freq::thz(self.delta), g_a_enh: C64::new(self.g_a_enh, 0.0) },
        }
    }
}

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.name)
}
