//! Linearized drift and damping matrices.
//!
//! The fluctuation vector is ordered `(δa, δc, δB, δa†, δc†, δB†)`, so with
//! `dV/dt = −M V + L V_in` the full coefficient matrix is
//! `M = [[P, Q], [Q*, P*]]`. Every index used elsewhere in the crate comes
//! from the constants below.

use crate::linalg::{CMatrix, C64, I, ZERO};
use crate::params::OperatingPoint;

/// Visible mode `a`.
pub const MODE_A: usize = 0;
/// Infrared mode `c`.
pub const MODE_C: usize = 1;
/// Collective vibration `B`.
pub const MODE_B: usize = 2;
/// Offset from an annihilation component to its creation partner.
pub const CONJ: usize = 3;

/// Full 6×6 linearized system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicalSystem {
    pub m: CMatrix<6>,
    /// Diagonal of `L = diag(√2κa, √2κc, √2γB, √2κa, √2κc, √2γB)`.
    pub l: [f64; 6],
    pub point: OperatingPoint,
}

impl DynamicalSystem {
    pub fn p_block(&self) -> CMatrix<3> {
        block(&self.m, 0, 0)
    }

    pub fn q_block(&self) -> CMatrix<3> {
        block(&self.m, 0, CONJ)
    }

    pub fn l_matrix(&self) -> CMatrix<6> {
        CMatrix::from_real_diag(&self.l)
    }
}

fn block(m: &CMatrix<6>, r0: usize, c0: usize) -> CMatrix<3> {
    let mut out = CMatrix::zeros();
    for r in 0..3 {
        for c in 0..3 {
            out.0[r][c] = m.0[r0 + r][c0 + c];
        }
    }
    out
}

fn damping(op: &OperatingPoint) -> [f64; 3] {
    [
        libm::sqrt(2.0 * op.kappa_a),
        libm::sqrt(2.0 * op.kappa_c),
        libm::sqrt(2.0 * op.gamma_b),
    ]
}

/// The `P` block, shared by the full model and the red-detuned RWA.
pub fn p_matrix(op: &OperatingPoint) -> CMatrix<3> {
    let g = op.g_a_enh;
    let gc = C64::new(op.g_c, 0.0);
    CMatrix([
        [I * op.delta + op.kappa_a, ZERO, I * g],
        [ZERO, I * op.omega_c + op.kappa_c, I * gc],
        [I * g.conj(), I * gc, I * op.omega_b + op.gamma_b],
    ])
}

pub fn q_matrix(op: &OperatingPoint) -> CMatrix<3> {
    let g = op.g_a_enh;
    let gc = C64::new(op.g_c, 0.0);
    CMatrix([[ZERO, ZERO, I * g], [ZERO, ZERO, I * gc], [I * g, I * gc, ZERO]])
}

pub fn build_full(op: &OperatingPoint) -> DynamicalSystem {
    let p = p_matrix(op);
    let q = q_matrix(op);
    let (pc, qc) = (p.conj(), q.conj());
    let mut m = CMatrix::<6>::zeros();
    for r in 0..3 {
        for c in 0..3 {
            m.0[r][c] = p.0[r][c];
            m.0[r][c + CONJ] = q.0[r][c];
            m.0[r + CONJ][c] = qc.0[r][c];
            m.0[r + CONJ][c + CONJ] = pc.0[r][c];
        }
    }
    let d = damping(op);
    DynamicalSystem { m, l: [d[0], d[1], d[2], d[0], d[1], d[2]], point: *op }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RwaKind {
    /// Beam-splitter terms kept; basis `(δa, δc, δB)`.
    RedDetuned,
    /// Two-mode-squeezing terms kept; basis `(δa, δc†, δB†)`.
    BlueDetuned,
}

impl RwaKind {
    pub fn name(self) -> &'static str {
        match self {
            RwaKind::RedDetuned => "red",
            RwaKind::BlueDetuned => "blue",
        }
    }
}

/// Reduced 3×3 model in the rotating-wave approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaSystem {
    pub kind: RwaKind,
    pub m3: CMatrix<3>,
    /// Diagonal of `𝒥 = diag(√2κa, √2κc, √2γB)`.
    pub j3: [f64; 3],
    pub point: OperatingPoint,
}

pub fn build_rwa(kind: RwaKind, op: &OperatingPoint) -> RwaSystem {
    let m3 = match kind {
        RwaKind::RedDetuned => p_matrix(op),
        RwaKind::BlueDetuned => {
            let g = op.g_a_enh;
            let gc = C64::new(op.g_c, 0.0);
            CMatrix([
                [I * op.delta + op.kappa_a, ZERO, I * g],
                [ZERO, -I * op.omega_c + op.kappa_c, -I * gc],
                [-I * g.conj(), -I * gc, -I * op.omega_b + op.gamma_b],
            ])
        }
    };
    RwaSystem { kind, m3, j3: damping(op), point: *op }
}
