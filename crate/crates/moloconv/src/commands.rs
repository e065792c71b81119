//! Subcommand implementations. Each returns the exit status of a run that
//! produced output; hard failures come back as [`CliError`].

use std::path::Path;

use moloconv_core::axis::{grid, AxisSpec, SweepParam};
use moloconv_core::dynmat::{build_full, build_rwa, DynamicalSystem, RwaKind};
use moloconv_core::linalg::CMatrix;
use moloconv_core::rwa::rwa_scattering;
use moloconv_core::scattering::{
    detuning_regime, evaluate, sideband_report, DetuningRegime, Sideband, ZERO_EFFICIENCY,
};
use moloconv_core::stability::{classify, classify_matrix, point_stability};
use moloconv_core::steady_state::solve_steady_state;
use moloconv_core::sweep::{evaluate_point, Metric, SweepTable};
use moloconv_core::{DriveSpec, Error, SystemParams, C64};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{exit, CliError, Result};
use crate::format;
use crate::table::{Cell, Table, POLE, UNDEFINED, UNSTABLE};

/// Outcome of a run that wrote its output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// The linearized system is unstable or the grid hit a pole.
    Physics,
    /// Some points failed and were recorded as such.
    Partial,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Complete => exit::OK,
            Status::Physics => exit::PHYSICS,
            Status::Partial => exit::PARTIAL,
        }
    }
}

pub const SPECTRUM_HEADER: [&str; 12] = [
    "omega_thz", "T_aa", "T_ac", "T_aB", "T_ca", "T_cc", "T_cB", "T_Ba", "T_Bc", "T_BB", "S_a_add", "n_add_point",
];

/// Uniform Fourier-frequency grid in THz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl FreqGrid {
    /// `±1.2 ω_b` with 2001 points.
    pub fn around(omega_b: f64) -> Self {
        Self { min: -1.2 * omega_b, max: 1.2 * omega_b, points: 2001 }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        let bad = |m: &str| Err(CliError::Usage(format!("frequency grid: {m}")));
        if self.points == 0 {
            return bad("points must be >= 1");
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return bad("bounds must be finite");
        }
        if self.points > 1 && self.min >= self.max {
            return bad("omega-min must be < omega-max");
        }
        if self.points == 1 {
            return Ok(vec![self.min]);
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        let mut v: Vec<f64> = (0..self.points).map(|k| self.min + step * k as f64).collect();
        v[self.points - 1] = self.max;
        Ok(v)
    }
}

fn stable_system(p: &SystemParams) -> Result<(DynamicalSystem, bool)> {
    let sys = build_full(&p.operating_point()?);
    let stable = classify(&sys)?.stable;
    Ok((sys, stable))
}

/// Scattering probabilities over a frequency grid.
///
/// An unstable system yields rows whose values are all `unstable`. A pole on
/// the grid ends the table with a `pole` row.
pub fn spectrum(p: &SystemParams, g: &FreqGrid) -> Result<(Table, Status)> {
    let omegas = g.values()?;
    let (sys, stable) = stable_system(p)?;
    let mut table = Table::new(SPECTRUM_HEADER);
    let sentinel_row = |w: f64, tag: &'static str| {
        let mut row = vec![Cell::Num(w)];
        row.extend([Cell::Text(tag); SPECTRUM_HEADER.len() - 1]);
        row
    };
    if !stable {
        table.rows = omegas.iter().map(|&w| sentinel_row(w, UNSTABLE)).collect();
        return Ok((table, Status::Physics));
    }
    let results: Vec<_> = omegas.par_iter().map(|&w| evaluate(&sys, w)).collect();
    for (w, r) in omegas.iter().zip(results) {
        match r {
            Ok(r) => {
                let mut row = vec![Cell::Num(*w)];
                row.extend(r.t.iter().flatten().map(|&x| Cell::Num(x)));
                row.push(Cell::Num(r.s_add));
                row.push(r.pointwise_added_noise().map_or(Cell::Text(UNDEFINED), Cell::Num));
                table.rows.push(row);
            }
            Err(Error::SingularAtFrequency { .. }) => {
                table.rows.push(sentinel_row(*w, POLE));
                return Ok((table, Status::Physics));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((table, Status::Complete))
}

fn rwa_kind(p: &SystemParams) -> Result<(RwaKind, moloconv_core::OperatingPoint)> {
    let op = p.operating_point()?;
    let kind = match detuning_regime(&op) {
        DetuningRegime::Red => RwaKind::RedDetuned,
        DetuningRegime::Blue => RwaKind::BlueDetuned,
        DetuningRegime::Other => return Err(Error::PrereqViolation("delta = +omega_b or -omega_b").into()),
    };
    Ok((kind, op))
}

/// `|𝒰₁₂(ω)|²` of the rotating-wave model matching the detuning.
pub fn rwa_spectrum(p: &SystemParams, g: &FreqGrid) -> Result<Table> {
    let omegas = g.values()?;
    let (kind, op) = rwa_kind(p)?;
    let r = build_rwa(kind, &op);
    let stable = classify_matrix(&r.m3)?.stable;
    let mut table = Table::new(["omega_thz", "T_ac_rwa"]);
    for &w in &omegas {
        let cell = if !stable {
            Cell::Text(UNSTABLE)
        } else {
            match rwa_scattering(&r, w) {
                Ok(s) => Cell::Num(s.t_ac()),
                Err(Error::SingularAtFrequency { .. }) => Cell::Text(POLE),
                Err(e) => return Err(e.into()),
            }
        };
        table.rows.push(vec![Cell::Num(w), cell]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    Full,
    Rwa,
}

fn unstable_error(margin: f64) -> CliError {
    CliError::Unstable { margin }
}

pub fn sidebands(p: &SystemParams, model: Model) -> Result<Value> {
    let (t_as, t_s, n_as, n_s, regime) = match model {
        Model::Full => {
            let sys = build_full(&p.operating_point()?);
            let v = classify(&sys)?;
            if !v.stable {
                return Err(unstable_error(v.margin));
            }
            let r = sideband_report(&sys)?;
            (r.t_ac_as, r.t_ac_s, r.n_add_as, r.n_add_s, r.regime)
        }
        Model::Rwa => {
            let (kind, op) = rwa_kind(p)?;
            let r = build_rwa(kind, &op);
            let v = classify_matrix(&r.m3)?;
            if !v.stable {
                return Err(unstable_error(v.margin));
            }
            let at = |sb: Sideband| -> Result<(f64, f64)> {
                let s = rwa_scattering(&r, sb.omega(op.omega_b))?;
                if s.t_ac() < ZERO_EFFICIENCY {
                    return Err(Error::ZeroEfficiency(sb).into());
                }
                Ok((s.t_ac(), s.s_add() / s.t_ac()))
            };
            let (t_as, n_as) = at(Sideband::AntiStokes)?;
            let (t_s, n_s) = at(Sideband::Stokes)?;
            (t_as, t_s, n_as, n_s, detuning_regime(&op))
        }
    };
    Ok(json!({
        "t_ac_AS": format::round(t_as),
        "t_ac_S": format::round(t_s),
        "n_add_AS": format::round(n_as),
        "n_add_S": format::round(n_s),
        "model": match model { Model::Full => "full", Model::Rwa => "rwa" },
        "regime": regime.name(),
    }))
}

pub fn sweep(p: &SystemParams, axes: &[AxisSpec], metrics: &[Metric]) -> Result<(Table, Status)> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(CliError::Usage("a sweep takes one or two axes".into()));
    }
    let points = grid(axes)?;
    let rows = points.par_iter().map(|c| evaluate_point(p, axes, c, metrics)).collect();
    let result = SweepTable { axes: axes.to_vec(), metrics: metrics.to_vec(), rows };

    let mut header: Vec<String> = axes.iter().map(|a| a.param.name().to_string()).collect();
    header.extend(metrics.iter().map(|m| m.name().to_string()));
    header.push("stable".into());
    let mut table = Table::new(header);
    let mut status = Status::Complete;
    for row in &result.rows {
        if let Some(e) = &row.error {
            eprintln!("warning: point {:?}: {e}", row.coords);
            status = Status::Partial;
        }
        let mut cells: Vec<Cell> = row.coords.iter().map(|&x| Cell::Num(x)).collect();
        cells.extend(row.values.iter().map(|&v| Cell::from(v)));
        cells.push(Cell::Bool(row.stable));
        table.rows.push(cells);
    }
    Ok((table, status))
}

pub fn stability_map(p: &SystemParams, x: &AxisSpec, y: &AxisSpec) -> Result<(Table, Status)> {
    let points = grid(&[*x, *y])?;
    let verdicts = points
        .par_iter()
        .map(|c| point_stability(p, x, c[0], y, c[1]))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(["x", "y", "stable", "margin_thz"]);
    let mut status = Status::Complete;
    for v in verdicts {
        if v.solver_failed {
            eprintln!("warning: eigenvalue iteration failed at x = {}, y = {}", v.x, v.y);
            status = Status::Partial;
        }
        table.rows.push(vec![Cell::Num(v.x), Cell::Num(v.y), Cell::Bool(v.stable), Cell::Num(v.margin)]);
    }
    Ok((table, status))
}

pub fn steady_state(p: &SystemParams) -> Result<Value> {
    if !matches!(p.drive, DriveSpec::Physical { .. }) {
        return Err(Error::WrongDrive("physical").into());
    }
    let sol = solve_steady_state(p)?;
    let r = format::round;
    let branches: Vec<Value> = sol
        .branches()
        .iter()
        .map(|b| {
            json!({
                "a_re": r(b.a.re), "a_im": r(b.a.im),
                "c_re": r(b.c.re), "c_im": r(b.c.im),
                "B_re": r(b.b.re), "B_im": r(b.b.im),
                "delta_eff_thz": r(b.delta_eff.value()),
            })
        })
        .collect();
    Ok(json!({ "branches": branches, "selected": sol.selected() }))
}

fn matrix_json<const N: usize>(m: &CMatrix<N>) -> Value {
    let pair = |z: C64| json!([format::round(z.re), format::round(z.im)]);
    Value::Array(m.0.iter().map(|row| Value::Array(row.iter().map(|&z| pair(z)).collect())).collect())
}

pub fn dump_matrix(p: &SystemParams) -> Result<Value> {
    let sys = build_full(&p.operating_point()?);
    Ok(json!({ "M": matrix_json(&sys.m), "L": matrix_json(&sys.l_matrix()) }))
}

/// Sets `Δ` (or `Δ0`) to `±ω_b`.
pub fn set_detuning(p: &mut SystemParams, kind: RwaKind) {
    let wb = p.omega_b;
    let d = match kind {
        RwaKind::RedDetuned => wb,
        RwaKind::BlueDetuned => moloconv_core::Freq::thz(-wb.value()),
    };
    p.set_detuning(d);
}

/// Overrides `|𝒢ₐ|`.
pub fn set_g_a(p: &mut SystemParams, g: f64) -> Result<()> {
    Ok(SweepParam::GA.apply(p, g)?)
}

pub fn write_table(table: &Table, out: &Path, params: &SystemParams) -> Result<()> {
    table.write_file(out)?;
    crate::manifest::write_beside(out, params)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn grid_checks() {
        assert!(FreqGrid { min: 0.0, max: 1.0, points: 0 }.values().is_err());
        assert!(FreqGrid { min: 1.0, max: 0.0, points: 3 }.values().is_err());
        assert_eq!(FreqGrid { min: -1.0, max: 1.0, points: 3 }.values().unwrap(), [-1.0, 0.0, 1.0]);
        let g = FreqGrid::around(30.0).values().unwrap();
        assert_eq!((g.len(), g[0], g[2000]), (2001, -36.0, 36.0));
    }

    #[test]
    fn red_spectrum_peaks_near_anti_stokes() {
        let p = presets::find("fig4-red").unwrap().params();
        let (t, status) = spectrum(&p, &FreqGrid::around(30.0)).unwrap();
        assert_eq!(status, Status::Complete);
        let (w, _) = t
            .rows
            .iter()
            .map(|r| match (r[0], r[2]) {
                (Cell::Num(w), Cell::Num(v)) => (w, v),
                _ => panic!("sentinel in stable spectrum"),
            })
            .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        assert!((w + 30.0).abs() < 1.0, "peak at {w}");
    }

    #[test]
    fn unstable_spectrum_uses_sentinels() {
        let mut p = presets::find("fig4-blue").unwrap().params();
        set_g_a(&mut p, 4.0).unwrap();
        let (t, status) = spectrum(&p, &FreqGrid { min: -1.0, max: 1.0, points: 3 }).unwrap();
        assert_eq!(status, Status::Physics);
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows.iter().all(|r| r[1..].iter().all(|c| *c == Cell::Text(UNSTABLE))));
    }

    #[test]
    fn sideband_json_fields() {
        let v = sidebands(&presets::find("fig6-blue").unwrap().params(), Model::Full).unwrap();
        for k in ["t_ac_AS", "t_ac_S", "n_add_AS", "n_add_S"] {
            assert!(v[k].is_f64(), "{k}");
        }
        assert_eq!(v["model"], "full");
        assert_eq!(v["regime"], "blue");
        let rwa = sidebands(&presets::find("fig4-red").unwrap().params(), Model::Rwa).unwrap();
        assert_eq!(rwa["model"], "rwa");
    }

    #[test]
    fn steady_state_requires_physical_drive() {
        let e = steady_state(&presets::find("fig4-red").unwrap().params()).unwrap_err();
        assert_eq!(e.exit_code(), exit::USAGE);
    }

    #[test]
    fn detuning_override() {
        let mut p = presets::find("fig4-red").unwrap().params();
        set_detuning(&mut p, RwaKind::BlueDetuned);
        assert_eq!(detuning_regime(&p.operating_point().unwrap()), DetuningRegime::Blue);
    }
}
