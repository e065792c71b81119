//! Parameter sweeps of sideband figures of merit.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::axis::{grid, AxisSpec};
use crate::dynmat::{build_full, build_rwa, RwaKind};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::rwa::rwa_scattering;
use crate::scattering::{detuning_regime, sideband_point, DetuningRegime, Sideband, ZERO_EFFICIENCY};
use crate::stability::{classify, classify_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    TacAs,
    TacS,
    NaddAs,
    NaddS,
    TacRwaAs,
    TacRwaS,
    /// Stability margin `min Re λ`; reported for unstable points too.
    Margin,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::TacAs,
        Metric::TacS,
        Metric::NaddAs,
        Metric::NaddS,
        Metric::TacRwaAs,
        Metric::TacRwaS,
        Metric::Margin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::TacAs => "t_ac_AS",
            Metric::TacS => "t_ac_S",
            Metric::NaddAs => "n_add_AS",
            Metric::NaddS => "n_add_S",
            Metric::TacRwaAs => "t_ac_rwa_AS",
            Metric::TacRwaS => "t_ac_rwa_S",
            Metric::Margin => "margin",
        }
    }

    fn sideband(self) -> Option<Sideband> {
        match self {
            Metric::TacAs | Metric::NaddAs | Metric::TacRwaAs => Some(Sideband::AntiStokes),
            Metric::TacS | Metric::NaddS | Metric::TacRwaS => Some(Sideband::Stokes),
            Metric::Margin => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::InvalidAxis("unknown metric"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricValue {
    Number(f64),
    /// The full linearized system is unstable, so the value is meaningless.
    Unstable,
    /// The evaluation frequency sits on a pole of the response.
    Pole,
    /// Not defined here, e.g. added noise with zero conversion.
    Undefined,
}

impl MetricValue {
    pub fn number(self) -> Option<f64> {
        match self {
            MetricValue::Number(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    /// One coordinate per axis.
    pub coords: Vec<f64>,
    pub values: Vec<MetricValue>,
    pub stable: bool,
    /// Failure that prevented evaluating this point; every value is then
    /// `Undefined` and the point counts as unstable.
    pub error: Option<Error>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub axes: Vec<AxisSpec>,
    pub metrics: Vec<Metric>,
    pub rows: Vec<SweepRow>,
}

fn pole_or<T>(r: Result<T>, f: impl FnOnce(T) -> MetricValue) -> Result<MetricValue> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::SingularAtFrequency { .. } | Error::PoleAtFrequency { .. }) => Ok(MetricValue::Pole),
        Err(e) => Err(e),
    }
}

/// Evaluates `metrics` for `base` with each axis parameter set to the
/// matching coordinate. Failures are recorded in the row.
pub fn evaluate_point(base: &SystemParams, axes: &[AxisSpec], coords: &[f64], metrics: &[Metric]) -> SweepRow {
    match try_point(base, axes, coords, metrics) {
        Ok(row) => row,
        Err(e) => SweepRow {
            coords: coords.to_vec(),
            values: alloc::vec![MetricValue::Undefined; metrics.len()],
            stable: false,
            error: Some(e),
        },
    }
}

fn try_point(base: &SystemParams, axes: &[AxisSpec], coords: &[f64], metrics: &[Metric]) -> Result<SweepRow> {
    let mut p = base.clone();
    for (axis, &v) in axes.iter().zip(coords) {
        axis.param.apply(&mut p, v)?;
    }
    let op = p.operating_point()?;
    let sys = build_full(&op);
    let verdict = classify(&sys)?;
    let mut values = Vec::with_capacity(metrics.len());
    for &m in metrics {
        let value = match (m, m.sideband()) {
            (Metric::Margin, _) => MetricValue::Number(verdict.margin),
            _ if !verdict.stable => MetricValue::Unstable,
            (Metric::TacAs | Metric::TacS, Some(sb)) => pole_or(sideband_point(&sys, sb), |(t, _)| MetricValue::Number(t))?,
            (Metric::NaddAs | Metric::NaddS, Some(sb)) => pole_or(sideband_point(&sys, sb), |(t, s)| {
                if t < ZERO_EFFICIENCY {
                    MetricValue::Undefined
                } else {
                    MetricValue::Number(s / t)
                }
            })?,
            (_, Some(sb)) => {
                let kind = match detuning_regime(&op) {
                    DetuningRegime::Red => Some(RwaKind::RedDetuned),
                    DetuningRegime::Blue => Some(RwaKind::BlueDetuned),
                    DetuningRegime::Other => None,
                };
                match kind {
                    None => MetricValue::Undefined,
                    Some(kind) => {
                        let r = build_rwa(kind, &op);
                        if !classify_matrix(&r.m3)?.stable {
                            MetricValue::Unstable
                        } else {
                            pole_or(rwa_scattering(&r, sb.omega(op.omega_b)), |s| MetricValue::Number(s.t_ac()))?
                        }
                    }
                }
            }
            (_, None) => MetricValue::Undefined,
        };
        values.push(value);
    }
    Ok(SweepRow { coords: coords.to_vec(), values, stable: verdict.stable, error: None })
}

pub fn run_sweep(base: &SystemParams, axes: &[AxisSpec], metrics: &[Metric]) -> Result<SweepTable> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::InvalidAxis("a sweep takes one or two axes"));
    }
    let rows = grid(axes)?
        .iter()
        .map(|c| evaluate_point(base, axes, c, metrics))
        .collect();
    Ok(SweepTable { axes: axes.to_vec(), metrics: metrics.to_vec(), rows })
}

impl SweepTable {
    pub fn column(&self, metric: Metric) -> Option<usize> {
        self.metrics.iter().position(|&m| m == metric)
    }

    /// Row with the largest finite value of `metric` among stable points;
    /// ties go to the earliest row.
    pub fn argmax(&self, metric: Metric) -> Result<(usize, f64)> {
        let col = self.column(metric).ok_or(Error::InvalidAxis("metric not in table"))?;
        let mut best: Option<(usize, f64)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row.stable {
                continue;
            }
            if let Some(v) = row.values[col].number().filter(|v| v.is_finite()) {
                if best.is_none_or(|(_, b)| v > b) {
                    best = Some((i, v));
                }
            }
        }
        best.ok_or(Error::AllUnstable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::SweepParam;
    use crate::linalg::C64;
    use crate::params::{DriveSpec, Freq};

    fn base(delta: f64) -> SystemParams {
        SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(30.0),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10_000_000,
            drive: DriveSpec::Direct { delta: Freq::thz(delta), g_a_enh: C64::new(0.0, 0.0) },
        }
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("T_ac".parse::<Metric>().is_err());
    }

    #[test]
    fn blue_sweep_marks_unstable_points() {
        let t = run_sweep(
            &base(-30.0),
            &[AxisSpec::linear(SweepParam::GA, 0.0, 4.0, 5)],
            &[Metric::TacS, Metric::NaddS, Metric::Margin],
        )
        .unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[0].values[1], MetricValue::Undefined);
        assert!(t.rows[2].stable);
        assert!(!t.rows[4].stable);
        assert_eq!(t.rows[4].values[0], MetricValue::Unstable);
        assert!(t.rows[4].values[2].number().unwrap() < 0.0);
        let (i, _) = t.argmax(Metric::TacS).unwrap();
        assert_eq!(i, 3);
    }

    #[test]
    fn all_unstable_has_no_argmax() {
        let t = run_sweep(&base(-30.0), &[AxisSpec::linear(SweepParam::GA, 4.0, 5.0, 3)], &[Metric::TacS]).unwrap();
        assert_eq!(t.argmax(Metric::TacS), Err(Error::AllUnstable));
    }

    #[test]
    fn rwa_metric_needs_resonant_detuning() {
        let mut b = base(12.0);
        b.drive = DriveSpec::Direct { delta: Freq::thz(12.0), g_a_enh: C64::new(1.0, 0.0) };
        let row = evaluate_point(&b, &[], &[], &[Metric::TacRwaAs]);
        assert_eq!(row.values[0], MetricValue::Undefined);
    }

    #[test]
    fn point_failures_stay_in_their_row() {
        let t = run_sweep(&base(30.0), &[AxisSpec::linear(SweepParam::KappaA, -1.0, 1.0, 3)], &[Metric::TacAs]).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(matches!(t.rows[0].error, Some(Error::Validation(_))));
        assert_eq!(t.rows[0].values[0], MetricValue::Undefined);
        assert!(!t.rows[0].stable);
        assert!(t.rows[2].error.is_none());
    }

    #[test]
    fn empty_metric_list_keeps_axes() {
        let t = run_sweep(&base(30.0), &[AxisSpec::linear(SweepParam::GA, 0.0, 1.0, 4)], &[]).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows.iter().all(|r| r.values.is_empty()));
    }

    #[test]
    fn ties_go_to_first_row() {
        let t = SweepTable {
            axes: Vec::new(),
            metrics: alloc::vec![Metric::TacAs],
            rows: alloc::vec![
                SweepRow { coords: alloc::vec![0.0], values: alloc::vec![MetricValue::Number(1.0)], stable: true, error: None },
                SweepRow { coords: alloc::vec![1.0], values: alloc::vec![MetricValue::Number(2.0)], stable: true, error: None },
                SweepRow { coords: alloc::vec![2.0], values: alloc::vec![MetricValue::Number(2.0)], stable: true, error: None },
            ],
        };
        assert_eq!(t.argmax(Metric::TacAs), Ok((1, 2.0)));
    }
}
