//! Sweep axes: which parameter varies and over which grid.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::params::{DriveSpec, Freq, SystemParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepParam {
    /// Enhanced coupling `|𝒢ₐ|`; forces a direct drive.
    GA,
    N,
    KappaA,
    KappaC,
    GammaB,
    /// `Δ` for a direct drive, `Δ0` for a physical one.
    Delta,
    /// Single-molecule `g_c`.
    GC,
}

impl SweepParam {
    pub const ALL: [SweepParam; 7] = [
        SweepParam::GA,
        SweepParam::N,
        SweepParam::KappaA,
        SweepParam::KappaC,
        SweepParam::GammaB,
        SweepParam::Delta,
        SweepParam::GC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::GA => "gA",
            SweepParam::N => "N",
            SweepParam::KappaA => "kappa_a",
            SweepParam::KappaC => "kappa_c",
            SweepParam::GammaB => "gamma_B",
            SweepParam::Delta => "delta",
            SweepParam::GC => "g_c",
        }
    }

    /// Writes `value` into `p`.
    ///
    /// Setting `gA` on a physical drive replaces it with a direct drive at
    /// the bare detuning, since the enhanced coupling is then no longer an
    /// output of the mean-field solve. `N` is rounded to the nearest integer.
    pub fn apply(self, p: &mut SystemParams, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::InvalidAxis("non-finite value"));
        }
        match self {
            SweepParam::GA => {
                let delta = match p.drive {
                    DriveSpec::Direct { delta, .. } => delta,
                    DriveSpec::Physical { delta0, .. } => delta0,
                };
                p.drive = DriveSpec::Direct { delta, g_a_enh: C64::new(value, 0.0) };
            }
            SweepParam::N => {
                let n = libm::round(value);
                if n < 1.0 {
                    return Err(Error::InvalidAxis("N must be >= 1"));
                }
                p.n_molecules = n as u64;
            }
            SweepParam::KappaA => p.kappa_a = Freq::thz(value),
            SweepParam::KappaC => p.kappa_c = Freq::thz(value),
            SweepParam::GammaB => p.gamma_b = Freq::thz(value),
            SweepParam::Delta => p.set_detuning(Freq::thz(value)),
            SweepParam::GC => p.g_c = Freq::thz(value),
        }
        Ok(())
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or(Error::InvalidAxis("unknown parameter"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl AxisSpec {
    pub fn linear(param: SweepParam, start: f64, stop: f64, points: usize) -> Self {
        Self { param, start, stop, points, scale: Scale::Linear }
    }

    pub fn log(param: SweepParam, start: f64, stop: f64, points: usize) -> Self {
        Self { param, start, stop, points, scale: Scale::Log }
    }

    pub fn check(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidAxis("bounds must be finite"));
        }
        if self.points == 0 {
            return Err(Error::InvalidAxis("points must be >= 1"));
        }
        if self.points > 1 && self.start >= self.stop {
            return Err(Error::InvalidAxis("start must be < stop"));
        }
        if self.scale == Scale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::InvalidAxis("log axis bounds must be > 0"));
        }
        Ok(())
    }

    /// Grid values, endpoints included exactly.
    pub fn values(&self) -> Result<Vec<f64>> {
        self.check()?;
        let n = self.points;
        if n == 1 {
            return Ok(alloc::vec![self.start]);
        }
        let last = (n - 1) as f64;
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => {
                        let (a, b) = (libm::log(self.start), libm::log(self.stop));
                        libm::exp(a + (b - a) * t)
                    }
                }
            })
            .collect();
        v[0] = self.start;
        v[n - 1] = self.stop;
        Ok(v)
    }
}

impl FromStr for AxisSpec {
    type Err = Error;

    /// `name:start:stop:points[:lin|:log]`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::InvalidAxis("expected name:start:stop:points[:log]"));
        }
        let param: SweepParam = parts[0].parse()?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::InvalidAxis("bad number"));
        let start = num(parts[1])?;
        let stop = num(parts[2])?;
        let points = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidAxis("bad point count"))?;
        let scale = match parts.get(4).copied() {
            None | Some("lin") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(_) => return Err(Error::InvalidAxis("scale must be lin or log")),
        };
        let axis = AxisSpec { param, start, stop, points, scale };
        axis.check()?;
        Ok(axis)
    }
}

/// Cartesian product of the axes, first axis outermost.
pub fn grid(axes: &[AxisSpec]) -> Result<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = alloc::vec![Vec::new()];
    for axis in axes {
        let vals = axis.values()?;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                vals.iter().map(move |&v| {
                    let mut row = prefix.clone();
                    row.push(v);
                    row
                })
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_values() {
        let a: AxisSpec = "gA:0:5:6".parse().unwrap();
        assert_eq!(a.param, SweepParam::GA);
        assert_eq!(a.values().unwrap(), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let l: AxisSpec = "N:1e5:1e9:5:log".parse().unwrap();
        let v = l.values().unwrap();
        for (x, want) in v.iter().zip([1e5, 1e6, 1e7, 1e8, 1e9]) {
            assert!((x / want - 1.0).abs() < 1e-12);
        }
        assert_eq!(v[4], 1e9);
    }

    #[test]
    fn parse_errors() {
        for bad in ["gA:0:5", "foo:0:1:3", "gA:x:1:3", "gA:0:1:0", "kappa_a:0:1:3:log", "gA:0:1:3:cubic", "gA:5:0:3"] {
            assert!(bad.parse::<AxisSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_order() {
        let g = grid(&[
            AxisSpec::linear(SweepParam::GA, 0.0, 1.0, 2),
            AxisSpec::linear(SweepParam::N, 1.0, 3.0, 3),
        ])
        .unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], [0.0, 1.0]);
        assert_eq!(g[2], [0.0, 3.0]);
        assert_eq!(g[3], [1.0, 1.0]);
    }

    #[test]
    fn apply_ga_to_physical_drive() {
        let mut p = SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(30.0),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10,
            drive: DriveSpec::Physical { delta0: Freq::thz(-30.0), g_a: Freq::thz(0.1), eps_p: Freq::thz(1.0) },
        };
        SweepParam::GA.apply(&mut p, 2.5).unwrap();
        assert_eq!(p.drive, DriveSpec::Direct { delta: Freq::thz(-30.0), g_a_enh: C64::new(2.5, 0.0) });
        SweepParam::N.apply(&mut p, 1e7 + 0.3).unwrap();
        assert_eq!(p.n_molecules, 10_000_000);
        assert!(SweepParam::N.apply(&mut p, 0.2).is_err());
    }
}
