//! Batch regeneration of the data behind each figure.

use std::path::{Path, PathBuf};

use moloconv_core::axis::{AxisSpec, SweepParam};
use moloconv_core::sweep::Metric;
use moloconv_core::SystemParams;

use crate::commands::{self, FreqGrid, Status};
use crate::error::{CliError, Result};
use crate::presets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig2,
    Fig4,
    Fig5,
    Fig6,
}

enum Panel {
    Map { x: AxisSpec, y: AxisSpec },
    Spectrum,
    RwaSpectrum,
    Sweep { axis: AxisSpec, metrics: Vec<Metric> },
}

struct Job {
    file: String,
    params: SystemParams,
    panel: Panel,
}

fn preset(name: &str) -> SystemParams {
    presets::find(name).expect("built-in preset").params()
}

fn with_g_a(name: &str, g: f64) -> SystemParams {
    let mut p = preset(name);
    commands::set_g_a(&mut p, g).expect("built-in coupling is valid");
    p
}

fn jobs(fig: Figure) -> Vec<Job> {
    use Metric::*;
    use SweepParam::{KappaA, GA, N};
    let job = |file: &str, params, panel| Job { file: file.into(), params, panel };
    let n_axis = AxisSpec::log(N, 1e5, 1e9, 201);
    match fig {
        Figure::Fig2 => vec![
            job("fig2a.csv", preset("fig2a"), Panel::Map { x: AxisSpec::linear(GA, 0.0, 5.0, 201), y: n_axis }),
            job("fig2b.csv", preset("fig2b"), Panel::Map { x: AxisSpec::log(KappaA, 0.5, 60.0, 201), y: n_axis }),
        ],
        Figure::Fig4 => {
            let g = AxisSpec::linear(GA, 0.0, 5.0, 501);
            let sweep = |metrics: Vec<Metric>| Panel::Sweep { axis: g, metrics };
            vec![
                job("fig4a.csv", preset("fig4-red"), Panel::Spectrum),
                job("fig4a_rwa.csv", preset("fig4-red"), Panel::RwaSpectrum),
                job("fig4b.csv", preset("fig4-blue"), Panel::Spectrum),
                job("fig4b_rwa.csv", preset("fig4-blue"), Panel::RwaSpectrum),
                job("fig4c.csv", preset("fig4-red"), sweep(vec![TacS, TacRwaS])),
                job("fig4d.csv", preset("fig4-blue"), sweep(vec![TacS, TacRwaS])),
                job("fig4e.csv", preset("fig4-red"), sweep(vec![TacAs, TacRwaAs])),
                job("fig4f.csv", preset("fig4-blue"), sweep(vec![TacAs, TacRwaAs])),
            ]
        }
        Figure::Fig5 => [1.0, 2.0, 3.0]
            .iter()
            .flat_map(|&g| {
                [
                    job(&format!("fig5_red_g{g}.csv"), with_g_a("fig5-red", g), Panel::Spectrum),
                    job(&format!("fig5_blue_g{g}.csv"), with_g_a("fig5-blue", g), Panel::Spectrum),
                ]
            })
            .collect(),
        Figure::Fig6 => {
            let g = AxisSpec::linear(GA, 0.0, 1.5, 301);
            let k = AxisSpec::log(KappaA, 0.5, 50.0, 301);
            let red = vec![TacAs, NaddAs];
            let blue = vec![TacS, NaddS];
            vec![
                job("fig6a.csv", preset("fig6-red"), Panel::Sweep { axis: g, metrics: red.clone() }),
                job("fig6b.csv", preset("fig6-red"), Panel::Sweep { axis: k, metrics: red }),
                job("fig6c.csv", preset("fig6-blue"), Panel::Sweep { axis: g, metrics: blue.clone() }),
                job("fig6d.csv", preset("fig6-blue"), Panel::Sweep { axis: k, metrics: blue }),
            ]
        }
    }
}

fn run_job(job: &Job, out: &Path) -> Result<Status> {
    let p = &job.params;
    let (table, status) = match &job.panel {
        Panel::Map { x, y } => commands::stability_map(p, x, y)?,
        Panel::Spectrum => commands::spectrum(p, &FreqGrid::around(p.omega_b.value()))?,
        Panel::RwaSpectrum => {
            (commands::rwa_spectrum(p, &FreqGrid::around(p.omega_b.value()))?, Status::Complete)
        }
        Panel::Sweep { axis, metrics } => commands::sweep(p, &[*axis], metrics)?,
    };
    commands::write_table(&table, out, p)?;
    Ok(status)
}

/// Writes every panel of `fig` into `dir`. Returns the files written and
/// [`Status::Partial`] if any panel failed or was incomplete.
pub fn reproduce(fig: Figure, dir: &Path) -> Result<(Vec<PathBuf>, Status)> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    let mut status = Status::Complete;
    for job in jobs(fig) {
        let out = dir.join(&job.file);
        match run_job(&job, &out) {
            Ok(Status::Complete) => written.push(out),
            Ok(_) => {
                eprintln!("warning: {} is incomplete", job.file);
                written.push(out);
                status = Status::Partial;
            }
            Err(e @ (CliError::Io { .. } | CliError::Csv { .. })) => return Err(e),
            Err(e) => {
                eprintln!("warning: {}: {e}", job.file);
                status = Status::Partial;
            }
        }
    }
    Ok((written, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_files() {
        let names = |f| jobs(f).into_iter().map(|j| j.file).collect::<Vec<_>>();
        assert_eq!(names(Figure::Fig2), ["fig2a.csv", "fig2b.csv"]);
        assert_eq!(names(Figure::Fig4).len(), 8);
        assert_eq!(names(Figure::Fig5)[0], "fig5_red_g1.csv");
        assert_eq!(names(Figure::Fig6), ["fig6a.csv", "fig6b.csv", "fig6c.csv", "fig6d.csv"]);
    }
}
