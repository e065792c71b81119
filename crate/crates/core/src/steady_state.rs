//! Mean-field steady state for a physically specified pump.
//!
//! The three coupled mean-field equations collapse onto one real unknown,
//! the vibrational displacement `β = ⟨B⟩ + ⟨B⟩*`:
//!
//! ```text
//! |⟨a⟩|²     = ε²/(Δ² + κa²),          Δ = Δ0 + Ga β
//! ⟨c⟩ + c.c. = −2 Gc ωc β/(ωc² + κc²)
//! β          = −2 ωb [Ga |⟨a⟩|² + Gc (⟨c⟩ + c.c.)]/(ωb² + γB²)
//! ```
//!
//! Clearing the Lorentzian denominator gives the cubic
//! `k β ((Δ0 + Ga β)² + κa²) + c0 = 0` with
//! `k = 1 − 4 ωb ωc Gc²/((ωb² + γB²)(ωc² + κc²))` and
//! `c0 = 2 ωb Ga ε²/(ωb² + γB²)`. Its real roots are the mean-field branches.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{C64, I};
use crate::params::{DriveSpec, Freq, SystemParams};

const CONTINUATION_STEPS: usize = 256;
const BISECTION_MAX_ITER: usize = 400;

/// One self-consistent mean-field solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanField {
    pub a: C64,
    pub c: C64,
    pub b: C64,
    /// `⟨B⟩ + ⟨B⟩*` as found by the root finder.
    pub beta: f64,
    pub delta_eff: Freq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteadyStateSolution {
    branches: Vec<MeanField>,
    selected: usize,
    g_a: f64,
}

impl SteadyStateSolution {
    pub fn branches(&self) -> &[MeanField] {
        &self.branches
    }

    pub fn selected(&self) -> usize {
        self.selected
    }

    pub fn selected_branch(&self) -> &MeanField {
        &self.branches[self.selected]
    }

    pub fn a_ss(&self) -> C64 {
        self.selected_branch().a
    }

    pub fn c_ss(&self) -> C64 {
        self.selected_branch().c
    }

    pub fn b_ss(&self) -> C64 {
        self.selected_branch().b
    }

    pub fn delta_eff(&self) -> Freq {
        self.selected_branch().delta_eff
    }

    /// `𝒢ₐ = Gₐ ⟨a⟩`
    pub fn g_a_enh(&self) -> C64 {
        self.a_ss() * self.g_a
    }

    /// More than one real branch coexists.
    pub fn is_multistable(&self) -> bool {
        self.branches.len() > 1
    }

    /// A cubic generically has one or three real roots; anything else means
    /// the parameters sit on a fold.
    pub fn has_generic_branch_count(&self) -> bool {
        matches!(self.branches.len(), 1 | 3)
    }
}

/// `𝒢ₐ = Gₐ ⟨a⟩` for the selected branch.
pub fn enhanced_coupling(sol: &SteadyStateSolution, p: &SystemParams) -> C64 {
    sol.a_ss() * p.collective_g_a().map_or(0.0, Freq::value)
}

#[derive(Clone, Copy, Debug)]
struct Reduced {
    delta0: f64,
    g_a: f64,
    g_c: f64,
    eps: f64,
    omega_b: f64,
    omega_c: f64,
    kappa_a: f64,
    kappa_c: f64,
    gamma_b: f64,
    k: f64,
}

impl Reduced {
    fn new(p: &SystemParams) -> Result<Self> {
        let DriveSpec::Physical { delta0, eps_p, .. } = p.drive else {
            return Err(Error::WrongDrive("physical"));
        };
        let g_a = p.collective_g_a().map_or(0.0, Freq::value);
        let g_c = p.collective_g_c().value();
        let (wb, wc) = (p.omega_b.value(), p.omega_c.value());
        let (kc, gb) = (p.kappa_c.value(), p.gamma_b.value());
        let k = 1.0 - 4.0 * wb * wc * g_c * g_c / ((wb * wb + gb * gb) * (wc * wc + kc * kc));
        Ok(Self {
            delta0: delta0.value(),
            g_a,
            g_c,
            eps: eps_p.value(),
            omega_b: wb,
            omega_c: wc,
            kappa_a: p.kappa_a.value(),
            kappa_c: kc,
            gamma_b: gb,
            k,
        })
    }

    fn c0(&self, eps: f64) -> f64 {
        let wb = self.omega_b;
        2.0 * wb * self.g_a * eps * eps / (wb * wb + self.gamma_b * self.gamma_b)
    }

    fn cubic(&self, beta: f64, c0: f64) -> f64 {
        let d = self.delta0 + self.g_a * beta;
        self.k * beta * (d * d + self.kappa_a * self.kappa_a) + c0
    }

    /// All real roots of the cubic at pump amplitude `eps`, ascending.
    fn real_roots(&self, eps: f64) -> Result<Vec<f64>> {
        let c0 = self.c0(eps);
        if c0 == 0.0 {
            // β q(β) = 0 with q ≥ κa² > 0
            return Ok(alloc::vec![0.0]);
        }
        if self.k == 0.0 {
            return Err(Error::NoConvergence);
        }
        // at a root |k β| q(β) = |c0| and q ≥ κa²
        let bound = c0.abs() / (self.k.abs() * self.kappa_a * self.kappa_a);
        let bound = bound * (1.0 + 1e-9) + f64::MIN_POSITIVE;

        let mut cuts: Vec<f64> = alloc::vec![-bound];
        // critical points of the cubic: 3Ga²β² + 4Δ0Gaβ + Δ0² + κa² = 0
        let disc = self.delta0 * self.delta0 - 3.0 * self.kappa_a * self.kappa_a;
        if disc > 0.0 {
            let sq = libm::sqrt(disc);
            for beta in [(-2.0 * self.delta0 - sq) / (3.0 * self.g_a), (-2.0 * self.delta0 + sq) / (3.0 * self.g_a)] {
                if beta > -bound && beta < bound {
                    cuts.push(beta);
                }
            }
        }
        cuts.push(bound);
        cuts.sort_by(f64::total_cmp);

        let mut roots: Vec<f64> = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (self.cubic(lo, c0), self.cubic(hi, c0));
            if flo == 0.0 {
                roots.push(lo);
            } else if fhi != 0.0 && (flo < 0.0) != (fhi < 0.0) {
                roots.push(self.bisect(lo, hi, flo, c0));
            }
        }
        if let Some(&last) = cuts.last() {
            if self.cubic(last, c0) == 0.0 {
                roots.push(last);
            }
        }
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
        if roots.is_empty() {
            return Err(Error::NoConvergence);
        }
        Ok(roots)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut flo: f64, c0: f64) -> f64 {
        for _ in 0..BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.cubic(mid, c0);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn mean_field(&self, beta: f64) -> MeanField {
        let delta = self.delta0 + self.g_a * beta;
        let a = C64::new(self.eps, 0.0) / (I * delta + self.kappa_a);
        let c = -I * (self.g_c * beta) / (I * self.omega_c + self.kappa_c);
        let x = self.g_a * a.norm_sqr() + self.g_c * 2.0 * c.re;
        let b = -I * x / (I * self.omega_b + self.gamma_b);
        MeanField { a, c, b, beta, delta_eff: Freq::thz(delta) }
    }
}

fn nearest(roots: &[f64], target: f64) -> usize {
    roots
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - target).abs().total_cmp(&(y.1 - target).abs()))
        .map_or(0, |(k, _)| k)
}

/// Solves the mean-field equations for a physical drive.
///
/// Every real branch is returned. The selected branch is the one reached by
/// ramping the pump amplitude up from zero, where the only solution is the
/// undisplaced one.
pub fn solve_steady_state(p: &SystemParams) -> Result<SteadyStateSolution> {
    p.validate()?;
    let red = Reduced::new(p)?;
    let roots = red.real_roots(red.eps)?;
    let selected = if roots.len() == 1 {
        0
    } else {
        let mut beta = 0.0;
        for step in 1..=CONTINUATION_STEPS {
            let eps = red.eps * step as f64 / CONTINUATION_STEPS as f64;
            let here = red.real_roots(eps)?;
            beta = here[nearest(&here, beta)];
        }
        nearest(&roots, beta)
    };
    Ok(SteadyStateSolution {
        branches: roots.iter().map(|&b| red.mean_field(b)).collect(),
        selected,
        g_a: red.g_a,
    })
}

fn rel(lhs: C64, rhs: C64) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

impl MeanField {
    /// Largest relative residual over the three mean-field equations,
    /// evaluated from `(⟨a⟩, ⟨c⟩, ⟨B⟩)` alone.
    pub fn residual(&self, p: &SystemParams) -> f64 {
        let DriveSpec::Physical { delta0, eps_p, .. } = p.drive else {
            return f64::INFINITY;
        };
        let g_a = p.collective_g_a().map_or(0.0, Freq::value);
        let g_c = p.collective_g_c().value();
        let b_sum = 2.0 * self.b.re;
        let delta = delta0.value() + g_a * b_sum;
        let r1 = rel(self.a * (I * delta + p.kappa_a.value()), C64::new(eps_p.value(), 0.0));
        let r2 = rel(self.c * (I * p.omega_c.value() + p.kappa_c.value()), -I * g_c * b_sum);
        let x = g_a * self.a.norm_sqr() + g_c * 2.0 * self.c.re;
        let r3 = rel(self.b * (I * p.omega_b.value() + p.gamma_b.value()), -I * x);
        let r4 = rel(C64::new(self.delta_eff.value(), 0.0), C64::new(delta, 0.0));
        r1.max(r2).max(r3).max(r4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn physical(delta0: f64, g_a: f64, eps: f64) -> SystemParams {
        SystemParams {
            omega_b: Freq::thz(30.0),
            omega_c: Freq::thz(30.0),
            kappa_a: Freq::thz(30.0),
            kappa_c: Freq::thz(0.5),
            gamma_b: Freq::thz(0.1),
            g_c: Freq::thz(1e-4),
            n_molecules: 10_000_000,
            drive: DriveSpec::Physical {
                delta0: Freq::thz(delta0),
                g_a: Freq::thz(g_a),
                eps_p: Freq::thz(eps),
            },
        }
    }

    #[test]
    fn undriven_system_is_at_rest() {
        let p = physical(30.0, 1e-6, 0.0);
        let sol = solve_steady_state(&p).unwrap();
        assert_eq!(sol.branches().len(), 1);
        assert_eq!(sol.a_ss(), C64::new(0.0, 0.0));
        assert_eq!(sol.b_ss(), C64::new(0.0, 0.0));
        assert_eq!(sol.c_ss(), C64::new(0.0, 0.0));
        assert_eq!(sol.delta_eff(), Freq::thz(30.0));
    }

    #[test]
    fn zero_optomechanical_coupling_decouples() {
        let p = physical(12.0, 0.0, 500.0);
        let sol = solve_steady_state(&p).unwrap();
        let expect = C64::new(500.0, 0.0) / C64::new(30.0, 12.0);
        assert!((sol.a_ss() - expect).norm() < 1e-14 * expect.norm());
        assert_eq!(sol.b_ss(), C64::new(0.0, 0.0));
        assert_eq!(sol.c_ss(), C64::new(0.0, 0.0));
        assert_eq!(sol.delta_eff(), Freq::thz(12.0));
        assert_eq!(sol.g_a_enh(), C64::new(0.0, 0.0));
    }

    #[test]
    fn weak_coupling_photon_number() {
        // ε²/(Δ0² + κa²) = 500²/1800
        let p = physical(30.0, 1e-12, 500.0);
        let sol = solve_steady_state(&p).unwrap();
        let n = sol.a_ss().norm_sqr();
        assert!((n - 138.888_888_888_888_9).abs() < 1e-6, "{n}");
    }

    #[test]
    fn wrong_drive_is_rejected() {
        let mut p = physical(30.0, 1.0, 1.0);
        p.drive = DriveSpec::Direct { delta: Freq::thz(1.0), g_a_enh: C64::new(1.0, 0.0) };
        assert_eq!(solve_steady_state(&p).unwrap_err(), Error::WrongDrive("physical"));
    }

    #[test]
    fn enhanced_coupling_definition() {
        let p = physical(30.0, 1e-5, 500.0);
        let sol = solve_steady_state(&p).unwrap();
        let g_a = p.collective_g_a().unwrap().value();
        assert_eq!(enhanced_coupling(&sol, &p), sol.a_ss() * g_a);
        assert_eq!(sol.g_a_enh(), sol.a_ss() * g_a);
    }

    #[test]
    fn bistable_regime_has_three_branches() {
        // Δ0² > 3κa² and a strong pump on the blue side of the shifted resonance
        let mut p = physical(120.0, 0.01, 100.0);
        p.kappa_a = Freq::thz(5.0);
        p.n_molecules = 1_000_000;
        let sol = solve_steady_state(&p).unwrap();
        assert!(sol.has_generic_branch_count());
        assert_eq!(sol.branches().len(), 3, "{:?}", sol.branches());
        assert!(sol.is_multistable());
        for br in sol.branches() {
            assert!(br.residual(&p) < 1e-10, "residual {}", br.residual(&p));
        }
        // the ramp from zero stays on the weakly displaced branch
        let smallest = sol.branches().iter().map(|b| b.beta.abs()).fold(f64::MAX, f64::min);
        assert_eq!(sol.selected_branch().beta.abs(), smallest);
    }
}
