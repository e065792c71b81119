//! Dense complex linear algebra for the fixed 3×3 and 6×6 systems.
//!
//! Sizes are compile-time constants, so everything lives on the stack.

use core::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major `N × N` complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize>(pub [[C64; N]; N]);

impl<const N: usize> CMatrix<N> {
    pub const fn zeros() -> Self {
        CMatrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_real_diag(d: &[f64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = C64::new(d[k], 0.0);
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[c][r] = self.0[r][c];
            }
        }
        m
    }

    /// `self + s·I`
    pub fn shifted(&self, s: C64) -> Self {
        let mut m = *self;
        for k in 0..N {
            m.0[k][k] += s;
        }
        m
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..N)
            .map(|c| (0..N).map(|r| self.0[r][c].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn lu(&self) -> Option<Lu<N>> {
        Lu::factor(self)
    }

    /// Eigenvalues in no particular order.
    pub fn eigenvalues(&self) -> Result<[C64; N]> {
        eigenvalues(self)
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for r in 0..N {
            for k in 0..N {
                let a = self.0[r][k];
                if a == ZERO {
                    continue;
                }
                for c in 0..N {
                    out.0[r][c] += a * rhs.0[k][c];
                }
            }
        }
        out
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..N {
            for c in 0..N {
                self.0[r][c] -= rhs.0[r][c];
            }
        }
        self
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Copy, Debug)]
pub struct Lu<const N: usize> {
    lu: [[C64; N]; N],
    perm: [usize; N],
    swaps: usize,
}

impl<const N: usize> Lu<N> {
    /// Returns `None` when an exact zero pivot is met.
    pub fn factor(a: &CMatrix<N>) -> Option<Self> {
        let mut lu = a.0;
        let mut perm = [0usize; N];
        for (k, p) in perm.iter_mut().enumerate() {
            *p = k;
        }
        let mut swaps = 0;
        for k in 0..N {
            let (piv, piv_abs) = (k..N)
                .map(|r| (r, lu[r][k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if piv_abs == 0.0 || !piv_abs.is_finite() {
                return None;
            }
            if piv != k {
                lu.swap(piv, k);
                perm.swap(piv, k);
                swaps += 1;
            }
            let inv = ONE / lu[k][k];
            for r in (k + 1)..N {
                let f = lu[r][k] * inv;
                lu[r][k] = f;
                if f == ZERO {
                    continue;
                }
                for c in (k + 1)..N {
                    let t = lu[k][c];
                    lu[r][c] -= f * t;
                }
            }
        }
        Some(Self { lu, perm, swaps })
    }

    pub fn solve_vec(&self, b: &[C64; N]) -> [C64; N] {
        let mut x = [ZERO; N];
        for r in 0..N {
            x[r] = b[self.perm[r]];
        }
        for r in 0..N {
            for c in 0..r {
                let t = x[c];
                x[r] -= self.lu[r][c] * t;
            }
        }
        for r in (0..N).rev() {
            for c in (r + 1)..N {
                let t = x[c];
                x[r] -= self.lu[r][c] * t;
            }
            x[r] /= self.lu[r][r];
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &CMatrix<N>) -> CMatrix<N> {
        let mut out = CMatrix::zeros();
        for c in 0..N {
            let mut col = [ZERO; N];
            for r in 0..N {
                col[r] = b.0[r][c];
            }
            let x = self.solve_vec(&col);
            for r in 0..N {
                out.0[r][c] = x[r];
            }
        }
        out
    }

    pub fn determinant(&self) -> C64 {
        let d: C64 = (0..N).map(|k| self.lu[k][k]).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// Solves `A X = diag(d)` for a positive diagonal right-hand side and returns
/// `X` with the 1-norm condition number of `A`.
///
/// Since `X = A⁻¹ diag(d)`, column `j` of `A⁻¹` is column `j` of `X` divided
/// by `d[j]`, so the condition number comes without a separate inversion.
pub(crate) fn solve_diag_rhs<const N: usize>(a: &CMatrix<N>, d: &[f64; N]) -> Option<(CMatrix<N>, f64)> {
    let lu = a.lu()?;
    let x = lu.solve(&CMatrix::from_real_diag(d));
    let inv_norm = (0..N)
        .map(|c| (0..N).map(|r| x.0[r][c].norm()).sum::<f64>() / d[c])
        .fold(0.0, f64::max);
    Some((x, a.norm1() * inv_norm))
}

const EIG_MAX_SWEEPS: usize = 60;

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg<const N: usize>(h: &mut [[C64; N]; N]) {
    if N < 3 {
        return;
    }
    for k in 0..N - 2 {
        let alpha_sq: f64 = ((k + 1)..N).map(|r| h[r][k].norm_sqr()).sum();
        let tail_sq: f64 = ((k + 2)..N).map(|r| h[r][k].norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }
        let alpha = libm::sqrt(alpha_sq);
        let x0 = h[k + 1][k];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        // v = x + phase·‖x‖·e₁, reflector H = I − 2 v v^H / (v^H v)
        let mut v = [ZERO; N];
        v[k + 1] = x0 + phase * alpha;
        for r in (k + 2)..N {
            v[r] = h[r][k];
        }
        let vnorm_sq: f64 = ((k + 1)..N).map(|r| v[r].norm_sqr()).sum();
        let beta = 2.0 / vnorm_sq;
        // H ← (I − β v v^H) H
        for c in 0..N {
            let s: C64 = ((k + 1)..N).map(|r| v[r].conj() * h[r][c]).sum();
            let s = s * beta;
            for r in (k + 1)..N {
                h[r][c] -= v[r] * s;
            }
        }
        // H ← H (I − β v v^H)
        for r in 0..N {
            let s: C64 = ((k + 1)..N).map(|c| h[r][c] * v[c]).sum();
            let s = s * beta;
            for c in (k + 1)..N {
                h[r][c] -= s * v[c].conj();
            }
        }
        for r in (k + 2)..N {
            h[r][k] = ZERO;
        }
    }
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Shifted QR iteration on the Hessenberg form with Givens rotations.
fn eigenvalues<const N: usize>(m: &CMatrix<N>) -> Result<[C64; N]> {
    let mut eig = [ZERO; N];
    if N == 0 {
        return Ok(eig);
    }
    if !m.is_finite() {
        return Err(Error::EigensolverFailure);
    }
    let mut h = m.0;
    hessenberg(&mut h);
    let scale = m.max_abs();
    let mut hi = N - 1;
    let mut iter = 0usize;
    let mut rot = [(0.0f64, ZERO); N];
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[lo][lo - 1].norm() <= f64::EPSILON * s {
                h[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > EIG_MAX_SWEEPS {
            return Err(Error::EigensolverFailure);
        }
        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[hi][hi] + C64::new(h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in lo..=hi {
            h[k][k] -= mu;
        }
        // H − μI = Q R
        for k in lo..hi {
            let a = h[k][k];
            let b = h[k + 1][k];
            let r = libm::hypot(a.norm(), b.norm());
            let (c, s) = if r == 0.0 {
                (1.0, ZERO)
            } else if a == ZERO {
                (0.0, ONE)
            } else {
                let an = a.norm();
                (an / r, (a / an) * b.conj() / r)
            };
            rot[k] = (c, s);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
        }
        // R Q + μI
        for k in lo..hi {
            let (c, s) = rot[k];
            for i in lo..=(k + 1).min(hi) {
                let x = h[i][k];
                let y = h[i][k + 1];
                h[i][k] = x * c + y * s.conj();
                h[i][k + 1] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[k][k] += mu;
        }
    }
    eig[0] = h[0][0];
    Ok(eig)
}
