//! Floating-point moment maps, the patchworking gap `Ψ_t − ψ_λ`, and
//! hypersurface sampling for amoeba pictures.
//!
//! All weights are handled as logarithms with the maximum subtracted
//! before exponentiating, since `|t|^λ` spans many orders of magnitude.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{self, Q};
use crate::error::{Error, Result};
use crate::lattice_core::PointConfiguration;
use crate::triangulation::{characteristic_eval, CentralTriangulation, LiftVector};

/// Slack allowed on facet inequalities for floating moment images.
pub const GEOM_TOL: f64 = 1e-9;
/// Relative step size at which simultaneous root iteration stops.
pub const ROOT_TOL: f64 = 1e-12;
pub const ROOT_MAX_ITER: usize = 200;

/// The family parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyPoint {
    pub modulus: f64,
    pub phase: f64,
}

impl FamilyPoint {
    pub fn new(modulus: f64, phase: f64) -> Result<Self> {
        if !(modulus.is_finite() && modulus > 0.0 && phase.is_finite()) {
            return Err(Error::domain(format!("|t| must be positive and finite, got {modulus}")));
        }
        Ok(FamilyPoint { modulus, phase })
    }

    pub fn real(modulus: f64) -> Result<Self> {
        Self::new(modulus, 0.0)
    }

    pub fn log_modulus(&self) -> f64 {
        self.modulus.ln()
    }

    /// `t^k` on the branch `|t|^k e^{ik·arg t}`.
    pub fn pow(&self, k: i64) -> Complex64 {
        Complex64::from_polar(self.modulus.powi(k as i32), self.phase * k as f64)
    }
}

/// Which coordinates a [`TorusPoint`] is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `x_1, …, x_N` with `x^ω = Π x_i^{ω_i}` for `ω` relative to the origin.
    Global,
    /// τ-associated coordinates `y_i = x^{ω_i − Ω}`; point indices of the chart basis.
    Tau(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    pub log_radii: Vec<f64>,
    pub phases: Vec<f64>,
    pub chart: Chart,
}

impl TorusPoint {
    pub fn global(log_radii: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        if log_radii.len() != phases.len() {
            return Err(Error::domain("radius and phase counts differ"));
        }
        if log_radii.iter().chain(&phases).any(|x| !x.is_finite()) {
            return Err(Error::domain("torus point has a non-finite coordinate"));
        }
        let phases = phases.into_iter().map(|p| p.rem_euclid(TAU)).collect();
        Ok(TorusPoint {
            log_radii,
            phases,
            chart: Chart::Global,
        })
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint {
            log_radii: vec![0.0; n],
            phases: vec![0.0; n],
            chart: Chart::Global,
        }
    }

    pub fn dim(&self) -> usize {
        self.log_radii.len()
    }
}

/// Exponents, image points and lift values of a configuration, in floats.
#[derive(Clone, Debug)]
pub struct MomentModel {
    /// `ω − {0}`.
    pub exponents: Vec<Vec<i64>>,
    /// `ω` itself, the image point of the monomial.
    pub points: Vec<Vec<f64>>,
    pub lambda: Vec<f64>,
    pub dim: usize,
}

impl MomentModel {
    pub fn new(cfg: &PointConfiguration, lambda: &LiftVector) -> Result<Self> {
        if lambda.values.len() != cfg.len() {
            return Err(Error::domain("lift vector length does not match the point set"));
        }
        Ok(MomentModel {
            exponents: (0..cfg.len()).map(|i| cfg.rel(i)).collect(),
            points: (0..cfg.len()).map(|i| arith::to_f64_vec(&cfg.point_q(i))).collect(),
            lambda: lambda.values.iter().map(|&v| v as f64).collect(),
            dim: cfg.dim(),
        })
    }

    /// `λ(ω) log|t| + ⟨u, ω − 0⟩` per point.
    pub fn log_weights(&self, u: &[f64], log_t: f64) -> Vec<f64> {
        self.exponents
            .iter()
            .zip(&self.lambda)
            .map(|(e, l)| l * log_t + e.iter().zip(u).map(|(&a, b)| a as f64 * b).sum::<f64>())
            .collect()
    }

    pub fn average(&self, w: &[f64]) -> Vec<f64> {
        let mut m = vec![0.0; self.dim];
        for (wi, p) in w.iter().zip(&self.points) {
            for (mj, pj) in m.iter_mut().zip(p) {
                *mj += wi * pj;
            }
        }
        m
    }
}

/// Normalized weights `e^{l_i − max} / Σ`.
pub fn softmax(logw: &[f64]) -> Result<Vec<f64>> {
    let max = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return Err(Error::numerical("moment weights are not finite"));
    }
    let e: Vec<f64> = logw.iter().map(|l| (l - max).exp()).collect();
    let s: f64 = e.iter().sum();
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::numerical("moment weights underflow"));
    }
    Ok(e.into_iter().map(|x| x / s).collect())
}

/// `μ_t(x) = Σ |t^{λ(ω)}||x^ω| ω / Σ |t^{λ(ω)}||x^ω|`.
pub fn weighted_moment(model: &MomentModel, x: &TorusPoint, t: &FamilyPoint) -> Result<Vec<f64>> {
    if x.dim() != model.dim {
        return Err(Error::domain("torus point dimension mismatch"));
    }
    if x.chart != Chart::Global {
        return Err(Error::domain("weighted_moment expects global coordinates"));
    }
    let w = softmax(&model.log_weights(&x.log_radii, t.log_modulus()))?;
    Ok(model.average(&w))
}

/// Log-radii `u` with `μ_t(e^u) = m`, by damped Newton on the convex
/// function `log Σ e^{λ log|t| + ⟨u,ω⟩} − ⟨u, m⟩`.
pub fn moment_inverse(model: &MomentModel, m: &[f64], log_t: f64) -> Result<Vec<f64>> {
    moment_inverse_from(model, m, log_t, &vec![0.0; model.dim])
}

/// [`moment_inverse`] started from `u0`.
pub fn moment_inverse_from(model: &MomentModel, m: &[f64], log_t: f64, u0: &[f64]) -> Result<Vec<f64>> {
    let n = model.dim;
    let objective = |u: &[f64]| -> f64 {
        let l = model.log_weights(u, log_t);
        let max = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        max + l.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
            - u.iter().zip(m).map(|(a, b)| a * b).sum::<f64>()
    };
    let mut u = u0.to_vec();
    for _ in 0..500 {
        let w = softmax(&model.log_weights(&u, log_t))?;
        let mean = model.average(&w);
        let grad = DVector::from_iterator(n, mean.iter().zip(m).map(|(a, b)| a - b));
        if grad.amax() < 1e-12 {
            return Ok(u);
        }
        let mut hess = DMatrix::<f64>::zeros(n, n);
        for (wi, p) in w.iter().zip(&model.points) {
            for a in 0..n {
                for b in 0..n {
                    hess[(a, b)] += wi * (p[a] - mean[a]) * (p[b] - mean[b]);
                }
            }
        }
        for a in 0..n {
            hess[(a, a)] += 1e-14;
        }
        let step = match hess.clone().cholesky() {
            Some(c) => c.solve(&grad),
            None => grad.clone(),
        };
        let f0 = objective(&u);
        let slope = grad.dot(&step);
        if slope < 1e-10 {
            // inside the quadratic region; line search is below rounding
            for (a, s) in u.iter_mut().zip(step.iter()) {
                *a -= s;
            }
            continue;
        }
        let mut alpha = 1.0;
        loop {
            let trial: Vec<f64> = u.iter().zip(step.iter()).map(|(a, s)| a - alpha * s).collect();
            if objective(&trial) <= f0 - 1e-4 * alpha * slope || alpha < 1e-12 {
                u = trial;
                break;
            }
            alpha *= 0.5;
        }
    }
    Err(Error::numerical(format!(
        "moment inverse did not converge at ({})",
        m.iter().map(|x| arith::fmt_f64(*x)).collect::<Vec<_>>().join(",")
    )))
}

/// `Ψ_t(m)`: the height of the `μ^{(P)}` image over `m`, i.e. the
/// weighted average of λ at the torus point with `μ_t = m`.
pub fn psi_t(model: &MomentModel, m: &[f64], log_t: f64) -> Result<f64> {
    let u = moment_inverse(model, m, log_t)?;
    let w = softmax(&model.log_weights(&u, log_t))?;
    Ok(w.iter().zip(&model.lambda).map(|(a, b)| a * b).sum())
}

/// Sample points `θ·O(τ)` for every simplex τ of `∂T`, `θ ∈ {0, 1/10, …, 9/10}`.
pub fn default_gap_grid(t: &CentralTriangulation) -> Vec<Vec<Q>> {
    let cfg = t.config();
    let mut grid = vec![cfg.point_q(cfg.origin_index)];
    for tau in t.boundary().simplices() {
        let c = crate::base_complex::center(cfg, tau);
        for k in 1..10 {
            let theta = arith::qr(k, 10);
            grid.push(c.iter().map(|x| x * &theta).collect());
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

/// `max |Ψ_t − ψ_λ|` over the grid. The log-sum-exp envelope gives
/// `0 ≤ ψ_λ − Ψ_t ≤ log|A| / log|t|`.
pub fn psi_t_gap(
    t: &CentralTriangulation,
    lambda: &LiftVector,
    family: &FamilyPoint,
    grid: &[Vec<Q>],
) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::domain("sample grid is empty"));
    }
    let model = MomentModel::new(t.config(), lambda)?;
    let log_t = family.log_modulus();
    let gaps: Vec<Result<f64>> = grid
        .par_iter()
        .map(|m| {
            let psi = arith::to_f64(&characteristic_eval(t, lambda, m)?);
            let big = psi_t(&model, &arith::to_f64_vec(m), log_t)?;
            Ok((big - psi).abs())
        })
        .collect();
    gaps.into_iter()
        .try_fold(0.0f64, |acc, g| g.map(|g| acc.max(g)))
}

/// A Laurent polynomial `Σ c_ω x^ω` in global coordinates.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    pub terms: Vec<(Vec<i64>, Complex64)>,
    pub dim: usize,
}

impl Hypersurface {
    /// `t^{λ(0)} − Σ_{ω ∈ A ∩ ∂Δ} t^{λ(ω)} x^ω`.
    pub fn family(cfg: &PointConfiguration, lambda: &LiftVector, t: &FamilyPoint) -> Self {
        let terms = (0..cfg.len())
            .map(|i| {
                let c = t.pow(lambda.values[i]);
                (cfg.rel(i), if i == cfg.origin_index { c } else { -c })
            })
            .collect();
        Hypersurface {
            terms,
            dim: cfg.dim(),
        }
    }

    pub fn eval(&self, x: &TorusPoint) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * monomial(e, &x.log_radii, &x.phases))
            .sum()
    }

    /// Coefficients, lowest degree first, of the polynomial in the last
    /// variable obtained by fixing the others, scaled to max modulus 1,
    /// together with the lowest exponent.
    fn last_variable_polynomial(&self, log_r: &[f64], phases: &[f64]) -> (Vec<Complex64>, i64) {
        let n = self.dim;
        let lo = self.terms.iter().map(|(e, _)| e[n - 1]).min().unwrap_or(0);
        let hi = self.terms.iter().map(|(e, _)| e[n - 1]).max().unwrap_or(0);
        let deg = (hi - lo) as usize;
        // log modulus and phase per term, then shift by the overall maximum
        let parts: Vec<(usize, f64, f64)> = self
            .terms
            .iter()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(e, c)| {
                let lr: f64 = c.norm().ln() + (0..n - 1).map(|i| e[i] as f64 * log_r[i]).sum::<f64>();
                let ph: f64 = c.arg() + (0..n - 1).map(|i| e[i] as f64 * phases[i]).sum::<f64>();
                ((e[n - 1] - lo) as usize, lr, ph)
            })
            .collect();
        let max = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (k, lr, ph) in parts {
            coeffs[k] += Complex64::from_polar((lr - max).exp(), ph);
        }
        (coeffs, lo)
    }
}

fn monomial(e: &[i64], log_r: &[f64], phases: &[f64]) -> Complex64 {
    let lr: f64 = e.iter().zip(log_r).map(|(&a, b)| a as f64 * b).sum();
    let ph: f64 = e.iter().zip(phases).map(|(&a, b)| a as f64 * b).sum();
    Complex64::from_polar(lr.exp(), ph)
}

#[derive(Clone, Debug)]
pub struct Roots {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    pub converged: bool,
    pub iterations: usize,
}

/// All roots of `Σ c_k z^k` at once by Aberth iteration, started from the
/// Newton polygon radii. Zero roots are removed first.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Roots {
    let lo = coeffs.iter().position(|c| c.norm() > 0.0);
    let hi = coeffs.iter().rposition(|c| c.norm() > 0.0);
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Roots {
            roots: Vec::new(),
            converged: false,
            iterations: 0,
        };
    };
    let c = &coeffs[lo..=hi];
    let deg = c.len() - 1;
    if deg == 0 {
        return Roots {
            roots: Vec::new(),
            converged: true,
            iterations: 0,
        };
    }
    let mut z = initial_guesses(c);
    let dc: Vec<Complex64> = (1..=deg).map(|k| c[k] * k as f64).collect();
    let horner = |p: &[Complex64], x: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < ROOT_MAX_ITER {
        iterations += 1;
        let mut max_rel = 0.0f64;
        for i in 0..deg {
            let p = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[i]);
            let s: Complex64 = (0..deg).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_rel = max_rel.max(step.norm() / z[i].norm().max(f64::MIN_POSITIVE));
        }
        if max_rel <= ROOT_TOL {
            converged = true;
            break;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Roots {
        roots: z,
        converged,
        iterations,
    }
}

/// Starting points on circles whose radii come from the upper hull of
/// `(k, log|c_k|)`, with phases offset so no two guesses coincide.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| (k, a.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as f64 * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(deg);
    for (seg, w) in hull.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let count = b.0 - a.0;
        let r = ((a.1 - b.1) / count as f64).exp();
        for j in 0..count {
            let angle = TAU * j as f64 / count as f64 + 0.4 + 0.7 * seg as f64;
            z.push(Complex64::from_polar(r, angle));
        }
    }
    z
}

/// Resolution of the free-coordinate grid: phases × log-radii per coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleGrid {
    pub phases: usize,
    pub radii: usize,
}

impl SampleGrid {
    pub fn square(n: usize) -> Self {
        SampleGrid { phases: n, radii: n }
    }
}

#[derive(Clone, Debug)]
pub struct AmoebaSample {
    pub points: Vec<(Vec<f64>, TorusPoint)>,
    pub t: FamilyPoint,
    /// Grid cells whose root iteration hit the iteration cap.
    pub unconverged: usize,
}

/// Log-radius half-width `L = 3 + log|t|·max|λ|`.
pub fn log_radius_bound(lambda: &LiftVector, t: &FamilyPoint) -> f64 {
    let max = lambda.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64;
    3.0 + t.log_modulus().abs() * max
}

/// Points of `F_t`, obtained by fixing `x_1, …, x_{N−1}` on a grid and
/// solving for `x_N`, together with their weighted moment images.
pub fn hypersurface_sample(
    cfg: &PointConfiguration,
    lambda: &LiftVector,
    t: &FamilyPoint,
    grid: SampleGrid,
) -> Result<AmoebaSample> {
    let n = cfg.dim();
    if grid.phases == 0 || grid.radii == 0 {
        return Err(Error::domain("sample grid is empty"));
    }
    let cells = (grid.phases * grid.radii)
        .checked_pow((n - 1) as u32)
        .filter(|&c| c <= 50_000_000)
        .ok_or_else(|| Error::Resource("sample grid too large".into()))?;
    let model = MomentModel::new(cfg, lambda)?;
    let eq = Hypersurface::family(cfg, lambda, t);
    let l = log_radius_bound(lambda, t);
    let per = grid.phases * grid.radii;
    let coord = |k: usize| -> (f64, f64) {
        let (pi, ri) = (k / grid.radii, k % grid.radii);
        let phase = TAU * pi as f64 / grid.phases as f64;
        let lr = if grid.radii == 1 {
            0.0
        } else {
            -l + 2.0 * l * ri as f64 / (grid.radii - 1) as f64
        };
        (lr, phase)
    };
    let results: Vec<(Vec<(Vec<f64>, TorusPoint)>, bool)> = (0..cells)
        .into_par_iter()
        .map(|idx| {
            let mut log_r = Vec::with_capacity(n);
            let mut phases = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n - 1 {
                let (lr, ph) = coord(rest % per);
                rest /= per;
                log_r.push(lr);
                phases.push(ph);
            }
            let (coeffs, _) = eq.last_variable_polynomial(&log_r, &phases);
            let roots = polynomial_roots(&coeffs);
            let mut out = Vec::new();
            for z in roots.roots {
                if z.norm() == 0.0 || !z.is_finite() {
                    continue;
                }
                let mut lr = log_r.clone();
                let mut ph = phases.clone();
                lr.push(z.norm().ln());
                ph.push(z.arg().rem_euclid(TAU));
                let x = TorusPoint {
                    log_radii: lr,
                    phases: ph,
                    chart: Chart::Global,
                };
                if let Ok(m) = weighted_moment(&model, &x, t) {
                    out.push((m, x));
                }
            }
            (out, roots.converged)
        })
        .collect();
    let unconverged = results.iter().filter(|r| !r.1).count();
    let points = results.into_iter().flat_map(|r| r.0).collect();
    Ok(AmoebaSample {
        points,
        t: *t,
        unconverged,
    })
}

/// Amoeba of a curve under `μ_t`.
pub fn amoeba_sample(
    cfg: &PointConfiguration,
    lambda: &LiftVector,
    t: &FamilyPoint,
    grid: SampleGrid,
) -> Result<AmoebaSample> {
    if cfg.dim() != 2 {
        return Err(Error::domain("amoeba sampling is for curves (N = 2)"));
    }
    hypersurface_sample(cfg, lambda, t, grid)
}

/// Smallest distance from the origin to a sampled point of `μ_t(F_t)`.
pub fn hole_radius(
    cfg: &PointConfiguration,
    lambda: &LiftVector,
    t: &FamilyPoint,
    grid: SampleGrid,
) -> Result<f64> {
    let sample = hypersurface_sample(cfg, lambda, t, grid)?;
    let origin = arith::to_f64_vec(&cfg.point_q(cfg.origin_index));
    sample
        .points
        .iter()
        .map(|(m, _)| m.iter().zip(&origin).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::numerical("hypersurface sampler returned no points"))
}

/// Largest facet-inequality violation of a float point (0 when inside).
pub fn facet_violation(cfg: &PointConfiguration, m: &[f64]) -> f64 {
    cfg.polytope
        .facets()
        .iter()
        .map(|f| {
            let v: f64 = f.normal.iter().zip(m).map(|(&a, b)| a as f64 * b).sum();
            (f.offset as f64 - v).max(0.0)
        })
        .fold(0.0, f64::max)
}

/// How far `m` sits outside the medial region of its simplex σ of T,
/// measured as `max_i b_i − 1/2` for barycentric coordinates `b` on σ.
/// Limits of `μ_t(F_t)` satisfy `b_i ≤ 1/2`: no single monomial can
/// outweigh all the others on the hypersurface.
pub fn medial_excess(t: &CentralTriangulation, m: &[f64]) -> f64 {
    let cfg = t.config();
    let mut best = f64::INFINITY;
    for sigma in t.max_simplices() {
        let verts: Vec<Vec<f64>> = sigma.iter().map(|&p| arith::to_f64_vec(&cfg.point_q(p))).collect();
        let n = m.len();
        let a = DMatrix::from_fn(n + 1, n + 1, |r, c| if r == n { 1.0 } else { verts[c][r] });
        let mut rhs = m.to_vec();
        rhs.push(1.0);
        let Some(b) = a.lu().solve(&DVector::from_vec(rhs)) else { continue };
        if b.iter().all(|x| *x >= -1e-9) {
            best = best.min(b.max() - 0.5);
        }
    }
    best.max(0.0)
}

pub fn format_csv(sample: &AmoebaSample) -> String {
    let n = sample.points.first().map(|p| p.0.len()).unwrap_or(2);
    let mut header: Vec<String> = (1..=n).map(|i| format!("m{i}")).collect();
    header.extend((1..=n).map(|i| format!("logr{i}")));
    header.extend((1..=n).map(|i| format!("phase{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for (m, x) in &sample.points {
        let row: Vec<String> = m
            .iter()
            .chain(&x.log_radii)
            .chain(&x.phases)
            .map(|v| arith::fmt_f64(*v))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// SVG picture of a curve amoeba: outline of Δ, the sample cloud and,
/// optionally, the edges of T (the projected edges of `∂₊P`).
pub fn format_svg(t: &CentralTriangulation, sample: &AmoebaSample, spine: bool) -> Result<String> {
    let cfg = t.config();
    if cfg.dim() != 2 {
        return Err(Error::domain("SVG output is for curves (N = 2)"));
    }
    let verts = cfg.polytope.vertices();
    let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for v in verts {
        x0 = x0.min(v[0]);
        x1 = x1.max(v[0]);
        y0 = y0.min(v[1]);
        y1 = y1.max(v[1]);
    }
    let scale = 100.0;
    let pad = 10.0;
    let w = (x1 - x0) as f64 * scale + 2.0 * pad;
    let h = (y1 - y0) as f64 * scale + 2.0 * pad;
    let px = |x: f64| pad + (x - x0 as f64) * scale;
    let py = |y: f64| pad + (y1 as f64 - y) * scale;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
    )
    .unwrap();
    // outline vertices in counterclockwise order around the origin
    let o = cfg.polytope.origin();
    let mut ring: Vec<&Vec<i64>> = verts.iter().collect();
    ring.sort_by(|a, b| {
        let fa = ((a[1] - o[1]) as f64).atan2((a[0] - o[0]) as f64);
        let fb = ((b[1] - o[1]) as f64).atan2((b[0] - o[0]) as f64);
        fa.total_cmp(&fb)
    });
    let poly: Vec<String> = ring
        .iter()
        .map(|v| format!("{:.3},{:.3}", px(v[0] as f64), py(v[1] as f64)))
        .collect();
    writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
        poly.join(" ")
    )
    .unwrap();
    if spine {
        let mut edges = std::collections::BTreeSet::new();
        for s in t.max_simplices() {
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    edges.insert((s[i].min(s[j]), s[i].max(s[j])));
                }
            }
        }
        for (a, b) in edges {
            let (pa, pb) = (&cfg.points[a], &cfg.points[b]);
            writeln!(
                out,
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"red\" stroke-width=\"0.5\"/>",
                px(pa[0] as f64),
                py(pa[1] as f64),
                px(pb[0] as f64),
                py(pb[1] as f64)
            )
            .unwrap();
        }
    }
    for (m, _) in &sample.points {
        writeln!(out, "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"0.6\"/>", px(m[0]), py(m[1])).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
