//! The torus fibration of the auxiliary hypersurface `H_t` over `∂Δ`:
//! limit intervals, τ-associated charts, fiber types and samples, the
//! zero section, and the χ-deformation bridge to the family `F_t`.
//!
//! The intervals `I_s` are the radial segments from `s ∈ ∂Δ` to the
//! mini-copy `s/4`, the projection of the ray `R_s` in the extended
//! polytope. Torus points over `I_s` come from inverting `μ_t`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{self, q, qr, Q};
use crate::base_complex::{center, theta_dim, BaseLocator, Location};
use crate::error::{Error, Result};
use crate::intlattice;
use crate::lp::{LinearProgram, LpOutcome};
use crate::moment_numeric::{moment_inverse_from, Chart, FamilyPoint, MomentModel, TorusPoint};
use crate::triangulation::{covering_degree, CentralTriangulation, LiftVector};

/// Scale of the mini-copy `Δ′` inside the hole.
pub fn mini_scale() -> Q {
    qr(1, 4)
}

/// Largest θ used along `I_s = {θ·s}` (θ = 1 is on `∂Δ`, where `μ_t` has no preimage).
pub const THETA_MAX: f64 = 1.0 - 1e-7;

/// Relative size of `|P_t(Y)|` below which `Y` is on the discriminant.
pub const DISCRIMINANT_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct LimitInterval {
    pub s: Vec<Q>,
    pub inner: Vec<Q>,
    pub segment: [Vec<Q>; 2],
    /// W-cell of `s` (index into `BoundaryComplex::simplices`).
    pub cell: usize,
    /// `s` lies where several `V_τ` overlap, so the cell is the largest of them.
    pub flagged: bool,
    /// Ratios of the weights of the cell's vertices agree at θ = 1, 1/2, 1/4
    /// along the lifted ray: the first k τ-radii are constant.
    pub constancy: bool,
}

pub fn limit_interval(locator: &BaseLocator, s: &[Q]) -> Result<LimitInterval> {
    let loc = locator.locate(s)?;
    let tau = &locator.t.boundary().simplices()[loc.cell];
    let scale = mini_scale();
    let inner: Vec<Q> = s.iter().map(|x| x * &scale).collect();
    // on the ray from (0, λ(0)) to (s, ψ(s)) the cone weights are 1 − θ at
    // the origin and θ·b_ω on the carrier of s
    let ratios = |theta: &Q| -> Vec<Q> {
        let w: Vec<Q> = tau.iter().map(|p| theta * &loc.bary[p]).collect();
        w.iter().map(|x| x / &w[0]).collect()
    };
    let base = ratios(&Q::one());
    let constancy = [qr(1, 2), scale.clone()].iter().all(|th| ratios(th) == base);
    Ok(LimitInterval {
        s: s.to_vec(),
        segment: [s.to_vec(), inner.clone()],
        inner,
        cell: loc.cell,
        flagged: !loc.pure,
        constancy,
    })
}

/// τ-associated coordinates `y_i = x^{v_i}` with `v_i = ω_i − Ω`.
///
/// `v_1..v_k` span the saturated lattice of τ, `v_1..v_l` that of the
/// minimal face `Θ_τ`, and `v_{l+1} + … + v_N = {0} − Ω`, so that
/// `x^{−Ω} = y_{l+1}⋯y_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauChart {
    pub tau: Vec<usize>,
    /// Point index of Ω, the first vertex of τ.
    pub omega: usize,
    pub omega_rel: Vec<i64>,
    /// Rows `v_1, …, v_N`.
    pub basis: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
    pub k: usize,
    pub l: usize,
}

impl TauChart {
    pub fn new(t: &CentralTriangulation, tau: &[usize]) -> Result<Self> {
        let cfg = t.config();
        let n = cfg.dim();
        let poly = &cfg.polytope;
        let omega = tau[0];
        let o = cfg.rel(omega);
        let diffs = |pts: &[Vec<i64>]| -> Vec<Vec<i64>> {
            pts.iter().map(|p| p.iter().zip(&cfg.points[omega]).map(|(a, b)| a - b).collect()).collect()
        };
        let tau_pts: Vec<Vec<i64>> = tau.iter().map(|&p| cfg.points[p].clone()).collect();
        let tau_lat = intlattice::saturation(&diffs(&tau_pts), n);
        let face = poly
            .minimal_face_q(&tau.iter().map(|&p| cfg.point_q(p)).collect::<Vec<_>>())
            .ok_or_else(|| Error::domain("τ is not on ∂Δ"))?;
        let theta_pts: Vec<Vec<i64>> = poly.faces()[face].vertices.iter().map(|&v| poly.vertices()[v].clone()).collect();
        let theta_lat = intlattice::saturation(&diffs(&theta_pts), n);
        let (k, l) = (tau_lat.len(), theta_lat.len());
        // τ lattice inside Θ lattice, completed there
        let coords: Vec<Vec<i64>> = tau_lat
            .iter()
            .map(|v| intlattice::coordinates_in(&theta_lat, v).ok_or_else(|| Error::Internal("τ ⊄ Θ_τ".into())))
            .collect::<Result<_>>()?;
        let (inner, _) = intlattice::complete_basis(&coords, l)
            .ok_or_else(|| Error::Internal("τ lattice not saturated in Θ_τ".into()))?;
        let mut basis: Vec<Vec<i64>> = intlattice::mat_mul(&inner, &theta_lat);
        if l < n {
            let (full, full_inv) = intlattice::complete_basis(&theta_lat, n)
                .ok_or_else(|| Error::Internal("face lattice not saturated".into()))?;
            let complement = &full[l..];
            let neg: Vec<i64> = o.iter().map(|x| -x).collect();
            let c = intlattice::mat_mul(std::slice::from_ref(&neg), &full_inv)[0].clone();
            let beta = c[l..].to_vec();
            let m = n - l;
            let (qb, _) = intlattice::complete_basis(std::slice::from_ref(&beta), m)
                .ok_or_else(|| Error::domain("−Ω is not primitive modulo Θ_τ; Δ is not reflexive"))?;
            let mut vprime = qb.clone();
            for i in 0..m {
                vprime[0][i] = beta[i] - qb[1..].iter().map(|u| u[i]).sum::<i64>();
            }
            let mut rest = intlattice::mat_mul(&vprime, complement);
            let sum: Vec<i64> = (0..n).map(|i| rest.iter().map(|v| v[i]).sum()).collect();
            for i in 0..n {
                rest[0][i] += neg[i] - sum[i];
            }
            basis.extend(rest);
        }
        let inverse = intlattice::unimodular_inverse(&basis)
            .ok_or_else(|| Error::Internal("τ-chart basis is not unimodular".into()))?;
        let mut tau_sorted = tau.to_vec();
        tau_sorted.sort_unstable();
        Ok(TauChart {
            tau: tau_sorted,
            omega,
            omega_rel: o,
            basis,
            inverse,
            k,
            l,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `α` with `ω − Ω = Σ α_i v_i`, for `ω` given relative to the origin.
    pub fn exponent(&self, w_rel: &[i64]) -> Vec<i64> {
        let d: Vec<i64> = w_rel.iter().zip(&self.omega_rel).map(|(a, b)| a - b).collect();
        intlattice::mat_mul(&[d], &self.inverse)[0].clone()
    }

    /// Log-radii and phases of `y` from those of `x`.
    pub fn from_global(&self, x: &TorusPoint) -> TorusPoint {
        let apply = |v: &[f64]| -> Vec<f64> {
            self.basis.iter().map(|r| r.iter().zip(v).map(|(&a, b)| a as f64 * b).sum()).collect()
        };
        TorusPoint {
            log_radii: apply(&x.log_radii),
            phases: apply(&x.phases).into_iter().map(|p| p.rem_euclid(TAU)).collect(),
            chart: Chart::Tau(self.tau.clone()),
        }
    }

    pub fn to_global(&self, y: &TorusPoint) -> TorusPoint {
        let n = self.dim();
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..n).map(|j| (0..n).map(|i| self.inverse[j][i] as f64 * v[i]).sum()).collect()
        };
        TorusPoint {
            log_radii: apply(&y.log_radii),
            phases: apply(&y.phases).into_iter().map(|p| p.rem_euclid(TAU)).collect(),
            chart: Chart::Global,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberType {
    pub tau: Vec<usize>,
    pub k: usize,
    pub l: usize,
    /// Dimension of the face of Δ containing `s` in its relative interior.
    pub big_l: usize,
    pub n: usize,
    pub degree: i64,
    /// The discriminant `D_{τ,s}` is nonempty and `L < N − 1`.
    pub degenerate: bool,
    pub description: String,
}

/// Fiber type of `T_s`. The discriminant is nonempty exactly when the
/// limiting moduli `ρ_ω(s)·b_ω(s)`, ω ∈ τ, satisfy the polygon inequality.
pub fn fiber_type(locator: &BaseLocator, s: &[Q]) -> Result<FiberType> {
    let t = locator.t;
    let cfg = t.config();
    let n = t.dim();
    let loc = locator.locate(s)?;
    let tau = t.boundary().simplices()[loc.cell].clone();
    let k = tau.len() - 1;
    let l = theta_dim(t, &tau);
    let face = cfg
        .polytope
        .minimal_face_q(&[s.to_vec()])
        .ok_or_else(|| Error::domain("s is not on ∂Δ"))?;
    let big_l = cfg.polytope.faces()[face].dim;
    let verts: Vec<Vec<i64>> = tau.iter().map(|&p| cfg.points[p].clone()).collect();
    let degree = covering_degree(&verts);
    let rho = locator.rho(&loc);
    let moduli: Vec<Q> = tau
        .iter()
        .map(|p| &rho[*p] * loc.bary.get(p).cloned().unwrap_or_else(Q::zero))
        .filter(|m| m.is_positive())
        .collect();
    let total: Q = moduli.iter().cloned().sum();
    let balanced = moduli.len() >= 2 && moduli.iter().all(|m| m + m <= total);
    let degenerate = balanced && big_l + 1 < n;
    let description = if big_l + 1 == n {
        format!("smooth T^{}", n - 1)
    } else if !degenerate {
        format!("smooth T^{} (D empty)", n - 1)
    } else if n == 3 && l == 1 && big_l == 1 {
        format!("T^1 x T^1 pinched over {degree} points (I_{degree})")
    } else {
        format!(
            "T^{} x (T^{} x T^{})/~ over D (degree {degree})",
            big_l - l,
            l,
            n - 1 - big_l
        )
    };
    Ok(FiberType {
        tau,
        k,
        l,
        big_l,
        n,
        degree,
        degenerate,
        description,
    })
}

/// One row per W-cell, evaluated at the center `O(τ)`.
#[derive(Clone, Debug)]
pub struct Census {
    pub rows: Vec<FiberType>,
    /// Cells whose central fiber is singular.
    pub degenerate: Vec<Vec<usize>>,
    /// Sum of covering degrees over singular fibers: the Euler number of
    /// the total space when every singular fiber is of type `I_n` (N = 3).
    pub euler_sum: i64,
}

pub fn fiber_census(locator: &BaseLocator) -> Result<Census> {
    let t = locator.t;
    let rows: Vec<FiberType> = t
        .boundary()
        .simplices()
        .iter()
        .map(|tau| fiber_type(locator, &center(t.config(), tau)))
        .collect::<Result<_>>()?;
    let degenerate: Vec<Vec<usize>> = rows.iter().filter(|r| r.degenerate).map(|r| r.tau.clone()).collect();
    let euler_sum = rows.iter().filter(|r| r.degenerate).map(|r| r.degree).sum();
    Ok(Census {
        rows,
        degenerate,
        euler_sum,
    })
}

/// Torus points over `I_s`, indexed by θ ∈ [1/4, THETA_MAX].
#[derive(Clone, Debug)]
pub struct RayPath<'m> {
    model: &'m MomentModel,
    log_t: f64,
    s: Vec<f64>,
    thetas: Vec<f64>,
    us: Vec<Vec<f64>>,
}

impl<'m> RayPath<'m> {
    pub fn new(model: &'m MomentModel, s: &[Q], family: &FamilyPoint) -> Result<Self> {
        let s = arith::to_f64_vec(s);
        let log_t = family.log_modulus();
        // dense near ∂Δ, where the preimage runs off to infinity
        let span = (0.75f64 / (1.0 - THETA_MAX)).ln();
        let count = 800;
        let thetas: Vec<f64> = (0..=count)
            .map(|j| 1.0 - 0.75 * (-(span * j as f64 / count as f64)).exp())
            .collect();
        let mut us = Vec::with_capacity(thetas.len());
        let mut u = vec![0.0; model.dim];
        for th in &thetas {
            let m: Vec<f64> = s.iter().map(|x| x * th).collect();
            u = moment_inverse_from(model, &m, log_t, &u)?;
            us.push(u.clone());
        }
        Ok(RayPath {
            model,
            log_t,
            s,
            thetas,
            us,
        })
    }

    pub fn u_at(&self, theta: f64) -> Result<Vec<f64>> {
        let i = self.thetas.partition_point(|&x| x < theta).min(self.thetas.len() - 1);
        let m: Vec<f64> = self.s.iter().map(|x| x * theta).collect();
        moment_inverse_from(self.model, &m, self.log_t, &self.us[i])
    }

    /// Finds θ in the table bracket where `f` changes sign (f increasing
    /// overall) and refines by bisection.
    fn solve(&self, f: impl Fn(&[f64]) -> f64) -> Result<(f64, Vec<f64>)> {
        let vals: Vec<f64> = self.us.iter().map(|u| f(u)).collect();
        let j = vals
            .windows(2)
            .position(|w| w[0] < 0.0 && w[1] >= 0.0)
            .ok_or_else(|| {
                Error::numerical(format!(
                    "no intersection on I_s: values {} .. {} at θ = 1/4 .. {}; try a larger |t|",
                    arith::fmt_f64(vals[0]),
                    arith::fmt_f64(*vals.last().unwrap()),
                    THETA_MAX
                ))
            })?;
        let (mut lo, mut hi) = (self.thetas[j], self.thetas[j + 1]);
        let mut u = self.us[j].clone();
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let m: Vec<f64> = self.s.iter().map(|x| x * mid).collect();
            u = moment_inverse_from(self.model, &m, self.log_t, &u)?;
            if f(&u) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let theta = 0.5 * (lo + hi);
        let u = self.u_at(theta)?;
        Ok((theta, u))
    }
}

/// `log Σ_{ω ≠ 0} ρ_ω |t|^{λ(ω)} e^{⟨u,ω⟩} − λ(0) log|t|`: positive where the
/// boundary monomials outweigh the origin term.
fn section_balance(model: &MomentModel, rho: &[f64], origin: usize, u: &[f64], log_t: f64) -> f64 {
    let lw = model.log_weights(u, log_t);
    let terms: Vec<f64> = lw
        .iter()
        .zip(rho)
        .enumerate()
        .filter(|(i, (_, r))| *i != origin && **r > 0.0)
        .map(|(_, (l, r))| l + r.ln())
        .collect();
    if terms.is_empty() {
        return f64::NEG_INFINITY;
    }
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max + terms.iter().map(|x| (x - max).exp()).sum::<f64>().ln() - lw[origin]
}

#[derive(Clone, Debug)]
pub struct SectionPoint {
    pub s: Vec<Q>,
    pub theta: f64,
    /// Global coordinates; all phases zero.
    pub point: TorusPoint,
    /// `|t^{λ(0)} − Σ ρ_ω t^{λ(ω)} x^ω| / |t^{λ(0)}|`.
    pub residual: f64,
}

/// The positive real point of `H_t` over `s` (at real `t = |t|`).
pub fn zero_section(
    locator: &BaseLocator,
    model: &MomentModel,
    s: &[Q],
    family: &FamilyPoint,
) -> Result<SectionPoint> {
    let path = RayPath::new(model, s, family)?;
    zero_section_on(locator, &path, s)
}

fn rho_f64(locator: &BaseLocator, loc: &Location) -> Vec<f64> {
    locator.rho(loc).iter().map(arith::to_f64).collect()
}

pub fn zero_section_on(locator: &BaseLocator, path: &RayPath, s: &[Q]) -> Result<SectionPoint> {
    let origin = locator.t.config().origin_index;
    let loc = locator.locate(s)?;
    let rho = rho_f64(locator, &loc);
    let (theta, u) = path.solve(|u| section_balance(path.model, &rho, origin, u, path.log_t))?;
    let point = TorusPoint {
        log_radii: u.clone(),
        phases: vec![0.0; u.len()],
        chart: Chart::Global,
    };
    let residual = relative_residual(path.model, &rho, origin, &u, path.log_t);
    Ok(SectionPoint {
        s: s.to_vec(),
        theta,
        point,
        residual,
    })
}

fn relative_residual(model: &MomentModel, rho: &[f64], origin: usize, u: &[f64], log_t: f64) -> f64 {
    let lw = model.log_weights(u, log_t);
    let sum: f64 = lw
        .iter()
        .zip(rho)
        .enumerate()
        .filter(|(i, _)| *i != origin)
        .map(|(_, (l, r))| r * (l - lw[origin]).exp())
        .sum();
    (1.0 - sum).abs()
}

/// Sign changes of the section equation along `samples` equally spaced
/// points of `I_s` (θ from 1/4 up to, not including, 1).
pub fn section_sign_changes(
    locator: &BaseLocator,
    model: &MomentModel,
    s: &[Q],
    family: &FamilyPoint,
    samples: usize,
) -> Result<usize> {
    let origin = locator.t.config().origin_index;
    let loc = locator.locate(s)?;
    let rho = rho_f64(locator, &loc);
    let sf = arith::to_f64_vec(s);
    let log_t = family.log_modulus();
    let mut u = vec![0.0; model.dim];
    let mut prev: Option<bool> = None;
    let mut changes = 0;
    for j in 0..samples {
        let theta = 0.25 + 0.75 * j as f64 / samples as f64;
        let m: Vec<f64> = sf.iter().map(|x| x * theta).collect();
        u = moment_inverse_from(model, &m, log_t, &u)?;
        let positive = section_balance(model, &rho, origin, &u, log_t) > 0.0;
        if prev.is_some_and(|p| p != positive) {
            changes += 1;
        }
        prev = Some(positive);
    }
    Ok(changes)
}

/// Value of the defining function of `H_t` at `x`, with the cut-offs read
/// at the radial projection of `μ_t(x)` to `∂Δ`.
pub fn auxiliary_eval(
    locator: &BaseLocator,
    model: &MomentModel,
    x: &TorusPoint,
    family: &FamilyPoint,
) -> Result<Complex64> {
    if x.chart != Chart::Global {
        return Err(Error::domain("auxiliary_eval expects global coordinates"));
    }
    let m = crate::moment_numeric::weighted_moment(model, x, family)?;
    let s = radial_projection(locator.t, &m)?;
    let loc = locator.locate(&s)?;
    let rho = rho_f64(locator, &loc);
    Ok(auxiliary_with(model, &rho, locator.t.config().origin_index, x, family))
}

fn auxiliary_with(model: &MomentModel, rho: &[f64], origin: usize, x: &TorusPoint, family: &FamilyPoint) -> Complex64 {
    let mut v = Complex64::new(0.0, 0.0);
    for (i, e) in model.exponents.iter().enumerate() {
        let r = if i == origin { -1.0 } else { rho[i] };
        if r == 0.0 {
            continue;
        }
        let lr = model.lambda[i] * family.log_modulus() + e.iter().zip(&x.log_radii).map(|(&a, b)| a as f64 * b).sum::<f64>();
        let ph = model.lambda[i] * family.phase + e.iter().zip(&x.phases).map(|(&a, b)| a as f64 * b).sum::<f64>();
        v -= Complex64::from_polar(r * lr.exp(), ph);
    }
    v
}

/// The point of `∂Δ` on the ray from the origin through `m`, exactly.
pub fn radial_projection(t: &CentralTriangulation, m: &[f64]) -> Result<Vec<Q>> {
    let poly = &t.config().polytope;
    let mq: Vec<Q> = m
        .iter()
        .map(|x| Q::from_float(*x).ok_or_else(|| Error::numerical("non-finite moment image")))
        .collect::<Result<_>>()?;
    let origin = arith::qvec(poly.origin());
    let d: Vec<Q> = mq.iter().zip(&origin).map(|(a, b)| a - b).collect();
    // the facet ⟨n, m⟩ ≥ c reached first along d: largest ⟨n, d⟩ / (c − ⟨n, 0⟩)
    let mut gauge: Option<Q> = None;
    for (i, f) in poly.facets().iter().enumerate() {
        let g = arith::dot_qi(&d, &f.normal) / q(poly.relative_offset(i));
        if gauge.as_ref().is_none_or(|x| g > *x) {
            gauge = Some(g);
        }
    }
    let gauge = gauge.filter(|g| g.is_positive()).ok_or_else(|| Error::domain("point is the center of Δ"))?;
    Ok(d.iter().zip(&origin).map(|(a, b)| a / &gauge + b).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberGrid {
    /// Phases per base coordinate `y_1..y_l`.
    pub base: usize,
    /// Phases per free fiber coordinate `y_{l+1}..y_{N−1}`.
    pub fiber: usize,
}

#[derive(Clone, Debug)]
pub struct FiberSample {
    pub s: Vec<Q>,
    pub chart: TauChart,
    pub section_theta: f64,
    /// `log|y_i|`, i ≤ l, on the base torus `T^l`.
    pub base_log_radii: Vec<f64>,
    /// Points of `T_s` in τ-coordinates.
    pub points: Vec<TorusPoint>,
    /// Base phases where `P_t(Y) = 0` (computed when l = 1).
    pub degenerate_phases: Vec<f64>,
    /// Same count for the degree-one model `ρ_0 + ρ_1 z` (when k = l = 1).
    pub model_count: Option<usize>,
    /// Base grid points skipped as too close to the discriminant.
    pub skipped: usize,
}

/// `P_t(Y) = t^{−λ(0)} Σ_{ω∈τ} ρ_ω t^{λ(ω)} y^{α_ω}` as (log scale, value / scale, Σ|terms| / scale).
fn p_value(terms: &[(f64, f64, Vec<i64>)], log_r: &[f64], phases: &[f64]) -> (f64, Complex64, f64) {
    let parts: Vec<(f64, f64)> = terms
        .iter()
        .map(|(lm, ph, a)| {
            let lr: f64 = lm + a.iter().zip(log_r).map(|(&e, r)| e as f64 * r).sum::<f64>();
            let p: f64 = ph + a.iter().zip(phases).map(|(&e, f)| e as f64 * f).sum::<f64>();
            (lr, p)
        })
        .collect();
    let max = parts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let mut v = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for (lr, p) in parts {
        let m = (lr - max).exp();
        v += Complex64::from_polar(m, p);
        abs += m;
    }
    (max, v, abs)
}

/// Counts zeros of `φ ↦ P(φ)` on the circle: local minima of `|P|/Σ|terms|`
/// on a grid, refined by golden-section search.
fn circle_zeros(rel: impl Fn(f64) -> f64, grid: usize) -> Vec<f64> {
    let vals: Vec<f64> = (0..grid).map(|j| rel(TAU * j as f64 / grid as f64)).collect();
    let mut zeros = Vec::new();
    for j in 0..grid {
        let (a, b, c) = (vals[(j + grid - 1) % grid], vals[j], vals[(j + 1) % grid]);
        if !(b <= a && b < c) {
            continue;
        }
        let step = TAU / grid as f64;
        let (mut lo, mut hi) = ((j as f64 - 1.0) * step, (j as f64 + 1.0) * step);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (rel(x1), rel(x2));
        for _ in 0..100 {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = rel(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = rel(x2);
            }
        }
        let x = 0.5 * (lo + hi);
        if rel(x).min(b) < DISCRIMINANT_TOL {
            zeros.push(x.rem_euclid(TAU));
        }
    }
    zeros
}

pub fn fiber_sample(
    locator: &BaseLocator,
    model: &MomentModel,
    s: &[Q],
    family: &FamilyPoint,
    grid: FiberGrid,
) -> Result<FiberSample> {
    let t = locator.t;
    let cfg = t.config();
    let n = t.dim();
    let origin = cfg.origin_index;
    let loc = locator.locate(s)?;
    let tau = t.boundary().simplices()[loc.cell].clone();
    let chart = TauChart::new(t, &tau)?;
    let (k, l) = (chart.k, chart.l);
    let rho = rho_f64(locator, &loc);
    let path = RayPath::new(model, s, family)?;
    let section = zero_section_on(locator, &path, s)?;
    let u0 = &section.point.log_radii;
    let base_log_radii: Vec<f64> = chart.basis[..l]
        .iter()
        .map(|v| v.iter().zip(u0).map(|(&a, b)| a as f64 * b).sum())
        .collect();
    let log_t = family.log_modulus();
    let lam0 = model.lambda[origin];
    let terms: Vec<(f64, f64, Vec<i64>)> = tau
        .iter()
        .filter(|&&p| rho[p] > 0.0)
        .map(|&p| {
            let a = chart.exponent(&cfg.rel(p));
            (
                (model.lambda[p] - lam0) * log_t + rho[p].ln(),
                (model.lambda[p] - lam0) * family.phase,
                a[..l].to_vec(),
            )
        })
        .collect();
    let base_cells = grid
        .base
        .checked_pow(l as u32)
        .filter(|&c| c <= 10_000_000)
        .ok_or_else(|| Error::Resource("base phase grid too large".into()))?;
    let free = n - l - 1;
    let fiber_cells = grid
        .fiber
        .checked_pow(free as u32)
        .filter(|&c| c.saturating_mul(base_cells) <= 50_000_000)
        .ok_or_else(|| Error::Resource("fiber phase grid too large".into()))?;
    let phase_of = |idx: usize, size: usize, count: usize| -> Vec<f64> {
        let mut rest = idx;
        (0..count)
            .map(|_| {
                let j = rest % size;
                rest /= size;
                TAU * j as f64 / size as f64
            })
            .collect()
    };
    let minus_omega: Vec<i64> = chart.omega_rel.iter().map(|x| -x).collect();
    let fiber_of: Vec<Result<Option<Vec<TorusPoint>>>> = (0..base_cells)
        .into_par_iter()
        .map(|b| {
            let y_ph = phase_of(b, grid.base, l);
            let (scale, v, abs) = p_value(&terms, &base_log_radii, &y_ph);
            if v.norm() < 1e-8 * abs {
                return Ok(None);
            }
            let target = scale + v.norm().ln();
            let (_, u) = path.solve(|u| target - minus_omega.iter().zip(u).map(|(&a, b)| a as f64 * b).sum::<f64>())?;
            let radii: Vec<f64> = chart.basis[l..]
                .iter()
                .map(|row| row.iter().zip(&u).map(|(&a, b)| a as f64 * b).sum())
                .collect();
            // put the rounding of the product into the last radius
            let mut radii = radii;
            let excess: f64 = radii.iter().sum::<f64>() - target;
            *radii.last_mut().unwrap() -= excess;
            let mut pts = Vec::with_capacity(fiber_cells);
            for f in 0..fiber_cells {
                let mut ph = y_ph.clone();
                let free_ph = phase_of(f, grid.fiber, free);
                let last = v.arg() - free_ph.iter().sum::<f64>();
                ph.extend(free_ph);
                ph.push(last);
                let mut lr = base_log_radii.clone();
                lr.extend(radii.iter().copied());
                pts.push(TorusPoint {
                    log_radii: lr,
                    phases: ph.into_iter().map(|p| p.rem_euclid(TAU)).collect(),
                    chart: Chart::Tau(chart.tau.clone()),
                });
            }
            Ok(Some(pts))
        })
        .collect();
    let mut points = Vec::new();
    let mut skipped = 0;
    for r in fiber_of {
        match r? {
            Some(p) => points.extend(p),
            None => skipped += 1,
        }
    }
    let mut degenerate_phases = Vec::new();
    let mut model_count = None;
    if l == 1 && k == 1 {
        let rel = |terms: &[(f64, f64, Vec<i64>)], phi: f64| {
            let (_, v, abs) = p_value(terms, &base_log_radii, &[phi]);
            v.norm() / abs
        };
        degenerate_phases = circle_zeros(|phi| rel(&terms, phi), grid.base);
        let g = terms.iter().fold(0i64, |acc, tm| num_integer::gcd(acc, tm.2[0]));
        if g != 0 {
            // |z| = |y|^g keeps the moduli: the plane ρ_0 + ρ_1 z on a circle
            let model_terms: Vec<(f64, f64, Vec<i64>)> = terms
                .iter()
                .map(|(lm, ph, a)| (lm + (a[0] - a[0] / g) as f64 * base_log_radii[0], *ph, vec![a[0] / g]))
                .collect();
            model_count = Some(circle_zeros(|phi| rel(&model_terms, phi), grid.base).len());
        }
    }
    Ok(FiberSample {
        s: s.to_vec(),
        chart,
        section_theta: section.theta,
        base_log_radii,
        points,
        degenerate_phases,
        model_count,
        skipped,
    })
}

impl FiberSample {
    /// Largest `|y_{l+1}⋯y_N − P_t(Y)| / Σ|terms|` over the sampled points,
    /// with ρ frozen at `s` as on `T_s`.
    pub fn max_residual(&self, locator: &BaseLocator, model: &MomentModel, family: &FamilyPoint) -> Result<f64> {
        let loc = locator.locate(&self.s)?;
        let rho = rho_f64(locator, &loc);
        let origin = locator.t.config().origin_index;
        let mut worst = 0.0f64;
        for y in &self.points {
            let x = self.chart.to_global(y);
            let v = auxiliary_with(model, &rho, origin, &x, family);
            let scale = model.lambda[origin] * family.log_modulus();
            worst = worst.max(v.norm() / scale.exp());
        }
        Ok(worst)
    }
}

/// An affine function `ω ↦ c + ⟨v, ω − 0⟩` on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunction {
    pub constant: Q,
    pub linear: Vec<Q>,
}

impl AffineFunction {
    pub fn eval(&self, w_rel: &[i64]) -> Q {
        &self.constant + arith::dot_qi(&self.linear, w_rel)
    }
}

/// `χ_τ ≥ λ` on `A` with equality exactly on `τ ∪ {0}`, one per simplex of `∂T`.
#[derive(Clone, Debug)]
pub struct ChiFamily {
    pub chis: Vec<AffineFunction>,
}

fn chi_tau(t: &CentralTriangulation, lambda: &LiftVector, tau: &[usize]) -> Result<AffineFunction> {
    let cfg = t.config();
    let n = cfg.dim();
    let nv = n + 1;
    // variables: (c, v) as p − q, then the slack
    let mut lp = LinearProgram::new(2 * nv + 1);
    let row = |w: &[i64]| -> Vec<Q> {
        let mut r = vec![Q::zero(); 2 * nv + 1];
        let coeffs: Vec<i64> = std::iter::once(1).chain(w.iter().copied()).collect();
        for (j, c) in coeffs.iter().enumerate() {
            r[j] = q(*c);
            r[nv + j] = q(-c);
        }
        r
    };
    for p in 0..cfg.len() {
        let w = cfg.rel(p);
        let r = row(&w);
        if p == cfg.origin_index || tau.contains(&p) {
            lp.eq.push((r, lambda.q(p)));
        } else {
            // slack − (c + ⟨v,ω⟩) ≤ −λ(ω)
            let mut r: Vec<Q> = r.into_iter().map(|x| -x).collect();
            r[2 * nv] = Q::one();
            lp.le.push((r, -lambda.q(p)));
        }
    }
    let mut cap = vec![Q::zero(); 2 * nv + 1];
    cap[2 * nv] = Q::one();
    lp.le.push((cap, Q::one()));
    lp.objective[2 * nv] = Q::one();
    let strict = lp.le.len() == 1;
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() || strict => {
            let coef: Vec<Q> = (0..nv).map(|j| &x[j] - &x[nv + j]).collect();
            Ok(AffineFunction {
                constant: coef[0].clone(),
                linear: coef[1..].to_vec(),
            })
        }
        _ => Err(Error::domain(format!(
            "no affine χ_τ for τ = {}: λ is not strictly convex",
            crate::triangulation::fmt_simplex(cfg, tau)
        ))),
    }
}

pub fn chi_family(t: &CentralTriangulation, lambda: &LiftVector) -> Result<ChiFamily> {
    let chis = t
        .boundary()
        .simplices()
        .iter()
        .map(|tau| chi_tau(t, lambda, tau))
        .collect::<Result<_>>()?;
    Ok(ChiFamily { chis })
}

impl ChiFamily {
    /// `χ(s, γ, ω)` for every ω of `A`: the average over maximal σ
    /// containing the W-cell of `s` of the affine extension of
    /// `−log Σ_τ ρ⁰_τ e^{−γ χ_τ(ω)}` from `σ ∪ {0}`.
    pub fn chi(&self, locator: &BaseLocator, loc: &Location, gamma: f64) -> Result<Vec<f64>> {
        let t = locator.t;
        let cfg = t.config();
        let n = cfg.dim();
        let rho0: Vec<(usize, f64)> = locator.rho0(loc).iter().map(|(&i, r)| (i, arith::to_f64(r))).collect();
        let cell = &t.boundary().simplices()[loc.cell];
        let sigmas: Vec<&Vec<usize>> = t
            .boundary()
            .maximal()
            .iter()
            .filter(|sig| cell.iter().all(|p| sig.contains(p)))
            .collect();
        let raw = |w: &[i64]| -> f64 {
            let exps: Vec<f64> = rho0
                .iter()
                .map(|(i, r)| r.ln() - gamma * arith::to_f64(&self.chis[*i].eval(w)))
                .collect();
            let max = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            -(max + exps.iter().map(|x| (x - max).exp()).sum::<f64>().ln())
        };
        let zero = vec![0i64; n];
        let c = raw(&zero);
        let mut out = vec![0.0; cfg.len()];
        for sig in &sigmas {
            let a = nalgebra::DMatrix::from_fn(n, n, |r, col| cfg.rel(sig[r])[col] as f64);
            let b = nalgebra::DVector::from_iterator(n, sig.iter().map(|&p| raw(&cfg.rel(p)) - c));
            let v = a
                .lu()
                .solve(&b)
                .ok_or_else(|| Error::Internal("boundary simplex is degenerate".into()))?;
            for (p, o) in out.iter_mut().enumerate() {
                let w = cfg.rel(p);
                *o += (c + w.iter().zip(v.iter()).map(|(&a, b)| a as f64 * b).sum::<f64>()) / sigmas.len() as f64;
            }
        }
        Ok(out)
    }

    /// `ε_ω = e^{γλ(ω) − χ(s,γ,ω)} − ρ_ω(s)`.
    pub fn epsilons(&self, locator: &BaseLocator, lambda: &LiftVector, s: &[Q], gamma: f64) -> Result<Vec<f64>> {
        let loc = locator.locate(s)?;
        let chi = self.chi(locator, &loc, gamma)?;
        let rho = locator.rho(&loc);
        Ok(chi
            .iter()
            .enumerate()
            .map(|(p, c)| (gamma * lambda.values[p] as f64 - c).exp() - arith::to_f64(&rho[p]))
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub gamma: f64,
    pub samples: usize,
    pub max_epsilon: f64,
    /// `max |χ(s, γ, {0}) − γλ(0)|`.
    pub origin_residual: f64,
    /// `max |χ(s, 0, ω)|`.
    pub zero_gamma_residual: f64,
    /// After `x = x′·e^{v}` and scaling by `e^{χ({0})}`, every coefficient of
    /// the deformed equation is `e^{γλ(ω)} t^{λ(ω)}`, checked on exponents.
    pub substitution_identity: bool,
}

/// Symbolic exponent of the coefficient of `x′^ω`, over the basis
/// `(γλ(ω), c, v_1, …, v_N)` where `χ = c + ⟨v, ω⟩`.
fn substituted_exponent(w_rel: &[i64]) -> Vec<i64> {
    let n = w_rel.len();
    let mut e = vec![0i64; n + 2];
    e[0] = 1; // e^{γλ(ω)}
    e[1] -= 1; // e^{−χ(ω)}: the constant part
    for i in 0..n {
        e[2 + i] -= w_rel[i]; // e^{−χ(ω)}: the linear part
        e[2 + i] += w_rel[i]; // x^ω = x′^ω e^{⟨v, ω⟩}
    }
    e[1] += 1; // global factor e^{c} = e^{χ({0})}
    e
}

pub fn deformation_bridge_check(
    locator: &BaseLocator,
    lambda: &LiftVector,
    chi: &ChiFamily,
    samples: &[Vec<Q>],
    gamma: f64,
) -> Result<BridgeReport> {
    let cfg = locator.t.config();
    let origin = cfg.origin_index;
    let per: Vec<Result<(f64, f64, f64)>> = samples
        .par_iter()
        .map(|s| {
            let loc = locator.locate(s)?;
            let eps = chi.epsilons(locator, lambda, s, gamma)?;
            let at_gamma = chi.chi(locator, &loc, gamma)?;
            let at_zero = chi.chi(locator, &loc, 0.0)?;
            Ok((
                eps.iter().map(|e| e.abs()).fold(0.0, f64::max),
                (at_gamma[origin] - gamma * lambda.values[origin] as f64).abs(),
                at_zero.iter().map(|x| x.abs()).fold(0.0, f64::max),
            ))
        })
        .collect();
    let (mut max_epsilon, mut origin_residual, mut zero_gamma_residual) = (0.0f64, 0.0f64, 0.0f64);
    for r in per {
        let (a, b, c) = r?;
        max_epsilon = max_epsilon.max(a);
        origin_residual = origin_residual.max(b);
        zero_gamma_residual = zero_gamma_residual.max(c);
    }
    let n = cfg.dim();
    let mut expected = vec![0i64; n + 2];
    expected[0] = 1;
    let substitution_identity = (0..cfg.len()).all(|p| substituted_exponent(&cfg.rel(p)) == expected);
    Ok(BridgeReport {
        gamma,
        samples: samples.len(),
        max_epsilon,
        origin_residual,
        zero_gamma_residual,
        substitution_identity,
    })
}

/// About `count` rational points of `∂Δ`: barycentric grid points of the
/// maximal simplices of `∂T` with a common denominator, thinned evenly.
pub fn boundary_sample(t: &CentralTriangulation, count: usize) -> Vec<Vec<Q>> {
    let cfg = t.config();
    let n = cfg.dim();
    let maximal = t.boundary().maximal();
    let mut d = 1i64;
    loop {
        let mut set = BTreeSet::new();
        for sig in maximal {
            let verts: Vec<Vec<Q>> = sig.iter().map(|&p| cfg.point_q(p)).collect();
            for c in compositions(d, n) {
                let pt: Vec<Q> = (0..n)
                    .map(|j| {
                        verts
                            .iter()
                            .zip(&c)
                            .fold(Q::zero(), |acc, (v, &ci)| acc + &v[j] * qr(ci, d))
                    })
                    .collect();
                set.insert(pt);
            }
        }
        if set.len() >= count || d >= 4096 {
            let all: Vec<Vec<Q>> = set.into_iter().collect();
            if all.len() <= count {
                return all;
            }
            return (0..count).map(|i| all[i * all.len() / count].clone()).collect();
        }
        d += 1;
    }
}

fn compositions(d: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Vertices of `Bar²(∂T)`, i.e. centers of chains of simplices.
pub fn bar2_points(t: &CentralTriangulation) -> Result<Vec<Vec<Q>>> {
    Ok(crate::base_complex::barycentric(t, 2)?.coords)
}

/// For tests and reports: the fraction-free map from cells to their τ.
pub fn cell_simplices(t: &CentralTriangulation) -> BTreeMap<usize, Vec<usize>> {
    t.boundary().simplices().iter().cloned().enumerate().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_core::{cubic_triangle, quartic_simplex, PointConfiguration};
    use crate::triangulation::{build_central_triangulation, Strategy};

    fn setup(p: crate::lattice_core::LatticePolytope) -> (CentralTriangulation, LiftVector) {
        let cfg = PointConfiguration::vertices_and_origin(p).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
        let lam = LiftVector::origin_spike(&cfg, 1);
        (t, lam)
    }

    #[test]
    fn charts_satisfy_normalization() {
        for p in [cubic_triangle(), quartic_simplex()] {
            let (t, _) = setup(p);
            for tau in t.boundary().simplices() {
                let c = TauChart::new(&t, tau).unwrap();
                let n = c.dim();
                assert_eq!(c.k, tau.len() - 1);
                assert_eq!(intlattice::det(&c.basis).abs(), 1);
                let sum: Vec<i64> = (0..n).map(|i| c.basis[c.l..].iter().map(|v| v[i]).sum()).collect();
                let neg: Vec<i64> = c.omega_rel.iter().map(|x| -x).collect();
                assert_eq!(sum, neg);
                // vertices of τ only use the first k coordinates
                for &p in tau {
                    let a = c.exponent(&t.config().rel(p));
                    assert!(a[c.k..].iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn quartic_edge_is_i4() {
        let (t, _) = setup(quartic_simplex());
        let loc = BaseLocator::new(&t);
        let cfg = t.config();
        let a = cfg.index_of(&[-1, -1, -1]).unwrap();
        let b = cfg.index_of(&[3, -1, -1]).unwrap();
        let ft = fiber_type(&loc, &center(cfg, &[a, b])).unwrap();
        assert_eq!((ft.k, ft.l, ft.big_l, ft.degree), (1, 1, 1, 4));
        assert!(ft.degenerate);
        assert!(ft.description.contains("I_4"));
        let facet = &t.boundary().maximal()[0];
        let ft = fiber_type(&loc, &center(cfg, facet)).unwrap();
        assert!(!ft.degenerate && ft.description == "smooth T^2");
        let census = fiber_census(&loc).unwrap();
        assert_eq!(census.degenerate.len(), 6);
        assert_eq!(census.euler_sum, 24);
    }

    #[test]
    fn cubic_fibers_are_smooth_circles() {
        let (t, _) = setup(cubic_triangle());
        let loc = BaseLocator::new(&t);
        let census = fiber_census(&loc).unwrap();
        assert!(census.degenerate.is_empty());
        assert!(census.rows.iter().all(|r| r.description.starts_with("smooth T^1")));
    }

    #[test]
    fn limit_intervals_are_w_supported() {
        let (t, _) = setup(quartic_simplex());
        let loc = BaseLocator::new(&t);
        for s in bar2_points(&t).unwrap() {
            let li = limit_interval(&loc, &s).unwrap();
            assert!(li.constancy);
            assert_eq!(li.inner, s.iter().map(|x| x / q(4)).collect::<Vec<_>>());
        }
        let cfg = t.config();
        let v = cfg.index_of(&[3, -1, -1]).unwrap();
        let li = limit_interval(&loc, &cfg.point_q(v)).unwrap();
        assert_eq!(t.boundary().simplices()[li.cell], vec![v]);
    }

    #[test]
    fn cutoffs_partition_unity() {
        let (t, _) = setup(quartic_simplex());
        let loc = BaseLocator::new(&t);
        for s in boundary_sample(&t, 300) {
            let l = loc.locate(&s).unwrap();
            let total: Q = loc.rho0(&l).values().cloned().sum();
            assert_eq!(total, Q::one());
            let rho = loc.rho(&l);
            assert!(rho.iter().all(|r| !r.is_negative() && *r <= Q::one()));
            if l.pure {
                for &p in &t.boundary().simplices()[l.cell] {
                    assert_eq!(rho[p], Q::one());
                }
            }
        }
    }

    #[test]
    fn cubic_zero_section() {
        let (t, lam) = setup(cubic_triangle());
        let loc = BaseLocator::new(&t);
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let family = FamilyPoint::real(1e3).unwrap();
        let cfg = t.config();
        let e = [cfg.index_of(&[2, -1]).unwrap(), cfg.index_of(&[-1, 2]).unwrap()];
        let s = center(cfg, &e);
        let sp = zero_section(&loc, &model, &s, &family).unwrap();
        assert!(sp.residual < 1e-10, "{}", sp.residual);
        assert!(sp.theta > 0.25 && sp.theta < 1.0);
        // the swap x ↔ y fixes s, so the section point has equal radii
        assert!((sp.point.log_radii[0] - sp.point.log_radii[1]).abs() < 1e-9);
        let v = auxiliary_eval(&loc, &model, &sp.point, &family).unwrap();
        assert!(v.norm() / 1e3 < 1e-10);
        assert_eq!(section_sign_changes(&loc, &model, &s, &family, 2000).unwrap(), 1);
    }

    #[test]
    fn cubic_vertex_fiber_is_a_circle() {
        let (t, lam) = setup(cubic_triangle());
        let loc = BaseLocator::new(&t);
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let family = FamilyPoint::real(1e3).unwrap();
        let s = t.config().point_q(t.config().index_of(&[2, -1]).unwrap());
        let fs = fiber_sample(&loc, &model, &s, &family, FiberGrid { base: 8, fiber: 64 }).unwrap();
        assert_eq!(fs.chart.l, 0);
        assert_eq!(fs.points.len(), 64);
        let r0 = &fs.points[0].log_radii;
        assert!(fs.points.iter().all(|p| (p.log_radii[0] - r0[0]).abs() < 1e-12));
        assert!(fs.max_residual(&loc, &model, &family).unwrap() < 1e-9);
    }

    #[test]
    fn quartic_edge_has_four_pinches() {
        let (t, lam) = setup(quartic_simplex());
        let loc = BaseLocator::new(&t);
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let family = FamilyPoint::real(1e3).unwrap();
        let cfg = t.config();
        let e = [cfg.index_of(&[-1, -1, -1]).unwrap(), cfg.index_of(&[3, -1, -1]).unwrap()];
        let fs = fiber_sample(&loc, &model, &center(cfg, &e), &family, FiberGrid { base: 4096, fiber: 1 }).unwrap();
        assert_eq!(fs.degenerate_phases.len(), 4);
        assert_eq!(fs.model_count, Some(1));
        assert!(fs.max_residual(&loc, &model, &family).unwrap() < 1e-8);
    }

    #[test]
    fn chi_properties() {
        let (t, lam) = setup(cubic_triangle());
        let loc = BaseLocator::new(&t);
        let chi = chi_family(&t, &lam).unwrap();
        let cfg = t.config();
        for (tau, f) in t.boundary().simplices().iter().zip(&chi.chis) {
            for p in 0..cfg.len() {
                let v = f.eval(&cfg.rel(p));
                if p == cfg.origin_index || tau.contains(&p) {
                    assert_eq!(v, lam.q(p));
                } else {
                    assert!(v > lam.q(p));
                }
            }
        }
        let samples = boundary_sample(&t, 60);
        let r2 = deformation_bridge_check(&loc, &lam, &chi, &samples, 2.0).unwrap();
        let r10 = deformation_bridge_check(&loc, &lam, &chi, &samples, 10.0).unwrap();
        assert!(r10.max_epsilon < r2.max_epsilon);
        assert!(r2.origin_residual < 1e-12 && r2.zero_gamma_residual < 1e-12);
        assert!(r10.substitution_identity);
    }
}
