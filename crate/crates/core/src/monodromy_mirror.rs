//! Monodromy by section translation and the lattice data of the mirror.

use num_traits::{Signed, Zero};

use crate::arith::{self, q, Q};
use crate::base_complex::{DualPolytope, NuMap};
use crate::error::{Error, Result};
use crate::intlattice;
use crate::triangulation::{covering_degree, fmt_simplex, CentralTriangulation, LiftVector};

/// Fiber translation over the cell `W_τ`: `x^ω ↦ x^ω e^{2πi⟨ν′, ω − 0⟩}`.
#[derive(Clone, Debug)]
pub struct TranslationDatum {
    pub tau: Vec<usize>,
    /// `ν′ = O(τ∨)`.
    pub nu_point: Vec<Q>,
    /// `ν′` modulo the dual lattice, componentwise in `[0, 1)`.
    pub phase_vector: Vec<Q>,
    /// `(ω, ⟨ν′, ω − 0⟩)` for ω ∈ τ.
    pub pairings: Vec<(usize, Q)>,
    /// Every pairing is an integer, so the cell's monomials are fixed.
    pub integral: bool,
}

pub fn translation_data(
    t: &CentralTriangulation,
    lambda: &LiftVector,
    dual: &DualPolytope,
    nu: &NuMap,
) -> Result<Vec<TranslationDatum>> {
    let cfg = t.config();
    let o = cfg.origin_index;
    nu.pairs
        .iter()
        .map(|(tau, _, nu_point)| {
            let mut pairings = Vec::with_capacity(tau.len());
            for &w in tau {
                let p = arith::dot_qi(nu_point, &cfg.rel(w));
                let want = &dual.gamma * (lambda.q(w) - lambda.q(o));
                if p != want {
                    return Err(Error::Internal(format!(
                        "ν′ of {} pairs to {} with {}, expected {}",
                        fmt_simplex(cfg, tau),
                        arith::fmt_q(&p),
                        arith::fmt_ivec(&cfg.rel(w)),
                        arith::fmt_q(&want)
                    )));
                }
                pairings.push((w, p));
            }
            let integral = pairings.iter().all(|(_, p)| arith::is_integral(p));
            let phase_vector = nu_point.iter().map(|x| x - x.floor()).collect();
            Ok(TranslationDatum {
                tau: tau.clone(),
                nu_point: nu_point.clone(),
                phase_vector,
                pairings,
                integral,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCount {
    pub total: i64,
    /// One unit twist per region `U_ω`, ω a vertex of `∂T`.
    pub per_region: Vec<(usize, i64)>,
}

/// For curves: each vertex region `U_ω` contributes one Dehn twist about
/// the fiber class as `arg t` runs once around.
pub fn dehn_twist_count(t: &CentralTriangulation) -> Result<TwistCount> {
    if t.dim() != 2 {
        return Err(Error::domain("Dehn twist count is defined for N = 2 only"));
    }
    let per_region: Vec<(usize, i64)> = t.boundary().vertex_points().into_iter().map(|w| (w, 1)).collect();
    Ok(TwistCount {
        total: per_region.iter().map(|r| r.1).sum(),
        per_region,
    })
}

/// Monodromy on `H_1` of the total torus in the basis (fiber, section).
pub fn monodromy_matrix_2d(t: &CentralTriangulation) -> Result<[[i64; 2]; 2]> {
    let c = dehn_twist_count(t)?.total;
    Ok([[1, c], [0, 1]])
}

pub fn is_unipotent_2d(m: &[[i64; 2]; 2]) -> bool {
    let a = [[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]];
    (0..2).all(|i| (0..2).all(|j| (0..2).map(|k| a[i][k] * a[k][j]).sum::<i64>() == 0))
}

#[derive(Clone, Debug)]
pub struct FiberLatticeDecomposition {
    pub tau: Vec<usize>,
    /// Hermite basis of `Λ_τ`, spanned by vertex differences.
    pub vertex_lattice: Vec<Vec<i64>>,
    /// Basis of `τ_Z`, the saturation (rank k).
    pub tau_z: Vec<Vec<i64>>,
    /// `[τ_Z : Λ_τ]`.
    pub index: i64,
    /// Basis of `τ*_Z` in the dual lattice, dual to `tau_z`.
    pub tau_star: Vec<Vec<i64>>,
    /// Basis of `τ∨_Z`: the integer annihilator of the vertices of τ (rank N − 1 − k).
    pub dual_face_lattice: Vec<Vec<i64>>,
    /// Basis of `(τ∨_Z)*` in the primal lattice, dual to `dual_face_lattice`.
    pub dual_face_star: Vec<Vec<i64>>,
    /// Ranks of `τ*_R/τ*_Z ⊕ τ∨_R/τ∨_Z`.
    pub fiber_ranks: (usize, usize),
    /// Ranks of `τ_R/τ_Z ⊕ (τ∨_R)*/(τ∨_Z)*`.
    pub dual_fiber_ranks: (usize, usize),
    /// Both pairing matrices are the identity.
    pub perfect_pairing: bool,
    /// `τ∨_Z` annihilates `τ_Z`.
    pub orthogonal: bool,
}

fn pairing(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|x| b.iter().map(|y| x.iter().zip(y).map(|(p, q)| p * q).sum()).collect())
        .collect()
}

fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}

/// Basis of the lattice dual to `basis` inside `Z^n`: rows pairing with
/// `basis` to the identity.
fn dual_basis(basis: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    let k = basis.len();
    let (_, inv) = intlattice::complete_basis(basis, n)
        .ok_or_else(|| Error::Internal("lattice is not saturated".into()))?;
    Ok((0..k).map(|j| (0..n).map(|i| inv[i][j]).collect()).collect())
}

pub fn fiber_lattice_decomposition(t: &CentralTriangulation, tau: &[usize]) -> Result<FiberLatticeDecomposition> {
    if !t.boundary().contains(tau) {
        return Err(Error::domain("τ is not a simplex of ∂T"));
    }
    let cfg = t.config();
    let n = t.dim();
    let rels: Vec<Vec<i64>> = tau.iter().map(|&p| cfg.rel(p)).collect();
    let diffs: Vec<Vec<i64>> = rels[1..]
        .iter()
        .map(|r| r.iter().zip(&rels[0]).map(|(a, b)| a - b).collect())
        .collect();
    let vertex_lattice = intlattice::lattice_basis(&diffs, n);
    let tau_z = intlattice::saturation(&diffs, n);
    let verts: Vec<Vec<i64>> = tau.iter().map(|&p| cfg.points[p].clone()).collect();
    let index = covering_degree(&verts);
    let k = tau_z.len();
    let tau_star = dual_basis(&tau_z, n)?;
    let dual_face_lattice = intlattice::saturation(&intlattice::kernel(&rels, n), n);
    let dual_face_star = dual_basis(&dual_face_lattice, n)?;
    let r = dual_face_lattice.len();
    let perfect_pairing = is_identity(&pairing(&tau_z, &tau_star)) && is_identity(&pairing(&dual_face_lattice, &dual_face_star));
    let orthogonal = pairing(&tau_z, &dual_face_lattice).iter().flatten().all(|&x| x == 0);
    Ok(FiberLatticeDecomposition {
        tau: tau.to_vec(),
        vertex_lattice,
        tau_z,
        index,
        tau_star,
        dual_face_lattice,
        dual_face_star,
        fiber_ranks: (k, r),
        dual_fiber_ranks: (k, r),
        perfect_pairing,
        orthogonal,
    })
}

/// `[κ_γ] = −Σ γ(λ(ω) − λ(0)) [ω∨]` over the vertices ω of `∂T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerClassVector {
    pub gamma: Q,
    pub coefficients: Vec<(usize, Q)>,
    /// All coefficients are positive. Reported only.
    pub positive: bool,
}

pub fn kahler_class(t: &CentralTriangulation, lambda: &LiftVector, gamma: &Q) -> Result<KahlerClassVector> {
    if !gamma.is_positive() {
        return Err(Error::domain("γ must be positive"));
    }
    let o = t.config().origin_index;
    let coefficients: Vec<(usize, Q)> = t
        .boundary()
        .vertex_points()
        .into_iter()
        .map(|w| (w, -(gamma * (lambda.q(w) - lambda.q(o)))))
        .collect();
    let positive = coefficients.iter().all(|(_, c)| c > &Q::zero());
    Ok(KahlerClassVector {
        gamma: gamma.clone(),
        coefficients,
        positive,
    })
}

/// `k + (N − 1 − k) = N − 1` over every simplex of `∂T`.
pub fn rank_sums_hold(t: &CentralTriangulation) -> Result<bool> {
    let n = t.dim();
    for tau in t.boundary().simplices() {
        let d = fiber_lattice_decomposition(t, tau)?;
        if d.fiber_ranks.0 + d.fiber_ranks.1 + 1 != n || d.fiber_ranks.0 + 1 != tau.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn gamma_from_f64(g: f64) -> Result<Q> {
    let gq = Q::from_float(g).ok_or_else(|| Error::domain("γ must be finite"))?;
    if gq <= q(0) {
        return Err(Error::domain("γ must be positive"));
    }
    Ok(gq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use crate::base_complex::{dual_polytope, nu_map};
    use crate::lattice_core::{cubic_triangle, quartic_simplex, LatticePolytope, PointConfiguration};
    use crate::triangulation::{build_central_triangulation, Strategy};

    fn vertex_only(p: LatticePolytope) -> (CentralTriangulation, LiftVector) {
        let cfg = PointConfiguration::vertices_and_origin(p).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
        let lam = LiftVector::origin_spike(&cfg, 1);
        (t, lam)
    }

    fn data(t: &CentralTriangulation, lam: &LiftVector, g: Q) -> Vec<TranslationDatum> {
        let dual = dual_polytope(t, lam, &g).unwrap();
        let nu = nu_map(t, &dual).unwrap();
        translation_data(t, lam, &dual, &nu).unwrap()
    }

    #[test]
    fn cubic_translations() {
        let (t, lam) = vertex_only(cubic_triangle());
        let cfg = t.config();
        let v = cfg.index_of(&[2, -1]).unwrap();
        let d = data(&t, &lam, q(1));
        let dv = d.iter().find(|d| d.tau == vec![v]).unwrap();
        assert_eq!(dv.nu_point, vec![qr(-1, 2), q(0)]);
        assert_eq!(dv.pairings, vec![(v, q(-1))]);
        assert_eq!(dv.phase_vector, vec![qr(1, 2), q(0)]);
        let e = vec![v, cfg.index_of(&[-1, 2]).unwrap()];
        let mut e_sorted = e.clone();
        e_sorted.sort_unstable();
        let de = d.iter().find(|d| d.tau == e_sorted).unwrap();
        assert_eq!(de.nu_point, vec![q(-1), q(-1)]);
        assert!(d.iter().all(|x| x.integral));
        let d2 = data(&t, &lam, q(2));
        assert!(d2.iter().zip(&d).all(|(a, b)| a.pairings.iter().zip(&b.pairings).all(|(x, y)| x.1 == &y.1 * q(2))));
        assert!(!data(&t, &lam, qr(1, 2)).iter().all(|x| x.integral));
    }

    #[test]
    fn twists_and_matrix() {
        let (t, _) = vertex_only(cubic_triangle());
        assert_eq!(dehn_twist_count(&t).unwrap().total, 3);
        let m = monodromy_matrix_2d(&t).unwrap();
        assert_eq!(m, [[1, 3], [0, 1]]);
        assert!(is_unipotent_2d(&m));
        let cfg = PointConfiguration::all_points(cubic_triangle()).unwrap();
        let t9 = build_central_triangulation(&cfg, Strategy::Placing).unwrap();
        assert_eq!(dehn_twist_count(&t9).unwrap().total, 9);
        let sq = LatticePolytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], None).unwrap();
        let (ts, _) = vertex_only(sq);
        assert_eq!(dehn_twist_count(&ts).unwrap().total, 4);
        let (t4, _) = vertex_only(quartic_simplex());
        assert!(matches!(dehn_twist_count(&t4), Err(Error::Domain(_))));
        // a unimodular change of basis keeps trace 2 and determinant 1
        let p = [[2i64, 1], [1, 1]];
        let pinv = [[1i64, -1], [-1, 2]];
        let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            let mut c = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            c
        };
        let c = mul(mul(p, m), pinv);
        assert_eq!(c[0][0] + c[1][1], 2);
        assert_eq!(c[0][0] * c[1][1] - c[0][1] * c[1][0], 1);
        assert!(is_unipotent_2d(&c));
    }

    #[test]
    fn lattice_decompositions() {
        let (t, _) = vertex_only(cubic_triangle());
        let v = t.config().index_of(&[2, -1]).unwrap();
        let d = fiber_lattice_decomposition(&t, &[v]).unwrap();
        assert_eq!(d.fiber_ranks, (0, 1));
        assert_eq!(d.dual_fiber_ranks, (0, 1));
        assert!(rank_sums_hold(&t).unwrap());

        let (t4, _) = vertex_only(quartic_simplex());
        let cfg = t4.config();
        let e = {
            let mut e = vec![cfg.index_of(&[-1, -1, -1]).unwrap(), cfg.index_of(&[3, -1, -1]).unwrap()];
            e.sort_unstable();
            e
        };
        let d = fiber_lattice_decomposition(&t4, &e).unwrap();
        assert_eq!(d.tau_z.len(), 1);
        assert_eq!(d.index, 4);
        assert_eq!(intlattice::saturation_index(&d.vertex_lattice), 4);
        assert_eq!(d.fiber_ranks, (1, 1));
        assert!(d.perfect_pairing && d.orthogonal);
        assert!(rank_sums_hold(&t4).unwrap());
    }

    #[test]
    fn kahler_vectors() {
        let (t, lam) = vertex_only(cubic_triangle());
        let k = kahler_class(&t, &lam, &q(1)).unwrap();
        assert!(k.coefficients.iter().all(|(_, c)| *c == q(1)));
        assert!(k.positive);
        let k2 = kahler_class(&t, &lam, &q(2)).unwrap();
        assert!(k2.coefficients.iter().all(|(_, c)| *c == q(2)));
        assert!(kahler_class(&t, &lam, &q(0)).is_err());
    }
}
