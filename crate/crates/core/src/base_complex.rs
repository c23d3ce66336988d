//! Combinatorics of the fibration base: barycentric subdivisions of `∂T`,
//! the W-cell complex, the dual polytope `Δ∨_γ` and discriminant skeletons.
//!
//! Metric point location uses the first barycentric subdivision. A point
//! `s` of `∂Δ` with barycentric coordinates `b` on `∂T` has coordinate
//! `c_τ(s) = |τ|·max(0, min_{ω∈τ} b_ω − max_{ω∉τ} b_ω)` at the vertex
//! `O(τ)` of its `Bar(∂T)` simplex. The star of `O(τ)` in `Bar²(∂T)` is
//! where `c_τ` is largest, and the open neighborhood `V_τ` is where
//! `c_τ > max_τ' c_τ' − δ`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{self, q, qr, Q};
use crate::error::{Error, Result};
use crate::intlattice::combinations;
use crate::lattice_core::PointConfiguration;
use crate::triangulation::{BoundaryComplex, CentralTriangulation, LiftVector};

/// A simplicial complex listing all of its faces, with exact vertex
/// coordinates and a tag recording where each vertex came from.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub coords: Vec<Vec<Q>>,
    /// For `Bar(∂T)`: `[τ]`; for `Bar²(∂T)`: the chain `τ_1 ⊂ … ⊂ τ_j`.
    /// Entries are indices into `BoundaryComplex::simplices`.
    pub tags: Vec<Vec<usize>>,
    /// All nonempty faces (vertex index lists), sorted by size then lex.
    pub faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().filter(move |f| f.len() == d + 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Barycentric subdivision: one vertex per face, one simplex per chain.
    pub fn subdivide(&self) -> SimplicialComplex {
        let coords: Vec<Vec<Q>> = self
            .faces
            .iter()
            .map(|f| arith::centroid_q(&f.iter().map(|&v| self.coords[v].clone()).collect::<Vec<_>>()))
            .collect();
        let tags: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| {
                let mut chain: Vec<usize> = f.iter().flat_map(|&v| self.tags[v].clone()).collect();
                chain.dedup();
                chain
            })
            .collect();
        // supersets[i]: faces strictly containing face i
        let nf = self.faces.len();
        let supersets: Vec<Vec<usize>> = (0..nf)
            .map(|i| {
                (0..nf)
                    .filter(|&j| {
                        self.faces[j].len() > self.faces[i].len()
                            && self.faces[i].iter().all(|v| self.faces[j].contains(v))
                    })
                    .collect()
            })
            .collect();
        let mut faces = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..nf).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for &j in &supersets[last] {
                let mut c = chain.clone();
                c.push(j);
                stack.push(c);
            }
            let mut sorted = chain;
            sorted.sort_unstable();
            faces.push(sorted);
        }
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        SimplicialComplex { coords, tags, faces }
    }
}

/// `∂T` itself as a [`SimplicialComplex`] whose vertices are its 0-simplices.
fn boundary_as_complex(bd: &BoundaryComplex, cfg: &PointConfiguration) -> SimplicialComplex {
    let verts = bd.vertex_points();
    let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let coords = verts.iter().map(|&p| cfg.point_q(p)).collect();
    let tags = verts.iter().map(|&p| vec![bd.position(&[p]).unwrap()]).collect();
    let faces = bd
        .simplices()
        .iter()
        .map(|s| s.iter().map(|p| local[p]).collect())
        .collect();
    SimplicialComplex { coords, tags, faces }
}

/// First or second barycentric subdivision of `∂T`.
pub fn barycentric(t: &CentralTriangulation, order: u8) -> Result<SimplicialComplex> {
    if !(1..=2).contains(&order) {
        return Err(Error::domain("barycentric order must be 1 or 2"));
    }
    let mut k = boundary_as_complex(t.boundary(), t.config()).subdivide();
    if order == 2 {
        k = k.subdivide();
    }
    Ok(k)
}

/// One W-cell, indexed by the boundary simplex `τ` it is dual to.
#[derive(Clone, Debug)]
pub struct WCell {
    /// Point indices of τ.
    pub tau: Vec<usize>,
    /// Dimension of the dual cell, `N − 1 − dim τ`.
    pub dim: usize,
    /// Cells `W_τ'` with `τ' ⊋ τ`, `dim τ' = dim τ + 1` (the boundary cells).
    pub boundary: Vec<usize>,
    /// Cells `W_τ'` with `τ' ⊊ τ`, `dim τ' = dim τ − 1`.
    pub coboundary: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WCellComplex {
    /// Cells in the order of `BoundaryComplex::simplices`.
    pub cells: Vec<WCell>,
    pub ambient_dim: usize,
}

impl WCellComplex {
    /// Whether the cells of simplices `i` and `j` meet: exactly when one
    /// simplex contains the other.
    pub fn meets(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.cells[i].tau, &self.cells[j].tau);
        BoundaryComplex::is_subface(a, b) || BoundaryComplex::is_subface(b, a)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

pub fn w_decomposition(t: &CentralTriangulation) -> WCellComplex {
    let bd = t.boundary();
    let n = t.dim();
    let simplices = bd.simplices();
    let cells = simplices
        .iter()
        .map(|tau| {
            let boundary = (0..simplices.len())
                .filter(|&j| simplices[j].len() == tau.len() + 1 && BoundaryComplex::is_subface(tau, &simplices[j]))
                .collect();
            let coboundary = (0..simplices.len())
                .filter(|&j| simplices[j].len() + 1 == tau.len() && BoundaryComplex::is_subface(&simplices[j], tau))
                .collect();
            WCell {
                tau: tau.clone(),
                dim: n - tau.len(),
                boundary,
                coboundary,
            }
        })
        .collect();
    WCellComplex {
        cells,
        ambient_dim: n,
    }
}

/// Exact location of a boundary point in the W-cell model.
#[derive(Clone, Debug)]
pub struct Location {
    /// Index into `BoundaryComplex::maximal` of a simplex containing `s`.
    pub sigma: usize,
    /// Barycentric coordinates of `s` on `∂T`, keyed by point index
    /// (only the vertices of `sigma` can be nonzero).
    pub bary: BTreeMap<usize, Q>,
    /// `Bar(∂T)` coordinates `c_τ`, keyed by `BoundaryComplex` index (nonzero only).
    pub bar: BTreeMap<usize, Q>,
    /// `{τ : c_τ ≥ max c − δ}`, a chain, ascending by dimension.
    pub cover: Vec<usize>,
    /// The W-cell containing `s`: the largest member of `cover`.
    pub cell: usize,
    /// True when `s` lies in the pure region `U_cell`.
    pub pure: bool,
}

/// Overlap width `δ = 1/(4N)` of the `V_τ` neighborhoods.
pub fn default_delta(n: usize) -> Q {
    qr(1, 4 * n as i64)
}

/// Point location and cut-off functions on `∂Δ`.
#[derive(Clone, Debug)]
pub struct BaseLocator<'a> {
    pub t: &'a CentralTriangulation,
    pub delta: Q,
}

impl<'a> BaseLocator<'a> {
    pub fn new(t: &'a CentralTriangulation) -> Self {
        BaseLocator {
            t,
            delta: default_delta(t.dim()),
        }
    }

    pub fn locate(&self, s: &[Q]) -> Result<Location> {
        let t = self.t;
        let cfg = t.config();
        if !cfg.polytope.on_boundary_q(s) {
            return Err(Error::domain(format!("{} is not on ∂Δ", arith::fmt_qvec(s))));
        }
        let bd = t.boundary();
        for (si, sigma) in bd.maximal().iter().enumerate() {
            let verts: Vec<Vec<Q>> = sigma.iter().map(|&p| cfg.point_q(p)).collect();
            let Some(b) = crate::triangulation::barycentric(&verts, s) else {
                continue;
            };
            if b.iter().any(|x| x.is_negative()) {
                continue;
            }
            let bary: BTreeMap<usize, Q> = sigma.iter().copied().zip(b).collect();
            return Ok(self.locate_bary(si, bary));
        }
        Err(Error::Internal("boundary point not covered by ∂T".into()))
    }

    /// Location from barycentric coordinates on the maximal simplex `si`.
    pub fn locate_bary(&self, si: usize, bary: BTreeMap<usize, Q>) -> Location {
        let bd = self.t.boundary();
        let sigma = &bd.maximal()[si];
        let mut bar = BTreeMap::new();
        // every τ ⊆ σ; faces outside σ have c_τ = 0 for s ∈ σ
        for k in 1..=sigma.len() {
            for sub in combinations(sigma.len(), k) {
                let tau: Vec<usize> = sub.iter().map(|&i| sigma[i]).collect();
                let inside = tau.iter().map(|p| &bary[p]).min().unwrap().clone();
                let outside = sigma
                    .iter()
                    .filter(|p| !tau.contains(p))
                    .map(|p| bary[p].clone())
                    .max()
                    .unwrap_or_else(Q::zero);
                let c = (inside - outside) * q(k as i64);
                if c.is_positive() {
                    bar.insert(bd.position(&tau).unwrap(), c);
                }
            }
        }
        let m = bar.values().max().cloned().unwrap_or_else(Q::zero);
        let threshold = &m - &self.delta;
        let mut cover: Vec<usize> = bar
            .iter()
            .filter(|(_, c)| **c >= threshold)
            .map(|(&i, _)| i)
            .collect();
        cover.sort_by_key(|&i| (bd.simplices()[i].len(), i));
        let cell = *cover.last().expect("maximum attains the threshold");
        let pure = bar
            .iter()
            .all(|(&i, c)| if i == cell { *c > threshold } else { *c < threshold });
        Location {
            sigma: si,
            bary,
            bar,
            cover,
            cell,
            pure,
        }
    }

    /// `ρ⁰_τ(s)` for every τ with nonzero value, keyed by `BoundaryComplex` index.
    pub fn rho0(&self, loc: &Location) -> BTreeMap<usize, Q> {
        let m = loc.bar.values().max().cloned().unwrap_or_else(Q::zero);
        let threshold = &m - &self.delta;
        let raw: BTreeMap<usize, Q> = loc
            .bar
            .iter()
            .filter(|(_, c)| **c > threshold)
            .map(|(&i, c)| (i, c - &threshold))
            .collect();
        let total: Q = raw.values().cloned().sum();
        raw.into_iter().map(|(i, v)| (i, v / &total)).collect()
    }

    /// `ρ_ω(s)` for every point of `A`: `Σ_{τ∋ω} ρ⁰_τ` on vertices of `∂T`,
    /// 1 at the origin and 0 at points that are not vertices of `T`.
    pub fn rho(&self, loc: &Location) -> Vec<Q> {
        let cfg = self.t.config();
        let bd = self.t.boundary();
        let mut out = vec![Q::zero(); cfg.len()];
        out[cfg.origin_index] = Q::one();
        for (i, r) in self.rho0(loc) {
            for &p in &bd.simplices()[i] {
                out[p] += &r;
            }
        }
        out
    }
}

/// Center `O(τ)` of a simplex given by point indices.
pub fn center(cfg: &PointConfiguration, tau: &[usize]) -> Vec<Q> {
    arith::centroid_q(&tau.iter().map(|&p| cfg.point_q(p)).collect::<Vec<_>>())
}

/// `Δ∨_γ = {m : ⟨m, ω − 0⟩ ≥ γ(λ(ω) − λ(0))}` over the vertices of `∂T`.
#[derive(Clone, Debug)]
pub struct DualPolytope {
    pub gamma: Q,
    /// Point indices ω of the inequalities, ascending.
    pub omegas: Vec<usize>,
    /// `(normal ω − 0, right-hand side γ(λ(ω) − λ(0)))` per inequality.
    pub inequalities: Vec<(Vec<i64>, Q)>,
    /// Vertices in lexicographic order.
    pub vertices: Vec<Vec<Q>>,
    /// For each vertex, the inequalities (positions in `omegas`) tight there.
    pub tight: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct DualFace {
    pub tau: Vec<usize>,
    /// Indices into `DualPolytope::vertices`.
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub centroid: Vec<Q>,
}

pub fn dual_polytope(t: &CentralTriangulation, lambda: &LiftVector, gamma: &Q) -> Result<DualPolytope> {
    if !gamma.is_positive() {
        return Err(Error::domain("γ must be positive"));
    }
    let cfg = t.config();
    let n = t.dim();
    let o = cfg.origin_index;
    let omegas = t.boundary().vertex_points();
    let inequalities: Vec<(Vec<i64>, Q)> = omegas
        .iter()
        .map(|&w| (cfg.rel(w), gamma * (lambda.q(w) - lambda.q(o))))
        .collect();
    let mut verts: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for sub in combinations(inequalities.len(), n) {
        let a: Vec<Vec<Q>> = sub.iter().map(|&i| arith::qvec(&inequalities[i].0)).collect();
        let b: Vec<Q> = sub.iter().map(|&i| inequalities[i].1.clone()).collect();
        let Some(m) = arith::solve(&a, &b) else { continue };
        if verts.contains_key(&m) {
            continue;
        }
        let mut tight = Vec::new();
        let mut feasible = true;
        for (i, (nrm, rhs)) in inequalities.iter().enumerate() {
            let v = arith::dot_qi(&m, nrm);
            if v < *rhs {
                feasible = false;
                break;
            }
            if v == *rhs {
                tight.push(i);
            }
        }
        if feasible {
            verts.insert(m, tight);
        }
    }
    let (vertices, tight): (Vec<Vec<Q>>, Vec<Vec<usize>>) = verts.into_iter().unzip();
    if vertices.is_empty() || arith::affine_dim(&vertices) < n {
        return Err(Error::domain(
            "Δ∨_γ has empty interior; λ is not strictly convex for T",
        ));
    }
    Ok(DualPolytope {
        gamma: gamma.clone(),
        omegas,
        inequalities,
        vertices,
        tight,
    })
}

impl DualPolytope {
    /// The face where the inequalities of every vertex of τ are tight.
    pub fn dual_face(&self, t: &CentralTriangulation, tau: &[usize]) -> Result<DualFace> {
        if !t.boundary().contains(tau) {
            return Err(Error::domain("τ is not a simplex of ∂T"));
        }
        let pos: Vec<usize> = tau
            .iter()
            .map(|p| self.omegas.binary_search(p).expect("vertex of ∂T"))
            .collect();
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| pos.iter().all(|i| self.tight[v].contains(i)))
            .collect();
        let pts: Vec<Vec<Q>> = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        if pts.is_empty() {
            return Err(Error::Internal("empty dual face".into()));
        }
        let mut sorted = tau.to_vec();
        sorted.sort_unstable();
        Ok(DualFace {
            tau: sorted,
            dim: arith::affine_dim(&pts),
            centroid: arith::centroid_q(&pts),
            vertices,
        })
    }

    /// Dual faces for every simplex of `∂T`, in `BoundaryComplex` order.
    pub fn all_dual_faces(&self, t: &CentralTriangulation) -> Result<Vec<DualFace>> {
        t.boundary()
            .simplices()
            .iter()
            .map(|tau| self.dual_face(t, tau))
            .collect()
    }
}

/// The maps `O(τ) ↦ O(τ∨)` and `ν′(W_τ) = O(τ∨)`.
#[derive(Clone, Debug)]
pub struct NuMap {
    /// `(τ, O(τ), O(τ∨))` in `BoundaryComplex` order.
    pub pairs: Vec<(Vec<usize>, Vec<Q>, Vec<Q>)>,
    pub bijective: bool,
    /// `τ ⊂ τ'` implies `τ'∨ ⊂ τ∨` and dimensions add to `N − 1`.
    pub anti_isomorphism: bool,
}

pub fn nu_map(t: &CentralTriangulation, dual: &DualPolytope) -> Result<NuMap> {
    let faces = dual.all_dual_faces(t)?;
    let cfg = t.config();
    let n = t.dim();
    let pairs: Vec<(Vec<usize>, Vec<Q>, Vec<Q>)> = faces
        .iter()
        .map(|f| (f.tau.clone(), center(cfg, &f.tau), f.centroid.clone()))
        .collect();
    let mut images: Vec<&Vec<usize>> = faces.iter().map(|f| &f.vertices).collect();
    images.sort();
    images.dedup();
    let bijective = images.len() == faces.len();
    let mut anti = faces.iter().all(|f| f.dim + f.tau.len() == n);
    for a in &faces {
        for b in &faces {
            if BoundaryComplex::is_subface(&a.tau, &b.tau) {
                anti &= b.vertices.iter().all(|v| a.vertices.contains(v));
            }
        }
    }
    Ok(NuMap {
        pairs,
        bijective,
        anti_isomorphism: anti,
    })
}

/// Order complex of a poset of boundary simplices: vertices are the
/// simplices, simplices of the complex are the nonempty chains.
#[derive(Clone, Debug)]
pub struct DiscriminantSkeleton {
    /// Point-index lists of the simplices τ serving as vertices.
    pub vertices: Vec<Vec<usize>>,
    /// Chains, as ascending indices into `vertices`.
    pub simplices: Vec<Vec<usize>>,
}

impl DiscriminantSkeleton {
    fn order_complex(mut vertices: Vec<Vec<usize>>) -> Self {
        vertices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let nv = vertices.len();
        let mut simplices = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..nv).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for j in 0..nv {
                if vertices[j].len() > vertices[last].len()
                    && BoundaryComplex::is_subface(&vertices[last], &vertices[j])
                {
                    let mut c = chain.clone();
                    c.push(j);
                    stack.push(c);
                }
            }
            simplices.push(chain);
        }
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        DiscriminantSkeleton {
            vertices,
            simplices,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == d + 1).count()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Dimension of the minimal face `Θ_τ` of Δ containing τ.
pub fn theta_dim(t: &CentralTriangulation, tau: &[usize]) -> usize {
    let cfg = t.config();
    let pts: Vec<Vec<Q>> = tau.iter().map(|&p| cfg.point_q(p)).collect();
    match cfg.polytope.minimal_face_q(&pts) {
        Some(f) => cfg.polytope.faces()[f].dim,
        None => cfg.dim(),
    }
}

/// Chains of positive-dimensional simplices of `∂T` lying in the
/// `(N − 2)`-skeleton of `∂Δ`. Empty for `N < 3`.
pub fn discriminant_skeleton(t: &CentralTriangulation) -> DiscriminantSkeleton {
    let n = t.dim();
    if n < 3 {
        return DiscriminantSkeleton {
            vertices: Vec::new(),
            simplices: Vec::new(),
        };
    }
    let verts: Vec<Vec<usize>> = t
        .boundary()
        .simplices()
        .iter()
        .filter(|tau| tau.len() >= 2 && theta_dim(t, tau) + 2 <= n)
        .cloned()
        .collect();
    DiscriminantSkeleton::order_complex(verts)
}

#[derive(Clone, Debug)]
pub struct MirrorSkeleton {
    /// The dual complex: vertices `O(τ∨)` for surviving τ, chains of `τ∨`.
    pub skeleton: DiscriminantSkeleton,
    pub dual_centers: Vec<Vec<Q>>,
    /// Positive-dimensional τ whose minimal face `Θ_τ` is a facet of Δ.
    pub excluded: Vec<Vec<usize>>,
    /// ν carries the primal skeleton onto this one, vertex- and chain-wise.
    pub isomorphic: bool,
}

pub fn mirror_skeleton(t: &CentralTriangulation, dual: &DualPolytope) -> Result<MirrorSkeleton> {
    let n = t.dim();
    let primal = discriminant_skeleton(t);
    let faces = dual.all_dual_faces(t)?;
    let mut excluded = Vec::new();
    let mut kept = Vec::new();
    for f in &faces {
        // τ∨ lies in the (N − 2)-skeleton of ∂Δ∨ exactly when dim τ ≥ 1
        if f.tau.len() < 2 || n < 3 {
            continue;
        }
        if theta_dim(t, &f.tau) + 1 == n {
            excluded.push(f.tau.clone());
        } else {
            kept.push(f);
        }
    }
    // chains of τ∨ under reverse inclusion of dual vertex sets
    let mut dual_sets: Vec<(Vec<usize>, Vec<usize>)> =
        kept.iter().map(|f| (f.tau.clone(), f.vertices.clone())).collect();
    dual_sets.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let nv = dual_sets.len();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..nv).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        for j in 0..nv {
            let (small, big) = (&dual_sets[j].1, &dual_sets[last].1);
            if small.len() < big.len() && small.iter().all(|v| big.contains(v)) {
                let mut c = chain.clone();
                c.push(j);
                stack.push(c);
            }
        }
        let mut s = chain;
        s.sort_unstable();
        simplices.push(s);
    }
    simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let skeleton = DiscriminantSkeleton {
        vertices: dual_sets.iter().map(|d| d.0.clone()).collect(),
        simplices,
    };
    let dual_centers = kept
        .iter()
        .map(|f| f.centroid.clone())
        .collect::<Vec<_>>();
    let isomorphic = skeleton.vertices == primal.vertices && skeleton.simplices == primal.simplices;
    Ok(MirrorSkeleton {
        skeleton,
        dual_centers,
        excluded,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qvec;
    use crate::lattice_core::{cubic_triangle, quartic_simplex, quintic_simplex};
    use crate::triangulation::{build_central_triangulation, Strategy};

    fn vertex_only(p: crate::lattice_core::LatticePolytope) -> CentralTriangulation {
        let cfg = PointConfiguration::vertices_and_origin(p).unwrap();
        build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap()
    }

    #[test]
    fn subdivision_counts() {
        let t = vertex_only(cubic_triangle());
        let b1 = barycentric(&t, 1).unwrap();
        assert_eq!(b1.num_vertices(), 6);
        assert_eq!(b1.faces_of_dim(1).count(), 6);
        let t4 = vertex_only(quartic_simplex());
        let b1 = barycentric(&t4, 1).unwrap();
        assert_eq!(b1.faces_of_dim(2).count(), 24);
        assert_eq!(b1.euler_characteristic(), 2);
        let b2 = barycentric(&t4, 2).unwrap();
        assert_eq!(b2.faces_of_dim(2).count(), 144);
        assert_eq!(b2.euler_characteristic(), 2);
    }

    #[test]
    fn w_cells() {
        let t = vertex_only(cubic_triangle());
        let w = w_decomposition(&t);
        assert_eq!(w.cells.len(), 6);
        assert_eq!(w.cells.iter().filter(|c| c.dim == 1).count(), 3);
        assert_eq!(w.euler_characteristic(), 0);
        let t4 = vertex_only(quartic_simplex());
        let w = w_decomposition(&t4);
        let count = |d| w.cells.iter().filter(|c| c.dim == d).count();
        assert_eq!((count(2), count(1), count(0)), (4, 6, 4));
        assert_eq!(w.euler_characteristic(), 2);
    }

    #[test]
    fn facet_center_is_pure() {
        let t = vertex_only(quartic_simplex());
        let loc = BaseLocator::new(&t);
        for sigma in t.boundary().maximal() {
            let s = center(t.config(), sigma);
            let l = loc.locate(&s).unwrap();
            assert_eq!(t.boundary().simplices()[l.cell], *sigma);
            assert!(l.pure);
            let r = loc.rho(&l);
            for (p, v) in r.iter().enumerate() {
                let expect = sigma.contains(&p) || p == t.config().origin_index;
                assert_eq!(*v, if expect { Q::one() } else { Q::zero() });
            }
        }
    }

    #[test]
    fn cubic_dual_polytope() {
        let t = vertex_only(cubic_triangle());
        let lam = LiftVector::origin_spike(t.config(), 1);
        let d = dual_polytope(&t, &lam, &q(1)).unwrap();
        assert_eq!(d.vertices, vec![qvec(&[-1, -1]), qvec(&[0, 1]), qvec(&[1, 0])]);
        let d2 = dual_polytope(&t, &lam, &q(2)).unwrap();
        assert_eq!(d2.vertices, vec![qvec(&[-2, -2]), qvec(&[0, 2]), qvec(&[2, 0])]);
        let cfg = t.config();
        let v = cfg.index_of(&[2, -1]).unwrap();
        let f = d.dual_face(&t, &[v]).unwrap();
        assert_eq!(f.dim, 1);
        assert_eq!(f.centroid, vec![qr(-1, 2), q(0)]);
        let e = [v, cfg.index_of(&[-1, 2]).unwrap()];
        let f = d.dual_face(&t, &e).unwrap();
        assert_eq!(f.centroid, qvec(&[-1, -1]));
        let nu = nu_map(&t, &d).unwrap();
        assert!(nu.bijective && nu.anti_isomorphism);
        let flat = LiftVector::origin_spike(cfg, 0);
        assert!(dual_polytope(&t, &flat, &q(1)).is_err());
    }

    #[test]
    fn skeletons() {
        let t = vertex_only(cubic_triangle());
        assert!(discriminant_skeleton(&t).is_empty());
        let t4 = vertex_only(quartic_simplex());
        let sk = discriminant_skeleton(&t4);
        assert_eq!(sk.vertices.len(), 6);
        assert_eq!(sk.dim(), Some(0));
        let lam = LiftVector::origin_spike(t4.config(), 1);
        let d = dual_polytope(&t4, &lam, &q(1)).unwrap();
        let m = mirror_skeleton(&t4, &d).unwrap();
        assert!(m.isomorphic);
        assert_eq!(m.excluded.len(), 4);
        let t5 = vertex_only(quintic_simplex());
        let sk = discriminant_skeleton(&t5);
        assert_eq!(sk.vertices.len(), 20);
        assert_eq!(sk.count_of_dim(1), 30);
        assert_eq!(sk.dim(), Some(1));
    }
}
