//! Central triangulations of `(Δ, A)`, the characteristic function ψ_λ,
//! secondary-cone membership and the search for an interior lift.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{self, q, Q};
use crate::error::{Error, Result};
use crate::intlattice;
use crate::lattice_core::{self, hull_facets, PointConfiguration};
use crate::lp::{self, DualCertificate, LinearProgram, LpOutcome};

/// Barycentric coordinates of `m` with respect to affinely independent
/// `verts`, or `None` when `m` is off their affine hull.
pub fn barycentric(verts: &[Vec<Q>], m: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let k = verts.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|j| (0..k).map(|i| verts[i][j].clone()).collect())
        .collect();
    a.push(vec![Q::one(); k]);
    let mut b = m.to_vec();
    b.push(Q::one());
    arith::solve(&a, &b)
}

/// A function `λ : A → Z`, indexed like the configuration's point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftVector {
    pub values: Vec<i64>,
}

impl LiftVector {
    pub fn new(values: Vec<i64>) -> Self {
        LiftVector { values }
    }

    /// `λ(0) = origin_value`, zero elsewhere.
    pub fn origin_spike(config: &PointConfiguration, origin_value: i64) -> Self {
        let mut values = vec![0; config.len()];
        values[config.origin_index] = origin_value;
        LiftVector { values }
    }

    pub fn q(&self, i: usize) -> Q {
        q(self.values[i])
    }
}

/// An interior wall: the codimension-one face shared by two maximal
/// simplices, with the two opposite vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub face: Vec<usize>,
    pub simplices: [usize; 2],
    pub apexes: [usize; 2],
}

/// The induced triangulation `∂T` of `∂Δ` with all its faces.
#[derive(Clone, Debug)]
pub struct BoundaryComplex {
    /// Every nonempty face, sorted by dimension then indices.
    simplices: Vec<Vec<usize>>,
    maximal: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl BoundaryComplex {
    pub fn from_maximal(mut maximal: Vec<Vec<usize>>) -> Self {
        for s in maximal.iter_mut() {
            s.sort_unstable();
        }
        maximal.sort();
        let mut all = BTreeSet::new();
        for s in &maximal {
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let f: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(f);
            }
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        BoundaryComplex {
            simplices,
            maximal,
            index,
        }
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn maximal(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn position(&self, tau: &[usize]) -> Option<usize> {
        let mut t = tau.to_vec();
        t.sort_unstable();
        self.index.get(&t).copied()
    }

    pub fn contains(&self, tau: &[usize]) -> bool {
        self.position(tau).is_some()
    }

    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// Vertices of `∂T` (point indices), ascending.
    pub fn vertex_points(&self) -> Vec<usize> {
        self.of_dim(0).map(|s| s[0]).collect()
    }

    /// Maximal simplices containing every index of `tau`.
    pub fn star(&self, tau: &[usize]) -> Vec<usize> {
        (0..self.maximal.len())
            .filter(|&i| tau.iter().all(|v| self.maximal[i].contains(v)))
            .collect()
    }

    pub fn is_subface(small: &[usize], big: &[usize]) -> bool {
        small.iter().all(|v| big.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct CentralTriangulation {
    config: PointConfiguration,
    max_simplices: Vec<Vec<usize>>,
    boundary: BoundaryComplex,
    walls: Vec<Wall>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    VertexOnly,
    Placing,
}

impl CentralTriangulation {
    /// Validates and wraps a list of maximal simplices (point indices).
    pub fn new(config: PointConfiguration, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let n = config.dim();
        let o = config.origin_index;
        let mut max_simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        max_simplices.sort();
        let poly = &config.polytope;
        let mut total = 0i64;
        for s in &max_simplices {
            let label = fmt_simplex(&config, s);
            if s.len() != n + 1 || s.iter().any(|&i| i >= config.len()) {
                return Err(Error::domain(format!("simplex {label} has wrong size or bad index")));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("simplex {label} repeats a point")));
            }
            if !s.contains(&o) {
                return Err(Error::domain(format!("simplex {label} does not contain the origin")));
            }
            let pts: Vec<Vec<i64>> = s.iter().map(|&i| config.points[i].clone()).collect();
            total += lattice_core::normalized_volume(&pts)?;
            let base: Vec<usize> = s.iter().copied().filter(|&i| i != o).collect();
            let on_facet = poly.facets().iter().any(|f| {
                base.iter()
                    .all(|&i| lattice_core::dot(&f.normal, &config.points[i]) == f.offset)
            });
            if !on_facet {
                return Err(Error::domain(format!(
                    "simplex {label} has its base off the boundary of Δ"
                )));
            }
        }
        let expected = lattice_core::polytope_normalized_volume(poly);
        if total != expected {
            return Err(Error::domain(format!(
                "normalized volumes sum to {total}, Δ has {expected}"
            )));
        }
        // Codimension-one faces through the origin must be shared by exactly
        // two simplices lying on opposite sides.
        let mut faces: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (si, s) in max_simplices.iter().enumerate() {
            for &drop in s {
                if drop == o {
                    continue;
                }
                let f: Vec<usize> = s.iter().copied().filter(|&i| i != drop).collect();
                faces.entry(f).or_default().push((si, drop));
            }
        }
        let mut walls = Vec::new();
        for (face, sides) in faces {
            if sides.len() != 2 {
                return Err(Error::domain(format!(
                    "face {} lies in {} maximal simplices",
                    fmt_simplex(&config, &face),
                    sides.len()
                )));
            }
            let s0: Vec<Vec<Q>> = max_simplices[sides[0].0].iter().map(|&i| config.point_q(i)).collect();
            let pos = max_simplices[sides[0].0].iter().position(|&i| i == sides[0].1).unwrap();
            let beta = barycentric(&s0, &config.point_q(sides[1].1))
                .ok_or_else(|| Error::Internal("degenerate simplex".into()))?;
            if !beta[pos].is_negative() {
                return Err(Error::domain(format!(
                    "simplices across face {} overlap",
                    fmt_simplex(&config, &face)
                )));
            }
            walls.push(Wall {
                face,
                simplices: [sides[0].0, sides[1].0],
                apexes: [sides[0].1, sides[1].1],
            });
        }
        let boundary = BoundaryComplex::from_maximal(
            max_simplices
                .iter()
                .map(|s| s.iter().copied().filter(|&i| i != o).collect())
                .collect(),
        );
        Ok(CentralTriangulation {
            config,
            max_simplices,
            boundary,
            walls,
        })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn max_simplices(&self) -> &[Vec<usize>] {
        &self.max_simplices
    }

    pub fn boundary(&self) -> &BoundaryComplex {
        &self.boundary
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Point indices used as vertices of `T` (origin included).
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.max_simplices.iter().flatten().copied().collect()
    }

    /// Index of a maximal simplex containing `m`, with barycentric coordinates.
    pub fn locate(&self, m: &[Q]) -> Result<(usize, Vec<Q>)> {
        if !self.config.polytope.contains_q(m) {
            return Err(Error::domain(format!("point {} lies outside Δ", arith::fmt_qvec(m))));
        }
        for (i, s) in self.max_simplices.iter().enumerate() {
            let verts: Vec<Vec<Q>> = s.iter().map(|&j| self.config.point_q(j)).collect();
            if let Some(b) = barycentric(&verts, m) {
                if b.iter().all(|x| !x.is_negative()) {
                    return Ok((i, b));
                }
            }
        }
        Err(Error::Internal("point of Δ not covered by T".into()))
    }
}

pub fn fmt_simplex(config: &PointConfiguration, s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|&i| arith::fmt_ivec(&config.points[i])).collect();
    format!("{{{}}}", parts.join(","))
}

/// Value at `m` of the T-piecewise-linear extension of `λ`.
pub fn characteristic_eval(t: &CentralTriangulation, lambda: &LiftVector, m: &[Q]) -> Result<Q> {
    let (si, b) = t.locate(m)?;
    Ok(t.max_simplices[si]
        .iter()
        .zip(&b)
        .fold(Q::zero(), |acc, (&i, beta)| acc + beta * lambda.q(i)))
}

/// One strict inequality `row·λ > 0` defining the interior of `C(T)`.
#[derive(Clone, Debug)]
pub struct ConeInequality {
    pub label: String,
    pub row: Vec<Q>,
}

/// Wall inequalities (affine extension from one side strictly exceeds λ at
/// the opposite apex) followed by strict domination `ψ(ω) > λ(ω)` at every
/// point of `A` that is not a vertex of `T`.
pub fn cone_inequalities(t: &CentralTriangulation) -> Vec<ConeInequality> {
    let cfg = &t.config;
    let k = cfg.len();
    let mut out: Vec<ConeInequality> = t
        .walls
        .par_iter()
        .map(|w| {
            let s = &t.max_simplices[w.simplices[0]];
            let verts: Vec<Vec<Q>> = s.iter().map(|&j| cfg.point_q(j)).collect();
            let b = barycentric(&verts, &cfg.point_q(w.apexes[1])).expect("wall apex in span");
            let mut row = vec![Q::zero(); k];
            for (&j, beta) in s.iter().zip(&b) {
                row[j] += beta;
            }
            row[w.apexes[1]] -= Q::one();
            ConeInequality {
                label: format!(
                    "wall {} apex {} vs {}",
                    fmt_simplex(cfg, &w.face),
                    arith::fmt_ivec(&cfg.points[w.apexes[0]]),
                    arith::fmt_ivec(&cfg.points[w.apexes[1]])
                ),
                row,
            }
        })
        .collect();
    let used = t.vertex_set();
    for i in (0..k).filter(|i| !used.contains(i)) {
        let (si, b) = t.locate(&cfg.point_q(i)).expect("A lies in Δ");
        let mut row = vec![Q::zero(); k];
        for (&j, beta) in t.max_simplices[si].iter().zip(&b) {
            row[j] += beta;
        }
        row[i] -= Q::one();
        out.push(ConeInequality {
            label: format!("point {}", arith::fmt_ivec(&cfg.points[i])),
            row,
        });
    }
    out
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub inside: bool,
    /// Inequalities with nonpositive slack, with the slack value.
    pub violations: Vec<(String, Q)>,
    pub checked: usize,
}

pub fn secondary_cone_contains(t: &CentralTriangulation, lambda: &LiftVector) -> MembershipReport {
    let ineqs = cone_inequalities(t);
    let violations: Vec<(String, Q)> = ineqs
        .iter()
        .filter_map(|c| {
            let v = arith::dot_qi(&c.row, &lambda.values);
            (!v.is_positive()).then(|| (c.label.clone(), v))
        })
        .collect();
    MembershipReport {
        inside: violations.is_empty(),
        violations,
        checked: ineqs.len(),
    }
}

/// Finds an integral λ in the interior of `C(T)` by maximizing the minimum
/// slack (capped at 1), or proves there is none.
pub fn find_interior_lambda(t: &CentralTriangulation) -> Result<LiftVector> {
    let ineqs = cone_inequalities(t);
    let k = t.config.len();
    if ineqs.is_empty() {
        return Ok(LiftVector::new(vec![0; k]));
    }
    // Affine functions are a lineality space: pin λ = 0 on the vertices of
    // the first boundary facet, which with the origin span affinely.
    let pinned: BTreeSet<usize> = t.boundary.maximal()[0].iter().copied().collect();
    let free: Vec<usize> = (0..k).filter(|i| !pinned.contains(i)).collect();
    // variables: p_j, q_j for each free point, then s
    let nv = 2 * free.len() + 1;
    let mut prog = LinearProgram::new(nv);
    prog.objective[nv - 1] = Q::one();
    for c in &ineqs {
        // s − row·(p − q) <= 0
        let mut a = vec![Q::zero(); nv];
        for (fj, &j) in free.iter().enumerate() {
            a[2 * fj] = -c.row[j].clone();
            a[2 * fj + 1] = c.row[j].clone();
        }
        a[nv - 1] = Q::one();
        prog.le.push((a, Q::zero()));
    }
    let mut cap = vec![Q::zero(); nv];
    cap[nv - 1] = Q::one();
    prog.le.push((cap, Q::one()));
    let LpOutcome::Optimal { x, value } = prog.solve() else {
        return Err(Error::Internal("slack program is feasible and bounded".into()));
    };
    if value.is_positive() {
        let mut lam = vec![Q::zero(); k];
        for (fj, &j) in free.iter().enumerate() {
            lam[j] = &x[2 * fj] - &x[2 * fj + 1];
        }
        let scale = arith::denominator_lcm(&lam);
        let ints: Vec<BigInt> = lam.iter().map(|v| (v * &scale).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let values = ints
            .iter()
            .map(|v| {
                (v / &g)
                    .to_i64()
                    .ok_or_else(|| Error::Resource("lift value overflows i64".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        let lambda = LiftVector::new(values);
        if !secondary_cone_contains(t, &lambda).inside {
            return Err(Error::Internal("cleared lift failed membership".into()));
        }
        return Ok(lambda);
    }
    let rows: Vec<Vec<Q>> = ineqs.iter().map(|c| c.row.clone()).collect();
    match lp::farkas_zero_combination(&rows) {
        Some(y) => {
            let (labels, multipliers): (Vec<String>, Vec<Q>) = ineqs
                .iter()
                .zip(y)
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c.label.clone(), v))
                .unzip();
            Err(Error::Infeasible(Box::new(DualCertificate { labels, multipliers })))
        }
        None => Err(Error::Internal("zero slack without a dual certificate".into())),
    }
}

/// Checks a certificate: the weighted sum of the named inequality rows is
/// the zero functional and all weights are nonnegative with positive sum.
pub fn verify_certificate(t: &CentralTriangulation, cert: &DualCertificate) -> bool {
    let ineqs = cone_inequalities(t);
    let k = t.config.len();
    let mut sum = vec![Q::zero(); k];
    for (label, y) in cert.labels.iter().zip(&cert.multipliers) {
        let Some(c) = ineqs.iter().find(|c| &c.label == label) else {
            return false;
        };
        if y.is_negative() {
            return false;
        }
        for (s, r) in sum.iter_mut().zip(&c.row) {
            *s += y * r;
        }
    }
    cert.multipliers.iter().any(|y| y.is_positive()) && sum.iter().all(|x| x.is_zero())
}

/// Convex hull of the lifted points `(ω, λ(ω))` split into its upper part.
#[derive(Clone, Debug)]
pub struct ExtendedPolytope {
    pub lifted: Vec<Vec<i64>>,
    /// Point-index sets of the upper faces (facets of `∂₊P`), sorted.
    pub upper_faces: Vec<Vec<usize>>,
    /// Number of facets of `∂₋P` and vertical facets, for reporting.
    pub other_facets: usize,
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub matches: bool,
    pub unmatched_faces: Vec<Vec<usize>>,
    pub unmatched_simplices: Vec<Vec<usize>>,
}

pub fn extended_upper_hull(config: &PointConfiguration, lambda: &LiftVector) -> ExtendedPolytope {
    let n = config.dim();
    let lifted: Vec<Vec<i64>> = config
        .points
        .iter()
        .zip(&lambda.values)
        .map(|(p, &l)| {
            let mut v = p.clone();
            v.push(l);
            v
        })
        .collect();
    let lifted_q: Vec<Vec<Q>> = lifted.iter().map(|v| arith::qvec(v)).collect();
    if arith::affine_dim(&lifted_q) < n + 1 {
        // flat lift: the whole configuration forms one face
        return ExtendedPolytope {
            lifted,
            upper_faces: vec![(0..config.len()).collect()],
            other_facets: 0,
        };
    }
    let facets = hull_facets(&lifted, n + 1);
    let mut upper = Vec::new();
    let mut other = 0;
    for (normal, c) in facets {
        if normal[n] < 0 {
            let pts: Vec<usize> = (0..lifted.len())
                .filter(|&i| lattice_core::dot(&normal, &lifted[i]) == c)
                .collect();
            upper.push(pts);
        } else {
            other += 1;
        }
    }
    upper.sort();
    ExtendedPolytope {
        lifted,
        upper_faces: upper,
        other_facets: other,
    }
}

impl ExtendedPolytope {
    pub fn compare(&self, t: &CentralTriangulation) -> BijectionReport {
        let faces: BTreeSet<&Vec<usize>> = self.upper_faces.iter().collect();
        let simps: BTreeSet<&Vec<usize>> = t.max_simplices.iter().collect();
        let unmatched_faces: Vec<Vec<usize>> = faces.difference(&simps).map(|v| (*v).clone()).collect();
        let unmatched_simplices: Vec<Vec<usize>> =
            simps.difference(&faces).map(|v| (*v).clone()).collect();
        BijectionReport {
            matches: unmatched_faces.is_empty() && unmatched_simplices.is_empty(),
            unmatched_faces,
            unmatched_simplices,
        }
    }
}

/// Lattice points of `conv(verts)` for a lattice simplex.
pub fn simplex_lattice_points(verts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = verts[0].len();
    let lo: Vec<i64> = (0..n).map(|j| verts.iter().map(|v| v[j]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|j| verts.iter().map(|v| v[j]).max().unwrap()).collect();
    let vq: Vec<Vec<Q>> = verts.iter().map(|v| arith::qvec(v)).collect();
    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        if let Some(b) = barycentric(&vq, &arith::qvec(&p)) {
            if b.iter().all(|x| !x.is_negative()) {
                out.push(p.clone());
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if p[j] < hi[j] {
                p[j] += 1;
                for (kk, x) in p.iter_mut().enumerate().skip(j + 1) {
                    *x = lo[kk];
                }
                break;
            }
        }
    }
}

/// Index of the vertex-generated lattice `Λ_τ` in `τ_Z`, the lattice
/// generated by differences of integer points of τ.
pub fn covering_degree(verts: &[Vec<i64>]) -> i64 {
    if verts.len() <= 1 {
        return 1;
    }
    let diffs = |pts: &[Vec<i64>]| -> Vec<Vec<i64>> {
        pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
            .collect()
    };
    let n = verts[0].len();
    let lam = diffs(verts);
    let pts = simplex_lattice_points(verts);
    let tau_z = intlattice::lattice_basis(&diffs(&pts), n);
    intlattice::gcd_maximal_minors(&lam).abs() / intlattice::gcd_maximal_minors(&tau_z).abs()
}

/// Placing triangulation of `points` inserted in the given order. Each
/// point is added by coning from it over the visible boundary faces of the
/// current triangulation (or over everything when it raises the dimension).
pub fn placing_triangulation(points: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let pq: Vec<Vec<Q>> = points.iter().map(|p| arith::qvec(p)).collect();
    let mut simplices: Vec<Vec<usize>> = vec![vec![0]];
    for p in 1..points.len() {
        let s0: Vec<Vec<Q>> = simplices[0].iter().map(|&i| pq[i].clone()).collect();
        if barycentric(&s0, &pq[p]).is_none() {
            for s in simplices.iter_mut() {
                s.push(p);
            }
            continue;
        }
        let mut count: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (si, s) in simplices.iter().enumerate() {
            for &drop in s {
                let f: Vec<usize> = s.iter().copied().filter(|&i| i != drop).collect();
                count.entry(f).or_default().push((si, drop));
            }
        }
        let mut added = Vec::new();
        for (face, owners) in count {
            if owners.len() != 1 {
                continue;
            }
            let (si, apex) = owners[0];
            let s = &simplices[si];
            let verts: Vec<Vec<Q>> = s.iter().map(|&i| pq[i].clone()).collect();
            let b = barycentric(&verts, &pq[p]).expect("same affine hull");
            let pos = s.iter().position(|&i| i == apex).unwrap();
            if b[pos].is_negative() {
                let mut ns = face.clone();
                ns.push(p);
                added.push(ns);
            }
        }
        simplices.extend(added);
    }
    for s in simplices.iter_mut() {
        s.sort_unstable();
    }
    simplices.sort();
    simplices
}

/// Builds a central triangulation of `config`.
///
/// `VertexOnly` cones over the facets of Δ, which must be simplices.
/// `Placing` triangulates every facet of Δ by placing the points of `A`
/// on it in lexicographic order, then cones from the origin; the result is
/// checked for coherence by [`find_interior_lambda`].
pub fn build_central_triangulation(
    config: &PointConfiguration,
    strategy: Strategy,
) -> Result<CentralTriangulation> {
    let poly = &config.polytope;
    let n = config.dim();
    let o = config.origin_index;
    let mut boundary: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in poly.facets() {
        match strategy {
            Strategy::VertexOnly => {
                if f.vertices.len() != n {
                    let face: Vec<Vec<i64>> = f.vertices.iter().map(|&v| poly.vertices()[v].clone()).collect();
                    let parts: Vec<String> = face.iter().map(|v| arith::fmt_ivec(v)).collect();
                    return Err(Error::Strategy(format!(
                        "facet {{{}}} is not a simplex; vertex-only needs simplicial facets",
                        parts.join(",")
                    )));
                }
                let mut s: Vec<usize> = f
                    .vertices
                    .iter()
                    .map(|&v| config.index_of(&poly.vertices()[v]).expect("vertex in A"))
                    .collect();
                s.sort_unstable();
                boundary.insert(s);
            }
            Strategy::Placing => {
                let on: Vec<usize> = (0..config.len())
                    .filter(|&i| lattice_core::dot(&f.normal, &config.points[i]) == f.offset)
                    .collect();
                let pts: Vec<Vec<i64>> = on.iter().map(|&i| config.points[i].clone()).collect();
                for s in placing_triangulation(&pts) {
                    boundary.insert(s.iter().map(|&j| on[j]).collect());
                }
            }
        }
    }
    let simplices: Vec<Vec<usize>> = boundary
        .into_iter()
        .map(|mut s| {
            s.push(o);
            s
        })
        .collect();
    let t = CentralTriangulation::new(config.clone(), simplices)?;
    if strategy == Strategy::Placing {
        find_interior_lambda(&t)?;
    }
    Ok(t)
}

pub fn format_triangulation(t: &CentralTriangulation) -> String {
    let mut s = String::new();
    for simp in &t.max_simplices {
        let parts: Vec<String> = simp.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

pub fn parse_triangulation(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let l = line.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let s = l
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: ln + 1,
                    msg: format!("not a point index: `{tok}`"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        out.push(s);
    }
    Ok(out)
}

pub fn format_lift(lambda: &LiftVector) -> String {
    let mut s = String::new();
    for (i, v) in lambda.values.iter().enumerate() {
        let _ = writeln!(s, "{i} {v}");
    }
    s
}

pub fn parse_lift(text: &str, len: usize) -> Result<LiftVector> {
    let mut values: Vec<Option<i64>> = vec![None; len];
    for (ln, line) in text.lines().enumerate() {
        let l = line.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line: ln + 1, msg };
        if toks.len() != 2 {
            return Err(err("expected `index value`".into()));
        }
        let i: usize = toks[0].parse().map_err(|_| err(format!("bad index `{}`", toks[0])))?;
        let v: i64 = toks[1].parse().map_err(|_| err(format!("bad value `{}`", toks[1])))?;
        if i >= len {
            return Err(err(format!("index {i} out of range (A has {len} points)")));
        }
        if values[i].replace(v).is_some() {
            return Err(err(format!("index {i} assigned twice")));
        }
    }
    let missing: Vec<usize> = (0..len).filter(|&i| values[i].is_none()).collect();
    if let Some(&i) = missing.first() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("no value for index {i}"),
        });
    }
    Ok(LiftVector::new(values.into_iter().map(Option::unwrap).collect()))
}

/// Δ₄ with three extra points on the facet z = −1, that facet carrying
/// the classic non-regular "twisted" triangulation of a side-4 triangle.
pub fn twisted_quartic() -> CentralTriangulation {
    let poly = lattice_core::quartic_simplex();
    let mut pts = poly.vertices().to_vec();
    pts.push(vec![0, 0, 0]);
    pts.extend([vec![0, 0, -1], vec![1, 0, -1], vec![0, 1, -1]]);
    let cfg = PointConfiguration::new(poly, pts).unwrap();
    let id = |p: [i64; 3]| cfg.index_of(&p).unwrap();
    let (a, b, c) = (id([-1, -1, -1]), id([3, -1, -1]), id([-1, 3, -1]));
    let (a1, b1, c1) = (id([0, 0, -1]), id([1, 0, -1]), id([0, 1, -1]));
    let d = id([-1, -1, 3]);
    let o = cfg.origin_index;
    let facet = [
        [a1, b1, c1],
        [a, b, b1],
        [b, c, c1],
        [c, a, a1],
        [a, b1, a1],
        [b, c1, b1],
        [c, a1, c1],
    ];
    let mut simplices: Vec<Vec<usize>> = facet.iter().map(|f| vec![f[0], f[1], f[2], o]).collect();
    simplices.extend([vec![a, b, d, o], vec![b, c, d, o], vec![a, c, d, o]]);
    CentralTriangulation::new(cfg, simplices).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qr, qvec};
    use crate::lattice_core::{cubic_triangle, quartic_simplex};

    fn cubic_vertex_only() -> CentralTriangulation {
        let cfg = PointConfiguration::vertices_and_origin(cubic_triangle()).unwrap();
        build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap()
    }

    #[test]
    fn vertex_only_cubic() {
        let t = cubic_vertex_only();
        assert_eq!(t.max_simplices().len(), 3);
        assert_eq!(t.walls().len(), 3);
        let lam = LiftVector::origin_spike(t.config(), 1);
        assert!(secondary_cone_contains(&t, &lam).inside);
        let flat = LiftVector::origin_spike(t.config(), 0);
        let r = secondary_cone_contains(&t, &flat);
        assert!(!r.inside);
        assert_eq!(r.violations.len(), 3);
    }

    #[test]
    fn wall_value_matches_hand_solve() {
        // On {0,(2,-1),(-1,2)} the lift (1;0,0) extends to 1 - x - y, which
        // takes the value 3 at (-1,-1).
        let t = cubic_vertex_only();
        let cfg = t.config();
        let lam = LiftVector::origin_spike(cfg, 1);
        let ineqs = cone_inequalities(&t);
        let w = ineqs
            .iter()
            .find(|c| c.label.starts_with("wall {(0,0),(2,-1)}"))
            .unwrap();
        assert_eq!(arith::dot_qi(&w.row, &lam.values), q(3));
    }

    #[test]
    fn psi_values() {
        let t = cubic_vertex_only();
        let lam = LiftVector::origin_spike(t.config(), 1);
        assert_eq!(characteristic_eval(&t, &lam, &qvec(&[0, 0])).unwrap(), q(1));
        assert_eq!(characteristic_eval(&t, &lam, &[q(1), qr(-1, 2)]).unwrap(), qr(1, 2));
        assert_eq!(characteristic_eval(&t, &lam, &qvec(&[-1, -1])).unwrap(), q(0));
        assert!(characteristic_eval(&t, &lam, &qvec(&[3, 3])).is_err());
    }

    #[test]
    fn placing_cubic_is_fine_and_coherent() {
        let cfg = PointConfiguration::all_points(cubic_triangle()).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::Placing).unwrap();
        assert_eq!(t.max_simplices().len(), 9);
        for e in t.boundary().maximal() {
            let pts: Vec<Vec<i64>> = e.iter().map(|&i| cfg.points[i].clone()).collect();
            assert_eq!(lattice_core::normalized_volume(&pts).unwrap(), 1);
        }
        let lam = find_interior_lambda(&t).unwrap();
        assert!(secondary_cone_contains(&t, &lam).inside);
        let p = extended_upper_hull(&cfg, &lam);
        assert!(p.compare(&t).matches);
    }

    #[test]
    fn quartic_vertex_only() {
        let cfg = PointConfiguration::vertices_and_origin(quartic_simplex()).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
        assert_eq!(t.max_simplices().len(), 4);
        assert!(secondary_cone_contains(&t, &LiftVector::origin_spike(&cfg, 1)).inside);
        assert_eq!(t.boundary().of_dim(1).count(), 6);
    }

    #[test]
    fn figure_lift_has_three_upper_faces() {
        let cfg = PointConfiguration::vertices_and_origin(cubic_triangle()).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
        let mut lam = LiftVector::origin_spike(&cfg, 1);
        lam.values[cfg.index_of(&[2, -1]).unwrap()] = 2;
        let p = extended_upper_hull(&cfg, &lam);
        assert_eq!(p.upper_faces.len(), 3);
        assert!(p.compare(&t).matches);
        let flat = extended_upper_hull(&cfg, &LiftVector::origin_spike(&cfg, 0));
        assert_eq!(flat.upper_faces.len(), 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(covering_degree(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(covering_degree(&[vec![-1, -1, -1], vec![3, -1, -1]]), 4);
        assert_eq!(covering_degree(&[vec![0, 0], vec![1, 0]]), 1);
    }

    #[test]
    fn file_round_trip() {
        let t = cubic_vertex_only();
        let text = format_triangulation(&t);
        let parsed = parse_triangulation(&text).unwrap();
        assert_eq!(parsed, t.max_simplices());
        let lam = LiftVector::new(vec![0, 0, 1, 0]);
        assert_eq!(parse_lift(&format_lift(&lam), 4).unwrap(), lam);
        assert!(matches!(parse_lift("0 1\n0 2\n", 4), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn concave_paraboloid_lift_on_fine_cubic() {
        let cfg = PointConfiguration::all_points(cubic_triangle()).unwrap();
        let t = build_central_triangulation(&cfg, Strategy::Placing).unwrap();
        let vals: Vec<i64> = cfg
            .points
            .iter()
            .map(|p| if p.iter().all(|&x| x == 0) { 3 } else { -lattice_core::dot(p, p) })
            .collect();
        assert!(secondary_cone_contains(&t, &LiftVector::new(vals.clone())).inside);
        // the convex paraboloid with λ(0) = 0 bends the wrong way
        let convex: Vec<i64> = cfg.points.iter().map(|p| lattice_core::dot(p, p)).collect();
        assert!(!secondary_cone_contains(&t, &LiftVector::new(convex)).inside);
    }

    #[test]
    fn twisted_facet_is_incoherent() {
        let t = twisted_quartic();
        match find_interior_lambda(&t) {
            Err(Error::Infeasible(cert)) => assert!(verify_certificate(&t, &cert)),
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }
}
