//! Lattice polytopes with exact face lattices, polarity and the reflexive /
//! nonsingular predicates.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::arith::{self, Q};
use crate::error::{Error, Result};
use crate::intlattice::{self, combinations};

pub type LatticeVector = Vec<i64>;

/// Largest ambient dimension and vertex count the brute-force hull handles.
pub const MAX_DIM: usize = 5;
pub const MAX_VERTICES: usize = 50;
/// Upper bound on the bounding-box scan in `enumerate_lattice_points`.
pub const MAX_BOX_POINTS: u128 = 20_000_000;

/// A facet `{m : ⟨normal, m⟩ = offset}` with `⟨normal, m⟩ >= offset` on the
/// polytope. `normal` is primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of facets containing this face.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
    origin: LatticeVector,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

/// Inward facet normals of `conv(points)`, found by checking every
/// affinely independent `dim`-subset. Points must affinely span `R^dim`.
pub fn hull_facets(points: &[Vec<i64>], dim: usize) -> Vec<(Vec<i64>, i64)> {
    let mut found = BTreeSet::new();
    for subset in combinations(points.len(), dim) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<i64>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal = cross(&diffs, dim);
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let normal = intlattice::primitive(&normal);
        let c = dot(&normal, base);
        let (mut below, mut above) = (false, false);
        for p in points {
            let v = dot(&normal, p);
            below |= v < c;
            above |= v > c;
            if below && above {
                break;
            }
        }
        if below && above {
            continue;
        }
        if below {
            found.insert((normal.iter().map(|x| -x).collect::<Vec<_>>(), -c));
        } else {
            found.insert((normal, c));
        }
    }
    found.into_iter().collect()
}

/// Generalized cross product of `dim - 1` vectors in `Z^dim`.
pub fn cross(rows: &[Vec<i64>], dim: usize) -> Vec<i64> {
    (0..dim)
        .map(|i| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = intlattice::det(&minor);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn affine_rank_i(points: &[&Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let n = points[0].len();
    intlattice::rank(&diffs, n)
}

impl LatticePolytope {
    /// Convex hull of `points`; non-extreme points are dropped.
    pub fn hull(points: &[LatticeVector], origin: Option<LatticeVector>) -> Result<Self> {
        let (poly, _) = Self::build(points, origin)?;
        Ok(poly)
    }

    /// Like [`hull`](Self::hull) but every input point must be a vertex.
    /// The error names the first offending input position.
    pub fn from_vertices(points: &[LatticeVector], origin: Option<LatticeVector>) -> Result<Self> {
        let (poly, dropped) = Self::build(points, origin)?;
        if let Some(&i) = dropped.first() {
            return Err(Error::domain(format!(
                "point {} is not a vertex of the convex hull",
                arith::fmt_ivec(&points[i])
            )));
        }
        Ok(poly)
    }

    fn build(points: &[LatticeVector], origin: Option<LatticeVector>) -> Result<(Self, Vec<usize>)> {
        let Some(first) = points.first() else {
            return Err(Error::domain("empty point list"));
        };
        let dim = first.len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::domain("points must share a positive dimension"));
        }
        if dim > MAX_DIM {
            return Err(Error::Resource(format!(
                "ambient dimension {dim} exceeds supported {MAX_DIM}"
            )));
        }
        let mut seen = BTreeSet::new();
        for p in points {
            if !seen.insert(p.clone()) {
                return Err(Error::domain(format!("duplicate point {}", arith::fmt_ivec(p))));
            }
        }
        let refs: Vec<&Vec<i64>> = points.iter().collect();
        if affine_rank_i(&refs) != dim {
            return Err(Error::domain("points are not full-dimensional"));
        }
        let raw = hull_facets(points, dim);
        let extreme: Vec<usize> = (0..points.len())
            .filter(|&i| {
                let tight: Vec<Vec<i64>> = raw
                    .iter()
                    .filter(|(n, c)| dot(n, &points[i]) == *c)
                    .map(|(n, _)| n.clone())
                    .collect();
                intlattice::rank(&tight, dim) == dim
            })
            .collect();
        let dropped: Vec<usize> = (0..points.len()).filter(|i| !extreme.contains(i)).collect();
        let mut vertices: Vec<LatticeVector> = extreme.iter().map(|&i| points[i].clone()).collect();
        vertices.sort();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "{} vertices exceed supported {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let facets: Vec<Facet> = raw
            .into_iter()
            .map(|(normal, offset)| {
                let vs = (0..vertices.len())
                    .filter(|&i| dot(&normal, &vertices[i]) == offset)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: vs,
                }
            })
            .collect();
        let faces = face_lattice(&vertices, &facets);
        let origin = origin.unwrap_or_else(|| vec![0; dim]);
        if origin.len() != dim {
            return Err(Error::domain("origin has wrong dimension"));
        }
        Ok((
            LatticePolytope {
                dim,
                vertices,
                origin,
                facets,
                faces,
            },
            dropped,
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Proper nonempty faces ordered by dimension, then vertex indices.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, m) >= f.offset)
    }

    pub fn contains_q(&self, m: &[Q]) -> bool {
        self.facets
            .iter()
            .all(|f| arith::dot_qi(m, &f.normal) >= arith::q(f.offset))
    }

    pub fn on_boundary_q(&self, m: &[Q]) -> bool {
        self.contains_q(m)
            && self
                .facets
                .iter()
                .any(|f| arith::dot_qi(m, &f.normal) == arith::q(f.offset))
    }

    /// Facets (by index) whose hyperplane contains `m`.
    pub fn tight_facets_q(&self, m: &[Q]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| arith::dot_qi(m, &self.facets[i].normal) == arith::q(self.facets[i].offset))
            .collect()
    }

    /// Offset of facet `i` measured from the origin: `⟨n, m − o⟩ >= c'`.
    pub fn relative_offset(&self, i: usize) -> i64 {
        let f = &self.facets[i];
        f.offset - dot(&f.normal, &self.origin)
    }

    pub fn origin_interior(&self) -> bool {
        (0..self.facets.len()).all(|i| self.relative_offset(i) < 0)
    }

    /// Smallest face (by index into `faces`, or `None` for the whole
    /// polytope) containing all the given points.
    pub fn minimal_face_q(&self, pts: &[Vec<Q>]) -> Option<usize> {
        let tight: BTreeSet<usize> = (0..self.facets.len())
            .filter(|&i| {
                pts.iter().all(|m| {
                    arith::dot_qi(m, &self.facets[i].normal) == arith::q(self.facets[i].offset)
                })
            })
            .collect();
        if tight.is_empty() {
            return None;
        }
        let verts: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| tight.iter().all(|&f| self.facets[f].vertices.contains(&v)))
            .collect();
        self.faces.iter().position(|f| f.vertices == verts)
    }
}

fn face_lattice(vertices: &[LatticeVector], facets: &[Facet]) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut added = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let meet: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                if !meet.is_empty() && sets.insert(meet) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let refs: Vec<&Vec<i64>> = vs.iter().map(|&i| &vertices[i]).collect();
            let dim = affine_rank_i(&refs);
            let fs = (0..facets.len())
                .filter(|&f| vs.iter().all(|v| facets[f].vertices.contains(v)))
                .collect();
            Face {
                vertices: vs,
                dim,
                facets: fs,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    faces
}

/// All lattice points of the polytope in lexicographic order.
pub fn enumerate_lattice_points(poly: &LatticePolytope) -> Result<Vec<LatticeVector>> {
    let n = poly.dim;
    let lo: Vec<i64> = (0..n).map(|j| poly.vertices.iter().map(|v| v[j]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|j| poly.vertices.iter().map(|v| v[j]).max().unwrap()).collect();
    let count: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as u128).product();
    if count > MAX_BOX_POINTS {
        return Err(Error::Resource(format!(
            "bounding box holds {count} candidates, limit {MAX_BOX_POINTS}"
        )));
    }
    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        if poly.contains(&p) {
            out.push(p.clone());
        }
        // odometer, last coordinate fastest => lexicographic order
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if p[j] < hi[j] {
                p[j] += 1;
                for (k, x) in p.iter_mut().enumerate().skip(j + 1) {
                    *x = lo[k];
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolarDual {
    /// Vertices in lexicographic order, one per facet of the input.
    pub vertices: Vec<Vec<Q>>,
    pub integral: bool,
}

impl PolarDual {
    pub fn to_lattice_polytope(&self) -> Option<LatticePolytope> {
        if !self.integral {
            return None;
        }
        let pts: Vec<LatticeVector> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect())
            .collect();
        LatticePolytope::from_vertices(&pts, None).ok()
    }
}

/// `Δ^D = {u : ⟨u, m − o⟩ >= −1 for m ∈ Δ}`, with `o` the stored origin.
pub fn polar_dual(poly: &LatticePolytope) -> Result<PolarDual> {
    if !poly.origin_interior() {
        return Err(Error::domain("origin is not an interior point"));
    }
    let mut vertices: Vec<Vec<Q>> = (0..poly.facets.len())
        .map(|i| {
            let c = arith::q(-poly.relative_offset(i));
            poly.facets[i].normal.iter().map(|&x| arith::q(x) / &c).collect()
        })
        .collect();
    vertices.sort();
    let integral = vertices.iter().flatten().all(arith::is_integral);
    Ok(PolarDual { vertices, integral })
}

#[derive(Clone, Debug)]
pub struct FacetCertificate {
    pub normal: Vec<i64>,
    pub vertices: Vec<usize>,
    /// `⟨u_Σ, v − o⟩` for each vertex of the facet.
    pub pairings: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ReflexivityReport {
    pub reflexive: bool,
    pub origin_interior: bool,
    pub facets: Vec<FacetCertificate>,
}

pub fn is_reflexive(poly: &LatticePolytope) -> ReflexivityReport {
    let origin_interior = poly.origin_interior();
    let facets: Vec<FacetCertificate> = poly
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            // u_Σ = n / (−c'); integral iff c' = −1 because n is primitive.
            let c = -poly.relative_offset(i);
            let normal = if c != 0 && f.normal.iter().all(|x| x % c == 0) {
                f.normal.iter().map(|x| x / c).collect()
            } else {
                f.normal.clone()
            };
            let pairings = f
                .vertices
                .iter()
                .map(|&v| {
                    let d: Vec<i64> = poly.vertices[v].iter().zip(&poly.origin).map(|(a, b)| a - b).collect();
                    dot(&normal, &d)
                })
                .collect();
            FacetCertificate {
                normal,
                vertices: f.vertices.clone(),
                pairings,
            }
        })
        .collect();
    let reflexive = origin_interior
        && facets.iter().all(|f| f.pairings.iter().all(|&p| p == -1));
    ReflexivityReport {
        reflexive,
        origin_interior,
        facets,
    }
}

#[derive(Clone, Debug)]
pub struct VertexCertificate {
    pub vertex: LatticeVector,
    /// Primitive direction of each incident edge.
    pub directions: Vec<Vec<i64>>,
    /// Determinant of the directions; `None` when the valence is not `N`.
    pub det: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct NonsingularityReport {
    pub nonsingular: bool,
    pub vertices: Vec<VertexCertificate>,
}

pub fn is_nonsingular(poly: &LatticePolytope) -> NonsingularityReport {
    let n = poly.dim;
    let vertices: Vec<VertexCertificate> = (0..poly.vertices.len())
        .map(|v| {
            let directions: Vec<Vec<i64>> = poly
                .faces_of_dim(1)
                .filter(|e| e.vertices.contains(&v))
                .map(|e| {
                    let w = *e.vertices.iter().find(|&&w| w != v).unwrap();
                    let d: Vec<i64> = poly.vertices[w].iter().zip(&poly.vertices[v]).map(|(a, b)| a - b).collect();
                    intlattice::primitive(&d)
                })
                .collect();
            let det = (directions.len() == n).then(|| intlattice::det(&directions));
            VertexCertificate {
                vertex: poly.vertices[v].clone(),
                directions,
                det,
            }
        })
        .collect();
    let nonsingular = vertices.iter().all(|c| matches!(c.det, Some(d) if d.abs() == 1));
    NonsingularityReport {
        nonsingular,
        vertices,
    }
}

/// `k!·vol` of a lattice simplex measured in the saturated lattice of its
/// affine hull.
pub fn normalized_volume(simplex: &[LatticeVector]) -> Result<i64> {
    if simplex.is_empty() {
        return Err(Error::domain("empty simplex"));
    }
    let diffs: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| a - b).collect())
        .collect();
    let n = simplex[0].len();
    if intlattice::rank(&diffs, n) != diffs.len() {
        return Err(Error::domain("simplex vertices are affinely dependent"));
    }
    Ok(intlattice::gcd_maximal_minors(&diffs).abs())
}

/// Normalized volume of the whole polytope, by a pulling triangulation
/// from its first vertex over the face lattice.
pub fn polytope_normalized_volume(poly: &LatticePolytope) -> i64 {
    fn pull(poly: &LatticePolytope, verts: &[usize], dim: usize) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![verts.to_vec()];
        }
        let apex = verts[0];
        let mut out = Vec::new();
        for f in poly.faces.iter().filter(|f| f.dim + 1 == dim) {
            if f.vertices.iter().all(|v| verts.contains(v)) && !f.vertices.contains(&apex) {
                for mut s in pull(poly, &f.vertices, f.dim) {
                    s.push(apex);
                    out.push(s);
                }
            }
        }
        out
    }
    let all: Vec<usize> = (0..poly.vertices.len()).collect();
    pull(poly, &all, poly.dim)
        .iter()
        .map(|s| {
            let pts: Vec<LatticeVector> = s.iter().map(|&i| poly.vertices[i].clone()).collect();
            normalized_volume(&pts).unwrap()
        })
        .sum()
}

/// The set `A`: lattice points of Δ used by the family, sorted
/// lexicographically, always containing the origin and every vertex.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    pub polytope: LatticePolytope,
    pub points: Vec<LatticeVector>,
    pub origin_index: usize,
}

impl PointConfiguration {
    pub fn new(polytope: LatticePolytope, mut points: Vec<LatticeVector>) -> Result<Self> {
        points.sort();
        points.dedup();
        for p in &points {
            if p.len() != polytope.dim() || !polytope.contains(p) {
                return Err(Error::domain(format!("point {} lies outside Δ", arith::fmt_ivec(p))));
            }
        }
        for v in polytope.vertices() {
            if points.binary_search(v).is_err() {
                return Err(Error::domain(format!("vertex {} missing from A", arith::fmt_ivec(v))));
            }
        }
        let origin_index = points
            .binary_search(&polytope.origin().to_vec())
            .map_err(|_| Error::domain("origin missing from A"))?;
        Ok(PointConfiguration {
            polytope,
            points,
            origin_index,
        })
    }

    pub fn vertices_and_origin(polytope: LatticePolytope) -> Result<Self> {
        let mut pts = polytope.vertices().to_vec();
        pts.push(polytope.origin().to_vec());
        Self::new(polytope, pts)
    }

    pub fn all_points(polytope: LatticePolytope) -> Result<Self> {
        let pts = enumerate_lattice_points(&polytope)?;
        Self::new(polytope, pts)
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.binary_search(&p.to_vec()).ok()
    }

    /// Point relative to the origin, `ω − {0}`.
    pub fn rel(&self, i: usize) -> Vec<i64> {
        self.points[i]
            .iter()
            .zip(self.polytope.origin())
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn point_q(&self, i: usize) -> Vec<Q> {
        arith::qvec(&self.points[i])
    }
}

/// Parses the polytope text format: `N V`, then `V` vertex rows, then an
/// optional `origin: ...` row. Blank lines and `#` comments are ignored.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header `N V`".into(),
    })?;
    let head = parse_ints(header, hline)?;
    if head.len() != 2 || head[0] < 1 || head[1] < 1 {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be `N V` with positive integers".into(),
        });
    }
    let (n, v) = (head[0] as usize, head[1] as usize);
    let mut verts = Vec::with_capacity(v);
    let mut line_of = Vec::with_capacity(v);
    let mut origin = None;
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("origin:") {
            if origin.is_some() {
                return Err(Error::Parse { line: ln, msg: "repeated origin line".into() });
            }
            let o = parse_ints(rest, ln)?;
            if o.len() != n {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("origin has {} coordinates, expected {n}", o.len()),
                });
            }
            origin = Some(o);
            continue;
        }
        if origin.is_some() {
            return Err(Error::Parse { line: ln, msg: "vertex after origin line".into() });
        }
        let p = parse_ints(l, ln)?;
        if p.len() != n {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {n} coordinates, found {}", p.len()),
            });
        }
        if verts.len() == v {
            return Err(Error::Parse { line: ln, msg: format!("more than {v} vertex rows") });
        }
        if let Some(k) = verts.iter().position(|q: &Vec<i64>| *q == p) {
            return Err(Error::Parse {
                line: ln,
                msg: format!("duplicate vertex (first on line {})", line_of[k]),
            });
        }
        verts.push(p);
        line_of.push(ln);
    }
    if verts.len() != v {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {v} vertices, found {}", verts.len()),
        });
    }
    let (poly, dropped) = LatticePolytope::build(&verts, origin).map_err(|e| match e {
        Error::Domain(msg) => Error::Parse { line: hline, msg },
        other => other,
    })?;
    if let Some(&i) = dropped.first() {
        return Err(Error::Parse {
            line: line_of[i],
            msg: "point is not an extreme point of the hull".into(),
        });
    }
    Ok(poly)
}

fn parse_ints(s: &str, line: usize) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| Error::Parse {
                line,
                msg: format!("not an integer: `{tok}`"),
            })
        })
        .collect()
}

pub fn format_polytope(poly: &LatticePolytope) -> String {
    let mut s = format!("{} {}\n", poly.dim, poly.vertices.len());
    for v in &poly.vertices {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    if poly.origin.iter().any(|x| !x.is_zero()) {
        let parts: Vec<String> = poly.origin.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "origin: {}", parts.join(" "));
    }
    s
}

/// Δ₃: the reflexive triangle of the plane cubic.
pub fn cubic_triangle() -> LatticePolytope {
    LatticePolytope::from_vertices(&[vec![2, -1], vec![-1, 2], vec![-1, -1]], None).unwrap()
}

/// Δ₄: the reflexive tetrahedron of the quartic K3.
pub fn quartic_simplex() -> LatticePolytope {
    LatticePolytope::from_vertices(
        &[vec![-1, -1, -1], vec![-1, -1, 3], vec![-1, 3, -1], vec![3, -1, -1]],
        None,
    )
    .unwrap()
}

/// The reflexive 4-simplex of the quintic threefold.
pub fn quintic_simplex() -> LatticePolytope {
    let mut verts = vec![vec![-1i64; 4]];
    for i in 0..4 {
        let mut v = vec![-1i64; 4];
        v[i] = 4;
        verts.push(v);
    }
    LatticePolytope::from_vertices(&verts, None).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qvec};

    fn brute_points(lo: i64, hi: i64, n: usize, poly: &LatticePolytope) -> Vec<Vec<i64>> {
        // independent oracle: nested loops over the box, membership via
        // barycentric-free facet test computed from scratch for simplices
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(p) = stack.pop() {
            if p.len() == n {
                if poly.contains(&p) {
                    out.push(p);
                }
                continue;
            }
            for x in lo..=hi {
                let mut c = p.clone();
                c.push(x);
                stack.push(c);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn cubic_points_and_polar() {
        let d = cubic_triangle();
        let pts = enumerate_lattice_points(&d).unwrap();
        assert_eq!(pts.len(), 10);
        // direct double loop with the three explicit inequalities
        let mut oracle = Vec::new();
        for x in -1..=2i64 {
            for y in -1..=2i64 {
                if x >= -1 && y >= -1 && x + y <= 1 {
                    oracle.push(vec![x, y]);
                }
            }
        }
        assert_eq!(pts, oracle);
        let pd = polar_dual(&d).unwrap();
        assert!(pd.integral);
        assert_eq!(pd.vertices, vec![qvec(&[-1, -1]), qvec(&[0, 1]), qvec(&[1, 0])]);
        let back = polar_dual(&pd.to_lattice_polytope().unwrap()).unwrap();
        assert_eq!(back.vertices, vec![qvec(&[-1, -1]), qvec(&[-1, 2]), qvec(&[2, -1])]);
    }

    #[test]
    fn quartic_points_and_predicates() {
        let d = quartic_simplex();
        let pts = enumerate_lattice_points(&d).unwrap();
        assert_eq!(pts, brute_points(-1, 3, 3, &d));
        assert_eq!(pts.len(), 35);
        assert!(is_reflexive(&d).reflexive);
        assert!(is_nonsingular(&d).nonsingular);
        let pd = polar_dual(&d).unwrap();
        assert_eq!(
            pd.vertices,
            vec![qvec(&[-1, -1, -1]), qvec(&[0, 0, 1]), qvec(&[0, 1, 0]), qvec(&[1, 0, 0])]
        );
        assert_eq!(d.faces_of_dim(1).count(), 6);
        assert_eq!(d.faces_of_dim(2).count(), 4);
    }

    #[test]
    fn singular_and_nonreflexive_triangles() {
        let t = LatticePolytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, -1]], None).unwrap();
        let ns = is_nonsingular(&t);
        assert!(!ns.nonsingular);
        let at = ns.vertices.iter().find(|c| c.vertex == vec![1, 0]).unwrap();
        assert_eq!(at.det.map(i64::abs), Some(3));
        assert!(is_reflexive(&t).reflexive);

        // conv{(1,0),(0,1),(-2,-3)} has all facets at lattice distance one
        let r = LatticePolytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-2, -3]], None).unwrap();
        assert!(is_reflexive(&r).reflexive);

        let u = LatticePolytope::from_vertices(&[vec![2, 0], vec![0, 1], vec![-1, -1]], None).unwrap();
        assert!(!is_reflexive(&u).reflexive);
        let pd = polar_dual(&u).unwrap();
        assert!(!pd.integral);
        assert!(pd.vertices.contains(&vec![q(-1) / q(2), q(-1)]));
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&[vec![2, -1], vec![-1, 2]]).unwrap(), 3);
        assert_eq!(normalized_volume(&[vec![-1, -1, -1], vec![-1, -1, 3]]).unwrap(), 4);
        assert_eq!(normalized_volume(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap(), 1);
        assert!(normalized_volume(&[vec![0, 0], vec![1, 1], vec![2, 2]]).is_err());
        assert_eq!(polytope_normalized_volume(&cubic_triangle()), 9);
        assert_eq!(polytope_normalized_volume(&quartic_simplex()), 64);
    }

    #[test]
    fn segment_in_one_dimension() {
        let s = LatticePolytope::hull(&[vec![0], vec![1]], None).unwrap();
        assert_eq!(enumerate_lattice_points(&s).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn parser_errors_carry_line_numbers() {
        let bad = "2 3\n2 -1\n-1 2 7\n-1 -1\n";
        match parse_polytope(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let dup = "2 3\n2 -1\n2 -1\n-1 -1\n";
        assert!(matches!(parse_polytope(dup), Err(Error::Parse { line: 3, .. })));
        let interior = "2 4\n2 -1\n-1 2\n0 0\n-1 -1\n";
        assert!(matches!(parse_polytope(interior), Err(Error::Parse { line: 4, .. })));
        let ok = parse_polytope("2 3\n2 -1\n-1 2\n-1 -1\n").unwrap();
        assert_eq!(format_polytope(&ok), "2 3\n-1 -1\n-1 2\n2 -1\n");
    }

    #[test]
    fn minimal_faces() {
        let d = cubic_triangle();
        let mid = vec![q(1) / q(2), q(1) / q(2)];
        let f = d.minimal_face_q(&[mid]).unwrap();
        assert_eq!(d.faces()[f].dim, 1);
        assert!(d.minimal_face_q(&[qvec(&[0, 0])]).is_none());
    }
}
