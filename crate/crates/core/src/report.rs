//! Plain-text reports. Every line is a pure function of the inputs so the
//! output is byte-stable across runs and thread counts.

use std::fmt::Write;

use crate::arith::{fmt_f64, fmt_ivec, fmt_q, fmt_qvec, Q};
use crate::base_complex::{
    center, discriminant_skeleton, dual_polytope, mirror_skeleton, nu_map, w_decomposition, BaseLocator,
};
use crate::error::Result;
use crate::fibration::{fiber_census, fiber_sample, zero_section, FiberGrid};
use crate::lattice_core::{
    enumerate_lattice_points, is_nonsingular, is_reflexive, polar_dual, LatticePolytope,
};
use crate::moment_numeric::{hole_radius, FamilyPoint, MomentModel, SampleGrid};
use crate::monodromy_mirror::{
    dehn_twist_count, fiber_lattice_decomposition, is_unipotent_2d, kahler_class, monodromy_matrix_2d,
    translation_data,
};
use crate::triangulation::{fmt_simplex, CentralTriangulation, LiftVector};

/// Base-phase grid used to count pinch points in the fibration report.
pub const PINCH_GRID: usize = 512;

pub struct CheckOutcome {
    pub text: String,
    pub reflexive: bool,
    pub nonsingular: bool,
}

pub fn check_report(poly: &LatticePolytope) -> Result<CheckOutcome> {
    let refl = is_reflexive(poly);
    let nons = is_nonsingular(poly);
    let points = enumerate_lattice_points(poly)?;
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    writeln!(
        s,
        "reflexive: {}, nonsingular: {}, points: {}",
        yn(refl.reflexive),
        yn(nons.nonsingular),
        points.len()
    )
    .unwrap();
    writeln!(s, "dimension: {}", poly.dim()).unwrap();
    writeln!(s, "origin interior: {}", yn(refl.origin_interior)).unwrap();
    writeln!(s, "facets:").unwrap();
    for f in &refl.facets {
        let pairs: Vec<String> = f.pairings.iter().map(|p| p.to_string()).collect();
        writeln!(s, "  u = {} | pairings {}", fmt_ivec(&f.normal), pairs.join(" ")).unwrap();
    }
    writeln!(s, "vertices:").unwrap();
    for v in &nons.vertices {
        let dirs: Vec<String> = v.directions.iter().map(|d| fmt_ivec(d)).collect();
        let det = v.det.map_or("n/a (valence)".to_string(), |d| d.to_string());
        writeln!(s, "  {} | edges {} | det {}", fmt_ivec(&v.vertex), dirs.join(" "), det).unwrap();
    }
    let polar = polar_dual(poly)?;
    let pv: Vec<String> = polar.vertices.iter().map(|v| fmt_qvec(v)).collect();
    writeln!(s, "polar dual vertices: {}", pv.join(" ")).unwrap();
    writeln!(s, "polar dual integral: {}", yn(polar.integral)).unwrap();
    Ok(CheckOutcome {
        text: s,
        reflexive: refl.reflexive,
        nonsingular: nons.nonsingular,
    })
}

fn header(s: &mut String, t: &CentralTriangulation, lambda: &LiftVector) {
    let cfg = t.config();
    let verts: Vec<String> = cfg.polytope.vertices().iter().map(|v| fmt_ivec(v)).collect();
    writeln!(s, "polytope: {}", verts.join(" ")).unwrap();
    writeln!(
        s,
        "dimension: {}, points in A: {}, maximal simplices: {}, boundary simplices: {}",
        t.dim(),
        cfg.len(),
        t.max_simplices().len(),
        t.boundary().simplices().len()
    )
    .unwrap();
    let lam: Vec<String> = (0..cfg.len())
        .map(|i| format!("{}:{}", fmt_ivec(&cfg.points[i]), lambda.values[i]))
        .collect();
    writeln!(s, "lift: {}", lam.join(" ")).unwrap();
}

/// Default sampling grid for hole radii: curves get a finer grid.
pub fn default_grid(n: usize) -> usize {
    if n == 2 {
        48
    } else {
        12
    }
}

pub fn fibration_report(
    t: &CentralTriangulation,
    lambda: &LiftVector,
    family: &FamilyPoint,
    grid: usize,
) -> Result<String> {
    let cfg = t.config();
    let n = t.dim();
    let mut s = String::new();
    header(&mut s, t, lambda);
    writeln!(s, "|t|: {}", fmt_f64(family.modulus)).unwrap();

    let w = w_decomposition(t);
    writeln!(s, "\nW-cells ({}), euler characteristic {}", w.cells.len(), w.euler_characteristic()).unwrap();
    writeln!(s, "  tau | dim | boundary | coboundary").unwrap();
    for c in &w.cells {
        writeln!(
            s,
            "  {} | {} | {} | {}",
            fmt_simplex(cfg, &c.tau),
            c.dim,
            c.boundary.len(),
            c.coboundary.len()
        )
        .unwrap();
    }

    let locator = BaseLocator::new(t);
    let census = fiber_census(&locator)?;
    writeln!(s, "\nfiber census at cell centers").unwrap();
    writeln!(s, "  tau | k | l | L | degree | fiber").unwrap();
    for r in &census.rows {
        writeln!(
            s,
            "  {} | {} | {} | {} | {} | {}",
            fmt_simplex(cfg, &r.tau),
            r.k,
            r.l,
            r.big_l,
            r.degree,
            r.description
        )
        .unwrap();
    }
    let singular: Vec<_> = census.rows.iter().filter(|r| r.degenerate).collect();
    if singular.is_empty() {
        writeln!(s, "no singular fibers").unwrap();
    } else {
        let mut kinds: Vec<(usize, i64)> = singular.iter().map(|r| (r.k, r.degree)).collect();
        kinds.sort_unstable();
        kinds.dedup();
        if kinds.len() == 1 && kinds[0].0 == 1 && n == 3 {
            writeln!(
                s,
                "singular fibers: {} cells, type I_{}, degree {}",
                singular.len(),
                kinds[0].1,
                kinds[0].1
            )
            .unwrap();
        } else {
            writeln!(s, "singular fibers: {} cells", singular.len()).unwrap();
        }
    }
    writeln!(s, "euler sum: {}", census.euler_sum).unwrap();

    let sk = discriminant_skeleton(t);
    writeln!(s, "\ndiscriminant skeleton").unwrap();
    match sk.dim() {
        None => writeln!(s, "  empty").unwrap(),
        Some(d) => {
            let counts: Vec<String> = (0..=d).map(|i| format!("{}-simplices {}", i, sk.count_of_dim(i))).collect();
            writeln!(s, "  {}", counts.join(", ")).unwrap();
            for v in &sk.vertices {
                writeln!(s, "  vertex {}", fmt_simplex(cfg, v)).unwrap();
            }
        }
    }

    let model = MomentModel::new(cfg, lambda)?;
    writeln!(s, "\nzero section at cell centers").unwrap();
    for tau in t.boundary().simplices() {
        let sp = zero_section(&locator, &model, &center(cfg, tau), family)?;
        writeln!(
            s,
            "  {} | theta {} | residual {}",
            fmt_simplex(cfg, tau),
            fmt_f64(sp.theta),
            if sp.residual < 1e-10 { "< 1e-10" } else { "LARGE" }
        )
        .unwrap();
    }
    if !singular.is_empty() {
        writeln!(s, "\npinch points over singular cells (base grid {PINCH_GRID})").unwrap();
        for r in &singular {
            if r.k != 1 || r.l != 1 {
                continue;
            }
            let fs = fiber_sample(&locator, &model, &center(cfg, &r.tau), family, FiberGrid { base: PINCH_GRID, fiber: 1 })?;
            writeln!(
                s,
                "  {} | {} | degree-one model {}",
                fmt_simplex(cfg, &r.tau),
                fs.degenerate_phases.len(),
                fs.model_count.map_or("n/a".to_string(), |c| c.to_string())
            )
            .unwrap();
        }
    }

    let r = hole_radius(cfg, lambda, family, SampleGrid::square(grid))?;
    writeln!(s, "\nhole radius at |t|={}: {} (grid {grid})", fmt_f64(family.modulus), fmt_f64(r)).unwrap();
    writeln!(s, "hole radius >= 0.1: {}", if r >= 0.1 { "yes" } else { "no" }).unwrap();
    Ok(s)
}

pub fn monodromy_report(t: &CentralTriangulation, lambda: &LiftVector, gamma: &Q) -> Result<String> {
    let cfg = t.config();
    let mut s = String::new();
    header(&mut s, t, lambda);
    writeln!(s, "gamma: {}", fmt_q(gamma)).unwrap();
    let dual = dual_polytope(t, lambda, gamma)?;
    let nu = nu_map(t, &dual)?;
    let data = translation_data(t, lambda, &dual, &nu)?;
    writeln!(s, "\ntau | nu' | pairings | integral?").unwrap();
    for d in &data {
        let pairs: Vec<String> = d
            .pairings
            .iter()
            .map(|(w, p)| format!("{}:{}", fmt_ivec(&cfg.points[*w]), fmt_q(p)))
            .collect();
        writeln!(
            s,
            "{} | {} | {} | {}",
            fmt_simplex(cfg, &d.tau),
            fmt_qvec(&d.nu_point),
            pairs.join(" "),
            if d.integral { "yes" } else { "no" }
        )
        .unwrap();
    }
    let all = data.iter().all(|d| d.integral);
    writeln!(s, "all pairings integral: {}", if all { "yes" } else { "no" }).unwrap();
    if t.dim() == 2 {
        let tw = dehn_twist_count(t)?;
        let m = monodromy_matrix_2d(t)?;
        let regions: Vec<String> = tw
            .per_region
            .iter()
            .map(|(w, c)| format!("{}:{}", fmt_ivec(&cfg.points[*w]), c))
            .collect();
        writeln!(s, "\ntwist count: {}; matrix [[{},{}],[{},{}]]", tw.total, m[0][0], m[0][1], m[1][0], m[1][1]).unwrap();
        writeln!(s, "per region (one unit per vertex of the boundary triangulation): {}", regions.join(" ")).unwrap();
        writeln!(s, "unipotent: {}", if is_unipotent_2d(&m) { "yes" } else { "no" }).unwrap();
    } else {
        writeln!(s, "\ncohomological monodromy: not computed for N = {}; see translations above", t.dim()).unwrap();
    }
    Ok(s)
}

pub fn mirror_report(t: &CentralTriangulation, lambda: &LiftVector, gamma: &Q) -> Result<String> {
    let cfg = t.config();
    let mut s = String::new();
    header(&mut s, t, lambda);
    writeln!(s, "gamma: {}", fmt_q(gamma)).unwrap();
    let dual = dual_polytope(t, lambda, gamma)?;
    writeln!(s, "\ndual polytope vertices ({})", dual.vertices.len()).unwrap();
    for v in &dual.vertices {
        writeln!(s, "  {}", fmt_qvec(v)).unwrap();
    }
    let nu = nu_map(t, &dual)?;
    writeln!(
        s,
        "nu bijective: {}, inclusion reversing: {}",
        if nu.bijective { "yes" } else { "no" },
        if nu.anti_isomorphism { "yes" } else { "no" }
    )
    .unwrap();

    let primal = discriminant_skeleton(t);
    let mirror = mirror_skeleton(t, &dual)?;
    writeln!(s, "\nskeleton isomorphism").unwrap();
    writeln!(
        s,
        "  vertices {} <-> {}, simplices {} <-> {}, isomorphic: {}",
        primal.vertices.len(),
        mirror.skeleton.vertices.len(),
        primal.simplices.len(),
        mirror.skeleton.simplices.len(),
        if mirror.isomorphic { "yes" } else { "no" }
    )
    .unwrap();
    for (v, c) in mirror.skeleton.vertices.iter().zip(&mirror.dual_centers) {
        writeln!(s, "  {} <-> {}", fmt_simplex(cfg, v), fmt_qvec(c)).unwrap();
    }
    writeln!(s, "  excluded: {}", mirror.excluded.len()).unwrap();
    for e in &mirror.excluded {
        writeln!(s, "    {}", fmt_simplex(cfg, e)).unwrap();
    }

    writeln!(s, "\nfiber lattices").unwrap();
    writeln!(s, "  tau | index | fiber ranks | dual fiber ranks | perfect pairing | orthogonal").unwrap();
    for tau in t.boundary().simplices() {
        let d = fiber_lattice_decomposition(t, tau)?;
        writeln!(
            s,
            "  {} | {} | ({},{}) | ({},{}) | {} | {}",
            fmt_simplex(cfg, tau),
            d.index,
            d.fiber_ranks.0,
            d.fiber_ranks.1,
            d.dual_fiber_ranks.0,
            d.dual_fiber_ranks.1,
            if d.perfect_pairing { "yes" } else { "no" },
            if d.orthogonal { "yes" } else { "no" }
        )
        .unwrap();
    }

    let k = kahler_class(t, lambda, gamma)?;
    let coeffs: Vec<String> = k
        .coefficients
        .iter()
        .map(|(w, c)| format!("{}:{}", fmt_ivec(&cfg.points[*w]), fmt_q(c)))
        .collect();
    writeln!(s, "\nkahler class: {}", coeffs.join(" ")).unwrap();
    writeln!(s, "all coefficients positive: {}", if k.positive { "yes" } else { "no" }).unwrap();
    Ok(s)
}
