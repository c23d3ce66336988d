//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so every line is printed; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use toruslab::arith::{fmt_f64, q};
use toruslab::base_complex::{discriminant_skeleton, dual_polytope, mirror_skeleton, nu_map, BaseLocator, center};
use toruslab::fibration::{
    boundary_sample, chi_family, deformation_bridge_check, fiber_census, fiber_sample, section_sign_changes,
    zero_section, FiberGrid,
};
use toruslab::lattice_core::{
    cubic_triangle, is_nonsingular, is_reflexive, polar_dual, quartic_simplex, LatticePolytope, PointConfiguration,
};
use toruslab::moment_numeric::{default_gap_grid, hole_radius, psi_t_gap, FamilyPoint, MomentModel, SampleGrid};
use toruslab::monodromy_mirror::{
    dehn_twist_count, is_unipotent_2d, kahler_class, monodromy_matrix_2d, rank_sums_hold, translation_data,
};
use toruslab::triangulation::{
    build_central_triangulation, find_interior_lambda, secondary_cone_contains, twisted_quartic, verify_certificate,
    CentralTriangulation, LiftVector, Strategy,
};
use toruslab::Error;

const HOLE_TOL: f64 = 1e-3;
const SECTION_RESIDUAL: f64 = 1e-10;
const SECTION_SAMPLES: usize = 200;
const SCAN_POINTS: usize = 10_000;
const PINCH_GRID: usize = 4096;

fn square() -> LatticePolytope {
    LatticePolytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], None).unwrap()
}

fn vertex_only(p: LatticePolytope) -> (CentralTriangulation, LiftVector) {
    let cfg = PointConfiguration::vertices_and_origin(p).unwrap();
    let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
    let lam = LiftVector::origin_spike(&cfg, 1);
    (t, lam)
}

fn fixtures() -> Vec<(&'static str, CentralTriangulation, LiftVector)> {
    let (c, cl) = vertex_only(cubic_triangle());
    let (k, kl) = vertex_only(quartic_simplex());
    vec![("cubic", c, cl), ("quartic", k, kl)]
}

type Outcome = (bool, String);

fn c1() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, p) in [("cubic", cubic_triangle()), ("quartic", quartic_simplex())] {
        let r = is_reflexive(&p).reflexive;
        let ns = is_nonsingular(&p).nonsingular;
        let polar = polar_dual(&p).unwrap().to_lattice_polytope().expect("integral polar");
        let back = polar_dual(&polar).unwrap().to_lattice_polytope().expect("integral bipolar");
        let mut a = p.vertices().to_vec();
        let mut b = back.vertices().to_vec();
        a.sort();
        b.sort();
        ok &= r && ns && a == b;
        notes.push(format!("{name} reflexive={r} nonsingular={ns} bipolar={}", a == b));
    }
    let sing = LatticePolytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, -1]], None).unwrap();
    let rep = is_nonsingular(&sing);
    let dets: Vec<i64> = rep.vertices.iter().filter_map(|v| v.det).map(i64::abs).collect();
    let three = !rep.nonsingular && dets.contains(&3);
    ok &= three;
    notes.push(format!("singular triangle |det| {:?}", dets));
    (ok, notes.join("; "))
}

fn c2() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, t, lam) in fixtures() {
        let inside = secondary_cone_contains(&t, &lam).inside;
        ok &= inside;
        notes.push(format!("{name} λ=(1;0,…) inside={inside}"));
    }
    let cfg = PointConfiguration::all_points(cubic_triangle()).unwrap();
    let fine = build_central_triangulation(&cfg, Strategy::Placing).unwrap();
    let nine = fine.max_simplices().len() == 9;
    let certified = find_interior_lambda(&fine).map(|l| secondary_cone_contains(&fine, &l).inside).unwrap_or(false);
    ok &= nine && certified;
    notes.push(format!("9-triangle refinement={nine} interior lift certified={certified}"));
    let twisted = twisted_quartic();
    let cert = match find_interior_lambda(&twisted) {
        Err(Error::Infeasible(c)) => verify_certificate(&twisted, &c),
        _ => false,
    };
    ok &= cert;
    notes.push(format!("non-regular flip certificate verified={cert}"));
    (ok, notes.join("; "))
}

fn c3() -> Outcome {
    let mods = [1e2, 1e3, 1e4, 1e6];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, t, lam) in fixtures() {
        let grid = default_gap_grid(&t);
        let gaps: Vec<f64> = mods
            .iter()
            .map(|&m| psi_t_gap(&t, &lam, &FamilyPoint::real(m).unwrap(), &grid).unwrap())
            .collect();
        let dec = gaps.windows(2).all(|w| w[1] < w[0]);
        ok &= dec;
        let shown: Vec<String> = gaps.iter().map(|g| fmt_f64(*g)).collect();
        notes.push(format!("{name} gaps {}", shown.join(" > ")));
    }
    (ok, notes.join("; "))
}

fn c4() -> Outcome {
    let (t, lam) = vertex_only(cubic_triangle());
    let grid = SampleGrid::square(48);
    let r3 = hole_radius(t.config(), &lam, &FamilyPoint::real(1e3).unwrap(), grid).unwrap();
    let r6 = hole_radius(t.config(), &lam, &FamilyPoint::real(1e6).unwrap(), grid).unwrap();
    let big = r3 >= 0.1 - HOLE_TOL;
    let grows = r6 > r3 - HOLE_TOL;
    (
        big && grows,
        format!(
            "radius(1e3)={} (>= 0.1: {big}); radius(1e6)={} (exceeds radius(1e3): {grows})",
            fmt_f64(r3),
            fmt_f64(r6)
        ),
    )
}

fn c5() -> Outcome {
    let (t, lam) = vertex_only(quartic_simplex());
    let locator = BaseLocator::new(&t);
    let sk = discriminant_skeleton(&t);
    let census = fiber_census(&locator).unwrap();
    let six = sk.vertices.len() == 6 && sk.vertices.iter().all(|v| v.len() == 2);
    let degrees: Vec<i64> = census.rows.iter().filter(|r| r.degenerate).map(|r| r.degree).collect();
    let i4 = degrees.len() == 6 && degrees.iter().all(|&d| d == 4);
    let euler = census.euler_sum == 24;
    let model = MomentModel::new(t.config(), &lam).unwrap();
    let family = FamilyPoint::real(1e3).unwrap();
    let counts: Vec<usize> = sk
        .vertices
        .par_iter()
        .map(|e| {
            fiber_sample(&locator, &model, &center(t.config(), e), &family, FiberGrid { base: PINCH_GRID, fiber: 1 })
                .unwrap()
                .degenerate_phases
                .len()
        })
        .collect();
    let total: usize = counts.iter().sum();
    let generic = total == 24 && counts.iter().all(|&c| c == 4);
    (
        six && i4 && euler && generic,
        format!(
            "skeleton vertices={} all edges={six}; degrees {:?}; euler sum={}; pinch points per edge {:?} total {total}",
            sk.vertices.len(),
            degrees,
            census.euler_sum,
            counts
        ),
    )
}

fn c6() -> Outcome {
    let (t, _) = vertex_only(cubic_triangle());
    let count = dehn_twist_count(&t).unwrap().total;
    let m = monodromy_matrix_2d(&t).unwrap();
    let unipotent = is_unipotent_2d(&m);
    let mut integral = true;
    let mut all = fixtures();
    let (s, sl) = vertex_only(square());
    all.push(("square", s, sl));
    for (_, t, lam) in &all {
        let dual = dual_polytope(t, lam, &q(1)).unwrap();
        let nu = nu_map(t, &dual).unwrap();
        integral &= translation_data(t, lam, &dual, &nu).unwrap().iter().all(|d| d.integral);
    }
    (
        count == 3 && m == [[1, 3], [0, 1]] && unipotent && integral,
        format!("twist count {count}; matrix {:?}; (T-I)^2=0: {unipotent}; pairings integral on all fixtures: {integral}", m),
    )
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, t, lam) in fixtures() {
        let locator = BaseLocator::new(&t);
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let family = FamilyPoint::real(1e3).unwrap();
        let samples = boundary_sample(&t, SECTION_SAMPLES);
        let results: Vec<(f64, usize)> = samples
            .par_iter()
            .map(|s| {
                let sp = zero_section(&locator, &model, s, &family).unwrap();
                let changes = section_sign_changes(&locator, &model, s, &family, SCAN_POINTS).unwrap();
                (sp.residual, changes)
            })
            .collect();
        let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
        let unique = results.iter().filter(|r| r.1 == 1).count();
        let pass = samples.len() == SECTION_SAMPLES && worst < SECTION_RESIDUAL && unique == samples.len();
        ok &= pass;
        notes.push(format!(
            "{name}: {} points, max residual {}, exactly one sign change at {unique}",
            samples.len(),
            fmt_f64(worst)
        ));
    }
    (ok, notes.join("; "))
}

fn c8() -> Outcome {
    let (t, lam) = vertex_only(cubic_triangle());
    let locator = BaseLocator::new(&t);
    let chi = chi_family(&t, &lam).unwrap();
    let samples = boundary_sample(&t, SECTION_SAMPLES);
    let r2 = deformation_bridge_check(&locator, &lam, &chi, &samples, 2.0).unwrap();
    let r10 = deformation_bridge_check(&locator, &lam, &chi, &samples, 10.0).unwrap();
    let decays = r10.max_epsilon < r2.max_epsilon;
    (
        decays && r10.substitution_identity && r2.substitution_identity,
        format!(
            "max|eps| gamma=2: {}, gamma=10: {}; substitution identity: {}",
            fmt_f64(r2.max_epsilon),
            fmt_f64(r10.max_epsilon),
            r10.substitution_identity
        ),
    )
}

fn c9() -> Outcome {
    let (t, lam) = vertex_only(quartic_simplex());
    let dual = dual_polytope(&t, &lam, &q(1)).unwrap();
    let nu = nu_map(&t, &dual).unwrap();
    let mirror = mirror_skeleton(&t, &dual).unwrap();
    let iso = mirror.isomorphic && nu.bijective && mirror.skeleton.vertices.len() == 6;
    let mut ranks = true;
    for (_, t, _) in fixtures() {
        ranks &= rank_sums_hold(&t).unwrap();
    }
    let (c, cl) = vertex_only(cubic_triangle());
    let k = kahler_class(&c, &cl, &q(1)).unwrap();
    let kv: Vec<_> = k.coefficients.iter().map(|(_, x)| x.clone()).collect();
    let ones = kv == vec![q(1), q(1), q(1)];
    (
        iso && ranks && ones,
        format!(
            "mirror isomorphic after excluding {}: {iso}; rank sums: {ranks}; cubic Kähler vector all ones: {ones}",
            mirror.excluded.len()
        ),
    )
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn digest(args: &[String], threads: Option<usize>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_toruslab"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("TORUSLAB_THREADS", n.to_string());
    }
    let out = cmd.output().expect("binary runs");
    let mut h = Sha256::new();
    h.update(out.status.code().unwrap_or(-1).to_le_bytes());
    h.update(&out.stdout);
    h.update(&out.stderr);
    h.finalize().to_vec()
}

fn c10() -> Outcome {
    // at least 4 so the parallel merges are exercised on single-core hosts
    let max = std::thread::available_parallelism().map_or(1, |n| n.get()).max(4);
    let (cubic, quartic) = (fixture("cubic.poly"), fixture("quartic.poly"));
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<String>>();
    let commands = vec![
        s(&["check", &cubic]),
        s(&["check", &quartic]),
        s(&["fibration", &cubic]),
        s(&["fibration", &quartic]),
        s(&["amoeba", &cubic, "--format", "csv"]),
        s(&["amoeba", &cubic, "--format", "svg"]),
        s(&["amoeba", &cubic, "--format", "txt"]),
        s(&["monodromy", &cubic]),
        s(&["monodromy", &quartic]),
        s(&["mirror", &cubic]),
        s(&["mirror", &quartic]),
    ];
    let mut stable = 0;
    for c in &commands {
        let a = digest(c, None);
        let b = digest(c, None);
        let one = digest(c, Some(1));
        let many = digest(c, Some(max));
        if a == b && a == one && a == many {
            stable += 1;
        }
    }
    (
        stable == commands.len(),
        format!("{stable}/{} commands byte-identical across runs and threads {{1, {max}}}", commands.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("reflexivity and nonsingularity", c1),
        ("secondary cone", c2),
        ("patchworking limit", c3),
        ("hole around the origin", c4),
        ("K3 census", c5),
        ("monodromy", c6),
        ("zero section", c7),
        ("chi decay", c8),
        ("mirror combinatorics", c9),
        ("determinism", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {:<32} {} | {detail}", i + 1, name, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
