use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toruslab::arith::{self, q, qr, Q};
use toruslab::base_complex::{dual_polytope, nu_map, BaseLocator};
use toruslab::fibration::{boundary_sample, TauChart};
use toruslab::lattice_core::{cubic_triangle, quartic_simplex, LatticePolytope, PointConfiguration};
use toruslab::moment_numeric::{
    moment_inverse, polynomial_roots, psi_t, weighted_moment, FamilyPoint, MomentModel, TorusPoint,
};
use toruslab::monodromy_mirror::{kahler_class, translation_data};
use toruslab::triangulation::{
    build_central_triangulation, characteristic_eval, CentralTriangulation, LiftVector, Strategy,
};

fn vertex_only(p: LatticePolytope) -> (CentralTriangulation, LiftVector) {
    let cfg = PointConfiguration::vertices_and_origin(p).unwrap();
    let t = build_central_triangulation(&cfg, Strategy::VertexOnly).unwrap();
    let lam = LiftVector::origin_spike(&cfg, 1);
    (t, lam)
}

fn fixture(which: bool) -> (CentralTriangulation, LiftVector) {
    if which {
        vertex_only(quartic_simplex())
    } else {
        vertex_only(cubic_triangle())
    }
}

/// A rational point of Δ: barycentric weights on a maximal simplex of T.
fn point_in(t: &CentralTriangulation, sigma: usize, weights: &[u32]) -> Vec<Q> {
    let cfg = t.config();
    let s = &t.max_simplices()[sigma % t.max_simplices().len()];
    let total: i64 = weights.iter().map(|&w| w as i64).sum::<i64>().max(1);
    let n = cfg.dim();
    (0..n)
        .map(|j| {
            s.iter()
                .zip(weights)
                .fold(Q::zero(), |acc, (&p, &w)| acc + qr(w as i64, total) * q(cfg.points[p][j]))
        })
        .collect()
}

/// A rational point of ∂Δ on a maximal simplex of ∂T.
fn boundary_point(t: &CentralTriangulation, sigma: usize, weights: &[u32]) -> Vec<Q> {
    let cfg = t.config();
    let s = &t.boundary().maximal()[sigma % t.boundary().maximal().len()];
    let weights = &weights[..s.len()];
    let total: i64 = weights.iter().map(|&w| w as i64 + 1).sum();
    (0..cfg.dim())
        .map(|j| {
            s.iter()
                .zip(weights)
                .fold(Q::zero(), |acc, (&p, &w)| acc + qr(w as i64 + 1, total) * q(cfg.points[p][j]))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cutoffs_are_a_partition_of_unity(which in any::<bool>(), sigma in 0usize..8, w in prop::collection::vec(0u32..50, 3)) {
        let (t, _) = fixture(which);
        let locator = BaseLocator::new(&t);
        let s = boundary_point(&t, sigma, &w);
        let loc = locator.locate(&s).unwrap();
        let total: Q = locator.rho0(&loc).values().cloned().sum();
        prop_assert_eq!(total, Q::one());
        let rho = locator.rho(&loc);
        prop_assert_eq!(&rho[t.config().origin_index], &Q::one());
        for r in &rho {
            prop_assert!(!r.is_negative() && *r <= Q::one());
        }
        // the cell is the top of the cover chain
        let cell = &t.boundary().simplices()[loc.cell];
        for &c in &loc.cover {
            let other = &t.boundary().simplices()[c];
            prop_assert!(other.iter().all(|p| cell.contains(p)));
        }
    }

    #[test]
    fn chart_round_trip(which in any::<bool>(), tau in 0usize..14, lr in prop::collection::vec(-5.0f64..5.0, 3), ph in prop::collection::vec(0.0f64..std::f64::consts::TAU, 3)) {
        let (t, _) = fixture(which);
        let n = t.dim();
        let tau = &t.boundary().simplices()[tau % t.boundary().simplices().len()];
        let chart = TauChart::new(&t, tau).unwrap();
        let x = TorusPoint::global(lr[..n].to_vec(), ph[..n].to_vec()).unwrap();
        let back = chart.to_global(&chart.from_global(&x));
        for i in 0..n {
            prop_assert!((back.log_radii[i] - x.log_radii[i]).abs() < 1e-9);
            let d = (back.phases[i] - x.phases[i]).rem_euclid(std::f64::consts::TAU);
            prop_assert!(d < 1e-9 || std::f64::consts::TAU - d < 1e-9);
        }
    }

    #[test]
    fn psi_t_within_envelope(which in any::<bool>(), sigma in 0usize..8, w in prop::collection::vec(0u32..20, 4), log_t in 2.0f64..14.0) {
        let (t, lam) = fixture(which);
        let n = t.dim();
        let m = point_in(&t, sigma, &w[..n + 1]);
        // stay off ∂Δ, where μ_t has no preimage
        let m: Vec<Q> = m.iter().map(|x| x * qr(9, 10)).collect();
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let big = psi_t(&model, &arith::to_f64_vec(&m), log_t).unwrap();
        let psi = arith::to_f64(&characteristic_eval(&t, &lam, &m).unwrap());
        let bound = (t.config().len() as f64).ln() / log_t;
        prop_assert!(psi - big >= -1e-9, "ψ {} Ψ {}", psi, big);
        prop_assert!(psi - big <= bound + 1e-9, "ψ {} Ψ {} bound {}", psi, big, bound);
    }

    #[test]
    fn moment_inverse_round_trip(which in any::<bool>(), sigma in 0usize..8, w in prop::collection::vec(0u32..20, 4), log_t in 0.0f64..14.0) {
        let (t, lam) = fixture(which);
        let n = t.dim();
        let m: Vec<Q> = point_in(&t, sigma, &w[..n + 1]).iter().map(|x| x * qr(4, 5)).collect();
        let mf = arith::to_f64_vec(&m);
        let model = MomentModel::new(t.config(), &lam).unwrap();
        let u = moment_inverse(&model, &mf, log_t).unwrap();
        let x = TorusPoint::global(u, vec![0.0; n]).unwrap();
        let back = weighted_moment(&model, &x, &FamilyPoint::new(log_t.exp(), 0.0).unwrap()).unwrap();
        for i in 0..n {
            prop_assert!((back[i] - mf[i]).abs() < 1e-8);
        }
    }

    #[test]
    fn roots_recover_factors(re in prop::collection::vec(-3.0f64..3.0, 4), im in prop::collection::vec(-3.0f64..3.0, 4)) {
        let want: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
        // separated roots only, so the comparison is well conditioned
        for i in 0..4 {
            for j in 0..i {
                prop_assume!((want[i] - want[j]).norm() > 0.1);
            }
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for r in &want {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        let got = polynomial_roots(&coeffs);
        prop_assert!(got.converged);
        for r in &want {
            let best = got.roots.iter().map(|g| (g - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-8, "root {} missed by {}", r, best);
        }
    }

    #[test]
    fn pairings_and_kahler_scale_with_gamma(which in any::<bool>(), num in 1i64..20, den in 1i64..20) {
        let (t, lam) = fixture(which);
        let g = qr(num, den);
        let one = dual_polytope(&t, &lam, &q(1)).unwrap();
        let scaled = dual_polytope(&t, &lam, &g).unwrap();
        let d1 = translation_data(&t, &lam, &one, &nu_map(&t, &one).unwrap()).unwrap();
        let dg = translation_data(&t, &lam, &scaled, &nu_map(&t, &scaled).unwrap()).unwrap();
        for (a, b) in d1.iter().zip(&dg) {
            for (x, y) in a.pairings.iter().zip(&b.pairings) {
                prop_assert_eq!(&x.1 * &g, y.1.clone());
            }
        }
        let k1 = kahler_class(&t, &lam, &q(1)).unwrap();
        let kg = kahler_class(&t, &lam, &g).unwrap();
        for (x, y) in k1.coefficients.iter().zip(&kg.coefficients) {
            prop_assert_eq!(&x.1 * &g, y.1.clone());
        }
    }

    #[test]
    fn fixed_format_round_trips(x in -1e15f64..1e15) {
        let s = arith::fmt_f64(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
    }
}

#[test]
fn boundary_samples_lie_on_the_boundary() {
    for which in [false, true] {
        let (t, _) = fixture(which);
        let pts = boundary_sample(&t, 200);
        assert_eq!(pts.len(), 200);
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 200);
        assert!(pts.iter().all(|p| t.config().polytope.on_boundary_q(p)));
    }
}
