use std::f64::consts::PI;

use lkinv::geom::{unit_ball_volume, Cone, Polytope};
use lkinv::local::*;
use lkinv::tube::{lk_curvatures, PlSet};
use lkinv::McConfig;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn germ(n: usize, gens: &[&[f64]]) -> ConicGerm {
    ConicGerm::from_generators(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Sector of the disc of radius r between angles a < b (b − a ≤ π), as a
/// polygon with `m` arc points.
fn sector(a: f64, b: f64, r: f64, m: usize) -> Polytope {
    let mut pts = Vec::new();
    let full = (b - a - PI).abs() < 1e-12;
    if !full {
        pts.push(vec![0.0, 0.0]);
    }
    for k in 0..=m {
        let t = a + (b - a) * k as f64 / m as f64;
        pts.push(vec![r * t.cos(), r * t.sin()]);
    }
    Polytope::polygon(pts).unwrap()
}

#[test]
fn plane_half_plane_half_line() {
    let plane = local_lk(&germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]])).unwrap();
    assert!(close(plane.values[0], 1.0, 1e-12) && close(plane.values[2], 1.0, 1e-12));
    assert!(close(plane.values[1], PI / 2.0, 1e-12), "{:?}", plane.values);

    let j: ConicGermJson = serde_json::from_str(&fixture("half_plane_germ.json")).unwrap();
    let half = local_lk(&ConicGerm::from_json(&j).unwrap()).unwrap();
    assert!(close(half.values[0], 1.0, 1e-12));
    assert!(close(half.values[1], 0.5 + PI / 4.0, 1e-12));
    assert!(close(half.values[2], 0.5, 1e-12));

    let ray = local_lk(&germ(2, &[&[1.0, 0.0]])).unwrap();
    assert!(close(ray.values[1], 0.5, 1e-12) && ray.values[2].abs() < 1e-12);
}

#[test]
fn densities() {
    let j: ConicGermJson = serde_json::from_str(&fixture("quarter_plane_germ.json")).unwrap();
    assert_eq!(density(&ConicGerm::from_json(&j).unwrap()).unwrap().value, 0.25);
    assert!(close(density(&germ(2, &[&[1.0, 0.0]])).unwrap().value, 0.5, 1e-15));
    assert!(close(density(&germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]])).unwrap().value, 1.0, 1e-15));
}

#[test]
fn space_germs_against_hand_values() {
    let half_space = local_lk(&germ(3, &[&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 1.0]])).unwrap();
    let want = [1.0, 1.0 + PI / 4.0, 1.5, 0.5];
    for i in 0..4 {
        assert!(close(half_space.values[i], want[i], 1e-10), "{:?}", half_space.values);
    }
    let octant = local_lk(&germ(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]])).unwrap();
    let want = [1.0, 5.0 / 8.0 + 3.0 * PI / 16.0, 5.0 / 8.0, 1.0 / 8.0];
    for i in 0..4 {
        assert!(close(octant.values[i], want[i], 1e-10), "{:?}", octant.values);
    }
}

#[test]
fn planar_germs_match_polygonal_balls_at_every_radius() {
    // Sector germs and a non-convex union, against polygons inscribed in B̄(0, ρ).
    let cases: Vec<(ConicGerm, Vec<(f64, f64)>)> = vec![
        (germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]), vec![(0.0, PI)]),
        (germ(2, &[&[1.0, 0.0], &[0.3f64.cos(), 0.3f64.sin()]]), vec![(0.0, 0.3)]),
        (
            ConicGerm::union(
                2,
                vec![
                    Cone::from_generators(2, vec![vec![1.0, 0.0], vec![1.0f64.cos(), 1.0f64.sin()]]).unwrap(),
                    Cone::from_generators(2, vec![vec![0.5f64.cos(), 0.5f64.sin()], vec![2.5f64.cos(), 2.5f64.sin()]]).unwrap(),
                ],
            )
            .unwrap(),
            vec![(0.0, 1.0), (0.5, 2.5)],
        ),
    ];
    for (g, sectors) in cases {
        let exact = local_lk(&g).unwrap();
        for rho in [0.5, 1.0, 2.0] {
            let pieces = sectors.iter().map(|&(a, b)| sector(a, b, rho, 4096)).collect();
            let l = lk_curvatures(&PlSet::new(2, pieces).unwrap()).unwrap();
            for i in 0..=2 {
                let scaled = l.values[i] / (unit_ball_volume(i) * rho.powi(i as i32));
                assert!(close(scaled, exact.values[i], 1e-6 * exact.values[i].abs().max(1.0)), "i={i} rho={rho}: {scaled} vs {}", exact.values[i]);
            }
        }
    }
}

#[test]
fn pushforward_examples() {
    let half = germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
    let f = pushforward(&half, &[vec![0.6, 0.8]]).unwrap();
    assert_eq!(f.origin_value, 1);
    assert!(f.sectors.iter().all(|s| s.value == 1));
    assert!(close(f.theta(), 1.0, 1e-15));

    let point = germ(2, &[]);
    let f = pushforward(&point, &[vec![0.6, 0.8]]).unwrap();
    assert_eq!(f.origin_value, 1);
    assert!(f.sectors.iter().all(|s| s.value == 0));

    let wedge = germ(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
    let frame = lkinv::geom::sample_grassmannian_seeded(2, 3, 11);
    let f = pushforward(&wedge, &frame).unwrap();
    assert!(close(f.theta(), theta(&wedge, &frame, McConfig::new(10, 0)).value, 1e-9));
}

#[test]
fn pushforward_flags_near_orthogonal_lines() {
    let ray = germ(2, &[&[1.0, 0.0]]);
    let e = pushforward(&ray, &[vec![1e-5, 1.0]]).unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn polar_invariants_examples() {
    let mc = McConfig::new(100_000, 9);
    let ray = germ(2, &[&[1.0, 0.0]]);
    assert_eq!(polar_invariant(&ray, 0, mc).unwrap().value, 1.0);
    let s1 = polar_invariant(&ray, 1, mc).unwrap();
    assert!(s1.within(0.5, 3.0), "{s1:?}");
    let half = germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
    let s1 = polar_invariant(&half, 1, mc).unwrap();
    assert!(close(s1.value, 1.0, 1e-12), "{s1:?}");
    let s2 = polar_invariant(&half, 2, mc).unwrap();
    assert!(close(s2.value, 0.5, 1e-12));
}

#[test]
fn linear_subspaces_have_unit_low_polar_invariants() {
    let mc = McConfig::new(20_000, 4);
    let line = germ(3, &[&[1.0, 2.0, 2.0], &[-1.0, -2.0, -2.0]]);
    assert!(close(polar_invariant(&line, 1, mc).unwrap().value, 1.0, 1e-12));
    let plane = germ(3, &[&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 1.0, 1.0], &[0.0, -1.0, -1.0]]);
    for i in 1..=2 {
        assert!(close(polar_invariant(&plane, i, mc).unwrap().value, 1.0, 1e-12));
    }
    assert_eq!(polar_invariant(&plane, 3, mc).unwrap().value, 0.0);
}

#[test]
fn top_polar_invariant_is_density() {
    let mc = McConfig::new(50_000, 5);
    for g in [
        germ(2, &[&[1.0, 0.0], &[0.2, 1.0]]),
        germ(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 1.0]]),
        germ(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]),
    ] {
        let d = g.dim();
        let s = polar_invariant(&g, d, mc).unwrap();
        let th = density(&g).unwrap().value;
        let l = local_lk(&g).unwrap().values[d];
        assert!(s.within(th, 3.0), "{s:?} vs {th}");
        assert!(close(th, l, 1e-10));
    }
}

#[test]
fn sampled_and_exact_polar_paths_agree() {
    let mc = McConfig::new(40_000, 6);
    let g = ConicGerm::union(
        3,
        vec![
            Cone::from_generators(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap(),
            Cone::from_generators(3, vec![vec![-1.0, 0.2, 0.1], vec![0.0, 1.0, 0.0], vec![0.0, 0.3, 1.0]]).unwrap(),
        ],
    )
    .unwrap();
    let exact = polar_invariants_exact(&g).unwrap();
    for i in 0..=3 {
        let s = polar_invariant(&g, i, mc).unwrap();
        assert!(s.within(exact[i].value, 4.0), "i={i}: {s:?} vs {:?}", exact[i]);
    }
}

#[test]
fn mlcc_on_half_plane() {
    let half = germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]]);
    let r = mlcc_verify(&half, 1e-3, McConfig::new(100_000, 1)).unwrap();
    assert!(r.pass, "{r:?}");
    let m = mlcc_matrix(2).unwrap();
    assert!(close(0.5 + PI / 4.0, 1.0 + m.get(1, 2) * 0.5, 1e-14));
}

#[test]
fn spherical_valuations_of_arcs() {
    let mc = McConfig::new(20_000, 2);
    let q = Cone::from_generators(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let v = spherical_valuations(&q, mc).unwrap();
    assert!(close(v.xi[0].value, 1.0, 1e-12));
    assert!(close(v.xi[1].value, PI / 2.0, 1e-12));
    assert_eq!(v.sigma[0].value, 1.0);
    let half = Cone::from_generators(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let v = spherical_valuations(&half, mc).unwrap();
    let direct = local_lk(&germ(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]])).unwrap();
    assert_eq!(v.lambda, direct.values);
    let full = Cone::from_normals(3, vec![]).unwrap();
    let v = spherical_valuations(&full, mc).unwrap();
    assert!(close(v.lambda[3], 1.0, 1e-12));
}

#[test]
fn complex_fixtures_satisfy_polar_identities() {
    for name in ["complex_smooth_curve.json", "complex_cusp.json", "complex_node.json", "complex_a2_surface.json", "complex_point.json"] {
        let data: ComplexGermData = serde_json::from_str(&fixture(name)).unwrap();
        let r = complex_report(&data).unwrap();
        assert!(r.pass, "{name}: {r:?}");
    }
    let smooth: ComplexGermData = serde_json::from_str(&fixture("complex_smooth_curve.json")).unwrap();
    assert_eq!(kashiwara_e(&smooth, 0).unwrap(), 1);
    let a2: ComplexGermData = serde_json::from_str(&fixture("complex_a2_surface.json")).unwrap();
    assert_eq!(complex_report(&a2).unwrap().e, vec![0, 2, 0]);
}
