use std::f64::consts::PI;

use lkinv::geom::Polytope;
use lkinv::tube::*;
use lkinv::McConfig;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn square_and_cube_coefficients() {
    let sq = steiner_coefficients(&Polytope::unit_cube(2).unwrap()).unwrap();
    assert!(close(&sq.values, &[1.0, 2.0, 1.0], 1e-8), "{sq:?}");
    let cube = steiner_coefficients(&Polytope::unit_cube(3).unwrap()).unwrap();
    assert!(close(&cube.values, &[1.0, 3.0, 3.0, 1.0], 1e-8), "{cube:?}");
}

#[test]
fn box_coefficients_are_elementary_symmetric() {
    let (a, b, c) = (0.5, 2.0, 3.0);
    let p = Polytope::cuboid(&[0.0, 0.0, 0.0], &[a, b, c]).unwrap();
    let lk = steiner_coefficients(&p).unwrap();
    assert!(close(&lk.values, &[1.0, a + b + c, a * b + b * c + c * a, a * b * c], 1e-9), "{lk:?}");
}

#[test]
fn polygon_exterior_angles_at_vertices_sum_to_one() {
    let p = Polytope::polygon(vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![1.0, 2.0], vec![-0.5, 1.0]]).unwrap();
    let total: f64 = p
        .faces_of_dim(0)
        .map(|(k, _)| exterior_angle(&p, k, McConfig::new(1000, 0)).unwrap().value)
        .sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn steiner_matches_mc_tube_volume() {
    for n in [2, 3] {
        let p = Polytope::unit_cube(n).unwrap();
        let lk = steiner_coefficients(&p).unwrap();
        let x = PlSet::single(p);
        for (k, eps) in [0.05, 0.1, 0.2].into_iter().enumerate() {
            let est = tube_volume_mc(&x, eps, McConfig::new(1_000_000, 11 + k as u64)).unwrap();
            assert!(est.within(lk.steiner_polynomial(eps), 3.0), "n={n} eps={eps}: {est:?}");
        }
    }
}

#[test]
fn union_is_additive() {
    let a = Polytope::cuboid(&[0.0, 0.0], &[2.0, 1.0]).unwrap();
    let b = Polytope::cuboid(&[1.0, 0.0], &[3.0, 2.0]).unwrap();
    let ab = a.intersect(&b).unwrap().unwrap();
    let union = lk_curvatures(&PlSet::new(2, vec![a.clone(), b.clone()]).unwrap()).unwrap();
    let (la, lb, lab) =
        (steiner_coefficients(&a).unwrap(), steiner_coefficients(&b).unwrap(), steiner_coefficients(&ab).unwrap());
    for i in 0..=2 {
        assert!((union.values[i] - (la.values[i] + lb.values[i] - lab.values[i])).abs() < 1e-9);
    }
}

#[test]
fn segment_in_space() {
    let s = Polytope::segment(vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 2.0]).unwrap();
    let lk = steiner_coefficients(&s).unwrap();
    assert!(close(&lk.values, &[1.0, 3.0, 0.0, 0.0], 1e-9), "{lk:?}");
}

#[test]
fn two_points_need_the_weighted_integral() {
    let x = PlSet::new(2, vec![Polytope::point(vec![0.0, 0.0]).unwrap(), Polytope::point(vec![2.0, 0.0]).unwrap()]).unwrap();
    let eps = 1.5;
    let target = 2.0 * PI * eps * eps;
    let mc = McConfig::new(1_000_000, 3);
    let w = weighted_tube_integral_mc(&x, eps, mc).unwrap();
    assert!(w.within(target, 3.0), "{w:?}");
    let plain = tube_volume_mc(&x, eps, mc).unwrap();
    assert!((plain.value - target).abs() > 5.0 * plain.stderr);
}

#[test]
fn chi_ball_counts_overlap_once() {
    let x = PlSet::new(2, vec![Polytope::point(vec![0.0, 0.0]).unwrap(), Polytope::point(vec![2.0, 0.0]).unwrap()]).unwrap();
    assert_eq!(chi_ball(&x, &[1.0, 0.0], 1.5).unwrap(), 2);
    assert_eq!(chi_ball(&x, &[-1.0, 0.0], 1.5).unwrap(), 1);
    assert_eq!(chi_ball(&x, &[5.0, 0.0], 1.5).unwrap(), 0);
}

#[test]
fn smooth_benchmarks() {
    let c = smooth_benchmark_tube(SmoothShape::Circle(1.0), 0.1).unwrap();
    assert!((c - 4.0 * PI * 0.1).abs() < 1e-12);
    let d = smooth_benchmark_tube(SmoothShape::Disc(1.0), 0.5).unwrap();
    assert!((d - PI * 2.25).abs() < 1e-12);
    assert!(smooth_benchmark_tube(SmoothShape::Sphere(1.0), 1.0).is_err());
}

#[test]
fn simplex_lk_matches_known_values() {
    // Standard triangle: perimeter 2 + √2 halves to Λ_1, area 1/2.
    let t = Polytope::simplex(2).unwrap();
    let lk = steiner_coefficients(&t).unwrap();
    assert!(close(&lk.values, &[1.0, (2.0 + 2f64.sqrt()) / 2.0, 0.5], 1e-9), "{lk:?}");
}
