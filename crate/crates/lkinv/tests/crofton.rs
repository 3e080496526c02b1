use lkinv::crofton::{crofton_volume_mc, lk_via_slices_mc, Window};
use lkinv::geom::Polytope;
use lkinv::tube::{lk_curvatures, steiner_coefficients, PlSet};
use lkinv::McConfig;

fn polygon_chain(k: usize) -> (PlSet, f64) {
    let pts: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let mut pieces = Vec::new();
    let mut len = 0.0;
    for j in 0..k {
        let a = pts[j].clone();
        let b = pts[(j + 1) % k].clone();
        len += lkinv::linalg::dist(&a, &b);
        pieces.push(Polytope::segment(a, b).unwrap());
    }
    (PlSet::new(2, pieces).unwrap(), len)
}

#[test]
fn unit_segment_length_by_line_counting() {
    let x = PlSet::single(Polytope::segment(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap());
    let s = crofton_volume_mc(&x, 1, None, McConfig::new(1_000_000, 1)).unwrap();
    assert!(s.within(1.0, 3.0), "{s:?}");
    assert!(s.stderr < 2e-3);
    assert!(s.zero_hit_fraction > 0.0 && s.zero_hit_fraction < 1.0);
}

#[test]
fn polygon_perimeter_by_line_counting() {
    let (x, len) = polygon_chain(64);
    let s = crofton_volume_mc(&x, 1, None, McConfig::new(200_000, 2)).unwrap();
    assert!(s.within(len, 3.0), "{s:?} vs {len}");
}

#[test]
fn segment_in_space_matches_plane_embedding() {
    let plane = PlSet::single(Polytope::segment(vec![0.2, 0.1], vec![0.9, 0.5]).unwrap());
    let space = PlSet::single(Polytope::segment(vec![0.2, 0.1, 0.0], vec![0.9, 0.5, 0.0]).unwrap());
    let len = (0.7f64 * 0.7 + 0.4 * 0.4).sqrt();
    let a = crofton_volume_mc(&plane, 1, None, McConfig::new(200_000, 3)).unwrap();
    let b = crofton_volume_mc(&space, 1, None, McConfig::new(200_000, 3)).unwrap();
    assert!(a.within(len, 3.0), "{a:?}");
    assert!(b.within(len, 3.0), "{b:?}");
}

#[test]
fn triangle_area_in_space() {
    let t = Polytope::new(
        vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.2], vec![0.0, 1.0, 0.4]],
        &[vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap();
    let area = t.volume();
    let x = PlSet::single(t);
    let s = crofton_volume_mc(&x, 2, None, McConfig::new(200_000, 4)).unwrap();
    assert!(s.within(area, 3.0), "{s:?} vs {area}");
}

#[test]
fn counting_rejects_non_simplex_pieces() {
    let x = PlSet::single(Polytope::unit_cube(2).unwrap());
    assert!(crofton_volume_mc(&x, 2, None, McConfig::new(10, 0)).is_err());
}

#[test]
fn square_slices_match_steiner() {
    let sq = Polytope::unit_cube(2).unwrap();
    let exact = steiner_coefficients(&sq).unwrap();
    let x = PlSet::single(sq);
    for i in 0..=2 {
        let s = lk_via_slices_mc(&x, i, None, McConfig::new(200_000, 5)).unwrap();
        assert!(s.within(exact.values[i], 3.0), "i={i}: {s:?}");
    }
}

#[test]
fn cube_and_union_slices_match_exact() {
    let cube = Polytope::unit_cube(3).unwrap();
    let exact = steiner_coefficients(&cube).unwrap();
    let x = PlSet::single(cube);
    for i in 1..=3 {
        let s = lk_via_slices_mc(&x, i, None, McConfig::new(100_000, 6)).unwrap();
        assert!(s.within(exact.values[i], 3.0), "i={i}: {s:?}");
    }
    let a = Polytope::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
    let b = Polytope::cuboid(&[0.5, 0.5], &[2.0, 1.5]).unwrap();
    let u = PlSet::new(2, vec![a, b]).unwrap();
    let exact = lk_curvatures(&u).unwrap();
    let w = Window::new(vec![-1.0, -1.0], vec![3.0, 3.0]).unwrap();
    for i in 0..=2 {
        let s = lk_via_slices_mc(&u, i, Some(&w), McConfig::new(100_000, 7)).unwrap();
        assert!(s.within(exact.values[i], 3.0), "i={i}: {s:?}");
    }
}
