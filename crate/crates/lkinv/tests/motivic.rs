use lkinv::motivic::*;
use num::BigRational;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> ResolutionData {
    ResolutionData::load(fixture(name)).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn l() -> GrothendieckClass {
    GrothendieckClass::l()
}

fn one() -> GrothendieckClass {
    GrothendieckClass::one()
}

/// [X_m]·L^{−2m} for f = xy by enumerating arcs mod t^{m+1} at the origin:
/// ord x = p, ord y = q with p + q = m, leading coefficients on {st = 1} ≅ G_m,
/// the m − p and m − q higher coefficients free.
fn node_arc_coefficient(m: i64) -> GrothendieckClass {
    let mut total = GrothendieckClass::zero();
    for p in 1..m {
        let q = m - p;
        let torus = &l() - &one();
        let free = (m - p) + (m - q);
        total = &total + &torus.shift(free - 2 * m);
    }
    total
}

#[test]
fn node_zeta_matches_arc_enumeration() {
    let z = zeta_from_resolution(&load("node.json"), Mode::Complex).unwrap();
    assert_eq!(z.terms.len(), 3);
    let e = expand_series(&z, 4).unwrap();
    for m in 1..=4 {
        assert_eq!(e[m as usize - 1], node_arc_coefficient(m), "T^{m}");
    }
}

#[test]
fn two_gate_convolution() {
    let res = ResolutionData::from_str(
        r#"{"n": 2, "components": [{"id": "A", "N": 2, "nu": 3, "exceptional": true},
                                   {"id": "B", "N": 3, "nu": 1, "exceptional": false}],
            "strata": [{"I": ["A", "B"], "class": [[0, 1, 1]]}]}"#,
    )
    .unwrap();
    let z = zeta_from_resolution(&res, Mode::Complex).unwrap();
    let e = expand_series(&z, 20).unwrap();
    let c = &l() - &one();
    for m in 1..=20i64 {
        let mut want = GrothendieckClass::zero();
        for k1 in 1..=m {
            for k2 in 1..=m {
                if 2 * k1 + 3 * k2 == m {
                    want = &want + &c.shift(-3 * k1 - k2);
                }
            }
        }
        assert_eq!(e[m as usize - 1], want);
    }
}

#[test]
fn node_milnor_fibre() {
    let res = load("node.json");
    let z = zeta_from_resolution(&res, Mode::Complex).unwrap();
    let s = motivic_milnor_fibre(&z).unwrap();
    assert_eq!(s, &one() - &l());
    assert_eq!(euler_realization(&s, Mode::Complex), q(0));
    assert_eq!(milnor_fibre_via_inverse_series(&z).unwrap(), s);
    assert_eq!(milnor_fibre_chi(&z).unwrap(), q(0));
}

#[test]
fn limit_and_inverse_series_agree_on_all_class_data() {
    for name in ["node.json", "x2y2_real.json"] {
        let res = load(name);
        let modes: Vec<Mode> = if name == "node.json" {
            let mut m = vec![Mode::Complex];
            m.extend(Sign::ALL.map(Mode::Real));
            m
        } else {
            Sign::ALL.map(Mode::Real).to_vec()
        };
        for mode in modes {
            let z = zeta_from_resolution(&res, mode).unwrap();
            assert_eq!(motivic_milnor_fibre(&z).unwrap(), milnor_fibre_via_inverse_series(&z).unwrap());
            assert_eq!(
                euler_realization(&motivic_milnor_fibre(&z).unwrap(), mode),
                milnor_fibre_chi(&z).unwrap()
            );
        }
    }
}

#[test]
fn chi_collapse_to_exceptional_singletons() {
    for name in ["node.json", "cusp.json"] {
        let res = load(name);
        assert!(res.cover_mismatches().is_empty(), "{name}");
        let z = zeta_from_resolution(&res, Mode::Complex).unwrap();
        let want: i64 = res
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.exceptional)
            .map(|(k, c)| c.mult as i64 * res.singleton(k).unwrap().chi.unwrap())
            .sum();
        assert_eq!(milnor_fibre_chi(&z).unwrap(), q(want), "{name}");
    }
}

#[test]
fn acampo_values() {
    let node = load("node.json");
    assert_eq!(acampo_lefschetz(&node, 0).unwrap(), 0);
    assert_eq!(acampo_lefschetz(&node, 1).unwrap(), 0);
    let cusp = load("cusp.json");
    // χ(X_0) = 1 − μ with μ = (2−1)(3−1).
    assert_eq!(acampo_lefschetz(&cusp, 0).unwrap(), -1);
    assert_eq!(acampo_lefschetz(&cusp, 6).unwrap(), -1);
    assert_eq!(acampo_lefschetz(&cusp, 1).unwrap(), 0);
    assert_eq!(acampo_lefschetz(&cusp, 2).unwrap(), 2);
    assert_eq!(acampo_lefschetz(&cusp, 3).unwrap(), 3);
    let z = zeta_from_resolution(&cusp, Mode::Complex).unwrap();
    assert_eq!(milnor_fibre_chi(&z).unwrap(), q(-1));
}

#[test]
fn missing_singleton_chi_is_a_validation_error() {
    let res = ResolutionData::from_str(
        r#"{"n": 2, "components": [{"id": "E", "N": 2, "nu": 2, "exceptional": true}],
            "strata": [{"I": ["E"], "class": [[1, 1, 1]]}]}"#,
    )
    .unwrap();
    assert!(matches!(acampo_lefschetz(&res, 2), Err(lkinv::Error::Validation(_))));
}

#[test]
fn monodromy_profiles() {
    let node = MonodromyProfile::from_resolution(&load("node.json"), 8).unwrap();
    assert_eq!(node.period, 2);
    assert!(chi_zeta_closed_form(&node).unwrap().is_zero());
    let cusp = MonodromyProfile::from_resolution(&load("cusp.json"), 24).unwrap();
    assert_eq!(cusp.period, 6);
    let form = chi_zeta_closed_form(&cusp).unwrap();
    assert_eq!(form.numerator, vec![0, 2, 3, 2, 0, -1]);
    let back: Vec<i64> = cusp.lefschetz.values().copied().collect();
    assert_eq!(form.expand(24), back);
}

#[test]
fn consistency_on_fixtures() {
    let r = consistency_check_14(&load("node.json"), 8).unwrap();
    assert!(r.pass, "{r:?}");
    let r = consistency_check_14(&load("cusp.json"), 12).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn consistency_negative_controls() {
    let base = std::fs::read_to_string(fixture("cusp.json")).unwrap();
    let chi = base.replace(r#"{"I": ["E1"], "chi": 1,"#, r#"{"I": ["E1"], "chi": 2,"#);
    assert_ne!(chi, base);
    assert!(!consistency_check_14(&ResolutionData::from_str(&chi).unwrap(), 12).unwrap().pass);
    let mult = base.replace(r#""id": "E2", "N": 3"#, r#""id": "E2", "N": 4"#);
    assert_ne!(mult, base);
    assert!(!consistency_check_14(&ResolutionData::from_str(&mult).unwrap(), 12).unwrap().pass);
    // ν only enters through powers of L, which the Euler realization forgets.
    let nu = base.replace(r#""N": 6, "nu": 5"#, r#""N": 6, "nu": 4"#);
    assert_ne!(nu, base);
    assert!(consistency_check_14(&ResolutionData::from_str(&nu).unwrap(), 12).unwrap().pass);
}

#[test]
fn pole_candidates() {
    let z = zeta_from_resolution(&load("node.json"), Mode::Complex).unwrap();
    let p = monodromy_pole_candidates(&z);
    assert_eq!(p.len(), 1);
    assert_eq!((p[0].nu, p[0].mult), (2, 2));
    assert_eq!(p[0].label(), "1");
    let z = zeta_from_resolution(&load("cusp.json"), Mode::Complex).unwrap();
    let p = monodromy_pole_candidates(&z);
    let c = p.iter().find(|c| (c.nu, c.mult) == (5, 6)).unwrap();
    assert_eq!((c.p, c.q), (5, 6));
    assert_eq!(p.len(), 3);
}

#[test]
fn cusp_class_level_needs_classes() {
    let z = zeta_from_resolution(&load("cusp.json"), Mode::Complex).unwrap();
    assert!(matches!(expand_series(&z, 3), Err(lkinv::Error::Validation(_))));
    assert!(motivic_milnor_fibre(&z).is_err());
}

#[test]
fn periodicity_of_realized_coefficients() {
    for name in ["node.json", "cusp.json"] {
        let z = zeta_from_resolution(&load(name), Mode::Complex).unwrap();
        let chi = expand_series_chi(&z, 48).unwrap();
        let period = 6;
        for m in 0..48 - period {
            assert_eq!(chi[m], chi[m + period], "{name} at T^{}", m + 1);
        }
    }
}

fn poly(name: &str) -> Polynomial {
    let j: PolynomialJson = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    Polynomial::from_json(&j).unwrap()
}

#[test]
fn oracle_examples() {
    let cfg = OracleConfig::default();
    assert_eq!(germ_chi_oracle(&poly("poly_x2.json"), Question::Closed(Sign::Plus), &cfg).unwrap(), 2);
    assert_eq!(germ_chi_oracle(&poly("poly_x2y2.json"), Question::Closed(Sign::Plus), &cfg).unwrap(), 0);
    assert_eq!(germ_chi_oracle(&poly("poly_xy.json"), Question::Closed(Sign::Plus), &cfg).unwrap(), 2);
}

#[test]
fn oracle_rejects_link_of_fibre_sign() {
    let cfg = OracleConfig::default();
    assert!(germ_chi_oracle(&poly("poly_xy.json"), Question::Link(Sign::Plus), &cfg).is_err());
}

#[test]
fn real_relations_for_xy() {
    let v = oracle_values(&poly("poly_xy.json"), &OracleConfig::default()).unwrap();
    for (s, closed, open) in [(Sign::Minus, 2, -2), (Sign::Plus, 2, -2), (Sign::Less, -2, 2), (Sign::Greater, -2, 2)] {
        assert_eq!(v.get(Question::Closed(s)), Some(closed), "{s:?}");
        assert_eq!(v.get(Question::Open(s)), Some(open), "{s:?}");
    }
    assert_eq!(v.get(Question::Link(Sign::Greater)), Some(2));
    assert_eq!(v.get(Question::Link(Sign::Less)), Some(2));
    let r = real_chi_relations(Some(&load("node.json")), &v).unwrap();
    assert!(r.oracle_pass);
    assert_eq!(r.motivic_pass, Some(true), "{r:?}");
    // The alternating (−2)-power sum disagrees once |I| = 2 strata contribute.
    assert_eq!(r.minus_two_pass, Some(false));
    let plus = &r.rows[1];
    let sums = plus.power_sums.as_ref().unwrap();
    assert_eq!((sums.two.clone(), sums.minus_two.clone()), (q(2), q(-6)));
}

#[test]
fn real_relations_for_sum_of_squares() {
    let v = oracle_values(&poly("poly_x2y2.json"), &OracleConfig::default()).unwrap();
    assert!(v.closed.iter().chain(&v.open).chain(&v.link).all(|(_, x)| *x == 0), "{v:?}");
    let r = real_chi_relations(Some(&load("x2y2_real.json")), &v).unwrap();
    assert!(r.oracle_pass);
    assert_eq!(r.motivic_pass, Some(true));
    assert_eq!(r.minus_two_pass, Some(true));
}

#[test]
fn one_variable_relations() {
    // f = x²: two points for ε > 0, none for −ε.
    let v = oracle_values(&poly("poly_x2.json"), &OracleConfig::default()).unwrap();
    assert_eq!(v.get(Question::Closed(Sign::Plus)), Some(2));
    assert_eq!(v.get(Question::Open(Sign::Plus)), Some(2));
    assert_eq!(v.get(Question::Closed(Sign::Minus)), Some(0));
    let r = real_chi_relations(None, &v).unwrap();
    assert!(r.rows.iter().all(|row| row.boundary_ok));
}
