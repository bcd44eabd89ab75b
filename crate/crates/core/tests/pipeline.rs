//! End-to-end checks across modules at moderate precision.

use dp1_core::coords::to_sfu;
use dp1_core::diagnostics::export::{orbit_table, parse_orbit_table, CsvTable};
use dp1_core::diagnostics::{classify_orbit, freud_orbit, OrbitClass};
use dp1_core::expansions::{
    invariant_curve_p_minf, u_asymptotic, x_asymptotic, Branch, HalfPowerSeries, Side, USeries,
};
use dp1_core::lewquarles::{freud_init_from_moments, moments};
use dp1_core::maps::StepIndex;
use dp1_core::numerics::Scalar;
use dp1_core::{BigReal, Params, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn freud_params() -> Params {
    Params::with_settings(q(1, 1), q(1, 1), 1600, 500).unwrap()
}

#[test]
fn freud_ratio_at_200_follows_two_term_expansion() {
    let p = freud_params();
    let o = freud_orbit(1, 200, &p).unwrap();
    let ratio = |n: i64| o.x(n).unwrap().to_f64() / (n as f64).sqrt();
    let r200 = ratio(200);
    let two_term = 1.0 / 3f64.sqrt() - 1.0 / (6.0 * 200f64.sqrt());
    assert!((r200 - two_term).abs() < 2e-4, "{r200}");
    let three_term = x_asymptotic(200, &p, &0.0f64).unwrap() / 200f64.sqrt();
    assert!((r200 - three_term).abs() < 1e-5);
    for n in 50..200 {
        assert!(ratio(n) < ratio(n + 1) && ratio(n + 1) < 1.0 / 3f64.sqrt());
    }
}

#[test]
fn freud_seed_matches_moment_ratio() {
    let p = freud_params();
    let o = freud_orbit(1, 2, &p).unwrap();
    let table = moments(8, &p, p.precision_bits).unwrap();
    let (b1sq, b2sq) = freud_init_from_moments(&table).unwrap();
    let e1 = (o.x(1).unwrap().clone() - b1sq).to_f64().abs();
    let e2 = (o.x(2).unwrap().clone() - b2sq).to_f64().abs();
    assert!(e1 < 1e-140 && e2 < 1e-140, "{e1:e} {e2:e}");
}

#[test]
fn freud_orbit_is_non_polar_and_round_trips_csv() {
    let p = Params::with_settings(q(1, 1), q(1, 1), 800, 300).unwrap();
    let o = freud_orbit(-30, 60, &p).unwrap();
    let rep = classify_orbit(&o, 60);
    assert_eq!(rep.class, OrbitClass::NonPolarSoFar);
    assert_eq!(rep.confinement_events(), 0);
    let mut buf = Vec::new();
    orbit_table(&o).write_to(&mut buf).unwrap();
    let back = parse_orbit_table(&CsvTable::read_from(buf.as_slice()).unwrap(), &BigReal::zero(800)).unwrap();
    assert_eq!(back, o.samples);
    for s in &back {
        if let Some(sfu) = &s.sfu {
            assert_eq!(sfu, &to_sfu(&s.plane, StepIndex(s.n), &p).unwrap());
        }
    }
}

#[test]
fn series_json_round_trip() {
    let (s, _) = invariant_curve_p_minf(10).unwrap();
    let back = USeries::from_json(&s.to_json()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn u_expansion_tracks_freud_in_sfu() {
    let p = Params::with_settings(q(1, 1), q(1, 1), 1200, 400).unwrap();
    let o = freud_orbit(-120, 120, &p).unwrap();
    let g = 1.0f64;
    let check = |n: i64, series: &HalfPowerSeries| {
        let u = o.get(n).unwrap().sfu.as_ref().unwrap().u.to_f64();
        (u - series.eval(n, &g).unwrap()).abs()
    };
    let plus_inf = u_asymptotic(Side::PInf, Branch::Minus, 4).unwrap();
    assert!(check(120, &plus_inf) < 1e-5);
    let minus = u_asymptotic(Side::PMinf, Branch::Minus, 4).unwrap();
    let plus = minus.flip_branch();
    assert!(check(-120, &minus) < 1e-5);
    assert!(check(-119, &plus) < 1e-5);
    // the wrong branch is far off
    assert!(check(-120, &plus) > 1e-2);
}
