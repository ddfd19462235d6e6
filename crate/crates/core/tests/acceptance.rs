//! One line per acceptance criterion. Criteria are exact; runtime limits are
//! the only tolerances.

use std::sync::OnceLock;
use std::time::Duration;

use dgalab::dga::{builtin_formal_polynomial, builtin_y2};
use dgalab::hochschild::hh_dims;
use dgalab::linalg::Prime;
use dgalab::specseq::{run_bokstedt, BokstedtVariant};
use dgalab::verify::{core_suite, Report, DEFAULT_SEED};

fn limit(id: u32) -> Option<Duration> {
    match id {
        1 | 2 => Some(Duration::from_secs(60)),
        5 => Some(Duration::from_secs(600)),
        _ => None,
    }
}

fn report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| core_suite(DEFAULT_SEED))
}

fn criterion(id: u32) {
    let c = report().checks.iter().find(|c| c.id == id).expect("criterion exists");
    let in_time = limit(id).is_none_or(|l| c.runtime <= l);
    let ok = c.passed && in_time;
    println!(
        "criterion {id}: {} | {} | expected {} | actual {} | {:.3}s",
        if ok { "PASS" } else { "FAIL" },
        c.name,
        c.expected,
        c.actual,
        c.runtime.as_secs_f64()
    );
    assert!(c.passed, "criterion {id}: expected {}, got {}", c.expected, c.actual);
    assert!(in_time, "criterion {id} took {:?}", c.runtime);
}

#[test]
fn criterion_1_hh_of_y2_at_two() {
    criterion(1);
}

#[test]
fn criterion_2_hh_of_formal_model_at_two() {
    criterion(2);
}

#[test]
fn criterion_3_homology_ring_of_y2_mod_two() {
    criterion(3);
}

#[test]
fn criterion_4_endomorphism_dga() {
    criterion(4);
}

#[test]
fn criterion_5_bar_complex_matches_closed_forms() {
    criterion(5);
}

#[test]
fn criterion_6_spectral_sequence_pages() {
    criterion(6);
}

#[test]
fn criterion_7_two_paths_to_hh_of_y2() {
    criterion(7);
}

#[test]
fn criterion_8_property_suite() {
    criterion(8);
}

#[test]
fn suite_has_eight_criteria() {
    assert_eq!(report().checks.len(), 8);
    assert!(report().passed);
}

#[test]
fn literal_tables() {
    let two = Prime::TWO;
    let y2 = hh_dims(&builtin_y2(), two, 7).unwrap().to_vec();
    assert_eq!(y2, [1, 0, 1, 0, 0, 0, 1]);
    let formal = hh_dims(&builtin_formal_polynomial(two, 9).unwrap(), two, 8).unwrap().to_vec();
    assert_eq!(formal, [1, 0, 1, 1, 1, 1, 1, 1]);
    let ss = run_bokstedt(two, BokstedtVariant::Xm { m: 2 }, 6).unwrap();
    assert_eq!(ss.e_infinity.to_vec(0, 6), y2);
    let three = Prime::new(3).unwrap();
    let y = run_bokstedt(three, BokstedtVariant::Y, 6).unwrap();
    assert_eq!(y.e_infinity.to_vec(0, 6), [1, 0, 1, 0, 1, 0, 0]);
    let x3 = run_bokstedt(three, BokstedtVariant::Xm { m: 3 }, 14).unwrap();
    let mut expected = vec![0; 15];
    for n in [0, 2, 4, 14] {
        expected[n] = 1;
    }
    assert_eq!(x3.e_infinity.to_vec(0, 14), expected);
}
