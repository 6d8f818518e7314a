//! Acceptance criteria, one test each. Every test writes a PASS/FAIL line
//! straight to stderr (bypassing capture) and the full table on failure.

use std::io::Write;

use starlike::verify::{run_criterion, CriterionReport};

fn report(id: usize) -> CriterionReport {
    let r = run_criterion(id).expect("criterion raised an error");
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{}", r.summary_line());
    if !r.passed() {
        let _ = write!(err, "{}", r.table());
    }
    r
}

fn check(id: usize) {
    let r = report(id);
    assert!(r.passed(), "criterion {id} failed; table above");
}

#[test]
fn criterion_01_slit_halfplane_minus_extent() {
    check(1);
}

#[test]
fn criterion_02_factorial_slits_at_45_degrees() {
    check(2);
}

#[test]
fn criterion_03_two_sided_factorial_slits() {
    check(3);
}

#[test]
fn criterion_04_sector_slopes() {
    check(4);
}

#[test]
fn criterion_05_ode_against_closed_form() {
    check(5);
}

#[test]
fn criterion_06_extent_distance_bridge() {
    check(6);
}

#[test]
fn criterion_07_dyadic_sector_kernel() {
    check(7);
}

#[test]
fn criterion_08_boundary_corollaries() {
    check(8);
}

#[test]
fn criterion_09_slope_independence() {
    check(9);
}

#[test]
fn criterion_10_equivariance() {
    check(10);
}
