//! The conductor-25 counterexample: at kappa = x^4 chi the tenth t-coefficient
//! of E*_kappa/V(E*_kappa) has valuation 1, refuting the hope that the
//! overconvergence constant could be taken to be 1.
//!
//!     cargo run --example counterexample

use eisfam::family::{counterexample, verify_specialized_bound, BoundConstant};
use eisfam::Rat;
use num_traits::One;

fn main() {
    let rep = counterexample(5, 13, 14).unwrap();
    println!("kappa = x^{} chi, chi images {:?}", rep.k0, rep.chi_images);
    println!("v_5(w(kappa)) = {}", rep.w_valuation);
    for (n, v) in rep.u_valuations.iter().enumerate() {
        println!("  v_5(u_{n:2}) = {}", v.to_csv_cell());
    }
    println!(
        "v_5(u_10) = {} but a constant of 1 would force >= {}: refuted = {}",
        rep.observed, rep.required_if_c_were_1, rep.refutes
    );
    assert!(rep.refutes);

    // the Theorem A constant survives the same column
    let ok = verify_specialized_bound(5, &rep.u_valuations, &BoundConstant::ThmA, &rep.w_valuation);
    let bad = verify_specialized_bound(
        5,
        &rep.u_valuations,
        &BoundConstant::Custom(Rat::one()),
        &rep.w_valuation,
    );
    println!(
        "thmA constant: {} violations; constant 1: {} violations",
        ok.violations.len(),
        bad.violations.len()
    );
    assert!(ok.ok() && !bad.ok());
}
