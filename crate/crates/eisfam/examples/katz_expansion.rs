//! Katz expansions f = sum b_i / E_{p-1}^i and the valuation profiles that
//! measure overconvergence rates.
//!
//!     cargo run --example katz_expansion

use eisfam::arith::{vp_rat, ValOrBound};
use eisfam::family::{classical_ratio, prop35_bound};
use eisfam::forms::{dim_mk, KatzBasis};
use eisfam::Rat;

fn main() {
    let p = 5u64;
    let k = 4u64;
    let depth = 20u64;
    let total = dim_mk((depth * (p - 1)) as i64) as usize;

    let basis = KatzBasis::new(p, depth, total).unwrap();
    let f = classical_ratio(p, k, total).unwrap();
    let x = basis.decompose(&f).unwrap();

    let bound = prop35_bound(p);
    println!("Katz valuation profile of E*_{k}/V(E*_{k}) at p = {p}:");
    println!("  (the rate from the proposition is {} per block)", bound);
    for (i, v) in x.valuation_profile(|c: &Rat| match vp_rat(c, p) {
        Some(v) => ValOrBound::Exact(eisfam::arith::rat(v, 1)),
        None => ValOrBound::Infinite,
    }) {
        let need = &bound * eisfam::arith::rat(i as i64, 1);
        let status = if v.certainly_at_least(&need) { "ok" } else { "VIOLATION" };
        println!("  i = {i:2}: v(b_i) = {:8}  needs >= {need}  [{status}]", cell(&v));
    }
}

fn cell(v: &ValOrBound) -> String {
    v.to_csv_cell()
}
