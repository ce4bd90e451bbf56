//! Recover the two-variable expansion sum a_nj w^j q^n of the Eisenstein
//! family ratio by interpolation over classical weights, push it to the Katz
//! basis, and check the overconvergence bounds.
//!
//!     cargo run --release --example family_table

use eisfam::family::{formal_katz, formal_w_expansion, verify_bound, BoundConstant};
use eisfam::report::table_to_csv;

fn main() {
    let p = 5u64;
    let (rows, wdeg, prec, depth) = (16usize, 8usize, 8i64, 12u64);

    let table = formal_w_expansion(p, rows, wdeg, prec).unwrap();
    println!("a_nj valuations (rows n, columns j):");
    print!("{}", table_to_csv(&table));

    let katz = formal_katz(&table, depth).unwrap();
    println!("\nb_ij valuations (rows i, columns j):");
    print!("{}", table_to_csv(&katz));

    for c in [BoundConstant::ThmA, BoundConstant::Prop34] {
        let rep = verify_bound(&katz, &c).unwrap();
        println!(
            "\nbound {} (c = {}): {} checked, {} undetermined, {} violations, empirical profile {}",
            rep.label,
            rep.constant,
            rep.checked,
            rep.undetermined,
            rep.violations.len(),
            rep.empirical_profile
                .as_ref()
                .map(|r| r.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        assert!(rep.ok());
    }
}
