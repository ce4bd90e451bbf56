//! U_p acting on powers of the Hauptmodul via Coleman's trick, and the
//! Newton-polygon slopes of the truncated characteristic polynomial.
//!
//!     cargo run --example u_matrix_slopes

use eisfam::family::{rational_matrix_slopes, u_matrix_weight0, u_matrix_weight_classical};

fn main() {
    let p = 5u64;
    let size = 6usize;

    let m = u_matrix_weight0(p, size).unwrap();
    println!("weight-0 matrix m_ij = [t^j] U(f_p^i):");
    for row in &m {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }

    for k in [4u64, 8, 12] {
        let mk = u_matrix_weight_classical(p, k, size).unwrap();
        let s = rational_matrix_slopes(p, &mk);
        let slopes: Vec<String> = s
            .slopes
            .iter()
            .map(|(v, m)| format!("{v} (x{m})"))
            .collect();
        println!("weight {k}: slopes {} (+{} infinite)", slopes.join(", "), s.infinite);
        // the ordinary Eisenstein direction contributes the slope-0 eigenvalue
        assert_eq!(s.slopes[0].0, eisfam::Rat::from_integer(0.into()));
    }
    println!("(slopes are reliable only within the truncation size)");
}
