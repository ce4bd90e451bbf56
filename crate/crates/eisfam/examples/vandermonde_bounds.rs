//! The sharp denominator exponent f(n) for interpolation over p-adic units,
//! and the optimal node sets attaining it.
//!
//!     cargo run --example vandermonde_bounds

use eisfam::vand::{f_bound, NodeSet};

fn main() {
    for p in [5u64, 7, 13] {
        println!("p = {p}");
        println!("  n : f(n), optimal nodes");
        for n in 1..=12u64 {
            let s = NodeSet::optimal(p, n);
            let nodes: Vec<String> = s.nodes().iter().map(|x| x.to_string()).collect();
            println!("  {n:2} : {:4}  {{{}}}", f_bound(p, n), nodes.join(", "));
            assert_eq!(s.max_v(), f_bound(p, n), "optimal set must attain f(n)");
        }
    }

    // the exact symmetric-polynomial inverse, on a small example
    let s = NodeSet::optimal(5, 4);
    println!("\nV^-1 over the optimal 4-node set for p = 5:");
    for row in s.inverse_vandermonde_exact() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
}
