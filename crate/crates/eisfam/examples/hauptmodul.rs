//! The genus-zero Hauptmoduls f_p = (eta(pz)/eta(z))^(24/(p-1)) and
//! re-expansion of modular functions in powers of t = f_p.
//!
//!     cargo run --example hauptmodul

use eisfam::family::classical_ratio;
use eisfam::forms::t_expand;
use eisfam::qexp::hauptmodul;

fn main() {
    for p in [5u64, 7, 13] {
        let f = hauptmodul(p, 10).unwrap();
        let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
        println!("f_{p} = [{}] + O(q^10)", coeffs.join(", "));
    }

    // t-expansion of E*_4/V(E*_4) at p = 5
    let p = 5u64;
    let g = classical_ratio(p, 4, 12).unwrap();
    let u = t_expand(p, &g, 12).unwrap();
    println!("\nE*_4/V(E*_4) = sum u_n t^n at p = 5:");
    for (n, c) in u.iter().enumerate() {
        println!("  u_{n:2} = {c}");
    }
}
