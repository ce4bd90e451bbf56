//! Rescaled reduction of the t-coefficients at a wild character: with
//! gamma = d_p, the reductions of u_n w^{-gamma n} modulo the maximal ideal
//! vanish off the integral twists, identically across characters.
//!
//!     cargo run --example rescaled_reduction

use eisfam::arith::DirichletCharacter;
use eisfam::family::{default_gamma, rescaled_reduction};

fn main() {
    let p = 5u64;
    let gamma = default_gamma(p);
    println!("gamma = d_p = {gamma}");

    let mut sequences = Vec::new();
    for e in [1u64, 2] {
        let chi = DirichletCharacter::from_generator_images(p, &[(7, 0), (6, e)]).unwrap();
        let rep = rescaled_reduction(p, 4, &chi, &gamma, 13).unwrap();
        println!("chi(6) = zeta^{e}: residues {:?}", rep.residues);
        println!(
            "  u-valuations: {:?}",
            rep.u_valuations
                .iter()
                .map(|v| v.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "inf".into()))
                .collect::<Vec<_>>()
        );
        assert!(rep.positivity_failures.is_empty());
        sequences.push(rep.residues);
    }
    assert_eq!(sequences[0], sequences[1], "reductions must agree across characters");
    println!("the two reduced sequences coincide");
}
