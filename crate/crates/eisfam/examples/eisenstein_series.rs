//! Classical and p-stabilized Eisenstein series, including the character
//! variants of conductor p^2, all over exact (cyclotomic) rationals.
//!
//!     cargo run --example eisenstein_series

use eisfam::arith::{rat_display, vp_rat, DirichletCharacter};
use eisfam::forms::{eisenstein_level1, eisenstein_star_character, eisenstein_star_classical};

fn main() {
    let prec = 8usize;

    let e4 = eisenstein_level1(4, prec).unwrap();
    println!("E_4      = {}", show(e4.coeffs()));

    let es4 = eisenstein_star_classical(5, 4, prec).unwrap();
    println!("E*_4 (p=5) = {}", show(es4.coeffs()));
    println!(
        "  v_5 of the q-coefficient: {} (equals v_5(w(4)) = 1)",
        vp_rat(es4.coeff(1), 5).unwrap()
    );

    // kappa = x^4 chi with chi of conductor 25, chi(7) = 1, chi(6) = zeta
    let chi = DirichletCharacter::from_generator_images(5, &[(7, 0), (6, 1)]).unwrap();
    let ek = eisenstein_star_character(5, 4, &chi, 5).unwrap();
    println!("E*_kappa over Q(zeta_5), first coefficients:");
    for (n, c) in ek.coeffs().iter().enumerate() {
        let v = c
            .valuation()
            .map(|v| rat_display(&v))
            .unwrap_or_else(|| "inf".into());
        println!("  q^{n}: valuation {v}");
    }
}

fn show(coeffs: &[eisfam::Rat]) -> String {
    let cells: Vec<String> = coeffs.iter().map(rat_display).collect();
    format!("[{}] + O(q^{})", cells.join(", "), coeffs.len())
}
