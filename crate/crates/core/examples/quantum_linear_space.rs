//! A quantum linear space datum and the predicates on a scalar family D.

use quantum_twist::qls::{samples, ScalarFamily};
use quantum_twist::Cyclotomic;

fn main() {
    // G = Z_6, g_1 = h², g_2 = h⁴, χ_1 = χ_2 = (h ↦ ζ_6).
    let d = samples::e2();
    println!("{}", d.validate());
    for i in 0..2 {
        for j in 0..2 {
            println!("q_{}{} = {}", i + 1, j + 1, d.q(i, j));
        }
    }

    let gamma = d.gamma().members().to_vec();
    let one = Cyclotomic::one();
    for (label, fam) in [
        ("a12 = 1", ScalarFamily::zero(2).with_a(0, 1, one.clone())),
        ("a12 = a21 = 1", ScalarFamily::zero(2).with_a(0, 1, one.clone()).with_a(1, 0, one.clone())),
        ("ξ1 = 1", ScalarFamily::zero(2).with_xi(0, one.clone())),
    ] {
        println!(
            "{label}: compatible {}, Γ-invariant {}, restated predicate {}",
            fam.is_compatible(&d),
            fam.is_invariant(&d, &gamma),
            fam.is_bilinear_invariant(&d),
        );
        if let Some(why) = fam.compatibility_violation(&d) {
            println!("  {why}");
        }
    }
}
