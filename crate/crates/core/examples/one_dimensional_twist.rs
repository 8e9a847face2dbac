//! The twist J_ξ on a one-dimensional quantum linear space and its twisted dual.

use std::sync::Arc;

use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::samples;
use quantum_twist::tensor::Algebra;
use quantum_twist::twist::{make_j_xi, twisted_dual_associativity, verify_twist, TwistedDual};
use quantum_twist::Cyclotomic;

fn main() {
    // N = 3: G = Z_6, g = h², χ(h) = ζ_6.
    let b = NicholsAlgebra::new(Arc::new(samples::one_dim(3))).unwrap();
    let xi = Cyclotomic::from_int(5);
    let j = make_j_xi(&b, 0, &xi).unwrap();
    println!("J_ξ = {}", j.value.format(&b));
    println!("J_ξ^-1 = {}", j.inverse.format(&b));
    print!("{}", verify_twist(&b, &j, None));

    let td = TwistedDual::literal(&b, &j.value).unwrap();
    println!("twisted dual product X^i ∗ X^j:");
    for x in 0..b.dim() as u32 {
        for y in 0..b.dim() as u32 {
            println!("  {} ∗ {} = {}", b.label(x), b.label(y), td.product(x, y).format(&b));
        }
    }
    println!("associative: {}", twisted_dual_associativity(&b, &j.value).unwrap());
}
