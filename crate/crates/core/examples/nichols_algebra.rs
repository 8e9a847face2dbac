//! PBW basis, products and braided coproduct of a Nichols algebra.

use std::sync::Arc;

use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::samples;
use quantum_twist::tensor::{Algebra, Bialgebra};

fn main() {
    let b = NicholsAlgebra::new(Arc::new(samples::e2())).unwrap();
    println!("dim 𝔅(V) = {}", b.dim());

    let (x1, x2) = (b.x(0), b.x(1));
    println!("x2 x1 = {}", x2.mul(&x1, &b).format(&b));
    println!("x1^3 = {}", x1.pow(3, &b).format(&b));

    let m = b.monomial(&[2, 1]).unwrap();
    println!("Δ({}) = {}", b.label(m), b.coproduct(m).format(&b));

    // ⟨x^r, x^r⟩ is the product of q-factorials.
    for a in b.basis().take(5) {
        println!("⟨{0}, {0}⟩ = {1}", b.label(a), b.factorial(a));
    }
}
