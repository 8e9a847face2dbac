//! Deliberately broken structures are caught, each with a witness.

use std::sync::Arc;

use quantum_twist::hopf::{hopf_verify, smash_build, DEFAULT_MAX_DIM};
use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::samples;
use quantum_twist::report::VerificationReport;
use quantum_twist::twist::{make_j_xi, verify_twist};
use quantum_twist::Cyclotomic;

fn show(what: &str, r: &VerificationReport) {
    println!("{what}:");
    for c in r.failures() {
        match &c.witness {
            Some(w) => println!("  {} at {}: expected {}, got {}", c.name, w.at, w.expected, w.actual),
            None => println!("  {}", c.name),
        }
    }
}

fn main() {
    let nichols = Arc::new(NicholsAlgebra::new(Arc::new(samples::e1())).unwrap());
    let mut j = make_j_xi(&nichols, 0, &Cyclotomic::one()).unwrap();
    j.value.set_coeff(&[1, 1], Cyclotomic::from_int(3));
    show("J_ξ with a wrong coefficient", &verify_twist(nichols.as_ref(), &j, None));

    let h = smash_build(nichols, DEFAULT_MAX_DIM).unwrap();
    let x = h.index(1, 0);
    let g = h.index(0, 1);

    let mut bad = h.clone();
    bad.corrupt_product(x, g, Cyclotomic::from_int(2));
    show("product x·h scaled by 2", &hopf_verify(&bad));

    let mut bad = h.clone();
    bad.corrupt_coproduct(x, &[h.index(0, 0), x], Cyclotomic::from_int(2));
    show("Δ(x) with coefficient 2 on 1 ⊗ x", &hopf_verify(&bad));

    let mut bad = h.clone();
    bad.corrupt_antipode(x, x, Cyclotomic::one());
    show("antipode perturbed at x", &hopf_verify(&bad));
}
