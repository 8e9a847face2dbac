//! H = 𝔅(V)#kG, the lifted twist T and the twisted Hopf algebra A = H^T.

use std::sync::Arc;

use quantum_twist::hopf::{
    closed_form_check, hopf_verify, lift_family, one_dim_group_like_formula, smash_build, twist_hopf, verify_lifted,
    DEFAULT_MAX_DIM,
};
use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::{samples, QlsDatum, ScalarFamily};
use quantum_twist::tensor::{Algebra, Bialgebra};
use quantum_twist::Cyclotomic;

fn run(name: &str, d: QlsDatum, fam: ScalarFamily) -> quantum_twist::Result<()> {
    let h = smash_build(Arc::new(NicholsAlgebra::new(Arc::new(d))?), DEFAULT_MAX_DIM)?;
    let t = lift_family(&h, &fam, None)?;
    let a = twist_hopf(&h, &t)?;
    println!("== {name}: dim {}", h.dim());
    println!("T = {}", t.value.format(&h));
    let lifted = verify_lifted(&h, &t);
    println!("T is a twist of H: {}", lifted.all_pass());
    println!("H axioms: {}, A axioms: {}", hopf_verify(&h).all_pass(), hopf_verify(&a).all_pass());
    if let Some((ok, _)) = closed_form_check(&h, &a) {
        println!("Δ^T = lift(J_D^-1 J_gD) Δ on {ok} of {} basis elements", h.dim());
    }
    let x = h.index(h.nichols().power(0, 1).unwrap(), 0);
    println!("Δ^T(x1) = {}", a.coproduct(x).format(&h));
    Ok(())
}

fn main() -> quantum_twist::Result<()> {
    let xi = Cyclotomic::one();
    run("E1", samples::e1(), ScalarFamily::zero(1).with_xi(0, xi.clone()))?;
    run("E2", samples::e2(), ScalarFamily::zero(2).with_a(0, 1, Cyclotomic::one()))?;

    // Group-likes of the one-dimensional case against the closed formula.
    let h = smash_build(Arc::new(NicholsAlgebra::new(Arc::new(samples::e1()))?), DEFAULT_MAX_DIM)?;
    let a = twist_hopf(&h, &lift_family(&h, &ScalarFamily::zero(1).with_xi(0, xi.clone()), None)?)?;
    for g in h.group().elements() {
        let f = one_dim_group_like_formula(&h, &xi, g)?;
        let same = a.coproduct(h.index(0, g)) == &f;
        println!("Δ^T(1#{}) = {}  [formula agrees: {same}]", h.group().label(g), f.format(&h));
    }
    Ok(())
}
