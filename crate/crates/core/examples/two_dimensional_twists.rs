//! q-exponential twists exp_q(a x_i ⊗ x_j), the choice of base, and products J_D.

use std::sync::Arc;

use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::{samples, ScalarFamily};
use quantum_twist::twist::{make_exp_b_with_base, make_j_d, twisted_dual_associativity, verify_twist};
use quantum_twist::Cyclotomic;

fn main() {
    let b = NicholsAlgebra::new(Arc::new(samples::e2())).unwrap();
    let d = b.datum().clone();
    let a = Cyclotomic::one();
    for (name, base) in [("q_12", d.q(0, 1)), ("q_21", d.q(1, 0))] {
        let t = make_exp_b_with_base(&b, 0, 1, &a, base).unwrap();
        let r = verify_twist(&b, &t, None);
        println!(
            "exp base {name}: twist equation {}, dual associative {}",
            r.passed("twist equation"),
            twisted_dual_associativity(&b, &t.value).unwrap()
        );
    }

    // Both a_12 and a_21 nonzero: the two exponentials do not commute here.
    let fam = ScalarFamily::zero(2).with_a(0, 1, a.clone()).with_a(1, 0, Cyclotomic::from_int(2));
    let jd = make_j_d(&b, &fam).unwrap();
    println!("J_D has {} factors, first non-commuting pair {:?}", jd.factors.len(), jd.noncommuting);
    let r = verify_twist(&b, &jd.twist, Some(d.gamma().members()));
    for c in r.failures() {
        println!("  fails {:?}", c.name);
    }
    println!("dual associative: {}", twisted_dual_associativity(&b, &jd.twist.value).unwrap());
}
