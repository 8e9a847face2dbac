//! Exact arithmetic in cyclotomic fields and the q-binomial identity sweep.

use quantum_twist::scalar::{q_binomial, q_binomial_identity_sweep, q_factorial, Cyclotomic};

fn main() {
    let i = Cyclotomic::zeta(4);
    let w = Cyclotomic::zeta(3);
    // Mixed conductors are promoted to the lcm.
    let s = &i + &w;
    println!("ζ4 + ζ3 = {s}");
    println!("(ζ4 + ζ3)^12 = {}", s.pow(12));
    println!("1 / (1 + ζ3) = {}", (Cyclotomic::one() + &w).inverse().unwrap());

    let lit = "1/2 + -3/4*z^1 (conductor 5)";
    let c: Cyclotomic = lit.parse().unwrap();
    assert_eq!(c.to_string(), lit);
    println!("parsed {lit:?} and printed it back unchanged");

    let q = Cyclotomic::zeta(6);
    for k in 0..=4 {
        println!("binom[4, {k}]_q at q = ζ6: {}", q_binomial(4, k, &q).unwrap());
    }
    println!("(6)!_q at q = ζ6: {}", q_factorial(6, &q));

    let sweep = q_binomial_identity_sweep(8);
    println!("identity sweep N <= 8: {} roots, {} instances, {} failures", sweep.roots, sweep.instances, sweep.failures.len());
}
