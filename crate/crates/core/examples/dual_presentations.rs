//! The coset algebras A_s, the presentations of their duals and the pointedness criterion.

use std::sync::Arc;

use quantum_twist::dual::{pointedness_check, CosetDual};
use quantum_twist::hopf::{lift_family, smash_build, twist_hopf, DEFAULT_MAX_DIM};
use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::{samples, QlsDatum, ScalarFamily};
use quantum_twist::Cyclotomic;

fn run(name: &str, d: QlsDatum, fam: &ScalarFamily) -> quantum_twist::Result<()> {
    let h = smash_build(Arc::new(NicholsAlgebra::new(Arc::new(d))?), DEFAULT_MAX_DIM)?;
    let a = twist_hopf(&h, &lift_family(&h, fam, None)?)?;
    println!("== {name}");
    let (p, report) = pointedness_check(&a, fam)?;
    for pres in &p.presentations {
        println!("A_{}*: d = {:?}, ξ' = {:?}", pres.coset, pres.d, pres.xi);
    }
    println!("pointed (D̂ G-invariant): {}, all presentations basic: {}", p.pointed, p.all_basic);
    for c in report.failures() {
        println!("  FAIL {}", c.name);
    }
    let s = a.group().elements().nth(1).unwrap();
    let cd = CosetDual::new(&a, s)?;
    let x = cd.x(0);
    println!("in A_{}*: X1 ∗ X1 = {}", a.group().label(cd.representative()), cd.format(&cd.mul(&x, &x)));
    Ok(())
}

fn main() -> quantum_twist::Result<()> {
    run("E1, ξ = 1", samples::e1(), &ScalarFamily::zero(1).with_xi(0, Cyclotomic::one()))?;
    let fam = ScalarFamily::zero(2).with_a(0, 1, Cyclotomic::one()).with_a(1, 0, Cyclotomic::from_int(2));
    run("E3, a12 = 1, a21 = 2", samples::e3(), &fam)?;
    Ok(())
}
