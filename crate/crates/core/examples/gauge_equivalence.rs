//! On the exterior algebra the twist e^{B_a} is gauge equivalent to 1 ⊗ 1 via c = e^{a xy}.

use std::sync::Arc;

use quantum_twist::config::nilpotent_exp;
use quantum_twist::nichols::NicholsAlgebra;
use quantum_twist::qls::samples;
use quantum_twist::tensor::Tensor;
use quantum_twist::twist::gauge_check;
use quantum_twist::Cyclotomic;

fn main() {
    let b = NicholsAlgebra::new(Arc::new(samples::e3())).unwrap();
    let (x, y) = (b.power(0, 1).unwrap(), b.power(1, 1).unwrap());
    let xy = b.monomial(&[1, 1]).unwrap();
    let one = Tensor::unit(&b, 2);
    for a in [1, 2] {
        let a = Cyclotomic::from_int(a);
        let ba = Tensor::basis(&[x, y], a.clone()).sub(&Tensor::basis(&[y, x], a.clone()));
        let j = nilpotent_exp(&b, &ba).unwrap();
        for s in [a.clone(), -&a] {
            let c = nilpotent_exp(&b, &Tensor::basis(&[xy], s.clone())).unwrap();
            let o = gauge_check(&b, &one, &j, &c).unwrap();
            println!("a = {a}, c = e^(({s}) xy): equivalent {}", o.equivalent);
            if let Some(w) = o.witness {
                println!("  at {}: expected {}, got {}", w.at, w.expected, w.actual);
            }
        }
    }
}
