//! Finite abelian groups, subgroups, cosets and characters.

use std::sync::Arc;

use quantum_twist::group::{character_group_of, coset_representatives, FiniteGroup, GroupSpec, Subgroup};

fn main() {
    let g = Arc::new(FiniteGroup::from_spec(&GroupSpec::Product(vec![4, 2])).unwrap());
    println!("|G| = {}, exponent {}", g.order(), g.exponent());

    let gamma = Subgroup::generated(&g, &[2]).unwrap();
    let labels: Vec<&str> = gamma.members().iter().map(|&x| g.label(x)).collect();
    println!("Γ = ⟨{}⟩ = {{{}}}", g.label(2), labels.join(", "));

    let reps = coset_representatives(&gamma);
    let reps: Vec<&str> = reps.iter().map(|&s| g.label(s)).collect();
    println!("coset representatives: {}", reps.join(", "));

    let chars = character_group_of(&g).unwrap();
    println!("{} characters:", chars.len());
    for c in chars.iter().take(4) {
        let vals: Vec<String> = g.elements().map(|x| c.eval(x).to_string()).collect();
        println!("  [{}]", vals.join(", "));
    }
}
