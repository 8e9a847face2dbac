//! Finite groups given by Cayley tables, their subgroups, cosets and characters.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// Largest group order accepted.
pub const MAX_GROUP_ORDER: usize = 512;

/// Group description as it appears in config files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    /// `Z_n` with element `k` standing for `h^k`.
    Cyclic(usize),
    /// `Z_{n1} × ... × Z_{nk}`, mixed radix with the last factor varying fastest.
    Product(Vec<usize>),
    /// Explicit Cayley table, 0-based, index 0 the identity.
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(n) => Self::cyclic(*n),
            GroupSpec::Product(ns) => Self::product(ns),
            GroupSpec::Table(rows) => Self::from_table(rows.clone()),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::product(&[n])
    }

    pub fn product(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&n| n == 0) {
            return Err(Error::Group("factor orders must be positive".into()));
        }
        let order = factors.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        let order = match order {
            Some(m) if m <= MAX_GROUP_ORDER => m,
            _ => return Err(Error::Group(format!("order exceeds {MAX_GROUP_ORDER}"))),
        };
        let digits = |mut g: usize| {
            let mut d = vec![0; factors.len()];
            for (slot, &n) in d.iter_mut().zip(factors).rev() {
                *slot = g % n;
                g /= n;
            }
            d
        };
        let pack = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &n)| acc * n + x);
        let mut table = vec![0; order * order];
        let mut inv = vec![0; order];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).zip(factors).map(|((x, y), n)| (x + y) % n).collect();
                table[a * order + b] = pack(&sum);
            }
            let neg: Vec<usize> = da.iter().zip(factors).map(|(x, n)| (n - x) % n).collect();
            inv[a] = pack(&neg);
        }
        let labels = (0..order)
            .map(|g| {
                if factors.len() == 1 {
                    match g {
                        0 => "e".to_string(),
                        1 => "h".to_string(),
                        k => format!("h^{k}"),
                    }
                } else {
                    let d = digits(g);
                    format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        Ok(FiniteGroup { order, table, inv, labels })
    }

    /// Validates a Cayley table: identity at index 0, Latin square, associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || m > MAX_GROUP_ORDER {
            return Err(Error::Group(format!("order {m} outside 1..={MAX_GROUP_ORDER}")));
        }
        if let Some(r) = rows.iter().position(|row| row.len() != m) {
            return Err(Error::Group(format!("row {r} has the wrong length")));
        }
        if let Some((a, b)) = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).find(|&(a, b)| rows[a][b] >= m) {
            return Err(Error::Group(format!("entry ({a},{b}) out of range")));
        }
        for g in 0..m {
            if rows[0][g] != g || rows[g][0] != g {
                return Err(Error::Group(format!("index 0 is not an identity at {g}")));
            }
        }
        for (a, row) in rows.iter().enumerate() {
            let set: BTreeSet<_> = row.iter().collect();
            if set.len() != m {
                return Err(Error::Group(format!("row {a} is not a permutation")));
            }
        }
        for b in 0..m {
            let set: BTreeSet<_> = rows.iter().map(|row| row[b]).collect();
            if set.len() != m {
                return Err(Error::Group(format!("column {b} is not a permutation")));
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    if table[ab * m + c] != table[a * m + table[b * m + c]] {
                        return Err(Error::Group(format!("associativity fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        let inv = (0..m)
            .map(|a| (0..m).find(|&b| table[a * m + b] == 0).expect("latin square row contains identity"))
            .collect();
        let labels = (0..m).map(|g| format!("g{g}")).collect();
        Ok(FiniteGroup { order: m, table, inv, labels })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| num::integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::Group(format!("element index {g} out of range for order {}", self.order)))
        }
    }
}

/// A subgroup, stored as a sorted member list with a reverse index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    abelian: bool,
    central: bool,
}

impl Subgroup {
    /// Smallest subgroup containing `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        for &g in gens {
            parent.check_index(g)?;
        }
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_members(parent, set.into_iter().collect())
    }

    /// Wraps a member list after checking closure.
    pub fn from_members(parent: &Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &g in &members {
            parent.check_index(g)?;
        }
        let mut position = vec![None; parent.order()];
        for (i, &g) in members.iter().enumerate() {
            position[g] = Some(i);
        }
        if position[0].is_none() {
            return Err(Error::Group("subset does not contain the identity".into()));
        }
        for &a in &members {
            if position[parent.inv(a)].is_none() {
                return Err(Error::Group(format!("subset not closed under inverse at {a}")));
            }
            for &b in &members {
                if position[parent.mul(a, b)].is_none() {
                    return Err(Error::Group(format!("subset not closed under product at ({a},{b})")));
                }
            }
        }
        let abelian = members.iter().all(|&a| members.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)));
        let central = members.iter().all(|&a| parent.is_central(a));
        Ok(Subgroup { parent: parent.clone(), members, position, abelian, central })
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_members(parent, parent.elements().collect()).expect("whole group is a subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position.get(g).map_or(false, |p| p.is_some())
    }

    /// Position of `g` inside [`members`](Self::members).
    pub fn position(&self, g: usize) -> Option<usize> {
        self.position.get(g).copied().flatten()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    /// The subgroup as a group in its own right, indexed by member position.
    pub fn as_group(&self) -> FiniteGroup {
        let m = self.order();
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| self.position[self.parent.mul(self.members[i], self.members[j])].unwrap())
                    .collect()
            })
            .collect();
        let mut g = FiniteGroup::from_table(rows).expect("subgroup table is a group");
        g.labels = self.members.iter().map(|&x| self.parent.label(x).to_string()).collect();
        g
    }

    /// All characters of the subgroup, which must be abelian.
    ///
    /// Characters are returned as [`Character`]s of [`as_group`](Self::as_group),
    /// sorted by their exponent vectors.
    pub fn character_group(&self) -> Result<Vec<Character>> {
        if !self.abelian {
            return Err(Error::Group("character group of a nonabelian subgroup".into()));
        }
        let g = Arc::new(self.as_group());
        character_group_of(&g)
    }
}

/// Every homomorphism from an abelian group into the roots of unity.
pub fn character_group_of(g: &Arc<FiniteGroup>) -> Result<Vec<Character>> {
    if !g.is_abelian() {
        return Err(Error::Group("character group of a nonabelian group".into()));
    }
    let e = g.exponent();
    // Greedy generating set, each generator outside the span of the previous ones.
    let mut gens: Vec<usize> = Vec::new();
    let mut span: BTreeSet<usize> = BTreeSet::from([0]);
    while span.len() < g.order() {
        let next = g
            .elements()
            .filter(|x| !span.contains(x))
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
            .unwrap();
        gens.push(next);
        let sub = Subgroup::generated(&Arc::new(g.as_ref().clone()), &gens)?;
        span = sub.members().iter().copied().collect();
    }
    let mut out: Vec<Character> = Vec::new();
    let mut choice = vec![0u32; gens.len()];
    loop {
        if let Some(c) = extend_from_generators(g, e, &gens, &choice) {
            if !out.iter().any(|o| o.exps == c.exps) {
                out.push(c);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                out.sort_by(|a, b| a.exps.cmp(&b.exps));
                return Ok(out);
            }
            choice[k] += 1;
            if (choice[k] as usize) < e {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend_from_generators(g: &Arc<FiniteGroup>, e: usize, gens: &[usize], imgs: &[u32]) -> Option<Character> {
    let mut exps: Vec<Option<u32>> = vec![None; g.order()];
    exps[0] = Some(0);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        let ex = exps[x].unwrap();
        for (&gen, &im) in gens.iter().zip(imgs) {
            let y = g.mul(x, gen);
            let ey = (ex + im) % e as u32;
            match exps[y] {
                None => {
                    exps[y] = Some(ey);
                    frontier.push(y);
                }
                Some(old) if old != ey => return None,
                _ => {}
            }
        }
    }
    let exps: Vec<u32> = exps.into_iter().map(|x| x.unwrap()).collect();
    Character::from_exponents(g, e, exps).ok()
}

/// Lowest-index representatives of the left cosets `sΓ`, the identity first.
pub fn coset_representatives(gamma: &Subgroup) -> Vec<usize> {
    let g = gamma.parent();
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for s in g.elements() {
        if covered[s] {
            continue;
        }
        reps.push(s);
        for &x in gamma.members() {
            covered[g.mul(s, x)] = true;
        }
    }
    reps
}

/// A one-dimensional character with values `ζ_m^{exps[g]}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    group: Arc<FiniteGroup>,
    modulus: usize,
    exps: Vec<u32>,
    values: Vec<Cyclotomic>,
}

impl Character {
    /// Builds a character from exponents of `ζ_modulus`; checks multiplicativity.
    pub fn from_exponents(group: &Arc<FiniteGroup>, modulus: usize, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != group.order() {
            return Err(Error::Character(format!(
                "expected {} values, got {}",
                group.order(),
                exps.len()
            )));
        }
        let m = modulus as u32;
        let exps: Vec<u32> = exps.into_iter().map(|k| k % m).collect();
        for a in group.elements() {
            for b in group.elements() {
                if exps[group.mul(a, b)] != (exps[a] + exps[b]) % m {
                    return Err(Error::Character(format!(
                        "not multiplicative on ({}, {})",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        let values = exps.iter().map(|&k| Cyclotomic::root_of_unity(modulus, k as i64)).collect();
        Ok(Character { group: group.clone(), modulus, exps, values })
    }

    /// Builds a character from exact values; each must be a root of unity of
    /// order dividing the exponent of the group.
    pub fn from_values(group: &Arc<FiniteGroup>, values: &[Cyclotomic]) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Character(format!(
                "expected {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        let e = group.exponent();
        let roots: Vec<Cyclotomic> = (0..e).map(|k| Cyclotomic::root_of_unity(e, k as i64)).collect();
        let mut exps = Vec::with_capacity(values.len());
        for (g, v) in values.iter().enumerate() {
            match roots.iter().position(|r| r == v) {
                Some(k) => exps.push(k as u32),
                None => {
                    return Err(Error::Character(format!(
                        "value at {} is not a root of unity of order dividing {e}",
                        group.label(g)
                    )))
                }
            }
        }
        Self::from_exponents(group, e, exps)
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_exponents(group, 1, vec![0; group.order()]).unwrap()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Exponent `k` with `χ(g) = ζ_m^k`, `m` the modulus.
    pub fn exponent_at(&self, g: usize) -> u32 {
        self.exps[g]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn eval(&self, g: usize) -> &Cyclotomic {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Character) -> Character {
        let m = num::integer::lcm(self.modulus, other.modulus);
        let (sa, sb) = ((m / self.modulus) as u32, (m / other.modulus) as u32);
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| (a * sa + b * sb) % m as u32).collect();
        Character::from_exponents(&self.group, m, exps).unwrap()
    }

    pub fn pow(&self, k: i64) -> Character {
        let m = self.modulus as i64;
        let exps = self.exps.iter().map(|&a| ((a as i64 * k).rem_euclid(m)) as u32).collect();
        Character::from_exponents(&self.group, self.modulus, exps).unwrap()
    }

    pub fn inverse(&self) -> Character {
        self.pow(-1)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(mod {}; {:?})", self.modulus, self.exps)
    }
}

/// Checks multiplicativity of a value vector without building a [`Character`].
pub fn character_validate(group: &Arc<FiniteGroup>, values: &[Cyclotomic]) -> bool {
    values.len() == group.order()
        && group.elements().all(|a| {
            group.elements().all(|b| values[group.mul(a, b)] == &values[a] * &values[b])
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        // Permutations of {0,1,2}, identity first.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Arc::new(FiniteGroup::from_table(rows).unwrap())
    }

    #[test]
    fn cyclic_table() {
        let g = z(4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn product_group() {
        let g = FiniteGroup::product(&[3, 2]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert!(g.elements().any(|x| g.element_order(x) == 6));
    }

    #[test]
    fn corrupted_table() {
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table(rows).is_err());
        let rows = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table(rows).is_err());
    }

    #[test]
    fn generated_subgroups() {
        let g = z(6);
        assert_eq!(Subgroup::generated(&g, &[2]).unwrap().order(), 3);
        assert_eq!(Subgroup::generated(&g, &[0]).unwrap().order(), 1);
        let s = s3();
        let c3 = Subgroup::generated(&s, &[1]).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.is_abelian());
        assert!(!c3.is_central());
    }

    #[test]
    fn cosets() {
        let g = z(6);
        let gamma = Subgroup::generated(&g, &[2]).unwrap();
        assert_eq!(coset_representatives(&gamma), vec![0, 1]);
        assert_eq!(coset_representatives(&Subgroup::whole(&g)), vec![0]);
        let p = Arc::new(FiniteGroup::product(&[4, 2]).unwrap());
        // (2,0) is index 4 in the mixed radix encoding.
        let gamma = Subgroup::generated(&p, &[4]).unwrap();
        let reps = coset_representatives(&gamma);
        assert_eq!(reps.len(), 4);
        let mut all: Vec<usize> = reps.iter().flat_map(|&s| gamma.members().iter().map(|&x| p.mul(s, x)).collect::<Vec<_>>()).collect();
        all.sort();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn characters() {
        let g = z(6);
        let vals: Vec<Cyclotomic> = (0..6).map(|k| Cyclotomic::root_of_unity(6, k)).collect();
        assert!(character_validate(&g, &vals));
        assert!(Character::from_values(&g, &vals).is_ok());
        let mut bad = vals.clone();
        bad[2] = Cyclotomic::zeta(6);
        assert!(!character_validate(&g, &bad));
        assert!(Character::from_values(&g, &bad).is_err());
    }

    #[test]
    fn character_group_of_z3() {
        let g = z(6);
        let gamma = Subgroup::generated(&g, &[2]).unwrap();
        let chars = gamma.character_group().unwrap();
        assert_eq!(chars.len(), 3);
        for a in &chars {
            for b in &chars {
                let p = a.mul(b);
                assert!(chars.iter().any(|c| c.values() == p.values()));
            }
        }
    }

    #[test]
    fn character_group_separates_points() {
        let g = Arc::new(FiniteGroup::product(&[2, 4]).unwrap());
        let chars = character_group_of(&g).unwrap();
        assert_eq!(chars.len(), 8);
        for x in 1..8 {
            assert!(chars.iter().any(|c| !c.eval(x).is_one()));
        }
    }
}
