//! Sparse elements of tensor powers of a finite-dimensional algebra.
//!
//! Algebras here have a distinguished basis closed under multiplication up
//! to scalars (a product of basis elements is zero or a multiple of a basis
//! element). That covers the Nichols algebras, group algebras and the
//! bosonizations built from them, and keeps the product kernel a pure
//! scalar-bookkeeping loop.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::report::Witness;
use crate::scalar::Cyclotomic;

pub type Key = SmallVec<[u32; 4]>;

/// Number of left-hand terms above which products run in parallel.
const PAR_THRESHOLD: usize = 64;

/// A finite-dimensional algebra with a multiplicative basis.
pub trait Algebra: Sync {
    fn dim(&self) -> usize;

    fn unit(&self) -> u32;

    /// `b_a b_b = c·b_k`, or `None` when the product vanishes.
    fn mul_basis(&self, a: u32, b: u32) -> Option<(u32, Cyclotomic)>;

    /// Scalar `s` in `c(b_left ⊗ b_right) = s·b_right ⊗ b_left`; `None` means 1.
    /// Ordinary algebras leave this at the default.
    fn braid(&self, _left: u32, _right: u32) -> Option<Cyclotomic> {
        None
    }

    fn label(&self, a: u32) -> String;
}

/// An algebra with a coproduct and counit on its basis.
pub trait Bialgebra: Algebra {
    fn coproduct(&self, a: u32) -> &Tensor;

    fn counit(&self, a: u32) -> Cyclotomic;

    /// Group in which [`degree`](Self::degree) takes values, for braided objects.
    fn grading_group(&self) -> Option<&Arc<FiniteGroup>> {
        None
    }

    /// Group degree of a homogeneous basis element, for braided objects.
    fn degree(&self, _a: u32) -> Option<usize> {
        None
    }

    /// Scalar by which `h` acts on a basis element, for braided objects.
    fn act(&self, _h: usize, _a: u32) -> Option<Cyclotomic> {
        None
    }
}

/// A sparse element of `A^{⊗k}`; `k = 1` gives plain algebra elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Key, Cyclotomic>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn basis(key: &[u32], coeff: Cyclotomic) -> Self {
        let mut t = Tensor::zero(key.len());
        t.add_term(Key::from_slice(key), coeff);
        t
    }

    pub fn unit<A: Algebra + ?Sized>(alg: &A, arity: usize) -> Self {
        Tensor::basis(&vec![alg.unit(); arity], Cyclotomic::one())
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Key, Cyclotomic)>) -> Self {
        let mut t = Tensor::zero(arity);
        for (k, c) in terms {
            assert_eq!(k.len(), arity, "key arity mismatch");
            t.add_term(k, c);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Key, Cyclotomic)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, key: &[u32]) -> Cyclotomic {
        self.terms.get(key).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add_term(&mut self, key: Key, coeff: Cyclotomic) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Overwrites one coefficient; used for deliberate corruption in tests.
    pub fn set_coeff(&mut self, key: &[u32], coeff: Cyclotomic) {
        if coeff.is_zero() {
            self.terms.remove(key);
        } else {
            self.terms.insert(Key::from_slice(key), coeff);
        }
    }

    fn check_arity(&self, other: &Tensor) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::Arity { left: self.arity, right: other.arity })
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.check_arity(other).unwrap_or_else(|e| panic!("{e}"));
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    pub fn scale(&self, s: &Cyclotomic) -> Tensor {
        if s.is_zero() {
            return Tensor::zero(self.arity);
        }
        Tensor { arity: self.arity, terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// Product of two basis keys, including braiding scalars for every pair of
    /// right-hand component `i` passing left-hand component `j > i`.
    pub fn mul_keys<A: Algebra + ?Sized>(alg: &A, a: &[u32], b: &[u32]) -> Option<(Key, Cyclotomic)> {
        let mut key = Key::with_capacity(a.len());
        let mut scalar: Option<Cyclotomic> = None;
        let mut fold = |s: Cyclotomic| {
            scalar = Some(match scalar.take() {
                None => s,
                Some(t) => &t * &s,
            });
        };
        for (x, y) in a.iter().zip(b) {
            let (k, s) = alg.mul_basis(*x, *y)?;
            key.push(k);
            if !s.is_one() {
                fold(s);
            }
        }
        for i in 0..b.len() {
            for j in i + 1..a.len() {
                if let Some(s) = alg.braid(a[j], b[i]) {
                    if !s.is_one() {
                        fold(s);
                    }
                }
            }
        }
        Some((key, scalar.unwrap_or_else(Cyclotomic::one)))
    }

    /// Product in the (braided) tensor power.
    pub fn mul<A: Algebra + ?Sized>(&self, other: &Tensor, alg: &A) -> Tensor {
        self.check_arity(other).unwrap_or_else(|e| panic!("{e}"));
        let rhs: Vec<(&Key, &Cyclotomic)> = other.terms.iter().collect();
        let partial = |(ka, ca): (&Key, &Cyclotomic)| {
            let mut acc = Tensor::zero(self.arity);
            for (kb, cb) in &rhs {
                if let Some((k, s)) = Tensor::mul_keys(alg, ka, kb) {
                    let c = if s.is_one() { ca * *cb } else { &(ca * *cb) * &s };
                    acc.add_term(k, c);
                }
            }
            acc
        };
        if self.terms.len() * rhs.len() < PAR_THRESHOLD * 4 {
            let mut out = Tensor::zero(self.arity);
            for t in self.terms.iter() {
                out.absorb(partial(t));
            }
            out
        } else {
            let lhs: Vec<(&Key, &Cyclotomic)> = self.terms.iter().collect();
            lhs.into_par_iter()
                .map(partial)
                .reduce(|| Tensor::zero(self.arity), |mut a, b| {
                    a.absorb(b);
                    a
                })
        }
    }

    fn absorb(&mut self, other: Tensor) {
        for (k, c) in other.terms {
            self.add_term(k, c);
        }
    }

    pub fn pow<A: Algebra + ?Sized>(&self, n: usize, alg: &A) -> Tensor {
        let mut acc = Tensor::unit(alg, self.arity);
        for _ in 0..n {
            acc = acc.mul(self, alg);
        }
        acc
    }

    /// Applies `Δ` to leg `leg`, raising the arity by one.
    pub fn apply_coproduct<B: Bialgebra + ?Sized>(&self, leg: usize, alg: &B) -> Tensor {
        let mut out = Tensor::zero(self.arity + 1);
        for (k, c) in &self.terms {
            for (dk, dc) in alg.coproduct(k[leg]).terms() {
                let mut key = Key::with_capacity(self.arity + 1);
                key.extend_from_slice(&k[..leg]);
                key.extend_from_slice(dk);
                key.extend_from_slice(&k[leg + 1..]);
                out.add_term(key, c * dc);
            }
        }
        out
    }

    /// Applies `ε` to leg `leg`, lowering the arity by one.
    pub fn apply_counit<B: Bialgebra + ?Sized>(&self, leg: usize, alg: &B) -> Tensor {
        let mut out = Tensor::zero(self.arity - 1);
        for (k, c) in &self.terms {
            let e = alg.counit(k[leg]);
            if e.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, c * &e);
        }
        out
    }

    /// Inserts a unit leg at `position` (`J ⊗ 1` is `position = arity`).
    pub fn insert_unit(&self, position: usize, unit: u32) -> Tensor {
        let mut out = Tensor::zero(self.arity + 1);
        for (k, c) in &self.terms {
            let mut key = k.clone();
            key.insert(position, unit);
            out.add_term(key, c.clone());
        }
        out
    }

    /// `a ⊗ b` as an element of the tensor power of arity `a.arity + b.arity`.
    pub fn outer(a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::zero(a.arity + b.arity);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    /// Applies a basis map with scalars to every leg.
    pub fn map_keys(&self, f: impl Fn(&[u32]) -> Option<(Key, Cyclotomic)>) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            if let Some((nk, s)) = f(k) {
                out.add_term(nk, c * &s);
            }
        }
        out
    }

    /// First key (in key order) where `self` and `expected` differ.
    pub fn first_difference(&self, expected: &Tensor) -> Option<(Key, Cyclotomic, Cyclotomic)> {
        let keys: std::collections::BTreeSet<&Key> = self.terms.keys().chain(expected.terms.keys()).collect();
        for k in keys {
            let a = self.coeff(k);
            let e = expected.coeff(k);
            if a != e {
                return Some((k.clone(), e, a));
            }
        }
        None
    }

    /// `Ok` when equal, otherwise a witness naming the first differing basis tensor.
    pub fn compare<A: Algebra + ?Sized>(&self, expected: &Tensor, alg: &A) -> std::result::Result<(), Witness> {
        match self.first_difference(expected) {
            None => Ok(()),
            Some((k, e, a)) => Err(Witness::new(format_key(&k, alg), e, a)),
        }
    }

    /// Inverse of an element `1 + n` with `n` nilpotent, by the geometric series.
    pub fn inverse_unipotent<A: Algebra + ?Sized>(&self, alg: &A) -> Result<Tensor> {
        let one = Tensor::unit(alg, self.arity);
        if self.coeff(&vec![alg.unit(); self.arity]) != Cyclotomic::one() {
            return Err(Error::Precondition("constant term is not 1".into()));
        }
        let n = self.sub(&one);
        let minus_n = n.scale(&Cyclotomic::from_int(-1));
        let bound = alg.dim().pow(self.arity as u32) + 1;
        let mut acc = one.clone();
        let mut p = one;
        for _ in 0..bound {
            p = p.mul(&minus_n, alg);
            if p.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&p);
        }
        Err(Error::NotNilpotent { order: bound })
    }

    pub fn format<A: Algebra + ?Sized>(&self, alg: &A) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "({}) {}", c, format_key(k, alg));
        }
        s
    }

    /// `[[labels...], literal]` pairs, for reports.
    pub fn to_json<A: Algebra + ?Sized>(&self, alg: &A) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    let legs: Vec<String> = k.iter().map(|&b| alg.label(b)).collect();
                    serde_json::json!([legs, c.to_string()])
                })
                .collect(),
        )
    }
}

pub fn format_key<A: Algebra + ?Sized>(key: &[u32], alg: &A) -> String {
    key.iter().map(|&b| alg.label(b)).collect::<Vec<_>>().join(" ⊗ ")
}

/// The group algebra of a subgroup `F ≤ G`, basis indexed by member position.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
    sub: Subgroup,
    coproducts: Vec<Tensor>,
}

impl GroupAlgebra {
    pub fn new(sub: &Subgroup) -> Self {
        let coproducts = (0..sub.order() as u32).map(|i| Tensor::basis(&[i, i], Cyclotomic::one())).collect();
        GroupAlgebra { group: sub.parent().clone(), sub: sub.clone(), coproducts }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Basis index of the group element `g ∈ F`.
    pub fn index(&self, g: usize) -> Option<u32> {
        self.sub.position(g).map(|p| p as u32)
    }

    pub fn element(&self, i: u32) -> usize {
        self.sub.members()[i as usize]
    }

    /// Element of `kF ⊗ kF` from an `|F| × |F|` coefficient matrix.
    pub fn tensor_from_matrix(&self, m: &[Vec<Cyclotomic>]) -> Tensor {
        let mut t = Tensor::zero(2);
        for (a, row) in m.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                t.add_term(Key::from_slice(&[a as u32, b as u32]), c.clone());
            }
        }
        t
    }
}

impl Algebra for GroupAlgebra {
    fn dim(&self) -> usize {
        self.sub.order()
    }

    fn unit(&self) -> u32 {
        self.index(0).unwrap()
    }

    fn mul_basis(&self, a: u32, b: u32) -> Option<(u32, Cyclotomic)> {
        let g = self.group.mul(self.element(a), self.element(b));
        Some((self.index(g).unwrap(), Cyclotomic::one()))
    }

    fn label(&self, a: u32) -> String {
        self.group.label(self.element(a)).to_string()
    }
}

impl Bialgebra for GroupAlgebra {
    fn coproduct(&self, a: u32) -> &Tensor {
        &self.coproducts[a as usize]
    }

    fn counit(&self, _a: u32) -> Cyclotomic {
        Cyclotomic::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> GroupAlgebra {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        GroupAlgebra::new(&Subgroup::whole(&g))
    }

    #[test]
    fn group_algebra_products() {
        let a = z4();
        let x = Tensor::basis(&[1], Cyclotomic::one()).add(&Tensor::basis(&[3], Cyclotomic::from_int(2)));
        let y = x.mul(&x, &a);
        // (h + 2h^3)^2 = h^2 + 4 + 4h^6 = 5h^2 + 4
        assert_eq!(y.coeff(&[2]), Cyclotomic::from_int(5));
        assert_eq!(y.coeff(&[0]), Cyclotomic::from_int(4));
    }

    #[test]
    fn coproduct_and_counit_legs() {
        let a = z4();
        let t = Tensor::basis(&[1, 2], Cyclotomic::from_int(3));
        let d = t.apply_coproduct(0, &a);
        assert_eq!(d.coeff(&[1, 1, 2]), Cyclotomic::from_int(3));
        assert_eq!(t.apply_counit(1, &a), Tensor::basis(&[1], Cyclotomic::from_int(3)));
        assert_eq!(t.insert_unit(0, 0).coeff(&[0, 1, 2]), Cyclotomic::from_int(3));
    }

    #[test]
    fn cancellation_drops_terms() {
        let t = Tensor::basis(&[1], Cyclotomic::one());
        assert!(t.sub(&t).is_zero());
    }
}
