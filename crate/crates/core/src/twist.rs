//! Twists of braided and ordinary bialgebras: construction and verification.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseSystem;
use crate::nichols::{BElement, NicholsAlgebra};
use crate::qls::ScalarFamily;
use crate::report::{VerificationReport, Witness};
use crate::scalar::{q_factorial, q_factorial_nonzero, Cyclotomic};
use crate::tensor::{format_key, Algebra, Bialgebra, Key, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Unit,
    JXi(usize),
    ExpB(usize, usize),
    JD,
    Composite,
    User,
}

/// An element of `A ⊗ A` together with its inverse.
#[derive(Debug, Clone)]
pub struct BraidedTwist {
    pub value: Tensor,
    pub inverse: Tensor,
    pub provenance: Provenance,
}

impl BraidedTwist {
    pub fn unit<A: Algebra + ?Sized>(alg: &A) -> Self {
        BraidedTwist { value: Tensor::unit(alg, 2), inverse: Tensor::unit(alg, 2), provenance: Provenance::Unit }
    }

    /// Wraps a user-supplied element, computing its inverse.
    pub fn from_value<A: Algebra + ?Sized>(alg: &A, value: Tensor, provenance: Provenance) -> Result<Self> {
        let inverse = invert(alg, &value)?;
        Ok(BraidedTwist { value, inverse, provenance })
    }
}

/// `Σ_{k<n} x^k / (k)!_q`, after checking `x^n = 0` by explicit powering.
pub fn exp_q<A: Algebra + ?Sized>(alg: &A, x: &Tensor, q: &Cyclotomic, n: usize) -> Result<Tensor> {
    exp_series(alg, x, q, n, false)
}

/// The closed-form inverse `Σ_{k<n} (−1)^k q^{k(k−1)/2} x^k / (k)!_q`.
pub fn exp_q_inverse<A: Algebra + ?Sized>(alg: &A, x: &Tensor, q: &Cyclotomic, n: usize) -> Result<Tensor> {
    exp_series(alg, x, q, n, true)
}

fn exp_series<A: Algebra + ?Sized>(alg: &A, x: &Tensor, q: &Cyclotomic, n: usize, inverse: bool) -> Result<Tensor> {
    if !x.pow(n, alg).is_zero() {
        return Err(Error::NotNilpotent { order: n });
    }
    let mut acc = Tensor::zero(x.arity());
    let mut p = Tensor::unit(alg, x.arity());
    for k in 0..n {
        if p.is_zero() {
            break;
        }
        let mut c = q_factorial_nonzero(k, q)?.inverse()?;
        if inverse {
            c = c * q.pow((k * k.saturating_sub(1) / 2) as i64);
            if k % 2 == 1 {
                c = -c;
            }
        }
        acc = acc.add(&p.scale(&c));
        p = p.mul(x, alg);
    }
    Ok(acc)
}

/// Inverse of an element of a tensor power: geometric series when the element
/// is unipotent, otherwise a linear solve over the full basis.
pub fn invert<A: Algebra + ?Sized>(alg: &A, t: &Tensor) -> Result<Tensor> {
    if let Ok(inv) = t.inverse_unipotent(alg) {
        return Ok(inv);
    }
    invert_linear(alg, t)
}

fn all_keys(dim: usize, arity: usize) -> Vec<Key> {
    let total = dim.pow(arity as u32);
    (0..total)
        .map(|mut idx| {
            let mut k = Key::from_elem(0, arity);
            for slot in k.iter_mut().rev() {
                *slot = (idx % dim) as u32;
                idx /= dim;
            }
            k
        })
        .collect()
}

fn key_index(key: &[u32], dim: usize) -> usize {
    key.iter().fold(0, |acc, &b| acc * dim + b as usize)
}

/// Solves `t · y = 1` for `y` over the basis of the tensor power.
pub fn invert_linear<A: Algebra + ?Sized>(alg: &A, t: &Tensor) -> Result<Tensor> {
    let arity = t.arity();
    let dim = alg.dim();
    let keys = all_keys(dim, arity);
    if keys.len() > 4096 {
        return Err(Error::DimensionBudget { dim: keys.len(), cap: 4096 });
    }
    let mut rows: Vec<crate::linalg::SparseRow> = vec![Default::default(); keys.len()];
    for (col, k) in keys.iter().enumerate() {
        let img = t.mul(&Tensor::basis(k, Cyclotomic::one()), alg);
        for (rk, c) in img.terms() {
            rows[key_index(rk, dim)].insert(col, c.clone());
        }
    }
    let unit_row = key_index(&vec![alg.unit(); arity], dim);
    let mut sys = SparseSystem::new(keys.len());
    for (r, row) in rows.into_iter().enumerate() {
        let rhs = if r == unit_row { Cyclotomic::one() } else { Cyclotomic::zero() };
        sys.push(row, rhs);
    }
    let y = sys.solve().map_err(|_| Error::Precondition("element is not invertible".into()))?;
    let inv = Tensor::from_terms(arity, keys.into_iter().zip(y));
    if inv.mul(t, alg) != Tensor::unit(alg, arity) {
        return Err(Error::Precondition("element has a one-sided inverse only".into()));
    }
    Ok(inv)
}

/// `J_ξ = 1⊗1 + Σ_{k=1}^{N−1} ξ/((N−k)!_q k!_q) x_i^{N−k} ⊗ x_i^k`.
pub fn j_xi_element(b: &NicholsAlgebra, i: usize, xi: &Cyclotomic) -> Result<Tensor> {
    let d = b.datum();
    let n = d.order(i);
    let q = d.q(i, i);
    let mut t = Tensor::unit(b, 2);
    if xi.is_zero() {
        return Ok(t);
    }
    for k in 1..n {
        let den = q_factorial(n - k, q) * q_factorial(k, q);
        let c = xi.try_div(&den)?;
        t.add_term(Key::from_slice(&[b.power(i, n - k).unwrap(), b.power(i, k).unwrap()]), c);
    }
    Ok(t)
}

pub fn make_j_xi(b: &NicholsAlgebra, i: usize, xi: &Cyclotomic) -> Result<BraidedTwist> {
    let d = b.datum();
    if i >= d.theta() {
        return Err(Error::Precondition(format!("index {} out of range", i + 1)));
    }
    if !xi.is_zero() && d.group().pow(d.g(i), d.order(i) as i64) != 0 {
        return Err(Error::Incompatible(format!("ξ_{} ≠ 0 but g_{}^N ≠ 1", i + 1, i + 1)));
    }
    let value = j_xi_element(b, i, xi)?;
    let inverse = j_xi_element(b, i, &-xi)?;
    Ok(BraidedTwist { value, inverse, provenance: Provenance::JXi(i) })
}

/// `B_ij = a x_i ⊗ x_j`.
pub fn b_element(b: &NicholsAlgebra, i: usize, j: usize, a: &Cyclotomic) -> Tensor {
    let key = [b.power(i, 1).unwrap(), b.power(j, 1).unwrap()];
    Tensor::basis(&key, a.clone())
}

/// Base of the q-exponential used for `B_ij`.
///
/// Only `q_ij` gives a twist when `q_ij ≠ q_ji`.
pub fn exp_b_base(b: &NicholsAlgebra, i: usize, j: usize) -> Cyclotomic {
    b.datum().q(i, j).clone()
}

/// `exp(B_ij)` with an explicit q-exponential base.
pub fn make_exp_b_with_base(
    b: &NicholsAlgebra,
    i: usize,
    j: usize,
    a: &Cyclotomic,
    base: &Cyclotomic,
) -> Result<BraidedTwist> {
    let d = b.datum();
    if i == j || i >= d.theta() || j >= d.theta() {
        return Err(Error::Precondition(format!("bad index pair ({}, {})", i + 1, j + 1)));
    }
    if !a.is_zero() && d.group().mul(d.g(i), d.g(j)) != 0 {
        return Err(Error::Incompatible(format!("a_{}{} ≠ 0 but g_{} g_{} ≠ 1", i + 1, j + 1, i + 1, j + 1)));
    }
    if a.is_zero() {
        let mut t = BraidedTwist::unit(b);
        t.provenance = Provenance::ExpB(i, j);
        return Ok(t);
    }
    let x = b_element(b, i, j, a);
    let n = d.order(i).min(d.order(j));
    let value = exp_q(b, &x, base, n)?;
    let inverse = exp_q_inverse(b, &x, base, n)?;
    Ok(BraidedTwist { value, inverse, provenance: Provenance::ExpB(i, j) })
}

pub fn make_exp_b(b: &NicholsAlgebra, i: usize, j: usize, a: &Cyclotomic) -> Result<BraidedTwist> {
    make_exp_b_with_base(b, i, j, a, &exp_b_base(b, i, j))
}

/// The composite twist `J_D` with its factors and the pairwise commutation verdict.
#[derive(Debug, Clone)]
pub struct CompositeTwist {
    pub twist: BraidedTwist,
    pub factors: Vec<BraidedTwist>,
    /// First pair of factors (by position) that fails to commute.
    pub noncommuting: Option<(usize, usize)>,
}

/// `J_D = ∏ J_{ξ_i} ∏ exp(B_ij)`: ξ-factors ascending, then `B`-factors in
/// lexicographic `(i, j)`. Zero factors are omitted.
pub fn make_j_d(b: &NicholsAlgebra, family: &ScalarFamily) -> Result<CompositeTwist> {
    let d = b.datum();
    if family.theta() != d.theta() {
        return Err(Error::Arity { left: family.theta(), right: d.theta() });
    }
    if let Some(why) = family.compatibility_violation(d) {
        return Err(Error::Incompatible(why));
    }
    let mut factors = Vec::new();
    for i in 0..d.theta() {
        if !family.xi[i].is_zero() {
            factors.push(make_j_xi(b, i, &family.xi[i])?);
        }
    }
    for i in 0..d.theta() {
        for j in 0..d.theta() {
            if i != j && !family.a[i][j].is_zero() {
                factors.push(make_exp_b(b, i, j, &family.a[i][j])?);
            }
        }
    }
    let mut value = Tensor::unit(b, 2);
    let mut inverse = Tensor::unit(b, 2);
    for f in &factors {
        value = value.mul(&f.value, b);
        inverse = f.inverse.mul(&inverse, b);
    }
    let pairs: Vec<(usize, usize)> =
        (0..factors.len()).flat_map(|x| (x + 1..factors.len()).map(move |y| (x, y))).collect();
    let noncommuting = pairs.into_iter().find(|&(x, y)| {
        let (u, v) = (&factors[x].value, &factors[y].value);
        u.mul(v, b) != v.mul(u, b)
    });
    Ok(CompositeTwist { twist: BraidedTwist { value, inverse, provenance: Provenance::JD }, factors, noncommuting })
}

/// Left and right sides of the twist equation in the triple tensor power.
pub fn twist_equation_sides<B: Bialgebra + ?Sized>(alg: &B, j: &Tensor) -> (Tensor, Tensor) {
    let unit = alg.unit();
    let lhs = j.apply_coproduct(0, alg).mul(&j.insert_unit(2, unit), alg);
    let rhs = j.apply_coproduct(1, alg).mul(&j.insert_unit(0, unit), alg);
    (lhs, rhs)
}

/// Checks invertibility, both counit conditions, coinvariance (for graded
/// objects) and the twist equation. When `gamma` is given, invariance under
/// the action of those group elements is recorded as extracted data.
pub fn verify_twist<B: Bialgebra + ?Sized>(alg: &B, j: &BraidedTwist, gamma: Option<&[usize]>) -> VerificationReport {
    let mut r = VerificationReport::new();
    let one2 = Tensor::unit(alg, 2);
    let left = j.value.mul(&j.inverse, alg);
    let right = j.inverse.mul(&j.value, alg);
    r.record("invertible", left.compare(&one2, alg).and_then(|_| right.compare(&one2, alg)));
    let one1 = Tensor::unit(alg, 1);
    r.record("counit (ε⊗id)", j.value.apply_counit(0, alg).compare(&one1, alg));
    r.record("counit (id⊗ε)", j.value.apply_counit(1, alg).compare(&one1, alg));
    match coinvariance_violation(alg, &j.value) {
        None if alg.grading_group().is_none() => r.skip("coinvariant", "ungraded algebra"),
        None => r.pass("coinvariant"),
        Some(w) => r.fail("coinvariant", "term of nontrivial total degree", Some(w)),
    }
    let (lhs, rhs) = twist_equation_sides(alg, &j.value);
    r.record("twist equation", lhs.compare(&rhs, alg));
    if let Some(elems) = gamma {
        let bad = action_invariance_violation(alg, &j.value, elems);
        r.insert_data("action_invariant", serde_json::json!(bad.is_none()));
        if let Some(w) = bad {
            r.insert_data("action_witness", serde_json::json!(w.at));
        }
    }
    r
}

fn coinvariance_violation<B: Bialgebra + ?Sized>(alg: &B, t: &Tensor) -> Option<Witness> {
    let g = alg.grading_group()?;
    for (k, c) in t.terms() {
        let deg = k.iter().fold(0, |acc, &b| g.mul(acc, alg.degree(b).unwrap()));
        if deg != 0 {
            return Some(Witness::new(format_key(k, alg), format!("degree {}", g.label(0)), format!("{} (coefficient {c})", g.label(deg))));
        }
    }
    None
}

/// First `h` (with the offending term) such that `h·t ≠ t`.
pub fn action_invariance_violation<B: Bialgebra + ?Sized>(alg: &B, t: &Tensor, elems: &[usize]) -> Option<Witness> {
    for &h in elems {
        for (k, _) in t.terms() {
            let mut s = Cyclotomic::one();
            for &b in k.iter() {
                s = s * alg.act(h, b)?;
            }
            if !s.is_one() {
                return Some(Witness::new(format!("h = {h}, term {}", format_key(k, alg)), "1", s));
            }
        }
    }
    None
}

/// `(J ⊗ J')` satisfy the two commutation hypotheses under which `J J'` is a twist.
pub fn combine_hypotheses<B: Bialgebra + ?Sized>(alg: &B, j: &Tensor, j2: &Tensor) -> std::result::Result<(), Witness> {
    let unit = alg.unit();
    let a = j.insert_unit(0, unit);
    let d = j2.apply_coproduct(1, alg);
    a.mul(&d, alg).compare(&d.mul(&a, alg), alg)?;
    let b = j.insert_unit(2, unit);
    let e = j2.apply_coproduct(0, alg);
    b.mul(&e, alg).compare(&e.mul(&b, alg), alg)
}

pub fn combine_twists<B: Bialgebra + ?Sized>(alg: &B, j: &BraidedTwist, j2: &BraidedTwist) -> Result<BraidedTwist> {
    if let Err(w) = combine_hypotheses(alg, &j.value, &j2.value) {
        return Err(Error::Hypothesis(format!(
            "commutation hypotheses fail at {}: expected {}, got {}",
            w.at, w.expected, w.actual
        )));
    }
    Ok(BraidedTwist {
        value: j.value.mul(&j2.value, alg),
        inverse: j2.inverse.mul(&j.inverse, alg),
        provenance: Provenance::Composite,
    })
}

/// The algebra `A*` with the product `⟨X∗Y, h⟩ = (X⊗Y)(Δ(h)·J)`, in the basis
/// dual to the algebra basis up to the diagonal pairing `⟨X^a, b_a⟩ = p_a`.
#[derive(Debug, Clone)]
pub struct TwistedDual {
    dim: usize,
    table: Vec<Tensor>,
}

impl TwistedDual {
    pub fn new<B: Bialgebra + ?Sized>(alg: &B, j: &Tensor, pairing: &[Cyclotomic]) -> Result<Self> {
        Self::weighted(alg, j, pairing, |_, _| Cyclotomic::one())
    }

    pub fn weighted<B: Bialgebra + ?Sized>(
        alg: &B,
        j: &Tensor,
        pairing: &[Cyclotomic],
        weight: impl Fn(u32, u32) -> Cyclotomic,
    ) -> Result<Self> {
        let dim = alg.dim();
        let inv_pairing: Vec<Cyclotomic> = pairing.iter().map(|p| p.inverse()).collect::<Result<_>>()?;
        let columns: Vec<Tensor> = (0..dim as u32)
            .into_par_iter()
            .map(|c| Tensor::basis(&[c], Cyclotomic::one()).apply_coproduct(0, alg).mul(j, alg))
            .collect();
        let mut table = vec![Tensor::zero(1); dim * dim];
        for (c, col) in columns.iter().enumerate() {
            for (k, v) in col.terms() {
                let (a, b) = (k[0] as usize, k[1] as usize);
                let val = &(v * &pairing[a]) * &(&pairing[b] * &inv_pairing[c]) * weight(k[0], k[1]);
                table[a * dim + b].add_term(Key::from_slice(&[c as u32]), val);
            }
        }
        Ok(TwistedDual { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `X^a ∗ X^b` in the dual basis.
    pub fn product(&self, a: u32, b: u32) -> &Tensor {
        &self.table[a as usize * self.dim + b as usize]
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::zero(1);
        for (ka, ca) in x.terms() {
            for (kb, cb) in y.terms() {
                let c = ca * cb;
                for (kc, v) in self.product(ka[0], kb[0]).terms() {
                    out.add_term(kc.clone(), &c * v);
                }
            }
        }
        out
    }

    /// First triple (lexicographic) on which associativity fails.
    pub fn associativity_violation(&self) -> Option<(u32, u32, u32, Tensor, Tensor)> {
        let n = self.dim as u32;
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.product(a, b).clone();
                for c in 0..n {
                    let left = self.mul(&ab, &Tensor::basis(&[c], Cyclotomic::one()));
                    let right = self.mul(&Tensor::basis(&[a], Cyclotomic::one()), self.product(b, c));
                    if left != right {
                        return Some((a, b, c, left, right));
                    }
                }
            }
            None
        })
    }
}

impl TwistedDual {
    /// The product on `𝔅(V)*` exactly as displayed: `X` pairs with the first
    /// leg of `Δ(h)·J`, `Y` with the second, with no further scalar.
    pub fn literal(b: &NicholsAlgebra, j: &Tensor) -> Result<Self> {
        Self::new(b, j, &factorial_pairing(b))
    }

    /// The product with the pairing `⟨X ⊗ Y, k ⊗ l⟩ = ⟨X, k⟩⟨Y, l⟩ χ_k(deg l)^{-1}`
    /// of the braided category. It agrees with [`TwistedDual::literal`] when `J` is
    /// invariant under `Γ`.
    pub fn braided(b: &NicholsAlgebra, j: &Tensor) -> Result<Self> {
        let d = b.datum();
        let m = d.modulus() as u32;
        Self::weighted(b, j, &factorial_pairing(b), |k, l| d.root((m - b.braid_exp(l, k)) % m).clone())
    }
}

fn factorial_pairing(b: &NicholsAlgebra) -> Vec<Cyclotomic> {
    b.basis().map(|a| b.factorial(a).clone()).collect()
}

/// Associativity of the twisted dual product on `𝔅(V)*`: an independent test of
/// the twist equation.
pub fn twisted_dual_associativity(b: &NicholsAlgebra, j: &Tensor) -> Result<bool> {
    Ok(TwistedDual::braided(b, j)?.associativity_violation().is_none())
}

/// Outcome of a gauge check.
#[derive(Debug, Clone)]
pub struct GaugeOutcome {
    pub equivalent: bool,
    pub transformed: Tensor,
    pub witness: Option<Witness>,
    /// Whether `c` is also invariant under all of `G`, not only `Γ`.
    pub g_invariant: bool,
}

/// Checks `J' = Δ(c) J (c^{-1} ⊗ c^{-1})`.
///
/// `c` must have counit 1, be coinvariant, and be fixed by `Γ`.
pub fn gauge_check(b: &NicholsAlgebra, j: &Tensor, j2: &Tensor, c: &BElement) -> Result<GaugeOutcome> {
    let d = b.datum();
    if c.coeff(&[0]) != Cyclotomic::one() {
        return Err(Error::Precondition("gauge element must have counit 1".into()));
    }
    if let Some((k, _)) = c.terms().find(|(k, _)| b.monomial_degree(k[0]) != 0) {
        return Err(Error::Precondition(format!("gauge element term {} is not coinvariant", b.label(k[0]))));
    }
    if let Some(w) = action_invariance_violation(b, c, d.gamma().members()) {
        return Err(Error::Precondition(format!("gauge element is not Γ-invariant ({})", w.at)));
    }
    let all: Vec<usize> = d.group().elements().collect();
    let g_invariant = action_invariance_violation(b, c, &all).is_none();
    let cinv = c.inverse_unipotent(b)?;
    let transformed = c.apply_coproduct(0, b).mul(j, b).mul(&Tensor::outer(&cinv, &cinv), b);
    let witness = transformed.compare(j2, b).err();
    Ok(GaugeOutcome { equivalent: witness.is_none(), transformed, witness, g_invariant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qls::samples;
    use std::sync::Arc;

    fn nichols(d: crate::qls::QlsDatum) -> NicholsAlgebra {
        NicholsAlgebra::new(Arc::new(d)).unwrap()
    }

    #[test]
    fn exp_of_square_zero() {
        let b = nichols(samples::e1());
        let x = b.x(0);
        let e = exp_q(&b, &x, &Cyclotomic::from_int(-1), 2).unwrap();
        assert_eq!(e, b.one().add(&x));
    }

    #[test]
    fn exp_requires_nilpotency() {
        let b = nichols(samples::e2());
        let x = b.x(0);
        assert!(matches!(exp_q(&b, &x, b.datum().q(0, 0), 2), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn exp_inverse_closed_form() {
        let b = nichols(samples::e2());
        let x = b_element(&b, 0, 1, &Cyclotomic::one());
        for base in [b.datum().q(0, 1).clone(), b.datum().q(1, 0).clone()] {
            let e = exp_q(&b, &x, &base, 3).unwrap();
            let inv = exp_q_inverse(&b, &x, &base, 3).unwrap();
            assert_eq!(e.mul(&inv, &b), Tensor::unit(&b, 2));
            assert_eq!(inv, e.inverse_unipotent(&b).unwrap());
        }
    }

    #[test]
    fn j_xi_e1() {
        let b = nichols(samples::e1());
        let xi = Cyclotomic::one();
        let j = make_j_xi(&b, 0, &xi).unwrap();
        let x = b.power(0, 1).unwrap();
        let expect = Tensor::unit(&b, 2).add(&Tensor::basis(&[x, x], xi));
        assert_eq!(j.value, expect);
        assert!(verify_twist(&b, &j, None).all_pass());
    }

    #[test]
    fn exp_base_decides_twist_equation() {
        let b = nichols(samples::e2());
        let a = Cyclotomic::one();
        let (q12, q21) = (b.datum().q(0, 1).clone(), b.datum().q(1, 0).clone());
        let with_q21 = make_exp_b_with_base(&b, 0, 1, &a, &q21).unwrap();
        let with_q12 = make_exp_b_with_base(&b, 0, 1, &a, &q12).unwrap();
        assert!(verify_twist(&b, &with_q12, None).passed("twist equation"));
        assert!(!verify_twist(&b, &with_q21, None).passed("twist equation"));
        assert!(twisted_dual_associativity(&b, &with_q12.value).unwrap());
        assert!(!twisted_dual_associativity(&b, &with_q21.value).unwrap());
    }

    #[test]
    fn corrupted_twist_fails() {
        let b = nichols(samples::e1());
        let mut j = make_j_xi(&b, 0, &Cyclotomic::one()).unwrap();
        j.value.set_coeff(&[1, 0], Cyclotomic::from_int(3));
        let r = verify_twist(&b, &j, None);
        assert!(!r.all_pass());
    }

    #[test]
    fn combine_two_xi() {
        let d = samples::cyclic_datum(4, &[2, 2], &[1, 1]);
        let b = nichols(d);
        let j1 = make_j_xi(&b, 0, &Cyclotomic::one()).unwrap();
        let j2 = make_j_xi(&b, 1, &Cyclotomic::from_int(2)).unwrap();
        let j = combine_twists(&b, &j1, &j2).unwrap();
        assert!(verify_twist(&b, &j, None).all_pass());
    }

    #[test]
    fn literal_dual_needs_invariance() {
        let b = nichols(samples::e2());
        let j = make_exp_b(&b, 0, 1, &Cyclotomic::one()).unwrap();
        assert!(verify_twist(&b, &j, None).all_pass());
        assert!(TwistedDual::literal(&b, &j.value).unwrap().associativity_violation().is_some());
        assert!(TwistedDual::braided(&b, &j.value).unwrap().associativity_violation().is_none());
    }

    #[test]
    fn j_xi_dual_table() {
        let b = nichols(samples::one_dim(3));
        let xi = Cyclotomic::from_int(5);
        let j = make_j_xi(&b, 0, &xi).unwrap();
        let td = TwistedDual::literal(&b, &j.value).unwrap();
        let (x, x2) = (b.power(0, 1).unwrap(), b.power(0, 2).unwrap());
        assert_eq!(td.product(x2, x2), &Tensor::basis(&[x], xi.clone()));
        assert_eq!(td.product(x, x2), &Tensor::basis(&[0], xi.clone()));
        assert_eq!(td.product(x, x), &Tensor::basis(&[x2], Cyclotomic::one()));
        assert!(td.associativity_violation().is_none());
        assert!(twisted_dual_associativity(&b, &j.value).unwrap());
    }

    #[test]
    fn oracle_agrees_on_e3() {
        let b = nichols(samples::e3());
        for (i, jj) in [(0, 1), (1, 0)] {
            let t = make_exp_b(&b, i, jj, &Cyclotomic::from_int(2)).unwrap();
            assert!(verify_twist(&b, &t, None).all_pass());
            assert!(twisted_dual_associativity(&b, &t.value).unwrap());
        }
    }

    #[test]
    fn j_d_without_gamma_invariance() {
        let d = samples::e2();
        let b = nichols(d.clone());
        let fam = ScalarFamily::zero(2)
            .with_a(0, 1, Cyclotomic::one())
            .with_a(1, 0, Cyclotomic::from_int(2));
        let c = make_j_d(&b, &fam).unwrap();
        let r = verify_twist(&b, &c.twist, None);
        assert!(fam.is_bilinear_invariant(&d));
        assert!(!fam.is_invariant(&d, d.gamma().members()));
        assert_eq!(c.noncommuting, Some((0, 1)));
        assert!(!r.passed("twist equation"));
        assert_eq!(r.passed("twist equation"), twisted_dual_associativity(&b, &c.twist.value).unwrap());
        let single = make_j_d(&b, &ScalarFamily::zero(2).with_a(0, 1, Cyclotomic::one())).unwrap();
        assert_eq!(single.twist.value, make_exp_b(&b, 0, 1, &Cyclotomic::one()).unwrap().value);
        assert!(verify_twist(&b, &single.twist, None).all_pass());
    }

    #[test]
    fn gauge_exterior_example() {
        let b = nichols(samples::e3());
        let a = Cyclotomic::from_int(3);
        let (x, y) = (b.power(0, 1).unwrap(), b.power(1, 1).unwrap());
        let ba = Tensor::basis(&[x, y], a.clone()).sub(&Tensor::basis(&[y, x], a.clone()));
        let j = exp_q(&b, &ba, &Cyclotomic::one(), 3).unwrap();
        let one = Tensor::unit(&b, 2);
        let xy = b.monomial(&[1, 1]).unwrap();
        let c = |s: &Cyclotomic| b.one().add(&Tensor::basis(&[xy], s.clone()));
        let good = gauge_check(&b, &one, &j, &c(&a)).unwrap();
        assert!(good.equivalent);
        let bad = gauge_check(&b, &one, &j, &c(&(&a * &Cyclotomic::from_int(2)))).unwrap();
        assert!(!bad.equivalent && bad.witness.is_some());
        assert!(verify_twist(&b, &BraidedTwist::from_value(&b, j.clone(), Provenance::User).unwrap(), None).all_pass());
    }
}
