//! The Nichols algebra of a quantum linear space:
//! `x_i^{N_i} = 0`, `x_i x_j = q_ij x_j x_i`, primitive `x_i`.
//!
//! Basis elements are the ordered monomials `x_1^{r_1} ... x_θ^{r_θ}`, indexed
//! in mixed radix with `r_1` varying fastest.

use std::sync::Arc;

use crate::error::Result;
use crate::qls::QlsDatum;
use crate::scalar::{q_binomial_table, q_factorial, Cyclotomic};
use crate::tensor::{Algebra, Bialgebra, Key, Tensor};

/// An element of the Nichols algebra, stored as an arity-1 tensor.
pub type BElement = Tensor;

#[derive(Debug, Clone)]
pub struct NicholsAlgebra {
    datum: Arc<QlsDatum>,
    dim: usize,
    strides: Vec<usize>,
    exps: Vec<Vec<u8>>,
    degrees: Vec<usize>,
    products: Vec<Option<(u32, u32)>>,
    braids: Vec<u32>,
    factorials: Vec<Cyclotomic>,
    coproducts: Vec<Tensor>,
}

impl NicholsAlgebra {
    pub fn new(datum: Arc<QlsDatum>) -> Result<Self> {
        datum.ensure_valid()?;
        let theta = datum.theta();
        let orders = datum.orders().to_vec();
        let dim = datum.dim_nichols();
        let mut strides = vec![1usize; theta];
        for i in 1..theta {
            strides[i] = strides[i - 1] * orders[i - 1];
        }
        let exps: Vec<Vec<u8>> = (0..dim)
            .map(|mut idx| {
                let mut r = vec![0u8; theta];
                for i in 0..theta {
                    r[i] = (idx % orders[i]) as u8;
                    idx /= orders[i];
                }
                r
            })
            .collect();
        let m = datum.modulus() as u64;
        let degrees = exps.iter().map(|r| datum.degree(r)).collect();
        let pair_exp = |r: &[u8], s: &[u8], strict: bool| -> u32 {
            let mut e = 0u64;
            for i in 0..theta {
                for j in 0..theta {
                    if !strict || i > j {
                        e += r[i] as u64 * s[j] as u64 * datum.q_exp(i, j) as u64;
                    }
                }
            }
            (e % m) as u32
        };
        let mut products = vec![None; dim * dim];
        let mut braids = vec![0u32; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let (r, s) = (&exps[a], &exps[b]);
                braids[a * dim + b] = pair_exp(r, s, false);
                if (0..theta).all(|i| ((r[i] + s[i]) as usize) < orders[i]) {
                    let idx: usize = (0..theta).map(|i| (r[i] + s[i]) as usize * strides[i]).sum();
                    products[a * dim + b] = Some((idx as u32, pair_exp(r, s, true)));
                }
            }
        }
        let factorials = exps
            .iter()
            .map(|r| {
                (0..theta).fold(Cyclotomic::one(), |acc, i| acc * q_factorial(r[i] as usize, datum.q(i, i)))
            })
            .collect();
        let mut alg = NicholsAlgebra {
            datum,
            dim,
            strides,
            exps,
            degrees,
            products,
            braids,
            factorials,
            coproducts: Vec::new(),
        };
        alg.coproducts = (0..dim as u32).map(|a| alg.compute_coproduct(a)).collect();
        Ok(alg)
    }

    fn compute_coproduct(&self, a: u32) -> Tensor {
        let r = &self.exps[a as usize];
        let mut acc = Tensor::unit(self, 2);
        for i in 0..self.theta() {
            let n = r[i] as usize;
            if n == 0 {
                continue;
            }
            let binom = q_binomial_table(n + 1, self.datum.q(i, i));
            let mut di = Tensor::zero(2);
            for k in 0..=n {
                let left = self.power_index(i, k);
                let right = self.power_index(i, n - k);
                di.add_term(Key::from_slice(&[left, right]), binom[n][k].clone());
            }
            acc = acc.mul(&di, self);
        }
        acc
    }

    fn power_index(&self, i: usize, k: usize) -> u32 {
        (k * self.strides[i]) as u32
    }

    pub fn datum(&self) -> &Arc<QlsDatum> {
        &self.datum
    }

    pub fn theta(&self) -> usize {
        self.datum.theta()
    }

    /// Exponent vector of a basis monomial.
    pub fn exponents(&self, a: u32) -> &[u8] {
        &self.exps[a as usize]
    }

    /// Basis index of `x^r`, or `None` if some `r_i ≥ N_i`.
    pub fn monomial(&self, r: &[u8]) -> Option<u32> {
        if r.len() != self.theta() || r.iter().enumerate().any(|(i, &k)| k as usize >= self.datum.order(i)) {
            return None;
        }
        Some(r.iter().enumerate().map(|(i, &k)| k as usize * self.strides[i]).sum::<usize>() as u32)
    }

    /// Basis index of `x_i^k`.
    pub fn power(&self, i: usize, k: usize) -> Option<u32> {
        (k < self.datum.order(i)).then(|| self.power_index(i, k))
    }

    /// The generator `x_i` as an element.
    pub fn x(&self, i: usize) -> BElement {
        Tensor::basis(&[self.power_index(i, 1)], Cyclotomic::one())
    }

    pub fn one(&self) -> BElement {
        Tensor::unit(self, 1)
    }

    /// `∏ (r_i)!_{q_i}`, the pairing `⟨X^r, x^r⟩`.
    pub fn factorial(&self, a: u32) -> &Cyclotomic {
        &self.factorials[a as usize]
    }

    /// `Γ`-degree `∏ g_i^{r_i}` of a monomial.
    pub fn monomial_degree(&self, a: u32) -> usize {
        self.degrees[a as usize]
    }

    /// Exponent of `∏ χ_i(h)^{r_i}` with respect to `ζ_L`.
    pub fn action_exp(&self, h: usize, a: u32) -> u32 {
        self.datum.action_exp(&self.exps[a as usize], h)
    }

    /// Normal-ordered product `x^r · x^s` as `(index, exponent of ζ_L)`.
    pub fn product_exp(&self, a: u32, b: u32) -> Option<(u32, u32)> {
        self.products[a as usize * self.dim + b as usize]
    }

    /// Exponent of the braiding scalar `χ_s(deg x^r) = ∏ q_ij^{r_i s_j}`.
    pub fn braid_exp(&self, left: u32, right: u32) -> u32 {
        self.braids[left as usize * self.dim + right as usize]
    }

    /// `⟨X^r, u⟩ = coeff_r(u) · ∏ (r_i)!_{q_i}`.
    pub fn dual_pairing(&self, r: u32, u: &BElement) -> Cyclotomic {
        u.coeff(&[r]) * self.factorial(r)
    }

    /// Iterator over all basis monomials.
    pub fn basis(&self) -> impl Iterator<Item = u32> {
        0..self.dim as u32
    }
}

impl Algebra for NicholsAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn unit(&self) -> u32 {
        0
    }

    fn mul_basis(&self, a: u32, b: u32) -> Option<(u32, Cyclotomic)> {
        self.product_exp(a, b).map(|(k, e)| (k, self.datum.root(e).clone()))
    }

    fn braid(&self, left: u32, right: u32) -> Option<Cyclotomic> {
        let e = self.braid_exp(left, right);
        (e != 0).then(|| self.datum.root(e).clone())
    }

    fn label(&self, a: u32) -> String {
        monomial_label(&self.exps[a as usize])
    }
}

impl Bialgebra for NicholsAlgebra {
    fn coproduct(&self, a: u32) -> &Tensor {
        &self.coproducts[a as usize]
    }

    fn counit(&self, a: u32) -> Cyclotomic {
        if a == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    }

    fn grading_group(&self) -> Option<&Arc<crate::group::FiniteGroup>> {
        Some(self.datum.group())
    }

    fn degree(&self, a: u32) -> Option<usize> {
        Some(self.monomial_degree(a))
    }

    fn act(&self, h: usize, a: u32) -> Option<Cyclotomic> {
        Some(self.datum.root(self.action_exp(h, a)).clone())
    }
}

/// `x1^a x2^b`, omitting zero exponents; `1` for the empty monomial.
pub fn monomial_label(r: &[u8]) -> String {
    let parts: Vec<String> = r
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qls::samples;

    fn e2() -> NicholsAlgebra {
        NicholsAlgebra::new(Arc::new(samples::e2())).unwrap()
    }

    #[test]
    fn relations() {
        let b = e2();
        let (x1, x2) = (b.x(0), b.x(1));
        let lhs = x1.mul(&x2, &b);
        let rhs = x2.mul(&x1, &b).scale(b.datum().q(0, 1));
        assert!(lhs.sub(&rhs).is_zero());
        let top = Tensor::basis(&[b.power(0, 2).unwrap()], Cyclotomic::one());
        assert!(top.mul(&x1, &b).is_zero());
        let s = x1.add(&x2);
        assert_eq!(s.mul(&b.one(), &b), s);
    }

    #[test]
    fn grading() {
        let b = e2();
        let m = b.monomial(&[1, 1]).unwrap();
        assert_eq!(b.monomial_degree(m), 0);
        assert_eq!(b.act(b.datum().g(0), b.power(1, 1).unwrap()).unwrap(), *b.datum().q(0, 1));
        assert_eq!(b.monomial_degree(0), 0);
    }

    #[test]
    fn braided_products() {
        let b = e2();
        let (x1, x2) = (b.power(0, 1).unwrap(), b.power(1, 1).unwrap());
        let p = Tensor::basis(&[0, x1], Cyclotomic::one()).mul(&Tensor::basis(&[x2, 0], Cyclotomic::one()), &b);
        assert_eq!(p, Tensor::basis(&[x2, x1], b.datum().chi(1).eval(b.datum().g(0)).clone()));
        let u = Tensor::basis(&[0, x1], Cyclotomic::one());
        let v = Tensor::basis(&[x1, 0], Cyclotomic::one());
        let left = u.mul(&v, &b).mul(&v, &b);
        let right = u.mul(&v.mul(&v, &b), &b);
        assert_eq!(left, right);
        // One factor q_1 for each time x_1 passes x_1.
        let expect = Tensor::basis(&[b.power(0, 2).unwrap(), x1], b.datum().q(0, 0).pow(2));
        assert_eq!(left, expect);
    }

    #[test]
    fn coproduct_of_square() {
        let b = e2();
        let x1 = b.power(0, 1).unwrap();
        let x1sq = b.power(0, 2).unwrap();
        let d = b.coproduct(x1sq);
        assert_eq!(d.coeff(&[x1sq, 0]), Cyclotomic::one());
        assert_eq!(d.coeff(&[x1, x1]), Cyclotomic::one() + b.datum().q(0, 0));
        assert_eq!(d.coeff(&[0, x1sq]), Cyclotomic::one());
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn pairing() {
        let b = e2();
        let x1 = b.power(0, 1).unwrap();
        let x1sq = b.power(0, 2).unwrap();
        assert!(b.dual_pairing(x1, &b.x(0)).is_one());
        let sq = b.x(0).mul(&b.x(0), &b);
        assert_eq!(b.dual_pairing(x1sq, &sq), Cyclotomic::one() + b.datum().q(0, 0));
        assert!(b.dual_pairing(x1, &b.x(1)).is_zero());
    }

    #[test]
    fn coassociative_and_counital() {
        let b = e2();
        for a in b.basis() {
            let d = b.coproduct(a);
            assert_eq!(d.apply_coproduct(0, &b), d.apply_coproduct(1, &b));
            assert_eq!(d.apply_counit(0, &b), Tensor::basis(&[a], Cyclotomic::one()));
            assert_eq!(d.apply_counit(1, &b), Tensor::basis(&[a], Cyclotomic::one()));
        }
    }
}
