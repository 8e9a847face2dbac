//! Quantum linear space data `(g_i, χ_i)` and scalar families `D = {a_ij, ξ_i}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Character, FiniteGroup, Subgroup};
use crate::report::{VerificationReport, Witness};
use crate::scalar::Cyclotomic;

/// A datum for a quantum linear space together with its derived invariants.
///
/// All character values are stored as exponents of `ζ_L`, `L` the session
/// modulus (least common multiple of the character moduli).
#[derive(Debug, Clone)]
pub struct QlsDatum {
    group: Arc<FiniteGroup>,
    g: Vec<usize>,
    chi: Vec<Character>,
    modulus: usize,
    chi_exp: Vec<Vec<u32>>,
    q: Vec<Vec<Cyclotomic>>,
    q_exp: Vec<Vec<u32>>,
    orders: Vec<usize>,
    gamma: Subgroup,
    roots: Vec<Cyclotomic>,
}

impl QlsDatum {
    pub fn new(group: Arc<FiniteGroup>, g: Vec<usize>, chi: Vec<Character>) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::Datum("θ must be positive".into()));
        }
        if g.len() != chi.len() {
            return Err(Error::Datum(format!("{} group elements but {} characters", g.len(), chi.len())));
        }
        for &x in &g {
            if x >= group.order() {
                return Err(Error::Datum(format!("element index {x} out of range")));
            }
        }
        for c in &chi {
            if c.group().as_ref() != group.as_ref() {
                return Err(Error::Datum("character defined on a different group".into()));
            }
        }
        let modulus = chi.iter().fold(1, |acc, c| num::integer::lcm(acc, c.modulus()));
        let chi_exp: Vec<Vec<u32>> = chi
            .iter()
            .map(|c| {
                let step = (modulus / c.modulus()) as u32;
                c.exponents().iter().map(|&k| k * step).collect()
            })
            .collect();
        let theta = g.len();
        let q_exp: Vec<Vec<u32>> = (0..theta).map(|i| (0..theta).map(|j| chi_exp[j][g[i]]).collect()).collect();
        let roots: Vec<Cyclotomic> = (0..modulus).map(|k| Cyclotomic::root_of_unity(modulus, k as i64)).collect();
        let q = q_exp.iter().map(|row| row.iter().map(|&k| roots[k as usize].clone()).collect()).collect();
        let orders = (0..theta)
            .map(|i| {
                let k = q_exp[i][i] as usize;
                modulus / num::integer::gcd(k, modulus)
            })
            .collect();
        let gamma = Subgroup::generated(&group, &g)?;
        Ok(QlsDatum { group, g, chi, modulus, chi_exp, q, q_exp, orders, gamma, roots })
    }

    pub fn theta(&self) -> usize {
        self.g.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn g(&self, i: usize) -> usize {
        self.g[i]
    }

    pub fn gs(&self) -> &[usize] {
        &self.g
    }

    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i]
    }

    /// `q_ij = χ_j(g_i)`.
    pub fn q(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.q[i][j]
    }

    pub fn q_exp(&self, i: usize, j: usize) -> u32 {
        self.q_exp[i][j]
    }

    /// `N_i`, the multiplicative order of `q_i = q_ii`.
    pub fn order(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    /// Session modulus `L`: every character value is an `L`-th root of unity.
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `ζ_L^k`.
    pub fn root(&self, k: u32) -> &Cyclotomic {
        &self.roots[(k as usize) % self.modulus]
    }

    /// Exponent of `χ_i(h)` with respect to `ζ_L`.
    pub fn chi_exp(&self, i: usize, h: usize) -> u32 {
        self.chi_exp[i][h]
    }

    pub fn dim_nichols(&self) -> usize {
        self.orders.iter().product()
    }

    /// Checks centrality of the `g_i`, `q_ij q_ji = 1` for `i ≠ j`, and `N_i > 1`.
    pub fn validate(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        let theta = self.theta();
        match (0..theta).find(|&i| !self.group.is_central(self.g[i])) {
            None => r.pass("g_i central"),
            Some(i) => r.fail("g_i central", format!("g_{} = {} is not central", i + 1, self.group.label(self.g[i])), None),
        }
        let m = self.modulus as u32;
        let bad = (0..theta)
            .flat_map(|i| (0..theta).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && (self.q_exp[i][j] + self.q_exp[j][i]) % m != 0);
        match bad {
            None => r.pass("q_ij q_ji = 1"),
            Some((i, j)) => {
                let prod = &self.q[i][j] * &self.q[j][i];
                r.fail(
                    "q_ij q_ji = 1",
                    format!("violated for (i, j) = ({}, {})", i + 1, j + 1),
                    Some(Witness::new(format!("q_{}{} q_{}{}", i + 1, j + 1, j + 1, i + 1), "1", prod)),
                );
            }
        }
        match (0..theta).find(|&i| self.orders[i] <= 1) {
            None => r.pass("N_i > 1"),
            Some(i) => r.fail("N_i > 1", format!("q_{} = 1", i + 1), None),
        }
        r.insert_data("N", serde_json::json!(self.orders));
        r.insert_data("gamma_order", serde_json::json!(self.gamma.order()));
        r
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        let first = r.failures().next().map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()));
        match first {
            None => Ok(()),
            Some(msg) => Err(Error::Datum(msg)),
        }
    }

    /// `∏ χ_i(h)^{r_i}` for an exponent vector `r`, as a power of `ζ_L`.
    pub fn action_exp(&self, r: &[u8], h: usize) -> u32 {
        let m = self.modulus as u64;
        let s: u64 = r.iter().enumerate().map(|(i, &k)| k as u64 * self.chi_exp[i][h] as u64).sum();
        (s % m) as u32
    }

    /// `∏ g_i^{r_i}`.
    pub fn degree(&self, r: &[u8]) -> usize {
        r.iter().enumerate().fold(0, |acc, (i, &k)| self.group.mul(acc, self.group.pow(self.g[i], k as i64)))
    }
}

/// The family `D`: off-diagonal `a_ij` and diagonal `ξ_i` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarFamily {
    pub a: Vec<Vec<Cyclotomic>>,
    pub xi: Vec<Cyclotomic>,
}

impl ScalarFamily {
    pub fn zero(theta: usize) -> Self {
        ScalarFamily { a: vec![vec![Cyclotomic::zero(); theta]; theta], xi: vec![Cyclotomic::zero(); theta] }
    }

    pub fn theta(&self) -> usize {
        self.xi.len()
    }

    pub fn with_a(mut self, i: usize, j: usize, v: Cyclotomic) -> Self {
        assert_ne!(i, j, "a_ii is not part of a scalar family");
        self.a[i][j] = v;
        self
    }

    pub fn with_xi(mut self, i: usize, v: Cyclotomic) -> Self {
        self.xi[i] = v;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|x| x.is_zero())
            && self.a.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    fn same_theta(&self, other: &ScalarFamily) -> Result<()> {
        if self.theta() == other.theta() {
            Ok(())
        } else {
            Err(Error::Arity { left: self.theta(), right: other.theta() })
        }
    }

    pub fn add(&self, other: &ScalarFamily) -> Result<ScalarFamily> {
        self.same_theta(other)?;
        let theta = self.theta();
        let a = (0..theta).map(|i| (0..theta).map(|j| &self.a[i][j] + &other.a[i][j]).collect()).collect();
        let xi = (0..theta).map(|i| &self.xi[i] + &other.xi[i]).collect();
        Ok(ScalarFamily { a, xi })
    }

    pub fn sub(&self, other: &ScalarFamily) -> Result<ScalarFamily> {
        self.same_theta(other)?;
        let neg = ScalarFamily {
            a: other.a.iter().map(|row| row.iter().map(|x| -x).collect()).collect(),
            xi: other.xi.iter().map(|x| -x).collect(),
        };
        self.add(&neg)
    }

    /// `g·D`: entries `χ_iχ_j(g) a_ij` and `χ_i^{N_i}(g) ξ_i`.
    pub fn act(&self, d: &QlsDatum, h: usize) -> ScalarFamily {
        let theta = self.theta();
        let a = (0..theta)
            .map(|i| {
                (0..theta)
                    .map(|j| {
                        if i == j {
                            Cyclotomic::zero()
                        } else {
                            d.root(d.chi_exp(i, h) + d.chi_exp(j, h)) * &self.a[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let xi = (0..theta)
            .map(|i| d.root(((d.chi_exp(i, h) as usize * d.order(i)) % d.modulus()) as u32) * &self.xi[i])
            .collect();
        ScalarFamily { a, xi }
    }

    /// `D̂`: `b_ij = q_ij a_ji − a_ij`, same `ξ`.
    pub fn hat(&self, d: &QlsDatum) -> ScalarFamily {
        let theta = self.theta();
        let a = (0..theta)
            .map(|i| {
                (0..theta)
                    .map(|j| if i == j { Cyclotomic::zero() } else { d.q(i, j) * &self.a[j][i] - &self.a[i][j] })
                    .collect()
            })
            .collect();
        ScalarFamily { a, xi: self.xi.clone() }
    }

    /// `a_ij = −q_ij a_ji` for all `i ≠ j`.
    pub fn is_q_symmetric(&self, d: &QlsDatum) -> bool {
        let theta = self.theta();
        (0..theta).all(|i| (0..theta).all(|j| i == j || self.a[i][j] == -(d.q(i, j) * &self.a[j][i])))
    }

    /// First reason the family is incompatible with the datum, if any.
    pub fn compatibility_violation(&self, d: &QlsDatum) -> Option<String> {
        let grp = d.group();
        let theta = self.theta();
        for i in 0..theta {
            for j in 0..theta {
                if i != j && !self.a[i][j].is_zero() && grp.mul(d.g(i), d.g(j)) != 0 {
                    return Some(format!("a_{}{} ≠ 0 but g_{} g_{} ≠ 1", i + 1, j + 1, i + 1, j + 1));
                }
            }
            if !self.xi[i].is_zero() && grp.pow(d.g(i), d.order(i) as i64) != 0 {
                return Some(format!("ξ_{} ≠ 0 but g_{}^N_{} ≠ 1", i + 1, i + 1, i + 1));
            }
        }
        None
    }

    pub fn is_compatible(&self, d: &QlsDatum) -> bool {
        self.compatibility_violation(d).is_none()
    }

    /// Literal invariance: `g·D = D` for every `g` in `elements`.
    pub fn invariance_violation(&self, d: &QlsDatum, elements: &[usize]) -> Option<String> {
        for &h in elements {
            let moved = self.act(d, h);
            if moved != *self {
                return Some(format!("not fixed by {}", d.group().label(h)));
            }
        }
        None
    }

    pub fn is_invariant(&self, d: &QlsDatum, elements: &[usize]) -> bool {
        self.invariance_violation(d, elements).is_none()
    }

    /// The restatement through the braiding matrix: `a_ij = 0` if
    /// `q_ik q_jk ≠ 1` for some `k`, and `ξ_i = 0` if `q_ij^{N_i} ≠ 1` for some `j`.
    pub fn is_bilinear_invariant(&self, d: &QlsDatum) -> bool {
        let theta = self.theta();
        let m = d.modulus() as u64;
        for i in 0..theta {
            for j in 0..theta {
                if i != j
                    && !self.a[i][j].is_zero()
                    && (0..theta).any(|k| (d.q_exp(i, k) as u64 + d.q_exp(j, k) as u64) % m != 0)
                {
                    return false;
                }
            }
            if !self.xi[i].is_zero() && (0..theta).any(|j| (d.q_exp(i, j) as u64 * d.order(i) as u64) % m != 0) {
                return false;
            }
        }
        true
    }
}

/// The sub-datum `(W, F, J_F)`: a coordinate subspace, a subgroup containing
/// `Γ`, and a twist of `kF` given as an `|F| × |F|` coefficient matrix indexed
/// by member positions of `F`.
#[derive(Debug, Clone)]
pub struct SubDatum {
    pub w: Vec<usize>,
    pub f: Subgroup,
    pub jf: Vec<Vec<Cyclotomic>>,
}

impl SubDatum {
    pub fn new(d: &QlsDatum, w: Vec<usize>, f: Subgroup, jf: Option<Vec<Vec<Cyclotomic>>>) -> Result<Self> {
        if let Some(&i) = w.iter().find(|&&i| i >= d.theta()) {
            return Err(Error::Datum(format!("W index {} out of range", i + 1)));
        }
        if !d.gamma().is_subgroup_of(&f) {
            return Err(Error::Datum("Γ is not contained in F".into()));
        }
        let n = f.order();
        let jf = match jf {
            Some(m) => {
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(Error::Datum(format!("J_F must be {n} × {n}")));
                }
                m
            }
            None => {
                let mut m = vec![vec![Cyclotomic::zero(); n]; n];
                m[0][0] = Cyclotomic::one();
                m
            }
        };
        let mut w = w;
        w.sort_unstable();
        w.dedup();
        Ok(SubDatum { w, f, jf })
    }

    /// The family restricted to `W`: entries touching indices outside `W` must vanish.
    pub fn supports(&self, family: &ScalarFamily) -> bool {
        let theta = family.theta();
        let inside = |i: usize| self.w.contains(&i);
        (0..theta).all(|i| {
            (inside(i) || family.xi[i].is_zero())
                && (0..theta).all(|j| i == j || (inside(i) && inside(j)) || family.a[i][j].is_zero())
        })
    }
}

/// Ready-made data used throughout tests and examples.
pub mod samples {
    use super::*;

    fn cyclic_character(g: &Arc<FiniteGroup>, k: i64) -> Character {
        let n = g.order();
        let exps = (0..n).map(|m| ((k * m as i64).rem_euclid(n as i64)) as u32).collect();
        Character::from_exponents(g, n, exps).unwrap()
    }

    /// `Z_n = ⟨h⟩`, `θ` generators `g_i = h^{gs[i]}`, `χ_i(h) = ζ_n^{ks[i]}`.
    pub fn cyclic_datum(n: usize, gs: &[i64], ks: &[i64]) -> QlsDatum {
        let group = Arc::new(FiniteGroup::cyclic(n).unwrap());
        let g = gs.iter().map(|&e| group.pow(1, e)).collect();
        let chi = ks.iter().map(|&k| cyclic_character(&group, k)).collect();
        QlsDatum::new(group, g, chi).unwrap()
    }

    /// `G = Z_4`, `g = h²`, `χ(h) = ζ_4`: `q = −1`, `N = 2`.
    pub fn e1() -> QlsDatum {
        cyclic_datum(4, &[2], &[1])
    }

    /// `G = Z_6`, `g_1 = h²`, `g_2 = h⁴`, `χ_1(h) = χ_2(h) = ζ_6`.
    pub fn e2() -> QlsDatum {
        cyclic_datum(6, &[2, 4], &[1, 1])
    }

    /// `G = Z_4`, `g_1 = g_2 = h²`, `χ_i(h) = ζ_4`: the exterior algebra on two generators.
    pub fn e3() -> QlsDatum {
        cyclic_datum(4, &[2, 2], &[1, 1])
    }

    /// One-dimensional datum with `N = n`: `G = Z_{2n}`, `g = h²`, `χ(h) = ζ_{2n}`.
    pub fn one_dim(n: usize) -> QlsDatum {
        cyclic_datum(2 * n, &[2], &[1])
    }

    /// `G = Γ = Z_n`, `g = h`, `χ(h) = ζ_n`.
    pub fn one_dim_gamma(n: usize) -> QlsDatum {
        cyclic_datum(n, &[1], &[1])
    }

    /// Two generators over `Z_{2n}` with `g_1 = h²`, `g_2 = h^{-2}`, `χ_1 = χ_2 = (h ↦ ζ_{2n})`;
    /// `q_1 = ζ_n`, `q_2 = ζ_n^{-1}`, `N_1 = N_2 = n`.
    pub fn pair(n: usize) -> QlsDatum {
        let m = 2 * n as i64;
        cyclic_datum(2 * n, &[2, m - 2], &[1, 1])
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn e1_invariants() {
        let d = e1();
        assert!(d.validate().all_pass());
        assert_eq!(*d.q(0, 0), Cyclotomic::from_int(-1));
        assert_eq!(d.order(0), 2);
    }

    #[test]
    fn e2_invariants() {
        let d = e2();
        assert!(d.validate().all_pass());
        assert_eq!(*d.q(0, 0), Cyclotomic::zeta(3));
        assert_eq!(*d.q(1, 1), Cyclotomic::zeta(3).pow(2));
        assert!((d.q(0, 1) * d.q(1, 0)).is_one());
        assert_eq!(d.orders(), &[3, 3]);
        assert_eq!(d.group().mul(d.g(0), d.g(1)), 0);
    }

    #[test]
    fn qsp2_violation() {
        let d = cyclic_datum(6, &[2, 2], &[1, 1]);
        let r = d.validate();
        assert!(!r.passed("q_ij q_ji = 1"));
    }

    #[test]
    fn compatibility() {
        let d = e1();
        assert!(ScalarFamily::zero(1).with_xi(0, Cyclotomic::from_int(5)).is_compatible(&d));
        let d = e2();
        let fam = ScalarFamily::zero(2).with_a(0, 1, Cyclotomic::one());
        assert!(fam.is_compatible(&d));
        let bad = cyclic_datum(6, &[2, 2], &[1, 1]);
        assert!(!fam.is_compatible(&bad));
    }

    #[test]
    fn invariance() {
        let d = e1();
        let fam = ScalarFamily::zero(1).with_xi(0, Cyclotomic::one());
        assert!(fam.is_invariant(&d, d.gamma().members()));
        let all: Vec<usize> = d.group().elements().collect();
        assert!(!fam.is_invariant(&d, &all));
        assert!(ScalarFamily::zero(1).is_invariant(&d, &all));
    }

    #[test]
    fn hat_and_action() {
        let d = e2();
        let a = Cyclotomic::from_int(3);
        let fam = ScalarFamily::zero(2).with_a(0, 1, a.clone());
        assert_eq!(fam.hat(&d).a[0][1], -a);
        assert!(fam.hat(&d).is_q_symmetric(&d));
        assert_eq!(fam.act(&d, 0), fam);
        for g in 0..6 {
            for h in 0..6 {
                assert_eq!(fam.act(&d, h).act(&d, g), fam.act(&d, d.group().mul(g, h)));
            }
        }
    }
}
