//! Exact arithmetic in the cyclotomic fields `Q(ζ_n)`.
//!
//! An element of conductor `n` is stored as a polynomial in `ζ_n` of degree
//! below `φ(n)`, already reduced modulo the `n`-th cyclotomic polynomial.
//! Mixed-conductor operations lift both operands to the least common
//! conductor, subject to a process-wide cap.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default upper bound on conductors created by implicit promotion.
pub const DEFAULT_CONDUCTOR_LIMIT: usize = 360;

static CONDUCTOR_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_CONDUCTOR_LIMIT);

/// Sets the conductor cap used by promotion. Returns the previous value.
pub fn set_conductor_limit(limit: usize) -> usize {
    CONDUCTOR_LIMIT.swap(limit.max(1), Ordering::SeqCst)
}

pub fn conductor_limit() -> usize {
    CONDUCTOR_LIMIT.load(Ordering::SeqCst)
}

fn check_conductor(n: usize) -> Result<()> {
    let limit = conductor_limit();
    if n > limit {
        Err(Error::ConductorOverflow { requested: n, limit })
    } else {
        Ok(())
    }
}

/// Integer coefficients of the monic cyclotomic polynomial `Φ_n`, low degree first.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n > 0, "cyclotomic polynomial of conductor 0");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_div_monic(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    cache.write().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn euler_phi(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An exact element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(m: i64) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![BigRational::from_integer(BigInt::from(m))] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_fraction(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `ζ_n^k`, for any integer `k`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        assert!(n > 0);
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); n.max(1)];
        poly[e] = BigRational::one();
        Self::from_poly(n, poly)
    }

    /// The primitive root `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: usize) -> Self {
        Self::root_of_unity(n, 1)
    }

    /// Builds an element from an arbitrary-degree polynomial in `ζ_n`.
    pub fn from_poly(n: usize, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        reduce_in_place(&mut poly, &phi);
        Cyclotomic { conductor: n, coeffs: poly }
    }

    /// Builds an element from coefficients already of length `φ(n)`.
    pub fn from_coeffs(n: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        check_conductor(n)?;
        let d = euler_phi(n);
        if coeffs.len() > d {
            return Ok(Self::from_poly(n, coeffs));
        }
        let mut coeffs = coeffs;
        coeffs.resize(d, BigRational::zero());
        Ok(Cyclotomic { conductor: n, coeffs })
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    /// Re-expresses this element in `Q(ζ_n)`; `n` must be a multiple of the conductor.
    pub fn lift_to(&self, n: usize) -> Result<Self> {
        if n == self.conductor {
            return Ok(self.clone());
        }
        if n % self.conductor != 0 {
            return Err(Error::Precondition(format!(
                "conductor {} does not divide {}",
                self.conductor, n
            )));
        }
        check_conductor(n)?;
        let step = n / self.conductor;
        let mut poly = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(k * step) % n] += c;
            }
        }
        Ok(Self::from_poly(n, poly))
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let n = self.conductor.lcm(&other.conductor);
        Ok((self.lift_to(n)?, other.lift_to(n)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Ok(Cyclotomic { conductor: self.conductor, coeffs });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let (a, b) = self.aligned(other)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            if let Some(r) = other.as_rational() {
                return Ok(self.scale(&r));
            }
            if let Some(r) = self.as_rational() {
                return Ok(other.scale(&r));
            }
            let (a, b) = self.aligned(other)?;
            return a.try_mul(&b);
        }
        let d = self.coeffs.len();
        if d == 1 {
            return Ok(Cyclotomic {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut poly = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        let phi = cyclotomic_polynomial(self.conductor);
        reduce_in_place(&mut poly, &phi);
        Ok(Cyclotomic { conductor: self.conductor, coeffs: poly })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(r.recip()).lift_to(self.conductor)?);
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        // Extended Euclid: find s with s·a ≡ gcd (mod Φ_n); gcd is a nonzero constant.
        let (g, s) = poly_gcdex(self.coeffs.clone(), phi);
        debug_assert_eq!(poly_degree(&g), Some(0));
        let inv_g = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(Self::from_poly(self.conductor, s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: usize) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Writes the canonical literal `c0 + c1*z^1 + ... (conductor n)`.
    pub fn to_literal(&self) -> String {
        self.to_string()
    }

    pub fn parse_literal(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn reduce_in_place(poly: &mut Vec<BigRational>, phi: &[i64]) {
    let d = phi.len() - 1;
    for k in (d..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[k], BigRational::zero());
        for (j, &p) in phi[..d].iter().enumerate() {
            if p != 0 {
                poly[k - d + j] -= &c * BigRational::from_integer(BigInt::from(p));
            }
        }
    }
    poly.resize(d, BigRational::zero());
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let da = match poly_degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![BigRational::zero()], poly_trim(rem)),
    };
    let mut quot = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    (poly_trim(quot), poly_trim(rem))
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)`.
fn poly_gcdex(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (poly_trim(a), poly_trim(b));
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let n = self.conductor.lcm(&other.conductor);
        let lift = |c: &Cyclotomic| {
            let step = n / c.conductor;
            let mut poly = vec![BigRational::zero(); n];
            for (k, x) in c.coeffs.iter().enumerate() {
                poly[(k * step) % n] += x;
            }
            Cyclotomic::from_poly(n, poly)
        };
        lift(self).coeffs == lift(other).coeffs
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(m: i64) -> Self {
        Self::from_int(m)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                terms.push(format!("{}", c));
            } else {
                terms.push(format!("{}*z^{}", c, k));
            }
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        write!(f, "{} (conductor {})", terms.join(" + "), self.conductor)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Accepts the printed form, plus a few shorthands: a missing conductor
    /// means 1, `z^k` and `-z^k` need no coefficient, and `zeta(n,k)` is `ζ_n^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Literal { literal: s.to_string(), reason: reason.to_string() };
        let text = s.trim();
        if let Some(inner) = text.strip_prefix("zeta(").and_then(|t| t.strip_suffix(')')) {
            let (n, k) = inner.split_once(',').ok_or_else(|| bad("expected zeta(n,k)"))?;
            let n: usize = n.trim().parse().map_err(|_| bad("bad conductor"))?;
            let k: i64 = k.trim().parse().map_err(|_| bad("bad exponent"))?;
            if n == 0 {
                return Err(bad("conductor must be positive"));
            }
            check_conductor(n)?;
            return Ok(Cyclotomic::root_of_unity(n, k));
        }
        let (body, conductor) = match text.rfind("(conductor") {
            Some(pos) => {
                let tail = text[pos + "(conductor".len()..].trim();
                let n = tail.strip_suffix(')').ok_or_else(|| bad("unterminated conductor"))?;
                let n: usize = n.trim().parse().map_err(|_| bad("bad conductor"))?;
                (text[..pos].trim(), n)
            }
            None => (text, 1),
        };
        if conductor == 0 {
            return Err(bad("conductor must be positive"));
        }
        check_conductor(conductor)?;
        let mut poly = vec![BigRational::zero(); conductor.max(1)];
        for term in body.split(" + ") {
            let term = term.trim();
            let (coef, exp) = match term.find("z^") {
                Some(pos) => {
                    let exp: usize = term[pos + 2..].trim().parse().map_err(|_| bad("bad exponent"))?;
                    let head = term[..pos].trim().trim_end_matches('*').trim();
                    let coef = match head {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        h => parse_rational(h).ok_or_else(|| bad("bad coefficient"))?,
                    };
                    (coef, exp)
                }
                None => (parse_rational(term).ok_or_else(|| bad("bad coefficient"))?, 0),
            };
            poly[exp % conductor] += coef;
        }
        Ok(Cyclotomic::from_poly(conductor, poly))
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Absolute value of the largest numerator or denominator, a cheap size measure.
pub fn height(c: &Cyclotomic) -> BigInt {
    c.coeffs
        .iter()
        .flat_map(|r| [r.numer().abs(), r.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(360), 96);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = Cyclotomic::zeta(4);
        assert_eq!(&z * &z, Cyclotomic::from_int(-1));
    }

    #[test]
    fn cube_roots_sum() {
        let z = Cyclotomic::zeta(3);
        assert_eq!(&z + &z.pow(2), Cyclotomic::from_int(-1));
    }

    #[test]
    fn self_division() {
        let a = Cyclotomic::one() + Cyclotomic::zeta(5);
        assert!(a.try_div(&a).unwrap().is_one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Cyclotomic::one().try_div(&Cyclotomic::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta_n_to_the_n() {
        for n in [1usize, 2, 5, 9, 12, 30] {
            assert!(Cyclotomic::zeta(n).pow(n as i64).is_one(), "n = {n}");
        }
    }

    #[test]
    fn mixed_conductor_promotion() {
        // ζ_4 · ζ_3 = ζ_12^{3+4}
        let p = Cyclotomic::zeta(4) * Cyclotomic::zeta(3);
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, Cyclotomic::root_of_unity(12, 7));
        // ζ_6^2 = ζ_3 across conductors
        assert_eq!(Cyclotomic::root_of_unity(6, 2), Cyclotomic::zeta(3));
    }

    #[test]
    fn conductor_cap() {
        let a = Cyclotomic::zeta(19);
        let b = Cyclotomic::zeta(23);
        assert!(matches!(a.try_mul(&b), Err(Error::ConductorOverflow { requested: 437, .. })));
    }

    #[test]
    fn literal_round_trip() {
        let x = Cyclotomic::from_poly(
            12,
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::from_integer((-3).into()),
                BigRational::zero(),
                BigRational::new(7.into(), 5.into()),
            ],
        );
        let text = x.to_string();
        assert_eq!(text, "1/2 + -3*z^1 + 7/5*z^3 (conductor 12)");
        let back: Cyclotomic = text.parse().unwrap();
        assert_eq!(back.to_string(), text);
        assert_eq!(Cyclotomic::zero().to_string(), "0 (conductor 1)");
    }

    #[test]
    fn literal_shorthands() {
        assert_eq!("zeta(4,1)".parse::<Cyclotomic>().unwrap(), Cyclotomic::zeta(4));
        assert_eq!("-z^1 (conductor 6)".parse::<Cyclotomic>().unwrap(), -Cyclotomic::zeta(6));
        assert_eq!("2".parse::<Cyclotomic>().unwrap(), Cyclotomic::from_int(2));
        assert!("1/0".parse::<Cyclotomic>().is_err());
        assert!("abc".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(Cyclotomic::root_of_unity(12, 4).multiplicative_order(100), Some(3));
        assert_eq!(Cyclotomic::from_int(-1).multiplicative_order(100), Some(2));
        assert_eq!(Cyclotomic::from_int(2).multiplicative_order(100), None);
    }
}
