//! q-integers, q-factorials and Gaussian binomials over `Q(ζ_n)`.

use rayon::prelude::*;

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// `(n)_q = 1 + q + ... + q^{n-1}`.
pub fn q_int(n: usize, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    let mut p = Cyclotomic::one();
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// `(n)!_q = (1)_q (2)_q ... (n)_q`.
pub fn q_factorial(n: usize, q: &Cyclotomic) -> Cyclotomic {
    (1..=n).fold(Cyclotomic::one(), |acc, k| acc * q_int(k, q))
}

/// Like [`q_factorial`], but refuses a vanishing result.
pub fn q_factorial_nonzero(n: usize, q: &Cyclotomic) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::one();
    for k in 1..=n {
        let t = q_int(k, q);
        if t.is_zero() {
            return Err(Error::VanishingQInteger { index: k });
        }
        acc = acc * t;
    }
    Ok(acc)
}

/// The Gaussian coefficient `n!_q / ((n-k)!_q k!_q)`.
///
/// Fails when one of `(1)_q, ..., (n)_q` is zero, i.e. `n ≥ ord(q)`.
pub fn q_binomial(n: usize, k: usize, q: &Cyclotomic) -> Result<Cyclotomic> {
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    let num = q_factorial_nonzero(n, q)?;
    let den = q_factorial(n - k, q) * q_factorial(k, q);
    num.try_div(&den)
}

/// Table of all `(n choose k)_q` for `n < size` via the Pascal recurrence.
///
/// Entries are computed without any division, so they are defined for every `q`.
pub fn q_binomial_table(size: usize, q: &Cyclotomic) -> Vec<Vec<Cyclotomic>> {
    let mut powers = vec![Cyclotomic::one()];
    for k in 1..size.max(1) {
        powers.push(&powers[k - 1] * q);
    }
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(size);
    for n in 0..size {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == 0 || k == n {
                row.push(Cyclotomic::one());
            } else {
                let prev = &rows[n - 1];
                row.push(&prev[k - 1] + &powers[k] * &prev[k]);
            }
        }
        rows.push(row);
    }
    rows
}

/// Outcome of one instance of the q-binomial sum identity.
#[derive(Debug, Clone)]
pub struct IdentityInstance {
    pub n: usize,
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub sum: Cyclotomic,
    pub holds: bool,
}

fn check_root(n: usize, q: &Cyclotomic) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("N = {n} must exceed 1")));
    }
    if q.multiplicative_order(n) != Some(n) {
        return Err(Error::Precondition(format!("{q} is not a primitive {n}-th root of unity")));
    }
    Ok(())
}

/// Evaluates `Σ_{k=0}^{a} q^{k(k-j)} (j choose k)_q (i choose a-k)_q` for
/// `0 ≤ a,i,j < N` with `i + j = N + a`.
pub fn q_binomial_identity_sum(n: usize, q: &Cyclotomic, a: usize, i: usize, j: usize) -> Result<Cyclotomic> {
    check_root(n, q)?;
    for (name, v) in [("a", a), ("i", i), ("j", j)] {
        if v >= n {
            return Err(Error::Precondition(format!("{name} = {v} is not below N = {n}")));
        }
    }
    if i + j != n + a {
        return Err(Error::Precondition(format!("i + j = {} differs from N + a = {}", i + j, n + a)));
    }
    let table = q_binomial_table(n, q);
    Ok(identity_sum(&table, q, a, i, j))
}

fn identity_sum(table: &[Vec<Cyclotomic>], q: &Cyclotomic, a: usize, i: usize, j: usize) -> Cyclotomic {
    let mut sum = Cyclotomic::zero();
    for k in 0..=a.min(j) {
        if a - k > i {
            continue;
        }
        let e = k as i64 * (k as i64 - j as i64);
        let term = q.pow(e) * &table[j][k] * &table[i][a - k];
        sum += &term;
    }
    sum
}

pub fn q_binomial_identity_check(n: usize, q: &Cyclotomic, a: usize, i: usize, j: usize) -> Result<bool> {
    Ok(q_binomial_identity_sum(n, q, a, i, j)?.is_one())
}

/// Every admissible `(a, i, j)` for one `N` and one primitive root.
pub fn identity_instances(n: usize, q: &Cyclotomic) -> Result<Vec<IdentityInstance>> {
    check_root(n, q)?;
    let table = q_binomial_table(n, q);
    let mut out = Vec::new();
    for a in 0..n {
        for i in 0..n {
            if n + a < i || n + a - i >= n {
                continue;
            }
            let j = n + a - i;
            let sum = identity_sum(&table, q, a, i, j);
            let holds = sum.is_one();
            out.push(IdentityInstance { n, a, i, j, sum, holds });
        }
    }
    Ok(out)
}

/// Summary of the exhaustive sweep.
#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub instances: usize,
    pub roots: usize,
    pub failures: Vec<IdentityInstance>,
}

/// Runs the identity over all `2 ≤ N ≤ max_n`, all primitive `N`-th roots `ζ_N^k`.
pub fn q_binomial_identity_sweep(max_n: usize) -> SweepSummary {
    let jobs: Vec<(usize, usize)> = (2..=max_n)
        .flat_map(|n| (1..n).filter(move |k| num::integer::gcd(*k, n) == 1).map(move |k| (n, k)))
        .collect();
    let results: Vec<Vec<IdentityInstance>> = jobs
        .par_iter()
        .map(|&(n, k)| {
            let q = Cyclotomic::root_of_unity(n, k as i64);
            identity_instances(n, &q).expect("primitive root by construction")
        })
        .collect();
    let mut summary = SweepSummary { roots: jobs.len(), ..Default::default() };
    for batch in results {
        summary.instances += batch.len();
        summary.failures.extend(batch.into_iter().filter(|x| !x.holds));
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let q = Cyclotomic::zeta(7);
        assert_eq!(q_binomial(2, 1, &q).unwrap(), Cyclotomic::one() + &q);
        assert!(q_binomial(5, 0, &q).unwrap().is_one());
        let i = Cyclotomic::zeta(4);
        assert_eq!(q_binomial(3, 2, &i).unwrap(), i);
    }

    #[test]
    fn vanishing_denominator() {
        let q = Cyclotomic::zeta(3);
        assert_eq!(q_binomial(3, 1, &q), Err(Error::VanishingQInteger { index: 3 }));
    }

    #[test]
    fn table_matches_quotient() {
        let q = Cyclotomic::zeta(9);
        let t = q_binomial_table(9, &q);
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(t[n][k], q_binomial(n, k, &q).unwrap());
            }
        }
    }

    #[test]
    fn identity_small_cases() {
        assert!(q_binomial_identity_check(2, &Cyclotomic::from_int(-1), 0, 1, 1).unwrap());
        assert!(q_binomial_identity_check(3, &Cyclotomic::zeta(3), 1, 2, 2).unwrap());
    }

    #[test]
    fn identity_rejects_bad_input() {
        let q = Cyclotomic::zeta(4);
        assert!(q_binomial_identity_check(4, &q, 0, 1, 1).is_err());
        assert!(q_binomial_identity_check(4, &Cyclotomic::from_int(-1), 0, 2, 2).is_err());
        assert!(q_binomial_identity_check(4, &q, 0, 4, 0).is_err());
    }

    #[test]
    fn sweep_up_to_six() {
        let s = q_binomial_identity_sweep(6);
        assert!(s.failures.is_empty());
        assert!(s.instances > 0);
    }
}
