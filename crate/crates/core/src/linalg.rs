//! Sparse exact linear systems with a unique solution.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

pub type SparseRow = BTreeMap<usize, Cyclotomic>;

#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<(SparseRow, Cyclotomic)>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, mut row: SparseRow, rhs: Cyclotomic) {
        row.retain(|_, c| !c.is_zero());
        assert!(row.keys().all(|&c| c < self.ncols), "column out of range");
        if row.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push((row, rhs));
    }

    /// Solves the system, requiring a unique solution.
    ///
    /// Columns are split into connected components first; each component is
    /// brought to echelon form incrementally and back-substituted.
    pub fn solve(&self) -> Result<Vec<Cyclotomic>> {
        let mut uf = UnionFind::new(self.ncols);
        for (row, rhs) in &self.rows {
            match row.keys().next() {
                None => {
                    if !rhs.is_zero() {
                        return Err(Error::Singular("inconsistent equation 0 = nonzero".into()));
                    }
                }
                Some(&first) => {
                    for &c in row.keys() {
                        uf.union(first, c);
                    }
                }
            }
        }
        let mut by_component: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, (row, _)) in self.rows.iter().enumerate() {
            if let Some(&first) = row.keys().next() {
                by_component.entry(uf.find(first)).or_default().push(i);
            }
        }
        let mut solution: Vec<Option<Cyclotomic>> = vec![None; self.ncols];
        for rows in by_component.values() {
            self.solve_component(rows, &mut solution)?;
        }
        solution
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.ok_or_else(|| Error::Singular(format!("unknown {c} is undetermined"))))
            .collect()
    }

    fn solve_component(&self, rows: &[usize], solution: &mut [Option<Cyclotomic>]) -> Result<()> {
        let mut pivots: HashMap<usize, (SparseRow, Cyclotomic)> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        for &i in rows {
            let (mut row, mut rhs) = self.rows[i].clone();
            loop {
                let hit = row.iter().find(|(c, _)| pivots.contains_key(c)).map(|(&c, v)| (c, v.clone()));
                let Some((col, factor)) = hit else { break };
                let (prow, prhs) = &pivots[&col];
                for (&c, v) in prow {
                    let delta = &factor * v;
                    let entry = row.entry(c).or_insert_with(Cyclotomic::zero);
                    *entry -= &delta;
                    if entry.is_zero() {
                        row.remove(&c);
                    }
                }
                rhs -= &(&factor * prhs);
            }
            match row.keys().next().copied() {
                None => {
                    if !rhs.is_zero() {
                        return Err(Error::Singular(format!("equation {i} is inconsistent")));
                    }
                }
                Some(col) => {
                    let inv = row[&col].inverse()?;
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    pivots.insert(col, (row, &rhs * &inv));
                    order.push(col);
                }
            }
        }
        for &col in order.iter().rev() {
            let (row, rhs) = &pivots[&col];
            let mut value = rhs.clone();
            for (&c, v) in row {
                if c == col {
                    continue;
                }
                match &solution[c] {
                    Some(x) => value -= &(v * x),
                    None => return Err(Error::Singular(format!("unknown {c} is free"))),
                }
            }
            solution[col] = Some(value);
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, Cyclotomic::from_int(v))).collect()
    }

    #[test]
    fn two_by_two() {
        let mut s = SparseSystem::new(3);
        s.push(row(&[(0, 1), (1, 1)]), Cyclotomic::from_int(3));
        s.push(row(&[(0, 1), (1, -1)]), Cyclotomic::from_int(1));
        s.push(row(&[(2, 2)]), Cyclotomic::from_int(4));
        let x = s.solve().unwrap();
        assert_eq!(x, vec![Cyclotomic::from_int(2), Cyclotomic::from_int(1), Cyclotomic::from_int(2)]);
    }

    #[test]
    fn singular_and_inconsistent() {
        let mut s = SparseSystem::new(2);
        s.push(row(&[(0, 1), (1, 1)]), Cyclotomic::from_int(1));
        assert!(matches!(s.solve(), Err(Error::Singular(_))));
        s.push(row(&[(0, 2), (1, 2)]), Cyclotomic::from_int(3));
        assert!(matches!(s.solve(), Err(Error::Singular(_))));
    }

    #[test]
    fn overdetermined_consistent() {
        let mut s = SparseSystem::new(1);
        s.push(row(&[(0, 3)]), Cyclotomic::from_int(6));
        s.push(row(&[(0, 1)]), Cyclotomic::from_int(2));
        assert_eq!(s.solve().unwrap(), vec![Cyclotomic::from_int(2)]);
    }
}
