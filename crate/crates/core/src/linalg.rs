//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Coeff;

pub type SparseVec = BTreeMap<usize, Coeff>;

/// Incremental row echelon form keyed by the largest column of each row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result has no pivot column as its
    /// largest entry.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((&c, x)) = v.iter().next_back() {
            let Some(row) = self.rows.get(&c) else { break };
            let x = x.clone();
            for (k, y) in row {
                let e = v.entry(*k).or_insert_with(Coeff::zero);
                *e -= &x * y;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    /// Inserts `v`; returns true if it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&c, x)) = v.iter().next_back() else { return false };
        let inv = x.recip();
        let row = v.into_iter().map(|(k, y)| (k, y * &inv)).collect();
        self.rows.insert(c, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Coeff>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Coeff>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column, in column order.
pub fn nullspace(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Coeff::zero(); ncols];
        v[free] = Coeff::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}
