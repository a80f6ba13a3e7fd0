//! Sparse exact linear algebra over a cyclotomic field.
//!
//! Vectors are sparse maps from coordinate to nonzero [`CycElem`]. The
//! [`RowEchelon`] accumulator keeps its rows in reduced row echelon form at all
//! times, which gives rank, membership, nullspaces, and a canonical basis of
//! the row space (two families span the same space iff their reduced forms are
//! identical).

use std::collections::BTreeMap;

use crate::cyclotomic::{CycElem, CycField};

pub type SparseVec = BTreeMap<usize, CycElem>;

/// Adds `factor * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, factor: &CycElem, src: &SparseVec) {
    for (&c, v) in src {
        let delta = factor * v;
        match dst.get_mut(&c) {
            Some(e) => {
                *e += &delta;
                if e.is_zero() {
                    dst.remove(&c);
                }
            }
            None => {
                if !delta.is_zero() {
                    dst.insert(c, delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: CycField,
    /// pivot column -> row with a 1 at the pivot and 0 at every other pivot
    rows: BTreeMap<usize, SparseVec>,
}

impl PartialEq for RowEchelon {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rows == other.rows
    }
}

impl RowEchelon {
    pub fn new(field: CycField) -> Self {
        RowEchelon { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows of the reduced basis, ordered by pivot.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in hits {
            if let Some(coef) = v.get(&c).cloned() {
                axpy(&mut v, &-coef, &self.rows[&c]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the spanning set; returns `true` if it raised the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let scale = lead.inv().expect("pivot entries are nonzero");
        for e in v.values_mut() {
            *e = &*e * &scale;
        }
        for row in self.rows.values_mut() {
            if let Some(coef) = row.get(&pivot).cloned() {
                axpy(row, &-coef, &v);
            }
        }
        self.rows.insert(pivot, v);
        true
    }

    /// Basis of `{x : row . x = 0 for every row}` in `ncols` coordinates, one
    /// vector per free column in ascending order, with a 1 at that column.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut by_col: BTreeMap<usize, Vec<(usize, &CycElem)>> = BTreeMap::new();
        for (&p, row) in &self.rows {
            for (&c, v) in row {
                if c != p {
                    by_col.entry(c).or_default().push((p, v));
                }
            }
        }
        (0..ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, self.field.one());
                for &(p, coef) in by_col.get(&free).map(Vec::as_slice).unwrap_or(&[]) {
                    v.insert(p, -coef);
                }
                v
            })
            .collect()
    }
}

/// Nullspace of the system whose equations are `rows`.
pub fn nullspace(field: &CycField, rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut ech = RowEchelon::new(field.clone());
    for r in rows {
        ech.insert(r);
    }
    ech.nullspace(ncols)
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(field: &CycField, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let build = |vs: &[SparseVec]| {
        let mut e = RowEchelon::new(field.clone());
        for v in vs {
            e.insert(v.clone());
        }
        e
    };
    build(a) == build(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(f: &CycField, v: &[i64]) -> SparseVec {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, f.from_int(x))).collect()
    }

    fn dot(a: &SparseVec, b: &SparseVec, f: &CycField) -> CycElem {
        a.iter().fold(f.zero(), |acc, (c, v)| match b.get(c) {
            Some(w) => acc + v * w,
            None => acc,
        })
    }

    #[test]
    fn rank_and_nullspace() {
        let f = CycField::new(1).unwrap();
        let rows = [vec_of(&f, &[1, 2, 3]), vec_of(&f, &[2, 4, 6]), vec_of(&f, &[0, 1, 1])];
        let mut e = RowEchelon::new(f.clone());
        let raised: Vec<bool> = rows.iter().map(|r| e.insert(r.clone())).collect();
        assert_eq!(raised, vec![true, false, true]);
        let ns = e.nullspace(3);
        assert_eq!(ns, vec![vec_of(&f, &[-1, -1, 1])]);
        for r in &rows {
            assert!(dot(r, &ns[0], &f).is_zero());
        }
    }

    #[test]
    fn nullspace_over_cyclotomic_field() {
        let f = CycField::new(3).unwrap();
        let z = f.root_power(1);
        // x0 - z*x1 = 0, x2 free
        let row: SparseVec = [(0, f.one()), (1, -&z)].into_iter().collect();
        let ns = nullspace(&f, [row.clone()], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&row, v, &f).is_zero());
        }
    }

    #[test]
    fn span_comparison() {
        let f = CycField::new(1).unwrap();
        let a = [vec_of(&f, &[1, 1, 0]), vec_of(&f, &[0, 1, 1])];
        let b = [vec_of(&f, &[1, 0, -1]), vec_of(&f, &[2, 3, 1])];
        let c = [vec_of(&f, &[1, 0, 0])];
        assert!(same_span(&f, &a, &b));
        assert!(!same_span(&f, &a, &c));
        assert!(same_span(&f, &[], &[SparseVec::new()]));
    }
}
