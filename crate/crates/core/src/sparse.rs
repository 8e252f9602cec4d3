//! Sparse exact matrices with deterministic (row-major) entry order.
//!
//! Every linear map in the workbench — structure tensors, compiled tensor
//! words, differentials on cochain coordinates — is one of these. Entries are
//! exact field elements; explicit zeros are never stored, and the entry list
//! is always sorted row-major so equality and serialization are stable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat<F: Field> {
    rows: usize,
    cols: usize,
    field: F,
    /// (row, col, value), sorted by (row, col), no zeros, no duplicates.
    entries: Vec<(u32, u32, F::Elem)>,
}

impl<F: Field> SparseMat<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, field, entries: Vec::new() }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let entries = (0..n as u32).map(|i| (i, i, one.clone())).collect();
        SparseMat { rows: n, cols: n, field, entries }
    }

    /// Builds a matrix from arbitrary (row, col, value) triples; duplicates
    /// are summed and zeros dropped.
    pub fn from_triples(
        field: F,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (u32, u32, F::Elem)>,
    ) -> Result<Self> {
        let mut entries: Vec<(u32, u32, F::Elem)> = triples.into_iter().collect();
        for (r, c, _) in &entries {
            if *r as usize >= rows || *c as usize >= cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
        }
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        let mut merged: Vec<(u32, u32, F::Elem)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some((lr, lc, lv)) if *lr == r && *lc == c => {
                    *lv = field.add(lv, &v);
                }
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|(_, _, v)| !field.is_zero(v));
        Ok(SparseMat { rows, cols, field, entries: merged })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn entries(&self) -> &[(u32, u32, F::Elem)] {
        &self.entries
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: u32, c: u32) -> F::Elem {
        match self.entries.binary_search_by_key(&(r, c), |(er, ec, _)| (*er, *ec)) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Start offsets of each row inside the entry list (length `rows + 1`).
    pub fn row_starts(&self) -> Vec<usize> {
        let mut starts = vec![0usize; self.rows + 1];
        for (r, _, _) in &self.entries {
            starts[*r as usize + 1] += 1;
        }
        for i in 0..self.rows {
            starts[i + 1] += starts[i];
        }
        starts
    }

    pub fn transpose(&self) -> SparseMat<F> {
        let triples = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone()));
        SparseMat::from_triples(self.field.clone(), self.cols, self.rows, triples).unwrap()
    }

    pub fn scale(&self, s: &F::Elem) -> SparseMat<F> {
        if self.field.is_zero(s) {
            return SparseMat::zero(self.field.clone(), self.rows, self.cols);
        }
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, self.field.mul(v, s)))
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, field: self.field.clone(), entries }
    }

    pub fn neg(&self) -> SparseMat<F> {
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, self.field.neg(v)))
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, field: self.field.clone(), entries }
    }

    pub fn add(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        self.field.check_same(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // merge two sorted entry lists
        let mut entries = Vec::with_capacity(self.nnz() + other.nnz());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.entries.len() || j < other.entries.len() {
            let pick_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((r1, c1, _)), Some((r2, c2, _))) => ((r1, c1) <= (r2, c2), (r1, c1) == (r2, c2)),
                (Some(_), None) => (true, false),
                (None, Some(_)) => (false, false),
                (None, None) => break,
            };
            match pick_left {
                (true, true) => {
                    let v = self.field.add(&self.entries[i].2, &other.entries[j].2);
                    if !self.field.is_zero(&v) {
                        entries.push((self.entries[i].0, self.entries[i].1, v));
                    }
                    i += 1;
                    j += 1;
                }
                (true, false) => {
                    entries.push(self.entries[i].clone());
                    i += 1;
                }
                (false, _) => {
                    entries.push(other.entries[j].clone());
                    j += 1;
                }
            }
        }
        Ok(SparseMat { rows: self.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    pub fn sub(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        self.add(&other.neg())
    }

    /// Matrix product `self * other` (composition: self after other).
    pub fn matmul(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "matmul {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let left_starts = self.row_starts();
        // result rows indexed by self's rows; accumulate row_i(self) * other
        let right_starts = other.row_starts();
        let mut triples: Vec<(u32, u32, F::Elem)> = Vec::new();
        let mut acc: std::collections::BTreeMap<u32, F::Elem> = std::collections::BTreeMap::new();
        for r in 0..self.rows {
            acc.clear();
            for (_, k, a) in &self.entries[left_starts[r]..left_starts[r + 1]] {
                let k = *k as usize;
                for (_, c, b) in &other.entries[right_starts[k]..right_starts[k + 1]] {
                    let prod = f.mul(a, b);
                    match acc.get_mut(c) {
                        Some(cur) => *cur = f.add(cur, &prod),
                        None => {
                            acc.insert(*c, prod);
                        }
                    }
                }
            }
            for (c, v) in &acc {
                if !f.is_zero(v) {
                    triples.push((r as u32, *c, v.clone()));
                }
            }
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: other.cols,
            field: self.field.clone(),
            entries: triples,
        })
    }

    /// Kronecker product; consistent with the tensor-index linearization
    /// (leftmost factor most significant): `A` acts on the leading block.
    pub fn kron(&self, other: &SparseMat<F>) -> Result<SparseMat<F>> {
        self.field.check_same(&other.field)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (r1, c1, v1) in &self.entries {
            for (r2, c2, v2) in &other.entries {
                entries.push((
                    r1 * other.rows as u32 + r2,
                    c1 * other.cols as u32 + c2,
                    self.field.mul(v1, v2),
                ));
            }
        }
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        Ok(SparseMat { rows, cols, field: self.field.clone(), entries })
    }

    /// Applies the matrix to a sparse column vector given as (index, value) list.
    pub fn apply_vec(&self, v: &[(u32, F::Elem)]) -> Vec<(u32, F::Elem)> {
        let f = &self.field;
        let mut acc: std::collections::BTreeMap<u32, F::Elem> = std::collections::BTreeMap::new();
        let starts = self.row_starts();
        // column access pattern: iterate entries of v, fetch columns — we store
        // row-major, so transpose the loop: for each matrix entry in the rows
        // that hit v's support we would need column lookup; instead iterate all
        // entries grouped by column via a one-off sort when v is dense enough.
        // Simplest correct approach: index v, scan matrix entries.
        let mut vidx: std::collections::HashMap<u32, &F::Elem> = std::collections::HashMap::new();
        for (i, x) in v {
            vidx.insert(*i, x);
        }
        let _ = starts;
        for (r, c, a) in &self.entries {
            if let Some(x) = vidx.get(c) {
                let prod = f.mul(a, x);
                match acc.get_mut(r) {
                    Some(cur) => *cur = f.add(cur, &prod),
                    None => {
                        acc.insert(*r, prod);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
    }

    /// Extracts column `c` as a sparse vector.
    pub fn col(&self, c: u32) -> Vec<(u32, F::Elem)> {
        self.entries
            .iter()
            .filter(|(_, ec, _)| *ec == c)
            .map(|(r, _, v)| (*r, v.clone()))
            .collect()
    }

    /// Builds a matrix column by column.
    pub fn from_columns(
        field: F,
        rows: usize,
        cols: impl IntoIterator<Item = Vec<(u32, F::Elem)>>,
    ) -> Result<SparseMat<F>> {
        let mut triples = Vec::new();
        let mut ncols = 0usize;
        for (j, col) in cols.into_iter().enumerate() {
            ncols = j + 1;
            for (i, v) in col {
                triples.push((i, j as u32, v));
            }
        }
        SparseMat::from_triples(field, rows, ncols, triples)
    }
}

/// Interchange form: `{rows, cols, field, entries: [[r, c, "scalar"], ...]}`
/// sorted row-major, scalars in the field text format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparseMatWire {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    pub entries: Vec<(u32, u32, String)>,
}

impl<F: Field> SparseMat<F> {
    pub fn to_wire(&self) -> SparseMatWire {
        SparseMatWire {
            rows: self.rows,
            cols: self.cols,
            field: self.field.spec(),
            entries: self
                .entries
                .iter()
                .map(|(r, c, v)| (*r, *c, self.field.render(v)))
                .collect(),
        }
    }

    pub fn from_wire(field: F, wire: &SparseMatWire) -> Result<SparseMat<F>> {
        if wire.field != field.spec() {
            return Err(Error::MixedFields(wire.field.to_string(), field.spec().to_string()));
        }
        let triples: Result<Vec<_>> = wire
            .entries
            .iter()
            .map(|(r, c, s)| Ok((*r, *c, field.parse(s)?)))
            .collect();
        SparseMat::from_triples(field, wire.rows, wire.cols, triples?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    fn mat(rows: usize, cols: usize, t: &[(u32, u32, i64)]) -> SparseMat<Rationals> {
        SparseMat::from_triples(
            q(),
            rows,
            cols,
            t.iter().map(|(r, c, v)| (*r, *c, q().from_i64(*v))),
        )
        .unwrap()
    }

    #[test]
    fn duplicate_triples_merge_and_zeros_drop() {
        let m = mat(2, 2, &[(0, 0, 1), (0, 0, 2), (1, 1, 3), (1, 1, -3)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), q().from_i64(3));
    }

    #[test]
    fn out_of_range_rejected() {
        let r = SparseMat::from_triples(q(), 2, 2, vec![(2, 0, q().from_i64(1))]);
        assert!(matches!(r, Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn kron_identities() {
        let i2 = SparseMat::identity(q(), 2);
        let i3 = SparseMat::identity(q(), 3);
        assert_eq!(i2.kron(&i3).unwrap(), SparseMat::identity(q(), 6));
        let a = mat(2, 2, &[(0, 1, 5), (1, 0, -2)]);
        let i1 = SparseMat::identity(q(), 1);
        assert_eq!(a.kron(&i1).unwrap(), a);
        assert_eq!(i1.kron(&a).unwrap(), a);
        let e11 = mat(2, 2, &[(0, 0, 1)]);
        let k = e11.kron(&e11).unwrap();
        assert_eq!(k, mat(4, 4, &[(0, 0, 1)]));
    }

    #[test]
    fn matmul_matches_by_hand() {
        let a = mat(2, 3, &[(0, 0, 1), (0, 2, 2), (1, 1, 3)]);
        let b = mat(3, 2, &[(0, 0, 4), (2, 0, 1), (1, 1, -1)]);
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab, mat(2, 2, &[(0, 0, 6), (1, 1, -3)]));
    }

    #[test]
    fn wire_roundtrip_is_canonical() {
        let a = mat(3, 3, &[(2, 1, 7), (0, 0, 1), (1, 2, -4)]);
        let wire = a.to_wire();
        let json = serde_json::to_string(&wire).unwrap();
        let back: SparseMatWire = serde_json::from_str(&json).unwrap();
        let b = SparseMat::from_wire(q(), &back).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&b.to_wire()).unwrap(), json);
    }

    fn arb_mat(rows: usize, cols: usize) -> impl Strategy<Value = SparseMat<Rationals>> {
        proptest::collection::vec(
            (0..rows as u32, 0..cols as u32, -4i64..5),
            0..(rows * cols),
        )
        .prop_map(move |t| {
            SparseMat::from_triples(
                q(),
                rows,
                cols,
                t.into_iter().map(|(r, c, v)| (r, c, q().from_i64(v))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_associative(a in arb_mat(2, 3), b in arb_mat(3, 2), c in arb_mat(2, 2)) {
            let left = a.kron(&b).unwrap().kron(&c).unwrap();
            let right = a.kron(&b.kron(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn kron_of_products(a in arb_mat(2, 2), b in arb_mat(2, 2),
                            c in arb_mat(2, 2), d in arb_mat(2, 2)) {
            // (A*B) (x) (C*D) = (A (x) C) * (B (x) D)
            let lhs = a.matmul(&b).unwrap().kron(&c.matmul(&d).unwrap()).unwrap();
            let rhs = a.kron(&c).unwrap().matmul(&b.kron(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn add_commutes(a in arb_mat(3, 3), b in arb_mat(3, 3)) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }
    }
}
