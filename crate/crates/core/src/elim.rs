//! Exact sparse Gaussian elimination: rank, kernel bases, and linear solves.
//!
//! Over the rationals the pivot choice follows a Markowitz-style rule (pick
//! the eligible column with fewest entries, then the shortest row in it) to
//! limit fill-in and coefficient growth; over prime fields a plain positional
//! rule is used. Both rules are deterministic, so echelon forms, kernel bases
//! and solutions are reproducible across runs and thread counts.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::SparseMat;

/// Sparse row/vector: (index, value) pairs sorted by index, no zeros.
pub type SparseVec<F> = Vec<(u32, <F as Field>::Elem)>;

/// Row-reduced echelon data for a list of sparse rows.
///
/// Only columns below `pivot_limit` are eligible as pivots; entries at or
/// beyond the limit ride along (used by [`ColumnSolver`] to carry the
/// coefficient bookkeeping of an augmented identity block).
pub struct Rref<F: Field> {
    field: F,
    pivot_limit: usize,
    /// (row storage index, pivot column), sorted by pivot column.
    pivots: Vec<(usize, u32)>,
    rows: Vec<SparseVec<F>>,
    /// Rows that vanished on the eligible columns but kept a tail beyond
    /// `pivot_limit` (empty when `pivot_limit == cols`).
    null_rows: Vec<SparseVec<F>>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.iter().map(|(_, c)| *c)
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (u32, &SparseVec<F>)> + '_ {
        self.pivots.iter().map(|(i, c)| (*c, &self.rows[*i]))
    }

    pub fn null_rows(&self) -> &[SparseVec<F>] {
        &self.null_rows
    }

    /// Reduces `v` against the pivot rows (only entries below `pivot_limit`
    /// take part; the tails are bookkeeping), returning the residual and the
    /// reduction coefficient per pivot.
    pub fn reduce(&self, v: &SparseVec<F>) -> (SparseVec<F>, Vec<(u32, F::Elem)>) {
        let f = &self.field;
        let mut residual = v.clone();
        let mut coeffs = Vec::new();
        // Pivot rows are fully reduced against each other, so one pass in
        // increasing pivot-column order is complete.
        for (ri, c) in &self.pivots {
            if let Ok(k) = residual.binary_search_by_key(c, |(i, _)| *i) {
                let lambda = residual[k].1.clone();
                let row = &self.rows[*ri];
                // entries are sorted, so the eligible part is a prefix
                let cut = row.partition_point(|(i, _)| (*i as usize) < self.pivot_limit);
                residual = row_axpy(f, &residual, &f.neg(&lambda), &row[..cut].to_vec());
                coeffs.push((*c, lambda));
            }
        }
        (residual, coeffs)
    }
}

fn row_axpy<F: Field>(
    f: &F,
    target: &SparseVec<F>,
    lambda: &F::Elem,
    src: &SparseVec<F>,
) -> SparseVec<F> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < target.len() || j < src.len() {
        match (target.get(i), src.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = f.add(vi, &f.mul(lambda, vj));
                if !f.is_zero(&v) {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                let v = f.mul(lambda, vj);
                if !f.is_zero(&v) {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                let v = f.mul(lambda, vj);
                if !f.is_zero(&v) {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Reduces `rows` to reduced row echelon form on the columns `< pivot_limit`.
pub fn rref<F: Field>(field: &F, pivot_limit: usize, rows: Vec<SparseVec<F>>) -> Rref<F> {
    let markowitz = field.characteristic() == 0;
    let mut rows = rows;
    let nrows = rows.len();
    let mut state = ElimState {
        // col -> all rows with a nonzero there (victims of elimination)
        col_all: vec![BTreeSet::new(); pivot_limit],
        // col -> number of *active* (non-pivot) rows with a nonzero there
        active_count: vec![0u32; pivot_limit],
        candidates: BTreeSet::new(),
        done_col: vec![false; pivot_limit],
        is_pivot_row: vec![false; nrows],
        markowitz,
    };
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            if (*c as usize) < pivot_limit {
                state.col_all[*c as usize].insert(r as u32);
                state.active_count[*c as usize] += 1;
            }
        }
    }
    for c in 0..pivot_limit {
        state.refresh_candidate(c as u32, 0);
    }

    let mut pivots: Vec<(usize, u32)> = Vec::new();
    while let Some(&(key, c)) = state.candidates.iter().next() {
        state.candidates.remove(&(key, c));
        let cu = c as usize;
        if state.active_count[cu] == 0 {
            continue;
        }
        // pick the pivot among active rows of the column
        let r = if markowitz {
            let mut best: Option<(usize, u32)> = None;
            for &ri in &state.col_all[cu] {
                if state.is_pivot_row[ri as usize] {
                    continue;
                }
                let len = rows[ri as usize].len();
                if best.map_or(true, |(blen, bri)| (len, ri) < (blen, bri)) {
                    best = Some((len, ri));
                }
            }
            best.expect("active count positive").1
        } else {
            *state
                .col_all[cu]
                .iter()
                .find(|&&ri| !state.is_pivot_row[ri as usize])
                .expect("active count positive")
        };
        let ru = r as usize;
        // normalize
        let pivot_val = {
            let k = rows[ru].binary_search_by_key(&c, |(i, _)| *i).unwrap();
            rows[ru][k].1.clone()
        };
        let inv = field.inv(&pivot_val).expect("pivot is nonzero");
        if !field.is_one(&pivot_val) {
            for (_, v) in rows[ru].iter_mut() {
                *v = field.mul(v, &inv);
            }
        }
        // the pivot row leaves the active set
        state.is_pivot_row[ru] = true;
        for (c2, _) in &rows[ru] {
            let c2u = *c2 as usize;
            if c2u < pivot_limit && !state.done_col[c2u] {
                let before = state.active_count[c2u];
                state.active_count[c2u] = before - 1;
                state.refresh_candidate(*c2, before);
            }
        }
        // eliminate c from every other row containing it (pivot rows too,
        // which keeps the pivot block fully reduced)
        let victims: Vec<u32> = state.col_all[cu].iter().copied().filter(|&x| x != r).collect();
        let src = std::mem::take(&mut rows[ru]);
        for v in victims {
            let vu = v as usize;
            let lambda = {
                let k = rows[vu].binary_search_by_key(&c, |(i, _)| *i).unwrap();
                field.neg(&rows[vu][k].1)
            };
            let new_row = row_axpy(field, &rows[vu], &lambda, &src);
            state.track_row_change(v, &rows[vu], &new_row, pivot_limit);
            rows[vu] = new_row;
        }
        rows[ru] = src;
        state.done_col[cu] = true;
        state.col_all[cu].clear();
        state.active_count[cu] = 0;
        pivots.push((ru, c));
    }

    let is_pivot_row = state.is_pivot_row;
    pivots.sort_by_key(|(_, c)| *c);
    let mut null_rows = Vec::new();
    for (r, row) in rows.iter_mut().enumerate() {
        if !is_pivot_row[r] && !row.is_empty() {
            null_rows.push(std::mem::take(row));
        }
    }
    Rref { field: field.clone(), pivot_limit, pivots, rows, null_rows }
}

struct ElimState {
    col_all: Vec<BTreeSet<u32>>,
    active_count: Vec<u32>,
    candidates: BTreeSet<(u32, u32)>,
    done_col: Vec<bool>,
    is_pivot_row: Vec<bool>,
    markowitz: bool,
}

impl ElimState {
    /// Re-files column `c` in the candidate index after its active count
    /// changed from `before` to the current value.
    fn refresh_candidate(&mut self, c: u32, before: u32) {
        let cu = c as usize;
        let after = self.active_count[cu];
        let key_of = |count: u32| if self.markowitz { count } else { u32::from(count > 0) };
        if before > 0 {
            self.candidates.remove(&(key_of(before), c));
        }
        if after > 0 && !self.done_col[cu] {
            self.candidates.insert((key_of(after), c));
        }
    }

    fn track_row_change<E: Clone>(
        &mut self,
        row_idx: u32,
        old_row: &[(u32, E)],
        new_row: &[(u32, E)],
        pivot_limit: usize,
    ) {
        let active = !self.is_pivot_row[row_idx as usize];
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            let oi = old_row.get(i).map(|(c, _)| *c);
            let nj = new_row.get(j).map(|(c, _)| *c);
            let (removed, c) = match (oi, nj) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    (true, a)
                }
                (Some(_), Some(b)) => {
                    j += 1;
                    (false, b)
                }
                (Some(a), None) => {
                    i += 1;
                    (true, a)
                }
                (None, Some(b)) => {
                    j += 1;
                    (false, b)
                }
                (None, None) => break,
            };
            let cu = c as usize;
            if cu >= pivot_limit || self.done_col[cu] {
                continue;
            }
            if removed {
                self.col_all[cu].remove(&row_idx);
            } else {
                self.col_all[cu].insert(row_idx);
            }
            if active {
                let before = self.active_count[cu];
                self.active_count[cu] = if removed { before - 1 } else { before + 1 };
                self.refresh_candidate(c, before);
            }
        }
    }
}

/// Exact rank and verified kernel basis of a sparse matrix.
///
/// Row operations preserve the (right) kernel, so the kernel basis is read
/// off the reduced echelon form by back-substituting free columns. Every
/// vector is re-checked against the original matrix before being returned.
pub fn rank_and_kernel<F: Field>(a: &SparseMat<F>) -> (usize, Vec<SparseVec<F>>) {
    let f = a.field().clone();
    let starts = a.row_starts();
    let rows: Vec<SparseVec<F>> = (0..a.rows())
        .map(|r| {
            a.entries()[starts[r]..starts[r + 1]]
                .iter()
                .map(|(_, c, v)| (*c, v.clone()))
                .collect()
        })
        .collect();
    let red = rref(&f, a.cols(), rows);
    let rank = red.rank();
    let pivot_cols: Vec<u32> = red.pivot_cols().collect();
    let pivot_set: BTreeSet<u32> = pivot_cols.iter().copied().collect();
    let mut kernel = Vec::with_capacity(a.cols() - rank);
    for free in 0..a.cols() as u32 {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v: SparseVec<F> = vec![(free, f.one())];
        for (c, row) in red.pivot_rows() {
            if let Ok(k) = row.binary_search_by_key(&free, |(i, _)| *i) {
                v.push((c, f.neg(&row[k].1)));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(
            a.apply_vec(&v).is_empty(),
            "kernel vector failed the A*v = 0 re-check"
        );
        kernel.push(v);
    }
    (rank, kernel)
}

/// Column-space solver: factors `A` once, then answers many `A x = b`
/// membership/solve queries.
///
/// Internally reduces the rows `[column_i(A) | e_i]`; a row operation
/// invariant keeps each surviving row of the form `[ (A y)^T | y^T ]`, so
/// reducing `b` against the pivot rows both decides membership and assembles
/// a preimage.
pub struct ColumnSolver<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    red: Rref<F>,
}

impl<F: Field> ColumnSolver<F> {
    pub fn new(a: &SparseMat<F>) -> ColumnSolver<F> {
        let f = a.field().clone();
        let m = a.rows();
        let n = a.cols();
        let mut aug: Vec<SparseVec<F>> = vec![Vec::new(); n];
        for (r, c, v) in a.entries() {
            aug[*c as usize].push((*r, v.clone()));
        }
        for (i, row) in aug.iter_mut().enumerate() {
            // entries arrive row-major, i.e. already sorted by row index
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            row.push((m as u32 + i as u32, f.one()));
        }
        let red = rref(&f, m, aug);
        ColumnSolver { field: f, rows: m, cols: n, red }
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }

    /// Returns some exact `x` with `A x = b`, or `None` if `b` is not in the
    /// column space. The result is verified by substitution by the caller
    /// (see [`solve`]); the arithmetic here is exact either way.
    pub fn solve(&self, b: &SparseVec<F>) -> Option<SparseVec<F>> {
        let f = &self.field;
        let (residual, coeffs) = self.red.reduce(b);
        if !residual.is_empty() {
            return None;
        }
        // x = sum lambda_c * y-part of pivot row at column c
        let mut acc: std::collections::BTreeMap<u32, F::Elem> = std::collections::BTreeMap::new();
        let pivot_rows: std::collections::BTreeMap<u32, &SparseVec<F>> =
            self.red.pivot_rows().collect();
        for (c, lambda) in &coeffs {
            let row = pivot_rows[c];
            for (idx, v) in row {
                if (*idx as usize) >= self.rows {
                    let xi = *idx - self.rows as u32;
                    let add = f.mul(lambda, v);
                    match acc.get_mut(&xi) {
                        Some(cur) => *cur = f.add(cur, &add),
                        None => {
                            acc.insert(xi, add);
                        }
                    }
                }
            }
        }
        Some(acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect())
    }

    /// Kernel vectors of `A` that fell out of the factorization (the `y`
    /// tails of rows whose `A`-part vanished).
    pub fn kernel_vectors(&self) -> Vec<SparseVec<F>> {
        self.red
            .null_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(i, _)| (*i as usize) >= self.rows)
                    .map(|(i, v)| (*i - self.rows as u32, v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// One-shot exact solve with substitution check.
pub fn solve<F: Field>(a: &SparseMat<F>, b: &SparseVec<F>) -> Result<Option<SparseVec<F>>> {
    for (i, _) in b {
        if *i as usize >= a.rows() {
            return Err(Error::ShapeMismatch(format!(
                "rhs index {i} outside {} rows",
                a.rows()
            )));
        }
    }
    let solver = ColumnSolver::new(a);
    Ok(verify_solution(a, b, solver.solve(b)))
}

/// Substitution check `A x = b`; panics on failure (an exact-arithmetic bug,
/// not a data error).
pub fn verify_solution<F: Field>(
    a: &SparseMat<F>,
    b: &SparseVec<F>,
    x: Option<SparseVec<F>>,
) -> Option<SparseVec<F>> {
    let x = x?;
    let f = a.field();
    let ax = a.apply_vec(&x);
    let mut diff = ax;
    for (i, v) in b {
        match diff.binary_search_by_key(i, |(j, _)| *j) {
            Ok(k) => {
                let nv = f.sub(&diff[k].1, v);
                if f.is_zero(&nv) {
                    diff.remove(k);
                } else {
                    diff[k].1 = nv;
                }
            }
            Err(k) => diff.insert(k, (*i, f.neg(v))),
        }
    }
    assert!(diff.is_empty(), "solver returned a non-solution");
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

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
    fn zero_matrix_kernel_is_standard_basis() {
        let z = SparseMat::<Rationals>::zero(q(), 3, 3);
        let (rank, kernel) = rank_and_kernel(&z);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
        for (i, v) in kernel.iter().enumerate() {
            assert_eq!(v.as_slice(), &[(i as u32, q().one())]);
        }
    }

    #[test]
    fn identity_has_full_rank() {
        let i4 = SparseMat::identity(q(), 4);
        let (rank, kernel) = rank_and_kernel(&i4);
        assert_eq!(rank, 4);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rank_plus_nullity() {
        let a = mat(3, 4, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (2, 3, 1)]);
        let (rank, kernel) = rank_and_kernel(&a);
        assert_eq!(rank, 2);
        assert_eq!(rank + kernel.len(), 4);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let i3 = SparseMat::identity(q(), 3);
        let b = vec![(0u32, q().from_i64(5)), (2, q().from_i64(-1))];
        assert_eq!(solve(&i3, &b).unwrap().unwrap(), b);
        let z = SparseMat::<Rationals>::zero(q(), 3, 3);
        assert!(solve(&z, &b).unwrap().is_none());
        assert!(solve(&z, &Vec::new()).unwrap().is_some());
    }

    #[test]
    fn solve_rectangular() {
        // b in the column space
        let a = mat(4, 2, &[(0, 0, 1), (1, 0, 2), (2, 1, 3), (3, 1, 5)]);
        let b = vec![
            (0u32, q().from_i64(2)),
            (1, q().from_i64(4)),
            (2, q().from_i64(-3)),
            (3, q().from_i64(-5)),
        ];
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(
            x,
            vec![(0u32, q().from_i64(2)), (1, q().from_i64(-1))]
        );
        // and one outside it
        let b2 = vec![(0u32, q().from_i64(1))];
        assert!(solve(&a, &b2).unwrap().is_none());
    }

    #[test]
    fn prime_field_rank_matches_rational_rank_here() {
        let f101 = PrimeField::new(101).unwrap();
        let triples = [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 1), (2, 0, 1), (2, 2, -1)];
        let aq = mat(3, 3, &triples);
        let ap = SparseMat::from_triples(
            f101,
            3,
            3,
            triples.iter().map(|(r, c, v)| (*r, *c, f101.from_i64(*v))),
        )
        .unwrap();
        let (rq, _) = rank_and_kernel(&aq);
        let (rp, _) = rank_and_kernel(&ap);
        assert_eq!(rq, rp);
    }

    #[test]
    fn column_solver_reuses_factorization() {
        let a = mat(3, 3, &[(0, 0, 2), (1, 1, 3), (1, 0, 1), (2, 2, 7)]);
        let solver = ColumnSolver::new(&a);
        assert_eq!(solver.rank(), 3);
        for k in 0..3u32 {
            let b = vec![(k, q().one())];
            let x = verify_solution(&a, &b, solver.solve(&b)).unwrap();
            assert!(!x.is_empty());
        }
    }

    #[test]
    fn kernel_vectors_from_solver_match() {
        let a = mat(2, 3, &[(0, 0, 1), (0, 1, 1), (1, 2, 1)]);
        let solver = ColumnSolver::new(&a);
        let ks = solver.kernel_vectors();
        assert_eq!(solver.rank(), 2);
        assert_eq!(ks.len(), 1);
        assert!(a.apply_vec(&ks[0]).is_empty());
    }
}
