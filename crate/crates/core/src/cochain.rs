//! Cochains Hom(H^{⊗p}, H^{⊗q}) and linear operators between cochain spaces.
//!
//! A cochain is a sparse `d^q x d^p` matrix. An operator ([`CochainMap`]) is
//! a formal sum of tensor words with one open slot (the argument); it can be
//! applied to single cochains cheaply (the word is partially evaluated once,
//! at construction) or materialized as a matrix on cochain coordinates for
//! rank computations. Cochain coordinates: `vec(f)[r · d^p + c] = f[r, c]`.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::HopfAlgebra;
use crate::sparse::SparseMat;
use crate::word::{PartialWord, TaggedBuilder, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<F: Field> {
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub mat: SparseMat<F>,
}

impl<F: Field> Cochain<F> {
    pub fn new(d: usize, p: usize, q: usize, mat: SparseMat<F>) -> Result<Cochain<F>> {
        let rows = d.pow(q as u32);
        let cols = d.pow(p as u32);
        if mat.rows() != rows || mat.cols() != cols {
            return Err(Error::ShapeMismatch(format!(
                "({p}, {q})-cochain must be {rows}x{cols}, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Cochain { d, p, q, mat })
    }

    pub fn zero(field: F, d: usize, p: usize, q: usize) -> Cochain<F> {
        Cochain { d, p, q, mat: SparseMat::zero(field, d.pow(q as u32), d.pow(p as u32)) }
    }

    /// The identity cochain id: H^{⊗n} → H^{⊗n}.
    pub fn identity(field: F, d: usize, n: usize) -> Cochain<F> {
        Cochain { d, p: n, q: n, mat: SparseMat::identity(field, d.pow(n as u32)) }
    }

    pub fn basis(field: F, d: usize, p: usize, q: usize, r: u32, c: u32) -> Cochain<F> {
        let mat = SparseMat::from_triples(
            field.clone(),
            d.pow(q as u32),
            d.pow(p as u32),
            [(r, c, field.one())],
        )
        .expect("in range");
        Cochain { d, p, q, mat }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero_matrix()
    }

    /// Arity of a diagonal cochain.
    pub fn arity(&self) -> Result<usize> {
        if self.p != self.q {
            return Err(Error::ArityError(format!(
                "cochain of bidegree ({}, {}) is not diagonal",
                self.p, self.q
            )));
        }
        Ok(self.p)
    }

    pub fn add(&self, other: &Cochain<F>) -> Result<Cochain<F>> {
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::ShapeMismatch("cochain bidegrees differ".into()));
        }
        Ok(Cochain { d: self.d, p: self.p, q: self.q, mat: self.mat.add(&other.mat)? })
    }

    pub fn sub(&self, other: &Cochain<F>) -> Result<Cochain<F>> {
        self.add(&Cochain { d: other.d, p: other.p, q: other.q, mat: other.mat.neg() })
    }

    pub fn scale(&self, s: &F::Elem) -> Cochain<F> {
        Cochain { d: self.d, p: self.p, q: self.q, mat: self.mat.scale(s) }
    }

    /// Flattens to cochain coordinates.
    pub fn to_vec(&self) -> Vec<(u32, F::Elem)> {
        let cols = self.mat.cols() as u32;
        self.mat
            .entries()
            .iter()
            .map(|(r, c, v)| (r * cols + c, v.clone()))
            .collect()
    }

    pub fn from_vec(
        field: F,
        d: usize,
        p: usize,
        q: usize,
        v: &[(u32, F::Elem)],
    ) -> Result<Cochain<F>> {
        let cols = d.pow(p as u32) as u32;
        let mat = SparseMat::from_triples(
            field,
            d.pow(q as u32),
            cols as usize,
            v.iter().map(|(i, x)| (i / cols, i % cols, x.clone())),
        )?;
        Cochain::new(d, p, q, mat)
    }
}

/// Seeded sparse test cochain: about `3 · d^n` entries with coefficients
/// from a fixed small set.
pub fn random_cochain<F: Field>(
    field: &F,
    d: usize,
    p: usize,
    q: usize,
    rng: &mut impl Rng,
) -> Cochain<F> {
    let rows = d.pow(q as u32);
    let cols = d.pow(p as u32);
    let count = (3 * d.pow(((p + q) / 2) as u32)).min(rows * cols);
    let palette: [i64; 4] = [1, -1, 2, -2];
    let triples: Vec<(u32, u32, F::Elem)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..rows) as u32,
                rng.gen_range(0..cols) as u32,
                field.from_i64(palette[rng.gen_range(0..palette.len())]),
            )
        })
        .collect();
    Cochain {
        d,
        p,
        q,
        mat: SparseMat::from_triples(field.clone(), rows, cols, triples).expect("in range"),
    }
}

struct Term<F: Field> {
    coeff: F::Elem,
    word: Word,
    bindings: Vec<SparseMat<F>>,
    partial: PartialWord<F>,
}

/// A linear operator between cochain spaces: a formal sum of one-slot words.
/// Slot 0 of every word is the argument; further slots are bound cochains
/// (e.g. the fixed element of an operadic composition).
pub struct CochainMap<F: Field> {
    pub d: usize,
    pub in_p: usize,
    pub in_q: usize,
    pub out_p: usize,
    pub out_q: usize,
    field: F,
    terms: Vec<Term<F>>,
}

impl<F: Field> CochainMap<F> {
    /// Wraps a word whose slot 0 is the argument. `bindings` are the
    /// matrices for slots 1, 2, … in order.
    pub fn from_word(
        h: &HopfAlgebra<F>,
        word: Word,
        bindings: Vec<SparseMat<F>>,
    ) -> Result<CochainMap<F>> {
        let sigs = word.slot_sigs();
        if sigs.is_empty() {
            return Err(Error::UnboundSlot(0));
        }
        if bindings.len() != sigs.len() - 1 {
            return Err(Error::UnboundSlot(bindings.len() + 1));
        }
        let (in_p, in_q) = sigs[0];
        let bound: Vec<(usize, &SparseMat<F>)> =
            bindings.iter().enumerate().map(|(k, m)| (k + 1, m)).collect();
        let partial = PartialWord::new(&word, h.maps(), &bound, 0)?;
        Ok(CochainMap {
            d: h.dim,
            in_p,
            in_q,
            out_p: word.input(),
            out_q: word.output(),
            field: h.field().clone(),
            terms: vec![Term { coeff: h.field().one(), word, bindings, partial }],
        })
    }

    /// The identity operator on (p, q)-cochains.
    pub fn identity(h: &HopfAlgebra<F>, p: usize, q: usize) -> Result<CochainMap<F>> {
        let (mut tb, legs) = TaggedBuilder::new(p);
        let out = tb.slot(0, p, q, &legs)?;
        let word = tb.finish(&out)?;
        CochainMap::from_word(h, word, Vec::new())
    }

    pub fn apply(&self, f: &Cochain<F>) -> Result<Cochain<F>> {
        if (f.p, f.q) != (self.in_p, self.in_q) {
            return Err(Error::ShapeMismatch(format!(
                "operator expects ({}, {})-cochains, got ({}, {})",
                self.in_p, self.in_q, f.p, f.q
            )));
        }
        let mut acc = Cochain::zero(self.field.clone(), self.d, self.out_p, self.out_q);
        for t in &self.terms {
            let part = t.partial.apply(&f.mat)?;
            acc = acc.add(&Cochain::new(self.d, self.out_p, self.out_q, part)?.scale(&t.coeff))?;
        }
        Ok(acc)
    }

    pub fn scale(mut self, s: &F::Elem) -> CochainMap<F> {
        if self.field.is_zero(s) {
            self.terms.clear();
        } else {
            for t in &mut self.terms {
                t.coeff = self.field.mul(&t.coeff, s);
            }
        }
        self
    }

    pub fn add(mut self, other: CochainMap<F>) -> Result<CochainMap<F>> {
        if (self.in_p, self.in_q, self.out_p, self.out_q)
            != (other.in_p, other.in_q, other.out_p, other.out_q)
        {
            return Err(Error::ShapeMismatch("operator degrees differ in sum".into()));
        }
        self.terms.extend(other.terms);
        Ok(self)
    }

    pub fn sub(self, other: CochainMap<F>) -> Result<CochainMap<F>> {
        let minus_one = self.field.neg(&self.field.one());
        self.add(other.scale(&minus_one))
    }

    /// Operator composition `self ∘ inner`, by inlining words.
    pub fn compose(&self, h: &HopfAlgebra<F>, inner: &CochainMap<F>) -> Result<CochainMap<F>> {
        if (inner.out_p, inner.out_q) != (self.in_p, self.in_q) {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: inner produces ({}, {}), outer expects ({}, {})",
                inner.out_p, inner.out_q, self.in_p, self.in_q
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * inner.terms.len());
        for to in &self.terms {
            for ti in &inner.terms {
                let word = Word::inline_slot0(&to.word, &ti.word)?;
                let mut bindings = ti.bindings.clone();
                bindings.extend(to.bindings.iter().cloned());
                let bound: Vec<(usize, &SparseMat<F>)> =
                    bindings.iter().enumerate().map(|(k, m)| (k + 1, m)).collect();
                let partial = PartialWord::new(&word, h.maps(), &bound, 0)?;
                terms.push(Term {
                    coeff: self.field.mul(&to.coeff, &ti.coeff),
                    word,
                    bindings,
                    partial,
                });
            }
        }
        Ok(CochainMap {
            d: self.d,
            in_p: inner.in_p,
            in_q: inner.in_q,
            out_p: self.out_p,
            out_q: self.out_q,
            field: self.field.clone(),
            terms,
        })
    }

    /// Iterated self-composition (`power(0)` is the identity).
    pub fn power(&self, h: &HopfAlgebra<F>, k: usize) -> Result<CochainMap<F>> {
        if (self.in_p, self.in_q) != (self.out_p, self.out_q) {
            return Err(Error::ShapeMismatch("power of a degree-changing operator".into()));
        }
        let mut acc = CochainMap::identity_with(h, self.in_p, self.in_q)?;
        for _ in 0..k {
            acc = self.compose(h, &acc)?;
        }
        Ok(acc)
    }

    fn identity_with(h: &HopfAlgebra<F>, p: usize, q: usize) -> Result<CochainMap<F>> {
        CochainMap::identity(h, p, q)
    }

    pub fn in_dim(&self) -> usize {
        self.d.pow((self.in_p + self.in_q) as u32)
    }

    pub fn out_dim(&self) -> usize {
        self.d.pow((self.out_p + self.out_q) as u32)
    }

    /// Materializes the operator on cochain coordinates
    /// (`d^{out_p + out_q} x d^{in_p + in_q}`), column by column over the
    /// basis cochains.
    pub fn to_matrix(&self) -> Result<SparseMat<F>> {
        let cols_in = self.d.pow(self.in_p as u32) as u32;
        let n_in = self.in_dim();
        let results: Vec<Result<Vec<(u32, F::Elem)>>> = (0..n_in as u32)
            .into_par_iter()
            .map(|idx| {
                let basis = Cochain::basis(
                    self.field.clone(),
                    self.d,
                    self.in_p,
                    self.in_q,
                    idx / cols_in,
                    idx % cols_in,
                );
                Ok(self.apply(&basis)?.to_vec())
            })
            .collect();
        let cols: Result<Vec<_>> = results.into_iter().collect();
        SparseMat::from_columns(self.field.clone(), self.out_dim(), cols?)
    }

    /// Pointwise zero test over all basis cochains; returns a witness basis
    /// index on failure. Never materializes the matrix.
    pub fn zero_witness(&self) -> Result<Option<(u32, u32)>> {
        let cols_in = self.d.pow(self.in_p as u32) as u32;
        let n_in = self.in_dim();
        let hits: Vec<Option<(u32, u32)>> = (0..n_in as u32)
            .into_par_iter()
            .map(|idx| {
                let basis = Cochain::basis(
                    self.field.clone(),
                    self.d,
                    self.in_p,
                    self.in_q,
                    idx / cols_in,
                    idx % cols_in,
                );
                match self.apply(&basis) {
                    Ok(out) if out.is_zero() => None,
                    _ => Some((idx / cols_in, idx % cols_in)),
                }
            })
            .collect();
        Ok(hits.into_iter().flatten().next())
    }
}

/// Pointwise equality of two operators on all basis cochains, with witness.
pub fn maps_equal_witness<F: Field>(
    a: &CochainMap<F>,
    b: &CochainMap<F>,
) -> Result<Option<(u32, u32)>> {
    if (a.in_p, a.in_q, a.out_p, a.out_q) != (b.in_p, b.in_q, b.out_p, b.out_q) {
        return Err(Error::ShapeMismatch("comparing operators of different degrees".into()));
    }
    let cols_in = a.d.pow(a.in_p as u32) as u32;
    let n_in = a.in_dim();
    let field = a.field.clone();
    let hits: Vec<Option<(u32, u32)>> = (0..n_in as u32)
        .into_par_iter()
        .map(|idx| {
            let basis =
                Cochain::basis(field.clone(), a.d, a.in_p, a.in_q, idx / cols_in, idx % cols_in);
            let fa = a.apply(&basis).ok()?;
            let fb = b.apply(&basis).ok()?;
            if fa == fb {
                None
            } else {
                Some((idx / cols_in, idx % cols_in))
            }
        })
        .collect();
    Ok(hits.into_iter().flatten().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::hopf::{group_algebra, GroupTable};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn identity_operator_is_identity() {
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        let id = CochainMap::identity(&h, 1, 1).unwrap();
        let f = Cochain::identity(q(), 2, 1);
        assert_eq!(id.apply(&f).unwrap(), f);
        assert_eq!(id.to_matrix().unwrap(), SparseMat::identity(q(), 4));
    }

    #[test]
    fn vec_roundtrip() {
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        let _ = &h;
        let c = Cochain::basis(q(), 2, 2, 1, 1, 3);
        let v = c.to_vec();
        assert_eq!(v, vec![(1 * 4 + 3, q().one())]);
        let back = Cochain::from_vec(q(), 2, 2, 1, &v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn compose_matches_matrix_product() {
        // postcompose-with-Δ then postcompose-with-(ε⊗id) is the identity
        let h = group_algebra("kc3", &GroupTable::cyclic(3), q()).unwrap();
        let split = {
            let (mut tb, legs) = TaggedBuilder::new(1);
            let out = tb.slot(0, 1, 1, &legs).unwrap();
            let pieces = tb.split(out[0], 2).unwrap();
            let word = tb.finish(&pieces).unwrap();
            CochainMap::from_word(&h, word, Vec::new()).unwrap()
        };
        let crush = {
            let (mut tb, legs) = TaggedBuilder::new(1);
            let out = tb.slot(0, 1, 2, &legs).unwrap();
            tb.counit(out[0]).unwrap();
            let word = tb.finish(&[out[1]]).unwrap();
            CochainMap::from_word(&h, word, Vec::new()).unwrap()
        };
        let comp = crush.compose(&h, &split).unwrap();
        let id = CochainMap::identity(&h, 1, 1).unwrap();
        assert!(maps_equal_witness(&comp, &id).unwrap().is_none());
        assert_eq!(
            comp.to_matrix().unwrap(),
            crush.to_matrix().unwrap().matmul(&split.to_matrix().unwrap()).unwrap()
        );
    }

    #[test]
    fn random_cochain_is_reproducible() {
        use rand::SeedableRng;
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = random_cochain(&q(), 4, 2, 2, &mut r1);
        let b = random_cochain(&q(), 4, 2, 2, &mut r2);
        assert_eq!(a, b);
    }
}
