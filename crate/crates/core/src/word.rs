//! Tensor words: executable Sweedler notation.
//!
//! A word is a pipeline of elementary layers acting on tensor powers of the
//! underlying vector space `H`: permutations of tensor factors, and
//! `id^a ⊗ g ⊗ id^b` for `g` one of the Hopf structure maps or a cochain
//! slot. Long formulas (cofaces, cyclic operators, operadic compositions)
//! are assembled as words and evaluated column by column on sparse states,
//! so intermediate tensor degrees can be large as long as the states stay
//! sparse — nothing is ever materialized on the full intermediate space.
//!
//! Index convention, fixed globally: a basis tensor `e_{i_0} ⊗ … ⊗ e_{i_{n-1}}`
//! of `H^{⊗n}` linearizes to `Σ i_k · d^{n-1-k}` — leftmost factor most
//! significant. Degree 0 is the base field (a 1-dimensional space).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::SparseMat;

/// Elementary map of a layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    Mult,
    Comult,
    Unit,
    Counit,
    Antipode,
    AntipodeInv,
    Identity,
    /// A cochain reference, bound at evaluation time.
    Slot(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub left: usize,
    pub gen: Gen,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Factor permutation in gather form: output leg `j` is input leg `src[j]`.
    Perm(Vec<usize>),
    Apply(Layer),
}

/// A validated pipeline with tracked degrees.
#[derive(Debug, Clone)]
pub struct Word {
    input: usize,
    output: usize,
    max_degree: usize,
    steps: Vec<Step>,
    /// (in-degree, out-degree) per slot id; dense ids starting at 0.
    slot_sigs: Vec<(usize, usize)>,
}

impl Word {
    pub fn input(&self) -> usize {
        self.input
    }
    pub fn output(&self) -> usize {
        self.output
    }
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
    pub fn slot_sigs(&self) -> &[(usize, usize)] {
        &self.slot_sigs
    }
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Concatenates two words (`next` runs after `self`).
    pub fn then(&self, next: &Word) -> Result<Word> {
        if self.output != next.input {
            return Err(Error::DegreeMismatch(format!(
                "cannot chain word with output {} into word with input {}",
                self.output, next.input
            )));
        }
        if self.slot_sigs.len() != next.slot_sigs.len()
            || self.slot_sigs.iter().zip(&next.slot_sigs).any(|(a, b)| a != b)
        {
            return Err(Error::DegreeMismatch("slot signatures differ".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(Word {
            input: self.input,
            output: next.output,
            max_degree: self.max_degree.max(next.max_degree),
            steps,
            slot_sigs: self.slot_sigs.clone(),
        })
    }

    /// Substitutes `inner` for slot 0 of `outer`: the composite computes
    /// `outer(inner(f), …)` where `f` is the (shared) slot 0 of the result.
    /// The other slots of `inner` keep their ids; those of `outer` are
    /// shifted up by `inner.slot_sigs.len() - 1`.
    pub fn inline_slot0(outer: &Word, inner: &Word) -> Result<Word> {
        if outer.slot_sigs.is_empty() {
            return Err(Error::UnboundSlot(0));
        }
        let (p0, q0) = outer.slot_sigs[0];
        if (inner.input, inner.output) != (p0, q0) {
            return Err(Error::DegreeMismatch(format!(
                "slot 0 of outer expects ({p0}, {q0}); inner word is ({}, {})",
                inner.input, inner.output
            )));
        }
        let inner_extra = inner.slot_sigs.len().saturating_sub(1);
        let shift = |g: Gen| match g {
            Gen::Slot(0) => Gen::Slot(0),
            Gen::Slot(k) => Gen::Slot(k + inner_extra),
            other => other,
        };
        let mut steps = Vec::new();
        let mut max_degree = outer.max_degree;
        for step in &outer.steps {
            match step {
                Step::Apply(Layer { left, gen: Gen::Slot(0), right }) => {
                    // splice inner, padded by (left, right)
                    for istep in &inner.steps {
                        match istep {
                            Step::Apply(l) => steps.push(Step::Apply(Layer {
                                left: left + l.left,
                                gen: l.gen,
                                right: l.right + right,
                            })),
                            Step::Perm(src) => {
                                let mut ext: Vec<usize> = (0..*left).collect();
                                ext.extend(src.iter().map(|s| s + left));
                                let n = left + src.len();
                                ext.extend(n..n + right);
                                steps.push(Step::Perm(ext));
                            }
                        }
                    }
                    // track degrees reached inside the splice
                    max_degree = max_degree.max(inner.max_degree + left + right);
                }
                Step::Apply(l) => steps.push(Step::Apply(Layer {
                    left: l.left,
                    gen: shift(l.gen),
                    right: l.right,
                })),
                other => steps.push(other.clone()),
            }
        }
        let mut slot_sigs = vec![inner.slot_sigs.first().copied().unwrap_or((0, 0))];
        slot_sigs.extend(inner.slot_sigs.iter().skip(1).copied());
        slot_sigs.extend(outer.slot_sigs.iter().skip(1).copied());
        // slot 0 of the composite is slot 0 of inner
        if inner.slot_sigs.is_empty() {
            return Err(Error::UnboundSlot(0));
        }
        Ok(Word { input: outer.input, output: outer.output, max_degree, steps, slot_sigs })
    }
}

/// Linearizes a multi-index (leftmost factor most significant).
pub fn lin(d: usize, digits: &[u32]) -> u64 {
    let mut idx = 0u64;
    for &k in digits {
        idx = idx * d as u64 + k as u64;
    }
    idx
}

/// Inverse of [`lin`] at degree `n`.
pub fn digits(d: usize, n: usize, mut idx: u64) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for k in (0..n).rev() {
        out[k] = (idx % d as u64) as u32;
        idx /= d as u64;
    }
    out
}

/// Permutation matrix on the tensor-index linearization, gather form:
/// sends `e_{i_0} ⊗ … ⊗ e_{i_{n-1}}` to the tensor whose leg `j` is `i_{src[j]}`.
pub fn perm_matrix<F: Field>(field: &F, d: usize, src: &[usize]) -> Result<SparseMat<F>> {
    let n = src.len();
    validate_perm(src)?;
    let dim = (d as u64).checked_pow(n as u32).ok_or_else(|| {
        Error::ResourceLimit(format!("d^{n} overflows"))
    })? as usize;
    let one = field.one();
    let triples = (0..dim as u64).map(|idx| {
        let di = digits(d, n, idx);
        let out: Vec<u32> = src.iter().map(|&s| di[s]).collect();
        (lin(d, &out) as u32, idx as u32, one.clone())
    });
    SparseMat::from_triples(field.clone(), dim, dim, triples)
}

fn validate_perm(src: &[usize]) -> Result<()> {
    let n = src.len();
    let mut seen = vec![false; n];
    for &s in src {
        if s >= n || seen[s] {
            return Err(Error::DegreeMismatch(format!("invalid permutation {src:?}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Column-access view of the six structure maps of a Hopf algebra, in the
/// form the word evaluator consumes.
#[derive(Debug, Clone)]
pub struct HopfMaps<F: Field> {
    pub d: usize,
    pub field: F,
    mult: Vec<Vec<(u32, F::Elem)>>,
    comult: Vec<Vec<(u32, F::Elem)>>,
    unit: Vec<Vec<(u32, F::Elem)>>,
    counit: Vec<Vec<(u32, F::Elem)>>,
    antipode: Vec<Vec<(u32, F::Elem)>>,
    antipode_inv: Vec<Vec<(u32, F::Elem)>>,
}

pub fn column_table<F: Field>(mat: &SparseMat<F>) -> Vec<Vec<(u32, F::Elem)>> {
    let mut cols = vec![Vec::new(); mat.cols()];
    for (r, c, v) in mat.entries() {
        cols[*c as usize].push((*r, v.clone()));
    }
    cols
}

impl<F: Field> HopfMaps<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: usize,
        field: F,
        mult: &SparseMat<F>,
        comult: &SparseMat<F>,
        unit: &SparseMat<F>,
        counit: &SparseMat<F>,
        antipode: &SparseMat<F>,
        antipode_inv: &SparseMat<F>,
    ) -> HopfMaps<F> {
        HopfMaps {
            d,
            field,
            mult: column_table(mult),
            comult: column_table(comult),
            unit: column_table(unit),
            counit: column_table(counit),
            antipode: column_table(antipode),
            antipode_inv: column_table(antipode_inv),
        }
    }

    fn arity(&self, gen: Gen, slot_sigs: &[(usize, usize)]) -> (usize, usize) {
        match gen {
            Gen::Mult => (2, 1),
            Gen::Comult => (1, 2),
            Gen::Unit => (0, 1),
            Gen::Counit => (1, 0),
            Gen::Antipode | Gen::AntipodeInv | Gen::Identity => (1, 1),
            Gen::Slot(k) => slot_sigs[k],
        }
    }
}

type State<F> = Vec<(u64, <F as Field>::Elem)>;

/// Sorts by index and sums duplicates, dropping zeros.
fn normalize_state<F: Field>(field: &F, mut state: State<F>) -> State<F> {
    state.sort_unstable_by_key(|(i, _)| *i);
    let mut out: State<F> = Vec::with_capacity(state.len());
    for (i, v) in state {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

struct EvalCtx<'a, F: Field> {
    maps: &'a HopfMaps<F>,
    slot_tables: Vec<Option<Vec<Vec<(u32, F::Elem)>>>>,
    slot_sigs: Vec<(usize, usize)>,
    identity_cols: Vec<Vec<(u32, F::Elem)>>,
}

impl<'a, F: Field> EvalCtx<'a, F> {
    fn columns(&self, gen: Gen) -> Result<&[Vec<(u32, F::Elem)>]> {
        Ok(match gen {
            Gen::Mult => &self.maps.mult,
            Gen::Comult => &self.maps.comult,
            Gen::Unit => &self.maps.unit,
            Gen::Counit => &self.maps.counit,
            Gen::Antipode => &self.maps.antipode,
            Gen::AntipodeInv => &self.maps.antipode_inv,
            Gen::Identity => &self.identity_cols,
            Gen::Slot(k) => self.slot_tables[k]
                .as_deref()
                .ok_or(Error::UnboundSlot(k))?,
        })
    }

    fn apply_steps(
        &self,
        d: usize,
        field: &F,
        deg_in: usize,
        state: State<F>,
        steps: &[Step],
    ) -> Result<(usize, State<F>)> {
        let mut deg = deg_in;
        let mut state = state;
        for step in steps {
            match step {
                Step::Perm(src) => {
                    debug_assert_eq!(src.len(), deg);
                    let mut next: State<F> = Vec::with_capacity(state.len());
                    for (idx, c) in &state {
                        let di = digits(d, deg, *idx);
                        let out: Vec<u32> = src.iter().map(|&s| di[s]).collect();
                        next.push((lin(d, &out), c.clone()));
                    }
                    next.sort_unstable_by_key(|(i, _)| *i);
                    state = next;
                }
                Step::Apply(Layer { left, gen, right }) => {
                    let (din, dout) = self.maps.arity(*gen, &self.slot_sigs);
                    debug_assert!(left + din + right == deg);
                    let cols = self.columns(*gen)?;
                    let pow_r = (d as u64).pow(*right as u32);
                    let pow_in = (d as u64).pow(din as u32);
                    let pow_out = (d as u64).pow(dout as u32);
                    let mut next: State<F> = Vec::with_capacity(state.len());
                    for (idx, c) in &state {
                        let r = idx % pow_r;
                        let rest = idx / pow_r;
                        let mid = (rest % pow_in) as usize;
                        let l = rest / pow_in;
                        for (row, v) in &cols[mid] {
                            let nidx = (l * pow_out + *row as u64) * pow_r + r;
                            next.push((nidx, field.mul(c, v)));
                        }
                    }
                    state = normalize_state(field, next);
                    deg = left + dout + right;
                }
            }
        }
        Ok((deg, state))
    }
}

fn build_ctx<'a, F: Field>(
    word: &Word,
    maps: &'a HopfMaps<F>,
    slots: &[(usize, &SparseMat<F>)],
) -> Result<EvalCtx<'a, F>> {
    let mut slot_tables: Vec<Option<Vec<Vec<(u32, F::Elem)>>>> =
        vec![None; word.slot_sigs.len()];
    for (k, mat) in slots {
        let (p, q) = *word
            .slot_sigs
            .get(*k)
            .ok_or(Error::UnboundSlot(*k))?;
        let want_rows = (maps.d as u64).pow(q as u32) as usize;
        let want_cols = (maps.d as u64).pow(p as u32) as usize;
        if mat.rows() != want_rows || mat.cols() != want_cols {
            return Err(Error::ShapeMismatch(format!(
                "slot {k} expects {want_rows}x{want_cols}, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        slot_tables[*k] = Some(column_table(mat));
    }
    let one = maps.field.one();
    let identity_cols = (0..maps.d as u32).map(|i| vec![(i, one.clone())]).collect();
    Ok(EvalCtx {
        maps,
        slot_tables,
        slot_sigs: word.slot_sigs.clone(),
        identity_cols,
    })
}

fn check_degree_fits(d: usize, max_degree: usize) -> Result<()> {
    (d as u64)
        .checked_pow(max_degree as u32)
        .ok_or_else(|| Error::ResourceLimit(format!("d^{max_degree} overflows u64")))?;
    Ok(())
}

/// Compiles a word to its sparse matrix, `d^out x d^in`, evaluating column
/// by column. All slots must be bound.
pub fn compile<F: Field>(
    word: &Word,
    maps: &HopfMaps<F>,
    slots: &[(usize, &SparseMat<F>)],
) -> Result<SparseMat<F>> {
    check_degree_fits(maps.d, word.max_degree)?;
    let ctx = build_ctx(word, maps, slots)?;
    for (k, t) in ctx.slot_tables.iter().enumerate() {
        if t.is_none() {
            return Err(Error::UnboundSlot(k));
        }
    }
    let d = maps.d;
    let f = &maps.field;
    let n_in = (d as u64).pow(word.input as u32) as usize;
    let n_out = (d as u64).pow(word.output as u32) as usize;
    let cols: Vec<Vec<(u32, F::Elem)>> = (0..n_in)
        .into_par_iter()
        .map(|j| {
            let state: State<F> = vec![(j as u64, f.one())];
            let (deg, state) = ctx
                .apply_steps(d, f, word.input, state, &word.steps)
                .expect("validated word");
            debug_assert_eq!(deg, word.output);
            state.into_iter().map(|(i, v)| (i as u32, v)).collect()
        })
        .collect();
    SparseMat::from_columns(f.clone(), n_out, cols)
}

/// A word with every slot bound except one, partially evaluated: the states
/// of all input columns are cached just before the open slot's layer, so
/// applying the operator to many different cochains re-runs only the tail.
pub struct PartialWord<F: Field> {
    d: usize,
    field: F,
    input: usize,
    output: usize,
    open_slot: usize,
    slot_in: usize,
    slot_out: usize,
    layer_left: usize,
    layer_right: usize,
    cached: Vec<Vec<(u64, F::Elem)>>,
    tail: Vec<Step>,
    slot_sigs: Vec<(usize, usize)>,
    bound_tables: Vec<Option<Vec<Vec<(u32, F::Elem)>>>>,
    maps: HopfMaps<F>,
}

impl<F: Field> PartialWord<F> {
    pub fn new(
        word: &Word,
        maps: &HopfMaps<F>,
        bindings: &[(usize, &SparseMat<F>)],
        open_slot: usize,
    ) -> Result<PartialWord<F>> {
        check_degree_fits(maps.d, word.max_degree)?;
        let ctx = build_ctx(word, maps, bindings)?;
        for (k, t) in ctx.slot_tables.iter().enumerate() {
            if k != open_slot && t.is_none() {
                return Err(Error::UnboundSlot(k));
            }
        }
        // locate the unique layer using the open slot
        let mut split_at: Option<usize> = None;
        for (i, step) in word.steps.iter().enumerate() {
            if let Step::Apply(Layer { gen: Gen::Slot(k), .. }) = step {
                if *k == open_slot {
                    if split_at.is_some() {
                        return Err(Error::DegreeMismatch(format!(
                            "slot {open_slot} used more than once"
                        )));
                    }
                    split_at = Some(i);
                }
            }
        }
        let split_at = split_at.ok_or(Error::UnboundSlot(open_slot))?;
        let (layer_left, layer_right) = match &word.steps[split_at] {
            Step::Apply(Layer { left, right, .. }) => (*left, *right),
            _ => unreachable!(),
        };
        let (slot_in, slot_out) = word.slot_sigs[open_slot];
        let d = maps.d;
        let f = &maps.field;
        let n_in = (d as u64).pow(word.input as u32) as usize;
        let prefix = &word.steps[..split_at];
        let cached: Vec<Vec<(u64, F::Elem)>> = (0..n_in)
            .into_par_iter()
            .map(|j| {
                let state: State<F> = vec![(j as u64, f.one())];
                let (_, state) = ctx
                    .apply_steps(d, f, word.input, state, prefix)
                    .expect("validated word");
                state
            })
            .collect();
        Ok(PartialWord {
            d,
            field: f.clone(),
            input: word.input,
            output: word.output,
            open_slot,
            slot_in,
            slot_out,
            layer_left,
            layer_right,
            cached,
            tail: word.steps[split_at + 1..].to_vec(),
            slot_sigs: word.slot_sigs.clone(),
            bound_tables: ctx.slot_tables,
            maps: maps.clone(),
        })
    }

    pub fn input(&self) -> usize {
        self.input
    }
    pub fn output(&self) -> usize {
        self.output
    }
    pub fn slot_shape(&self) -> (usize, usize) {
        (self.slot_in, self.slot_out)
    }

    /// Applies the operator with the open slot bound to `m`.
    pub fn apply(&self, m: &SparseMat<F>) -> Result<SparseMat<F>> {
        let d = self.d;
        let f = &self.field;
        let want_rows = (d as u64).pow(self.slot_out as u32) as usize;
        let want_cols = (d as u64).pow(self.slot_in as u32) as usize;
        if m.rows() != want_rows || m.cols() != want_cols {
            return Err(Error::ShapeMismatch(format!(
                "open slot expects {want_rows}x{want_cols}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let mut ctx = EvalCtx {
            maps: &self.maps,
            slot_tables: self.bound_tables.clone(),
            slot_sigs: self.slot_sigs.clone(),
            identity_cols: {
                let one = f.one();
                (0..d as u32).map(|i| vec![(i, one.clone())]).collect()
            },
        };
        ctx.slot_tables[self.open_slot] = Some(column_table(m));
        let slot_step = Step::Apply(Layer {
            left: self.layer_left,
            gen: Gen::Slot(self.open_slot),
            right: self.layer_right,
        });
        let deg_at_slot = self.layer_left + self.slot_in + self.layer_right;
        let n_out = (d as u64).pow(self.output as u32) as usize;
        let cols: Vec<Vec<(u32, F::Elem)>> = self
            .cached
            .par_iter()
            .map(|cache| {
                let state: State<F> = cache.clone();
                let (_, state) = ctx
                    .apply_steps(d, f, deg_at_slot, state, std::slice::from_ref(&slot_step))
                    .expect("validated word");
                let (deg, state) = ctx
                    .apply_steps(
                        d,
                        f,
                        self.layer_left + self.slot_out + self.layer_right,
                        state,
                        &self.tail,
                    )
                    .expect("validated word");
                debug_assert_eq!(deg, self.output);
                state.into_iter().map(|(i, v)| (i as u32, v)).collect()
            })
            .collect();
        SparseMat::from_columns(f.clone(), n_out, cols)
    }
}

/// Low-level word assembler with degree tracking.
pub struct WordBuilder {
    input: usize,
    cur: usize,
    max_degree: usize,
    steps: Vec<Step>,
    slot_sigs: Vec<Option<(usize, usize)>>,
}

impl WordBuilder {
    pub fn new(input: usize) -> WordBuilder {
        WordBuilder { input, cur: input, max_degree: input, steps: Vec::new(), slot_sigs: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.cur
    }

    fn gen_arity(&self, gen: Gen) -> Result<(usize, usize)> {
        Ok(match gen {
            Gen::Mult => (2, 1),
            Gen::Comult => (1, 2),
            Gen::Unit => (0, 1),
            Gen::Counit => (1, 0),
            Gen::Antipode | Gen::AntipodeInv | Gen::Identity => (1, 1),
            Gen::Slot(k) => self
                .slot_sigs
                .get(k)
                .copied()
                .flatten()
                .ok_or(Error::UnboundSlot(k))?,
        })
    }

    pub fn apply(&mut self, left: usize, gen: Gen) -> Result<()> {
        let (din, dout) = self.gen_arity(gen)?;
        if left + din > self.cur {
            return Err(Error::DegreeMismatch(format!(
                "layer at {left} with arity {din} exceeds degree {}",
                self.cur
            )));
        }
        let right = self.cur - left - din;
        self.steps.push(Step::Apply(Layer { left, gen, right }));
        self.cur = left + dout + right;
        self.max_degree = self.max_degree.max(self.cur);
        Ok(())
    }

    /// Registers a slot signature and applies it at `left`.
    pub fn apply_slot(&mut self, left: usize, slot: usize, p: usize, q: usize) -> Result<()> {
        if self.slot_sigs.len() <= slot {
            self.slot_sigs.resize(slot + 1, None);
        }
        match self.slot_sigs[slot] {
            Some(sig) if sig != (p, q) => {
                return Err(Error::DegreeMismatch(format!(
                    "slot {slot} re-registered with different signature"
                )))
            }
            _ => self.slot_sigs[slot] = Some((p, q)),
        }
        self.apply(left, Gen::Slot(slot))
    }

    pub fn perm(&mut self, src: Vec<usize>) -> Result<()> {
        if src.len() != self.cur {
            return Err(Error::DegreeMismatch(format!(
                "permutation of length {} at degree {}",
                src.len(),
                self.cur
            )));
        }
        validate_perm(&src)?;
        // drop identity permutations
        if src.iter().enumerate().any(|(i, &s)| i != s) {
            self.steps.push(Step::Perm(src));
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Word> {
        let mut sigs = Vec::with_capacity(self.slot_sigs.len());
        for (k, s) in self.slot_sigs.iter().enumerate() {
            sigs.push(s.ok_or(Error::UnboundSlot(k))?);
        }
        Ok(Word {
            input: self.input,
            output: self.cur,
            max_degree: self.max_degree,
            steps: self.steps,
            slot_sigs: sigs,
        })
    }
}

/// Position-free word assembly: legs are referred to by opaque tags, and the
/// builder emits the permutations itself. All the long formulas are written
/// against this interface, which eliminates index bookkeeping errors.
pub struct TaggedBuilder {
    wb: WordBuilder,
    legs: Vec<u32>,
    next_tag: u32,
}

impl TaggedBuilder {
    pub fn new(input: usize) -> (TaggedBuilder, Vec<u32>) {
        let legs: Vec<u32> = (0..input as u32).collect();
        let tb = TaggedBuilder { wb: WordBuilder::new(input), legs: legs.clone(), next_tag: input as u32 };
        (tb, legs)
    }

    fn fresh(&mut self) -> u32 {
        let t = self.next_tag;
        self.next_tag += 1;
        t
    }

    fn pos(&self, tag: u32) -> usize {
        self.legs.iter().position(|&t| t == tag).expect("unknown leg tag")
    }

    /// Splits a leg into `pieces` Sweedler legs via the iterated coproduct
    /// (`pieces = 0` applies the counit and removes the leg).
    pub fn split(&mut self, tag: u32, pieces: usize) -> Result<Vec<u32>> {
        let at = self.pos(tag);
        if pieces == 0 {
            self.wb.apply(at, Gen::Counit)?;
            self.legs.remove(at);
            return Ok(Vec::new());
        }
        if pieces == 1 {
            return Ok(vec![tag]);
        }
        for _ in 0..pieces - 1 {
            self.wb.apply(at, Gen::Comult)?;
        }
        let new: Vec<u32> = (0..pieces).map(|_| self.fresh()).collect();
        self.legs.splice(at..at + 1, new.iter().copied());
        Ok(new)
    }

    pub fn counit(&mut self, tag: u32) -> Result<()> {
        let at = self.pos(tag);
        self.wb.apply(at, Gen::Counit)?;
        self.legs.remove(at);
        Ok(())
    }

    /// Appends a unit leg (η(1)) at the end.
    pub fn unit_leg(&mut self) -> Result<u32> {
        self.wb.apply(self.legs.len(), Gen::Unit)?;
        let t = self.fresh();
        self.legs.push(t);
        Ok(t)
    }

    pub fn map_leg(&mut self, tag: u32, gen: Gen) -> Result<()> {
        let at = self.pos(tag);
        self.wb.apply(at, gen)
    }

    fn emit_order(&mut self, order: &[u32]) -> Result<()> {
        debug_assert_eq!(order.len(), self.legs.len());
        let src: Vec<usize> = order.iter().map(|&t| self.pos(t)).collect();
        self.wb.perm(src)?;
        self.legs = order.to_vec();
        Ok(())
    }

    /// Multiplies two legs, `left * right`, returning the product leg.
    pub fn merge(&mut self, left: u32, right: u32) -> Result<u32> {
        // bring `right` directly after `left`, keeping everything else in order
        let mut order: Vec<u32> = Vec::with_capacity(self.legs.len());
        for &t in &self.legs {
            if t == right {
                continue;
            }
            order.push(t);
            if t == left {
                order.push(right);
            }
        }
        self.emit_order(&order)?;
        let at = self.pos(left);
        self.wb.apply(at, Gen::Mult)?;
        let prod = self.fresh();
        self.legs.splice(at..at + 2, [prod]);
        Ok(prod)
    }

    /// Left-associated product of the given legs; the empty product is a
    /// unit leg.
    pub fn chain(&mut self, tags: &[u32]) -> Result<u32> {
        match tags.split_first() {
            None => self.unit_leg(),
            Some((&first, rest)) => {
                let mut acc = first;
                for &t in rest {
                    acc = self.merge(acc, t)?;
                }
                Ok(acc)
            }
        }
    }

    /// Applies cochain slot `slot` to the listed legs (gathered in order at
    /// the front), returning the output legs.
    pub fn slot(&mut self, slot: usize, p: usize, q: usize, args: &[u32]) -> Result<Vec<u32>> {
        debug_assert_eq!(args.len(), p);
        let mut order: Vec<u32> = args.to_vec();
        for &t in &self.legs {
            if !args.contains(&t) {
                order.push(t);
            }
        }
        self.emit_order(&order)?;
        self.wb.apply_slot(0, slot, p, q)?;
        let out: Vec<u32> = (0..q).map(|_| self.fresh()).collect();
        self.legs.splice(0..p, out.iter().copied());
        Ok(out)
    }

    /// Left diagonal action `elem ⊳ targets`: splits `elem` into one piece
    /// per target and multiplies from the left. No targets means acting on
    /// the base field, i.e. the counit.
    pub fn left_action(&mut self, elem: u32, targets: &[u32]) -> Result<Vec<u32>> {
        if targets.is_empty() {
            self.counit(elem)?;
            return Ok(Vec::new());
        }
        let pieces = self.split(elem, targets.len())?;
        let mut out = Vec::with_capacity(targets.len());
        for (u, &x) in pieces.into_iter().zip(targets) {
            out.push(self.merge(u, x)?);
        }
        Ok(out)
    }

    /// Right diagonal action `targets ◁ elem`.
    pub fn right_action(&mut self, targets: &[u32], elem: u32) -> Result<Vec<u32>> {
        if targets.is_empty() {
            self.counit(elem)?;
            return Ok(Vec::new());
        }
        let pieces = self.split(elem, targets.len())?;
        let mut out = Vec::with_capacity(targets.len());
        for (&x, u) in targets.iter().zip(pieces) {
            out.push(self.merge(x, u)?);
        }
        Ok(out)
    }

    /// Factorwise product `[a_1 ⊗ … ⊗ a_k][b_1 ⊗ … ⊗ b_k]`.
    pub fn factorwise(&mut self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        debug_assert_eq!(a.len(), b.len());
        let mut out = Vec::with_capacity(a.len());
        for (&x, &y) in a.iter().zip(b) {
            out.push(self.merge(x, y)?);
        }
        Ok(out)
    }

    /// Emits the final arrangement and closes the word.
    pub fn finish(mut self, order: &[u32]) -> Result<Word> {
        self.emit_order(order)?;
        self.wb.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn lin_digits_roundtrip() {
        for idx in 0..81u64 {
            assert_eq!(lin(3, &digits(3, 4, idx)), idx);
        }
        assert_eq!(lin(2, &[1, 0]), 2); // leftmost most significant
    }

    #[test]
    fn perm_matrix_swap_and_composition() {
        let swap = perm_matrix(&q(), 2, &[1, 0]).unwrap();
        // index (0,1) = 1 maps to (1,0) = 2
        assert!(q().is_one(&swap.get(2, 1)));
        let id = perm_matrix(&q(), 2, &[0, 1]).unwrap();
        assert_eq!(id, SparseMat::identity(q(), 4));
        assert_eq!(swap.matmul(&swap).unwrap(), SparseMat::identity(q(), 4));
        // three-cycle composition: applying src1 then src2 composes as src1 ∘ src2
        let c3 = perm_matrix(&q(), 2, &[1, 2, 0]).unwrap();
        let c3c3 = perm_matrix(&q(), 2, &[2, 0, 1]).unwrap();
        assert_eq!(c3.matmul(&c3).unwrap(), c3c3);
    }

    proptest::proptest! {
        #[test]
        fn perm_matrices_compose(src1 in proptest::sample::subsequence(vec![0usize,1,2], 3),
                                 seed in 0u64..24) {
            let _ = src1;
            // enumerate two permutations of {0,1,2} from the seed
            let perms: Vec<Vec<usize>> = vec![
                vec![0,1,2], vec![0,2,1], vec![1,0,2], vec![1,2,0], vec![2,0,1], vec![2,1,0],
            ];
            let a = &perms[(seed % 6) as usize];
            let b = &perms[((seed / 6) % 6) as usize];
            let ma = perm_matrix(&q(), 2, a).unwrap();
            let mb = perm_matrix(&q(), 2, b).unwrap();
            // gather semantics: applying `a` then `b` gathers by a ∘ b
            let ab: Vec<usize> = (0..3).map(|j| a[b[j]]).collect();
            let mab = perm_matrix(&q(), 2, &ab).unwrap();
            proptest::prop_assert_eq!(mb.matmul(&ma).unwrap(), mab);
        }
    }
}
