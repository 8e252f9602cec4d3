//! The operad-with-multiplication structure on diagonal cochains: partial
//! compositions, the distinguished elements μ, 𝟙, e, cup product, brace and
//! Gerstenhaber bracket, plus exhaustive axiom verifiers.
//!
//! The composition word interleaves the Sweedler splittings with the chain
//! multiplications they feed (one input leg at a time), so the sparse states
//! collapse as early as possible; the factor schedule is:
//!   legs u^1 … u^{i-1}: untouched, they become the leading arguments of f;
//!   legs u^i … u^{p+q-1}: split into i+2 pieces each, routed as
//!     piece 1..i-1  -> running chains c_k (the bystander factors),
//!     piece i       -> argument of g (inner legs) or its right action chain,
//!     piece i+1     -> the S^{-1}-twisted left action chain,
//!     piece i+2     -> the merged middle argument of f (inner legs) or its
//!                      trailing arguments;
//! then g, its right action, f, the coproduct fan-out of f's i-th output,
//! the left action block and the factorwise product.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::cochain::{random_cochain, Cochain, CochainMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gs::{codeg_diag, coface_diag, delta_diag};
use crate::hopf::HopfAlgebra;
use crate::report::{Clause, VerificationReport};
use crate::word::{compile, Gen, TaggedBuilder, Word};

/// The multiplication element μ(u, v) = Δ(uv).
pub fn mu_element<F: Field>(h: &HopfAlgebra<F>) -> Result<Cochain<F>> {
    Cochain::new(h.dim, 2, 2, h.comult.matmul(&h.mult)?)
}

/// The operadic identity 𝟙 = id_H.
pub fn identity_element<F: Field>(h: &HopfAlgebra<F>) -> Cochain<F> {
    Cochain::identity(h.field().clone(), h.dim, 1)
}

/// The operadic unit e = 1 ∈ Hom(K, K).
pub fn unit_element<F: Field>(h: &HopfAlgebra<F>) -> Cochain<F> {
    Cochain::identity(h.field().clone(), h.dim, 0)
}

/// Word of the partial composition for inner arity q ≥ 1.
fn circ_word(p: usize, i: usize, q: usize, f_slot: usize, g_slot: usize) -> Result<Word> {
    debug_assert!(q >= 1 && i >= 1 && i <= p);
    let n = p + q - 1;
    let (mut tb, legs) = TaggedBuilder::new(n);
    let prefix: Vec<u32> = legs[..i - 1].to_vec();
    let mut c_chains: Vec<Option<u32>> = vec![None; i - 1];
    let mut g_args = Vec::new();
    let mut r_chain: Option<u32> = None;
    let mut s_chain: Option<u32> = None;
    let mut f_merge: Option<u32> = None;
    let mut f_tail = Vec::new();
    fn grow(tb: &mut TaggedBuilder, acc: Option<u32>, piece: u32) -> Result<Option<u32>> {
        Ok(Some(match acc {
            None => piece,
            Some(a) => tb.merge(a, piece)?,
        }))
    }
    for t in i..=n {
        let pieces = tb.split(legs[t - 1], i + 2)?;
        for k in 1..i {
            c_chains[k - 1] = grow(&mut tb, c_chains[k - 1], pieces[k - 1])?;
        }
        if t <= i + q - 1 {
            g_args.push(pieces[i - 1]);
        } else {
            r_chain = grow(&mut tb, r_chain, pieces[i - 1])?;
        }
        s_chain = grow(&mut tb, s_chain, pieces[i])?;
        if t <= i + q - 1 {
            f_merge = grow(&mut tb, f_merge, pieces[i + 1])?;
        } else {
            f_tail.push(pieces[i + 1]);
        }
    }
    let s = s_chain.expect("at least one processed leg");
    tb.map_leg(s, Gen::AntipodeInv)?;
    let g_out = tb.slot(g_slot, q, q, &g_args)?;
    let g_acted = match r_chain {
        Some(r) => tb.right_action(&g_out, r)?,
        None => g_out,
    };
    let mut f_args = prefix;
    f_args.push(f_merge.expect("q >= 1"));
    f_args.extend(f_tail);
    let f_out = tb.slot(f_slot, p, p, &f_args)?;
    let mid = tb.split(f_out[i - 1], q)?;
    let mut block_a: Vec<u32> = f_out[..i - 1].to_vec();
    block_a.extend(mid);
    block_a.extend_from_slice(&f_out[i..]);
    // the action covers the bystander chains and the g block; the trailing
    // unit legs sit outside it
    let mut b_targets: Vec<u32> = c_chains.into_iter().map(|c| c.expect("filled")).collect();
    b_targets.extend(g_acted);
    let mut block_b = tb.left_action(s, &b_targets)?;
    for _ in 0..p - i {
        block_b.push(tb.unit_leg()?);
    }
    let out = tb.factorwise(&block_a, &block_b)?;
    tb.finish(&out)
}

/// Word of the degree-zero rule: g ∈ Hom(K, K) enters as η(g), and the
/// counit removes f's i-th output component.
fn circ_word_q0(p: usize, i: usize, f_slot: usize, g_slot: usize) -> Result<Word> {
    debug_assert!(i >= 1 && i <= p && p >= 1);
    let (mut tb, legs) = TaggedBuilder::new(p - 1);
    let scalar = tb.slot(g_slot, 0, 0, &[])?;
    debug_assert!(scalar.is_empty());
    let unit = tb.unit_leg()?;
    let mut args: Vec<u32> = legs[..i - 1].to_vec();
    args.push(unit);
    args.extend_from_slice(&legs[i - 1..]);
    let f_out = tb.slot(f_slot, p, p, &args)?;
    tb.counit(f_out[i - 1])?;
    let out: Vec<u32> = f_out
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i - 1)
        .map(|(_, &t)| t)
        .collect();
    tb.finish(&out)
}

/// Partial operadic composition f ∘_i g (1-based slot index).
pub fn circ<F: Field>(
    h: &HopfAlgebra<F>,
    f: &Cochain<F>,
    i: usize,
    g: &Cochain<F>,
) -> Result<Cochain<F>> {
    let p = f.arity()?;
    let q = g.arity()?;
    if i < 1 {
        return Err(Error::ArityError("composition slots are 1-based".into()));
    }
    if p + q == 0 {
        return Err(Error::ArityError("composition of two arity-0 elements".into()));
    }
    if p == 0 || i > p {
        return Ok(Cochain::zero(h.field().clone(), h.dim, p + q - 1, p + q - 1));
    }
    let word = if q == 0 {
        circ_word_q0(p, i, 0, 1)?
    } else {
        circ_word(p, i, q, 0, 1)?
    };
    let mat = compile(&word, h.maps(), &[(0, &f.mat), (1, &g.mat)])?;
    Cochain::new(h.dim, p + q - 1, p + q - 1, mat)
}

/// The composition as a linear operator in the inner element: f and the
/// slot are fixed, the argument is g of arity `q`.
pub fn circ_map_fixed_outer<F: Field>(
    h: &HopfAlgebra<F>,
    f: &Cochain<F>,
    i: usize,
    q: usize,
) -> Result<CochainMap<F>> {
    let p = f.arity()?;
    if i < 1 || i > p {
        return Err(Error::ArityError(format!("slot {i} outside 1..={p}")));
    }
    let word = if q == 0 {
        circ_word_q0(p, i, 1, 0)?
    } else {
        circ_word(p, i, q, 1, 0)?
    };
    CochainMap::from_word(h, word, vec![f.mat.clone()])
}

/// The composition as a linear operator in the outer element: g is fixed,
/// the argument is f of arity `p`.
pub fn circ_map_fixed_inner<F: Field>(
    h: &HopfAlgebra<F>,
    p: usize,
    i: usize,
    g: &Cochain<F>,
) -> Result<CochainMap<F>> {
    let q = g.arity()?;
    if i < 1 || i > p {
        return Err(Error::ArityError(format!("slot {i} outside 1..={p}")));
    }
    let word = if q == 0 {
        circ_word_q0(p, i, 0, 1)?
    } else {
        circ_word(p, i, q, 0, 1)?
    };
    CochainMap::from_word(h, word, vec![g.mat.clone()])
}

/// Cup product f ⌣ g = (μ ∘₂ g) ∘₁ f, computed operadically and through
/// the closed form
/// `f(u^1_(1), …) ◁ (u^{p+1}_(1) ⋯) ⊗ (u^1_(2) ⋯) ⊳ g(u^{p+1}_(2), …)`;
/// the two routes must agree, a mismatch signals an implementation bug.
pub fn cup<F: Field>(
    h: &HopfAlgebra<F>,
    f: &Cochain<F>,
    g: &Cochain<F>,
) -> Result<Cochain<F>> {
    let p = f.arity()?;
    let q = g.arity()?;
    let mu = mu_element(h)?;
    let operadic = circ(h, &circ(h, &mu, 2, g)?, 1, f)?;
    // closed form
    let (mut tb, legs) = TaggedBuilder::new(p + q);
    let mut firsts = Vec::with_capacity(p + q);
    let mut seconds = Vec::with_capacity(p + q);
    for &leg in &legs {
        let pieces = tb.split(leg, 2)?;
        firsts.push(pieces[0]);
        seconds.push(pieces[1]);
    }
    let f_out = tb.slot(0, p, p, &firsts[..p])?;
    let rc = tb.chain(&firsts[p..])?;
    let f_part = tb.right_action(&f_out, rc)?;
    let lc = tb.chain(&seconds[..p])?;
    let g_out = tb.slot(1, q, q, &seconds[p..])?;
    let g_part = tb.left_action(lc, &g_out)?;
    let mut out = f_part;
    out.extend(g_part);
    let word = tb.finish(&out)?;
    let closed = Cochain::new(
        h.dim,
        p + q,
        p + q,
        compile(&word, h.maps(), &[(0, &f.mat), (1, &g.mat)])?,
    )?;
    if closed != operadic {
        return Err(Error::CrossCheckFailure(format!(
            "cup product routes disagree at arities ({p}, {q})"
        )));
    }
    Ok(operadic)
}

/// Brace f{g} = Σ_{i=1}^p (−1)^{(q−1)(i−1)} f ∘_i g.
pub fn brace<F: Field>(
    h: &HopfAlgebra<F>,
    f: &Cochain<F>,
    g: &Cochain<F>,
) -> Result<Cochain<F>> {
    let p = f.arity()?;
    let q = g.arity()?;
    if p + q == 0 {
        return Err(Error::ArityError("brace of two arity-0 elements".into()));
    }
    let mut acc = Cochain::zero(h.field().clone(), h.dim, p + q - 1, p + q - 1);
    for i in 1..=p {
        let exp = (q as i64 - 1) * (i as i64 - 1);
        let sign = h.field().from_i64(if exp % 2 == 0 { 1 } else { -1 });
        acc = acc.add(&circ(h, f, i, g)?.scale(&sign))?;
    }
    Ok(acc)
}

/// Gerstenhaber bracket {f, g} = f{g} − (−1)^{(p−1)(q−1)} g{f}.
pub fn bracket<F: Field>(
    h: &HopfAlgebra<F>,
    f: &Cochain<F>,
    g: &Cochain<F>,
) -> Result<Cochain<F>> {
    let p = f.arity()? as i64;
    let q = g.arity()? as i64;
    let sign = h.field().from_i64(if ((p - 1) * (q - 1)) % 2 == 0 { -1 } else { 1 });
    brace(h, f, g)?.add(&brace(h, g, f)?.scale(&sign))
}

fn clause_eq<F: Field>(lhs: &Cochain<F>, rhs: &Cochain<F>, label: &str) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(label.to_string())
    }
}

/// Random (seeded) verification of the partial-composition associativity
/// relations, the zero rules, the unit laws and the multiplication laws.
pub fn check_operad_axioms<F: Field>(
    h: &HopfAlgebra<F>,
    arity_cap: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("operad", h.name.clone(), seed, trials);
    let f_ctx = h.field().clone();
    let d = h.dim;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // associativity in its three slot configurations
    let mut witness: Option<String> = None;
    let mut cases: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    if arity_cap >= 3 {
        // the fixed low-degree regression instance
        cases.push((2, 3, 1, 2, 3));
    }
    for _ in 0..trials {
        let p = rng.gen_range(1..=arity_cap);
        let q = rng.gen_range(0..=arity_cap);
        let r = rng.gen_range(0..=arity_cap);
        if p + q < 2 || p + q + r < 3 {
            continue;
        }
        let i = rng.gen_range(1..=p);
        let j = rng.gen_range(1..=p + q - 1);
        cases.push((p, q, r, i, j));
    }
    for (p, q, r, i, j) in cases {
        if witness.is_some() {
            break;
        }
        let f = random_cochain(&f_ctx, d, p, p, &mut rng);
        let g = random_cochain(&f_ctx, d, q, q, &mut rng);
        let x = random_cochain(&f_ctx, d, r, r, &mut rng);
        let fg = circ(h, &f, i, &g)?;
        let lhs = circ(h, &fg, j, &x)?;
        let rhs = if j < i {
            circ(h, &circ(h, &f, j, &x)?, i + r - 1, &g)?
        } else if j < q + i {
            circ(h, &f, i, &circ(h, &g, j - i + 1, &x)?)?
        } else {
            circ(h, &circ(h, &f, j - q + 1, &x)?, i, &g)?
        };
        witness = clause_eq(&lhs, &rhs, &format!("(p,q,r,i,j)=({p},{q},{r},{i},{j})"));
    }
    report.push(Clause::from_witness(
        "composition associativity",
        "(f o_i g) o_j x = case(j<i | i<=j<q+i | j>=q+i)",
        witness,
    ));

    // zero rules: f o_i g = 0 for i > p, and for arity-0 outer f
    let mut witness = None;
    for _ in 0..trials.min(10) {
        let p = rng.gen_range(1..=arity_cap);
        let q = rng.gen_range(1..=arity_cap);
        let f = random_cochain(&f_ctx, d, p, p, &mut rng);
        let g = random_cochain(&f_ctx, d, q, q, &mut rng);
        if !circ(h, &f, p + 1, &g)?.is_zero() {
            witness = Some(format!("f o_{} g != 0 at p = {p}", p + 1));
            break;
        }
        let scalar = random_cochain(&f_ctx, d, 0, 0, &mut rng);
        if !circ(h, &scalar, 1, &g)?.is_zero() {
            witness = Some("arity-0 outer composition is nonzero".into());
            break;
        }
    }
    report.push(Clause::from_witness(
        "zero compositions",
        "f o_i g = 0 if i > p or p = 0",
        witness,
    ));

    // unit laws
    let one = identity_element(h);
    let mut witness = None;
    for _ in 0..trials.min(10) {
        let p = rng.gen_range(1..=arity_cap.min(3));
        let f = random_cochain(&f_ctx, d, p, p, &mut rng);
        if circ(h, &one, 1, &f)? != f {
            witness = Some(format!("1 o_1 f != f at arity {p}"));
            break;
        }
        let i = rng.gen_range(1..=p);
        if circ(h, &f, i, &one)? != f {
            witness = Some(format!("f o_{i} 1 != f at arity {p}"));
            break;
        }
    }
    report.push(Clause::from_witness("operad unit", "1 o_1 f = f = f o_i 1", witness));

    // multiplication element laws
    let mu = mu_element(h)?;
    let e = unit_element(h);
    let mut witness = None;
    let m1 = circ(h, &mu, 1, &mu)?;
    let m2 = circ(h, &mu, 2, &mu)?;
    if m1 != m2 {
        witness = Some("mu o_1 mu != mu o_2 mu".into());
    }
    if witness.is_none() && (circ(h, &mu, 1, &e)? != one || circ(h, &mu, 2, &e)? != one) {
        witness = Some("mu o_i e != 1".into());
    }
    report.push(Clause::from_witness(
        "multiplication element",
        "mu o_1 mu = mu o_2 mu; mu o_1 e = mu o_2 e = 1",
        witness,
    ));

    Ok(report)
}

/// Exhaustive check that the operadic cofaces/codegeneracies reproduce the
/// diagonal ones and that δf = (−1)^{p+1}{μ, f} holds as an operator
/// identity, for every arity ≤ `n_cap`; all comparisons run on
/// materialized matrices.
pub fn check_diff_identity<F: Field>(
    h: &HopfAlgebra<F>,
    n_cap: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("diff-identity", h.name.clone(), 0, 0);
    let mu = mu_element(h)?;
    let e = unit_element(h);
    let witness_of =
        |d: crate::sparse::SparseMat<F>| d.entries().first().map(|(r, c, _)| format!("entry ({r}, {c})"));

    // operadic coface matrices per arity
    let mut op_cofaces: Vec<Vec<crate::sparse::SparseMat<F>>> = Vec::new();
    for p in 0..=n_cap {
        let mut per = Vec::new();
        for i in 0..=p + 1 {
            let m = if i == 0 {
                circ_map_fixed_outer(h, &mu, 2, p)?
            } else if i <= p {
                circ_map_fixed_inner(h, p, i, &mu)?
            } else {
                circ_map_fixed_outer(h, &mu, 1, p)?
            };
            per.push(m.to_matrix()?);
        }
        op_cofaces.push(per);
    }

    // cofaces: δ_0 f = μ∘₂f, δ_i f = f∘_i μ (1 ≤ i ≤ p), δ_{p+1} f = μ∘₁f
    let mut witness = None;
    'cofaces: for p in 0..=n_cap {
        for i in 0..=p + 1 {
            let simplicial = coface_diag(h, i, p)?.to_matrix()?;
            if let Some(w) = witness_of(op_cofaces[p][i].sub(&simplicial)?) {
                witness = Some(format!("coface {i} at arity {p}, {w}"));
                break 'cofaces;
            }
        }
    }
    report.push(Clause::from_witness(
        "operadic cofaces",
        "d_0 f = mu o_2 f; d_i f = f o_i mu; d_{p+1} f = mu o_1 f",
        witness,
    ));

    // codegeneracies: σ_j f = f ∘_{j+1} e
    let mut witness = None;
    'codegs: for p in 1..=n_cap {
        for j in 0..=p - 1 {
            let operadic = circ_map_fixed_inner(h, p, j + 1, &e)?.to_matrix()?;
            let simplicial = codeg_diag(h, j, p)?.to_matrix()?;
            if let Some(w) = witness_of(operadic.sub(&simplicial)?) {
                witness = Some(format!("codegeneracy {j} at arity {p}, {w}"));
                break 'codegs;
            }
        }
    }
    report.push(Clause::from_witness(
        "operadic codegeneracies",
        "s_j f = f o_{j+1} e",
        witness,
    ));

    // δf = (−1)^{p+1} {μ, f}: as matrices,
    // {μ, f} = μ∘₁f + (−1)^{p−1} μ∘₂f − (−1)^{p−1} Σ_i (−1)^{i−1} f∘ᵢμ
    let mut witness = None;
    for p in 0..=n_cap {
        let sgn = |k: i64| k.rem_euclid(2) == 0;
        let mut rhs = op_cofaces[p][p + 1].clone(); // μ∘₁f
        {
            let m = &op_cofaces[p][0]; // μ∘₂f
            let t = if sgn(p as i64 - 1) { m.clone() } else { m.neg() };
            rhs = rhs.add(&t)?;
        }
        for i in 1..=p {
            // −(−1)^{(p−1)} (−1)^{(i−1)} f∘ᵢμ
            let m = &op_cofaces[p][i];
            let t = if sgn((p as i64 - 1) + (i as i64 - 1)) { m.neg() } else { m.clone() };
            rhs = rhs.add(&t)?;
        }
        if !sgn(p as i64 + 1) {
            rhs = rhs.neg();
        }
        let lhs = delta_diag(h, p)?.to_matrix()?;
        if let Some(w) = witness_of(lhs.sub(&rhs)?) {
            witness = Some(format!("arity {p}, {w}"));
            break;
        }
    }
    report.push(Clause::from_witness(
        "differential identity",
        "delta f = (-1)^{p+1} {mu, f}",
        witness,
    ));

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::hopf::{group_algebra, sweedler_h4, GroupTable};

    fn q() -> Rationals {
        Rationals
    }

    fn kc2() -> crate::QHopf {
        group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap()
    }

    #[test]
    fn identity_composed_with_identity_is_identity() {
        // (f∘₁g)(u) = f(u_(3)) S⁻¹(u_(2)) g(u_(1)) collapses to u for f = g = id
        for h in [kc2(), sweedler_h4(q()).unwrap()] {
            let one = identity_element(&h);
            let out = circ(&h, &one, 1, &one).unwrap();
            assert_eq!(out, one, "on {}", h.name);
        }
    }

    #[test]
    fn mu_laws_on_kc2_and_h4() {
        for h in [kc2(), sweedler_h4(q()).unwrap()] {
            let mu = mu_element(&h).unwrap();
            let e = unit_element(&h);
            let one = identity_element(&h);
            assert_eq!(circ(&h, &mu, 1, &e).unwrap(), one);
            assert_eq!(circ(&h, &mu, 2, &e).unwrap(), one);
            let m1 = circ(&h, &mu, 1, &mu).unwrap();
            let m2 = circ(&h, &mu, 2, &mu).unwrap();
            assert_eq!(m1, m2);
            // μ∘₁μ = Δ²∘m²: u⊗v⊗w ↦ Δ²(uvw)
            let expected = h
                .iterated_coproduct(2)
                .unwrap()
                .matmul(&h.iterated_product(2).unwrap())
                .unwrap();
            assert_eq!(m1.mat, expected);
        }
    }

    #[test]
    fn cup_of_identities_is_mu() {
        for h in [kc2(), sweedler_h4(q()).unwrap()] {
            let one = identity_element(&h);
            let c = cup(&h, &one, &one).unwrap();
            assert_eq!(c, mu_element(&h).unwrap());
        }
    }

    #[test]
    fn cup_unit_law() {
        use rand::SeedableRng;
        let h = sweedler_h4(q()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = random_cochain(&q(), 4, 2, 2, &mut rng);
        let e = unit_element(&h);
        assert_eq!(cup(&h, &f, &e).unwrap(), f);
        assert_eq!(cup(&h, &e, &f).unwrap(), f);
    }

    #[test]
    fn brace_signs_mu_of_identity() {
        // μ{𝟙}: q = 1 so both signs are +, giving μ∘₁𝟙 + μ∘₂𝟙 = 2μ
        let h = kc2();
        let mu = mu_element(&h).unwrap();
        let one = identity_element(&h);
        let b = brace(&h, &mu, &one).unwrap();
        assert_eq!(b, mu.scale(&q().from_i64(2)));
        // 𝟙{f} = f
        let b2 = brace(&h, &one, &mu).unwrap();
        assert_eq!(b2, mu);
    }

    #[test]
    fn brace_with_unit_reproduces_degeneracy_sum() {
        // f{e} = Σ_j (−1)^j σ_j f (signs (q−1)(i−1) with q = 0: (−1)^{i−1})
        use rand::SeedableRng;
        let h = kc2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = random_cochain(&q(), 2, 2, 2, &mut rng);
        let e = unit_element(&h);
        let lhs = brace(&h, &f, &e).unwrap();
        let mut rhs = Cochain::zero(q(), 2, 1, 1);
        for j in 0..=1usize {
            let sign = q().from_i64(if j % 2 == 0 { 1 } else { -1 });
            rhs = rhs
                .add(&codeg_diag(&h, j, 2).unwrap().apply(&f).unwrap().scale(&sign))
                .unwrap();
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_graded_antisymmetric_and_mu_selfbracket_vanishes() {
        use rand::SeedableRng;
        for h in [kc2(), sweedler_h4(q()).unwrap()] {
            let mu = mu_element(&h).unwrap();
            assert!(bracket(&h, &mu, &mu).unwrap().is_zero(), "{{mu,mu}} on {}", h.name);
            let one = identity_element(&h);
            assert!(bracket(&h, &one, &one).unwrap().is_zero());
            let d = h.dim;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
            let f = random_cochain(h.field(), d, 1, 1, &mut rng);
            let g = random_cochain(h.field(), d, 2, 2, &mut rng);
            let fg = bracket(&h, &f, &g).unwrap();
            let gf = bracket(&h, &g, &f).unwrap();
            // {f,g} = −(−1)^{(p−1)(q−1)}{g,f}; here (p−1)(q−1) = 0
            assert_eq!(fg, gf.scale(&q().from_i64(-1)));
        }
    }

    #[test]
    fn fixed_outer_and_inner_operators_match_direct_composition() {
        use rand::SeedableRng;
        let h = sweedler_h4(q()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let f = random_cochain(&q(), 4, 2, 2, &mut rng);
        let g = random_cochain(&q(), 4, 1, 1, &mut rng);
        for i in 1..=2usize {
            let direct = circ(&h, &f, i, &g).unwrap();
            let via_outer = circ_map_fixed_outer(&h, &f, i, 1).unwrap().apply(&g).unwrap();
            let via_inner = circ_map_fixed_inner(&h, 2, i, &g).unwrap().apply(&f).unwrap();
            assert_eq!(direct, via_outer);
            assert_eq!(direct, via_inner);
        }
        // and the q = 0 route
        let e = unit_element(&h);
        let direct = circ(&h, &f, 2, &e).unwrap();
        let via_outer = circ_map_fixed_outer(&h, &f, 2, 0).unwrap().apply(&e).unwrap();
        let via_inner = circ_map_fixed_inner(&h, 2, 2, &e).unwrap().apply(&f).unwrap();
        assert_eq!(direct, via_outer);
        assert_eq!(direct, via_inner);
    }

    #[test]
    fn operad_axioms_pass_on_kc2() {
        let h = kc2();
        let report = check_operad_axioms(&h, 3, 12, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn diff_identity_on_kc2() {
        let h = kc2();
        let report = check_diff_identity(&h, 2).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
