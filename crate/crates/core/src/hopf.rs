//! Hopf algebra data given by structure constants, with exhaustive axiom
//! validation, derived structure (inverse antipode, flags) and the built-in
//! example constructors used as test fixtures.

use serde::{Deserialize, Serialize};

use crate::elim::ColumnSolver;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::sparse::SparseMat;
use crate::word::{perm_matrix, HopfMaps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfFlags {
    pub involutive: bool,
    pub cocommutative: bool,
    pub commutative: bool,
}

#[derive(Debug, Clone)]
pub struct HopfAlgebra<F: Field> {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    /// m: H ⊗ H → H, a d x d² matrix.
    pub mult: SparseMat<F>,
    /// Δ: H → H ⊗ H, a d² x d matrix.
    pub comult: SparseMat<F>,
    /// η: K → H, a d x 1 column.
    pub unit: SparseMat<F>,
    /// ε: H → K, a 1 x d row.
    pub counit: SparseMat<F>,
    /// S: H → H.
    pub antipode: SparseMat<F>,
    /// S⁻¹, the matrix inverse of S.
    pub antipode_inv: SparseMat<F>,
    pub flags: HopfFlags,
    field: F,
    maps: HopfMaps<F>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
    pub flags: HopfFlags,
    /// Smallest k ≥ 1 with S^k = id, if one exists below the search cap.
    pub antipode_order: Option<usize>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn first_diff<F: Field>(a: &SparseMat<F>, b: &SparseMat<F>) -> Option<(u32, u32)> {
    let diff = a.sub(b).ok()?;
    diff.entries().first().map(|(r, c, _)| (*r, *c))
}

impl<F: Field> HopfAlgebra<F> {
    /// Builds the algebra, derives S⁻¹ and the flags, and runs the full
    /// axiom validation; any failed axiom is fatal here.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        field: F,
        dim: usize,
        basis: Vec<String>,
        mult: SparseMat<F>,
        comult: SparseMat<F>,
        unit: SparseMat<F>,
        counit: SparseMat<F>,
        antipode: SparseMat<F>,
    ) -> Result<HopfAlgebra<F>> {
        let h = Self::new_unvalidated(name, field, dim, basis, mult, comult, unit, counit, antipode)?;
        let report = h.validate();
        if let Some(bad) = report.checks.iter().find(|c| !c.pass) {
            return Err(Error::AxiomViolation(format!(
                "{}{}",
                bad.name,
                bad.witness
                    .as_ref()
                    .map(|w| format!(" (witness {w})"))
                    .unwrap_or_default()
            )));
        }
        Ok(h)
    }

    /// Same construction without the axiom gate (used to produce negative
    /// controls and to report all failures of a bad input at once).
    #[allow(clippy::too_many_arguments)]
    pub fn new_unvalidated(
        name: impl Into<String>,
        field: F,
        dim: usize,
        basis: Vec<String>,
        mult: SparseMat<F>,
        comult: SparseMat<F>,
        unit: SparseMat<F>,
        counit: SparseMat<F>,
        antipode: SparseMat<F>,
    ) -> Result<HopfAlgebra<F>> {
        let d = dim;
        if basis.len() != d {
            return Err(Error::ShapeMismatch(format!(
                "{} basis labels for dimension {d}",
                basis.len()
            )));
        }
        let shapes = [
            ("mult", &mult, d, d * d),
            ("comult", &comult, d * d, d),
            ("unit", &unit, d, 1),
            ("counit", &counit, 1, d),
            ("antipode", &antipode, d, d),
        ];
        for (what, m, r, c) in shapes {
            if m.rows() != r || m.cols() != c {
                return Err(Error::ShapeMismatch(format!(
                    "{what} must be {r}x{c}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            field.check_same(m.field())?;
        }
        // S⁻¹ as the matrix inverse of S
        let solver = ColumnSolver::new(&antipode);
        if solver.rank() != d {
            return Err(Error::AxiomViolation("antipode is not invertible".into()));
        }
        let mut inv_cols = Vec::with_capacity(d);
        for j in 0..d as u32 {
            let e = vec![(j, field.one())];
            inv_cols.push(solver.solve(&e).expect("full-rank antipode"));
        }
        let antipode_inv = SparseMat::from_columns(field.clone(), d, inv_cols)?;

        let swap = perm_matrix(&field, d, &[1, 0])?;
        let involutive = antipode.matmul(&antipode)? == SparseMat::identity(field.clone(), d);
        let cocommutative = swap.matmul(&comult)? == comult;
        let commutative = mult.matmul(&swap)? == mult;
        let maps = HopfMaps::new(d, field.clone(), &mult, &comult, &unit, &counit, &antipode, &antipode_inv);
        Ok(HopfAlgebra {
            name: name.into(),
            dim,
            basis,
            mult,
            comult,
            unit,
            counit,
            antipode,
            antipode_inv,
            flags: HopfFlags { involutive, cocommutative, commutative },
            field,
            maps,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn maps(&self) -> &HopfMaps<F> {
        &self.maps
    }

    pub fn identity_mat(&self) -> SparseMat<F> {
        SparseMat::identity(self.field.clone(), self.dim)
    }

    /// Iterated coproduct Δ^k: H → H^{⊗(k+1)}, with Δ^{-1} = ε, Δ^0 = id and
    /// Δ^k = (Δ ⊗ id^{k-1}) ∘ Δ^{k-1}.
    pub fn iterated_coproduct(&self, k: i64) -> Result<SparseMat<F>> {
        if k < -1 {
            return Err(Error::IndexOutOfRange(format!("iterated coproduct at {k}")));
        }
        if k == -1 {
            return Ok(self.counit.clone());
        }
        let mut acc = self.identity_mat();
        for step in 0..k {
            let pad = SparseMat::identity(self.field.clone(), self.dim.pow(step as u32));
            acc = self.comult.kron(&pad)?.matmul(&acc)?;
        }
        Ok(acc)
    }

    /// Iterated product m^k: H^{⊗(k+1)} → H, with m^{-1} = η, m^0 = id.
    pub fn iterated_product(&self, k: i64) -> Result<SparseMat<F>> {
        if k < -1 {
            return Err(Error::IndexOutOfRange(format!("iterated product at {k}")));
        }
        if k == -1 {
            return Ok(self.unit.clone());
        }
        let mut acc = self.identity_mat();
        for step in 0..k {
            let pad = SparseMat::identity(self.field.clone(), self.dim.pow(step as u32));
            acc = acc.matmul(&self.mult.kron(&pad)?)?;
        }
        Ok(acc)
    }

    /// Left diagonal action H ⊗ H^{⊗p} → H^{⊗p}; for p = 0 this is the
    /// counit acting on the base field.
    pub fn left_diagonal_action(&self, p: usize) -> Result<SparseMat<F>> {
        let (mut tb, legs) = crate::word::TaggedBuilder::new(p + 1);
        let out = tb.left_action(legs[0], &legs[1..])?;
        let word = tb.finish(&out)?;
        crate::word::compile(&word, &self.maps, &[])
    }

    /// Right diagonal action H^{⊗p} ⊗ H → H^{⊗p}.
    pub fn right_diagonal_action(&self, p: usize) -> Result<SparseMat<F>> {
        let (mut tb, legs) = crate::word::TaggedBuilder::new(p + 1);
        let out = tb.right_action(&legs[..p], legs[p])?;
        let word = tb.finish(&out)?;
        crate::word::compile(&word, &self.maps, &[])
    }

    /// Runs every Hopf axiom as an exact compiled-matrix identity.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let d = self.dim;
        let id = self.identity_mat();
        let mut checks = Vec::new();
        let mut push = |name: &str, lhs: Result<SparseMat<F>>, rhs: Result<SparseMat<F>>| {
            let check = match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    let w = first_diff(&l, &r);
                    AxiomCheck {
                        name: name.into(),
                        pass: w.is_none(),
                        witness: w.map(|(r0, c0)| format!("entry ({r0}, {c0})")),
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    AxiomCheck { name: name.into(), pass: false, witness: Some(e.to_string()) }
                }
            };
            checks.push(check);
        };

        let m = &self.mult;
        let cm = &self.comult;
        let eta = &self.unit;
        let eps = &self.counit;
        let s = &self.antipode;
        let kron_im = |a: &SparseMat<F>, n: usize| a.kron(&SparseMat::identity(f.clone(), n));
        let kron_mi = |n: usize, a: &SparseMat<F>| SparseMat::identity(f.clone(), n).kron(a);

        push(
            "associativity",
            kron_im(m, d).and_then(|x| m.matmul(&x)),
            kron_mi(d, m).and_then(|x| m.matmul(&x)),
        );
        push("left unitality", kron_im(eta, d).and_then(|x| m.matmul(&x)), Ok(id.clone()));
        push("right unitality", kron_mi(d, eta).and_then(|x| m.matmul(&x)), Ok(id.clone()));
        push(
            "coassociativity",
            kron_im(cm, d).and_then(|x| x.matmul(cm)),
            kron_mi(d, cm).and_then(|x| x.matmul(cm)),
        );
        push("left counitality", kron_im(eps, d).and_then(|x| x.matmul(cm)), Ok(id.clone()));
        push("right counitality", kron_mi(d, eps).and_then(|x| x.matmul(cm)), Ok(id.clone()));
        // Δ∘m = (m⊗m)∘(id⊗swap⊗id)∘(Δ⊗Δ)
        let bialg_rhs = (|| {
            let swap = perm_matrix(f, d, &[1, 0])?;
            let mid = kron_mi(d, &swap.kron(&SparseMat::identity(f.clone(), d))?)?;
            m.kron(m)?.matmul(&mid)?.matmul(&cm.kron(cm)?)
        })();
        push("bialgebra compatibility", cm.matmul(m), bialg_rhs);
        push("counit of product", eps.matmul(m), eps.kron(eps));
        push("coproduct of unit", cm.matmul(eta), eta.kron(eta));
        push(
            "counit of unit",
            eps.matmul(eta),
            Ok(SparseMat::identity(f.clone(), 1)),
        );
        let eta_eps = eta.matmul(eps);
        push(
            "left antipode",
            kron_im(s, d).and_then(|x| m.matmul(&x)).and_then(|x| x.matmul(cm)),
            eta_eps.clone(),
        );
        push(
            "right antipode",
            kron_mi(d, s).and_then(|x| m.matmul(&x)).and_then(|x| x.matmul(cm)),
            eta_eps,
        );
        push(
            "antipode invertibility",
            s.matmul(&self.antipode_inv),
            Ok(id.clone()),
        );

        // order of S: smallest k ≤ cap with S^k = id
        let mut antipode_order = None;
        let mut power = s.clone();
        for k in 1..=64 {
            if power == id {
                antipode_order = Some(k);
                break;
            }
            power = match power.matmul(s) {
                Ok(p) => p,
                Err(_) => break,
            };
        }

        ValidationReport {
            algebra: self.name.clone(),
            checks,
            flags: self.flags,
            antipode_order,
        }
    }
}

/// Finite group, given by its multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub names: Vec<String>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 || names.len() != n {
            return Err(Error::InvalidGroupTable("empty table or wrong name count".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroupTable("table is not closed".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("no inverse for {a}")))?;
        }
        Ok(GroupTable { order: n, table, identity, inverse, names })
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n)
            .map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") })
            .collect();
        GroupTable::new(table, names).expect("cyclic group is a group")
    }

    /// The symmetric group S3 as permutations of {0, 1, 2}.
    pub fn symmetric3() -> GroupTable {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = vec!["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
            .into_iter()
            .map(String::from)
            .collect();
        let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
            // (a ∘ b)(x) = a[b[x]]
            [a[b[0]], a[b[1]], a[b[2]]]
        };
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab = compose(a, b);
                        perms.iter().position(|p| *p == ab).unwrap()
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(table, names).expect("S3 is a group")
    }
}

/// Group algebra K[G]: basis = group elements, Δ(g) = g ⊗ g, S(g) = g⁻¹.
pub fn group_algebra<F: Field>(name: &str, g: &GroupTable, field: F) -> Result<HopfAlgebra<F>> {
    let n = g.order;
    let one = field.one();
    let mult = SparseMat::from_triples(
        field.clone(),
        n,
        n * n,
        (0..n).flat_map(|i| {
            let one = one.clone();
            let row = g.table[i].clone();
            (0..n).map(move |j| (row[j] as u32, (i * n + j) as u32, one.clone()))
        }),
    )?;
    let comult = SparseMat::from_triples(
        field.clone(),
        n * n,
        n,
        (0..n).map(|i| ((i * n + i) as u32, i as u32, one.clone())),
    )?;
    let unit = SparseMat::from_triples(field.clone(), n, 1, [(g.identity as u32, 0, one.clone())])?;
    let counit =
        SparseMat::from_triples(field.clone(), 1, n, (0..n).map(|i| (0, i as u32, one.clone())))?;
    let antipode = SparseMat::from_triples(
        field.clone(),
        n,
        n,
        (0..n).map(|i| (g.inverse[i] as u32, i as u32, one.clone())),
    )?;
    HopfAlgebra::new(name, field, n, g.names.clone(), mult, comult, unit, counit, antipode)
}

/// Dual K^G of a group algebra: indicator-function basis, pointwise product,
/// convolution coproduct. Commutative; cocommutative iff G is abelian.
pub fn dual_group_algebra<F: Field>(name: &str, g: &GroupTable, field: F) -> Result<HopfAlgebra<F>> {
    let n = g.order;
    let one = field.one();
    let mult = SparseMat::from_triples(
        field.clone(),
        n,
        n * n,
        (0..n).map(|a| (a as u32, (a * n + a) as u32, one.clone())),
    )?;
    let comult = SparseMat::from_triples(
        field.clone(),
        n * n,
        n,
        (0..n).flat_map(|a| {
            let row = g.table[a].clone();
            let one = one.clone();
            (0..n).map(move |b| ((a * n + b) as u32, row[b] as u32, one.clone()))
        }),
    )?;
    let unit =
        SparseMat::from_triples(field.clone(), n, 1, (0..n).map(|a| (a as u32, 0, one.clone())))?;
    let counit =
        SparseMat::from_triples(field.clone(), 1, n, [(0, g.identity as u32, one.clone())])?;
    let antipode = SparseMat::from_triples(
        field.clone(),
        n,
        n,
        (0..n).map(|a| (g.inverse[a] as u32, a as u32, one.clone())),
    )?;
    let names = g.names.iter().map(|s| format!("d_{s}")).collect();
    HopfAlgebra::new(name, field, n, names, mult, comult, unit, counit, antipode)
}

/// Sweedler's four-dimensional Hopf algebra on {1, g, x, gx} with g² = 1,
/// x² = 0, gx = −xg; the smallest example with a non-involutive antipode.
/// Needs characteristic ≠ 2.
pub fn sweedler_h4<F: Field>(field: F) -> Result<HopfAlgebra<F>> {
    if field.characteristic() == 2 {
        return Err(Error::BadCharacteristic {
            expected: "!= 2".into(),
            found: 2,
        });
    }
    let one = field.one();
    let neg = field.neg(&one);
    // product table: prod[i][j] = (k, coeff)
    let z: Option<(usize, F::Elem)> = None;
    let table: [[Option<(usize, F::Elem)>; 4]; 4] = [
        [Some((0, one.clone())), Some((1, one.clone())), Some((2, one.clone())), Some((3, one.clone()))],
        [Some((1, one.clone())), Some((0, one.clone())), Some((3, one.clone())), Some((2, one.clone()))],
        [Some((2, one.clone())), Some((3, neg.clone())), z.clone(), z.clone()],
        [Some((3, one.clone())), Some((2, neg.clone())), z.clone(), z],
    ];
    let mut mult_triples = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some((k, c)) = cell {
                mult_triples.push((*k as u32, (i * 4 + j) as u32, c.clone()));
            }
        }
    }
    let mult = SparseMat::from_triples(field.clone(), 4, 16, mult_triples)?;
    let comult = SparseMat::from_triples(
        field.clone(),
        16,
        4,
        [
            (0u32, 0u32, one.clone()),        // Δ1 = 1⊗1
            (5, 1, one.clone()),              // Δg = g⊗g
            (2 * 4, 2, one.clone()),          // Δx = x⊗1 + g⊗x
            (4 + 2, 2, one.clone()),
            (3 * 4 + 1, 3, one.clone()),      // Δ(gx) = gx⊗g + 1⊗gx
            (3, 3, one.clone()),
        ],
    )?;
    let unit = SparseMat::from_triples(field.clone(), 4, 1, [(0, 0, one.clone())])?;
    let counit = SparseMat::from_triples(
        field.clone(),
        1,
        4,
        [(0, 0, one.clone()), (0, 1, one.clone())],
    )?;
    // S: 1↦1, g↦g, x↦−gx, gx↦x
    let antipode = SparseMat::from_triples(
        field.clone(),
        4,
        4,
        [(0u32, 0u32, one.clone()), (1, 1, one.clone()), (3, 2, neg), (2, 3, one)],
    )?;
    let basis = ["1", "g", "x", "gx"].map(String::from).to_vec();
    HopfAlgebra::new("h4", field, 4, basis, mult, comult, unit, counit, antipode)
}

// --- serialization -------------------------------------------------------

/// On-disk schema. Structure constants: `mult` rows `[i, j, k, c]` mean
/// e_i · e_j = Σ_k c · e_k; `comult` rows `[i, j, k, c]` mean
/// Δ(e_i) = Σ c · e_j ⊗ e_k; `antipode` rows `[i, j, c]` mean
/// S(e_i) = Σ_j c · e_j. Unlisted entries are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfWire {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub comult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    pub antipode: Vec<(usize, usize, String)>,
}

impl<F: Field> HopfAlgebra<F> {
    pub fn to_wire(&self) -> HopfWire {
        let f = &self.field;
        let d = self.dim;
        let mut mult: Vec<(usize, usize, usize, String)> = self
            .mult
            .entries()
            .iter()
            .map(|(k, ij, c)| {
                let i = *ij as usize / d;
                let j = *ij as usize % d;
                (i, j, *k as usize, f.render(c))
            })
            .collect();
        mult.sort();
        let mut comult: Vec<(usize, usize, usize, String)> = self
            .comult
            .entries()
            .iter()
            .map(|(jk, i, c)| {
                let j = *jk as usize / d;
                let k = *jk as usize % d;
                (*i as usize, j, k, f.render(c))
            })
            .collect();
        comult.sort();
        let mut antipode: Vec<(usize, usize, String)> = self
            .antipode
            .entries()
            .iter()
            .map(|(j, i, c)| (*i as usize, *j as usize, f.render(c)))
            .collect();
        antipode.sort();
        let unit = (0..d as u32).map(|i| f.render(&self.unit.get(i, 0))).collect();
        let counit = (0..d as u32).map(|i| f.render(&self.counit.get(0, i))).collect();
        HopfWire {
            name: self.name.clone(),
            field: self.field.spec(),
            dim: d,
            basis: self.basis.clone(),
            mult,
            comult,
            unit,
            counit,
            antipode,
        }
    }

    pub fn from_wire(field: F, wire: &HopfWire, validate: bool) -> Result<HopfAlgebra<F>> {
        if wire.field != field.spec() {
            return Err(Error::MixedFields(wire.field.to_string(), field.spec().to_string()));
        }
        let d = wire.dim;
        let check_idx = |pointer: String, v: usize| -> Result<u32> {
            if v >= d {
                Err(Error::SchemaError {
                    pointer,
                    message: format!("index {v} out of range for dim {d}"),
                })
            } else {
                Ok(v as u32)
            }
        };
        let parse = |pointer: String, s: &str| -> Result<F::Elem> {
            field.parse(s).map_err(|e| Error::SchemaError { pointer, message: e.to_string() })
        };
        if wire.basis.len() != d {
            return Err(Error::SchemaError {
                pointer: "/basis".into(),
                message: format!("{} labels for dim {d}", wire.basis.len()),
            });
        }
        let mut mult_triples = Vec::new();
        for (n, (i, j, k, c)) in wire.mult.iter().enumerate() {
            let ptr = format!("/mult/{n}");
            let (i, j, k) = (
                check_idx(format!("{ptr}/0"), *i)?,
                check_idx(format!("{ptr}/1"), *j)?,
                check_idx(format!("{ptr}/2"), *k)?,
            );
            mult_triples.push((k, i * d as u32 + j, parse(format!("{ptr}/3"), c)?));
        }
        let mut comult_triples = Vec::new();
        for (n, (i, j, k, c)) in wire.comult.iter().enumerate() {
            let ptr = format!("/comult/{n}");
            let (i, j, k) = (
                check_idx(format!("{ptr}/0"), *i)?,
                check_idx(format!("{ptr}/1"), *j)?,
                check_idx(format!("{ptr}/2"), *k)?,
            );
            comult_triples.push((j * d as u32 + k, i, parse(format!("{ptr}/3"), c)?));
        }
        let mut antipode_triples = Vec::new();
        for (n, (i, j, c)) in wire.antipode.iter().enumerate() {
            let ptr = format!("/antipode/{n}");
            let (i, j) = (check_idx(format!("{ptr}/0"), *i)?, check_idx(format!("{ptr}/1"), *j)?);
            antipode_triples.push((j, i, parse(format!("{ptr}/2"), c)?));
        }
        if wire.unit.len() != d || wire.counit.len() != d {
            return Err(Error::SchemaError {
                pointer: "/unit".into(),
                message: "unit and counit must list one scalar per basis element".into(),
            });
        }
        let unit_triples: Result<Vec<_>> = wire
            .unit
            .iter()
            .enumerate()
            .map(|(i, c)| Ok((i as u32, 0u32, parse(format!("/unit/{i}"), c)?)))
            .collect();
        let counit_triples: Result<Vec<_>> = wire
            .counit
            .iter()
            .enumerate()
            .map(|(i, c)| Ok((0u32, i as u32, parse(format!("/counit/{i}"), c)?)))
            .collect();
        let mult = SparseMat::from_triples(field.clone(), d, d * d, mult_triples)?;
        let comult = SparseMat::from_triples(field.clone(), d * d, d, comult_triples)?;
        let unit = SparseMat::from_triples(field.clone(), d, 1, unit_triples?)?;
        let counit = SparseMat::from_triples(field.clone(), 1, d, counit_triples?)?;
        let antipode = SparseMat::from_triples(field.clone(), d, d, antipode_triples)?;
        if validate {
            HopfAlgebra::new(
                wire.name.clone(),
                field,
                d,
                wire.basis.clone(),
                mult,
                comult,
                unit,
                counit,
                antipode,
            )
        } else {
            HopfAlgebra::new_unvalidated(
                wire.name.clone(),
                field,
                d,
                wire.basis.clone(),
                mult,
                comult,
                unit,
                counit,
                antipode,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn kc2_validates_with_expected_flags() {
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        let report = h.validate();
        assert!(report.all_pass(), "{report:?}");
        assert!(h.flags.involutive && h.flags.cocommutative && h.flags.commutative);
        assert_eq!(report.antipode_order, Some(1));
    }

    #[test]
    fn s3_group_algebra_is_noncommutative() {
        let h = group_algebra("ks3grp", &GroupTable::symmetric3(), q()).unwrap();
        assert!(!h.flags.commutative);
        assert!(h.flags.cocommutative);
        assert!(h.flags.involutive);
    }

    #[test]
    fn dual_s3_is_commutative_not_cocommutative() {
        let h = dual_group_algebra("duals3", &GroupTable::symmetric3(), q()).unwrap();
        assert!(h.flags.commutative);
        assert!(!h.flags.cocommutative);
        assert!(h.flags.involutive);
        // Δ(δ_e) = Σ_{ab = e} δ_a ⊗ δ_b has one term per group element
        assert_eq!(h.comult.col(0).len(), 6);
    }

    #[test]
    fn c3_over_f5_validates() {
        let f5 = PrimeField::new(5).unwrap();
        let h = group_algebra("kc3_f5", &GroupTable::cyclic(3), f5).unwrap();
        assert!(h.validate().all_pass());
    }

    #[test]
    fn h4_has_antipode_of_order_four() {
        let h = sweedler_h4(q()).unwrap();
        let report = h.validate();
        assert!(report.all_pass(), "{report:?}");
        assert!(!h.flags.involutive);
        assert!(!h.flags.cocommutative);
        assert!(!h.flags.commutative);
        assert_eq!(report.antipode_order, Some(4));
        // S²(x) = −x
        let s2 = h.antipode.matmul(&h.antipode).unwrap();
        assert_eq!(s2.get(2, 2), q().from_i64(-1));
    }

    #[test]
    fn h4_over_f7_validates_and_over_f2_is_rejected() {
        assert!(sweedler_h4(PrimeField::new(7).unwrap()).unwrap().validate().all_pass());
        assert!(matches!(
            sweedler_h4(PrimeField::new(2).unwrap()),
            Err(Error::BadCharacteristic { .. })
        ));
    }

    #[test]
    fn corrupted_comultiplication_fails_coassociativity() {
        let g = GroupTable::cyclic(2);
        let h = group_algebra("kc2", &g, q()).unwrap();
        // add a stray e1⊗e0 term to Δ(e_1)
        let bad_comult = SparseMat::from_triples(
            q(),
            4,
            2,
            [(0u32, 0u32, q().one()), (3, 1, q().one()), (2, 1, q().one())],
        )
        .unwrap();
        let bad = HopfAlgebra::new_unvalidated(
            "bad",
            q(),
            2,
            h.basis.clone(),
            h.mult.clone(),
            bad_comult,
            h.unit.clone(),
            h.counit.clone(),
            h.antipode.clone(),
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.all_pass());
        let coassoc = report.checks.iter().find(|c| c.name == "coassociativity").unwrap();
        assert!(!coassoc.pass);
        assert!(coassoc.witness.is_some());
    }

    #[test]
    fn non_invertible_antipode_is_rejected() {
        let g = GroupTable::cyclic(2);
        let h = group_algebra("kc2", &g, q()).unwrap();
        let singular = SparseMat::from_triples(q(), 2, 2, [(0u32, 0u32, q().one())]).unwrap();
        let r = HopfAlgebra::new(
            "bad",
            q(),
            2,
            h.basis.clone(),
            h.mult.clone(),
            h.comult.clone(),
            h.unit.clone(),
            h.counit.clone(),
            singular,
        );
        assert!(matches!(r, Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn wire_roundtrip() {
        let h = sweedler_h4(q()).unwrap();
        let wire = h.to_wire();
        let json = serde_json::to_string(&wire).unwrap();
        let back: HopfWire = serde_json::from_str(&json).unwrap();
        let h2 = HopfAlgebra::from_wire(q(), &back, true).unwrap();
        assert_eq!(h2.mult, h.mult);
        assert_eq!(h2.comult, h.comult);
        assert_eq!(h2.antipode, h.antipode);
        // canonical writer is a fixed point
        assert_eq!(serde_json::to_string(&h2.to_wire()).unwrap(), json);
    }

    #[test]
    fn group_table_rejects_non_groups() {
        // non-associative magma
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(GroupTable::new(t, vec!["a".into(), "b".into()]).is_err());
    }

    #[test]
    fn iterated_coproduct_conventions() {
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        assert_eq!(h.iterated_coproduct(0).unwrap(), h.identity_mat());
        assert_eq!(h.iterated_coproduct(-1).unwrap(), h.counit);
        // grouplike: Δ²(g) = g ⊗ g ⊗ g
        let d2 = h.iterated_coproduct(2).unwrap();
        assert!(q().is_one(&d2.get(7, 1)));
        assert_eq!(d2.col(1).len(), 1);
    }

    #[test]
    fn diagonal_actions_small_cases() {
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        // p = 0: the counit row
        assert_eq!(h.left_diagonal_action(0).unwrap(), h.counit);
        assert_eq!(h.right_diagonal_action(0).unwrap(), h.counit);
        // p = 1: the multiplication tensor
        assert_eq!(h.left_diagonal_action(1).unwrap(), h.mult);
        // p = 2 on k[C2]: g ⊳ (g ⊗ 1) = 1 ⊗ g: input index (1,1,0) = 6 -> (0,1) = 1
        let act = h.left_diagonal_action(2).unwrap();
        assert!(q().is_one(&act.get(1, 6)));
    }

    #[test]
    fn antipode_axiom_compiles_to_eta_eps() {
        // m∘(S⊗id)∘Δ = η∘ε on k[C2], via a compiled word
        let h = group_algebra("kc2", &GroupTable::cyclic(2), q()).unwrap();
        let (mut tb, legs) = crate::word::TaggedBuilder::new(1);
        let pieces = tb.split(legs[0], 2).unwrap();
        tb.map_leg(pieces[0], crate::word::Gen::Antipode).unwrap();
        let prod = tb.merge(pieces[0], pieces[1]).unwrap();
        let word = tb.finish(&[prod]).unwrap();
        let mat = crate::word::compile(&word, h.maps(), &[]).unwrap();
        assert_eq!(mat, h.unit.matmul(&h.counit).unwrap());
    }

    #[test]
    fn coop_antipode_identity() {
        // m∘(S⁻¹⊗id)∘swap∘Δ = η∘ε (antipode of the co-opposite), exercised on h4
        let h = sweedler_h4(q()).unwrap();
        let (mut tb, legs) = crate::word::TaggedBuilder::new(1);
        let pieces = tb.split(legs[0], 2).unwrap();
        // swap: use piece 2 first
        tb.map_leg(pieces[1], crate::word::Gen::AntipodeInv).unwrap();
        let prod = tb.merge(pieces[1], pieces[0]).unwrap();
        let word = tb.finish(&[prod]).unwrap();
        let mat = crate::word::compile(&word, h.maps(), &[]).unwrap();
        assert_eq!(mat, h.unit.matmul(&h.counit).unwrap());
    }
}
