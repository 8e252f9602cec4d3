//! Exact-arithmetic workbench for the Gerstenhaber–Schack complex of a
//! finite-dimensional Hopf algebra.
//!
//! Everything is computed over an exact field — arbitrary-precision
//! rationals or a prime field — as sparse matrices. The crate builds the
//! GS bicomplex and its diagonal from structure constants, equips the
//! diagonal with its operad-with-multiplication and cyclic structure, and
//! certifies the relevant identities (bicomplex squares, operad axioms,
//! cyclicity, mixed-complex relations, bracket exactness) as zero-tolerance
//! matrix identities.

pub mod cochain;
pub mod cyclic;
pub mod elim;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gs;
pub mod hopf;
pub mod operad;
pub mod report;
pub mod sparse;
pub mod word;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};

/// Concrete instantiations over the rationals.
pub type QMat = sparse::SparseMat<Rationals>;
pub type QHopf = hopf::HopfAlgebra<Rationals>;
pub type QCochain = cochain::Cochain<Rationals>;

/// Concrete instantiations over a prime field.
pub type FpMat = sparse::SparseMat<PrimeField>;
pub type FpHopf = hopf::HopfAlgebra<PrimeField>;
pub type FpCochain = cochain::Cochain<PrimeField>;

/// Default cap on `rows x cols` of any materialized differential
/// (the CLI resource guard; exceeding it is an error, not a hang).
pub const DEFAULT_POSITION_LIMIT: u128 = 200_000_000;

/// Default threshold on `min(rows, cols)` above which operators are checked
/// pointwise instead of being materialized.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 70_000;

/// Guards a materialization of the given shape.
pub fn guard_positions(rows: usize, cols: usize, limit: u128) -> Result<()> {
    let positions = rows as u128 * cols as u128;
    if positions > limit {
        return Err(Error::ResourceLimit(format!(
            "{rows} x {cols} = {positions} candidate positions exceeds the limit {limit}"
        )));
    }
    Ok(())
}
