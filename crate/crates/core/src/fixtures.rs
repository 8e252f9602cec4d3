//! Built-in fixture corpus: the test algebras shipped with the workbench,
//! plus the manifest that pins their expected flags and verified Betti
//! tables (with the command line that re-derives each pinned value).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::gs::{cohomology, ComplexKind};
use crate::hopf::{dual_group_algebra, group_algebra, sweedler_h4, GroupTable, HopfAlgebra, HopfFlags};

pub const BUILTIN_NAMES: [&str; 5] = ["kc2", "kc3", "ks3", "duals3", "h4"];

/// Constructs a built-in fixture over an arbitrary exact field.
pub fn build<F: Field>(name: &str, field: F) -> Result<HopfAlgebra<F>> {
    match name {
        "kc2" => group_algebra("kc2", &GroupTable::cyclic(2), field),
        "kc3" => group_algebra("kc3", &GroupTable::cyclic(3), field),
        "ks3" => group_algebra("ks3", &GroupTable::symmetric3(), field),
        "duals3" => dual_group_algebra("duals3", &GroupTable::symmetric3(), field),
        "h4" => sweedler_h4(field).map(|mut h| {
            h.name = "h4".into();
            h
        }),
        other => Err(Error::SchemaError {
            pointer: "/name".into(),
            message: format!("unknown fixture `{other}`"),
        }),
    }
}

pub fn build_q(name: &str) -> Result<HopfAlgebra<Rationals>> {
    build(name, Rationals)
}

pub fn build_fp(name: &str, p: u64) -> Result<HopfAlgebra<PrimeField>> {
    build(name, PrimeField::new(p)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PinnedBetti {
    pub kind: String,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub betti: Vec<usize>,
    /// How the value was obtained.
    pub provenance: String,
    /// Command line that re-derives it.
    pub command: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub file: String,
    pub dim: usize,
    pub flags: HopfFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<PinnedBetti>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureManifest {
    pub entries: Vec<FixtureEntry>,
}

/// Degree cap used when pinning Betti tables at manifest-generation time;
/// chosen so re-derivation stays fast at each dimension.
pub fn manifest_degree_cap(dim: usize) -> usize {
    match dim {
        0..=3 => 3,
        4 => 2,
        _ => 1,
    }
}

/// Builds the manifest by computing everything it pins (flags from
/// validation, Betti numbers from the diagonal complex over Q).
pub fn compute_manifest(position_limit: u128) -> Result<FixtureManifest> {
    let mut entries = Vec::new();
    for name in BUILTIN_NAMES {
        let h = build_q(name)?;
        let n_max = manifest_degree_cap(h.dim);
        let coh = cohomology(&h, ComplexKind::Diagonal, n_max, position_limit)?;
        entries.push(FixtureEntry {
            name: name.to_string(),
            file: format!("{name}.json"),
            dim: h.dim,
            flags: h.flags,
            betti: Some(PinnedBetti {
                kind: "diagonal".into(),
                max_degree: n_max,
                betti: coh.report.betti_vector(),
                provenance: "derived: exact rank computation over Q, re-derivable with the command below".into(),
                command: format!("gsw cohomology fixtures/{name}.json --kind diag --max-degree {n_max}"),
            }),
        });
    }
    Ok(FixtureManifest { entries })
}

/// Writes all fixture files (over Q and the F_101 twins) plus the manifest
/// into a directory.
pub fn write_corpus(dir: &std::path::Path, position_limit: u128) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for name in BUILTIN_NAMES {
        let h = build_q(name)?;
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&h.to_wire()).map_err(|e| Error::Io(e.to_string()))?)?;
        written.push(path.display().to_string());
        let hp = build_fp(name, 101)?;
        let path = dir.join(format!("{name}_f101.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&hp.to_wire()).map_err(|e| Error::Io(e.to_string()))?)?;
        written.push(path.display().to_string());
    }
    let manifest = compute_manifest(position_limit)?;
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?)?;
    written.push(path.display().to_string());
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_validate_with_expected_flags() {
        let expect = [
            ("kc2", true, true, true),
            ("kc3", true, true, true),
            ("ks3", true, true, false),
            ("duals3", true, false, true),
            ("h4", false, false, false),
        ];
        for (name, involutive, cocommutative, commutative) in expect {
            let h = build_q(name).unwrap();
            assert!(h.validate().all_pass(), "{name}");
            assert_eq!(h.flags.involutive, involutive, "{name} involutive");
            assert_eq!(h.flags.cocommutative, cocommutative, "{name} cocommutative");
            assert_eq!(h.flags.commutative, commutative, "{name} commutative");
            // cocommutative implies involutive on the corpus
            if h.flags.cocommutative {
                assert!(h.flags.involutive, "{name}");
            }
        }
    }

    #[test]
    fn fp_twins_validate() {
        for name in BUILTIN_NAMES {
            let h = build_fp(name, 101).unwrap();
            assert!(h.validate().all_pass(), "{name} over F_101");
        }
    }

    #[test]
    fn corpus_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(dir.path(), crate::DEFAULT_POSITION_LIMIT).unwrap();
        let raw = std::fs::read_to_string(dir.path().join("kc2.json")).unwrap();
        let wire: crate::hopf::HopfWire = serde_json::from_str(&raw).unwrap();
        let h = HopfAlgebra::from_wire(Rationals, &wire, true).unwrap();
        assert_eq!(h.dim, 2);
        let manifest: FixtureManifest =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
                .unwrap();
        assert_eq!(manifest.entries.len(), 5);
        let kc2 = &manifest.entries[0];
        assert_eq!(kc2.betti.as_ref().unwrap().betti, vec![1, 0, 0, 0]);
    }
}
