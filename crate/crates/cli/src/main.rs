//! `gsw`: load and validate Hopf algebras given by structure constants,
//! compute Gerstenhaber–Schack cohomology tables, evaluate brackets, and run
//! the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 axiom
//! violation, 4 resource limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gsw_core::cochain::Cochain;
use gsw_core::cyclic::{
    bv_defect, check_cyclic_operad, check_para_cocyclic, cyclic_gs_cohomology, cylindrical_check,
    e3_bracket, finite_dim_vanishing_suite, mixed_complex_check,
};
use gsw_core::elim::ColumnSolver;
use gsw_core::error::Error;
use gsw_core::field::{Field, FieldSpec, PrimeField, Rationals};
use gsw_core::gs::{
    bicomplex_check, cohomology, cross_check_primes, delta_diag_matrix, is_coboundary, is_cocycle,
    ComplexKind,
};
use gsw_core::hopf::{HopfAlgebra, HopfWire};
use gsw_core::operad::{bracket, check_diff_identity, check_operad_axioms, cup};
use gsw_core::report::VerificationReport;

#[derive(Parser)]
#[command(name = "gsw", version, about = "Gerstenhaber-Schack workbench over exact fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Diag,
    Total,
    Cyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BracketKind {
    Gerstenhaber,
    Cup,
    E3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Hopf,
    Bicomplex,
    Operad,
    Cyclic,
    Bv,
    FiniteDim,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the Hopf axioms of an input file and print the axiom table.
    Validate {
        hopf_file: PathBuf,
    },
    /// Betti numbers of the diagonal, total, or cyclic complex.
    Cohomology {
        hopf_file: PathBuf,
        #[arg(long, value_enum, default_value = "diag")]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Truncation depth of the degree +2 variable (cyclic kind only).
        #[arg(long, default_value_t = 2)]
        u_trunc: usize,
        /// Verify the rational Betti table over these primes.
        #[arg(long, value_delimiter = ',')]
        cross_check_primes: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = gsw_core::DEFAULT_POSITION_LIMIT)]
        position_limit: u128,
    },
    /// Evaluate a bracket/cup/degree −2 bracket on cocycle classes.
    Bracket {
        hopf_file: PathBuf,
        /// Degrees of the two arguments.
        #[arg(long, num_args = 2, default_values_t = [1, 1])]
        deg: Vec<usize>,
        #[arg(long, value_enum, default_value = "gerstenhaber")]
        kind: BracketKind,
        /// Indices into the computed cocycle bases.
        #[arg(long, num_args = 2)]
        class: Option<Vec<usize>>,
        /// Random cocycle pairs: <trials> <seed>.
        #[arg(long, num_args = 2)]
        random: Option<Vec<u64>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = gsw_core::DEFAULT_POSITION_LIMIT)]
        position_limit: u128,
    },
    /// Run a verification suite; exit 0 iff every clause passes.
    Verify {
        hopf_file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        arity_cap: Option<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = gsw_core::DEFAULT_POSITION_LIMIT)]
        position_limit: u128,
    },
    /// Write the built-in fixture corpus (and its manifest) to a directory.
    Fixtures {
        dir: PathBuf,
        #[arg(long, default_value_t = gsw_core::DEFAULT_POSITION_LIMIT)]
        position_limit: u128,
    },
}

fn main() -> ExitCode {
    // GS_THREADS caps internal parallelism; default 1 keeps runs reproducible
    // on any machine (results are thread-count independent either way).
    let threads: usize = std::env::var("GS_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_of(&e))
        }
    }
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 4,
        Error::AxiomViolation(_) => 3,
        _ => 2,
    }
}

enum DynHopf {
    Q(HopfAlgebra<Rationals>),
    Fp(HopfAlgebra<PrimeField>),
}

fn load_dyn(path: &Path, validate: bool) -> Result<DynHopf, Error> {
    let raw = std::fs::read_to_string(path)?;
    let wire: HopfWire = serde_json::from_str(&raw).map_err(|e| Error::SchemaError {
        pointer: format!("/{}", e.line()),
        message: e.to_string(),
    })?;
    Ok(match wire.field {
        FieldSpec::Rationals => DynHopf::Q(HopfAlgebra::from_wire(Rationals, &wire, validate)?),
        FieldSpec::PrimeField(p) => {
            DynHopf::Fp(HopfAlgebra::from_wire(PrimeField::new(p)?, &wire, validate)?)
        }
    })
}

macro_rules! with_hopf {
    ($dyn:expr, $h:ident, $body:expr) => {
        match $dyn {
            DynHopf::Q(ref $h) => $body,
            DynHopf::Fp(ref $h) => $body,
        }
    };
}

fn write_out<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), Error> {
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, json)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { hopf_file } => {
            let hopf = load_dyn(&hopf_file, false)?;
            with_hopf!(hopf, h, {
                let report = h.validate();
                println!("algebra: {} (dim {}, field {})", h.name, h.dim, h.field().spec());
                for check in &report.checks {
                    let status = if check.pass { "pass" } else { "FAIL" };
                    match &check.witness {
                        Some(w) => println!("  {:26} {status}  [{w}]", check.name),
                        None => println!("  {:26} {status}", check.name),
                    }
                }
                println!(
                    "flags: involutive={} cocommutative={} commutative={}",
                    report.flags.involutive, report.flags.cocommutative, report.flags.commutative
                );
                match report.antipode_order {
                    Some(k) => println!("antipode order: {k}"),
                    None => println!("antipode order: none found below the search cap"),
                }
                if report.all_pass() {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Err(Error::AxiomViolation("validation failed".into()))
                }
            })
        }
        Command::Cohomology {
            hopf_file,
            kind,
            max_degree,
            u_trunc,
            cross_check_primes: primes,
            out,
            position_limit,
        } => {
            let hopf = load_dyn(&hopf_file, true)?;
            let report = match (&hopf, kind) {
                (_, Kind::Diag) => with_hopf!(hopf, h, {
                    cohomology(h, ComplexKind::Diagonal, max_degree, position_limit)?.report
                }),
                (_, Kind::Total) => with_hopf!(hopf, h, {
                    cohomology(h, ComplexKind::Total, max_degree, position_limit)?.report
                }),
                (_, Kind::Cyclic) => with_hopf!(hopf, h, {
                    cyclic_gs_cohomology(h, max_degree, u_trunc, position_limit)?
                }),
            };
            let mut report = report;
            if !primes.is_empty() {
                if let DynHopf::Q(ref h) = hopf {
                    let wire = h.to_wire();
                    let ck_kind = match kind {
                        Kind::Diag => ComplexKind::Diagonal,
                        Kind::Total => ComplexKind::Total,
                        Kind::Cyclic => {
                            return Err(Error::SchemaError {
                                pointer: "/cross-check-primes".into(),
                                message: "prime cross-checks apply to diag/total kinds".into(),
                            })
                        }
                    };
                    cross_check_primes(
                        |fp| {
                            let mut w = wire.clone();
                            w.field = fp.spec();
                            HopfAlgebra::from_wire(fp, &w, true)
                        },
                        ck_kind,
                        max_degree,
                        &primes,
                        position_limit,
                        &mut report,
                    )?;
                } else {
                    return Err(Error::SchemaError {
                        pointer: "/cross-check-primes".into(),
                        message: "prime cross-checks need a rational input".into(),
                    });
                }
            }
            println!("algebra: {} ({})", report.algebra, report.kind);
            println!("{:>3} {:>8} {:>8} {:>8} {:>6}", "n", "dim", "rankIn", "rankOut", "betti");
            for d in &report.degrees {
                println!(
                    "{:>3} {:>8} {:>8} {:>8} {:>6}",
                    d.n, d.dim, d.rank_in, d.rank_out, d.betti
                );
            }
            for ck in &report.cross_checks {
                println!("F_{}: betti {:?} ({})", ck.prime, ck.betti, ck.note);
            }
            write_out(&out, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket { hopf_file, deg, kind, class, random, out, position_limit } => {
            let hopf = load_dyn(&hopf_file, true)?;
            let (dp, dq) = (deg[0], deg[1]);
            with_hopf!(hopf, h, {
                bracket_command(h, dp, dq, kind, &class, &random, &out, position_limit)
            })
        }
        Command::Verify { hopf_file, suite, arity_cap, trials, seed, out, position_limit } => {
            let hopf = load_dyn(&hopf_file, true)?;
            with_hopf!(hopf, h, {
                verify_command(h, suite, arity_cap, trials, seed, &out, position_limit)
            })
        }
        Command::Fixtures { dir, position_limit } => {
            let written = gsw_core::fixtures::write_corpus(&dir, position_limit)?;
            for w in written {
                println!("wrote {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bracket_command<F: Field>(
    h: &HopfAlgebra<F>,
    dp: usize,
    dq: usize,
    kind: BracketKind,
    class: &Option<Vec<usize>>,
    random: &Option<Vec<u64>>,
    out: &Option<PathBuf>,
    position_limit: u128,
) -> Result<ExitCode, Error> {
    let n_max = dp.max(dq);
    let coh = cohomology(h, ComplexKind::Diagonal, n_max, position_limit)?;
    let zp = &coh.cocycle_bases[dp];
    let zq = &coh.cocycle_bases[dq];
    println!(
        "cocycle space dimensions: degree {dp}: {}, degree {dq}: {}",
        zp.len(),
        zq.len()
    );
    let mut pairs: Vec<(Cochain<F>, Cochain<F>, String)> = Vec::new();
    match (class, random) {
        (Some(cl), _) => {
            let (i, j) = (cl[0], cl[1]);
            let f = zp.get(i).ok_or_else(|| {
                Error::IndexOutOfRange(format!("class {i} outside the degree-{dp} basis"))
            })?;
            let g = zq.get(j).ok_or_else(|| {
                Error::IndexOutOfRange(format!("class {j} outside the degree-{dq} basis"))
            })?;
            pairs.push((f.clone(), g.clone(), format!("classes ({i}, {j})")));
        }
        (None, Some(rs)) => {
            // random small-coefficient combinations of the basis cocycles
            use rand::Rng;
            use rand::SeedableRng;
            let (trials, seed) = (rs[0], rs[1]);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut sample = |z: &[Cochain<F>], d: usize| -> Cochain<F> {
                let mut acc = Cochain::zero(h.field().clone(), h.dim, d, d);
                for v in z {
                    let c = h.field().from_i64(rng.gen_range(-2i64..=2));
                    acc = acc.add(&v.scale(&c)).expect("same degree");
                }
                acc
            };
            for t in 0..trials {
                let f = sample(zp, dp);
                let g = sample(zq, dq);
                pairs.push((f, g, format!("random pair {t}")));
            }
        }
        (None, None) => {
            return Err(Error::IndexOutOfRange(
                "pass either --class i j or --random trials seed".into(),
            ))
        }
    }
    let mut results = Vec::new();
    for (f, g, label) in &pairs {
        let value = match kind {
            BracketKind::Gerstenhaber => bracket(h, f, g)?,
            BracketKind::Cup => cup(h, f, g)?,
            BracketKind::E3 => e3_bracket(h, f, g)?,
        };
        let cocycle = is_cocycle(h, &value)?;
        let preimage = if value.arity()? == 0 {
            None
        } else {
            is_coboundary(h, &value)?
        };
        println!(
            "{label}: result degree {}, {} entries; cocycle: {cocycle}; coboundary: {}",
            value.arity()?,
            value.mat.nnz(),
            match &preimage {
                Some(_) => "yes, preimage verified",
                None => "no",
            }
        );
        for (r, c, v) in value.mat.entries().iter().take(12) {
            println!("  [{r}, {c}] = {}", h.field().render(v));
        }
        if value.mat.nnz() > 12 {
            println!("  … {} more entries", value.mat.nnz() - 12);
        }
        results.push(serde_json::json!({
            "pair": label,
            "degree": value.arity()?,
            "matrix": value.mat.to_wire(),
            "isCocycle": cocycle,
            "isCoboundary": preimage.is_some(),
            "preimage": preimage.map(|p| p.mat.to_wire()),
        }));
    }
    write_out(out, &results)?;
    Ok(ExitCode::SUCCESS)
}

/// Degree caps per suite, scaled to the dimension of the algebra so the
/// differential matrices stay at desk scale.
fn caps_for(dim: usize) -> (usize, usize, usize) {
    // (bicomplex caps, operad arity cap, cohomology degree cap)
    match dim {
        0..=3 => (3, 3, 3),
        4 => (3, 3, 2),
        _ => (2, 2, 2),
    }
}

fn verify_command<F: Field>(
    h: &HopfAlgebra<F>,
    suite: Suite,
    arity_cap: Option<usize>,
    trials: usize,
    seed: u64,
    out: &Option<PathBuf>,
    position_limit: u128,
) -> Result<ExitCode, Error> {
    let (bicaps, default_arity, coh_cap) = caps_for(h.dim);
    let arity = arity_cap.unwrap_or(default_arity);
    let mut reports: Vec<VerificationReport> = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;

    if want(Suite::Hopf) {
        let v = h.validate();
        let mut rep = VerificationReport::new("hopf", h.name.clone(), seed, 0);
        for c in v.checks {
            rep.push(gsw_core::report::Clause::from_witness(
                c.name.clone(),
                "Hopf axiom (compiled matrix identity)",
                if c.pass { None } else { c.witness.or(Some("failed".into())) },
            ));
        }
        reports.push(rep);
    }
    if want(Suite::Bicomplex) {
        reports.push(bicomplex_check(h, bicaps, bicaps)?);
    }
    if want(Suite::Operad) {
        reports.push(check_operad_axioms(h, arity, trials, seed)?);
        reports.push(check_diff_identity(h, coh_cap.min(2).max(1) + if h.dim <= 2 { 1 } else { 0 })?);
    }
    if want(Suite::Cyclic) {
        let para_cap = if h.dim <= 4 { 2 } else { 2 };
        reports.push(check_para_cocyclic(h, para_cap, para_cap)?);
        for n in 1..=coh_cap.min(2) {
            reports.push(cylindrical_check(h, n)?);
        }
        reports.push(check_cyclic_operad(h, arity.min(2), trials.min(30), seed)?);
        reports.push(mixed_complex_check(h, coh_cap)?);
    }
    if want(Suite::Bv) {
        reports.push(bv_suite(h, position_limit)?);
    }
    if want(Suite::FiniteDim) {
        if h.field().characteristic() == 0 {
            let pairs: &[(usize, usize)] = if h.dim <= 4 { &[(1, 1), (1, 2), (2, 2)] } else { &[(1, 1), (1, 2), (2, 2)] };
            reports.push(finite_dim_vanishing_suite(h, pairs, 40, position_limit)?);
        } else {
            let mut rep = VerificationReport::new("finite-dim", h.name.clone(), seed, 0);
            rep.push(gsw_core::report::Clause::skipped(
                "finite-dimensional vanishing",
                "{f, g} exact for cocycles over a characteristic-zero field",
                "hypothesis not met: positive characteristic (heuristic field)",
            ));
            reports.push(rep);
        }
    }

    let mut all_pass = true;
    for rep in &reports {
        println!("suite {} on {}:", rep.suite, rep.algebra);
        for clause in &rep.clauses {
            let status = match clause.status {
                gsw_core::report::ClauseStatus::Pass => "pass",
                gsw_core::report::ClauseStatus::Fail => "FAIL",
                gsw_core::report::ClauseStatus::Skipped => "skipped",
            };
            match &clause.witness {
                Some(w) => println!("  {:38} {status}  [{w}]", clause.name),
                None => println!("  {:38} {status}", clause.name),
            }
        }
        all_pass &= rep.passed();
    }
    write_out(out, &reports)?;
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

/// BV/e₃ suite: defect exactness and well-definedness certificates on the
/// computed cocycle bases.
fn bv_suite<F: Field>(h: &HopfAlgebra<F>, position_limit: u128) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::new("bv", h.name.clone(), 0, 0);
    if !h.flags.involutive {
        rep.push(gsw_core::report::Clause::skipped(
            "BV defect exactness",
            "{f,g} + (-1)^p Bf~g + f~Bg - (-1)^p B(f~g) is exact",
            "hypothesis not met: S^2 != id",
        ));
        return Ok(rep);
    }
    let coh = cohomology(h, ComplexKind::Diagonal, 2, position_limit)?;
    let mut witness = None;
    let mut tested = 0usize;
    for (dp, dq) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let zp: Vec<_> = coh.cocycle_bases[dp].iter().take(6).collect();
        let zq: Vec<_> = coh.cocycle_bases[dq].iter().take(6).collect();
        if zp.is_empty() || zq.is_empty() {
            continue;
        }
        let n = dp + dq - 1;
        let delta = delta_diag_matrix(h, n - 1)?;
        let solver = ColumnSolver::new(&delta);
        for f in &zp {
            for g in &zq {
                tested += 1;
                let (_, pre) = bv_defect(h, f, g, Some(&solver))?;
                if pre.is_none() {
                    witness = Some(format!("degrees ({dp}, {dq})"));
                }
            }
        }
    }
    rep.push(gsw_core::report::Clause::from_witness(
        "BV defect exactness",
        "{f,g} + (-1)^p Bf~g + f~Bg - (-1)^p B(f~g) is exact",
        witness.map(|w| format!("{w} ({tested} pairs tested)")),
    ));

    // e₃ well-definedness: {{f, δx}} is exact
    let mut witness = None;
    if !coh.cocycle_bases[2].is_empty() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let x = gsw_core::cochain::random_cochain(h.field(), h.dim, 1, 1, &mut rng);
        let db = gsw_core::gs::delta_diag(h, 1)?.apply(&x)?;
        let f = &coh.cocycle_bases[2][0];
        let out = e3_bracket(h, f, &db)?;
        if out.arity()? > 0 && is_coboundary(h, &out)?.is_none() {
            witness = Some("{{f, coboundary}} not exact".into());
        }
    }
    rep.push(gsw_core::report::Clause::from_witness(
        "degree -2 bracket well-definedness",
        "{{f, delta x}} is exact",
        witness,
    ));
    Ok(rep)
}
