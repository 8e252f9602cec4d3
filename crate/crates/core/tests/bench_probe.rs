// manual timing probes: cargo test --test bench_probe -- --ignored --nocapture
use std::time::Instant;

use gsw_core::cochain::random_cochain;
use gsw_core::cyclic::{cylindrical_check, mixed_complex_check};
use gsw_core::fixtures::build_q;
use gsw_core::gs::{bicomplex_check, cohomology, ComplexKind};
use gsw_core::operad::{check_operad_axioms, circ};
use gsw_core::Field;
use rand::SeedableRng;

#[test]
#[ignore]
fn probe_ks3_cohomology() {
    let h = build_q("ks3").unwrap();
    let t = Instant::now();
    let coh = cohomology(&h, ComplexKind::Diagonal, 2, gsw_core::DEFAULT_POSITION_LIMIT).unwrap();
    println!("ks3 diag n<=2: {:?}, betti {:?}, kernel dims {:?}",
        t.elapsed(), coh.report.betti_vector(),
        coh.cocycle_bases.iter().map(|b| b.len()).collect::<Vec<_>>());
}

#[test]
#[ignore]
fn probe_duals3_cohomology() {
    let h = build_q("duals3").unwrap();
    let t = Instant::now();
    let coh = cohomology(&h, ComplexKind::Diagonal, 2, gsw_core::DEFAULT_POSITION_LIMIT).unwrap();
    println!("duals3 diag n<=2: {:?}, betti {:?}, kernel dims {:?}",
        t.elapsed(), coh.report.betti_vector(),
        coh.cocycle_bases.iter().map(|b| b.len()).collect::<Vec<_>>());
}

#[test]
#[ignore]
fn probe_circ_22_ks3() {
    let h = build_q("ks3").unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let f = random_cochain(h.field(), 6, 2, 2, &mut rng);
    let g = random_cochain(h.field(), 6, 2, 2, &mut rng);
    let t = Instant::now();
    let _ = circ(&h, &f, 1, &g).unwrap();
    println!("ks3 circ (2,1,2) sparse: {:?}", t.elapsed());
    let t = Instant::now();
    let _ = circ(&h, &f, 2, &g).unwrap();
    println!("ks3 circ (2,2,2) sparse: {:?}", t.elapsed());
}

#[test]
#[ignore]
fn probe_bicomplex_d6() {
    let h = build_q("duals3").unwrap();
    let t = Instant::now();
    let rep = bicomplex_check(&h, 2, 2).unwrap();
    println!("duals3 bicomplex (2,2): {:?}, passed {}", t.elapsed(), rep.passed());
}

#[test]
#[ignore]
fn probe_bicomplex_h4() {
    let h = build_q("h4").unwrap();
    let t = Instant::now();
    let rep = bicomplex_check(&h, 3, 3).unwrap();
    println!("h4 bicomplex (3,3): {:?}, passed {}", t.elapsed(), rep.passed());
}

#[test]
#[ignore]
fn probe_cylindrical_ks3() {
    let h = build_q("ks3").unwrap();
    let t = Instant::now();
    let rep = cylindrical_check(&h, 2).unwrap();
    println!("ks3 cylindrical n=2: {:?}, passed {}", t.elapsed(), rep.passed());
}

#[test]
#[ignore]
fn probe_mixed_ks3() {
    let h = build_q("ks3").unwrap();
    let t = Instant::now();
    let rep = mixed_complex_check(&h, 2).unwrap();
    println!("ks3 mixed n<=2: {:?}, passed {}", t.elapsed(), rep.passed());
}

#[test]
#[ignore]
fn probe_operad_axioms_h4() {
    let h = build_q("h4").unwrap();
    let t = Instant::now();
    let rep = check_operad_axioms(&h, 3, 50, 0).unwrap();
    println!("h4 operad cap3 x50: {:?}, passed {}", t.elapsed(), rep.passed());
}
