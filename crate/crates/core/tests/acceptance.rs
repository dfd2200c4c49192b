//! Acceptance suite: one test per criterion, each quantified exhaustively at
//! its stated bounds with exact integer equality (zero tolerance).
//!
//! Run with `cargo test -p pfin --test acceptance -- --nocapture` to see the
//! one-line pass report per criterion.

use std::time::Instant;

use pfin::aut::{classify_phi, descriptors, identify, shift_order};
use pfin::oracle::{
    check_centrality, check_composition_table, enumerate_corpus, run_all, surjectivity_witness,
    OracleConfig,
};
use pfin::structure::{decompose, hom_extract, DecompositionKind, HomDescriptor};
use pfin::{AutElem, Family, FinSet, Sign};

fn corpus_sets(lo: i64, hi: i64, max_size: usize) -> Vec<FinSet> {
    enumerate_corpus(lo, hi, max_size)
        .unwrap()
        .sets()
        .to_vec()
}

#[test]
fn criterion_01_endomorphism_suite() {
    let started = Instant::now();
    let sets = corpus_sets(-3, 3, 3);
    let ds = descriptors(2);
    assert_eq!(ds.len(), 20);
    let mut checks = 0u64;
    for e in &ds {
        let images: Vec<FinSet> = sets.iter().map(|x| e.apply(x).unwrap()).collect();
        for (i, x) in sets.iter().enumerate() {
            for (j, y) in sets.iter().enumerate() {
                let lhs = e.apply(&x.sumset(y).unwrap()).unwrap();
                let rhs = images[i].sumset(&images[j]).unwrap();
                assert_eq!(lhs, rhs, "e={e}, X={x}, Y={y}");
                checks += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(checks, 20 * 63 * 63);
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!(
        "[PASS] criterion 1: endomorphism law, {checks} checks in {} ms",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_02_composition_table_oracle() {
    let started = Instant::now();
    let ds = descriptors(3);
    assert_eq!(ds.len(), 28);
    let sets = corpus_sets(-3, 3, 3);
    let mut checks = 0u64;
    for e1 in &ds {
        for e2 in &ds {
            let closed = e1.compose(e2);
            for x in &sets {
                let direct = e1.apply(&e2.apply(x).unwrap()).unwrap();
                assert_eq!(closed.apply(x).unwrap(), direct, "e1={e1}, e2={e2}, X={x}");
                checks += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(checks, 28 * 28 * 63);
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    // the packaged suite must agree
    let report = check_composition_table(3, &enumerate_corpus(-3, 3, 3).unwrap());
    assert!(report.passed());
    println!(
        "[PASS] criterion 2: composition table, 784 descriptor pairs, {checks} checks in {} ms",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_03_interval_sandwich() {
    let started = Instant::now();
    let sets = corpus_sets(-3, 3, 3);
    let neg_step = FinSet::new([-1, 0]).unwrap();
    let pos_step = FinSet::new([0, 1]).unwrap();
    let mut checks = 0u64;
    for h in 0..=6i64 {
        for k in 0..=6i64 {
            let folded = neg_step
                .k_fold(h as u32)
                .unwrap()
                .sumset(&pos_step.k_fold(k as u32).unwrap())
                .unwrap();
            assert_eq!(folded, FinSet::interval(-h, k).unwrap(), "h={h}, k={k}");
            checks += 1;
        }
    }
    for x in &sets {
        let spread = x.max() - x.min();
        for m in 0..=6i64 {
            for n in 0..=6i64 {
                if spread > m + n {
                    continue;
                }
                let lhs = FinSet::interval(-m, n).unwrap().sumset(x).unwrap();
                let rhs = FinSet::interval(-m + x.min(), n + x.max()).unwrap();
                assert_eq!(lhs, rhs, "m={m}, n={n}, X={x}");
                checks += 1;
                if m >= x.min() && n >= -x.max() {
                    let folded = neg_step
                        .k_fold((m - x.min()) as u32)
                        .unwrap()
                        .sumset(&pos_step.k_fold((n + x.max()) as u32).unwrap())
                        .unwrap();
                    assert_eq!(folded, lhs, "m={m}, n={n}, X={x}");
                    checks += 1;
                }
            }
        }
    }
    println!(
        "[PASS] criterion 3: interval sandwich identities, {checks} checks in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_04_delta_calculus() {
    let started = Instant::now();
    let sets = corpus_sets(-4, 4, 4);
    assert_eq!(sets.len(), 255);
    let mut checks = 0u64;
    for x in &sets {
        for k in -3..=3i64 {
            let shifted = x.translate(k).unwrap();
            assert_eq!(shifted.delta_minus(), x.delta_minus(), "X={x}, k={k}");
            assert_eq!(
                shifted.delta_plus(),
                x.delta_plus() + 2 * k as i128,
                "X={x}, k={k}"
            );
            checks += 2;
        }
        for alpha in -3..=3i64 {
            let g = AutElem::new(Sign::Plus, Family::G, alpha);
            let image = g.apply(x).unwrap();
            assert_eq!(image.delta_minus(), x.delta_minus(), "α={alpha}, X={x}");
            assert_eq!(
                image.delta_plus(),
                2 * alpha as i128 * x.delta_minus() - x.delta_plus(),
                "α={alpha}, X={x}"
            );
            checks += 2;
        }
    }
    println!(
        "[PASS] criterion 4: delta calculus, {checks} checks in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_05_classification() {
    let started = Instant::now();
    let sets = corpus_sets(-3, 3, 3);
    let preimage_sets = corpus_sets(-6, 6, 4);
    assert_eq!(preimage_sets.len(), 1092);
    let mut accepted = 0u64;
    let mut rejected = 0u64;
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            let is_automorphism = a + b == 0 || a + b == -2;
            for sign in [Sign::Plus, Sign::Minus] {
                match classify_phi(sign, a, b) {
                    Ok(e) => {
                        assert!(is_automorphism, "classify accepted a={a}, b={b}");
                        accepted += 1;
                        let phi = pfin::PhiAB::new(a, b);
                        for x in &sets {
                            let mut expected = phi.apply(x).unwrap();
                            if sign == Sign::Minus {
                                expected = expected.negate().unwrap();
                            }
                            assert_eq!(e.apply(x).unwrap(), expected, "e={e}, X={x}");
                        }
                    }
                    Err(rejection) => {
                        assert!(!is_automorphism, "classify rejected a={a}, b={b}");
                        rejected += 1;
                        if sign == Sign::Minus {
                            continue;
                        }
                        let target = surjectivity_witness(a, b, 3)
                            .expect("rejected coefficients must yield a witness");
                        assert_eq!(target, rejection.witness, "a={a}, b={b}");
                        let phi = pfin::PhiAB::new(a, b);
                        for x in &preimage_sets {
                            if let Ok(image) = phi.apply(x) {
                                assert_ne!(
                                    image, target,
                                    "target {target} reachable from {x} under phi_({a},{b})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    // 11 pairs on the line a+b = 0, 9 on a+b = −2, times two signs
    assert_eq!(accepted, 2 * (11 + 9));
    assert_eq!(rejected, 2 * (121 - 20));
    println!(
        "[PASS] criterion 5: classification with unreachable-target witnesses, \
         {accepted} accepted / {rejected} rejected descriptors in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_06_group_structure() {
    let started = Instant::now();
    // (a) conjugation: φ ∘ f_α ∘ φ⁻¹ = f_α for φ in F, f_{−α} for φ in G
    let mut conjugation_checks = 0u64;
    for beta in shift_order(5) {
        for alpha in shift_order(5) {
            let shift = AutElem::new(Sign::Plus, Family::F, alpha);
            let in_f = AutElem::new(Sign::Plus, Family::F, beta);
            assert_eq!(in_f.conjugate(&shift), shift, "φ=f[{beta}], α={alpha}");
            let in_g = AutElem::new(Sign::Plus, Family::G, beta);
            assert_eq!(
                in_g.conjugate(&shift),
                AutElem::new(Sign::Plus, Family::F, -alpha),
                "φ=g[{beta}], α={alpha}"
            );
            conjugation_checks += 2;
        }
    }

    // (b) the central involution is −g_0, and provably not −f_0
    let central = check_centrality(&AutElem::central(), 5);
    assert!(central.passed(), "{:?}", central.failures.first());
    let negation = check_centrality(&AutElem::augment(Sign::Minus), 5);
    assert!(!negation.passed());
    let witness = &negation.failures[0];
    assert!(witness.inputs.contains("e=f[1]"), "{}", witness.inputs);

    // (c) coordinates in the sign × dihedral product: bijective and
    // multiplicative on |shift| <= 5
    let ds = descriptors(5);
    assert_eq!(ds.len(), 44);
    for (i, e1) in ds.iter().enumerate() {
        assert_eq!(e1.to_z2dih().to_aut(), *e1);
        for e2 in &ds[i + 1..] {
            assert_ne!(e1.to_z2dih(), e2.to_z2dih(), "{e1} vs {e2}");
        }
    }
    let mut pair_checks = 0u64;
    for e1 in &ds {
        for e2 in &ds {
            assert_eq!(
                e1.compose(e2).to_z2dih(),
                e1.to_z2dih() * e2.to_z2dih(),
                "{e1} ∘ {e2}"
            );
            pair_checks += 1;
        }
    }
    assert_eq!(pair_checks, 44 * 44);
    println!(
        "[PASS] criterion 6: group structure (conjugation {conjugation_checks} checks, \
         centrality witness '{}', isomorphism {pair_checks} pairs) in {} ms",
        witness.inputs,
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_07_inverse_and_torsion() {
    let started = Instant::now();
    let probes = corpus_sets(-2, 2, 3);
    let mut checks = 0u64;
    for e in descriptors(5) {
        let inv = e.inverse();
        assert_eq!(e.compose(&inv), AutElem::identity(), "{e}");
        assert_eq!(inv.compose(&e), AutElem::identity(), "{e}");
        for x in &probes {
            assert_eq!(e.apply(&inv.apply(x).unwrap()).unwrap(), *x, "{e}, X={x}");
            checks += 1;
        }

        let is_involution = e.power(2) == AutElem::identity();
        let expected = match (e.sign, e.family) {
            (Sign::Plus, Family::F) => e.shift == 0,
            (Sign::Plus, Family::G) | (Sign::Minus, Family::F) => true,
            (Sign::Minus, Family::G) => e.shift == 0,
        };
        assert_eq!(is_involution, expected, "torsion of {e}");
        if e.sign == Sign::Minus && e.family == Family::G && e.shift != 0 {
            assert_eq!(
                e.power(2),
                AutElem::new(Sign::Plus, Family::F, -2 * e.shift),
                "{e}"
            );
            for n in 1..=6 {
                assert_ne!(e.power(n), AutElem::identity(), "{e}^{n}");
            }
        }
        checks += 3;
    }
    println!(
        "[PASS] criterion 7: inverse table and torsion, {checks} checks in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_08_decomposition_round_trip() {
    let started = Instant::now();
    let sets = corpus_sets(-3, 3, 3);
    let mut checks = 0u64;
    for e in descriptors(4) {
        let mut bb = |x: &FinSet| e.apply(x).ok();
        let dec = decompose(&mut bb).unwrap_or_else(|err| panic!("decompose({e}): {err}"));
        for x in &sets {
            assert_eq!(dec.eval(x).unwrap(), e.apply(x).unwrap(), "{e}, X={x}");
            checks += 1;
        }
        let reclassified = match dec.kind {
            DecompositionKind::Id => classify_phi(Sign::Plus, dec.a - 1, dec.b),
            DecompositionKind::Rev => classify_phi(Sign::Minus, -dec.a, -(dec.b + 1)),
        };
        assert_eq!(reclassified, Ok(e), "factorization of {e} reclassifies");
    }
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            let hom = HomDescriptor { a, b };
            let mut bb = |x: &FinSet| hom.eval(x);
            assert_eq!(hom_extract(&mut bb).unwrap(), hom, "a={a}, b={b}");
            checks += 1;
        }
    }
    println!(
        "[PASS] criterion 8: decomposition and homomorphism extraction, \
         {checks} checks in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_09_identify_probe_budget() {
    let started = Instant::now();
    let ds = descriptors(10);
    assert_eq!(ds.len(), 84);
    for e in &ds {
        let mut calls = 0u32;
        let mut bb = |x: &FinSet| {
            calls += 1;
            e.apply(x).ok()
        };
        let recovered = identify(&mut bb).unwrap_or_else(|err| panic!("identify({e}): {err}"));
        assert_eq!(recovered, *e);
        // decode probes plus the fixed 50-set verification sweep
        assert!(calls <= 4 + 50, "{e} used {calls} black-box calls");
    }
    println!(
        "[PASS] criterion 9: identify recovers all 84 descriptors within the probe budget \
         in {} ms",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let started = Instant::now();
    let config = OracleConfig {
        mutate: true,
        ..OracleConfig::default()
    };
    let reports = run_all(&config);
    for report in &reports {
        assert!(
            report.passed(),
            "suite {} failed: {:?}",
            report.suite,
            report.failures.first()
        );
    }
    let detection = reports
        .iter()
        .find(|r| r.suite == "mutation_detection")
        .expect("mutation suite must run under --mutate");
    assert_eq!(detection.checks, 3);
    for needle in [
        "corrupted table entry",
        "sign rule without shift conjugation",
        "central element claimed as -f[0]",
    ] {
        let note = detection
            .notes
            .iter()
            .find(|n| n.contains(needle))
            .unwrap_or_else(|| panic!("no witness note for mutation '{needle}'"));
        assert!(note.starts_with("caught ["), "{note}");
        assert!(note.contains("failed on"), "witness missing in: {note}");
    }
    println!(
        "[PASS] criterion 10: all {} suites green and every mutation caught with a witness \
         in {} ms",
        reports.len(),
        started.elapsed().as_millis()
    );
}
