//! Acceptance suite: one test per certified property, each printing a
//! PASS line with the measured values.  Everything is integer-exact; no
//! tolerances beyond the stated bounds.

use cosetnet_core::automata::determinize::trim;
use cosetnet_core::automata::enumerate::{count_by_length, enumerate_raw, is_empty};
use cosetnet_core::automata::ops::completion_distance;
use cosetnet_core::automata::{CompSym, MultiTapeAutomaton, PAD};
use cosetnet_core::cayley::{Ball, BallAlphabet};
use cosetnet_core::conelang::acceptor::{geodesic_acceptor, validate_acceptor};
use cosetnet_core::conelang::cone_types::compute_cone_types;
use cosetnet_core::conelang::ln::{build_p, build_tower, inner_product, TowerParams};
use cosetnet_core::conelang::quadruples::{build_r, build_r_c, build_r_prime_c};
use cosetnet_core::conelang::word_difference::build_with_doubling;
use cosetnet_core::groups::{GroupFamily, GroupOracle};
use cosetnet_core::net::pipeline::{run_analysis, AnalysisConfig};
use cosetnet_core::words::{Symbol, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn ball_for(family: GroupFamily, radius: u32) -> (GroupOracle, Ball) {
    let oracle = GroupOracle::new(family).unwrap();
    let ball = Ball::build(&oracle, BallAlphabet::for_oracle(&oracle), radius).unwrap();
    (oracle, ball)
}

/// Criterion 1: the automaton-built transversal language equals brute force
/// exactly on the length-6 ball for free(2) with H = <a>, within the
/// runtime budget.
#[test]
fn acceptance_01_oracle_equivalence() {
    let start = Instant::now();
    let config = AnalysisConfig::new(GroupFamily::Free { rank: 2 }, "a", 6);
    let outcome = run_analysis(&config).unwrap();
    let report = &outcome.report;
    assert!(report.automaton_available, "{:?}", report.automaton_error);
    assert_eq!(report.oracle_agreement, Some(true));
    assert_eq!(report.first_discrepancy, None);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: automaton S == brute-force S on B(6) for free:2/<a> ({} elements, {elapsed:?})",
        report.s_size
    );
}

/// Criterion 2: net defect 1 at every radius 2..=8 for free(2)/<a>; constant
/// stabilized defect for free(2)/<ab>.
#[test]
fn acceptance_02_net_certification() {
    for radius in 2..=8 {
        let mut config = AnalysisConfig::new(GroupFamily::Free { rank: 2 }, "a", radius);
        config.geometry_only = true;
        let outcome = run_analysis(&config).unwrap();
        assert_eq!(
            outcome.report.net_defect,
            Some(1),
            "radius {radius}: {:?}",
            outcome.report
        );
        assert!(outcome.report.net_stabilized, "radius {radius}");
    }
    let mut stabilized = Vec::new();
    for radius in 4..=8 {
        let mut config = AnalysisConfig::new(GroupFamily::Free { rank: 2 }, "ab", radius);
        config.geometry_only = true;
        let outcome = run_analysis(&config).unwrap();
        if outcome.report.net_stabilized {
            stabilized.push((radius, outcome.report.net_defect.unwrap()));
        }
    }
    assert!(
        stabilized.len() >= 3,
        "expected several stabilized radii, got {stabilized:?}"
    );
    let defect = stabilized[0].1;
    assert!(
        stabilized.iter().all(|&(_, d)| d == defect),
        "defect not constant once stabilized: {stabilized:?}"
    );
    println!(
        "ACCEPTANCE 2 PASS: defect 1 for free:2/<a> at R in 2..=8; free:2/<ab> constant defect {defect} at {stabilized:?}"
    );
}

/// Criterion 3: with C1 = 4 delta + 2 K + 8 = 8 for the free pair, the
/// same-coset slack stays within C1 and the S slices are single points.
#[test]
fn acceptance_03_same_coset_bound() {
    let config = AnalysisConfig::new(GroupFamily::Free { rank: 2 }, "a", 6);
    let outcome = run_analysis(&config).unwrap();
    let report = &outcome.report;
    assert_eq!(report.c1_formula, 8);
    assert_eq!(report.c1_used, 8);
    assert!(report.lemma_slack_max <= 8);
    assert_eq!(report.s_coset_diameter_max, 0);
    println!(
        "ACCEPTANCE 3 PASS: max slack {} <= C1 = 8; S-slice diameter {}",
        report.lemma_slack_max, report.s_coset_diameter_max
    );
}

/// Criterion 4: the junction-cancellation identity
/// <x,y> + <xy,z> - <y,z> = <x,yz> holds exactly for 1000 seeded random
/// triples per family and exhaustively on B(2).
#[test]
fn acceptance_04_induction_identity() {
    let families = [
        (GroupFamily::Free { rank: 2 }, 6u32),
        (GroupFamily::FreeAbelian { rank: 2 }, 6),
        (GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 6),
        (GroupFamily::Surface { genus: 2 }, 3),
    ];
    let check = |oracle: &GroupOracle, x: &Word, y: &Word, z: &Word| {
        let xy = oracle.multiply(x, y).unwrap();
        let yz = oracle.multiply(y, z).unwrap();
        let lhs = inner_product(oracle, x, y).unwrap()
            + inner_product(oracle, &xy, z).unwrap()
            - inner_product(oracle, y, z).unwrap();
        let rhs = inner_product(oracle, x, &yz).unwrap();
        assert_eq!(lhs, rhs, "x={x:?} y={y:?} z={z:?}");
    };
    for (family, radius) in families {
        let (oracle, ball) = ball_for(family, radius);
        let mut rng = StdRng::seed_from_u64(0);
        let n = ball.len() as u32;
        for _ in 0..1000 {
            let x = ball.key(rng.random_range(0..n));
            let y = ball.key(rng.random_range(0..n));
            let z = ball.key(rng.random_range(0..n));
            check(&oracle, x, y, z);
        }
        for x in ball.ball(2) {
            for y in ball.ball(2) {
                for z in ball.ball(2) {
                    check(&oracle, ball.key(x), ball.key(y), ball.key(z));
                }
            }
        }
        println!("ACCEPTANCE 4 PASS: junction identity exact for {family} (1000 random + B(2) exhaustive)");
    }
}

/// Criterion 5: five cone types for free(2), stable across signature radii
/// 1..=3; the geodesic acceptor agrees with brute-force geodesy up to length
/// 10; geodesic counts are 4 * 3^(n-1).
#[test]
fn acceptance_05_cone_types_and_acceptor() {
    let (oracle, ball) = ball_for(GroupFamily::Free { rank: 2 }, 6);
    for k in [1, 2, 3] {
        let table = compute_cone_types(&ball, &oracle, k).unwrap();
        assert_eq!(table.class_count(), 5, "k = {k}");
    }
    let table = compute_cone_types(&ball, &oracle, 1).unwrap();
    let lambda = geodesic_acceptor(&table, &ball).unwrap();
    // Oracle lengths certify geodesy at any length for the family's own
    // letters, so the acceptor is checked over all of B(10).
    let bad = validate_acceptor(&lambda, &ball, &oracle, 10).unwrap();
    assert_eq!(
        bad.as_ref().map(|w| w.to_text(oracle.alphabet())),
        None
    );
    let counts = count_by_length(&lambda, 10).unwrap();
    for (n, &count) in counts.iter().enumerate() {
        let expect = if n == 0 { 1 } else { 4 * 3usize.pow(n as u32 - 1) };
        assert_eq!(count, expect, "length {n}");
    }
    let (_, big) = ball_for(GroupFamily::Free { rank: 2 }, 10);
    assert_eq!(big.len(), counts.iter().sum::<usize>());
    println!("ACCEPTANCE 5 PASS: 5 cone types stable for k in 1..=3; acceptor exact on B(10); counts 4*3^(n-1)");
}

/// Criterion 6: the single-letter classification partitions the geodesic
/// language with P_1 empty in free groups and (b, b) in L_1 for fpc:2,3;
/// the quadruple and sextuple machines agree with their brute-force
/// definitions to convolution length 5.
#[test]
fn acceptance_06_lemma_5b_internals() {
    // P-partition for free(2).
    let (oracle, ball) = ball_for(GroupFamily::Free { rank: 2 }, 6);
    let table = compute_cone_types(&ball, &oracle, 1).unwrap();
    let lambda = geodesic_acceptor(&table, &ball).unwrap();
    for letter in ['a', 'b'] {
        let c = oracle.alphabet().symbol_by_name(letter).unwrap();
        let (m_c, _) =
            build_with_doubling(&ball, &oracle, &lambda, &Word::single(c), 2, 3).unwrap();
        let p = build_p(&table, &lambda, &m_c, c, 100_000).unwrap();
        assert!(is_empty(&p[1]), "P1({letter}) nonempty in a free group");
        for word in enumerate_raw(&lambda, 5, 1_000_000).unwrap() {
            let hits: usize = p.iter().map(|part| usize::from(part.run(&word))).sum();
            assert_eq!(hits, 1, "partition failure at {word:?}");
        }
    }

    // (b, b) in L_1 for fpc:2,3.
    let (fpc, fpc_ball) = ball_for(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 8);
    let fpc_table = compute_cone_types(&fpc_ball, &fpc, 2).unwrap();
    let fpc_lambda = geodesic_acceptor(&fpc_table, &fpc_ball).unwrap();
    let tower = build_tower(
        &fpc_ball,
        &fpc,
        &fpc_table,
        &fpc_lambda,
        1,
        TowerParams {
            state_cap: 500_000,
            difference_bound: 2,
            difference_bound_cap: 4,
        },
    )
    .unwrap();
    let wb = Word::parse("b", fpc.alphabet()).unwrap();
    let enc = MultiTapeAutomaton::encode_delayed_pair(&wb, &wb);
    assert!(tower.levels[1].run(&enc));

    // R against its brute-force definition, convolution length <= 5.
    let r = build_r(&table, &ball, &lambda).unwrap();
    let accepted: std::collections::BTreeSet<Vec<CompSym>> =
        enumerate_raw(&r, 5, 2_000_000).unwrap().into_iter().collect();
    let expected = expected_r_encodings(&oracle, &ball, 5, None);
    assert_eq!(accepted, expected, "R mismatch");

    // R'_c for c = a, against the sextuple definition.
    let c = oracle.alphabet().symbol_by_name('a').unwrap();
    let r_c = build_r_c(&r, c).unwrap();
    let (m_c, _) = build_with_doubling(&ball, &oracle, &lambda, &Word::single(c), 2, 3).unwrap();
    let r_prime = build_r_prime_c(&r_c, &m_c).unwrap();
    let accepted6: std::collections::BTreeSet<Vec<CompSym>> = enumerate_raw(&r_prime, 5, 2_000_000)
        .unwrap()
        .into_iter()
        .collect();
    let expected6 = expected_r_prime_encodings(&oracle, &ball, 5, c);
    assert_eq!(accepted6, expected6, "R'_c mismatch");
    println!(
        "ACCEPTANCE 6 PASS: P partitions with P1 empty (free); (b,b) in L1 (fpc); R has {} and R'_a {} tuples agreeing with brute force to length 5",
        expected.len(),
        expected6.len()
    );
}

/// All valid R-encodings (x, y, z, w) with timeline at most `maxlen`,
/// optionally restricted to w starting with a given letter.
fn expected_r_encodings(
    oracle: &GroupOracle,
    ball: &Ball,
    maxlen: usize,
    w_first: Option<Symbol>,
) -> std::collections::BTreeSet<Vec<CompSym>> {
    let mut out = std::collections::BTreeSet::new();
    for x in 0..ball.len() as u32 {
        for y in 0..ball.len() as u32 {
            let xw = ball.word(x);
            let yw = ball.word(y);
            if xw.len() + yw.len() > maxlen {
                continue;
            }
            // Largest i with x y_1..y_i geodesic.
            let mut split = 0;
            for i in 0..=yw.len() {
                let mut prefix = xw.clone();
                for &s in &yw.symbols()[..i] {
                    prefix.push(s);
                }
                if oracle.length(&prefix).unwrap() == prefix.len() {
                    split = i;
                } else {
                    break;
                }
            }
            if let Some(first) = w_first {
                if yw.symbols().get(split) != Some(&first) {
                    continue;
                }
            }
            out.insert(encode_quadruple(xw, yw, split));
        }
    }
    out
}

fn encode_quadruple(x: &Word, y: &Word, split: usize) -> Vec<CompSym> {
    let timeline = x.len() + y.len();
    (0..timeline)
        .map(|t| {
            let xe = x.symbols().get(t).map_or(PAD, |s| s.0);
            let ye = if t >= x.len() {
                y.symbols().get(t - x.len()).map_or(PAD, |s| s.0)
            } else {
                PAD
            };
            let ze = if t < x.len() {
                x.symbols()[t].0
            } else if t < x.len() + split {
                y.symbols()[t - x.len()].0
            } else {
                PAD
            };
            let we = if t >= x.len() + split {
                y.symbols().get(t - x.len()).map_or(PAD, |s| s.0)
            } else {
                PAD
            };
            CompSym(vec![xe, ye, ze, we])
        })
        .collect()
}

fn expected_r_prime_encodings(
    oracle: &GroupOracle,
    ball: &Ball,
    maxlen: usize,
    c: Symbol,
) -> std::collections::BTreeSet<Vec<CompSym>> {
    let mut out = std::collections::BTreeSet::new();
    for quad in expected_r_encodings(oracle, ball, maxlen, Some(c)) {
        // Decode z from the quadruple, compute z' = nf(z c) and the shifted
        // w', and re-encode on the same timeline.
        let z: Vec<u16> = quad.iter().map(|s| s.0[2]).filter(|&v| v != PAD).collect();
        let mut z_word = Word(z.iter().map(|&v| Symbol(v)).collect());
        z_word.push(c);
        let z_prime = oracle.normal_form(&z_word).unwrap();
        let mut first_w_seen = false;
        let sextuple: Vec<CompSym> = quad
            .iter()
            .enumerate()
            .map(|(t, sym)| {
                let zp = z_prime.symbols().get(t).map_or(PAD, |s| s.0);
                let w_entry = sym.0[3];
                let wp = if w_entry != PAD && !first_w_seen {
                    first_w_seen = true;
                    PAD
                } else {
                    w_entry
                };
                let mut v = sym.0.clone();
                v.push(zp);
                v.push(wp);
                CompSym(v)
            })
            .collect();
        out.insert(sextuple);
    }
    out
}

/// Criterion 7: the completion distance of every constructed transversal
/// acceptor is bounded by its minimal state count; it equals 1 for the
/// free(2)/<a> pair.
#[test]
fn acceptance_07_completion_distance() {
    let pairs = [
        (GroupFamily::Free { rank: 2 }, "a", 6u32),
        (GroupFamily::Free { rank: 2 }, "ab", 6),
        (GroupFamily::FreeProductCyclic { m: 2, n: 3 }, "b", 8),
    ];
    for (family, subgroup, radius) in pairs {
        let config = AnalysisConfig::new(family, subgroup, radius);
        let outcome = run_analysis(&config).unwrap();
        let report = &outcome.report;
        assert!(report.automaton_available, "{family}/{subgroup}: {:?}", report.automaton_error);
        let s = outcome.s_language.as_ref().unwrap();
        let states = trim(&s.automaton).state_count() as u32;
        let distance = completion_distance(&s.automaton).unwrap();
        assert!(
            distance <= states,
            "{family}/{subgroup}: completion {distance} > {states} states"
        );
        if subgroup == "a" {
            assert_eq!(distance, 1);
        }
        println!(
            "ACCEPTANCE 7 PASS: {family}/<{subgroup}> completion distance {distance} <= {states} states"
        );
    }
}

/// Criterion 8: the free-abelian counterexample has strictly increasing
/// defect with unit increments for radii 3..=8.
#[test]
fn acceptance_08_counterexample_growth() {
    let mut config = AnalysisConfig::new(GroupFamily::FreeAbelian { rank: 2 }, "x", 8);
    config.geometry_only = true;
    let outcome = run_analysis(&config).unwrap();
    let report = &outcome.report;
    assert!(!report.net_stabilized, "the axis transversal must not certify");
    let by_radius: std::collections::BTreeMap<u32, u32> = report
        .defect_rows
        .iter()
        .map(|row| (row.radius, row.defect))
        .collect();
    for radius in 3..=8u32 {
        let d = by_radius[&radius];
        let prev = by_radius[&(radius - 1)];
        assert_eq!(d - prev, 1, "radius {radius}: {d} vs {prev}");
    }
    println!(
        "ACCEPTANCE 8 PASS: zfree:2/<x> defect grows {:?}, flagged NOT-A-NET",
        (2..=8u32).map(|r| by_radius[&r]).collect::<Vec<_>>()
    );
}

/// Criterion 9: the induced action moves section points by at most
/// C1 + 2|g| for every g in B(2), for both hyperbolic pairs at radius 6.
#[test]
fn acceptance_09_action_displacement() {
    for subgroup in ["a", "ab"] {
        let mut config = AnalysisConfig::new(GroupFamily::Free { rank: 2 }, subgroup, 6);
        config.geometry_only = true;
        let outcome = run_analysis(&config).unwrap();
        let report = &outcome.report;
        assert_eq!(report.action_within_bound, Some(true), "subgroup {subgroup}");
        println!(
            "ACCEPTANCE 9 PASS: free:2/<{subgroup}> action displacement {} within C1 + 2|g| (max bound {})",
            report.action_displacement_max.unwrap(),
            report.action_bound.unwrap()
        );
    }
}

/// Criterion 10: identical configs with different worker counts produce
/// byte-identical artifacts.
#[test]
fn acceptance_10_determinism() {
    use cosetnet_cli::commands::analyze;
    use cosetnet_cli::config::{Mode, RunConfig};
    let tmp = std::env::temp_dir().join(format!("cosetnet-acc10-{}", std::process::id()));
    let mut outputs = Vec::new();
    for workers in [1usize, 4] {
        let config = RunConfig {
            group: "free:2".into(),
            subgroup: "a".into(),
            radius: 5,
            signature_radius: None,
            difference_bound: None,
            c1: None,
            mode: Mode::Sampled(2000),
            diagnostic: false,
            seed: 0,
            workers,
            outdir: tmp.join(format!("w{workers}")),
        };
        let code = analyze::run(&config).unwrap();
        assert_eq!(code, 0);
        let dir = config.artifact_dir();
        let mut files: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .filter(|name| name != "config.txt")
            .collect();
        files.sort();
        let blobs: Vec<(String, Vec<u8>)> = files
            .into_iter()
            .map(|name| {
                let bytes = std::fs::read(dir.join(&name)).unwrap();
                (name, bytes)
            })
            .collect();
        outputs.push(blobs);
    }
    assert_eq!(outputs[0].len(), outputs[1].len());
    for (a, b) in outputs[0].iter().zip(outputs[1].iter()) {
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1, "file {} differs between worker counts", a.0);
    }
    let count = outputs[0].len();
    std::fs::remove_dir_all(&tmp).ok();
    println!("ACCEPTANCE 10 PASS: {count} artifact files byte-identical across worker counts");
}
