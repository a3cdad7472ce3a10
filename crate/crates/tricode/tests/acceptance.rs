//! Acceptance suite: one test per criterion, each printing a PASS line.
//! All arithmetic is over integers and GF(2), so every comparison is exact.

mod common;

use common::{cycle_subsets_oracle, max_even_dimension, naive_perfect_matchings, random_code};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use tricode::complex::{Triangle, TriangularConfiguration};
use tricode::enumerator::split_by_degree;
use tricode::gadgets;
use tricode::matchreduce::{enumerate_perfect_matchings, reduce};
use tricode::represent::{pipeline, recover_weight_enumerator, represent_code, PipelineOutput};
use tricode::BinaryCode;

struct Case {
    code: BinaryCode,
    out: PipelineOutput,
}

/// 200 random codes, n <= 10 and d <= 5, half forced even, pipelines run
/// once and shared across criteria.
fn corpus() -> &'static [Case] {
    static CORPUS: OnceLock<Vec<Case>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut rng = ChaCha20Rng::seed_from_u64(0x7415eed);
        let mut cases = Vec::with_capacity(200);
        for i in 0..200 {
            let force_even = i % 2 == 0;
            let n = rng.gen_range(1..=10);
            let d_cap = if force_even {
                max_even_dimension(n).min(5)
            } else {
                n.min(5)
            };
            let d = rng.gen_range(0..=d_cap);
            let code = random_code(&mut rng, n, d, force_even);
            let out = pipeline(&code).expect("pipeline runs within guards");
            cases.push(Case { code, out });
        }
        cases
    })
}

#[test]
fn criterion_1_pipeline_equals_direct_enumeration() {
    let mut even = 0;
    for case in corpus() {
        let direct = case.code.weight_enumerator().unwrap();
        assert_eq!(
            case.out.weight_enumerator,
            direct,
            "code n={} d={}",
            case.code.length(),
            case.code.dimension()
        );
        even += usize::from(case.code.is_even());
    }
    assert!(
        (50..=150).contains(&even),
        "corpus must mix even and odd codes"
    );
    println!(
        "acceptance 1 PASS: pipeline equals direct enumeration on 200 random codes ({even} even)"
    );
}

#[test]
fn criterion_2_bijection_onto_cycle_space() {
    for case in corpus() {
        let report = case.out.representation.verify_bijection().unwrap();
        assert!(report.passed(), "code n={}: {report:?}", case.code.length());
        assert_eq!(
            report.kernel_dimension,
            case.code.dimension(),
            "kernel dimension must equal the code dimension"
        );
    }
    println!(
        "acceptance 2 PASS: cycle space has size 2^d, map injective and minimality-preserving"
    );
}

#[test]
fn criterion_3_weight_law() {
    // The corpus plus one dimension-10 even code, checked over all 2^10
    // codewords.
    let mut rng = ChaCha20Rng::seed_from_u64(0xd10);
    let big = random_code(&mut rng, 12, 10, true);
    let big_out = pipeline(&big).unwrap();
    let extra = [Case {
        code: big,
        out: big_out,
    }];
    for case in corpus().iter().chain(&extra) {
        let rep = &case.out.representation;
        let run_code = rep.code();
        let e = rep.exponent().unwrap();
        for c in run_code.enumerate_codewords().unwrap() {
            let image = rep.map_codeword(&c).unwrap();
            let degree = run_code.degree(&c).unwrap();
            assert_eq!(
                image.weight(),
                c.weight() + degree * e,
                "codeword {} of n={} code",
                c.to_str01(),
                run_code.length()
            );
        }
    }
    println!("acceptance 3 PASS: image weight = weight + degree*e on every codeword");
}

#[test]
fn criterion_4_degree_windows_and_extended_enumerator() {
    for case in corpus() {
        let rep = &case.out.representation;
        let run_code = rep.code();
        let (n, d, e) = (
            run_code.length(),
            run_code.dimension(),
            rep.exponent().unwrap(),
        );
        let recovered = recover_weight_enumerator(&case.out.kernel_enumerator, e, n, d)
            .expect("windows tile the kernel enumerator");

        // Windows are disjoint because e > n; recover() already checked that
        // every kernel exponent lands inside one. Check the identity
        // per-degree against the code-side blocks.
        let words = run_code.enumerate_codewords().unwrap();
        let code_blocks = split_by_degree(
            words
                .iter()
                .map(|w| (w.weight(), run_code.degree(w).unwrap())),
        );
        for (k, block) in code_blocks.iter().enumerate() {
            assert_eq!(
                recovered.degree_blocks[k],
                block.shift_exponents(k * e),
                "degree {k} of n={n} code"
            );
        }
    }
    println!("acceptance 4 PASS: kernel degree windows [ke, ke+n] tile and match code blocks");
}

#[test]
fn criterion_5_gadget_matching_counts() {
    assert_eq!(
        enumerate_perfect_matchings(&gadgets::pyramid().config)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        enumerate_perfect_matchings(&gadgets::closed_tunnel().config)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        enumerate_perfect_matchings(&gadgets::matching_edge().config)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        enumerate_perfect_matchings(&gadgets::matching_triangle().config)
            .unwrap()
            .len(),
        2
    );
    for n in 1..=5usize {
        let base = gadgets::disjoint_triangles(n);
        let ports: Vec<Triangle> = (1..=n).map(|i| base.ports[&format!("B{i}")]).collect();
        let chain = gadgets::chain(&ports).unwrap();
        assert_eq!(
            enumerate_perfect_matchings(&chain.config).unwrap().len(),
            1 << (n - 1),
            "chain({n})"
        );
    }
    println!("acceptance 5 PASS: pyramid 2, closed tunnel 2, edge 2, triangle 2, chain(n) 2^(n-1)");
}

fn reduction_cases() -> Vec<(&'static str, TriangularConfiguration)> {
    let single = TriangularConfiguration::from_triangles(&[[0, 1, 2]]).unwrap();
    let b3 = gadgets::disjoint_triangles(3).config;
    let tetra = gadgets::sphere(4).unwrap().config;
    let sphere6 = gadgets::sphere(6).unwrap().config;
    let rep = represent_code(&BinaryCode::from_rows(&["11"]).unwrap())
        .unwrap()
        .balance()
        .unwrap();
    vec![
        ("single triangle", single),
        ("b3", b3),
        ("tetrahedron", tetra),
        ("sphere(6)", sphere6),
        ("representation d=1", rep.config().clone()),
    ]
}

#[test]
fn criterion_6_reduction_bijection_and_enumerator() {
    for (name, delta) in reduction_cases() {
        let instance = reduce(&delta);
        let cycles = delta.enumerate_cycles().unwrap();
        let matchings = instance.perfect_matchings().unwrap();
        assert_eq!(
            matchings.len(),
            cycles.len(),
            "{name}: perfect matchings must be 2^(cycle dimension)"
        );
        assert_eq!(
            instance.matching_weight_enumerator().unwrap(),
            delta.cycle_weight_enumerator().unwrap(),
            "{name}: P(x) must equal W(x)"
        );
        for cycle in &cycles {
            let m = instance.matching_for_cycle(cycle).unwrap();
            assert!(m.is_perfect(), "{name}");
            assert_eq!(m.weight(instance.weights()), cycle.weight(), "{name}");
            assert_eq!(&instance.cycle_for_matching(&m).unwrap(), cycle, "{name}");
        }
        for m in &matchings {
            let cycle = instance.cycle_for_matching(m).unwrap();
            let back = instance.matching_for_cycle(&cycle).unwrap();
            assert_eq!(back.chosen(), m.chosen(), "{name}");
        }
    }
    println!("acceptance 6 PASS: reductions are bijective and weight-preserving on all five cases");
}

#[test]
fn criterion_7_brute_force_cross_checks() {
    // Cycle enumeration against the subset filter, for every test
    // configuration with at most 12 triangles.
    let shared_edge = TriangularConfiguration::from_triangles(&[[0, 1, 2], [0, 1, 3]]).unwrap();
    let b1_tetra = gadgets::sphere(4)
        .unwrap()
        .config
        .union(&TriangularConfiguration::from_triangles(&[[10, 11, 12]]).unwrap());
    let mut small: Vec<TriangularConfiguration> = reduction_cases()
        .into_iter()
        .map(|(_, cfg)| cfg)
        .filter(|cfg| cfg.triangle_count() <= 12)
        .collect();
    small.push(shared_edge);
    small.push(b1_tetra);
    assert!(small.len() >= 5);
    for cfg in &small {
        let enumerated: BTreeSet<String> = cfg
            .enumerate_cycles()
            .unwrap()
            .iter()
            .map(|v| v.to_str01())
            .collect();
        assert_eq!(enumerated, cycle_subsets_oracle(cfg));
    }

    // Matching enumeration against the naive all-subsets oracle, for every
    // gadget with at most 20 triangles.
    let chain1_ports = gadgets::disjoint_triangles(1);
    let chain1 = gadgets::chain(&[chain1_ports.ports["B1"]]).unwrap();
    for gadget in [
        gadgets::pyramid(),
        gadgets::closed_tunnel(),
        gadgets::matching_edge(),
        chain1,
    ] {
        assert!(gadget.config.triangle_count() <= 20);
        let fast: BTreeSet<BTreeSet<usize>> = enumerate_perfect_matchings(&gadget.config)
            .unwrap()
            .iter()
            .map(|m| m.chosen().clone())
            .collect();
        assert_eq!(fast, naive_perfect_matchings(&gadget.config));
    }
    println!("acceptance 7 PASS: enumerations agree with all-subsets oracles");
}

#[test]
fn criterion_8_exponent_linearity() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xba1a5eed);
    let mut checked = 0;
    for n in 1..=12usize {
        for _ in 0..5 {
            let d = rng.gen_range(0..=max_even_dimension(n).min(5));
            let code = random_code(&mut rng, n, d, true);
            assert!(code.is_even());
            let rep = represent_code(&code).unwrap().balance().unwrap();
            let e = rep.exponent().unwrap();
            assert_eq!(e % 2, 0, "n={n} d={d}: e={e} must be even");
            assert!(n < e, "n={n} d={d}: e={e} must exceed n");
            assert!(e <= 6 * n + 2, "n={n} d={d}: e={e} must be at most 6n+2");
            checked += 1;
        }
    }
    println!("acceptance 8 PASS: n < e <= 6n+2 on {checked} even codes up to length 12");
}
