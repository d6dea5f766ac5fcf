//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//! All checks are exact; no tolerances anywhere.

mod common;

use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use strad_core::artheory::{almost_split_certify, tau_inverse_string};
use strad_core::field::Rationals;
use strad_core::quiver::build_a_nm;
use strad_core::repmod::is_indecomposable;
use strad_core::strings::{enumerate_strings, find_bands, StringWord};
use strad_core::verify::{igusa_todorov_check, verify_main_theorem, FamilyContext};

const GRID: [(i64, i64); 9] = [
    (2, 0),
    (2, 1),
    (2, 2),
    (3, 0),
    (3, 1),
    (3, 2),
    (4, 0),
    (4, 1),
    (4, 2),
];

const INSTANCE_BUDGET: Duration = Duration::from_secs(60);
const TOTAL_BUDGET: Duration = Duration::from_secs(600);

struct GridCell {
    n: i64,
    m: i64,
    ctx: FamilyContext<Rationals>,
    build_time: Duration,
}

fn grid() -> &'static Vec<GridCell> {
    static CELLS: OnceLock<Vec<GridCell>> = OnceLock::new();
    CELLS.get_or_init(|| {
        GRID.iter()
            .map(|&(n, m)| {
                let t0 = Instant::now();
                let ctx = FamilyContext::build(n, m, Rationals)
                    .unwrap_or_else(|e| panic!("A({n},{m}) context: {e}"));
                GridCell {
                    n,
                    m,
                    ctx,
                    build_time: t0.elapsed(),
                }
            })
            .collect()
    })
}

fn cell(n: i64, m: i64) -> &'static GridCell {
    grid()
        .iter()
        .find(|c| (c.n, c.m) == (n, m))
        .expect("cell in grid")
}

#[test]
fn criterion_1_main_theorem_grid() {
    let mut total = Duration::ZERO;
    for c in grid() {
        let t0 = Instant::now();
        let report = verify_main_theorem(&c.ctx).unwrap();
        let spent = c.build_time + t0.elapsed();
        total += spent;
        assert!(report.pass, "{}", report.render());
        assert_eq!(
            report.long_composite_depth,
            Some((c.n + c.m + 3) as usize),
            "A({},{})",
            c.n,
            c.m
        );
        assert!(report.long_composite_nonzero);
        assert!(
            spent < INSTANCE_BUDGET,
            "A({},{}) took {spent:?}, budget {INSTANCE_BUDGET:?}",
            c.n,
            c.m
        );
    }
    assert!(total < TOTAL_BUDGET, "grid took {total:?}");
    println!(
        "criterion 1: PASS — verify-main on {{2,3,4}}x{{0,1,2}}: depth = n+m+3 everywhere \
         ({total:?} total)"
    );
}

#[test]
fn criterion_2_worked_example_a32() {
    let c = cell(3, 2);
    let chain = &c.ctx.chain;
    let table = c.ctx.table();
    let (_, f3) = chain.map_named("f3").unwrap();
    let (_, f2) = chain.map_named("f2").unwrap();
    let (i1, f1) = chain.map_named("f1").unwrap();

    // f1 . f2 . f3 = 0
    let f_comp = f1.compose(&f2.compose(f3).unwrap()).unwrap();
    assert!(f_comp.is_zero());

    // depth(f1 g5 g4 g3 g2 g1 f2 f3) = 8
    let long = chain.composite().unwrap();
    let src = chain.nodes[0];
    let tgt = chain.nodes[chain.nodes.len() - 1];
    assert_eq!(table.depth(src, tgt, &long).unwrap(), 8);

    // depth(f1') = 1
    let f1p = c.ctx.f1_prime().unwrap();
    assert_eq!(table.depth(chain.nodes[i1], tgt, &f1p).unwrap(), 1);

    // f1' f2 f3 equals the long composite as matrices
    let f1p_chain = f1p.compose(&f2.compose(f3).unwrap()).unwrap();
    assert_eq!(f1p_chain, long);
    assert!(!f1p_chain.is_zero());
    println!(
        "criterion 2: PASS — A(3,2): f1 f2 f3 = 0, depth(f1 g5 g4 g3 g2 g1 f2 f3) = 8, \
         depth(f1') = 1, f1' f2 f3 = long composite"
    );
}

#[test]
fn criterion_3_lemma_one_certified_on_the_grid() {
    for c in grid() {
        let seq = &c.ctx.lemma;
        assert_eq!(
            seq.middles.len(),
            1,
            "A({},{}): middle indecomposable",
            c.n,
            c.m
        );
        let index = c.ctx.ar.index();
        assert!(is_indecomposable(index.rep(seq.middles[0])).unwrap());
        let p1_word = StringWord::parse(c.ctx.pres.clone(), "beta1 ~alpha ~beta1").unwrap();
        assert_eq!(
            index.node_of_word(&p1_word).unwrap(),
            seq.middles[0],
            "A({},{}): middle is M(beta1 ~alpha ~beta1)",
            c.n,
            c.m
        );
        let v1 = c.ctx.pres.quiver.vertex("1").unwrap();
        assert_eq!(index.entry(seq.middles[0]).projective, Some(v1));
        // re-certify through the public oracle and re-check the certificate
        let cert = almost_split_certify(seq, c.ctx.table()).unwrap();
        assert!(cert.verify(seq, c.ctx.table()));
    }
    println!(
        "criterion 3: PASS — 0 -> S(2) -> P(1) -> tau^-1 S(2) -> 0 certified almost split \
         with P(1) = M(beta1 ~alpha ~beta1) on all 9 algebras"
    );
}

#[test]
fn criterion_4_sectional_chain_on_the_grid() {
    for c in grid() {
        let chain = &c.ctx.chain;
        let expected = (c.n + c.m + 3) as usize;
        assert_eq!(chain.len(), expected, "A({},{}) chain length", c.n, c.m);
        for (k, map) in chain.maps.iter().enumerate() {
            let d = c
                .ctx
                .table()
                .depth(chain.nodes[k], chain.nodes[k + 1], map)
                .unwrap();
            assert_eq!(d, 1, "A({},{}): {} irreducible", c.n, c.m, chain.names[k]);
        }
        assert!(c.ctx.ar.is_sectional(&chain.nodes).unwrap());
        assert!(igusa_todorov_check(&c.ctx.ar, &chain.nodes, &chain.maps).unwrap());
    }
    println!(
        "criterion 4: PASS — chains of length n+m+3, every map irreducible, sectional, \
         composite depth exactly n+m+3 on all 9 algebras"
    );
}

#[test]
fn criterion_5_oracle_triangulation() {
    for &(n, m) in &[(2, 0), (2, 1), (3, 2)] {
        let c = cell(n, m);
        let ar = &c.ctx.ar;
        let index = ar.index();
        for x in 0..index.len() {
            let word = &index.entry(x).word;
            let combinatorial = tau_inverse_string(word);
            match ar.tau_inverse(x) {
                Some(z) => {
                    let w = combinatorial.unwrap_or_else(|| {
                        panic!("A({n},{m}): rule says injective at {}", word.render())
                    });
                    assert_eq!(
                        index.node_of_word(&w).unwrap(),
                        z,
                        "A({n},{m}): tau^-1 at {}",
                        word.render()
                    );
                }
                None => assert!(
                    combinatorial.is_none(),
                    "A({n},{m}): certified says injective at {}",
                    word.render()
                ),
            }
        }
        // arrow multiplicities from rad/rad^2 match the mesh structure
        for z in 0..index.len() {
            let Some(tz) = ar.tau(z) else { continue };
            for u in 0..index.len() {
                assert_eq!(
                    ar.arrow_multiplicity(u, z),
                    ar.arrow_multiplicity(tz, u),
                    "A({n},{m}): mesh at {}",
                    index.entry(z).word.render()
                );
            }
        }
        // the middle multiset of every certified sequence equals the
        // multiplicities row of its starting term
        for x in 0..index.len() {
            let Some(seq) = ar.sequence_starting_at(x) else {
                continue;
            };
            let mut from_seq = seq.middles.clone();
            from_seq.sort_unstable();
            let mut from_mults = Vec::new();
            for u in 0..index.len() {
                for _ in 0..ar.arrow_multiplicity(x, u) {
                    from_mults.push(u);
                }
            }
            assert_eq!(
                from_seq,
                from_mults,
                "A({n},{m}): middles at {}",
                index.entry(x).word.render()
            );
        }
    }
    println!(
        "criterion 5: PASS — combinatorial tau^-1 = certified tau^-1 on every node and \
         rad/rad^2 multiplicities match the mesh on A(2,0), A(2,1), A(3,2)"
    );
}

#[test]
fn criterion_6_finite_type_and_counts() {
    for c in grid() {
        let bands = find_bands(&c.ctx.pres);
        assert!(bands.is_empty(), "A({},{})", c.n, c.m);
        // enumeration terminated during context construction; re-run directly
        let words = enumerate_strings(&c.ctx.pres).unwrap();
        assert_eq!(words.len(), c.ctx.ar.index().len());
    }
    // A(3,2): count fixed by the brute-force oracle, consistent with the
    // 30 displayed modules minus the 4 written twice
    let p32 = build_a_nm(3, 2).unwrap();
    let brute = common::naive_string_count(&p32, 10_000);
    assert_eq!(brute, 26);
    assert_eq!(cell(3, 2).ctx.ar.index().len(), brute);
    assert_eq!(30 - 4, brute);
    println!(
        "criterion 6: PASS — no bands on the grid; enumeration terminates; A(3,2) has 26 \
         indecomposables (= brute force = 30 figure glyphs - 4 duplicates)"
    );
}

#[test]
fn criterion_7_property_suites() {
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};
    use std::sync::atomic::{AtomicUsize, Ordering};

    use strad_core::artheory::ar_sequence_starting_at;
    use strad_core::radical::{IndecomposableIndex, RadicalTable};
    use strad_core::repmod::{reversal_isomorphism, string_module};

    const CASES: u32 = 120;
    let ran = Arc::new(AtomicUsize::new(0));
    let counter = ran.clone();
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        max_shrink_iters: 64,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &proptest::collection::vec(any::<u8>(), 0..48),
            move |bytes| {
                let pres = common::algebra_from_bytes(&bytes);
                let index = IndecomposableIndex::build(&pres, Rationals)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                let n = index.len();

                // M(C) iso M(C^{-1}) through the explicit basis reversal
                for e in index.entries() {
                    let sm = string_module(Rationals, &e.word);
                    let iso = reversal_isomorphism(&sm)
                        .map_err(|e| TestCaseError::fail(e.to_string()))?;
                    prop_assert!(iso.is_isomorphism());
                }

                let table =
                    RadicalTable::build(index).map_err(|e| TestCaseError::fail(e.to_string()))?;

                // descending chain, stabilization at zero
                let top = table.nilpotency_index();
                for x in 0..n {
                    for y in 0..n {
                        for t in 1..top {
                            prop_assert!(table.rad_dim(t + 1, x, y) <= table.rad_dim(t, x, y));
                        }
                        prop_assert_eq!(table.rad_dim(top, x, y), 0);
                    }
                }

                // depth sub-additivity on a few composable pairs of basis morphisms
                let mut checked = 0;
                'outer: for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let Some(f) = table.hom_basis_of(x, y).first() else {
                                continue;
                            };
                            let Some(g) = table.hom_basis_of(y, z).first() else {
                                continue;
                            };
                            let comp = g.compose(f).unwrap();
                            if comp.is_zero() {
                                continue;
                            }
                            let df = table.depth(x, y, f).unwrap();
                            let dg = table.depth(y, z, g).unwrap();
                            let dc = table.depth(x, z, &comp).unwrap();
                            prop_assert!(dc >= df + dg, "depth({dc}) < {df} + {dg}");
                            checked += 1;
                            if checked >= 12 {
                                break 'outer;
                            }
                        }
                    }
                }

                // certified sequences: dimension identity, irreducible components
                let mut seen = 0;
                for x in 0..n {
                    if table.index().entry(x).injective.is_some() {
                        continue;
                    }
                    let seq = ar_sequence_starting_at(&table, x)
                        .map_err(|e| TestCaseError::fail(e.to_string()))?;
                    let dims = |i: usize| table.index().rep(i).dims().to_vec();
                    let ld = dims(seq.left);
                    let rd = dims(seq.right);
                    let md: Vec<usize> = (0..ld.len())
                        .map(|v| seq.middles.iter().map(|&mm| dims(mm)[v]).sum())
                        .collect();
                    let sum: Vec<usize> = ld.iter().zip(&rd).map(|(a, b)| a + b).collect();
                    prop_assert_eq!(&md, &sum);
                    for (i, lm) in seq.left_maps.iter().enumerate() {
                        prop_assert_eq!(table.depth(seq.left, seq.middles[i], lm).unwrap(), 1);
                    }
                    for (i, rm) in seq.right_maps.iter().enumerate() {
                        prop_assert_eq!(table.depth(seq.middles[i], seq.right, rm).unwrap(), 1);
                    }
                    seen += 1;
                    if seen >= 3 {
                        break;
                    }
                }

                counter.fetch_add(1, Ordering::Relaxed);
                Ok(())
            },
        )
        .unwrap();
    let total = ran.load(std::sync::atomic::Ordering::Relaxed);
    assert!(total >= 100, "only {total} property cases ran");
    println!(
        "criterion 7: PASS — {total} randomized string algebras: radical chain descends to 0, \
         depth sub-additive, M(C) = M(C^-1), AR dimension identity, components irreducible"
    );
}
