//! Acceptance gate: one PASS/FAIL line per criterion, with pinned limits.
//!
//! Runs as a plain binary (`harness = false`) so the report is always shown.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use adjminor::classify::{has_quadratic_gb, is_prime, MarkChoice, Marking};
use adjminor::fiber::{bfs_fiber, margins, ConnectivityOracle, ConnectivityStatus, Move, Table};
use adjminor::fixtures::Fixture;
use adjminor::grid::{
    classify_shape, component_graph, connected_components, detect_motifs, free_minors,
    is_chessboard, is_special,
};
use adjminor::groebner::{
    configuration_basis, configuration_generators, marked_order, member, nonradical_witness_check,
    reduced_basis, saturate, BinomialElement, VariableRanking, DEFAULT_DEGREE_CAP,
    DEFAULT_SATURATION_CAP,
};
use adjminor::primes::{
    admissible_sets, component_contains, inner_minors, minimal_primes, prime_component,
    prime_component_with, InnerRegion, DEFAULT_ADMISSIBLE_CAP,
};
use adjminor::{Cell, Configuration, GeneralMinor, UnitMinor};

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(id: &str, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(Ok(d)) if elapsed <= limit => (true, d),
        Ok(Ok(d)) => (false, format!("{d}; over time limit")),
        Ok(Err(e)) => (false, e),
        Err(p) => (
            false,
            p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()),
        ),
    };
    println!(
        "{} [{id}] {name} ({:.2}s, limit {}s): {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn minor_set(f: &Fixture, list: &[&str]) -> BTreeSet<BTreeSet<adjminor::Monomial>> {
    list.iter().map(|s| unsigned(&labelled(f, s))).collect()
}

fn inner_set(inner: &BTreeSet<GeneralMinor>) -> BTreeSet<BTreeSet<adjminor::Monomial>> {
    inner
        .iter()
        .map(|g| unsigned(&BinomialElement::from_minor(g)))
        .collect()
}

fn letters(f: &Fixture, w: &str) -> BTreeSet<Cell> {
    w.chars().map(|c| f.cell(&c.to_string())).collect()
}

fn golden_decomposition() -> Outcome {
    let f = fx("CFG-PLUS");
    let expected: Vec<(&str, Vec<&str>)> = vec![
        (
            "",
            vec![
                "ik-hl", "fi-ej", "ek-dl", "fh-dj", "eh-di", "fg-cj", "eg-ci", "dg-ch", "bk-al",
                "bh-ai", "bd-ae",
            ],
        ),
        ("dehi", vec![]),
        ("adhij", vec![]),
        ("defhk", vec![]),
        ("cdeil", vec![]),
        ("beghi", vec![]),
        ("adhk", vec!["ej-fi"]),
        ("cdef", vec!["hl-ik"]),
        ("beil", vec!["ch-dg"]),
        ("ghij", vec!["ae-bd"]),
    ];
    let want: BTreeSet<(BTreeSet<Cell>, BTreeSet<BTreeSet<adjminor::Monomial>>)> = expected
        .iter()
        .map(|(w, g)| (letters(&f, w), minor_set(&f, g)))
        .collect();
    let primes = minimal_primes(&f.config, DEFAULT_ADMISSIBLE_CAP).map_err(|e| e.to_string())?;
    let got: BTreeSet<_> = primes
        .iter()
        .map(|p| (p.w().clone(), inner_set(p.inner())))
        .collect();
    check(primes.len() == 10, format!("{} components", primes.len()))?;
    check(got == want, "component set differs from the expected ten")?;
    for p in &primes {
        let alt = prime_component_with(&f.config, p.w(), InnerRegion::AvoidingMinors)
            .map_err(|e| e.to_string())?;
        check(
            alt.inner() == p.inner(),
            "inner-minor region modes disagree",
        )?;
    }
    Ok("10 components match, both region modes agree".into())
}

fn golden_inner() -> Outcome {
    let f = fx("CFG-L");
    let v = f.config.vertex_set();
    let all = inner_minors(&v);
    let p0 = [
        "af-be", "aj-bi", "ej-fi", "ag-ce", "bg-cf", "di-eh", "dj-fh",
    ];
    check(
        inner_set(&all) == minor_set(&f, &p0),
        "P_0 generators differ",
    )?;
    let dh = letters(&f, "dh");
    let region: BTreeSet<Cell> = v.difference(&dh).copied().collect();
    let pdh = ["af-be", "aj-bi", "ej-fi", "ag-ce", "bg-cf"];
    check(
        inner_set(&inner_minors(&region)) == minor_set(&f, &pdh),
        "P_{d,h} generators differ",
    )?;
    let via = prime_component(&f.config, &dh).map_err(|e| e.to_string())?;
    check(
        inner_set(via.inner()) == minor_set(&f, &pdh),
        "prime_component mismatch",
    )?;
    Ok("7 and 5 inner minors as listed".into())
}

fn saturation_equal(c: &Configuration) -> Result<bool, String> {
    let r = VariableRanking::for_configuration(c);
    let gens = configuration_generators(c);
    let gb = reduced_basis(&gens, &r, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
    let sat = saturate(&gens, &r, DEFAULT_SATURATION_CAP).map_err(|e| e.to_string())?;
    Ok(gb.elements() == sat.as_slice())
}

fn primality() -> Outcome {
    check(is_prime(&cfg(&[(1, 1)])), "single box")?;
    check(is_prime(&cfg(&[(1, 1), (2, 2)])), "diagonal pair")?;
    check(
        is_prime(&cfg(&[(1, 1), (2, 2), (3, 3), (1, 3)])),
        "chessboard tree",
    )?;
    check(is_prime(&cfg(&[(1, 1), (1, 3), (3, 1)])), "disjoint boxes")?;
    check(!is_prime(&cfg(&[(1, 1), (1, 2)])), "edge-sharing pair")?;
    check(
        !is_prime(&cfg(&[(1, 1), (2, 1)])),
        "vertical edge-sharing pair",
    )?;
    check(!is_prime(&fx("CFG-RING4").config), "CFG-RING4")?;
    let configs = grid_configurations(3);
    check(configs.len() == 511, "511 configurations")?;
    let mut prime = 0;
    for c in &configs {
        let oracle = saturation_equal(c)?;
        check(
            oracle == is_prime(c),
            format!(
                "oracle disagrees on {:?}",
                adjminor::format::configuration_to_json(c)
            ),
        )?;
        prime += oracle as usize;
    }
    Ok(format!(
        "fixtures ok; 511/511 agree with the saturation oracle ({prime} prime)"
    ))
}

fn certified(c: &Configuration) -> Result<bool, String> {
    let Some(cert) = has_quadratic_gb(c).map_err(|e| e.to_string())? else {
        return Ok(false);
    };
    check(cert.verified, "unverified certificate")?;
    check(cert.marking.marks_pairwise_coprime(), "marks not coprime")?;
    let marks: BTreeMap<UnitMinor, bool> = cert
        .marking
        .iter()
        .map(|(m, ch)| (*m, *ch == MarkChoice::Diagonal))
        .collect();
    check(marks_initial(c, &marks, &cert.ranking), "marks not initial")?;
    check(
        s_pairs_reduce_to_zero(&configuration_generators(c), &cert.ranking),
        "an S-pair does not reduce to zero",
    )?;
    Ok(true)
}

fn quadratic() -> Outcome {
    let fixtures: Vec<(&str, Configuration)> = vec![
        ("CFG-L", fx("CFG-L").config),
        ("CFG-RING4", fx("CFG-RING4").config),
        ("strip1", cfg(&[(1, 1)])),
        ("strip2", cfg(&[(1, 1), (1, 2)])),
        ("strip3", cfg(&[(1, 1), (1, 2), (1, 3)])),
        ("strip4", cfg(&[(1, 1), (1, 2), (1, 3), (1, 4)])),
        ("vstrip4", cfg(&[(1, 1), (2, 1), (3, 1), (4, 1)])),
        ("staircase", cfg(&[(1, 3), (1, 4), (2, 4)])),
        (
            "ne-staircase",
            cfg(&[(3, 1), (2, 1), (2, 2), (1, 2), (1, 3)]),
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (name, c) in &fixtures {
        let t = Instant::now();
        check(certified(c)?, format!("{name}: no certificate"))?;
        slowest = slowest.max(t.elapsed());
    }
    check(slowest < Duration::from_secs(1), "a fixture took over 1s")?;
    let mut motif_configs = 0;
    for c in grid_configurations(3) {
        let has = certified(&c)?;
        if !detect_motifs(&c).is_empty() {
            motif_configs += 1;
            check(!has, "certificate for a configuration with a motif")?;
        }
        check(
            has == some_coprime_marking(&c).is_some(),
            format!(
                "marking oracle disagrees on {}",
                adjminor::format::configuration_to_json(&c)
            ),
        )?;
    }
    let mut notes = Vec::new();
    for name in ["CFG-FIG11-L", "CFG-FIG11-R"] {
        let c = fx(name).config;
        let got = certified(&c)?;
        let oracle = some_coprime_marking(&c).is_some();
        check(got == oracle, format!("{name}: marking oracle disagrees"))?;
        notes.push(format!("{name}={}", if got { "quadratic" } else { "none" }));
    }
    Ok(format!(
        "{} fixtures certified (slowest {:.3}s); {motif_configs} motif configurations rejected; 511 agree with the all-markings oracle; {}",
        fixtures.len(),
        slowest.as_secs_f64(),
        notes.join(", ")
    ))
}

fn witnesses() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &mut dyn FnMut() -> Result<bool, String>| -> Result<bool, String> {
        let t = Instant::now();
        let r = f()?;
        slowest = slowest.max(t.elapsed());
        Ok(r)
    };
    let pin = fx("CFG-PIN");
    let q = labelled(&pin, "acej-bcfh");
    check(
        timed(&mut || {
            nonradical_witness_check(&pin.config, &q, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())
        })?,
        "CFG-PIN witness",
    )?;
    let cyc = fx("CFG-CYC8");
    let f = labelled(&cyc, "bbhino-abhjno");
    check(
        timed(&mut || {
            nonradical_witness_check(&cyc.config, &f, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())
        })?,
        "CFG-CYC8 witness",
    )?;
    let ring = fx("CFG-RING4");
    let gb = configuration_basis(
        &ring.config,
        &VariableRanking::for_configuration(&ring.config),
        DEFAULT_DEGREE_CAP,
    )
    .map_err(|e| e.to_string())?;
    check(
        member(&labelled(&ring, "bchjk-afghl"), &gb).map_err(|e| e.to_string())?,
        "h(bcjk-afgl) should lie in I",
    )?;
    check(
        !member(&labelled(&ring, "bcjk-afgl"), &gb).map_err(|e| e.to_string())?,
        "bcjk-afgl should not lie in I",
    )?;
    check(slowest < Duration::from_secs(30), "a witness took over 30s")?;
    Ok(format!(
        "pin and 8-cycle witnesses certified, ring memberships confirmed (slowest {:.3}s)",
        slowest.as_secs_f64()
    ))
}

/// Monotone paths of up to four boxes, up to translation.
fn small_monotone_paths() -> Vec<Configuration> {
    let mut out = BTreeSet::new();
    for c in grid_configurations(4) {
        if c.len() > 4 || connected_components(&c).len() != 1 {
            continue;
        }
        let r0 = c.iter().map(|m| m.anchor.row).min().unwrap();
        let c0 = c.iter().map(|m| m.anchor.col).min().unwrap();
        if r0 != 1 || c0 != 1 {
            continue;
        }
        if classify_shape(&c).unwrap().kind.is_monotone() {
            out.insert(c);
        }
    }
    out.into_iter().collect()
}

fn saturation_law() -> Outcome {
    let mut configs = vec![fx("CFG-L").config];
    configs.extend(small_monotone_paths());
    for c in &configs {
        let r = VariableRanking::for_configuration(c);
        let sat = saturate(&configuration_generators(c), &r, DEFAULT_SATURATION_CAP)
            .map_err(|e| e.to_string())?;
        let inner: Vec<BinomialElement> = inner_minors(&c.vertex_set())
            .iter()
            .map(BinomialElement::from_minor)
            .collect();
        let want = reduced_basis(&inner, &r, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        check(
            want.elements() == sat.as_slice(),
            format!("mismatch on {}", adjminor::format::configuration_to_json(c)),
        )?;
    }
    Ok(format!(
        "{} configurations (CFG-L and all monotone paths of length <= 4)",
        configs.len()
    ))
}

/// All tables on `cells` with total at most `max_total`.
fn tables_up_to(cells: &[Cell], max_total: u64) -> Vec<Table> {
    fn go(cells: &[Cell], left: u64, acc: &mut Vec<(Cell, u64)>, out: &mut Vec<Table>) {
        match cells.split_first() {
            None => out.push(Table::new(acc.iter().copied())),
            Some((c, rest)) => {
                for v in 0..=left {
                    acc.push((*c, v));
                    go(rest, left - v, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(cells, max_total, &mut Vec::new(), &mut out);
    out
}

fn connectivity() -> Outcome {
    let f = fx("CFG-L");
    let oracle = ConnectivityOracle::new(&f.config).map_err(|e| e.to_string())?;
    let sets: BTreeSet<BTreeSet<Cell>> = oracle
        .primes()
        .iter()
        .filter(|p| !p.w().is_empty())
        .map(|p| p.w().clone())
        .collect();
    let want: BTreeSet<BTreeSet<Cell>> = ["aei", "bfj", "efgi", "befi", "defg", "bdef"]
        .iter()
        .map(|w| letters(&f, w))
        .collect();
    check(sets == want, "inequality sets differ")?;

    let cells: Vec<Cell> = f.config.vertex_set().into_iter().collect();
    let mut classes: BTreeMap<String, Vec<Table>> = BTreeMap::new();
    for t in tables_up_to(&cells, 6) {
        let key = format!("{:?}", margins(&t, &f.config).map_err(|e| e.to_string())?);
        classes.entry(key).or_default().push(t);
    }
    let mut pairs = 0usize;
    for class in classes.values() {
        let mut fiber_of: BTreeMap<Table, usize> = BTreeMap::new();
        for t in class {
            if fiber_of.contains_key(t) {
                continue;
            }
            let id = fiber_of.len();
            for u in bfs_fiber(&f.config, t, 1_000_000).map_err(|e| e.to_string())? {
                fiber_of.insert(u, id);
            }
        }
        for t in class {
            for u in class {
                let verdict = oracle.decide(t, u, None).map_err(|e| e.to_string())?;
                let reachable = fiber_of[t] == fiber_of[u];
                let said = match verdict.status {
                    ConnectivityStatus::Connected => true,
                    ConnectivityStatus::Disconnected => false,
                    ConnectivityStatus::Unknown => return Err("Unknown verdict on CFG-L".into()),
                };
                check(
                    said == reachable,
                    format!("criterion disagrees with search on {t:?} / {u:?}"),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "six inequality sets recovered; {pairs} equal-margin pairs agree with search"
    ))
}

fn runner() -> TestRunner {
    let config = Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn anchors_in(n: u32, max: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::btree_set((1..=n, 1..=n), 1..=max)
        .prop_map(|s| cfg(&s.into_iter().collect::<Vec<_>>()))
}

/// Drops every box sharing an edge with an earlier kept box.
fn chessboard_from(c: &Configuration) -> Configuration {
    let mut kept: Vec<UnitMinor> = Vec::new();
    for m in c.iter() {
        if kept.iter().all(|k| !k.shares_edge(m)) {
            kept.push(*m);
        }
    }
    kept.into_iter().collect()
}

fn properties() -> Outcome {
    let mut report = Vec::new();
    let mut prop = |name: &str,
                    f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>|
     -> Result<(), String> {
        f(&mut runner()).map_err(|e| format!("{name}: {e}"))?;
        report.push(name.to_string());
        Ok(())
    };

    prop("marked order", &mut |r| {
        r.run(
            &anchors_in(5, 12).prop_flat_map(|c| {
                let n = c.len();
                (Just(c), prop::collection::vec(any::<bool>(), n))
            }),
            |(c, bits)| {
                let mut marking = Marking::new();
                let mut marks = BTreeMap::new();
                for (m, b) in c.iter().zip(&bits) {
                    marking.set(
                        *m,
                        if *b {
                            MarkChoice::Diagonal
                        } else {
                            MarkChoice::AntiDiagonal
                        },
                    );
                    marks.insert(*m, *b);
                }
                let ranking =
                    marked_order(&c, &marking).map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert!(marks_initial(&c, &marks, &ranking));
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
    })?;

    prop("free minors", &mut |r| {
        r.run(&anchors_in(6, 14), |c| {
            let c = chessboard_from(&c);
            prop_assume!(c.len() >= 2 && component_graph(&c).four_cycle().is_none());
            prop_assert!(is_chessboard(&c));
            prop_assert!(free_minors(&c).len() >= 2);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    prop("margin preservation", &mut |r| {
        r.run(
            &anchors_in(4, 8).prop_flat_map(|c| {
                let n = c.vertex_set().len();
                let k = c.len();
                (
                    Just(c),
                    prop::collection::vec(0u64..4, n),
                    0..k,
                    any::<bool>(),
                )
            }),
            |(c, values, idx, plus)| {
                prop_assume!(is_special(&c));
                let t = Table::new(c.vertex_set().into_iter().zip(values));
                let mv = Move {
                    minor: *c.iter().nth(idx).unwrap(),
                    sign: if plus { 1 } else { -1 },
                };
                if let Some(u) = mv.apply(&t) {
                    prop_assert_eq!(margins(&t, &c).unwrap(), margins(&u, &c).unwrap());
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
    })?;

    prop("admissible sets", &mut |r| {
        r.run(&anchors_in(4, 4), |c| {
            prop_assume!(c.vertex_set().len() <= 12);
            let got: BTreeSet<BTreeSet<Cell>> = admissible_sets(&c, DEFAULT_ADMISSIBLE_CAP)
                .unwrap()
                .into_iter()
                .map(|s| s.cells().clone())
                .collect();
            prop_assert_eq!(got, brute_admissible(&c));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    prop("containment order", &mut |r| {
        r.run(&anchors_in(3, 5), |c| {
            prop_assume!(is_special(&c));
            let comps: Vec<_> = admissible_sets(&c, DEFAULT_ADMISSIBLE_CAP)
                .unwrap()
                .iter()
                .map(|w| prime_component(&c, w.cells()).unwrap())
                .collect();
            let n = comps.len().min(24);
            let le = |i: usize, j: usize| component_contains(&comps[i], &comps[j]).unwrap();
            for i in 0..n {
                prop_assert!(le(i, i));
                for j in 0..n {
                    if i != j && le(i, j) && le(j, i) {
                        prop_assert_eq!(comps[i].w(), comps[j].w());
                    }
                    for k in 0..n {
                        if le(i, j) && le(j, k) {
                            prop_assert!(le(i, k));
                        }
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    prop("basis uniqueness", &mut |r| {
        r.run(
            &anchors_in(3, 6).prop_flat_map(|c| {
                let gens = configuration_generators(&c);
                let vars: Vec<Cell> = c.vertex_set().into_iter().collect();
                (
                    Just(c),
                    Just(gens).prop_shuffle(),
                    Just(vars).prop_shuffle(),
                )
            }),
            |(c, shuffled, order)| {
                let ranking = VariableRanking::new(order).unwrap();
                let a = reduced_basis(&configuration_generators(&c), &ranking, DEFAULT_DEGREE_CAP)
                    .unwrap();
                let b = reduced_basis(&shuffled, &ranking, DEFAULT_DEGREE_CAP).unwrap();
                prop_assert_eq!(a, b);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
    })?;

    Ok(format!(
        "{} suites x 128 cases: {}",
        report.len(),
        report.join(", ")
    ))
}

fn main() {
    let results = [
        run(
            "1",
            "golden decomposition of CFG-PLUS",
            Duration::from_secs(5),
            golden_decomposition,
        ),
        run(
            "2",
            "golden inner minors of CFG-L",
            Duration::from_secs(1),
            golden_inner,
        ),
        run(
            "3",
            "primality fixtures and 3x3 saturation oracle",
            Duration::from_secs(600),
            primality,
        ),
        run(
            "4",
            "quadratic Groebner basis fixtures",
            Duration::from_secs(600),
            quadratic,
        ),
        run(
            "5",
            "non-radicality witnesses",
            Duration::from_secs(90),
            witnesses,
        ),
        run(
            "6",
            "saturation law for monotone paths",
            Duration::from_secs(60),
            saturation_law,
        ),
        run(
            "7",
            "connectivity criterion vs fiber search on CFG-L",
            Duration::from_secs(300),
            connectivity,
        ),
        run("8", "property suites", Duration::from_secs(600), properties),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
