//! Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.
//! Run with `cargo test --test acceptance`.

use std::collections::{BTreeSet, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use regmat::catalogue::{self, GenerateRequest, MatroidClass};
use regmat::enumerate::{generate, ColumnClass};
use regmat::gf2::{invertible_column_tuples, Gf2Matrix};
use regmat::matroid::{BinaryMatroid, GroundSubset};
use regmat::regularity::{fano_witnesses, is_fano, is_fano_dual, is_regular, FanoKind};
use regmat::tutte::{self, TuttePolynomial};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Duration,
    gate: bool,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lines(entries: &[catalogue::CatalogueEntry]) -> Vec<String> {
    entries.iter().map(|e| e.labels.to_string()).collect()
}

fn small_listing() -> Outcome {
    let loopless = catalogue::run_generate(&GenerateRequest::new(3, 4, MatroidClass::Loopless))
        .map_err(|e| e.to_string())?;
    let simple = catalogue::run_generate(&GenerateRequest::new(3, 4, MatroidClass::Simple))
        .map_err(|e| e.to_string())?;
    ensure(
        lines(&loopless) == ["(1,1,2,4)", "(1,2,3,4)", "(1,2,4,7)"],
        || format!("loopless listing {:?}", lines(&loopless)),
    )?;
    ensure(lines(&simple) == ["(1,2,3,4)", "(1,2,4,7)"], || {
        format!("simple listing {:?}", lines(&simple))
    })?;

    for (class, expected) in [
        ("loopless", vec!["(1,1,2,4)", "(1,2,3,4)", "(1,2,4,7)"]),
        ("simple", vec!["(1,2,3,4)", "(1,2,4,7)"]),
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_regmat"))
            .args(["generate", "--rank", "3", "--size", "4", "--class", class])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("CLI exit status {}", out.status)
        })?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let got: Vec<&str> = text
            .lines()
            .map(|l| {
                l.split(' ')
                    .find_map(|t| t.strip_prefix("r="))
                    .unwrap_or("")
            })
            .collect();
        ensure(got == expected, || format!("CLI {class} listing {got:?}"))?;
    }
    Ok("library and CLI listings match exactly".into())
}

/// `(I_5 | A)` on the elements a..n (no j), basis a..e.
const THIRTEEN_ELEMENTS: [&str; 5] = [
    "1000010110110",
    "0100010100011",
    "0010001010100",
    "0001000111011",
    "0000111101100",
];

fn letter(c: char) -> usize {
    "abcdefghiklmn".find(c).expect("element name") + 1
}

fn contraction_example() -> Outcome {
    let rows: Vec<Vec<u8>> = THIRTEEN_ELEMENTS
        .iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect();
    let m = BinaryMatroid::new(Gf2Matrix::from_rows(&rows).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let set = GroundSubset::from_elements([letter('b'), letter('g')]);

    let sf = m.standard_form_containing(set).map_err(|e| e.to_string())?;
    let names: Vec<char> = sf
        .row_labels
        .iter()
        .map(|&e| "abcdefghiklmn".as_bytes()[e - 1] as char)
        .collect();
    ensure(names == ['a', 'b', 'g', 'd', 'e'], || {
        format!("basis rows {names:?}")
    })?;

    let contracted = m.contract_independent(set).map_err(|e| e.to_string())?;
    // Survivors in order: a c d e f h i k l m n.
    let survivors: Vec<char> = "acdefhiklmn".chars().collect();
    let pos = |c: char| survivors.iter().position(|&s| s == c).unwrap();
    let a_star = contracted
        .matrix()
        .select_columns(&"fchiklmn".chars().map(pos).collect::<Vec<_>>());
    let expected = Gf2Matrix::from_rows(&[
        [1u8, 0, 1, 1, 0, 1, 1, 0],
        [0, 0, 1, 1, 1, 0, 1, 1],
        [1, 1, 1, 1, 1, 0, 0, 0],
    ])
    .map_err(|e| e.to_string())?;
    ensure(a_star == expected, || format!("A* = {a_star:?}"))?;
    let unit_cols = ["a", "d", "e"]
        .iter()
        .map(|s| pos(s.chars().next().unwrap()));
    for (i, p) in unit_cols.enumerate() {
        ensure(contracted.matrix().column_bits(p) == 1 << i, || {
            format!("column {p} is not unit {i}")
        })?;
    }

    let simple = contracted.simplify().matroid;
    ensure(is_fano(&simple), || {
        "simplified contraction is not F7".into()
    })?;
    let reg = is_regular(&m).map_err(|e| e.to_string())?;
    ensure(!reg.regular, || "matroid reported regular".into())?;
    let flat = m.closure(set).map_err(|e| e.to_string())?;
    let witnesses = fano_witnesses(&m).map_err(|e| e.to_string())?;
    ensure(
        witnesses
            .iter()
            .any(|w| w.flat == flat && w.kind == FanoKind::Fano),
        || "cl({b,g}) is not among the witnesses".into(),
    )?;
    Ok(format!(
        "A* bit-exact, simplification is F7, not regular (witness {} flat {:?})",
        reg.witness.unwrap().kind,
        reg.witness.unwrap().flat.elements()
    ))
}

/// Edge `i` of the drawn graph joins `EDGES[i-1]`, vertices numbered 0..6.
const EDGES: [(usize, usize); 8] = [
    (2, 3),
    (3, 4),
    (4, 0),
    (0, 1),
    (1, 2),
    (2, 4),
    (5, 2),
    (4, 5),
];

fn polygon_matroid() -> BinaryMatroid {
    // Vertex 5 is dropped from the incidence matrix.
    let cols: Vec<u64> = EDGES
        .iter()
        .map(|&(u, v)| {
            [u, v]
                .iter()
                .filter(|&&x| x < 5)
                .fold(0, |acc, &x| acc ^ 1 << x)
        })
        .collect();
    BinaryMatroid::from_columns(5, &cols).expect("connected graph")
}

fn shorthand(s: &GroundSubset) -> String {
    s.iter().map(|e| e.to_string()).collect()
}

fn polygon_example() -> Outcome {
    let m = polygon_matroid();
    let circuits: BTreeSet<String> = m
        .circuits()
        .map_err(|e| e.to_string())?
        .iter()
        .map(shorthand)
        .collect();
    let expected: BTreeSet<String> = ["126", "678", "1278", "3456", "12345", "34578"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(circuits == expected, || format!("circuits {circuits:?}"))?;
    let bases = tutte::bases(&m);
    ensure(bases.len() == 28, || format!("{} bases", bases.len()))?;
    let t = tutte::tutte_by_activities(&m).map_err(|e| e.to_string())?;
    ensure(tutte::evaluate(&t, 1, 1) == 28, || {
        format!("T(1,1) = {}", tutte::evaluate(&t, 1, 1))
    })?;
    Ok(format!("6 circuits, 28 bases, T = {t}"))
}

/// Orbit key of a column sequence under GL_k(2) x S_n: the least sorted image.
fn orbit_key(cols: &[u64], group: &[Vec<u64>]) -> Vec<u64> {
    group
        .iter()
        .map(|g| {
            let mut image: Vec<u64> = cols
                .iter()
                .map(|&c| {
                    (0..g.len())
                        .filter(|&b| c >> b & 1 == 1)
                        .fold(0, |acc, b| acc ^ g[b])
                })
                .collect();
            image.sort_unstable();
            image
        })
        .min()
        .expect("group is nonempty")
}

fn brute_force_orbits(k: usize, n: usize, simple: bool, group: &[Vec<u64>]) -> usize {
    let labels = (1u64 << k) - 1;
    let mut seen = HashSet::new();
    let mut cols = vec![1u64; n];
    loop {
        let distinct = !simple || cols.iter().collect::<HashSet<_>>().len() == n;
        if distinct && Gf2Matrix::from_columns(k, &cols).unwrap().rank() == k {
            seen.insert(orbit_key(&cols, group));
        }
        // Next tuple in 1..=labels^n.
        let mut i = 0;
        while i < n && cols[i] == labels {
            cols[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        cols[i] += 1;
    }
    seen.len()
}

fn orbit_counts() -> Outcome {
    let mut report = Vec::new();
    for k in 1..=3 {
        let group = invertible_column_tuples(k);
        for n in k..=5 {
            for (class, simple) in [(ColumnClass::Loopless, false), (ColumnClass::Simple, true)] {
                let generated = generate(k, n, class).map_err(|e| e.to_string())?.len();
                let oracle = brute_force_orbits(k, n, simple, &group);
                ensure(generated == oracle, || {
                    format!("k={k} n={n} {class:?}: generated {generated}, oracle {oracle}")
                })?;
                report.push(generated);
            }
        }
    }
    Ok(format!(
        "{} shapes agree, {} classes in total",
        report.len(),
        report.iter().sum::<usize>()
    ))
}

fn fano() -> BinaryMatroid {
    BinaryMatroid::from_columns(3, &[1, 2, 3, 4, 5, 6, 7]).unwrap()
}

fn corpus(max_n: usize, class: MatroidClass) -> Result<Vec<BinaryMatroid>, String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n {
            let mut req = GenerateRequest::new(k, n, class);
            req.force = k > catalogue::MAX_RANK;
            let entries = catalogue::run_generate(&req).map_err(|e| e.to_string())?;
            out.extend(entries.iter().map(|e| e.labels.to_matroid()));
        }
    }
    Ok(out)
}

fn tutte_oracles() -> Outcome {
    let mut matroids = corpus(8, MatroidClass::ConnectedSimple)?;
    matroids.push(fano());
    matroids.push(fano().dual());
    for m in &matroids {
        let a = tutte::tutte_by_activities(m).map_err(|e| e.to_string())?;
        let d = tutte::tutte_by_deletion_contraction(m).map_err(|e| e.to_string())?;
        ensure(a == d, || {
            format!(
                "{:?}: activities {a} vs deletion-contraction {d}",
                m.column_words()
            )
        })?;
    }
    Ok(format!(
        "{} matroids agree coefficient-wise",
        matroids.len()
    ))
}

fn count_sets(m: &BinaryMatroid, pred: impl Fn(usize) -> bool) -> i128 {
    (0..1u64 << m.size())
        .filter(|&mask| pred(m.rank_of(GroundSubset::from_mask(mask))))
        .count() as i128
}

fn identities() -> Outcome {
    let matroids = corpus(8, MatroidClass::Loopless)?;
    for m in &matroids {
        let t = tutte::tutte_by_activities(m).map_err(|e| e.to_string())?;
        let (n, k) = (m.size(), m.rank());
        let id = || format!("{:?}", m.column_words());
        ensure(t.evaluate(2, 2) == 1i128 << n, || {
            format!("{}: T(2,2) = {}", id(), t.evaluate(2, 2))
        })?;
        let independent = (0..1u64 << n)
            .filter(|&mask| m.is_independent(GroundSubset::from_mask(mask)))
            .count() as i128;
        ensure(t.evaluate(2, 1) == independent, || {
            format!("{}: T(2,1) vs {independent}", id())
        })?;
        let spanning = count_sets(m, |r| r == k);
        ensure(t.evaluate(1, 2) == spanning, || {
            format!("{}: T(1,2) vs {spanning}", id())
        })?;
        let dual_t: TuttePolynomial =
            tutte::tutte_by_activities(&m.dual()).map_err(|e| e.to_string())?;
        ensure(dual_t == t.transpose(), || {
            format!("{}: dual polynomial is not the transpose", id())
        })?;
    }
    Ok(format!(
        "{} matroids pass all four identities",
        matroids.len()
    ))
}

/// Exhaustive minor test: some 7-element minor is F7 or F7*.
fn has_fano_minor(m: &BinaryMatroid) -> bool {
    let n = m.size();
    if n < 7 {
        return false;
    }
    (0..1u64 << n)
        .filter(|r| r.count_ones() as usize == n - 7)
        .any(|removed| {
            let removed = GroundSubset::from_mask(removed);
            let mut contract = removed.mask();
            loop {
                let c = GroundSubset::from_mask(contract);
                let minor = m.contract(c).and_then(|mc| {
                    // Elements of `removed \ c` renumbered among the survivors of `M / c`.
                    let survivors: Vec<usize> = (1..=n).filter(|e| !c.contains(*e)).collect();
                    let del = GroundSubset::from_elements(
                        survivors
                            .iter()
                            .enumerate()
                            .filter(|(_, e)| removed.contains(**e))
                            .map(|(p, _)| p + 1),
                    );
                    mc.delete_set(del)
                });
                if let Ok(minor) = minor {
                    if is_fano(&minor) || is_fano_dual(&minor) {
                        return true;
                    }
                }
                if contract == 0 {
                    return false;
                }
                contract = (contract - 1) & removed.mask();
            }
        })
}

fn k4() -> BinaryMatroid {
    // Edges of K4 with vertex 3 dropped.
    BinaryMatroid::from_columns(3, &[0b011, 0b101, 0b001, 0b110, 0b010, 0b100]).unwrap()
}

fn regularity_sanity() -> Outcome {
    let regular = |m: &BinaryMatroid| is_regular(m).map(|r| r.regular).map_err(|e| e.to_string());
    ensure(!regular(&fano())?, || "F7 accepted".into())?;
    ensure(!regular(&fano().dual())?, || "F7* accepted".into())?;
    ensure(regular(&k4())?, || "K4 rejected".into())?;

    let matroids = corpus(8, MatroidClass::Loopless)?;
    let mut accepted = 0;
    for m in &matroids {
        let id = || format!("{:?}", m.column_words());
        let r = regular(m)?;
        ensure(r == regular(&m.dual())?, || {
            format!("{}: dual disagrees", id())
        })?;
        ensure(r == !has_fano_minor(m), || {
            format!("{}: minor oracle disagrees", id())
        })?;
        if !r {
            continue;
        }
        accepted += 1;
        for e in 1..=m.size() {
            let single = GroundSubset::from_elements([e]);
            let deletion = m.delete(e).map_err(|e| e.to_string())?;
            let contraction = m.contract(single).map_err(|e| e.to_string())?;
            ensure(regular(&deletion)?, || {
                format!("{}: deletion of {e} rejected", id())
            })?;
            ensure(regular(&contraction)?, || {
                format!("{}: contraction of {e} rejected", id())
            })?;
        }
    }
    Ok(format!(
        "{} of {} matroids regular; minors, duals and the minor oracle agree",
        accepted,
        matroids.len()
    ))
}

fn scale_run() -> Outcome {
    let mut total = 0;
    for n in 1..=10 {
        for k in 1..=5.min(n) {
            let mut req = GenerateRequest::new(k, n, MatroidClass::ConnectedSimple);
            req.regular_only = true;
            req.with_tutte = true;
            total += catalogue::run_generate(&req)
                .map_err(|e| e.to_string())?
                .len();
        }
    }
    Ok(format!(
        "{total} connected simple regular matroids with Tutte polynomials"
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "1",
            title: "rank 3 size 4 listings",
            limit: Duration::from_secs(1),
            gate: true,
            run: small_listing,
        },
        Criterion {
            id: "2",
            title: "contraction example",
            limit: Duration::from_secs(1),
            gate: true,
            run: contraction_example,
        },
        Criterion {
            id: "3",
            title: "polygon matroid",
            limit: Duration::from_secs(1),
            gate: true,
            run: polygon_example,
        },
        Criterion {
            id: "4",
            title: "orbit counts vs brute force",
            limit: Duration::from_secs(60),
            gate: true,
            run: orbit_counts,
        },
        Criterion {
            id: "5",
            title: "Tutte oracle equivalence",
            limit: Duration::from_secs(300),
            gate: true,
            run: tutte_oracles,
        },
        Criterion {
            id: "6",
            title: "Tutte identity suite",
            limit: Duration::from_secs(300),
            gate: true,
            run: identities,
        },
        Criterion {
            id: "7",
            title: "regularity sanity",
            limit: Duration::from_secs(300),
            gate: true,
            run: regularity_sanity,
        },
        Criterion {
            id: "8",
            title: "scale run k<=5 n<=10 (reported)",
            limit: Duration::from_secs(600),
            gate: false,
            run: scale_run,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > c.limit => ("FAIL", format!("over time limit {:?}", c.limit)),
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        let status = if c.gate || status == "PASS" {
            status
        } else {
            "INFO"
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{}] {} ({:.3}s): {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
