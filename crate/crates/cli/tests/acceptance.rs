//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line to
//! stdout (bypassing the harness capture) and then asserts its verdict.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mortonlab_cli::mortonlab::family::{insert_parallel_bands, whitehead_double};
use mortonlab_cli::mortonlab::homfly::{naive_homfly, Engine};
use mortonlab_cli::mortonlab::morton::{compare_polynomials, morton_defect, PolyMatch};
use mortonlab_cli::mortonlab::random::{random_braid_diagram, random_knot_diagram, random_relabel};
use mortonlab_cli::mortonlab::{
    load_knot_table, seifert_circles, verify_skein_degree_inequalities, Diagram, KnotTable, LaurentPoly1, LaurentPoly2,
    Sign,
};

/// Coefficient comparisons are exact; this is the allowed difference.
const EXACT: i64 = 0;
const GC_GIVEN: i64 = 4;
const EXPECTED_MAXDEG_Z: i32 = 6;
const NMAX: u32 = 5;
const FAMILY_BUDGET: Duration = Duration::from_secs(30 * 60);
const ORACLE_RUNTIME: Duration = Duration::from_secs(5 * 60);
const ORACLE_MAX_CROSSINGS: usize = 7;
const ORACLE_RANDOM: usize = 100;
const SKEIN_PAIRS: usize = 200;
const BOOKKEEPING_TRIPLES: usize = 50;
const BOOKKEEPING_NMAX: u32 = 7;
const WHITEHEAD_MAX_CROSSINGS: usize = 6;
const SEED: u64 = 0x5eed;

/// Two 15-crossing knots and the HOMFLY polynomials claimed for them.
const KNOT_A: &str = "15n100154";
const KNOT_B: &str = "15n167945";
const REFERENCE_A: &str =
    "(v^2+6v^-2)z^6+(-v^4+4v^2+6-5v^-2+v^-4)z^4+(-3v^4+4v^2+10-9v^-2+2v^-4)z^2+(-2v^4+v^2+6-5v^-2+v^-4)";
const REFERENCE_B: &str = "(v^2+v^-2)z^6+(-v^4+2v^2+9-4v^-2-2v^-4)z^4+(-2v^4+12-6v^-2-v^-4+v^-6)z^2+(-v^4-v^2+6-3v^-2)";

fn report(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {criterion}: {verdict} — {detail}\n");
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
}

fn table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/knots.csv")
}

fn table() -> &'static KnotTable {
    static TABLE: OnceLock<KnotTable> = OnceLock::new();
    TABLE.get_or_init(|| load_knot_table(&table_path()).expect("knot table"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mortonlab"))
        .args(args)
        .env_remove("MORTONLAB_CACHE")
        .output()
        .expect("run mortonlab");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// `P(v, v^-1 - v)`, which is 1 for the HOMFLY polynomial of every knot.
fn unit_specialisation(p: &LaurentPoly2) -> LaurentPoly1 {
    // v^a z^b -> v^(a-b) (1 - v^2)^b; keys are doubled exponents.
    let mut acc: BTreeMap<i32, i64> = BTreeMap::new();
    for (a, b, c) in p.terms() {
        let c: i64 = c.try_into().expect("small coefficient");
        assert!(b >= 0, "negative z power in a knot polynomial");
        let mut binom = 1i64;
        for k in 0..=b {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            *acc.entry(2 * (a - b + 2 * k)).or_default() += sign * binom * c;
            binom = binom * (b - k) as i64 / (k + 1) as i64;
        }
    }
    LaurentPoly1::from_terms(acc)
}

fn knot_homfly(name: &str) -> LaurentPoly2 {
    Engine::default().homfly(&table().get(name).unwrap().diagram).unwrap()
}

#[test]
fn criterion_1_reference_polynomials() {
    let one = LaurentPoly1::from_terms([(0, 1)]);
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, reference) in [(KNOT_A, REFERENCE_A), (KNOT_B, REFERENCE_B)] {
        let reference: LaurentPoly2 = reference.parse().unwrap();
        let computed = knot_homfly(name);
        let m = compare_polynomials(&computed, &reference);
        let differing = (&computed - &reference).len().min((&computed.mirror() - &reference).len());
        let ok = m != PolyMatch::Different && differing as i64 <= EXACT;
        pass &= ok;
        let reference_is_knot_poly =
            unit_specialisation(&reference) == one || unit_specialisation(&reference.mirror()) == one;
        notes.push(format!(
            "{name}: {m:?}, {differing} differing terms; reference satisfies P(v,v^-1-v)=1: {reference_is_knot_poly}; computed {computed}"
        ));
    }
    report(1, pass, &notes.join("; "));
    assert!(pass, "{}", notes.join("\n"));
}

#[test]
fn criterion_2_strictness() {
    let engine = Engine::default();
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, reference) in [(KNOT_A, REFERENCE_A), (KNOT_B, REFERENCE_B)] {
        let d = &table().get(name).unwrap().diagram;
        let m = knot_homfly(name).maxdeg_z().unwrap();
        let defect = 2 * GC_GIVEN - m as i64;
        let reference_m = reference.parse::<LaurentPoly2>().unwrap().maxdeg_z().unwrap();
        let ok = m == EXPECTED_MAXDEG_Z && defect == 2 * GC_GIVEN - EXPECTED_MAXDEG_Z as i64;
        pass &= ok;
        let diagram_defect = morton_defect(&engine, d).unwrap();
        notes.push(format!(
            "{name}: maxdeg_z {m} (reference {reference_m}), defect vs g_c={GC_GIVEN}: {defect}, diagram defect {diagram_defect}"
        ));
    }
    report(2, pass, &notes.join("; "));
    assert!(pass, "{}", notes.join("\n"));
}

fn verify_args(name: &str, jobs: &str, format: &str) -> Vec<String> {
    let budget = FAMILY_BUDGET.as_secs().to_string();
    let table = table_path().display().to_string();
    [
        "verify",
        "--table",
        &table,
        "--name",
        name,
        "--gc",
        "4",
        "--crossing",
        "auto",
        "--nmax",
        "5",
        "--budget",
        &budget,
        "--jobs",
        jobs,
        "--format",
        format,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn verify_json(name: &str, jobs: &str) -> (i32, Vec<u8>) {
    let args = verify_args(name, jobs, "json");
    cli(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn criterion_3_family_bound() {
    let start = Instant::now();
    let mut pass = false;
    let mut notes = Vec::new();
    for name in [KNOT_A, KNOT_B] {
        let g = seifert_circles(&table().get(name).unwrap().diagram)
            .unwrap()
            .diagram_genus;
        let (code, out) = verify_json(name, "1");
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        let knot_rows: Vec<String> = rows
            .iter()
            .filter(|r| r["n"] == 3 || r["n"] == 5)
            .map(|r| format!("M(L{})={}<{}", r["n"], r["maxdeg_z"], r["bound"]))
            .collect();
        let strict = code == 0 && rows.len() == NMAX as usize + 1 && rows.iter().all(|r| r["strict"] == true);
        let obstructions = v["obstructions"].as_array().unwrap();
        if g != GC_GIVEN {
            assert!(
                !obstructions.is_empty(),
                "{name}: genus-{g} diagram without a reported obstruction"
            );
            notes.push(format!(
                "{name}: obstruction reported: {}",
                obstructions
                    .iter()
                    .map(|o| o.as_str().unwrap())
                    .collect::<Vec<_>>()
                    .join(" / ")
            ));
        } else {
            pass |= strict;
            notes.push(format!(
                "{name}: genus-{g} diagram, crossing {} ({}), hypothesis {}, all rows strict: {strict}, {}",
                v["crossing"],
                v["crossing_sign"],
                v["hypothesis"],
                knot_rows.join(" ")
            ));
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= FAMILY_BUDGET;
    notes.push(format!("{:.1}s", elapsed.as_secs_f64()));
    report(3, pass, &notes.join("; "));
    assert!(pass, "{}", notes.join("\n"));
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut corpus: Vec<(String, Diagram)> = table()
        .iter()
        .filter(|e| e.diagram.crossing_count() <= ORACLE_MAX_CROSSINGS)
        .map(|e| (e.name.clone(), e.diagram.clone()))
        .collect();
    let from_table = corpus.len();
    for k in 0..ORACLE_RANDOM {
        let d = random_braid_diagram(&mut rng, 4, ORACLE_MAX_CROSSINGS);
        corpus.push((format!("random{k}"), random_relabel(&d, &mut rng)));
    }
    let engine = Engine::default();
    let mismatches: Vec<&str> = corpus
        .iter()
        .filter(|(_, d)| engine.homfly(d).unwrap() != naive_homfly(d).unwrap())
        .map(|(n, _)| n.as_str())
        .collect();
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed <= ORACLE_RUNTIME;
    let detail = format!(
        "{} diagrams ({from_table} table, {ORACLE_RANDOM} random), {} mismatches {:?}, {:.1}s",
        corpus.len(),
        mismatches.len(),
        mismatches,
        elapsed.as_secs_f64()
    );
    report(4, pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_5_skein_inequalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let engine = Engine::default();
    let mut failures = Vec::new();
    let mut checked = 0;
    while checked < SKEIN_PAIRS {
        let d = random_braid_diagram(&mut rng, 5, 12);
        if d.crossing_count() == 0 {
            continue;
        }
        let i = rng.gen_range(0..d.crossing_count());
        if !verify_skein_degree_inequalities(&engine, &d, i).unwrap() {
            failures.push(format!("{} @ {i}", d.to_pd_string()));
        }
        checked += 1;
    }
    let pass = failures.is_empty();
    let detail = format!("{checked} pairs, {} failures", failures.len());
    report(5, pass, &detail);
    assert!(pass, "{detail}: {failures:?}");
}

#[test]
fn criterion_6_bookkeeping() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut failures = Vec::new();
    let mut checked = 0;
    while checked < BOOKKEEPING_TRIPLES {
        let d = if rng.gen_bool(0.5) {
            random_knot_diagram(&mut rng, 5, 12)
        } else {
            random_braid_diagram(&mut rng, 5, 12)
        };
        let Ok(base) = seifert_circles(&d) else { continue };
        let eligible = base.eligible_crossings();
        if eligible.is_empty() {
            continue;
        }
        let i = eligible[rng.gen_range(0..eligible.len())];
        let n = rng.gen_range(0..=BOOKKEEPING_NMAX);
        let ln = insert_parallel_bands(&d, i, n).unwrap();
        let l0 = d.smooth_crossing(i).unwrap();
        let s = seifert_circles(&ln)
            .map(|x| x.num_circles)
            .unwrap_or_else(|_| count_circles_split(&ln));
        let mut ok = s == base.num_circles && ln.crossing_count() + 1 == d.crossing_count() + n as usize;
        if n % 2 == 1 {
            let m = (n as i64 - 1) / 2;
            let g = seifert_circles(&ln).unwrap().diagram_genus;
            ok &= g == base.diagram_genus + m && ln.num_components() == d.num_components();
        } else {
            ok &= ln.num_components() == l0.num_components();
        }
        if !ok {
            failures.push(format!("{} crossing {i} n {n}", d.to_pd_string()));
        }
        checked += 1;
    }
    let pass = failures.is_empty();
    let detail = format!("{checked} triples, {} failures", failures.len());
    report(6, pass, &detail);
    assert!(pass, "{detail}: {failures:?}");
}

/// Seifert circle count of a possibly split diagram, summed over pieces.
fn count_circles_split(d: &Diagram) -> usize {
    let (pieces, loops) = d.split_pieces();
    pieces
        .iter()
        .map(|p| seifert_circles(p).unwrap().num_circles)
        .sum::<usize>()
        + loops as usize
}

#[test]
fn criterion_7_alexander_consistency() {
    let engine = Engine::default();
    let mut failures = Vec::new();
    let knots: Vec<_> = table().iter().filter(|e| e.diagram.num_components() == 1).collect();
    for e in &knots {
        let p = engine.homfly(&e.diagram).unwrap();
        let delta = p.alexander().unwrap();
        let m = p.maxdeg_z().unwrap();
        let unit = delta.eval_one() == 1.into() || delta.eval_one() == (-1).into();
        let ok = delta.span_t().unwrap() <= m && unit && delta.is_symmetric_up_to_unit();
        if !ok {
            failures.push(e.name.clone());
        }
    }
    let pass = failures.is_empty();
    let detail = format!("{} knots, {} failures {:?}", knots.len(), failures.len(), failures);
    report(7, pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_8_whitehead_bound() {
    let trefoil = mortonlab_cli::mortonlab::parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
    let mut cases = vec![("3_1 (standard)".to_string(), trefoil)];
    cases.extend(
        table()
            .iter()
            .filter(|e| e.diagram.num_components() == 1 && e.diagram.crossing_count() <= WHITEHEAD_MAX_CROSSINGS)
            .map(|e| (e.name.clone(), e.diagram.clone())),
    );
    let mut failures = Vec::new();
    for (name, d) in &cases {
        let w = whitehead_double(d, Sign::Positive, 0).unwrap();
        let g = seifert_circles(&w).unwrap().diagram_genus;
        if g > d.crossing_count() as i64 || w.num_components() != 1 {
            failures.push(format!("{name}: genus {g} > c {}", d.crossing_count()));
        }
    }
    let pass = failures.is_empty();
    let detail = format!("{} knots, {} failures {:?}", cases.len(), failures.len(), failures);
    report(8, pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_9_determinism() {
    let mut same = true;
    let mut notes = Vec::new();
    for name in [KNOT_A, KNOT_B] {
        let homfly: Vec<Vec<u8>> = ["1", "8"]
            .iter()
            .map(|j| {
                let table = table_path().display().to_string();
                cli(&[
                    "homfly", "--table", &table, "--name", name, "--jobs", j, "--format", "json",
                ])
                .1
            })
            .collect();
        let verify: Vec<Vec<u8>> = ["1", "8"].iter().map(|j| verify_json(name, j).1).collect();
        let ok = homfly[0] == homfly[1] && verify[0] == verify[1] && !homfly[0].is_empty() && !verify[0].is_empty();
        same &= ok;
        notes.push(format!(
            "{name}: homfly and verify outputs identical for --jobs 1/8: {ok}"
        ));
    }
    report(9, same, &notes.join("; "));
    assert!(same, "{}", notes.join("\n"));
}
