//! HOMFLY polynomials checked against an independent table: KnotInfo's PD
//! codes and polynomials for every knot up to 10 crossings and a sample at 11
//! and 12 crossings.

use std::path::Path;

use mortonlab::{parse_pd, Engine, LaurentPoly2};

#[test]
fn engine_matches_knotinfo() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/knotinfo_homfly.csv");
    let mut reader = csv::Reader::from_path(path).unwrap();
    let engine = Engine::default();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for record in reader.records() {
        let record = record.unwrap();
        let (name, pd, expected) = (&record[0], &record[1], &record[2]);
        let d = parse_pd(pd).unwrap_or_else(|e| panic!("{name}: {e}"));
        let expected: LaurentPoly2 = expected.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        let got = engine.homfly(&d).unwrap();
        if got != expected {
            mismatches.push(format!("{name}: got {got}, expected {expected}"));
        }
        checked += 1;
    }
    assert!(checked > 300, "only {checked} rows");
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}
