use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mortonlab::family::{family_sequence, insert_parallel_bands, FamilySpec};
use mortonlab::morton::{morton_bound_diagram, verify_theorem_family};
use mortonlab::random::{
    random_braid_diagram, random_braid_word, random_knot_diagram, random_relabel, random_switches,
};
use mortonlab::{
    braid_closure, homfly, naive_homfly, seifert_circles, verify_skein_degree_inequalities, Diagram, Engine,
    EngineConfig, LaurentPoly2, Sign,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `P(v^-1, -z)`, the polynomial of the mirror image.
fn mirror_image(p: &LaurentPoly2) -> LaurentPoly2 {
    LaurentPoly2::from_terms(
        p.terms()
            .map(|(a, b, c)| (-a, b, if b % 2 == 0 { c.clone() } else { -c })),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn relabelling_changes_nothing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_braid_diagram(&mut r, 5, 12);
        let e = random_relabel(&d, &mut r);
        prop_assert_eq!(d.canonical_code(), e.canonical_code());
        prop_assert_eq!(homfly(&d).unwrap(), homfly(&e).unwrap());
        prop_assert_eq!(seifert_circles(&d).map(|x| x.diagram_genus).ok(), seifert_circles(&e).map(|x| x.diagram_genus).ok());
    }

    #[test]
    fn skein_relation_at_every_crossing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_braid_diagram(&mut r, 4, 10);
        let i = r.gen_range(0..d.crossing_count());
        let p = homfly(&d).unwrap();
        let sw = homfly(&d.switch_crossing(i).unwrap()).unwrap();
        let sm = homfly(&d.smooth_crossing(i).unwrap()).unwrap();
        let (plus, minus) = match d.crossings()[i].sign {
            Sign::Positive => (p, sw),
            Sign::Negative => (sw, p),
        };
        prop_assert_eq!(plus.shift(-1, 0) - minus.shift(1, 0), sm.shift(0, 1));
    }

    #[test]
    fn engine_matches_plain_recursion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_switches(&random_braid_diagram(&mut r, 4, 9), &mut r);
        prop_assert_eq!(homfly(&d).unwrap(), naive_homfly(&d).unwrap());
    }

    #[test]
    fn markov_moves_preserve_the_polynomial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let strands = r.gen_range(2..=4usize);
        let len = r.gen_range(1..=9usize);
        let word = random_braid_word(&mut r, strands, len);
        let p = homfly(&braid_closure(strands, &word).unwrap()).unwrap();

        let k = r.gen_range(0..word.len());
        let conjugate: Vec<i32> = word[k..].iter().chain(&word[..k]).copied().collect();
        prop_assert_eq!(&homfly(&braid_closure(strands, &conjugate).unwrap()).unwrap(), &p);

        let mut stabilised = word.clone();
        stabilised.push(if r.gen_bool(0.5) { strands as i32 } else { -(strands as i32) });
        prop_assert_eq!(&homfly(&braid_closure(strands + 1, &stabilised).unwrap()).unwrap(), &p);
    }

    #[test]
    fn mirror_diagram_gives_mirror_polynomial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_braid_diagram(&mut r, 4, 10);
        let mut m = d.clone();
        for i in 0..d.crossing_count() {
            m = m.switch_crossing(i).unwrap();
        }
        prop_assert_eq!(homfly(&m).unwrap(), mirror_image(&homfly(&d).unwrap()));
    }

    #[test]
    fn z_parity_and_morton_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_braid_diagram(&mut r, 5, 12);
        let p = homfly(&d).unwrap();
        let mu = d.num_components() as i32;
        prop_assert!(p.terms().all(|(_, ez, _)| (ez - (mu - 1)).rem_euclid(2) == 0));
        if d.is_connected() {
            let bound = morton_bound_diagram(&d).unwrap();
            prop_assert!(p.maxdeg_z().unwrap() as i64 <= bound, "{} > {}", p.maxdeg_z().unwrap(), bound);
        }
    }

    #[test]
    fn knots_satisfy_the_unit_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_knot_diagram(&mut r, 4, 10);
        let p = homfly(&d).unwrap();
        let delta = p.alexander().unwrap();
        prop_assert!(delta.is_symmetric_up_to_unit());
        prop_assert!(delta.eval_one() == 1.into() || delta.eval_one() == (-1).into());
        // P(1, z) is the Conway polynomial, whose constant term is 1 for knots.
        let conway_constant: num_bigint::BigInt = p.z_coefficient(0).into_iter().map(|(_, c)| c).sum();
        prop_assert_eq!(conway_constant, 1.into());
    }

    #[test]
    fn skein_degree_inequalities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_braid_diagram(&mut r, 5, 12);
        let i = r.gen_range(0..d.crossing_count());
        prop_assert!(verify_skein_degree_inequalities(&Engine::default(), &d, i).unwrap());
    }

    #[test]
    fn band_bookkeeping(seed in any::<u64>(), n in 0u32..=7) {
        let mut r = rng(seed);
        let d = random_knot_diagram(&mut r, 5, 12);
        let base = seifert_circles(&d).unwrap();
        let i = r.gen_range(0..d.crossing_count());
        let members = family_sequence(&FamilySpec { base: d.clone(), crossing: i, counts: vec![n] }).unwrap();
        let l = &members[0];
        prop_assert_eq!(l.seifert_circles, base.num_circles);
        prop_assert_eq!(l.crossings + 1, d.crossing_count() + n as usize);
        prop_assert_eq!(l.components, if n % 2 == 1 { 1 } else { 2 });
        if n % 2 == 1 {
            prop_assert_eq!(l.diagram_genus, Some(base.diagram_genus + (n as i64 - 1) / 2));
        }
        prop_assert_eq!(&l.diagram, &insert_parallel_bands(&d, i, n).unwrap());
    }

    #[test]
    fn family_rows_obey_the_recurrence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_knot_diagram(&mut r, 4, 9);
        let i = r.gen_range(0..d.crossing_count());
        let g = seifert_circles(&d).unwrap().diagram_genus;
        let spec = FamilySpec { base: d, crossing: i, counts: (0..=4).collect() };
        let report = verify_theorem_family(&Engine::default(), "random", &spec, g, None).unwrap();
        prop_assert!(report.complete);
        prop_assert!(report.rows.iter().all(|row| row.recurrence_holds != Some(false)));
        // Morton on the diagram of each member: M(L_n) <= 2 g(L_n) + mu - 1.
        for row in &report.rows {
            if let (Some(m), Some(gn)) = (row.maxdeg_z, row.diagram_genus) {
                prop_assert!((m as i64) < 2 * gn + row.components as i64);
            }
        }
    }

    #[test]
    fn polynomial_text_and_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = homfly(&random_braid_diagram(&mut r, 4, 10)).unwrap();
        prop_assert_eq!(&p.to_string().parse::<LaurentPoly2>().unwrap(), &p);
        prop_assert_eq!(&LaurentPoly2::from_json(&p.to_json()).unwrap(), &p);
    }
}

#[test]
fn warm_cache_gives_the_same_answers_with_fewer_expansions() {
    let path = std::env::temp_dir().join(format!("mortonlab-cache-{}.tsv", std::process::id()));
    let _ = std::fs::remove_file(&path);
    let mut r = rng(7);
    let diagrams: Vec<Diagram> = (0..20).map(|_| random_braid_diagram(&mut r, 5, 14)).collect();

    let cold = Engine::new(EngineConfig::default());
    let first: Vec<_> = diagrams.iter().map(|d| cold.homfly(d).unwrap()).collect();
    cold.persist_cache(&path).unwrap();

    let warm = Engine::new(EngineConfig {
        jobs: 3,
        parallel_threshold: 4,
        ..Default::default()
    });
    assert!(warm.load_cache(&path).unwrap() > 0);
    let second: Vec<_> = diagrams.iter().map(|d| warm.homfly(d).unwrap()).collect();
    std::fs::remove_file(&path).unwrap();

    assert_eq!(first, second);
    assert!(warm.stats().expansions < cold.stats().expansions);
    assert_eq!(warm.stats().expansions, 0);
}
