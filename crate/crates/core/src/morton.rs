//! Audits of the z-degree bound `maxdeg_z P <= c - s + 1` and of the
//! band-family strictness claim `M(L_n) < 2 g_c(K) - 1 + n`.

use std::fmt::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};
use crate::family::{crossing_change_candidates, insert_parallel_bands, FamilySpec};
use crate::homfly::Engine;
use crate::poly::LaurentPoly2;
use crate::seifert::seifert_circles;

/// `c - s + 1` for a connected diagram.
pub fn morton_bound_diagram(d: &Diagram) -> Result<i64> {
    Ok(seifert_circles(d)?.morton_bound())
}

/// `morton_bound_diagram(d) - maxdeg_z P(d)`; never negative.
pub fn morton_defect(engine: &Engine, d: &Diagram) -> Result<i64> {
    let bound = morton_bound_diagram(d)?;
    let m = engine
        .homfly(d)?
        .maxdeg_z()
        .expect("HOMFLY polynomials of diagrams are nonzero");
    Ok(bound - m as i64)
}

/// z-degrees of the three diagrams of a skein triple; `None` stands for the
/// zero polynomial, i.e. minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeinDegrees {
    pub plus: Option<i32>,
    pub minus: Option<i32>,
    pub zero: Option<i32>,
}

impl SkeinDegrees {
    /// `M0 <= max(M+, M-) - 1`, `M+ <= max(M-, M0 + 1)`, `M- <= max(M+, M0 + 1)`.
    pub fn holds(&self) -> bool {
        let dec = |m: Option<i32>| m.map(|m| m - 1);
        let inc = |m: Option<i32>| m.map(|m| m + 1);
        self.zero <= dec(self.plus.max(self.minus))
            && self.plus <= self.minus.max(inc(self.zero))
            && self.minus <= self.plus.max(inc(self.zero))
    }
}

pub fn skein_degrees(engine: &Engine, d: &Diagram, i: usize) -> Result<SkeinDegrees> {
    let here = engine.homfly(d)?.maxdeg_z();
    let switched = engine.homfly(&d.switch_crossing(i)?)?.maxdeg_z();
    let zero = engine.homfly(&d.smooth_crossing(i)?)?.maxdeg_z();
    Ok(match d.crossings()[i].sign {
        Sign::Positive => SkeinDegrees {
            plus: here,
            minus: switched,
            zero,
        },
        Sign::Negative => SkeinDegrees {
            plus: switched,
            minus: here,
            zero,
        },
    })
}

pub fn verify_skein_degree_inequalities(engine: &Engine, d: &Diagram, i: usize) -> Result<bool> {
    Ok(skein_degrees(engine, d, i)?.holds())
}

/// How a computed polynomial relates to a reference one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolyMatch {
    Exact,
    /// Equal after `v -> v^-1`.
    Mirror,
    Different,
}

pub fn compare_polynomials(computed: &LaurentPoly2, reference: &LaurentPoly2) -> PolyMatch {
    if computed == reference {
        PolyMatch::Exact
    } else if &computed.mirror() == reference {
        PolyMatch::Mirror
    } else {
        PolyMatch::Different
    }
}

/// Whether a row is a knot (odd band count over a knot) or a link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowKind {
    Knot,
    Link,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub n: u32,
    pub kind: RowKind,
    pub crossings: usize,
    pub seifert_circles: usize,
    pub components: usize,
    /// Diagram-level genus; `None` for split diagrams.
    pub diagram_genus: Option<i64>,
    /// `maxdeg_z P(L_n)`.
    pub maxdeg_z: Option<i32>,
    /// `2 g_c - 1 + n` with the claimed `g_c`.
    pub bound: i64,
    pub strict: bool,
    /// `M(L_n) <= max(M(L_{n-2}), M(L_{n-1}) + 1)` when both rows exist.
    pub recurrence_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// After switching and simplifying, the diagram has smaller genus.
    GenusDrop {
        crossing: usize,
        genus_before: i64,
        genus_after: i64,
    },
    /// The switched knot has `maxdeg_z P < 2 g`, the degree condition the
    /// band argument draws from the genus drop.
    DegreeBound {
        crossing: usize,
        maxdeg_z: Option<i32>,
        bound: i64,
    },
}

impl Certificate {
    pub fn crossing(&self) -> usize {
        match *self {
            Certificate::GenusDrop { crossing, .. } | Certificate::DegreeBound { crossing, .. } => crossing,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HypothesisStatus {
    /// A genus-drop certificate exists for the chosen crossing.
    Verified,
    /// Only the degree consequence is certified for the chosen crossing.
    DegreeOnly,
    /// No certificate found; the hypothesis is not refuted.
    Unverified,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub base_name: String,
    pub base_pd: String,
    pub crossing: usize,
    pub crossing_sign: Sign,
    /// Canonical genus of the knot, taken as given.
    pub gc_claimed: i64,
    pub base_diagram_genus: i64,
    pub rows: Vec<FamilyRow>,
    pub hypothesis_certificates: Vec<Certificate>,
    pub hypothesis: HypothesisStatus,
    /// False when the time budget ran out; rows then stop early.
    pub complete: bool,
    /// Eligible crossings tried by automatic selection, in order.
    pub crossings_tried: Vec<usize>,
    /// Reasons the given `g_c` cannot be the canonical genus of this diagram.
    pub obstructions: Vec<String>,
}

impl FamilyReport {
    pub fn all_strict(&self) -> bool {
        self.complete && !self.rows.is_empty() && self.rows.iter().all(|r| r.strict)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,c,s,genus,M,bound,strict\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.n,
                r.crossings,
                r.seifert_circles,
                r.diagram_genus.map_or_else(String::new, |g| g.to_string()),
                r.maxdeg_z.map_or_else(|| "-inf".to_string(), |m| m.to_string()),
                r.bound,
                r.strict
            )
            .unwrap();
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} crossing {} ({:?}), g_c = {} (given), diagram genus {}",
            self.base_name, self.crossing, self.crossing_sign, self.gc_claimed, self.base_diagram_genus
        )
        .unwrap();
        writeln!(
            out,
            "{:>3} {:>4} {:>4} {:>4} {:>6} {:>4} {:>6} {:>6}",
            "n", "c", "s", "mu", "genus", "M", "bound", "strict"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:>3} {:>4} {:>4} {:>4} {:>6} {:>4} {:>6} {:>6}",
                r.n,
                r.crossings,
                r.seifert_circles,
                r.components,
                r.diagram_genus.map_or_else(|| "-".to_string(), |g| g.to_string()),
                r.maxdeg_z.map_or_else(|| "-inf".to_string(), |m| m.to_string()),
                r.bound,
                r.strict
            )
            .unwrap();
        }
        writeln!(out, "hypothesis: {:?}", self.hypothesis).unwrap();
        for c in &self.hypothesis_certificates {
            writeln!(out, "certificate: {c:?}").unwrap();
        }
        for o in &self.obstructions {
            writeln!(out, "OBSTRUCTION: {o}").unwrap();
        }
        if !self.complete {
            writeln!(out, "INCOMPLETE: time budget exceeded").unwrap();
        }
        out
    }
}

/// Certificates for the crossing-change hypothesis, over all crossings.
pub fn hypothesis_certificates(engine: &Engine, base: &Diagram) -> Result<Vec<Certificate>> {
    let genus = seifert_circles(base)?.diagram_genus;
    let mut out = Vec::new();
    for (i, switched) in crossing_change_candidates(base) {
        if switched.is_connected() {
            let after = seifert_circles(&switched)?.diagram_genus;
            if after < genus {
                out.push(Certificate::GenusDrop {
                    crossing: i,
                    genus_before: genus,
                    genus_after: after,
                });
                continue;
            }
        }
        let m = engine.homfly(&switched)?.maxdeg_z();
        if m.is_none_or(|m| (m as i64) < 2 * genus) {
            out.push(Certificate::DegreeBound {
                crossing: i,
                maxdeg_z: m,
                bound: 2 * genus,
            });
        }
    }
    Ok(out)
}

/// Computes `M(L_n)` for every `n` in `spec.counts` and compares it with
/// `2 gc_claimed - 1 + n`. If `budget` runs out the rows computed so far are
/// kept and the report is marked incomplete.
pub fn verify_theorem_family(
    engine: &Engine,
    base_name: &str,
    spec: &FamilySpec,
    gc_claimed: i64,
    budget: Option<Duration>,
) -> Result<FamilyReport> {
    let base = &spec.base;
    let dec = seifert_circles(base)?;
    dec.classify_crossing(spec.crossing)?;
    engine.set_deadline(budget.map(|b| Instant::now() + b));
    let (rows, failure) = family_rows(engine, spec, gc_claimed, dec.num_components);
    let certificates = match failure {
        None => hypothesis_certificates(engine, base),
        Some(e) => Err(e),
    };
    engine.set_deadline(None);
    let (certificates, complete) = match certificates {
        Ok(c) => (c, true),
        Err(Error::BudgetExceeded) => (Vec::new(), false),
        Err(e) => return Err(e),
    };
    let hypothesis = if certificates
        .iter()
        .any(|c| matches!(c, Certificate::GenusDrop { crossing, .. } if *crossing == spec.crossing))
    {
        HypothesisStatus::Verified
    } else if certificates.iter().any(|c| c.crossing() == spec.crossing) {
        HypothesisStatus::DegreeOnly
    } else {
        HypothesisStatus::Unverified
    };
    let mut obstructions = Vec::new();
    if dec.diagram_genus != gc_claimed {
        obstructions.push(format!(
            "diagram genus {} differs from the given g_c = {gc_claimed}; the bound is claimed for a canonical-genus diagram",
            dec.diagram_genus
        ));
    }
    if let Some(m) = rows.iter().find(|r| r.n == 1).and_then(|r| r.maxdeg_z) {
        if dec.num_components == 1 && m as i64 > 2 * gc_claimed {
            obstructions.push(format!(
                "maxdeg_z P = {m} > 2 g_c = {}, so the genus is at least {}",
                2 * gc_claimed,
                (m + 1) / 2
            ));
        }
    }
    Ok(FamilyReport {
        base_name: base_name.to_string(),
        base_pd: base.to_pd_string(),
        crossing: spec.crossing,
        crossing_sign: base.crossings()[spec.crossing].sign,
        gc_claimed,
        base_diagram_genus: dec.diagram_genus,
        rows,
        hypothesis_certificates: certificates,
        hypothesis,
        complete,
        crossings_tried: vec![spec.crossing],
        obstructions,
    })
}

fn family_rows(
    engine: &Engine,
    spec: &FamilySpec,
    gc_claimed: i64,
    base_components: usize,
) -> (Vec<FamilyRow>, Option<Error>) {
    let mut rows: Vec<FamilyRow> = Vec::new();
    for &n in &spec.counts {
        let row = insert_parallel_bands(&spec.base, spec.crossing, n).and_then(|d| {
            let m = engine.homfly(&d)?.maxdeg_z();
            let (circles, genus) = if d.is_connected() {
                let dec = seifert_circles(&d)?;
                (dec.num_circles, Some(dec.diagram_genus))
            } else {
                (seifert_circles(&spec.base)?.num_circles, None)
            };
            Ok((d, m, circles, genus))
        });
        let (d, m, circles, genus) = match row {
            Ok(x) => x,
            Err(e) => return (rows, Some(e)),
        };
        let bound = 2 * gc_claimed - 1 + n as i64;
        let prior = |k: u32| rows.iter().find(|r| r.n == k).map(|r| r.maxdeg_z);
        let recurrence_holds = match (n.checked_sub(2).and_then(prior), n.checked_sub(1).and_then(prior)) {
            (Some(m2), Some(m1)) => Some(m <= m2.max(m1.map(|x| x + 1))),
            _ => None,
        };
        let components = d.num_components();
        rows.push(FamilyRow {
            n,
            kind: if n % 2 == 1 && base_components == 1 {
                RowKind::Knot
            } else {
                RowKind::Link
            },
            crossings: d.crossing_count(),
            seifert_circles: circles,
            components,
            diagram_genus: genus,
            maxdeg_z: m,
            bound,
            strict: m.is_none_or(|m| (m as i64) < bound),
            recurrence_holds,
        });
    }
    (rows, None)
}

/// Tries the eligible crossings of `base` in index order and returns the
/// first report with every row strict, or the last report if none is.
pub fn verify_theorem_family_auto(
    engine: &Engine,
    base_name: &str,
    base: &Diagram,
    counts: &[u32],
    gc_claimed: i64,
    budget: Option<Duration>,
) -> Result<FamilyReport> {
    let start = Instant::now();
    let eligible = seifert_circles(base)?.eligible_crossings();
    let mut tried = Vec::new();
    let mut last = None;
    for i in eligible {
        let remaining = match budget {
            Some(b) => match b.checked_sub(start.elapsed()) {
                Some(r) => Some(r),
                None => break,
            },
            None => None,
        };
        let spec = FamilySpec {
            base: base.clone(),
            crossing: i,
            counts: counts.to_vec(),
        };
        let mut report = verify_theorem_family(engine, base_name, &spec, gc_claimed, remaining)?;
        tried.push(i);
        report.crossings_tried = tried.clone();
        let done = report.all_strict() || !report.complete;
        last = Some(report);
        if done {
            break;
        }
    }
    last.ok_or(Error::NotEligible(0))
}
