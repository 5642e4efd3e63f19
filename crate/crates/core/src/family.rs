//! Diagram surgeries: parallel bands at a crossing, crossing changes and
//! Whitehead doubles.

use serde::Serialize;

use crate::diagram::{Crossing, Diagram, Sign};
use crate::error::{Error, Result};
use crate::seifert::{seifert_circles, CrossingClass};

/// A crossing of a base diagram together with the band counts to build.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub base: Diagram,
    pub crossing: usize,
    pub counts: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub n: u32,
    #[serde(serialize_with = "serialize_pd")]
    pub diagram: Diagram,
    pub crossings: usize,
    pub seifert_circles: usize,
    pub components: usize,
    /// `None` when the member is a split diagram (only possible for `n = 0`).
    pub diagram_genus: Option<i64>,
}

fn serialize_pd<S: serde::Serializer>(d: &Diagram, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_pd_string())
}

/// Replaces crossing `i` by `n` crossings of the same sign joining the same
/// two Seifert circles: a twist region of `n` half-twists between the two
/// strands. `n = 0` is the oriented smoothing and `n = 1` gives back `d`.
pub fn insert_parallel_bands(d: &Diagram, i: usize, n: u32) -> Result<Diagram> {
    let dec = seifert_circles(d)?;
    if dec.classify_crossing(i)? == CrossingClass::SameCircle {
        return Err(Error::NotEligible(i));
    }
    if n == 0 {
        return d.smooth_crossing(i);
    }
    let cr = d.crossings()[i];
    let [a, b, c, e] = cr.edges;
    let n = n as usize;

    // Both strands run "upward" through a stack of n crossings. Level k has
    // inputs (sw, se) and outputs (nw, ne); outputs of level k feed level k+1.
    let mut next = 2 * d.crossing_count() as u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let (mut sw, mut se) = match cr.sign {
        Sign::Positive => (e, a),
        Sign::Negative => (a, b),
    };
    let (top_nw, top_ne) = match cr.sign {
        Sign::Positive => (c, b),
        Sign::Negative => (e, c),
    };
    let mut stack = Vec::with_capacity(n);
    for k in 0..n {
        let (nw, ne) = if k + 1 == n {
            (top_nw, top_ne)
        } else {
            (fresh(), fresh())
        };
        stack.push(match cr.sign {
            Sign::Positive => Crossing::new([se, ne, nw, sw], Sign::Positive),
            Sign::Negative => Crossing::new([sw, se, ne, nw], Sign::Negative),
        });
        (sw, se) = (nw, ne);
    }

    let mut crossings = d.crossings().to_vec();
    crossings.splice(i..=i, stack);
    Diagram::assemble(&crossings, next as usize, &[], d.free_loops())
}

/// Builds `L_n` for each requested `n`, checking the Seifert bookkeeping:
/// `c(L_n) = c + n - 1`, `s(L_n) = s`, and the genus grows by one for every
/// two added bands.
pub fn family_sequence(spec: &FamilySpec) -> Result<Vec<FamilyMember>> {
    let base = seifert_circles(&spec.base)?;
    let smoothed = spec.base.smooth_crossing(spec.crossing)?;
    let mu0 = smoothed.num_components();
    spec.counts
        .iter()
        .map(|&n| {
            let diagram = insert_parallel_bands(&spec.base, spec.crossing, n)?;
            let member = member(n, diagram)?;
            assert_eq!(member.crossings + 1, base.crossings + n as usize);
            assert_eq!(member.seifert_circles, base.num_circles);
            let expected_mu = if n % 2 == 1 { base.num_components } else { mu0 };
            assert_eq!(member.components, expected_mu);
            if n % 2 == 1 {
                assert_eq!(member.diagram_genus, Some(base.diagram_genus + (n as i64 - 1) / 2));
            }
            Ok(member)
        })
        .collect()
}

fn member(n: u32, diagram: Diagram) -> Result<FamilyMember> {
    let components = diagram.num_components();
    let (circles, genus) = if diagram.is_connected() {
        let dec = seifert_circles(&diagram)?;
        (dec.num_circles, Some(dec.diagram_genus))
    } else {
        let (pieces, loops) = diagram.split_pieces();
        let mut s = loops as usize;
        for p in &pieces {
            s += seifert_circles(p)?.num_circles;
        }
        (s, None)
    };
    Ok(FamilyMember {
        n,
        crossings: diagram.crossing_count(),
        seifert_circles: circles,
        components,
        diagram_genus: genus,
        diagram,
    })
}

/// `(i, simplify(switch(d, i)))` for every crossing.
pub fn crossing_change_candidates(d: &Diagram) -> Vec<(usize, Diagram)> {
    (0..d.crossing_count())
        .map(|i| (i, d.switch_crossing(i).expect("index in range").simplify()))
        .collect()
}

/// Ends of a not-yet-oriented crossing: slots in counter-clockwise order,
/// with the strand through slots `over` and `over + 2` on top.
struct Vertex {
    links: [Option<(usize, usize)>; 4],
    over: usize,
}

/// Collects crossings as planar rotation data, then orients the result by
/// walking its components.
#[derive(Default)]
struct PlanarBuilder {
    vertices: Vec<Vertex>,
}

impl PlanarBuilder {
    fn vertex(&mut self, over: usize) -> usize {
        self.vertices.push(Vertex { links: [None; 4], over });
        self.vertices.len() - 1
    }

    fn connect(&mut self, a: (usize, usize), b: (usize, usize)) {
        assert!(self.vertices[a.0].links[a.1].is_none() && self.vertices[b.0].links[b.1].is_none());
        self.vertices[a.0].links[a.1] = Some(b);
        self.vertices[b.0].links[b.1] = Some(a);
    }

    fn build(&self) -> Result<Diagram> {
        let n = self.vertices.len();
        let mut label = vec![[0u32; 4]; n];
        let mut incoming = vec![[false; 4]; n];
        let mut next = 0;
        for x in 0..n {
            for p in 0..4 {
                if label[x][p] != 0 {
                    continue;
                }
                // walk the component through (x, p), entering there
                let (mut y, mut q) = (x, p);
                loop {
                    let out = q ^ 2;
                    let (z, r) = self.vertices[y].links[out].expect("all slots connected");
                    next += 1;
                    label[y][out] = next;
                    label[z][r] = next;
                    incoming[z][r] = true;
                    (y, q) = (z, r);
                    if (y, q) == (x, p) {
                        break;
                    }
                }
            }
        }
        let crossings = (0..n)
            .map(|x| {
                let under = self.vertices[x].over ^ 1;
                let start = if incoming[x][under] { under } else { under ^ 2 };
                let edges = std::array::from_fn(|k| label[x][(start + k) % 4]);
                let sign = if incoming[x][(start + 3) % 4] {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Crossing::new(edges, sign)
            })
            .collect();
        Diagram::new(crossings, 0)
    }
}

/// Whitehead double of a knot diagram: every edge becomes two parallel
/// edges, every crossing a 2x2 grid of crossings, and edge 1 carries a
/// clasp of sign `clasp_sign`. With `twists = 0` this is the blackboard
/// double, with `4c + 2` crossings and framing `writhe(d)`.
///
/// `twists` inserts that many full twists (two crossings each, of the sign
/// of `twists`) into the doubled edge 1. The two strands are antiparallel,
/// so each full twist lowers the framing by one: `twists = writhe(d)` gives
/// the untwisted double.
pub fn whitehead_double(d: &Diagram, clasp_sign: Sign, twists: i32) -> Result<Diagram> {
    if d.num_components() != 1 || d.crossing_count() == 0 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    const W: usize = 0;
    const S: usize = 1;
    const E: usize = 2;
    const N: usize = 3;

    let mut b = PlanarBuilder::default();
    // grid vertices per crossing: [nw, ne, sw, se]; the under-strand of the
    // original crossing runs west-east, so the horizontal strands go under
    let grids: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|_| std::array::from_fn(|_| b.vertex(S)))
        .collect();
    for g in &grids {
        let [nw, ne, sw, se] = *g;
        b.connect((nw, E), (ne, W));
        b.connect((sw, E), (se, W));
        b.connect((sw, N), (nw, S));
        b.connect((se, N), (ne, S));
    }
    // Outer ends of the doubled strand at original slot p, as (left, right)
    // for a traveller leaving the crossing through p.
    let ends = |g: &[usize; 4], p: usize| -> ((usize, usize), (usize, usize)) {
        let [nw, ne, sw, se] = *g;
        match p {
            0 => ((sw, W), (nw, W)),
            1 => ((se, S), (sw, S)),
            2 => ((ne, E), (se, E)),
            _ => ((nw, N), (ne, N)),
        }
    };

    let table = d.edge_table();
    let mut clasp = Vec::new();
    let mut twist = Vec::new();
    for e in 1..=d.edge_count() {
        let (t, h) = (table.tail[e], table.head[e]);
        let (tl, tr) = ends(&grids[t.crossing], t.slot);
        let (hl, hr) = ends(&grids[h.crossing], h.slot);
        if e > 1 {
            b.connect(tl, hr);
            b.connect(tr, hl);
            continue;
        }
        // Edge 1, from the tail side: top strand starts at tl, bottom at tr.
        let (mut top, mut bottom) = (tl, tr);
        for _ in 0..2 * twists.unsigned_abs() {
            // slots ccw from north-east: [ne, nw, sw, se]
            let x = b.vertex(1);
            b.connect(top, (x, 1));
            b.connect(bottom, (x, 2));
            twist.push(x);
            (top, bottom) = ((x, 0), (x, 3));
        }
        // Clasp: the tail-side hook enters c1 from the north and leaves c2 to
        // the south; the head-side hook passes through c1 and c2 horizontally.
        let c1 = b.vertex(S);
        let c2 = b.vertex(W);
        b.connect(top, (c1, N));
        b.connect((c1, S), (c2, N));
        b.connect((c2, S), bottom);
        b.connect((c1, E), hr);
        b.connect((c1, W), (c2, W));
        b.connect((c2, E), hl);
        clasp = vec![c1, c2];
    }

    let mut out = b.build()?;
    let want_twist = if twists >= 0 { Sign::Positive } else { Sign::Negative };
    for x in twist {
        if out.crossings()[x].sign != want_twist {
            out = out.switch_crossing(x)?;
        }
    }
    if out.crossings()[clasp[0]].sign != clasp_sign {
        for &x in &clasp {
            out = out.switch_crossing(x)?;
        }
    }
    debug_assert_eq!(out.num_components(), 1);
    Ok(out)
}
