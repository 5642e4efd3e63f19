//! Seifert's algorithm on a diagram: smooth every crossing along the
//! orientation and read off the circles.

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// The Seifert graph of a planar diagram is bipartite, so `SameCircle` does
/// not occur for diagrams accepted by [`Diagram::new`]; it is kept so callers
/// can match exhaustively on a defensive check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingClass {
    /// The two smoothed arcs lie on different Seifert circles.
    JoinsDistinct,
    SameCircle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertDecomposition {
    /// Circle id of each edge; entry `e - 1` belongs to label `e`.
    pub circle_of_edge: Vec<usize>,
    /// Seifert circles, free loops included.
    pub num_circles: usize,
    pub num_components: usize,
    pub crossings: usize,
    pub diagram_genus: i64,
    /// For each crossing, the sorted pair of circle ids its arcs lie on.
    pub crossing_joins: Vec<(usize, usize)>,
}

impl SeifertDecomposition {
    pub fn circle_of(&self, label: u32) -> usize {
        self.circle_of_edge[label as usize - 1]
    }

    pub fn classify_crossing(&self, i: usize) -> Result<CrossingClass> {
        let &(p, q) = self.crossing_joins.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.crossing_joins.len(),
        })?;
        Ok(if p == q {
            CrossingClass::SameCircle
        } else {
            CrossingClass::JoinsDistinct
        })
    }

    /// Crossings eligible for band multiplication.
    pub fn eligible_crossings(&self) -> Vec<usize> {
        (0..self.crossings)
            .filter(|&i| self.crossing_joins[i].0 != self.crossing_joins[i].1)
            .collect()
    }

    /// `c - s + 1`, i.e. `2g + mu - 1`.
    pub fn morton_bound(&self) -> i64 {
        self.crossings as i64 - self.num_circles as i64 + 1
    }
}

/// Seifert circles of a connected diagram.
pub fn seifert_circles(d: &Diagram) -> Result<SeifertDecomposition> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = d.edge_count();
    let crossings = d.crossings();
    let table = d.edge_table();

    // Along a Seifert circle, an edge entering a crossing continues on the
    // outgoing edge of the other strand.
    let next = |e: u32| -> u32 {
        let h = table.head[e as usize];
        let cr = &crossings[h.crossing];
        if h.slot == crate::diagram::UNDER_IN {
            cr.over_out()
        } else {
            cr.under_out()
        }
    };

    let mut circle_of_edge = vec![usize::MAX; n];
    let mut num_circles = 0;
    for start in 1..=n as u32 {
        if circle_of_edge[start as usize - 1] != usize::MAX {
            continue;
        }
        let mut e = start;
        while circle_of_edge[e as usize - 1] == usize::MAX {
            circle_of_edge[e as usize - 1] = num_circles;
            e = next(e);
        }
        num_circles += 1;
    }
    num_circles += d.free_loops() as usize;

    let crossing_joins = crossings
        .iter()
        .map(|cr| {
            let p = circle_of_edge[cr.under_in() as usize - 1];
            let q = circle_of_edge[cr.over_in() as usize - 1];
            (p.min(q), p.max(q))
        })
        .collect();

    let mu = d.num_components();
    let c = crossings.len();
    let twice = 2 - mu as i64 - num_circles as i64 + c as i64;
    assert!(
        twice >= 0 && twice % 2 == 0,
        "genus parity violated: mu={mu} s={num_circles} c={c}"
    );

    Ok(SeifertDecomposition {
        circle_of_edge,
        num_circles,
        num_components: mu,
        crossings: c,
        diagram_genus: twice / 2,
        crossing_joins,
    })
}

/// Genus of the canonical Seifert surface of a connected diagram.
pub fn diagram_genus(d: &Diagram) -> Result<i64> {
    Ok(seifert_circles(d)?.diagram_genus)
}

pub fn classify_crossing(dec: &SeifertDecomposition, i: usize) -> Result<CrossingClass> {
    dec.classify_crossing(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd};

    fn trefoil() -> Diagram {
        parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap()
    }

    /// Independent count: smooth crossings one at a time.
    fn circles_by_smoothing(d: &Diagram) -> usize {
        let mut d = d.clone();
        while d.crossing_count() > 0 {
            d = d.smooth_crossing(0).unwrap();
        }
        d.free_loops() as usize
    }

    #[test]
    fn trefoil_circles() {
        let dec = seifert_circles(&trefoil()).unwrap();
        assert_eq!(dec.num_circles, 2);
        assert_eq!(dec.num_circles, circles_by_smoothing(&trefoil()));
        assert_eq!(dec.diagram_genus, 1);
        assert_eq!(dec.morton_bound(), 2);
        for i in 0..3 {
            assert_eq!(dec.classify_crossing(i).unwrap(), CrossingClass::JoinsDistinct);
        }
        assert!(dec.classify_crossing(3).is_err());
    }

    #[test]
    fn unknot_and_kink() {
        let dec = seifert_circles(&Diagram::unknot()).unwrap();
        assert_eq!((dec.num_circles, dec.diagram_genus), (1, 0));
        // the loop of a kink is its own Seifert circle
        let kink = seifert_circles(&parse_pd("X[1,1,2,2]").unwrap()).unwrap();
        assert_eq!(kink.classify_crossing(0).unwrap(), CrossingClass::JoinsDistinct);
        assert_eq!((kink.num_circles, kink.diagram_genus), (2, 0));
    }

    #[test]
    fn disconnected_is_rejected() {
        assert!(matches!(seifert_circles(&Diagram::unlink(2)), Err(Error::Disconnected)));
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] O").unwrap();
        assert!(matches!(diagram_genus(&d), Err(Error::Disconnected)));
    }

    #[test]
    fn links_use_the_component_count() {
        let hopf = braid_closure(2, &[1, 1]).unwrap();
        let dec = seifert_circles(&hopf).unwrap();
        assert_eq!((dec.num_circles, dec.num_components, dec.diagram_genus), (2, 2, 0));
        let fig8 = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        let dec = seifert_circles(&fig8).unwrap();
        assert_eq!((dec.num_circles, dec.diagram_genus), (3, 1));
        assert_eq!(dec.num_circles, circles_by_smoothing(&fig8));
    }
}
