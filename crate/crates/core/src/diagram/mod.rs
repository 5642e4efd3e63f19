//! Oriented link diagrams in PD notation and the crossing-level moves the
//! skein relation acts on.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting at the incoming under-strand `a`; the under-strand leaves
//! through `c`. The crossing is positive when the over-strand runs `d -> b`
//! and negative when it runs `b -> d`.

mod braid;
mod canonical;
mod pd;
mod simplify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::UnionFind;

pub use braid::braid_closure;
pub use canonical::CanonicalCode;
pub use pd::parse_pd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Slot index of the incoming under-strand.
pub const UNDER_IN: usize = 0;
/// Slot index of the outgoing under-strand.
pub const UNDER_OUT: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub edges: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [u32; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        self.over_in_slot() ^ 2
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == UNDER_IN || slot == self.over_in_slot()
    }

    pub fn under_in(&self) -> u32 {
        self.edges[UNDER_IN]
    }

    pub fn under_out(&self) -> u32 {
        self.edges[UNDER_OUT]
    }

    pub fn over_in(&self) -> u32 {
        self.edges[self.over_in_slot()]
    }

    pub fn over_out(&self) -> u32 {
        self.edges[self.over_out_slot()]
    }

    /// The same strands with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        match self.sign {
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        write!(f, "X[{a},{b},{c},{d}]")
    }
}

/// Position of one end of an edge: crossing index and slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub crossing: usize,
    pub slot: usize,
}

/// Per-label incidence data. Label `e` lives at index `e`; index 0 is unused.
#[derive(Clone, Debug)]
pub struct EdgeTable {
    /// End where the edge enters a crossing.
    pub head: Vec<Slot>,
    /// End where the edge leaves a crossing.
    pub tail: Vec<Slot>,
}

impl EdgeTable {
    fn build(crossings: &[Crossing]) -> Self {
        let n = 2 * crossings.len();
        let none = Slot {
            crossing: usize::MAX,
            slot: 0,
        };
        let mut head = vec![none; n + 1];
        let mut tail = vec![none; n + 1];
        for (x, cr) in crossings.iter().enumerate() {
            for (slot, &e) in cr.edges.iter().enumerate() {
                let end = Slot { crossing: x, slot };
                if cr.is_incoming(slot) {
                    head[e as usize] = end;
                } else {
                    tail[e as usize] = end;
                }
            }
        }
        EdgeTable { head, tail }
    }

    /// Label of the end opposite to `end` along its edge.
    pub fn other_end(&self, crossings: &[Crossing], end: Slot) -> Slot {
        let e = crossings[end.crossing].edges[end.slot] as usize;
        let h = self.head[e];
        if h == end {
            self.tail[e]
        } else {
            h
        }
    }
}

/// An oriented link diagram: PD crossings plus crossing-free unknotted
/// circles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: u32,
}

impl Diagram {
    /// Validates and builds a diagram: every label in `1..=2c` occurs exactly
    /// twice, once entering and once leaving a crossing, and the crossing
    /// rotation data describes a planar diagram.
    pub fn new(crossings: Vec<Crossing>, free_loops: u32) -> Result<Self> {
        let d = Diagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_loops: u32) -> Self {
        let d = Diagram { crossings, free_loops };
        debug_assert!(d.validate().is_ok(), "invalid diagram {d}: {:?}", d.validate());
        d
    }

    /// The crossing-free unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(components: u32) -> Self {
        Diagram {
            crossings: Vec::new(),
            free_loops: components,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn edge_table(&self) -> EdgeTable {
        EdgeTable::build(&self.crossings)
    }

    fn validate(&self) -> Result<()> {
        let n = self.edge_count();
        if n == 0 {
            return if self.free_loops >= 1 {
                Ok(())
            } else {
                Err(Error::InvalidPd("a diagram needs at least one component".into()))
            };
        }
        let mut ins = vec![0u8; n + 1];
        let mut outs = vec![0u8; n + 1];
        for cr in &self.crossings {
            for (slot, &e) in cr.edges.iter().enumerate() {
                if e == 0 || e as usize > n {
                    return Err(Error::InvalidPd(format!("label {e} outside 1..={n}")));
                }
                if cr.is_incoming(slot) {
                    ins[e as usize] += 1;
                } else {
                    outs[e as usize] += 1;
                }
            }
        }
        for e in 1..=n {
            if ins[e] + outs[e] != 2 {
                return Err(Error::InvalidPd(format!(
                    "label {e} appears {} times",
                    ins[e] + outs[e]
                )));
            }
            if ins[e] != 1 {
                return Err(Error::InvalidPd(format!("label {e} has inconsistent orientation")));
            }
        }
        let faces = self.face_count();
        let pieces = self.crossing_pieces().len();
        if faces != self.crossings.len() + 2 * pieces {
            return Err(Error::InvalidPd(format!(
                "rotation data is not planar ({faces} faces for {} crossings in {pieces} pieces)",
                self.crossings.len()
            )));
        }
        Ok(())
    }

    /// Number of complementary regions, counted as orbits of the face
    /// permutation on edge ends.
    fn face_count(&self) -> usize {
        let table = self.edge_table();
        let m = 4 * self.crossings.len();
        let mut seen = vec![false; m];
        let mut faces = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                let end = Slot {
                    crossing: cur / 4,
                    slot: cur % 4,
                };
                let o = table.other_end(&self.crossings, end);
                cur = 4 * o.crossing + (o.slot + 3) % 4;
            }
        }
        faces
    }

    /// Groups crossing indices into connected pieces of the diagram.
    pub(crate) fn crossing_pieces(&self) -> Vec<Vec<usize>> {
        let c = self.crossings.len();
        let mut uf = UnionFind::new(c);
        let mut first_seen = vec![usize::MAX; self.edge_count() + 1];
        for (x, cr) in self.crossings.iter().enumerate() {
            for &e in &cr.edges {
                let e = e as usize;
                if first_seen[e] == usize::MAX {
                    first_seen[e] = x;
                } else {
                    uf.union(first_seen[e], x);
                }
            }
        }
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        let mut slot_of_root = vec![usize::MAX; c];
        for x in 0..c {
            let r = uf.find(x);
            if slot_of_root[r] == usize::MAX {
                slot_of_root[r] = pieces.len();
                pieces.push(Vec::new());
            }
            pieces[slot_of_root[r]].push(x);
        }
        pieces
    }

    /// Edge label following `e` along the orientation.
    pub fn successor(&self, table: &EdgeTable, e: u32) -> u32 {
        let h = table.head[e as usize];
        self.crossings[h.crossing].edges[h.slot ^ 2]
    }

    /// Oriented edge cycles, ordered by least label and each listed from its
    /// least label; free loops follow as empty cycles.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let table = self.edge_table();
        let n = self.edge_count();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e as usize] {
                seen[e as usize] = true;
                cycle.push(e);
                e = self.successor(&table, e);
            }
            out.push(cycle);
        }
        out.extend((0..self.free_loops).map(|_| Vec::new()));
        out
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// True when the diagram cannot be separated into disjoint pieces; a
    /// diagram with crossings and additional free loops is disconnected.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            self.free_loops == 1
        } else {
            self.free_loops == 0 && self.crossing_pieces().len() == 1
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.crossings.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.crossings.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Exchanges over and under at crossing `i`. Labels are untouched.
    pub fn switch_crossing(&self, i: usize) -> Result<Diagram> {
        self.check_index(i)?;
        let mut crossings = self.crossings.clone();
        crossings[i] = crossings[i].switched();
        Ok(Diagram::from_parts(crossings, self.free_loops))
    }

    /// Oriented smoothing of crossing `i`: the incoming under-edge is joined
    /// to the outgoing over-edge and the incoming over-edge to the outgoing
    /// under-edge. Closed loops created this way become free loops.
    pub fn smooth_crossing(&self, i: usize) -> Result<Diagram> {
        self.check_index(i)?;
        let cr = self.crossings[i];
        Ok(self.remove_and_join(&[i], &[(cr.under_in(), cr.over_out()), (cr.over_in(), cr.under_out())]))
    }

    /// Deletes the given crossings and glues edges according to `joins`.
    /// Every label class must end up either with two ends on surviving
    /// crossings or none (then it becomes a free loop). Surviving labels are
    /// renumbered in order.
    pub(crate) fn remove_and_join(&self, remove: &[usize], joins: &[(u32, u32)]) -> Diagram {
        let n = self.edge_count();
        let mut uf = UnionFind::new(n + 1);
        for &(a, b) in joins {
            uf.union(a as usize, b as usize);
        }
        let mut removed = vec![false; self.crossings.len()];
        for &x in remove {
            removed[x] = true;
        }
        let mut live = vec![false; n + 1];
        for (x, cr) in self.crossings.iter().enumerate() {
            if !removed[x] {
                for &e in &cr.edges {
                    let r = uf.find(e as usize);
                    live[r] = true;
                }
            }
        }
        let mut orphan = vec![false; n + 1];
        let mut new_loops = 0;
        for &x in remove {
            for &e in &self.crossings[x].edges {
                let r = uf.find(e as usize);
                if !live[r] && !orphan[r] {
                    orphan[r] = true;
                    new_loops += 1;
                }
            }
        }
        // union keeps the smallest label as root, so ranks follow label order
        let mut rank = vec![0u32; n + 1];
        let mut next = 0;
        for (e, r) in rank.iter_mut().enumerate().skip(1) {
            if live[e] && uf.find(e) == e {
                next += 1;
                *r = next;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(x, _)| !removed[*x])
            .map(|(_, cr)| Crossing::new(cr.edges.map(|e| rank[uf.find(e as usize)]), cr.sign))
            .collect();
        Diagram::from_parts(crossings, self.free_loops + new_loops)
    }

    /// Renumbers labels by `map` (which must be a bijection of `1..=2c`)
    /// and reorders crossings by `order`.
    pub fn relabeled(&self, map: &[u32], order: &[usize]) -> Result<Diagram> {
        let crossings = order
            .iter()
            .map(|&x| {
                let cr = self.crossings[x];
                Crossing::new(cr.edges.map(|e| map[e as usize - 1]), cr.sign)
            })
            .collect();
        Diagram::new(crossings, self.free_loops)
    }

    /// Splits off connected pieces. Returns the pieces that carry crossings,
    /// each renumbered in order, and the number of free loops.
    pub fn split_pieces(&self) -> (Vec<Diagram>, u32) {
        let pieces = self.crossing_pieces();
        if pieces.len() <= 1 {
            let body = if self.crossings.is_empty() {
                Vec::new()
            } else {
                vec![Diagram::from_parts(self.crossings.clone(), 0)]
            };
            return (body, self.free_loops);
        }
        let n = self.edge_count();
        let out = pieces
            .iter()
            .map(|piece| {
                let mut used = vec![false; n + 1];
                for &x in piece {
                    for &e in &self.crossings[x].edges {
                        used[e as usize] = true;
                    }
                }
                let mut rank = vec![0u32; n + 1];
                let mut next = 0;
                for e in 1..=n {
                    if used[e] {
                        next += 1;
                        rank[e] = next;
                    }
                }
                let crossings = piece
                    .iter()
                    .map(|&x| {
                        let cr = self.crossings[x];
                        Crossing::new(cr.edges.map(|e| rank[e as usize]), cr.sign)
                    })
                    .collect();
                Diagram::from_parts(crossings, 0)
            })
            .collect();
        (out, self.free_loops)
    }

    /// PD text in unwrapped form, with a `free_loops=k` suffix when `k > 0`.
    pub fn to_pd_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cr) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{cr}")?;
        }
        if self.free_loops > 0 {
            if !self.crossings.is_empty() {
                f.write_str(" ")?;
            }
            write!(f, "free_loops={}", self.free_loops)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}
