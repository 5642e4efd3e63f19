use super::{Crossing, Diagram, Sign};
use crate::error::{Error, Result};
use crate::util::UnionFind;

impl Diagram {
    /// Assembles a diagram from crossings whose labels lie in
    /// `1..=label_count`, gluing labels listed in `joins`. Label classes
    /// that touch no crossing become free loops; survivors are renumbered in
    /// order of their smallest member.
    pub(crate) fn assemble(
        crossings: &[Crossing],
        label_count: usize,
        joins: &[(u32, u32)],
        free_loops: u32,
    ) -> Result<Diagram> {
        let mut uf = UnionFind::new(label_count + 1);
        for &(a, b) in joins {
            uf.union(a as usize, b as usize);
        }
        let mut used = vec![false; label_count + 1];
        for cr in crossings {
            for &e in &cr.edges {
                used[uf.find(e as usize)] = true;
            }
        }
        let mut rank = vec![0u32; label_count + 1];
        let mut next = 0;
        let mut loops = free_loops;
        for e in 1..=label_count {
            if uf.find(e) == e {
                if used[e] {
                    next += 1;
                    rank[e] = next;
                } else {
                    loops += 1;
                }
            }
        }
        let crossings = crossings
            .iter()
            .map(|cr| Crossing::new(cr.edges.map(|e| rank[uf.find(e as usize)]), cr.sign))
            .collect();
        Diagram::new(crossings, loops)
    }
}

/// Closure of a braid on `strands` strands. Generator `k` is
/// `sigma_k` (positive crossing), `-k` its inverse; strands run upward and
/// close up on the right.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::InvalidPd("a braid needs at least one strand".into()));
    }
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let bottom: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut cur = bottom.clone();
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let j = g.unsigned_abs() as usize;
        if j == 0 || j >= strands {
            return Err(Error::InvalidPd(format!(
                "generator {g} outside a {strands}-strand braid"
            )));
        }
        let (l, r) = (cur[j - 1], cur[j]);
        let (nw, ne) = (fresh(), fresh());
        crossings.push(if g > 0 {
            Crossing::new([r, ne, nw, l], Sign::Positive)
        } else {
            Crossing::new([l, r, ne, nw], Sign::Negative)
        });
        cur[j - 1] = nw;
        cur[j] = ne;
    }
    let joins: Vec<(u32, u32)> = cur.iter().copied().zip(bottom.iter().copied()).collect();
    Diagram::assemble(&crossings, next as usize, &joins, 0)
}
