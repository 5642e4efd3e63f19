use super::{Diagram, Slot};

/// The two crossings of a bigon and the four (outer, bigon) label pairs that
/// merge when it is removed.
type Bigon = (usize, usize, [(u32, u32); 4]);

impl Diagram {
    /// Removes Reidemeister I kinks and Reidemeister II bigons until none
    /// remain. Never adds crossings; the link type is unchanged.
    pub fn simplify(&self) -> Diagram {
        let mut d = self.clone();
        loop {
            if let Some(joins) = d.find_kink() {
                d = d.remove_and_join(&[joins.0], &joins.1);
            } else if let Some((x, y, joins)) = d.find_bigon() {
                d = d.remove_and_join(&[x, y], &joins);
            } else {
                return d;
            }
        }
    }

    /// A crossing with one edge on two cyclically adjacent slots.
    fn find_kink(&self) -> Option<(usize, [(u32, u32); 2])> {
        self.crossings.iter().enumerate().find_map(|(x, cr)| {
            (0..4).find(|&p| cr.edges[p] == cr.edges[(p + 1) % 4]).map(|p| {
                let e = cr.edges[p];
                (x, [(cr.edges[(p + 2) % 4], e), (e, cr.edges[(p + 3) % 4])])
            })
        })
    }

    /// Two crossings bounding a bigon face on which one strand passes over
    /// at both ends.
    fn find_bigon(&self) -> Option<Bigon> {
        let table = self.edge_table();
        for (x, cx) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                let o = table.other_end(&self.crossings, Slot { crossing: x, slot: p });
                if o.crossing == x {
                    continue;
                }
                let y = o.crossing;
                let q = o.slot;
                let r = (q + 3) % 4;
                let back = table.other_end(&self.crossings, Slot { crossing: y, slot: r });
                if back.crossing != x || back.slot != (p + 1) % 4 {
                    continue;
                }
                if p % 2 != q % 2 {
                    continue;
                }
                let cy = &self.crossings[y];
                debug_assert_ne!(cx.sign, cy.sign);
                let s = back.slot;
                let (e, f) = (cx.edges[p], cx.edges[s]);
                return Some((
                    x,
                    y,
                    [
                        (cx.edges[p ^ 2], e),
                        (e, cy.edges[q ^ 2]),
                        (cx.edges[s ^ 2], f),
                        (f, cy.edges[r ^ 2]),
                    ],
                ));
            }
        }
        None
    }
}
