use std::fmt;

use super::{Diagram, Sign};

/// Relabeling-invariant key of a diagram: equal codes exactly when the
/// diagrams agree up to edge relabeling and crossing reordering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalCode(bytes)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl Diagram {
    /// Lexicographically least serialization over all starting edges, with
    /// edges relabeled in traversal order. Split pieces are coded
    /// separately and sorted; the free-loop count is appended.
    pub fn canonical_code(&self) -> CanonicalCode {
        let (pieces, loops) = self.split_pieces();
        let mut codes: Vec<Vec<u8>> = pieces.iter().map(connected_code).collect();
        codes.sort();
        let mut out = Vec::new();
        out.extend_from_slice(&(codes.len() as u16).to_be_bytes());
        for c in codes {
            out.extend_from_slice(&(c.len() as u32).to_be_bytes());
            out.extend_from_slice(&c);
        }
        out.extend_from_slice(&loops.to_be_bytes());
        CanonicalCode(out)
    }
}

/// Code of a connected diagram with at least one crossing.
fn connected_code(d: &Diagram) -> Vec<u8> {
    let crossings = d.crossings();
    let table = d.edge_table();
    let n = d.edge_count();
    let mut best: Option<Vec<u8>> = None;
    let mut label = vec![0u32; n + 1];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut tuples: Vec<[u32; 5]> = Vec::with_capacity(crossings.len());
    let mut buf = Vec::with_capacity(9 * crossings.len());

    for start in 1..=n as u32 {
        label.fill(0);
        order.clear();
        let traverse = |from: u32, label: &mut Vec<u32>, order: &mut Vec<u32>| {
            let mut e = from;
            while label[e as usize] == 0 {
                order.push(e);
                label[e as usize] = order.len() as u32;
                e = d.successor(&table, e);
            }
        };
        traverse(start, &mut label, &mut order);
        let mut k = 0;
        while order.len() < n {
            let h = table.head[order[k] as usize];
            k += 1;
            let cr = &crossings[h.crossing];
            for off in 1..4 {
                let q = (h.slot + off) % 4;
                if label[cr.edges[q] as usize] == 0 {
                    let s = if cr.is_incoming(q) { q } else { q ^ 2 };
                    traverse(cr.edges[s], &mut label, &mut order);
                    break;
                }
            }
        }

        tuples.clear();
        tuples.extend(crossings.iter().map(|cr| {
            let [a, b, c, dd] = cr.edges.map(|e| label[e as usize]);
            [a, b, c, dd, (cr.sign == Sign::Negative) as u32]
        }));
        tuples.sort_unstable();
        buf.clear();
        for t in &tuples {
            for &x in &t[..4] {
                buf.extend_from_slice(&(x as u16).to_be_bytes());
            }
            buf.push(t[4] as u8);
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}
