//! Random diagrams for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{braid_closure, Diagram};

pub fn random_braid_word<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// Closure of a random braid with 2..=`max_strands` strands and
/// 1..=`max_len` letters. May be split or have several components.
pub fn random_braid_diagram<R: Rng + ?Sized>(rng: &mut R, max_strands: usize, max_len: usize) -> Diagram {
    let strands = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(1..=max_len.max(1));
    braid_closure(strands, &random_braid_word(rng, strands, len)).expect("generators are in range")
}

/// Like [`random_braid_diagram`], retried until the closure is a connected
/// one-component diagram with at least one crossing.
pub fn random_knot_diagram<R: Rng + ?Sized>(rng: &mut R, max_strands: usize, max_len: usize) -> Diagram {
    loop {
        let d = random_braid_diagram(rng, max_strands, max_len);
        if d.crossing_count() > 0 && d.num_components() == 1 && d.is_connected() {
            return d;
        }
    }
}

/// Same diagram with shuffled labels and crossing order.
pub fn random_relabel<R: Rng + ?Sized>(d: &Diagram, rng: &mut R) -> Diagram {
    let mut map: Vec<u32> = (1..=d.edge_count() as u32).collect();
    map.shuffle(rng);
    let mut order: Vec<usize> = (0..d.crossing_count()).collect();
    order.shuffle(rng);
    d.relabeled(&map, &order)
        .expect("a relabelling of a valid diagram is valid")
}

/// Switches each crossing independently with probability 1/2.
pub fn random_switches<R: Rng + ?Sized>(d: &Diagram, rng: &mut R) -> Diagram {
    let mut out = d.clone();
    for i in 0..d.crossing_count() {
        if rng.gen_bool(0.5) {
            out = out.switch_crossing(i).expect("index in range");
        }
    }
    out
}
