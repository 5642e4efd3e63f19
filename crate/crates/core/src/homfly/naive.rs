use super::{choose_skein_crossing, skein_combine, unlink_poly};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly2;

pub const NAIVE_LIMIT: usize = 10;

/// Plain skein recursion: no simplification, splitting or memoisation.
/// Intended as a reference for small diagrams.
pub fn naive_homfly(d: &Diagram) -> Result<LaurentPoly2> {
    if d.crossing_count() > NAIVE_LIMIT {
        return Err(Error::TooLarge {
            crossings: d.crossing_count(),
            limit: NAIVE_LIMIT,
        });
    }
    recurse(d)
}

fn recurse(d: &Diagram) -> Result<LaurentPoly2> {
    match choose_skein_crossing(d) {
        None => Ok(unlink_poly(d.num_components())),
        Some(i) => {
            let sign = d.crossings()[i].sign;
            let switched = recurse(&d.switch_crossing(i)?)?;
            let smoothed = recurse(&d.smooth_crossing(i)?)?;
            Ok(skein_combine(sign, &switched, &smoothed))
        }
    }
}
