//! Planar diagram arithmetic for oriented links: HOMFLY polynomials by a
//! memoised skein recursion, Seifert circles, parallel-band families and the
//! z-degree bound `maxdeg_z P <= 2g + mu - 1`.

pub mod diagram;
pub mod error;
pub mod family;
pub mod homfly;
pub mod morton;
pub mod poly;
pub mod random;
pub mod seifert;
pub mod table;
mod util;

pub use diagram::{braid_closure, parse_pd, CanonicalCode, Crossing, Diagram, Sign};
pub use error::{Error, Result};
pub use family::{
    crossing_change_candidates, family_sequence, insert_parallel_bands, whitehead_double, FamilyMember, FamilySpec,
};
pub use homfly::{homfly, naive_homfly, skein_trace, Engine, EngineConfig};
pub use morton::{
    morton_bound_diagram, morton_defect, verify_skein_degree_inequalities, verify_theorem_family, FamilyReport,
};
pub use poly::{Exponent, LaurentPoly1, LaurentPoly2};
pub use seifert::{diagram_genus, seifert_circles, CrossingClass, SeifertDecomposition};
pub use table::{load_knot_table, KnotTable, TableEntry};
