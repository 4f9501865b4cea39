//! Elliptic curves over Q: models, invariants, reduction, point counting.

mod cm;
mod count;
mod model;
mod point;

pub use cm::{
    cm_status, curve_with_j, is_cm_j, CmStatus, CmVerdict, CM_J_INVARIANTS, CM_MIN_SUPERSINGULAR,
    NON_CM_MAX_SUPERSINGULAR,
};
pub use count::{
    count_points, count_points_naive, frobenius_table, is_good_prime, trace_of_frobenius,
    within_hasse_bound, FrobeniusTable,
};
pub use model::{j_invariant_sw, rt2_from_roots, CurveLW, CurveRT2, NotRt2};
pub use point::Point;
