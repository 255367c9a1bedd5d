//! Exact geometric predicates for explicit points and for implicit points
//! defined as line-plane (LPI) or three-plane (TPI) intersections.
//!
//! All predicates return the sign the expression would have in exact real
//! arithmetic. Evaluation is staged: cheap floating-point filters first,
//! exact expansion arithmetic only when a filter cannot certify the sign.

pub mod arith;
pub mod derived;
pub mod expansion;
pub mod implicit;
pub mod interval;
pub mod kernel;

pub use derived::{
    inner_segment_crosses_inner_triangle, inner_segment_crosses_triangle, inner_segments_cross, misaligned,
    point_in_inner_segment, point_in_inner_triangle, point_in_segment, point_in_triangle,
};
pub use expansion::Expansion;
pub use implicit::{
    cmp_coord, orient2d_indirect, orient2d_planar, orient3d_indirect, same_point, GenericPoint, Lpi,
    OverflowError, Planar, Projection, Tpi,
};
pub use interval::Interval;
pub use kernel::{
    coincident_points_2d, coincident_points_3d, insphere, insphere_perturbed, orient2d, orient3d, Point2, Point3,
    Sign,
};
