//! Exact-arithmetic tools for counting the distinct directions spanned by a
//! point set, extracting large families of pairwise non-convergent and
//! non-collinear segments, and counting distinct distances in polytopal
//! norms.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no
//! floating point in any predicate.

pub mod census;
pub mod error;
pub mod extraction;
pub mod generators;
pub mod geometry;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod segments;

pub use census::{
    check_direction_bound, check_distance_bound, direction_census, distance_census, norm_eval,
    random_polytopal_norm, DirectionCensus, DistanceCensus, PolytopalNorm,
};
pub use error::{Error, Result};
pub use extraction::{extract_family, planar_base, ExtractionTrace};
pub use geometry::{
    affine_dimension, canonical_direction, central_projection, line_through, Direction, Hyperplane,
    Line, Point, PointSet, Rat,
};
pub use incidence::{build_incidence, dirac_point, star_count, IncidenceStructure};
pub use segments::{
    segments_collinear, segments_convergent, verify_family, CertificateReport, Segment, SegmentFamily,
};
