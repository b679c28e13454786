//! Segment predicates and certificates for non-convergent families.
//!
//! Two segments are convergent when they are opposite edges of a strictly
//! convex planar quadrilateral. Parallel, non-collinear segments are
//! convergent; collinear segments are reported as collinear instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Sub};

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::geometry::{Line, Point, PointSet, Rat};
use crate::linalg::row_echelon;

/// Unordered pair of distinct point indices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    a: usize,
    b: usize,
}

impl Segment {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        match p.cmp(&q) {
            Ordering::Less => Ok(Segment { a: p, b: q }),
            Ordering::Greater => Ok(Segment { a: q, b: p }),
            Ordering::Equal => Err(invalid(format!("segment endpoints coincide ({p})"))),
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains_endpoint(&self, i: usize) -> bool {
        self.a == i || self.b == i
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// True iff all four endpoints lie on one line.
pub fn segments_collinear(set: &PointSet, s: Segment, t: Segment) -> bool {
    let base = set.point(s.a);
    let mut diffs = vec![
        set.point(s.b).minus(base),
        set.point(t.a).minus(base),
        set.point(t.b).minus(base),
    ];
    row_echelon(&mut diffs).len() <= 1
}

pub fn segments_convergent(set: &PointSet, s: Segment, t: Segment) -> bool {
    if s.contains_endpoint(t.a) || s.contains_endpoint(t.b) {
        return false;
    }
    let quad = [set.point(s.a), set.point(s.b), set.point(t.a), set.point(t.b)];
    match plane_coordinates(&quad) {
        Some(flat) => hull_has_opposite_edges(&flat),
        None => false,
    }
}

/// Coordinates of four points in an exact affine chart of the plane they
/// span, or `None` when they are collinear or not coplanar.
fn plane_coordinates(quad: &[&Point; 4]) -> Option<[[Rat; 2]; 4]> {
    let take = |cols: [usize; 2]| {
        quad.map(|p| [p.coords()[cols[0]].clone(), p.coords()[cols[1]].clone()])
    };
    if quad[0].dim() == 2 {
        let flat = take([0, 1]);
        return (!all_collinear(&flat)).then_some(flat);
    }
    let mut diffs: Vec<Vec<Rat>> = quad[1..].iter().map(|p| p.minus(quad[0])).collect();
    let pivots = row_echelon(&mut diffs);
    (pivots.len() == 2).then(|| take([pivots[0], pivots[1]]))
}

fn all_collinear<T: Coord>(flat: &[[T; 2]; 4]) -> bool {
    orient(&flat[0], &flat[1], &flat[2]).is_zero() && orient(&flat[0], &flat[1], &flat[3]).is_zero()
}

/// Exact ordered ring used for planar predicates (rationals, or integers
/// once a chart has been scaled to clear denominators).
pub(crate) trait Coord: Clone + Ord + Zero + Sub<Output = Self> + Mul<Output = Self> {}

impl<T: Clone + Ord + Zero + Sub<Output = T> + Mul<Output = T>> Coord for T {}

/// Twice the signed area of `(p, q, r)`; positive for a left turn.
pub(crate) fn orient<T: Coord>(p: &[T; 2], q: &[T; 2], r: &[T; 2]) -> T {
    (q[0].clone() - p[0].clone()) * (r[1].clone() - p[1].clone())
        - (q[1].clone() - p[1].clone()) * (r[0].clone() - p[0].clone())
}

/// Vertices of the convex hull (counter-clockwise, strict turns only).
fn strict_hull<T: Coord>(pts: &[[T; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len() + 1);
    for pass in [order.clone(), order.into_iter().rev().collect()] {
        let start = hull.len();
        for i in pass {
            while hull.len() >= start + 2
                && orient(&pts[hull[hull.len() - 2]], &pts[hull[hull.len() - 1]], &pts[i])
                    <= T::zero()
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Points 0-1 and 2-3 are both edges of a hull with four strict vertices.
pub(crate) fn hull_has_opposite_edges<T: Coord>(flat: &[[T; 2]; 4]) -> bool {
    let hull = strict_hull(flat);
    if hull.len() != 4 {
        return false;
    }
    let is_edge = |u: usize, v: usize| {
        (0..4).any(|k| {
            let (p, q) = (hull[k], hull[(k + 1) % 4]);
            (p == u && q == v) || (p == v && q == u)
        })
    };
    is_edge(0, 1) && is_edge(2, 3)
}

/// The segment between the extreme points of `set` on `line`.
pub fn longest_segment_on_line(set: &PointSet, line: &Line) -> Result<Segment> {
    let on_line = (0..set.len()).filter(|&i| line.contains(set.point(i)));
    extreme_segment(set, line, on_line)
}

/// The segment between the members with smallest and largest parameter
/// along `line`. All members must lie on the line.
pub fn extreme_segment(
    set: &PointSet,
    line: &Line,
    members: impl IntoIterator<Item = usize>,
) -> Result<Segment> {
    let mut lo: Option<(Rat, usize)> = None;
    let mut hi: Option<(Rat, usize)> = None;
    for i in members {
        let t = line.parameter(set.point(i));
        if lo.as_ref().is_none_or(|(best, _)| t < *best) {
            lo = Some((t.clone(), i));
        }
        if hi.as_ref().is_none_or(|(best, _)| t > *best) {
            hi = Some((t, i));
        }
    }
    match (lo, hi) {
        (Some((_, a)), Some((_, b))) if a != b => Segment::new(a, b),
        _ => Err(invalid("fewer than two points of the set lie on the line")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Convergent,
    Collinear,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Convergent => "convergent",
            ViolationKind::Collinear => "collinear",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub first: usize,
    pub second: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub valid: bool,
    /// Offending pairs of family positions, sorted.
    pub violations: Vec<Violation>,
    pub family_size: usize,
    /// `ceil(affine_dim * n / 48)`.
    pub lower_bound_required: usize,
    pub meets_bound: bool,
}

/// `ceil(affine_dim * n / 48)`.
pub fn required_family_size(set: &PointSet) -> usize {
    (set.affine_dim() * set.len()).div_ceil(48)
}

/// Exhaustive pairwise check of a segment family.
pub fn verify_family(set: &PointSet, segments: &[Segment]) -> Result<CertificateReport> {
    for s in segments {
        set.check_index(s.b)?;
    }
    let mut violations = Vec::new();
    for (i, &s) in segments.iter().enumerate() {
        for (j, &t) in segments.iter().enumerate().skip(i + 1) {
            let kind = if segments_collinear(set, s, t) {
                Some(ViolationKind::Collinear)
            } else if segments_convergent(set, s, t) {
                Some(ViolationKind::Convergent)
            } else {
                None
            };
            if let Some(kind) = kind {
                violations.push(Violation {
                    first: i,
                    second: j,
                    kind,
                });
            }
        }
    }
    let required = required_family_size(set);
    Ok(CertificateReport {
        valid: violations.is_empty(),
        violations,
        family_size: segments.len(),
        lower_bound_required: required,
        meets_bound: segments.len() >= required,
    })
}

/// Segments on a common point set, optionally with a certificate.
#[derive(Clone, Debug)]
pub struct SegmentFamily<'a> {
    pub base: &'a PointSet,
    pub segments: Vec<Segment>,
    pub verified: Option<CertificateReport>,
}

impl<'a> SegmentFamily<'a> {
    pub fn new(base: &'a PointSet, segments: Vec<Segment>) -> Self {
        SegmentFamily {
            base,
            segments,
            verified: None,
        }
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn verify(&mut self) -> Result<&CertificateReport> {
        let report = verify_family(self.base, &self.segments)?;
        Ok(self.verified.insert(report))
    }

    pub fn is_certified(&self) -> bool {
        self.verified.as_ref().is_some_and(|r| r.valid)
    }
}
