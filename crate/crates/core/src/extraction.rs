//! Extraction of large pairwise non-convergent, non-collinear segment
//! families by recursive central projection.
//!
//! At each level the point with the largest star contributes one longest
//! segment per line through it. The rest of the set is then projected from
//! that point onto a generic hyperplane, a family is extracted from the
//! image recursively, each image segment is stretched to the longest
//! segment on its line, and lifted back to a segment of the original set.
//! Planar sets are handled by [`planar_base`].
//!
//! A lifted segment must have both endpoints strictly on the same side of
//! the hyperplane through the centre parallel to the projection plane;
//! otherwise the projection maps it onto the complement of its image
//! segment and non-convergence is not inherited. Image segments whose
//! fibers admit no such choice are dropped and counted in the trace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geometry::{central_projection, line_through, line_with_direction, Hyperplane, PointSet, Rat};
use crate::incidence::{build_incidence, dirac_point, star};
use crate::linalg::dot;
use crate::segments::{
    extreme_segment, hull_has_opposite_edges, required_family_size, Coord, Segment,
    SegmentFamily,
};

/// Number of candidate normals tried before giving up.
pub const HYPERPLANE_ATTEMPTS: usize = 64;

const NORMAL_NUMERATOR_BOUND: i64 = 16;
const NORMAL_DENOMINATOR_BOUND: i64 = 4;

/// The seeded sequence of candidate hyperplane normals in dimension `dim`.
///
/// Entries are `p/q` with `|p| <= 16` and `1 <= q <= 4`, drawn from
/// ChaCha8 seeded with `seed` on stream `stream`.
pub fn hyperplane_candidates(dim: usize, seed: u64, stream: u64) -> impl Iterator<Item = Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    std::iter::repeat_with(move || {
        (0..dim)
            .map(|_| {
                let p = rng.gen_range(-NORMAL_NUMERATOR_BOUND..=NORMAL_NUMERATOR_BOUND);
                let q = rng.gen_range(1..=NORMAL_DENOMINATOR_BOUND);
                Rat::new(p.into(), q.into())
            })
            .collect()
    })
}

/// First candidate normal `a` with `a . (p - x) != 0` for every other
/// point `p`. The plane is `{ y : a . y = a . x + 1 }`. Returns the plane
/// and the number of candidates consumed.
pub fn choose_generic_hyperplane_from(
    set: &PointSet,
    center: usize,
    candidates: impl IntoIterator<Item = Vec<Rat>>,
) -> Result<(Hyperplane, usize)> {
    set.check_index(center)?;
    if set.len() < 2 {
        return Err(invalid("projection needs at least two points"));
    }
    let x = set.point(center);
    let diffs: Vec<Vec<Rat>> = (0..set.len())
        .filter(|&i| i != center)
        .map(|i| set.point(i).minus(x))
        .collect();
    for (k, normal) in candidates.into_iter().take(HYPERPLANE_ATTEMPTS).enumerate() {
        if normal.len() != set.ambient_dim() {
            return Err(invalid("candidate normal has the wrong dimension"));
        }
        if normal.iter().all(Zero::is_zero) || diffs.iter().any(|v| dot(&normal, v).is_zero()) {
            continue;
        }
        let offset = dot(&normal, x.coords()) + Rat::one();
        return Ok((Hyperplane::new(normal, offset)?, k + 1));
    }
    Err(Error::GenericityExhausted {
        attempts: HYPERPLANE_ATTEMPTS,
    })
}

pub fn choose_generic_hyperplane(set: &PointSet, center: usize, seed: u64) -> Result<(Hyperplane, usize)> {
    let candidates = hyperplane_candidates(set.ambient_dim(), seed, 0);
    choose_generic_hyperplane_from(set, center, candidates)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTrace {
    /// Affine dimension of the set at this level.
    pub dimension: usize,
    pub point_count: usize,
    /// Index of the centre within this level's set.
    pub center: usize,
    pub star_size: usize,
    pub hyperplane_attempts: usize,
    pub s1_size: usize,
    /// Size of the recursive family after stretching to longest segments.
    pub s2_size: usize,
    pub lifted_size: usize,
    /// Image segments with no same-side lift.
    pub dropped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseTrace {
    pub point_count: usize,
    pub star_size: usize,
    pub family_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub levels: Vec<LevelTrace>,
    pub base: BaseTrace,
    pub family_size: usize,
    /// `ceil(affine_dim * n / 48)` for the input set.
    pub required: usize,
}

/// Star-plus-greedy family for a planar set.
///
/// Seeds with one longest segment per line through the Dirac point, then
/// scans the longest segments of the remaining spanned lines by decreasing
/// point count (canonical line order on ties), keeping each one that is
/// non-convergent with everything kept so far.
pub fn planar_base(set: &PointSet) -> Result<SegmentFamily<'_>> {
    let (segments, _) = planar_segments(set)?;
    let mut family = SegmentFamily::new(set, segments);
    family.verify()?;
    Ok(family)
}

fn planar_segments(set: &PointSet) -> Result<(Vec<Segment>, usize)> {
    if set.affine_dim() != 2 {
        return Err(invalid(format!(
            "planar base needs a 2-dimensional set, got dimension {}",
            set.affine_dim()
        )));
    }
    let flat = set.intrinsic();
    let (center, star_size) = dirac_point(&flat)?;
    let seeds = star_segments(&flat, center)?;
    let incidence = build_incidence(&flat)?;
    let mut lines: Vec<_> = incidence
        .lines
        .iter()
        .filter(|(_, members)| !members.contains(&center))
        .collect();
    lines.sort_by(|a, b| b.1.len().cmp(&a.1.len()));
    let candidates = lines
        .into_iter()
        .map(|(line, members)| extreme_segment(&flat, line, members.iter().copied()))
        .collect::<Result<Vec<_>>>()?;

    let chart = integer_chart(&flat);
    let small = chart.iter().flatten().all(|c| c.abs().bits() < 60);
    let segments = if small {
        let coords: Vec<[i128; 2]> = chart
            .iter()
            .map(|[x, y]| [x.to_i128().expect("small"), y.to_i128().expect("small")])
            .collect();
        greedy(&coords, seeds, candidates)
    } else {
        greedy(&chart, seeds, candidates)
    };
    Ok((segments, star_size))
}

/// Planar coordinates scaled by the common denominator.
fn integer_chart(flat: &PointSet) -> Vec<[BigInt; 2]> {
    let lcm = flat
        .points()
        .iter()
        .flat_map(|p| p.coords())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    flat.points()
        .iter()
        .map(|p| {
            let c = p.coords();
            let scale = |r: &Rat| r.numer() * (&lcm / r.denom());
            [scale(&c[0]), scale(&c[1])]
        })
        .collect()
}

fn greedy<T: Coord>(coords: &[[T; 2]], seeds: Vec<Segment>, candidates: Vec<Segment>) -> Vec<Segment> {
    let converge = |s: Segment, t: Segment| {
        let (a, b) = s.endpoints();
        let (c, d) = t.endpoints();
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let quad = [
            coords[a].clone(),
            coords[b].clone(),
            coords[c].clone(),
            coords[d].clone(),
        ];
        hull_has_opposite_edges(&quad)
    };
    let mut accepted = seeds;
    for cand in candidates {
        if accepted.iter().all(|&s| !converge(s, cand)) {
            accepted.push(cand);
        }
    }
    accepted
}

/// One longest segment on every line through `center`.
fn star_segments(set: &PointSet, center: usize) -> Result<Vec<Segment>> {
    let x = set.point(center);
    star(set, center)?
        .into_iter()
        .map(|(direction, members)| {
            let line = line_with_direction(x, direction);
            extreme_segment(set, &line, std::iter::once(center).chain(members))
        })
        .collect()
}

/// Runs the recursive extraction and certifies the result.
pub fn extract_family(set: &PointSet, seed: u64) -> Result<(SegmentFamily<'_>, ExtractionTrace)> {
    if set.affine_dim() < 2 {
        return Err(invalid(format!(
            "extraction needs affine dimension at least 2, got {}",
            set.affine_dim()
        )));
    }
    let mut trace = ExtractionTrace {
        required: required_family_size(set),
        ..ExtractionTrace::default()
    };
    let segments = extract_level(set, seed, 0, &mut trace)?;
    trace.family_size = segments.len();
    let mut family = SegmentFamily::new(set, segments);
    family.verify()?;
    Ok((family, trace))
}

fn extract_level(set: &PointSet, seed: u64, depth: u64, trace: &mut ExtractionTrace) -> Result<Vec<Segment>> {
    let flat = set.intrinsic();
    let dim = flat.affine_dim();
    if dim == 2 {
        let (segments, star_size) = planar_segments(&flat)?;
        trace.base = BaseTrace {
            point_count: flat.len(),
            star_size,
            family_size: segments.len(),
        };
        return Ok(segments);
    }

    let (center, star_size) = dirac_point(&flat)?;
    let s1 = star_segments(&flat, center)?;
    let candidates = hyperplane_candidates(flat.ambient_dim(), seed, depth);
    let (plane, attempts) = choose_generic_hyperplane_from(&flat, center, candidates)?;
    let projection = central_projection(&flat, center, &plane)?;
    let image = PointSet::new(dim - 1, projection.images.clone())?;
    if image.affine_dim() != dim - 1 {
        return Err(Error::InvariantViolated(format!(
            "projected set has dimension {} at level dimension {dim}",
            image.affine_dim()
        )));
    }

    let slot = trace.levels.len();
    trace.levels.push(LevelTrace {
        dimension: dim,
        point_count: flat.len(),
        center,
        star_size,
        hyperplane_attempts: attempts,
        s1_size: s1.len(),
        s2_size: 0,
        lifted_size: 0,
        dropped: 0,
    });

    let sub = extract_level(&image, seed, depth + 1, trace)?;
    let mut s2 = Vec::with_capacity(sub.len());
    for s in sub {
        let (a, b) = s.endpoints();
        let line = line_through(image.point(a), image.point(b))?;
        let on_line = (0..image.len()).filter(|&i| line.contains(image.point(i)));
        s2.push(extreme_segment(&image, &line, on_line)?);
    }

    let x = flat.point(center);
    let side = |i: usize| dot(plane.normal(), &flat.point(i).minus(x)).is_positive();
    let mut family = s1;
    let mut dropped = 0;
    for s in &s2 {
        let (u, v) = s.endpoints();
        match same_side_lift(&projection.fibers[u], &projection.fibers[v], side) {
            Some(lifted) => family.push(lifted),
            None => dropped += 1,
        }
    }
    let level = &mut trace.levels[slot];
    level.s2_size = s2.len();
    level.lifted_size = s2.len() - dropped;
    level.dropped = dropped;
    Ok(family)
}

/// Preimages on a common side, smallest indices first. Among the two
/// sides the lexicographically smaller pair wins.
fn same_side_lift(first: &[usize], second: &[usize], positive: impl Fn(usize) -> bool) -> Option<Segment> {
    [true, false]
        .into_iter()
        .filter_map(|want| {
            let p = first.iter().copied().find(|&i| positive(i) == want)?;
            let q = second.iter().copied().find(|&i| positive(i) == want)?;
            Segment::new(p, q).ok()
        })
        .min()
}
