//! Exact points, directions, lines and hyperplanes.
//!
//! Every quantity is an arbitrary-precision rational, so parallelism,
//! incidence and side-of-hyperplane tests are decided exactly.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, row_echelon};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The vector `self - other`.
    pub fn minus(&self, other: &Point) -> Vec<Rat> {
        linalg::sub(&self.coords, &other.coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of pairwise distinct points sharing one ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    ambient_dim: usize,
    points: Vec<Point>,
    affine_dim: usize,
}

impl PointSet {
    /// Builds a point set. Duplicate points are rejected rather than merged.
    pub fn new(ambient_dim: usize, points: Vec<Point>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(invalid("ambient dimension must be positive"));
        }
        if points.is_empty() {
            return Err(invalid("point set is empty"));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != ambient_dim) {
            return Err(invalid(format!(
                "point {i} has {} coordinates, expected {ambient_dim}",
                p.dim()
            )));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(invalid(format!("point {i} {p:?} is a duplicate")));
            }
        }
        let affine_dim = affine_dimension(&points)?;
        Ok(PointSet {
            ambient_dim,
            points,
            affine_dim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.points.len() {
            Ok(())
        } else {
            Err(invalid(format!(
                "point index {index} out of range for {} points",
                self.points.len()
            )))
        }
    }

    /// Re-expresses the set in coordinates of its own affine hull.
    ///
    /// The map keeps the coordinates at the pivot columns of the difference
    /// vectors, which is an affine bijection from the hull onto
    /// `R^affine_dim`. Point order is preserved, so segment indices carry
    /// over unchanged.
    pub fn intrinsic(&self) -> PointSet {
        if self.affine_dim == self.ambient_dim || self.affine_dim == 0 {
            return self.clone();
        }
        let base = &self.points[0];
        let mut diffs: Vec<Vec<Rat>> = self.points[1..].iter().map(|p| p.minus(base)).collect();
        let pivots = row_echelon(&mut diffs);
        let points = self
            .points
            .iter()
            .map(|p| Point::new(pivots.iter().map(|&c| p.coords[c].clone()).collect()))
            .collect();
        PointSet {
            ambient_dim: self.affine_dim,
            points,
            affine_dim: self.affine_dim,
        }
    }
}

/// Canonical representative of an unoriented line direction: a primitive
/// integer vector whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    coords: Vec<BigInt>,
}

impl Direction {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Index of the first nonzero entry.
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("direction is nonzero")
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.coords.iter().cloned().map(Rat::from_integer).collect()
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn canonical_direction(v: &[Rat]) -> Result<Direction> {
    if v.iter().all(Zero::is_zero) {
        return Err(invalid("zero vector has no direction"));
    }
    let denom_lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut coords: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let leading_negative = coords.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
    for c in coords.iter_mut() {
        *c /= &g;
        if leading_negative {
            *c = -&*c;
        }
    }
    Ok(Direction { coords })
}

/// A line in canonical form. The anchor is the unique point of the line
/// whose coordinate at the direction's pivot index is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    direction: Direction,
    anchor: Point,
}

impl Line {
    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    /// The parameter `t` with `p = anchor + t * direction`. Only meaningful
    /// for points on the line.
    pub fn parameter(&self, p: &Point) -> Rat {
        let k = self.direction.pivot();
        &p.coords[k] / Rat::from_integer(self.direction.coords[k].clone())
    }

    pub fn contains(&self, p: &Point) -> bool {
        let t = self.parameter(p);
        p.coords
            .iter()
            .zip(self.anchor.coords.iter().zip(&self.direction.coords))
            .all(|(c, (a, u))| *c == a + &t * Rat::from_integer(u.clone()))
    }
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(invalid("a line needs two distinct points"));
    }
    let direction = canonical_direction(&q.minus(p))?;
    Ok(line_with_direction(p, direction))
}

/// The canonical line through `p` with the given direction.
pub fn line_with_direction(p: &Point, direction: Direction) -> Line {
    let k = direction.pivot();
    let t = &p.coords[k] / Rat::from_integer(direction.coords[k].clone());
    let anchor = p
        .coords
        .iter()
        .zip(&direction.coords)
        .map(|(c, u)| c - &t * Rat::from_integer(u.clone()))
        .collect();
    Line {
        direction,
        anchor: Point::new(anchor),
    }
}

/// Rank of the difference vectors from the first point.
pub fn affine_dimension(points: &[Point]) -> Result<usize> {
    let (first, rest) = points
        .split_first()
        .ok_or_else(|| invalid("affine dimension of an empty list"))?;
    let diffs: Vec<Vec<Rat>> = rest.iter().map(|p| p.minus(first)).collect();
    Ok(linalg::rank(&diffs))
}

/// The affine hyperplane `{ y : normal . y = offset }` together with an
/// exact affine coordinate system on it.
///
/// With `k` the first nonzero index of the normal, the origin is the point
/// with every coordinate zero except `offset / normal[k]` at `k`, and the
/// basis vectors are `e_j - (normal[j] / normal[k]) e_k` for `j != k`. The
/// coordinates of a point of the hyperplane are therefore its offsets from
/// the origin with index `k` dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<Rat>,
    offset: Rat,
    pivot: usize,
    origin: Point,
    basis: Vec<Vec<Rat>>,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Result<Self> {
        let pivot = normal
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| invalid("hyperplane normal is zero"))?;
        let d = normal.len();
        let mut origin = vec![Rat::zero(); d];
        origin[pivot] = &offset / &normal[pivot];
        let basis = (0..d)
            .filter(|&j| j != pivot)
            .map(|j| {
                let mut b = vec![Rat::zero(); d];
                b[j] = Rat::one();
                b[pivot] = -(&normal[j] / &normal[pivot]);
                b
            })
            .collect();
        Ok(Hyperplane {
            normal,
            offset,
            pivot,
            origin: Point::new(origin),
            basis,
        })
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed value `normal . p - offset`.
    pub fn evaluate(&self, p: &Point) -> Rat {
        linalg::dot(&self.normal, p.coords()) - &self.offset
    }

    /// Affine coordinates of a point lying on the hyperplane.
    pub fn coordinates(&self, p: &Point) -> Point {
        Point::new(
            p.coords
                .iter()
                .zip(&self.origin.coords)
                .enumerate()
                .filter(|&(j, _)| j != self.pivot)
                .map(|(_, (c, o))| c - o)
                .collect(),
        )
    }

    /// Embeds affine coordinates back into the ambient space.
    pub fn embed(&self, coords: &Point) -> Point {
        let mut y = self.origin.coords.clone();
        for (c, b) in coords.coords.iter().zip(&self.basis) {
            y = linalg::add(&y, &linalg::scale(b, c));
        }
        Point::new(y)
    }
}

/// Result of projecting `P \ {x}` from `x` onto a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    /// Distinct images in the hyperplane's affine coordinates, ordered by
    /// their smallest preimage index.
    pub images: Vec<Point>,
    /// `fibers[i]` lists the preimage indices of `images[i]`, ascending.
    pub fibers: Vec<Vec<usize>>,
    /// For each point of `P`, the index of its image (`None` for the centre).
    pub image_of: Vec<Option<usize>>,
}

pub fn central_projection(set: &PointSet, center: usize, plane: &Hyperplane) -> Result<Projection> {
    set.check_index(center)?;
    if plane.dim() != set.ambient_dim() {
        return Err(invalid("hyperplane and point set dimensions differ"));
    }
    let x = set.point(center);
    let gap = -plane.evaluate(x);
    if gap.is_zero() {
        return Err(Error::NonGenericHyperplane { point: center });
    }
    let mut images: Vec<Point> = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    let mut image_of = vec![None; set.len()];
    let mut lookup = std::collections::HashMap::new();
    for (i, p) in set.points().iter().enumerate() {
        if i == center {
            continue;
        }
        let v = p.minus(x);
        let along = linalg::dot(plane.normal(), &v);
        if along.is_zero() {
            return Err(Error::NonGenericHyperplane { point: i });
        }
        let t = &gap / along;
        let hit = Point::new(linalg::add(x.coords(), &linalg::scale(&v, &t)));
        let coords = plane.coordinates(&hit);
        let slot = *lookup.entry(coords.clone()).or_insert_with(|| {
            images.push(coords);
            fibers.push(Vec::new());
            images.len() - 1
        });
        fibers[slot].push(i);
        image_of[i] = Some(slot);
    }
    Ok(Projection {
        images,
        fibers,
        image_of,
    })
}
