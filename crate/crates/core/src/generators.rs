//! Seeded point configurations.
//!
//! Every generator draws from ChaCha8 seeded with `seed_from_u64(seed)`.
//! Generators that need genericity verify it after construction and retry
//! on streams `1, 2, ...` (stream `0` is the first attempt), up to
//! [`MAX_ATTEMPTS`] attempts.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geometry::{int, Point, PointSet, Rat};
use crate::incidence::build_incidence;
use crate::linalg::{self, rank};

pub const MAX_ATTEMPTS: u64 = 16;

/// Upper limit on the number of points `integer_grid` will produce.
pub const GRID_POINT_CAP: usize = 200_000;

const GENERIC_HEIGHT: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    NearPencil,
    SkewLines,
    ApPlusGeneric,
    IntegerGrid,
    Random,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::NearPencil,
        GeneratorKind::SkewLines,
        GeneratorKind::ApPlusGeneric,
        GeneratorKind::IntegerGrid,
        GeneratorKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::NearPencil => "near_pencil",
            GeneratorKind::SkewLines => "skew_lines",
            GeneratorKind::ApPlusGeneric => "ap_plus_generic",
            GeneratorKind::IntegerGrid => "integer_grid",
            GeneratorKind::Random => "random",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown generator kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Edge length for `integer_grid` (`n` is ignored there).
    pub side: usize,
    /// Coordinate height for `random`.
    pub height: i64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, d: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            d,
            seed,
            side: 3,
            height: 100,
        }
    }

    pub fn generate(&self) -> Result<PointSet> {
        match self.kind {
            GeneratorKind::NearPencil => near_pencil(self.n, self.d, self.seed),
            GeneratorKind::SkewLines => skew_lines(self.d, self.n, self.seed),
            GeneratorKind::ApPlusGeneric => ap_plus_generic(self.n, self.d, self.seed),
            GeneratorKind::IntegerGrid => integer_grid(self.side, self.d),
            GeneratorKind::Random => random_points(self.n, self.d, self.seed, self.height),
        }
    }
}

fn rng_for(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

/// `p/q` with `|p| <= height`, `1 <= q <= height`.
fn random_rat(rng: &mut ChaCha8Rng, height: i64) -> Rat {
    Rat::new(
        rng.gen_range(-height..=height).into(),
        rng.gen_range(1..=height).into(),
    )
}

fn random_point(rng: &mut ChaCha8Rng, d: usize, height: i64) -> Point {
    Point::new((0..d).map(|_| random_rat(rng, height)).collect())
}

fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..d).map(|_| int(rng.gen_range(-6..=6))).collect();
        if !v.iter().all(Zero::is_zero) {
            return v;
        }
    }
}

fn on_line(anchor: &Point, direction: &[Rat], t: &Rat) -> Point {
    Point::new(linalg::add(anchor.coords(), &linalg::scale(direction, t)))
}

fn retry<T>(what: &str, mut attempt_fn: impl FnMut(u64) -> Result<Option<T>>) -> Result<T> {
    for attempt in 0..MAX_ATTEMPTS {
        if let Some(found) = attempt_fn(attempt)? {
            return Ok(found);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS as usize,
        reason: what.to_string(),
    })
}

fn check_pencil_args(n: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(invalid("near-pencil needs d >= 2"));
    }
    if n < d + 1 {
        return Err(invalid(format!("near-pencil needs n >= d + 1 (n = {n}, d = {d})")));
    }
    Ok(())
}

/// `n - d + 1` points on one line plus `d - 1` generic points.
///
/// The first `n - d + 1` points of the result are the collinear ones.
pub fn near_pencil(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    check_pencil_args(n, d)?;
    let on = n - d + 1;
    retry("near-pencil genericity", |attempt| {
        let mut rng = rng_for(seed, attempt);
        let params: Vec<i64> = sample(&mut rng, 8 * n + 1, on)
            .into_iter()
            .map(|i| i as i64 - 4 * n as i64)
            .collect();
        pencil_with_params(&mut rng, d, &params)
    })
}

/// Like [`near_pencil`] but the collinear points form an arithmetic
/// progression, listed in order first.
pub fn ap_plus_generic(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    check_pencil_args(n, d)?;
    let on = n - d + 1;
    retry("arithmetic-progression genericity", |attempt| {
        let mut rng = rng_for(seed, attempt);
        let params: Vec<i64> = (0..on as i64).collect();
        pencil_with_params(&mut rng, d, &params)
    })
}

fn pencil_with_params(rng: &mut ChaCha8Rng, d: usize, params: &[i64]) -> Result<Option<PointSet>> {
    let anchor = random_point(rng, d, GENERIC_HEIGHT);
    let direction = random_direction(rng, d);
    let mut points: Vec<Point> = params
        .iter()
        .map(|&t| on_line(&anchor, &direction, &int(t)))
        .collect();
    points.extend((1..d).map(|_| random_point(rng, d, GENERIC_HEIGHT)));
    if points.iter().collect::<HashSet<_>>().len() != points.len() {
        return Ok(None);
    }
    let set = PointSet::new(d, points)?;
    Ok(validate_near_pencil(&set, params.len()).then_some(set))
}

/// Genericity certificate for a near-pencil whose first `on_line` points
/// are the collinear ones: the set is `d`-dimensional, those points span
/// the only line with more than two points, no other point lies on it, and
/// no two spanned lines are parallel.
pub fn validate_near_pencil(set: &PointSet, on_line: usize) -> bool {
    let d = set.ambient_dim();
    if set.affine_dim() != d || on_line < 2 || on_line > set.len() {
        return false;
    }
    let Ok(incidence) = build_incidence(set) else {
        return false;
    };
    let main: Vec<usize> = (0..on_line).collect();
    let mut directions = HashSet::new();
    for (line, members) in &incidence.lines {
        let is_main = members.contains(&0) && members.contains(&1);
        if is_main && *members != main {
            return false;
        }
        if !is_main && members.len() != 2 {
            return false;
        }
        if !directions.insert(line.direction().clone()) {
            return false;
        }
    }
    true
}

/// `(d + 1) / 2` pairwise skew lines spanning `R^d`, each carrying
/// `2n / (d + 1)` points. Points are listed line by line.
pub fn skew_lines(d: usize, n: usize, seed: u64) -> Result<PointSet> {
    if d % 2 == 0 {
        return Err(invalid(format!("skew-lines needs odd d, got {d}")));
    }
    if (2 * n) % (d + 1) != 0 {
        return Err(invalid(format!("skew-lines needs (d + 1) | 2n (n = {n}, d = {d})")));
    }
    let per_line = 2 * n / (d + 1);
    if per_line < 2 {
        return Err(invalid("skew-lines needs at least two points per line"));
    }
    let count = (d + 1) / 2;
    retry("skew-lines spanning", |attempt| {
        let mut rng = rng_for(seed, attempt);
        let lines: Vec<(Point, Vec<Rat>)> = (0..count)
            .map(|_| (random_point(&mut rng, d, GENERIC_HEIGHT), random_direction(&mut rng, d)))
            .collect();
        if !lines_span_and_skew(&lines, d) {
            return Ok(None);
        }
        let mut points = Vec::with_capacity(n);
        for (anchor, direction) in &lines {
            let params = sample(&mut rng, 8 * per_line + 1, per_line);
            points.extend(
                params
                    .into_iter()
                    .map(|t| on_line(anchor, direction, &int(t as i64 - 4 * per_line as i64))),
            );
        }
        let set = PointSet::new(d, points)?;
        Ok((set.affine_dim() == d).then_some(set))
    })
}

/// The lines' anchors and directions affinely span `R^d`, and every pair is
/// skew (not coplanar, hence neither parallel nor meeting).
pub fn lines_span_and_skew(lines: &[(Point, Vec<Rat>)], d: usize) -> bool {
    let (a0, _) = &lines[0];
    let mut generators: Vec<Vec<Rat>> = lines.iter().map(|(_, u)| u.clone()).collect();
    generators.extend(lines[1..].iter().map(|(a, _)| a.minus(a0)));
    if rank(&generators) != d {
        return false;
    }
    if d < 3 {
        return true;
    }
    for (i, (ai, ui)) in lines.iter().enumerate() {
        for (aj, uj) in &lines[i + 1..] {
            if rank(&[ui.clone(), uj.clone(), aj.minus(ai)]) != 3 {
                return false;
            }
        }
    }
    true
}

/// All lattice points of `{0, ..., side - 1}^d`, in lexicographic order.
pub fn integer_grid(side: usize, d: usize) -> Result<PointSet> {
    if side < 2 || d < 1 {
        return Err(invalid("integer grid needs side >= 2 and d >= 1"));
    }
    let total = u32::try_from(d)
        .ok()
        .and_then(|e| side.checked_pow(e))
        .filter(|&t| t <= GRID_POINT_CAP)
        .ok_or_else(|| invalid(format!("integer grid {side}^{d} exceeds {GRID_POINT_CAP} points")))?;
    let points = (0..total)
        .map(|mut code| {
            let mut coords = vec![Rat::zero(); d];
            for c in coords.iter_mut().rev() {
                *c = Rat::from_integer(BigInt::from(code % side));
                code /= side;
            }
            Point::new(coords)
        })
        .collect();
    PointSet::new(d, points)
}

/// `n` distinct points with coordinates `p/q`, `|p| <= height`,
/// `1 <= q <= height`, affinely spanning `R^d`.
pub fn random_points(n: usize, d: usize, seed: u64, height: i64) -> Result<PointSet> {
    if d < 1 || n < d + 1 {
        return Err(invalid(format!("random points need n >= d + 1 (n = {n}, d = {d})")));
    }
    if height < 1 {
        return Err(invalid("height must be positive"));
    }
    let draws_cap = 100 * n + 1000;
    retry("random points spanning", |attempt| {
        let mut rng = rng_for(seed, attempt);
        let mut seen = HashSet::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for _ in 0..draws_cap {
            if points.len() == n {
                break;
            }
            let p = random_point(&mut rng, d, height);
            if seen.insert(p.clone()) {
                points.push(p);
            }
        }
        if points.len() < n {
            return Err(invalid(format!(
                "could not draw {n} distinct points of height {height} in dimension {d}"
            )));
        }
        let set = PointSet::new(d, points)?;
        Ok((set.affine_dim() == d).then_some(set))
    })
}
