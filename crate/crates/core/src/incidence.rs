//! Line incidences of a point set: spanned lines, stars, Dirac points and
//! the special-line quantities behind the dimension bound for sets with
//! many collinear triples.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::geometry::{canonical_direction, line_through, Direction, Line, PointSet, Rat};

/// Default constant in the special-line dimension bound.
pub const DEFAULT_C: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    /// Every spanned line with its incident point indices (ascending),
    /// ordered by canonical line order.
    pub lines: Vec<(Line, Vec<usize>)>,
    pub point_count: usize,
}

impl IncidenceStructure {
    /// Lines carrying at least three points.
    pub fn special_lines(&self) -> impl Iterator<Item = &(Line, Vec<usize>)> {
        self.lines.iter().filter(|(_, pts)| pts.len() >= 3)
    }

    /// Lines carrying exactly two points.
    pub fn ordinary_lines(&self) -> impl Iterator<Item = &(Line, Vec<usize>)> {
        self.lines.iter().filter(|(_, pts)| pts.len() == 2)
    }

    /// `sum C(k, 2)` over lines; equals `C(n, 2)` for a complete structure.
    pub fn pair_count(&self) -> usize {
        self.lines
            .iter()
            .map(|(_, pts)| pts.len() * (pts.len() - 1) / 2)
            .sum()
    }

    /// Histogram of incident point counts per line.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for (_, pts) in &self.lines {
            *h.entry(pts.len()).or_default() += 1;
        }
        h
    }
}

pub fn build_incidence(set: &PointSet) -> Result<IncidenceStructure> {
    let n = set.len();
    if n < 2 {
        return Err(invalid("incidence structure needs at least two points"));
    }
    let mut by_line: HashMap<Line, Vec<usize>> = HashMap::new();
    // covered[k]: the line through i and k is already recorded.
    let mut covered = vec![false; n];
    for i in 0..n {
        covered.iter_mut().for_each(|c| *c = false);
        for j in (i + 1)..n {
            if covered[j] {
                continue;
            }
            let line = line_through(set.point(i), set.point(j))?;
            let members = by_line.entry(line).or_default();
            if members.is_empty() {
                // First sighting: no point before j (other than i) can be on it.
                members.push(i);
                members.push(j);
                members.extend(((j + 1)..n).filter(|&k| collinear_with(set, i, j, k)));
            }
            for &k in members.iter().filter(|&&k| k > i) {
                covered[k] = true;
            }
        }
    }
    let mut lines: Vec<(Line, Vec<usize>)> = by_line.into_iter().collect();
    lines.sort();
    Ok(IncidenceStructure {
        lines,
        point_count: n,
    })
}

fn collinear_with(set: &PointSet, i: usize, j: usize, k: usize) -> bool {
    let a = set.point(i);
    let u = set.point(j).minus(a);
    let v = set.point(k).minus(a);
    // v parallel to u: all 2x2 minors vanish.
    let k = u.iter().position(|c| !c.is_zero()).expect("distinct points");
    (0..u.len()).all(|m| &u[k] * &v[m] == &u[m] * &v[k])
}

/// Groups the other points of the set by their direction from `center`.
/// Each group is one line through the centre.
pub fn star(set: &PointSet, center: usize) -> Result<BTreeMap<Direction, Vec<usize>>> {
    set.check_index(center)?;
    if set.len() < 2 {
        return Err(invalid("star needs at least two points"));
    }
    let x = set.point(center);
    let mut groups: BTreeMap<Direction, Vec<usize>> = BTreeMap::new();
    for (i, p) in set.points().iter().enumerate() {
        if i != center {
            groups.entry(canonical_direction(&p.minus(x))?).or_default().push(i);
        }
    }
    Ok(groups)
}

pub fn star_count(set: &PointSet, center: usize) -> Result<usize> {
    Ok(star(set, center)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub point_index: usize,
    /// Number of distinct lines joining the point to the rest of the set.
    pub m: usize,
    /// Number of other points lying on special lines through the point.
    pub on_special: usize,
    /// `on_special / (n - 1)`.
    pub delta: Rat,
}

pub fn star_report(set: &PointSet, center: usize) -> Result<StarReport> {
    let groups = star(set, center)?;
    let on_special: usize = groups.values().filter(|g| g.len() >= 2).map(Vec::len).sum();
    let others = set.len() - 1;
    Ok(StarReport {
        point_index: center,
        m: groups.len(),
        on_special,
        delta: Rat::new(on_special.into(), others.into()),
    })
}

pub fn star_reports(set: &PointSet) -> Result<Vec<StarReport>> {
    (0..set.len()).map(|i| star_report(set, i)).collect()
}

/// The point with the largest star, smallest index on ties.
pub fn dirac_point(set: &PointSet) -> Result<(usize, usize)> {
    if set.len() < 2 {
        return Err(invalid("Dirac point needs at least two points"));
    }
    let mut best = (0, 0);
    for i in 0..set.len() {
        let m = star_count(set, i)?;
        if m > best.1 {
            best = (i, m);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DswReport {
    pub c: Rat,
    pub delta_min: Rat,
    pub affine_dim: usize,
    /// `c / delta_min`, absent when `delta_min` is zero.
    pub dimension_bound: Option<Rat>,
    pub holds: bool,
}

/// Checks that the affine dimension is at most `c / delta_min`, where
/// `delta_min` is the smallest fraction of other points lying on special
/// lines through a point.
pub fn dsw_check(set: &PointSet, c: &Rat) -> Result<DswReport> {
    if set.len() < 3 {
        return Err(invalid("special-line check needs at least three points"));
    }
    let delta_min = star_reports(set)?
        .into_iter()
        .map(|r| r.delta)
        .min()
        .expect("non-empty");
    let affine_dim = set.affine_dim();
    let dimension_bound = (!delta_min.is_zero()).then(|| c / &delta_min);
    let holds = match &dimension_bound {
        None => true,
        Some(bound) => Rat::from_integer(affine_dim.into()) <= *bound,
    };
    Ok(DswReport {
        c: c.clone(),
        delta_min,
        affine_dim,
        dimension_bound,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub c: Rat,
    pub dirac_index: usize,
    pub m_max: usize,
    /// `(1 - c / affine_dim) * n`.
    pub bound: Rat,
    pub holds: bool,
}

/// Checks that some point sees at least `(1 - c/d) n` distinct lines.
pub fn corollary_check(set: &PointSet, c: &Rat) -> Result<CorollaryReport> {
    let (dirac_index, m_max) = dirac_point(set)?;
    let d = Rat::from_integer(set.affine_dim().into());
    let n = Rat::from_integer(set.len().into());
    let bound = (Rat::one() - c / d) * n;
    let holds = Rat::from_integer(m_max.into()) >= bound;
    Ok(CorollaryReport {
        c: c.clone(),
        dirac_index,
        m_max,
        bound,
        holds,
    })
}
