//! Distinct-direction and distinct-distance counts.
//!
//! Distances are measured in polytopal norms: the unit ball is
//! `{ x : a_i . x <= 1 for all i }` for a symmetric list of facet
//! functionals `a_i`, so `||v|| = max_i a_i . v` is an exact rational.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::{canonical_direction, int, Direction, PointSet, Rat};
use crate::linalg::rank;
use crate::segments::required_family_size;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalNorm {
    dim: usize,
    functionals: Vec<Vec<Rat>>,
    /// `functionals` times `denom`, all integral.
    scaled: Vec<Vec<BigInt>>,
    denom: BigInt,
}

impl PolytopalNorm {
    /// Validates central symmetry (the list is closed under negation) and
    /// boundedness (for a symmetric list, the functionals span `R^dim`).
    pub fn new(dim: usize, functionals: Vec<Vec<Rat>>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("norm dimension must be positive"));
        }
        if let Some(bad) = functionals.iter().find(|a| a.len() != dim) {
            return Err(invalid(format!(
                "functional has {} entries, expected {dim}",
                bad.len()
            )));
        }
        let present: HashSet<&Vec<Rat>> = functionals.iter().collect();
        for a in &functionals {
            let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
            if !present.contains(&neg) {
                return Err(invalid("functional list is not closed under negation"));
            }
        }
        if rank(&functionals) != dim {
            return Err(invalid("functionals do not span the space; unit ball is unbounded"));
        }
        Ok(PolytopalNorm::from_parts(dim, functionals))
    }

    fn from_parts(dim: usize, functionals: Vec<Vec<Rat>>) -> Self {
        let denom = common_denominator(functionals.iter().flatten());
        let scaled = functionals.iter().map(|a| scale_to_integers(a, &denom)).collect();
        PolytopalNorm {
            dim,
            functionals,
            scaled,
            denom,
        }
    }

    /// The max-coordinate norm.
    pub fn l_infinity(dim: usize) -> Self {
        let mut functionals = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for s in [1, -1] {
                let mut a = vec![Rat::zero(); dim];
                a[i] = int(s);
                functionals.push(a);
            }
        }
        PolytopalNorm::from_parts(dim, functionals)
    }

    /// The sum-of-magnitudes norm (all `2^dim` sign vectors).
    pub fn l_one(dim: usize) -> Self {
        let functionals = (0..1u64 << dim)
            .map(|mask| {
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { int(-1) } else { int(1) })
                    .collect()
            })
            .collect();
        PolytopalNorm::from_parts(dim, functionals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn functionals(&self) -> &[Vec<Rat>] {
        &self.functionals
    }
}

/// `k` seeded functional pairs `±a_i` with entries `p/q`, `|p| <= 10`,
/// `1 <= q <= 5`, plus `±e_i / rho` for a seeded `rho = p/q` with
/// `1 <= p <= 8`, `1 <= q <= 4`, which keeps the ball bounded.
pub fn random_polytopal_norm(dim: usize, pairs: usize, seed: u64) -> Result<PolytopalNorm> {
    if dim == 0 {
        return Err(invalid("norm dimension must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut functionals = Vec::with_capacity(2 * (pairs + dim));
    while functionals.len() < 2 * pairs {
        let a: Vec<Rat> = (0..dim)
            .map(|_| Rat::new(rng.gen_range(-10..=10).into(), rng.gen_range(1..=5).into()))
            .collect();
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        functionals.push(a.iter().map(|x| -x).collect());
        functionals.push(a);
    }
    let rho = Rat::new(rng.gen_range(1..=8).into(), rng.gen_range(1..=4).into());
    for i in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[i] = Rat::from_integer(1.into()) / &rho;
        functionals.push(e.iter().map(|x| -x).collect());
        functionals.push(e);
    }
    PolytopalNorm::new(dim, functionals)
}

pub fn norm_eval(norm: &PolytopalNorm, v: &[Rat]) -> Result<Rat> {
    if v.len() != norm.dim {
        return Err(invalid(format!(
            "vector has {} entries, norm has dimension {}",
            v.len(),
            norm.dim
        )));
    }
    let l = common_denominator(v);
    let w = scale_to_integers(v, &l);
    let best = norm
        .scaled
        .iter()
        .map(|a| a.iter().zip(&w).map(|(x, y)| x * y).sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(Rat::new(best, &norm.denom * l))
}

fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `v * m` as integers; `m` must be a multiple of every denominator.
fn scale_to_integers(v: &[Rat], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x.numer() * (m / x.denom())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionCensus {
    pub distinct_count: usize,
    /// Pairs realizing each direction, in canonical direction order.
    pub pairs: BTreeMap<Direction, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceCensus {
    pub distinct_count: usize,
    pub pairs: BTreeMap<Rat, usize>,
}

pub fn direction_census(set: &PointSet) -> Result<DirectionCensus> {
    if set.len() < 2 {
        return Err(invalid("direction census needs at least two points"));
    }
    let mut pairs = BTreeMap::new();
    let pts = set.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            *pairs.entry(canonical_direction(&q.minus(p))?).or_insert(0) += 1;
        }
    }
    Ok(DirectionCensus {
        distinct_count: pairs.len(),
        pairs,
    })
}

pub fn distance_census(set: &PointSet, norm: &PolytopalNorm) -> Result<DistanceCensus> {
    if set.len() < 2 {
        return Err(invalid("distance census needs at least two points"));
    }
    if set.ambient_dim() != norm.dim {
        return Err(invalid(format!(
            "point set dimension {} does not match norm dimension {}",
            set.ambient_dim(),
            norm.dim
        )));
    }
    let mut pairs = BTreeMap::new();
    let pts = set.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            *pairs.entry(norm_eval(norm, &q.minus(p))?).or_insert(0) += 1;
        }
    }
    Ok(DistanceCensus {
        distinct_count: pairs.len(),
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionBoundReport {
    pub census: DirectionCensus,
    /// `ceil(affine_dim * n / 48)`.
    pub required: usize,
    pub holds: bool,
}

pub fn check_direction_bound(set: &PointSet) -> Result<DirectionBoundReport> {
    if set.affine_dim() < 2 {
        return Err(invalid("direction bound needs affine dimension at least 2"));
    }
    let census = direction_census(set)?;
    let required = required_family_size(set);
    Ok(DirectionBoundReport {
        holds: census.distinct_count >= required,
        census,
        required,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceBoundReport {
    pub census: DistanceCensus,
    /// `(affine_dim / 48 - mu) * n`.
    pub threshold: Rat,
    pub holds: bool,
}

/// Exploratory comparison of a distance census against `(d/48 - mu) n`.
/// A miss is a finding about the chosen norm, not an error.
pub fn check_distance_bound(set: &PointSet, norm: &PolytopalNorm, mu: &Rat) -> Result<DistanceBoundReport> {
    if set.affine_dim() < 2 {
        return Err(invalid("distance bound needs affine dimension at least 2"));
    }
    if *mu <= Rat::zero() {
        return Err(invalid("mu must be positive"));
    }
    let census = distance_census(set, norm)?;
    let d = Rat::new(set.affine_dim().into(), 48.into());
    let threshold = (d - mu) * Rat::from_integer(set.len().into());
    Ok(DistanceBoundReport {
        holds: Rat::from_integer(census.distinct_count.into()) >= threshold,
        census,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, Point};

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::new(pts[0].len(), pts.iter().map(|p| Point::from_ints(p)).collect()).unwrap()
    }

    fn square() -> PointSet {
        set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn norm_eval_examples() {
        let v = [int(3), int(-4)];
        assert_eq!(norm_eval(&PolytopalNorm::l_infinity(2), &v).unwrap(), int(4));
        assert_eq!(norm_eval(&PolytopalNorm::l_one(2), &v).unwrap(), int(7));
        assert_eq!(norm_eval(&PolytopalNorm::l_one(2), &[int(0), int(0)]).unwrap(), int(0));
        assert!(norm_eval(&PolytopalNorm::l_one(2), &[int(0)]).is_err());
    }

    #[test]
    fn norm_construction_is_validated() {
        assert!(PolytopalNorm::new(2, vec![vec![int(1), int(0)]]).is_err());
        assert!(PolytopalNorm::new(2, vec![vec![int(1), int(0)], vec![int(-1), int(0)]]).is_err());
        assert!(PolytopalNorm::new(2, vec![vec![int(1)], vec![int(-1)]]).is_err());
        let ok = PolytopalNorm::new(2, PolytopalNorm::l_one(2).functionals().to_vec()).unwrap();
        assert_eq!(ok.dim(), 2);
    }

    #[test]
    fn random_norm_is_valid_and_seeded() {
        let a = random_polytopal_norm(3, 4, 11).unwrap();
        let b = random_polytopal_norm(3, 4, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.functionals().len(), 2 * (4 + 3));
    }

    #[test]
    fn direction_census_examples() {
        assert_eq!(direction_census(&set(&[&[0, 0], &[1, 1], &[3, 3]])).unwrap().distinct_count, 1);
        let c = direction_census(&square()).unwrap();
        assert_eq!(c.distinct_count, 4);
        assert_eq!(c.pairs.values().sum::<usize>(), 6);
        assert!(direction_census(&set(&[&[0, 0]])).is_err());
    }

    #[test]
    fn distance_census_examples() {
        let linf = distance_census(&square(), &PolytopalNorm::l_infinity(2)).unwrap();
        assert_eq!(linf.distinct_count, 1);
        assert_eq!(linf.pairs[&int(1)], 6);
        let l1 = distance_census(&square(), &PolytopalNorm::l_one(2)).unwrap();
        assert_eq!(l1.distinct_count, 2);
        let ap = set(&[&[0, 0], &[2, 1], &[4, 2], &[6, 3], &[8, 4]]);
        let norm = random_polytopal_norm(2, 3, 5).unwrap();
        assert_eq!(distance_census(&ap, &norm).unwrap().distinct_count, 4);
        assert!(distance_census(&square(), &PolytopalNorm::l_one(3)).is_err());
    }

    #[test]
    fn direction_bound_examples() {
        let r = check_direction_bound(&square()).unwrap();
        assert_eq!(r.census.distinct_count, 4);
        assert_eq!(r.required, 1);
        assert!(r.holds);
        assert!(check_direction_bound(&set(&[&[0, 0], &[1, 1], &[3, 3]])).is_err());
    }

    #[test]
    fn distance_bound_examples() {
        let r = check_distance_bound(&square(), &PolytopalNorm::l_infinity(2), &rat(1, 100)).unwrap();
        assert_eq!(r.census.distinct_count, 1);
        assert_eq!(r.threshold, (rat(2, 48) - rat(1, 100)) * int(4));
        assert!(r.holds);
        assert!(check_distance_bound(&square(), &PolytopalNorm::l_infinity(2), &int(0)).is_err());
    }
}
