mod common;

use std::collections::BTreeSet;

use distinct_directions::census::{direction_census, distance_census, random_polytopal_norm};
use distinct_directions::extraction::{choose_generic_hyperplane, extract_family};
use distinct_directions::generators::{GeneratorKind, GeneratorSpec};
use distinct_directions::geometry::{
    affine_dimension, canonical_direction, central_projection, int, line_through, rat, Point, PointSet, Rat,
};
use distinct_directions::incidence::{build_incidence, dirac_point, star, star_count, star_reports};
use distinct_directions::io::{read_point_set, write_point_set};
use distinct_directions::segments::{
    segments_collinear, segments_convergent, verify_family, Segment,
};
use num_traits::Signed;
use proptest::prelude::*;

fn dedup(raw: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    raw.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

fn to_set(d: usize, pts: &[Vec<i64>]) -> PointSet {
    PointSet::new(d, pts.iter().map(|p| Point::from_ints(p)).collect()).unwrap()
}

/// Small integer point sets in dimension 2..=4 with at least three points.
fn small_set() -> impl Strategy<Value = PointSet> {
    (2usize..=4).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, d), 3..12).prop_filter_map("too few points", move |raw| {
            let pts = dedup(raw);
            (pts.len() >= 3).then(|| to_set(d, &pts))
        })
    })
}

/// Points of a tiny grid, so that most points lie on lines with three or
/// more points.
fn dense_set() -> impl Strategy<Value = PointSet> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(0i64..=2, d), 6..14).prop_filter_map("too few points", move |raw| {
            let pts = dedup(raw);
            (pts.len() >= 5).then(|| to_set(d, &pts))
        })
    })
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_filter_map("zero", |(p, q)| (p != 0).then(|| rat(p, q)))
}

/// Applies `y = A x + b`.
fn apply(a: &[Vec<Rat>], b: &[Rat], p: &Point) -> Point {
    Point::new(
        a.iter()
            .zip(b)
            .map(|(row, bi)| row.iter().zip(p.coords()).map(|(x, y)| x * y).sum::<Rat>() + bi)
            .collect(),
    )
}

/// Random affine map from R^`from` into R^`to` as (A, b), with A of full
/// column rank.
fn injective_map(from: usize, to: usize) -> impl Strategy<Value = (Vec<Vec<Rat>>, Vec<Rat>)> {
    let entry = (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q));
    (
        prop::collection::vec(prop::collection::vec(entry.clone(), from), to),
        prop::collection::vec(entry, to),
    )
        .prop_filter("singular", move |(a, _)| {
            let cols: Vec<Vec<Rat>> = (0..from).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
            common::rank_oracle(&cols) == from
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn direction_is_scale_invariant(v in prop::collection::vec(-20i64..=20, 1..5), s in nonzero_rat()) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let v: Vec<Rat> = v.into_iter().map(int).collect();
        let w: Vec<Rat> = v.iter().map(|x| x * &s).collect();
        prop_assert_eq!(canonical_direction(&v).unwrap(), canonical_direction(&w).unwrap());
    }

    #[test]
    fn collinear_triples_share_a_line(
        p in prop::collection::vec(-9i64..=9, 3),
        u in prop::collection::vec(-5i64..=5, 3),
        t in nonzero_rat(),
    ) {
        prop_assume!(u.iter().any(|&x| x != 0) && t != int(1));
        let p = Point::from_ints(&p);
        let q = Point::new(p.coords().iter().zip(&u).map(|(a, b)| a + int(*b)).collect());
        let r = Point::new(p.coords().iter().zip(&u).map(|(a, b)| a + int(*b) * &t).collect());
        let l = line_through(&p, &q).unwrap();
        prop_assert_eq!(&l, &line_through(&q, &r).unwrap());
        prop_assert!(l.contains(&r));
    }

    #[test]
    fn affine_dimension_matches_minor_oracle(set in small_set()) {
        prop_assert_eq!(affine_dimension(set.points()).unwrap(), common::affine_dim_oracle(set.points()));
    }

    #[test]
    fn affine_dimension_is_affinely_invariant(
        (set, (a, b)) in small_set().prop_flat_map(|set| {
            let d = set.ambient_dim();
            (Just(set), injective_map(d, d + 1))
        }),
    ) {
        let image: Vec<Point> = set.points().iter().map(|p| apply(&a, &b, p)).collect();
        prop_assert_eq!(affine_dimension(&image).unwrap(), set.affine_dim());
    }

    #[test]
    fn segment_predicates_are_affinely_invariant(
        raw in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 4),
        (a, b) in injective_map(2, 3),
        order in Just((0usize..4).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let pts = dedup(raw);
        prop_assume!(pts.len() == 4);
        let plane = to_set(2, &pts);
        let lifted = PointSet::new(3, plane.points().iter().map(|p| apply(&a, &b, p)).collect()).unwrap();
        let s = Segment::new(order[0], order[1]).unwrap();
        let t = Segment::new(order[2], order[3]).unwrap();
        let conv = segments_convergent(&plane, s, t);
        prop_assert_eq!(conv, segments_convergent(&lifted, s, t));
        prop_assert_eq!(conv, segments_convergent(&plane, t, s));
        let ints: Vec<[i64; 2]> = pts.iter().map(|p| [p[0], p[1]]).collect();
        prop_assert_eq!(conv, common::convergent_oracle(&ints, (order[0], order[1]), (order[2], order[3])));
        prop_assert_eq!(segments_collinear(&plane, s, t), segments_collinear(&lifted, s, t));
    }

    #[test]
    fn star_families_certify(set in small_set(), pick in any::<prop::sample::Index>()) {
        let x = pick.index(set.len());
        let family: Vec<Segment> = star(&set, x)
            .unwrap()
            .values()
            .map(|members| Segment::new(x, members[0]).unwrap())
            .collect();
        prop_assert!(verify_family(&set, &family).unwrap().valid);
    }

    #[test]
    fn line_incidences_cover_every_pair_once(set in small_set()) {
        let n = set.len();
        let inc = build_incidence(&set).unwrap();
        prop_assert_eq!(inc.pair_count(), n * (n - 1) / 2);
    }

    #[test]
    fn full_star_iff_no_special_line(set in small_set()) {
        let n = set.len();
        let inc = build_incidence(&set).unwrap();
        for x in 0..n {
            let on_special = inc.special_lines().any(|(_, members)| members.contains(&x));
            prop_assert_eq!(star_count(&set, x).unwrap() == n - 1, !on_special);
        }
    }

    #[test]
    fn special_fraction_is_bounded_by_dirac_star(set in dense_set()) {
        let n = set.len();
        let (_, m) = dirac_point(&set).unwrap();
        prop_assume!(m < n - 1);
        let floor = Rat::new(((n - m) as i64).into(), ((n - 1) as i64).into());
        for r in star_reports(&set).unwrap() {
            prop_assert!(r.delta >= floor, "point {} has delta {} < {}", r.point_index, r.delta, floor);
        }
    }

    #[test]
    fn censuses_are_similarity_invariant(
        set in small_set(),
        s in nonzero_rat(),
        shift in prop::collection::vec(-7i64..=7, 4),
        norm_seed in any::<u64>(),
    ) {
        let d = set.ambient_dim();
        let moved = PointSet::new(
            d,
            set.points()
                .iter()
                .map(|p| Point::new(p.coords().iter().zip(&shift).map(|(x, t)| x * &s + int(*t)).collect()))
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(direction_census(&set).unwrap().distinct_count, direction_census(&moved).unwrap().distinct_count);
        let norm = random_polytopal_norm(d, 2, norm_seed).unwrap();
        let before = distance_census(&set, &norm).unwrap();
        let after = distance_census(&moved, &norm).unwrap();
        let scaled: Vec<Rat> = before.pairs.keys().map(|k| k * s.abs()).collect();
        prop_assert_eq!(scaled, after.pairs.keys().cloned().collect::<Vec<_>>());
    }

    #[test]
    fn projection_fibers_partition_the_rest(set in small_set(), pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let x = pick.index(set.len());
        let (plane, _) = choose_generic_hyperplane(&set, x, seed).unwrap();
        let proj = central_projection(&set, x, &plane).unwrap();
        let mut all: Vec<usize> = proj.fibers.iter().flatten().copied().collect();
        all.sort_unstable();
        let expected: Vec<usize> = (0..set.len()).filter(|&i| i != x).collect();
        prop_assert_eq!(all, expected);
        for (i, fiber) in proj.fibers.iter().enumerate() {
            for &p in fiber {
                prop_assert_eq!(proj.image_of[p], Some(i));
            }
        }
        prop_assert_eq!(proj.image_of[x], None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn extraction_is_deterministic_and_certified(set in small_set(), seed in any::<u64>()) {
        prop_assume!(set.affine_dim() >= 2);
        let (first, trace) = extract_family(&set, seed).unwrap();
        let (second, _) = extract_family(&set, seed).unwrap();
        prop_assert_eq!(&first.segments, &second.segments);
        let cert = first.verified.as_ref().unwrap();
        prop_assert!(cert.valid);
        prop_assert_eq!(trace.family_size, first.len());
        // A valid family has pairwise distinct directions.
        prop_assert!(direction_census(&set).unwrap().distinct_count >= first.len());
        let top = trace.levels.first().map_or(trace.base.family_size, |l| l.s1_size + l.lifted_size);
        prop_assert_eq!(first.len(), top);
        for (i, level) in trace.levels.iter().enumerate() {
            let below = trace.levels.get(i + 1).map_or(trace.base.family_size, |l| l.s1_size + l.lifted_size);
            prop_assert_eq!(level.s2_size, below);
            prop_assert_eq!(level.lifted_size + level.dropped, level.s2_size);
        }
    }

    #[test]
    fn generators_are_reproducible(kind_ix in 0usize..5, seed in any::<u64>(), d in 2usize..=5, extra in 1usize..12) {
        let kind = GeneratorKind::ALL[kind_ix];
        let d = if kind == GeneratorKind::SkewLines && d % 2 == 0 { d + 1 } else { d };
        let mut spec = GeneratorSpec::new(kind, d + extra, d, seed);
        if kind == GeneratorKind::SkewLines {
            spec.n = (d + 1) / 2 * (1 + extra);
        }
        spec.side = 2 + extra % 2;
        prop_assume!(kind != GeneratorKind::IntegerGrid || d <= 4);
        let a = spec.generate().unwrap();
        let b = spec.generate().unwrap();
        let text = write_point_set(&a);
        prop_assert_eq!(&text, &write_point_set(&b));
        let back = read_point_set(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(write_point_set(&back), text);
    }
}
