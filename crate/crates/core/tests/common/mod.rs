//! Shared test helpers: independent oracles and the generator corpus.
#![allow(dead_code)]

use distinct_directions::generators::{
    ap_plus_generic, integer_grid, near_pencil, random_points, skew_lines,
};
use distinct_directions::geometry::{Point, PointSet, Rat};
use num_traits::Zero;

/// Orientation sign of three integer points.
fn turn(p: [i64; 2], q: [i64; 2], r: [i64; 2]) -> i64 {
    let v = (q[0] - p[0]) as i128 * (r[1] - p[1]) as i128 - (q[1] - p[1]) as i128 * (r[0] - p[0]) as i128;
    v.signum() as i64
}

/// Definition-based convergence oracle on integer planar points.
///
/// Tries the three cyclic orders of the four endpoints; in each one that is
/// a strictly convex quadrilateral (every turn nonzero and of one sign),
/// checks whether the two segments are opposite edges.
pub fn convergent_oracle(pts: &[[i64; 2]], s: (usize, usize), t: (usize, usize)) -> bool {
    let ends = [s.0, s.1, t.0, t.1];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if ends[i] == ends[j] {
                return false;
            }
        }
    }
    let (a, b, c, d) = (s.0, s.1, t.0, t.1);
    let orders = [[a, b, c, d], [a, b, d, c], [a, c, b, d]];
    for order in orders {
        let turns: Vec<i64> = (0..4)
            .map(|k| turn(pts[order[k]], pts[order[(k + 1) % 4]], pts[order[(k + 2) % 4]]))
            .collect();
        let convex = turns.iter().all(|&x| x != 0) && turns.iter().all(|&x| x == turns[0]);
        if !convex {
            continue;
        }
        let edge = |u: usize, v: usize| {
            (0..4).find(|&k| {
                let (p, q) = (order[k], order[(k + 1) % 4]);
                (p == u && q == v) || (p == v && q == u)
            })
        };
        if let (Some(e1), Some(e2)) = (edge(a, b), edge(c, d)) {
            if (e1 + 2) % 4 == e2 {
                return true;
            }
        }
    }
    false
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<Rat>]) -> Rat {
    match m.len() {
        0 => Rat::from_integer(1.into()),
        1 => m[0][0].clone(),
        n => {
            let mut total = Rat::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rat>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][col] * det(&minor);
                if col % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest nonvanishing square minor.
pub fn rank_oracle(rows: &[Vec<Rat>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    for k in (1..=rows.len().min(width)).rev() {
        for rs in subsets(rows.len(), k) {
            for cs in subsets(width, k) {
                let m: Vec<Vec<Rat>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                if !det(&m).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Affine dimension through the minor oracle.
pub fn affine_dim_oracle(points: &[Point]) -> usize {
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| p.minus(&points[0])).collect();
    // Row space rank is unchanged by dropping dependent rows; keep the
    // minor search small by reducing to at most `width` rows greedily.
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for r in rows {
        let mut trial = basis.clone();
        trial.push(r);
        if rank_oracle(&trial) == trial.len() {
            basis = trial;
        }
    }
    basis.len()
}

pub struct Instance {
    pub label: String,
    pub set: PointSet,
}

fn push(out: &mut Vec<Instance>, label: String, set: distinct_directions::Result<PointSet>) {
    out.push(Instance {
        set: set.unwrap_or_else(|e| panic!("{label}: {e}")),
        label,
    });
}

/// Every generator for d in 2..=6 with n <= 60.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for d in 2..=6usize {
        let mut ns = vec![d + 1, d + 5, 20, 40, 60];
        ns.dedup();
        for &n in &ns {
            let seed = (d * 100 + n) as u64;
            push(&mut out, format!("near_pencil(n={n}, d={d})"), near_pencil(n, d, seed));
            push(&mut out, format!("ap_plus_generic(n={n}, d={d})"), ap_plus_generic(n, d, seed));
        }
        if d % 2 == 1 {
            let per = (d + 1) / 2;
            for n in [2 * per, 4 * per, 10 * per, 20 * per] {
                if n <= 60 {
                    push(&mut out, format!("skew_lines(d={d}, n={n})"), skew_lines(d, n, n as u64));
                }
            }
        }
        for side in 2..=7usize {
            if side.pow(d as u32) <= 60 {
                push(&mut out, format!("integer_grid(side={side}, d={d})"), integer_grid(side, d));
            }
        }
        for &n in &[d + 1, 15, 30, 60] {
            for &height in &[3i64, 100] {
                let seed = (d * 1000 + n) as u64 + height as u64;
                push(
                    &mut out,
                    format!("random(n={n}, d={d}, height={height})"),
                    random_points(n, d, seed, height),
                );
            }
        }
    }
    out
}
