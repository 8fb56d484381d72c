use std::collections::BTreeSet;

use itertools::Itertools;
use num::{Signed, Zero};

use crate::arith::{lcm_all, rat_int, Integer, Rational, RationalPoint};
use crate::linalg::{cofactor_normal, det_int, rref};

/// Exact volume of `conv(points)`; zero when the hull is not full-dimensional.
pub fn polytope_volume(points: &[RationalPoint]) -> Rational {
    let Some(first) = points.first() else {
        return Rational::zero();
    };
    let n = first.dim();
    let sorted: BTreeSet<&RationalPoint> = points.iter().collect();
    let sorted: Vec<RationalPoint> = sorted.into_iter().cloned().collect();
    let (ints, scale) = scaled_integer_points(&sorted);
    let all: Vec<usize> = (0..ints.len()).collect();
    if affine_rank(&ints, &all) < n {
        return Rational::zero();
    }
    let mut total = Integer::zero();
    for simplex in triangulate(&ints, &all) {
        let base = &ints[simplex[0]];
        let rows: Vec<Vec<Integer>> = simplex[1..]
            .iter()
            .map(|&i| ints[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += det_int(&rows).abs();
    }
    let factorial: Integer = (1..=n).map(Integer::from).product();
    let denom = factorial * num::pow(scale, n);
    Rational::new(total, denom)
}

/// Pulling triangulation of `conv(points)`: cone from the lexicographically
/// smallest point over a recursive triangulation of every facet avoiding it.
/// Returns simplices as index lists into `points` (duplicates are collapsed
/// onto their first occurrence).
pub fn pulling_triangulation(points: &[RationalPoint]) -> Vec<Vec<usize>> {
    if points.is_empty() {
        return Vec::new();
    }
    let (ints, _) = scaled_integer_points(points);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    triangulate(&ints, &order)
}

fn scaled_integer_points(points: &[RationalPoint]) -> (Vec<Vec<Integer>>, Integer) {
    let scale = lcm_all(points.iter().flat_map(|p| p.0.iter().map(|c| c.denom())));
    let s = rat_int(&scale);
    let ints = points
        .iter()
        .map(|p| p.0.iter().map(|c| (c * &s).to_integer()).collect())
        .collect();
    (ints, scale)
}

fn differences(points: &[Vec<Integer>], idx: &[usize]) -> Vec<Vec<Rational>> {
    let base = &points[idx[0]];
    idx[1..]
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .zip(base)
                .map(|(a, b)| rat_int(&(a - b)))
                .collect()
        })
        .collect()
}

fn affine_rank(points: &[Vec<Integer>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let mut d = differences(points, idx);
    rref(&mut d).len()
}

/// `idx` must be sorted lexicographically by point.
fn triangulate(points: &[Vec<Integer>], idx: &[usize]) -> Vec<Vec<usize>> {
    let mut diffs = if idx.len() > 1 {
        differences(points, idx)
    } else {
        Vec::new()
    };
    let pivots = rref(&mut diffs);
    let d = pivots.len();
    if d == 0 {
        return vec![vec![idx[0]]];
    }
    let apex = idx[0];
    let mut out = Vec::new();
    for facet in hull_facets(points, idx, &pivots) {
        if facet.contains(&apex) {
            continue;
        }
        for mut simplex in triangulate(points, &facet) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// Facets of `conv(idx points)` inside its affine hull, as sorted index lists.
/// Coordinates are projected onto `coords`, on which the affine hull projects
/// bijectively.
fn hull_facets(points: &[Vec<Integer>], idx: &[usize], coords: &[usize]) -> Vec<Vec<usize>> {
    let d = coords.len();
    let proj: Vec<Vec<Integer>> = idx
        .iter()
        .map(|&i| coords.iter().map(|&c| points[i][c].clone()).collect())
        .collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for chosen in (0..idx.len()).combinations(d) {
        let base = &proj[chosen[0]];
        let rows: Vec<Vec<Integer>> = chosen[1..]
            .iter()
            .map(|&j| proj[j].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let w = cofactor_normal(&rows, d);
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        let level: Integer = w.iter().zip(base).map(|(a, b)| a * b).sum();
        let mut above = false;
        let mut below = false;
        let mut on = Vec::new();
        for (j, q) in proj.iter().enumerate() {
            let v: Integer = w.iter().zip(q).map(|(a, b)| a * b).sum::<Integer>() - &level;
            if v.is_positive() {
                above = true;
            } else if v.is_negative() {
                below = true;
            } else {
                on.push(idx[j]);
            }
            if above && below {
                break;
            }
        }
        if !(above && below) {
            facets.insert(on);
        }
    }
    facets.into_iter().collect()
}
