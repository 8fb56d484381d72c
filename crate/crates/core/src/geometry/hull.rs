use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{Signed, Zero};

use super::{check_dim, HalfSpace};
use crate::arith::{lcm_all, rat_int, Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg::{cofactor_normal, fits_i128, rank_int, Ring};

/// Dual description of `conv(points) + R^n_{>=0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpwardHull {
    pub dim: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<RationalPoint>,
    /// Irredundant facets with primitive nonnegative normals, sorted.
    pub facets: Vec<HalfSpace>,
}

impl UpwardHull {
    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.facets.iter().all(|h| h.contains(p))
    }
}

/// Vertices and facets of the upward hull of a nonnegative point set.
///
/// A facet of an upward-closed polyhedron with normal `v` is spanned by `s`
/// affinely independent points together with the `n - s` axis directions on
/// which `v` vanishes, so every facet normal appears as the generalized cross
/// product of `s - 1` difference vectors restricted to the remaining `s`
/// coordinates.
pub fn upward_hull(points: &[RationalPoint]) -> Result<UpwardHull> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("upward hull of an empty point set".into()))?;
    let n = first.dim();
    check_dim(n)?;
    if let Some(p) = points.iter().find(|p| p.dim() != n || !p.is_nonnegative()) {
        return Err(Error::InvalidInput(format!(
            "point {p} is not a nonnegative point of dimension {n}"
        )));
    }

    let candidates = undominated(points);
    if candidates.len() <= REFINE_THRESHOLD {
        return Ok(hull_of(candidates, n));
    }
    // Refine from a seed subset S: a facet of hull(S) violated by some point
    // pulls in its most violating point, which is never already in S. Once
    // nothing is violated, hull(S) = hull(points).
    let mut subset: BTreeSet<RationalPoint> = (0..n)
        .map(|i| {
            candidates
                .iter()
                .min_by(|a, b| a.0[i].cmp(&b.0[i]).then_with(|| a.cmp(b)))
                .expect("non-empty")
                .clone()
        })
        .collect();
    loop {
        let hull = hull_of(subset.iter().cloned().collect(), n);
        let mut added = false;
        for h in &hull.facets {
            let worst = candidates.iter().filter(|p| !h.contains(p)).min_by(|a, b| {
                h.normal
                    .dot_point(a)
                    .cmp(&h.normal.dot_point(b))
                    .then_with(|| a.cmp(b))
            });
            if let Some(p) = worst {
                added |= subset.insert(p.clone());
            }
        }
        if !added {
            return Ok(hull);
        }
    }
}

/// Point count above which the hull is built by refinement.
const REFINE_THRESHOLD: usize = 24;

/// The upward hull of undominated, deduplicated points, by exhaustive
/// candidate enumeration.
fn hull_of(candidates: Vec<RationalPoint>, n: usize) -> UpwardHull {
    let scale = lcm_all(
        candidates
            .iter()
            .flat_map(|p| p.0.iter().map(|c| c.denom())),
    );
    let scale_q = rat_int(&scale);
    let scaled: Vec<Vec<Integer>> = candidates
        .iter()
        .map(|p| p.0.iter().map(|c| (c * &scale_q).to_integer()).collect())
        .collect();
    let max_abs = scaled.iter().flatten().max().cloned().unwrap_or_default();

    let raw: Vec<(Vec<Integer>, Integer)> = if fits_i128(&max_abs, n) {
        let small: Vec<Vec<i128>> = scaled
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| i128::try_from(c).expect("bounded"))
                    .collect()
            })
            .collect();
        facet_candidates(&small, n)
            .into_iter()
            .map(|(v, l)| (v.into_iter().map(Integer::from).collect(), Integer::from(l)))
            .collect()
    } else {
        facet_candidates(&scaled, n).into_iter().collect()
    };
    let facets: Vec<HalfSpace> = raw
        .into_iter()
        .map(|(v, l)| HalfSpace::new(IntegerVector(v), Rational::new(l, scale.clone())))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let vertices: Vec<RationalPoint> = candidates
        .into_iter()
        .filter(|p| {
            let active: Vec<Vec<Integer>> = facets
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| h.normal.0.clone())
                .collect();
            active.len() >= n && rank_int(&active) == n
        })
        .collect();

    UpwardHull {
        dim: n,
        vertices,
        facets,
    }
}

/// Primitive nonnegative normals `v` with offsets `min_p <v, p>` of the
/// supporting hyperplanes spanned by point subsets and axis directions.
fn facet_candidates<T: Ring + Ord>(pts: &[Vec<T>], n: usize) -> BTreeSet<(Vec<T>, T)> {
    let mut out = BTreeSet::new();
    let mut seen: BTreeMap<Vec<T>, T> = BTreeMap::new();
    for s in 1..=n.min(pts.len()) {
        for chosen in (0..pts.len()).combinations(s) {
            let base = &pts[chosen[0]];
            for free in (0..n).combinations(s) {
                let rows: Vec<Vec<T>> = chosen[1..]
                    .iter()
                    .map(|&j| {
                        free.iter()
                            .map(|&c| pts[j][c].clone() - base[c].clone())
                            .collect()
                    })
                    .collect();
                let Some(w) = orient_nonnegative(cofactor_normal(&rows, s)) else {
                    continue;
                };
                let g = w.iter().fold(T::zero(), |acc, c| acc.gcd(c));
                let mut normal = vec![T::zero(); n];
                for (k, &c) in free.iter().enumerate() {
                    normal[c] = w[k].clone() / g.clone();
                }
                let dot = |p: &[T]| {
                    free.iter()
                        .fold(T::zero(), |acc, &c| acc + normal[c].clone() * p[c].clone())
                };
                // Each distinct normal is scanned against all points once.
                let min = match seen.get(&normal) {
                    Some(m) => m.clone(),
                    None => {
                        let m = pts
                            .iter()
                            .map(|p| dot(p))
                            .min()
                            .expect("points are non-empty");
                        seen.insert(normal.clone(), m.clone());
                        m
                    }
                };
                if chosen.iter().all(|&j| dot(&pts[j]) == min) {
                    out.insert((normal, min));
                }
            }
        }
    }
    out
}

/// Sign-normalizes a candidate normal; `None` if it is zero or has mixed signs.
fn orient_nonnegative<T: Ring>(mut w: Vec<T>) -> Option<Vec<T>> {
    let pos = w.iter().any(Signed::is_positive);
    let neg = w.iter().any(Signed::is_negative);
    match (pos, neg) {
        (true, false) => Some(w),
        (false, true) => {
            for c in w.iter_mut() {
                *c = -c.clone();
            }
            Some(w)
        }
        _ => None,
    }
}

/// Deduplicated points not componentwise above another point, sorted.
fn undominated(points: &[RationalPoint]) -> Vec<RationalPoint> {
    let unique: BTreeSet<&RationalPoint> = points.iter().collect();
    let unique: Vec<&RationalPoint> = unique.into_iter().collect();
    unique
        .iter()
        .filter(|p| !unique.iter().any(|q| q != *p && q.le_all(p)))
        .map(|p| (*p).clone())
        .collect()
}

/// Minimal `t >= 0` with `t * direction` inside the hull, or `None` when the
/// ray never enters it.
pub(crate) fn ray_entry(facets: &[HalfSpace], direction: &IntegerVector) -> Option<Rational> {
    let mut t = Rational::zero();
    for h in facets {
        let d = h.normal.dot(direction);
        if d.is_zero() {
            if h.offset.is_positive() {
                return None;
            }
        } else {
            debug_assert!(
                d.is_positive(),
                "hull normals and ray directions are nonnegative"
            );
            let cand = &h.offset / rat_int(&d);
            if cand > t {
                t = cand;
            }
        }
    }
    Some(t)
}
