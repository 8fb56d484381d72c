use std::collections::BTreeSet;

use itertools::Itertools;
use num::{Signed, Zero};

use super::HalfSpace;
use crate::arith::{Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, cofactor_normal, nullspace, rank_int};

/// H-representation of the cone generated by nonzero rays.
///
/// With `r` the rank of the rays, the linear span is cut out by `n - r`
/// equality pairs, and each facet normal is orthogonal to `r - 1`
/// independent rays and to the complement of the span.
pub fn cone_halfspaces(rays: &[RationalPoint]) -> Result<Vec<HalfSpace>> {
    let Some(first) = rays.first() else {
        return Err(Error::InvalidInput("cone without generators".into()));
    };
    let n = first.dim();
    let int_rays: Vec<Vec<Integer>> = rays.iter().map(|r| clear_denominators(&r.0)).collect();
    if int_rays.iter().any(|r| r.iter().all(Zero::is_zero)) {
        return Err(Error::InvalidInput(
            "cone generator is the zero vector".into(),
        ));
    }
    let rows: Vec<Vec<Rational>> = rays.iter().map(|r| r.0.clone()).collect();
    let complement: Vec<Vec<Integer>> = nullspace(&rows, n)
        .iter()
        .map(|v| clear_denominators(v))
        .collect();
    let r = n - complement.len();

    let mut out: BTreeSet<HalfSpace> = BTreeSet::new();
    for c in &complement {
        for h in HalfSpace::equality(IntegerVector(c.clone()), Rational::zero()) {
            out.insert(h);
        }
    }
    for subset in (0..int_rays.len()).combinations(r - 1) {
        let mut constraints: Vec<Vec<Integer>> =
            subset.iter().map(|&i| int_rays[i].clone()).collect();
        constraints.extend(complement.iter().cloned());
        if rank_int(&constraints) != n - 1 {
            continue;
        }
        let mut w = cofactor_normal(&constraints, n);
        let signs: Vec<Integer> = int_rays
            .iter()
            .map(|ray| ray.iter().zip(&w).map(|(a, b)| a * b).sum())
            .collect();
        let pos = signs.iter().any(Signed::is_positive);
        let neg = signs.iter().any(Signed::is_negative);
        match (pos, neg) {
            (true, false) => {}
            (false, true) => w.iter_mut().for_each(|c| *c = -c.clone()),
            _ => continue,
        }
        out.insert(HalfSpace::new(
            IntegerVector(w).primitive_signed(),
            Rational::zero(),
        ));
    }
    Ok(out.into_iter().collect())
}
