use std::collections::BTreeSet;

use itertools::Itertools;

use super::HPolyhedron;
use crate::arith::{rat_int, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg::solve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        witness: RationalPoint,
    },
    Empty,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Empty => None,
        }
    }
}

/// Every feasible point cut out by `n` linearly independent bounding
/// hyperplanes of the region, sorted and deduplicated.
pub fn basic_feasible_points(region: &HPolyhedron) -> Vec<RationalPoint> {
    let n = region.ambient_dim;
    let hs = &region.halfspaces;
    let mut found = BTreeSet::new();
    for basis in (0..hs.len()).combinations(n) {
        let a: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&i| hs[i].normal.0.iter().map(rat_int).collect())
            .collect();
        let b: Vec<Rational> = basis.iter().map(|&i| hs[i].offset.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            let p = RationalPoint(x);
            if region.contains(&p) {
                found.insert(p);
            }
        }
    }
    found.into_iter().collect()
}

/// Exact minimum of `<objective, k>` over the region.
///
/// Enumerates every basis of `n` half-spaces. Requires the region to be
/// pointed with a recession cone inside the nonnegative orthant and the
/// objective to be nonnegative, so that the minimum, when the region is
/// non-empty, is attained at a basic point. Ties resolve to the
/// lexicographically smallest optimal point.
pub fn minimize_linear(objective: &RationalPoint, region: &HPolyhedron) -> Result<LpOutcome> {
    if objective.dim() != region.ambient_dim {
        return Err(Error::InvalidInput(format!(
            "objective of dimension {} for a region in dimension {}",
            objective.dim(),
            region.ambient_dim
        )));
    }
    if !objective.is_nonnegative() {
        return Err(Error::InvalidInput(format!(
            "objective {objective} has a negative entry"
        )));
    }
    let mut best: Option<(Rational, RationalPoint)> = None;
    for p in basic_feasible_points(region) {
        let v = objective.dot(&p);
        // Points arrive in lexicographic order, so strict improvement keeps
        // the smallest optimal witness.
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, p));
        }
    }
    Ok(match best {
        Some((value, witness)) => LpOutcome::Optimal { value, witness },
        None => LpOutcome::Empty,
    })
}
