//! Covolumes, Samuel and mixed multiplicities, Rees mixed multiplicities and
//! colengths of monomial ideals.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{fmt_rational, rat_int, Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{internal, Error, Result};
use crate::geometry::polytope_volume;
use crate::linalg::solve;
use crate::newton::{for_each_lattice_point, MonomialIdeal, NewtonPolyhedron};

/// Default bound on `r` in the search for `sigma`.
pub const DEFAULT_SIGMA_CAP: u32 = 64;

/// Environment variable overriding [`DEFAULT_SIGMA_CAP`].
pub const SIGMA_CAP_ENV: &str = "LOJAX_SIGMA_CAP";

/// The mixed multiplicities `e_i(I, J)`, `i = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub n: usize,
    pub e_i: Integer,
    pub e_j: Integer,
    /// `mixed[i] = e(I, ..., I, J, ..., J)` with `I` repeated `i` times.
    pub mixed: Vec<Integer>,
    /// `covol(a Γ_+(I) + b Γ_+(J))` keyed by `(a, b)`, `1 <= a + b <= n`.
    pub covolumes: BTreeMap<(u32, u32), Rational>,
}

/// Volume of the complement of a convenient polyhedron in the orthant.
///
/// Every ray from the origin leaves the complement through the Newton
/// boundary, so the complement is the union of the pyramids `conv(0, F)` over
/// the compact facets `F`, with disjoint interiors.
pub fn covolume(p: &NewtonPolyhedron) -> Result<Rational> {
    if !p.is_convenient() {
        return Err(Error::NotFiniteColength);
    }
    let origin = RationalPoint::zeros(p.dim());
    Ok(p.compact_facets()
        .map(|h| {
            let mut pts: Vec<RationalPoint> = p
                .vertices()
                .iter()
                .filter(|v| h.is_tight(v))
                .cloned()
                .collect();
            pts.push(origin.clone());
            polytope_volume(&pts)
        })
        .sum())
}

fn factorial(n: usize) -> Integer {
    (1..=n).map(Integer::from).product()
}

fn binomial(n: usize, k: usize) -> Integer {
    num::integer::binomial(Integer::from(n), Integer::from(k))
}

fn integral(value: Rational, what: &str) -> Result<Integer> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(internal!(
            "{what} is not an integer: {}",
            fmt_rational(&value)
        ))
    }
}

fn finite_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    if ideal.is_unit() {
        return Err(Error::InvalidInput(
            "the unit ideal has no multiplicity".into(),
        ));
    }
    if !ideal.is_finite_colength() {
        return Err(Error::NotFiniteColength);
    }
    ideal.newton_polyhedron()
}

/// `e(I) = n! covol(Γ_+(I))`.
pub fn samuel_multiplicity(ideal: &MonomialIdeal) -> Result<Integer> {
    let p = finite_polyhedron(ideal)?;
    integral(
        covolume(&p)? * rat_int(&factorial(p.dim())),
        "Samuel multiplicity",
    )
}

/// `covol(sum_g counts[g] P_g)`; zero counts are skipped.
fn weighted_sum_covolume(polys: &[NewtonPolyhedron], counts: &[u32]) -> Result<Rational> {
    let mut acc: Option<NewtonPolyhedron> = None;
    for (p, &c) in polys.iter().zip(counts) {
        if c == 0 {
            continue;
        }
        let scaled = if c == 1 {
            p.clone()
        } else {
            p.dilate(&Rational::from_integer(c.into()))?
        };
        acc = Some(match acc {
            None => scaled,
            Some(a) => a.minkowski_sum(&scaled)?,
        });
    }
    covolume(&acc.ok_or_else(|| internal!("empty Minkowski sum"))?)
}

/// `e(I_1, ..., I_n)` by polarization of the covolume of Minkowski sums.
/// Equal ideals are grouped, so the sum runs over multisets of groups.
pub fn mixed_multiplicity(ideals: &[MonomialIdeal]) -> Result<Integer> {
    let n = ideals.first().map_or(0, MonomialIdeal::num_vars);
    if ideals.len() != n || n == 0 || ideals.iter().any(|i| i.num_vars() != n) {
        return Err(Error::InvalidInput(format!(
            "mixed multiplicity needs exactly n ideals in n variables, got {} ideals",
            ideals.len()
        )));
    }
    let mut groups: Vec<(&MonomialIdeal, u32)> = Vec::new();
    for ideal in ideals {
        match groups.iter_mut().find(|(g, _)| *g == ideal) {
            Some((_, c)) => *c += 1,
            None => groups.push((ideal, 1)),
        }
    }
    let polys = groups
        .iter()
        .map(|(g, _)| finite_polyhedron(g))
        .collect::<Result<Vec<_>>>()?;
    let caps: Vec<u32> = groups.iter().map(|(_, c)| *c).collect();
    let tuples = count_tuples(&caps);
    let terms = tuples
        .par_iter()
        .map(|counts| {
            let size: u32 = counts.iter().sum();
            let mut coeff = Integer::one();
            for (&c, &s) in caps.iter().zip(counts) {
                coeff *= binomial(c as usize, s as usize);
            }
            if (n as u32 - size) % 2 == 1 {
                coeff = -coeff;
            }
            Ok(weighted_sum_covolume(&polys, counts)? * rat_int(&coeff))
        })
        .collect::<Result<Vec<Rational>>>()?;
    let e = integral(terms.into_iter().sum(), "mixed multiplicity")?;
    if !e.is_positive() {
        return Err(internal!("mixed multiplicity {e} is not positive"));
    }
    Ok(e)
}

/// All `counts` with `0 <= counts[g] <= caps[g]`, not all zero.
fn count_tuples(caps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=c).map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out.retain(|t| t.iter().any(|&s| s > 0));
    out
}

/// `e_i(I, J)` for `i = 0..n`, cross-checked against a polynomial fit when
/// built with debug assertions.
pub fn mixed_sequence(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MultiplicityTable> {
    mixed_sequence_with(i, j, cfg!(debug_assertions))
}

/// As [`mixed_sequence`], with the polynomial-fit cross-check on demand.
pub fn mixed_sequence_with(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    cross_check: bool,
) -> Result<MultiplicityTable> {
    let n = i.num_vars();
    if j.num_vars() != n {
        return Err(Error::InvalidInput("ideals live in different rings".into()));
    }
    let polys = [finite_polyhedron(i)?, finite_polyhedron(j)?];
    let n32 = n as u32;
    let keys: Vec<(u32, u32)> = (0..=n32)
        .flat_map(|a| (0..=n32 - a).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b >= 1)
        .collect();
    let covolumes: BTreeMap<(u32, u32), Rational> = keys
        .par_iter()
        .map(|&(a, b)| Ok(((a, b), weighted_sum_covolume(&polys, &[a, b])?)))
        .collect::<Result<_>>()?;

    let mut mixed = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut total = Rational::zero();
        for a in 0..=k {
            for b in 0..=n - k {
                if a + b == 0 {
                    continue;
                }
                let mut coeff = binomial(k, a) * binomial(n - k, b);
                if (n - a - b) % 2 == 1 {
                    coeff = -coeff;
                }
                total += &covolumes[&(a as u32, b as u32)] * rat_int(&coeff);
            }
        }
        let e = integral(total, "mixed multiplicity")?;
        if !e.is_positive() {
            return Err(internal!("mixed multiplicity e_{k} = {e} is not positive"));
        }
        mixed.push(e);
    }
    if cross_check {
        let fitted = fitted_sequence(&polys, n)?;
        if fitted != mixed {
            return Err(internal!(
                "polarization {mixed:?} disagrees with polynomial fit {fitted:?}"
            ));
        }
    }
    Ok(MultiplicityTable {
        n,
        e_i: mixed[n].clone(),
        e_j: mixed[0].clone(),
        mixed,
        covolumes,
    })
}

/// Recovers `e_i` from `covol(l P + m Q) = sum_i e_i l^i m^(n-i) / (i! (n-i)!)`
/// sampled at `l, m >= 1`, `l + m <= n + 2`: the samples with `m = 1` fix the
/// coefficients and the rest must agree with them.
fn fitted_sequence(polys: &[NewtonPolyhedron; 2], n: usize) -> Result<Vec<Integer>> {
    let top = n as u32 + 2;
    let samples: Vec<(u32, u32)> = (1..top)
        .flat_map(|l| (1..=top - l).map(move |m| (l, m)))
        .collect();
    let values: BTreeMap<(u32, u32), Rational> = samples
        .par_iter()
        .map(|&(l, m)| Ok(((l, m), weighted_sum_covolume(polys, &[l, m])?)))
        .collect::<Result<_>>()?;
    let powers = |l: u32, m: u32| -> Vec<Rational> {
        (0..=n)
            .map(|k| rat_int(&(num::pow(Integer::from(l), k) * num::pow(Integer::from(m), n - k))))
            .collect()
    };
    let rows: Vec<Vec<Rational>> = (1..=n as u32 + 1).map(|l| powers(l, 1)).collect();
    let rhs: Vec<Rational> = (1..=n as u32 + 1)
        .map(|l| values[&(l, 1)].clone())
        .collect();
    let coeffs = solve(&rows, &rhs).ok_or_else(|| internal!("singular fitting system"))?;
    for (&(l, m), v) in &values {
        let predicted: Rational = powers(l, m).iter().zip(&coeffs).map(|(p, c)| p * c).sum();
        if &predicted != v {
            return Err(internal!(
                "covolume at ({l}, {m}) is {} but the fit predicts {}",
                fmt_rational(v),
                fmt_rational(&predicted)
            ));
        }
    }
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            integral(
                c * rat_int(&(factorial(k) * factorial(n - k))),
                "fitted multiplicity",
            )
        })
        .collect()
}

/// The cap on `r` for [`rees_sigma`], read from `LOJAX_SIGMA_CAP`.
pub fn sigma_cap() -> u32 {
    std::env::var(SIGMA_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_SIGMA_CAP)
}

/// `sigma(I_1, ..., I_n) = max_r e(I_1 + m^r, ..., I_n + m^r)`, using the
/// default cap.
pub fn rees_sigma(ideals: &[MonomialIdeal]) -> Result<Integer> {
    rees_sigma_with_cap(ideals, sigma_cap())
}

/// Evaluates `r = r0, r0 + 1, ...` and stops at the first two consecutive
/// equal values; gives up with `NonStabilized` once `r - r0` exceeds `cap`.
/// `r0` is the largest generator exponent, so the cap counts steps past the
/// point where `m^r` can first be absorbed.
pub fn rees_sigma_with_cap(ideals: &[MonomialIdeal], cap: u32) -> Result<Integer> {
    let n = ideals.first().map_or(0, MonomialIdeal::num_vars);
    if ideals.len() != n || n == 0 || ideals.iter().any(|i| i.num_vars() != n) {
        return Err(Error::InvalidInput(format!(
            "sigma needs exactly n ideals in n variables, got {} ideals",
            ideals.len()
        )));
    }
    if ideals.iter().any(MonomialIdeal::is_zero) {
        return Err(Error::InvalidInput("sigma of the zero ideal".into()));
    }
    if ideals.iter().all(MonomialIdeal::is_finite_colength) {
        return mixed_multiplicity(ideals);
    }
    let r0 = ideals
        .iter()
        .flat_map(|i| i.generators().iter().flat_map(|g| g.0.iter()))
        .max()
        .cloned()
        .unwrap_or_default()
        .max(Integer::one());
    let r0 = u32::try_from(r0).map_err(|_| Error::NonStabilized { cap })?;
    // Γ_+(I + m^r) only depends on the vertices of Γ_+(I).
    let reduced = ideals
        .iter()
        .map(vertex_ideal)
        .collect::<Result<Vec<_>>>()?;
    let mut previous: Option<Integer> = None;
    for r in r0..=r0.saturating_add(cap) {
        let truncated = reduced
            .iter()
            .map(|i| plus_power_of_maximal(i, r))
            .collect::<Result<Vec<_>>>()?;
        let e = mixed_multiplicity(&truncated)?;
        if let Some(p) = &previous {
            if e < *p {
                return Err(internal!("e(I + m^r) decreased from {p} to {e} at r = {r}"));
            }
            if e == *p {
                return Ok(e);
            }
        }
        previous = Some(e);
    }
    Err(Error::NonStabilized { cap })
}

/// The ideal generated by the vertices of `Γ_+(I)`.
fn vertex_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let gens = ideal
        .newton_polyhedron()?
        .vertices()
        .iter()
        .map(|v| {
            v.to_integer()
                .ok_or_else(|| internal!("non-integral vertex {v}"))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(ideal.num_vars(), gens)
}

/// An ideal with the Newton polyhedron of `I + m^r`.
fn plus_power_of_maximal(ideal: &MonomialIdeal, r: u32) -> Result<MonomialIdeal> {
    let n = ideal.num_vars();
    let mut gens = ideal.generators().to_vec();
    gens.extend((0..n).map(|i| IntegerVector::unit(n, i).scale(&Integer::from(r))));
    MonomialIdeal::new(n, gens)
}

/// `dim_C O_n / I`: the number of monomials outside `I`.
pub fn colength(ideal: &MonomialIdeal) -> Result<Integer> {
    if !ideal.is_finite_colength() {
        return Err(Error::NotFiniteColength);
    }
    let n = ideal.num_vars();
    let bounds: Vec<Integer> = (0..n)
        .map(|i| {
            ideal
                .generators()
                .iter()
                .filter(|g| g.support() == [i])
                .map(|g| &g[i] - Integer::one())
                .min()
                .ok_or(Error::NotFiniteColength)
        })
        .collect::<Result<_>>()?;
    let mut count = Integer::zero();
    for_each_lattice_point(&bounds, |k| {
        if !ideal.contains_monomial(k) {
            count += 1;
        }
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::geometry::{basic_feasible_points, HPolyhedron, HalfSpace};

    fn ideal(n: usize, exps: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, exps).unwrap()
    }

    fn maximal(n: usize) -> MonomialIdeal {
        MonomialIdeal::maximal(n).unwrap()
    }

    /// `M^n - Vol(P ∩ [0, M]^n)` with `M` the largest axis intercept; the
    /// clipped polytope comes from its basic feasible points.
    fn box_covolume(p: &NewtonPolyhedron) -> Rational {
        let n = p.dim();
        let m = p
            .axis_intercepts()
            .iter()
            .map(|a| a.clone().unwrap())
            .max()
            .unwrap();
        let mut halfspaces = p.facets().to_vec();
        halfspaces.extend(
            (0..n).map(|i| HalfSpace::new(IntegerVector::unit(n, i).scale(&int(-1)), -m.clone())),
        );
        let clipped = basic_feasible_points(&HPolyhedron::new(n, halfspaces).unwrap());
        num::pow(m, n) - polytope_volume(&clipped)
    }

    #[test]
    fn covolumes() {
        let p = ideal(2, &[&[2, 0], &[0, 3]]).newton_polyhedron().unwrap();
        assert_eq!(covolume(&p).unwrap(), rat(3, 1));
        let m = maximal(2).newton_polyhedron().unwrap();
        assert_eq!(covolume(&m).unwrap(), rat(1, 2));
        assert_eq!(covolume(&p.minkowski_sum(&m).unwrap()).unwrap(), rat(11, 2));
        let nc = ideal(2, &[&[1, 1]]).newton_polyhedron().unwrap();
        assert_eq!(covolume(&nc), Err(Error::NotFiniteColength));
    }

    #[test]
    fn covolume_matches_box_difference() {
        let cases = [
            ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]),
            ideal(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[1, 1, 1]]),
            ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4], &[1, 1, 0]]),
            maximal(4),
        ];
        for c in cases {
            let p = c.newton_polyhedron().unwrap();
            assert_eq!(covolume(&p).unwrap(), box_covolume(&p), "{c:?}");
        }
    }

    #[test]
    fn samuel_multiplicities() {
        assert_eq!(
            samuel_multiplicity(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(),
            int(6)
        );
        assert_eq!(
            samuel_multiplicity(&ideal(2, &[&[7, 0], &[0, 5]])).unwrap(),
            int(35)
        );
        let j = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        assert_eq!(samuel_multiplicity(&j).unwrap(), int(24));
        let i = ideal(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[1, 1, 1]]);
        assert_eq!(samuel_multiplicity(&i).unwrap(), int(75));
        assert_eq!(
            samuel_multiplicity(&ideal(2, &[&[4, 0], &[1, 1], &[0, 4]])).unwrap(),
            int(8)
        );
        assert!(matches!(
            samuel_multiplicity(&MonomialIdeal::unit(2).unwrap()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn mixed_multiplicities() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(
            mixed_multiplicity(&[i.clone(), maximal(2)]).unwrap(),
            int(2)
        );
        assert_eq!(mixed_multiplicity(&[i.clone(), i.clone()]).unwrap(), int(6));
        assert_eq!(
            mixed_multiplicity(&[maximal(2), maximal(2)]).unwrap(),
            int(1)
        );
        assert!(matches!(
            mixed_multiplicity(&[i]),
            Err(Error::InvalidInput(_))
        ));
        let three = [
            ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]),
            maximal(3),
            maximal(3),
        ];
        assert_eq!(mixed_multiplicity(&three).unwrap(), int(2));
    }

    #[test]
    fn mixed_sequences() {
        let t = mixed_sequence(&ideal(2, &[&[2, 0], &[0, 3]]), &maximal(2)).unwrap();
        assert_eq!(t.mixed, vec![int(1), int(2), int(6)]);
        assert_eq!((t.e_j.clone(), t.e_i.clone()), (int(1), int(6)));
        assert_eq!(t.covolumes.len(), 5);
        let t = mixed_sequence(
            &ideal(2, &[&[4, 0], &[0, 4]]),
            &ideal(2, &[&[2, 0], &[0, 3]]),
        )
        .unwrap();
        assert_eq!(t.mixed, vec![int(6), int(8), int(16)]);
        let i = ideal(3, &[&[3, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]);
        let t = mixed_sequence_with(&i, &i, true).unwrap();
        assert!(t.mixed.iter().all(|e| *e == t.e_i));
    }

    #[test]
    fn sigma() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(rees_sigma(&[i.clone(), i]).unwrap(), int(6));
        let x2 = ideal(2, &[&[2, 0]]);
        assert_eq!(
            rees_sigma(&[x2, MonomialIdeal::maximal(2).unwrap().power(3).unwrap()]).unwrap(),
            int(6)
        );
        let x = ideal(2, &[&[1, 0]]);
        assert_eq!(
            rees_sigma_with_cap(&[x.clone(), x], 12),
            Err(Error::NonStabilized { cap: 12 })
        );
        assert!(rees_sigma(&[MonomialIdeal::zero(2), maximal(2)]).is_err());
    }

    #[test]
    fn colengths() {
        assert_eq!(colength(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(), int(6));
        assert_eq!(colength(&maximal(3)).unwrap(), int(1));
        assert_eq!(
            colength(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap(),
            int(3)
        );
        assert_eq!(
            colength(&ideal(2, &[&[1, 1]])),
            Err(Error::NotFiniteColength)
        );
    }

    #[test]
    fn power_scaling() {
        let i = ideal(2, &[&[3, 0], &[1, 1], &[0, 2]]);
        let e = samuel_multiplicity(&i).unwrap();
        for s in 1..=3u32 {
            assert_eq!(
                samuel_multiplicity(&i.power(s).unwrap()).unwrap(),
                &e * int(i64::from(s * s))
            );
        }
    }
}
