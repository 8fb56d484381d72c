//! Relations between multiplicities and Lojasiewicz exponents: the lower
//! bound `e(I_1, ..., I_n) >= (prod nu_J(I_i) / M_J^n) e(J)`, the Hickel
//! condition relative to `J`, and a suite of inequalities that hold for
//! every pair.

use std::fmt;

use num::{One, Zero};

use crate::arith::{fmt_rational, rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::filtration::{FiltrationMap, NuValue};
use crate::lojasiewicz::{loja_sequence, EntryKind, LojaReport};
use crate::multiplicity::{mixed_sequence, rees_sigma, samuel_multiplicity, MultiplicityTable};
use crate::newton::MonomialIdeal;

/// A yes/no answer that may be unavailable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonDegeneracy {
    /// `None` when `sigma` did not stabilize.
    pub sigma: Option<Integer>,
    /// `(prod nu_J(I_i) / M_J^n) e(J)`.
    pub bound: Rational,
    pub verdict: Verdict,
}

/// Whether `sigma(I_1, ..., I_n)` attains its lower bound
/// `(prod nu_J(I_i) / M_J^n) e(J)`.
pub fn nondegenerate_tuple(ideals: &[MonomialIdeal], j: &MonomialIdeal) -> Result<NonDegeneracy> {
    let f = FiltrationMap::new(j)?;
    let m = rat_int(f.m());
    let e_j = samuel_multiplicity(j)?;
    let mut bound = rat_int(&e_j);
    for ideal in ideals {
        match f.nu_ideal(ideal)? {
            NuValue::Finite(v) => bound *= v / &m,
            NuValue::Infinite => {
                return Err(Error::InvalidInput(
                    "the tuple contains the zero ideal".into(),
                ))
            }
        }
    }
    match rees_sigma(ideals) {
        Ok(sigma) => {
            let verdict = (rat_int(&sigma) == bound).into();
            Ok(NonDegeneracy {
                sigma: Some(sigma),
                bound,
                verdict,
            })
        }
        Err(Error::NonStabilized { .. }) => Ok(NonDegeneracy {
            sigma: None,
            bound,
            verdict: Verdict::Undecided,
        }),
        Err(e) => Err(e),
    }
}

/// The check `e_i / e_{i-1} <= L^(i)` for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCheck {
    pub i: usize,
    pub ratio: Rational,
    pub bound: Option<Rational>,
    pub kind: EntryKind,
    /// `None` when the entry is absent.
    pub satisfied: Option<bool>,
    /// Equality, reported only against exact entries.
    pub equality: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HickelReport {
    pub table: MultiplicityTable,
    pub loja: LojaReport,
    /// `e(I) / e(J)`.
    pub ratio_e: Rational,
    /// `prod_i L^(i)`, present when every entry is exact.
    pub product_l: Option<Rational>,
    /// `prod_i a_i / M_J^n`.
    pub product_a: Rational,
    pub is_hickel: Verdict,
    pub per_i: Vec<IndexCheck>,
    /// `e(I) / e(J) = prod_i a_i / M_J^n`.
    pub equality_a: bool,
}

fn product_a(loja: &LojaReport) -> Rational {
    let m = rat_int(&loja.m_j);
    loja.a.iter().fold(Rational::one(), |acc, a| acc * a / &m)
}

pub fn hickel_report(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<HickelReport> {
    let table = mixed_sequence(i, j)?;
    let loja = loja_sequence(i, j)?;
    let e = &table.mixed;
    let ratio_e = Rational::new(table.e_i.clone(), table.e_j.clone());
    let product_l = loja.all_exact().then(|| {
        loja.entries
            .iter()
            .map(|en| en.value.clone().expect("exact entries carry values"))
            .product::<Rational>()
    });
    let product_a = product_a(&loja);
    let is_hickel = product_l
        .as_ref()
        .map_or(Verdict::Undecided, |p| (*p == ratio_e).into());
    let per_i = loja
        .entries
        .iter()
        .map(|en| {
            let ratio = Rational::new(e[en.i].clone(), e[en.i - 1].clone());
            IndexCheck {
                i: en.i,
                satisfied: en.value.as_ref().map(|b| ratio <= *b),
                equality: (en.kind == EntryKind::Exact)
                    .then(|| en.value.as_ref().is_some_and(|b| ratio == *b)),
                bound: en.value.clone(),
                kind: en.kind,
                ratio,
            }
        })
        .collect();
    let equality_a = ratio_e == product_a;
    Ok(HickelReport {
        table,
        loja,
        ratio_e,
        product_l,
        product_a,
        is_hickel,
        per_i,
        equality_a,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

/// One inequality with both sides evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
}

impl Check {
    fn new(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        };
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
            holds,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} {} {}",
            if self.holds { "ok  " } else { "FAIL" },
            self.name,
            fmt_rational(&self.lhs),
            self.relation.as_str(),
            fmt_rational(&self.rhs)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySuite {
    pub checks: Vec<Check>,
}

impl InequalitySuite {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Evaluates every applicable inequality for the pair; failures are data.
pub fn inequality_suite(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<InequalitySuite> {
    let report = hickel_report(i, j)?;
    suite_from_report(i, j, &report)
}

pub fn suite_from_report(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    report: &HickelReport,
) -> Result<InequalitySuite> {
    let loja = &report.loja;
    let e = &report.table.mixed;
    let n = loja.n;
    let m = rat_int(&loja.m_j);
    let e_j = rat_int(&report.table.e_j);
    let mut checks = Vec::new();

    checks.push(Check::new(
        "e(I)/e(J) <= prod a_i / M^n",
        report.ratio_e.clone(),
        Relation::Le,
        report.product_a.clone(),
    ));
    if let Some(pl) = &report.product_l {
        if loja.inclusion {
            checks.push(Check::new(
                "e(I)/e(J) <= prod L^(i)",
                report.ratio_e.clone(),
                Relation::Le,
                pl.clone(),
            ));
            checks.push(Check::new(
                "prod L^(i) <= prod a_i / M^n",
                pl.clone(),
                Relation::Le,
                report.product_a.clone(),
            ));
        }
    }
    let mut partial = Some(Rational::one());
    for en in &loja.entries {
        partial = match (&partial, &en.value) {
            (Some(p), Some(v)) => Some(p * v),
            _ => None,
        };
        if let Some(p) = &partial {
            checks.push(Check::new(
                format!("e_{}/e(J) <= L^(1)...L^({})", en.i, en.i),
                rat_int(&e[en.i]) / &e_j,
                Relation::Le,
                p.clone(),
            ));
        }
    }
    for c in &report.per_i {
        if let Some(b) = &c.bound {
            checks.push(Check::new(
                format!("e_{}/e_{} <= L^({})", c.i, c.i - 1, c.i),
                c.ratio.clone(),
                Relation::Le,
                b.clone(),
            ));
        }
    }
    if loja.inclusion {
        let exact: Vec<_> = loja
            .entries
            .iter()
            .filter(|en| en.kind == EntryKind::Exact)
            .collect();
        for w in exact.windows(2) {
            checks.push(Check::new(
                format!("L^({}) <= L^({})", w[0].i, w[1].i),
                w[0].value.clone().expect("exact"),
                Relation::Le,
                w[1].value.clone().expect("exact"),
            ));
        }
    }
    let f = FiltrationMap::new(j)?;
    let nu = match f.nu_ideal(i)? {
        NuValue::Finite(v) => v / &m,
        NuValue::Infinite => return Err(Error::InvalidInput("zero ideal".into())),
    };
    let mut power = Rational::one();
    for (k, e_k) in e.iter().enumerate().take(n + 1) {
        if k > 0 {
            power *= &nu;
        }
        checks.push(Check::new(
            format!("e_{k} >= (nu_J(I)/M)^{k} e(J)"),
            rat_int(e_k),
            Relation::Ge,
            &power * &e_j,
        ));
    }
    for k in 1..n {
        checks.push(Check::new(
            format!("a_{} <= a_{}", k, k + 1),
            loja.a[k - 1].clone(),
            Relation::Le,
            loja.a[k].clone(),
        ));
    }
    if checks.iter().any(|c| c.lhs < Rational::zero()) {
        return Err(crate::error::internal!(
            "negative quantity in the inequality suite"
        ));
    }
    Ok(InequalitySuite { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::lojasiewicz::build_k_ideals;

    fn ideal(n: usize, exps: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, exps).unwrap()
    }

    fn maximal() -> MonomialIdeal {
        MonomialIdeal::maximal(2).unwrap()
    }

    #[test]
    fn non_degeneracy() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let k = build_k_ideals(&i, &maximal()).unwrap();
        let r = nondegenerate_tuple(&k, &maximal()).unwrap();
        assert_eq!(r.sigma, Some(int(6)));
        assert_eq!(r.verdict, Verdict::True);

        let j = ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]);
        assert_eq!(
            nondegenerate_tuple(&[j.clone(), j.clone()], &j)
                .unwrap()
                .verdict,
            Verdict::True
        );

        // e(<x^2, y^3>, <x^3, y^2>) = min(2*2, 3*3) = 4 = ord * ord * e(m).
        let pair = [i, ideal(2, &[&[3, 0], &[0, 2]])];
        let r = nondegenerate_tuple(&pair, &maximal()).unwrap();
        assert_eq!((r.sigma, r.bound), (Some(int(4)), rat(4, 1)));
        assert_eq!(r.verdict, Verdict::True);

        // sigma(<xy>, <xy>) does not stabilize.
        let xy = ideal(2, &[&[1, 1]]);
        assert_eq!(
            nondegenerate_tuple(&[xy.clone(), xy], &maximal())
                .unwrap()
                .verdict,
            Verdict::Undecided
        );
        assert!(nondegenerate_tuple(&[MonomialIdeal::zero(2), maximal()], &maximal()).is_err());
    }

    #[test]
    fn hickel_diagonal_pairs() {
        let r = hickel_report(
            &ideal(2, &[&[4, 0], &[0, 4]]),
            &ideal(2, &[&[2, 0], &[0, 3]]),
        )
        .unwrap();
        assert_eq!(r.ratio_e, rat(8, 3));
        assert_eq!(r.product_l, Some(rat(8, 3)));
        assert_eq!(r.is_hickel, Verdict::True);
        assert!(r
            .per_i
            .iter()
            .all(|c| c.satisfied == Some(true) && c.equality == Some(true)));

        let r = hickel_report(&ideal(2, &[&[2, 0], &[0, 3]]), &maximal()).unwrap();
        assert_eq!(r.is_hickel, Verdict::True);
        assert_eq!(r.ratio_e, rat(6, 1));
    }

    #[test]
    fn hickel_fails_for_mixed_generator() {
        let i = ideal(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[1, 1, 1]]);
        let j = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        let r = hickel_report(&i, &j).unwrap();
        assert_eq!(r.ratio_e, rat(25, 8));
        assert_eq!(r.product_l, Some(rat(325, 72)));
        assert_eq!(r.is_hickel, Verdict::False);
        assert!(suite_from_report(&i, &j, &r).unwrap().all_hold());
    }

    #[test]
    fn non_diagonal_pair_is_undecided() {
        let i = ideal(2, &[&[5, 0], &[0, 5]]);
        let j = ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]);
        let r = hickel_report(&i, &j).unwrap();
        assert_eq!(r.is_hickel, Verdict::Undecided);
        assert_eq!(r.ratio_e, rat(25, 8));
        assert_eq!(r.product_a, rat(25, 8));
        assert!(r.equality_a);
        let suite = inequality_suite(&i, &j).unwrap();
        assert!(
            suite.all_hold(),
            "{:?}",
            suite.failures().collect::<Vec<_>>()
        );
    }
}
