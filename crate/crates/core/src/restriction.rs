//! Ziegler multirestrictions and the deletion/restriction statements linking
//! freeness and near freeness.

use serde::Serialize;

use crate::arrangement::{Arrangement, IncidenceStructure};
use crate::error::{Error, Result};
use crate::invariants::{char_poly, exponent_candidates, CharPoly, ExponentKind, ExponentPair};
use crate::syzygy::{arrangement_verdict, VerdictKind};

/// A multiarrangement of points on a line, multiplicities sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Multiarrangement2 {
    mults: Vec<usize>,
}

impl Multiarrangement2 {
    pub fn new(mut mults: Vec<usize>) -> Result<Self> {
        if mults.is_empty() || mults.contains(&0) {
            return Err(Error::InvalidIncidence("multiplicities must be positive and nonempty".into()));
        }
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { mults })
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn n(&self) -> usize {
        self.mults.len()
    }

    pub fn total(&self) -> usize {
        self.mults.iter().sum()
    }
}

/// The Ziegler multirestriction onto line `h`: each point `X` on `h` gets the
/// number of other lines through it.
pub fn ziegler(inc: &IncidenceStructure, h: usize) -> Result<Multiarrangement2> {
    let pts = inc.points_on_line(h)?;
    if pts.is_empty() {
        return Err(Error::InvalidIncidence(format!("line {h} meets no other line")));
    }
    Multiarrangement2::new(pts.iter().map(|p| p.len() - 1).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExponentCase {
    /// `m1 >= m / 2`.
    I,
    /// `n >= m / 2 + 1`.
    II,
    /// At least two points, all of multiplicity 2.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionExponents {
    /// `(e1, e2)` with `e1 <= e2` and `e1 + e2 = m`, when some case applies.
    pub value: Option<(usize, usize)>,
    /// Every case that applies, all agreeing on `value`.
    pub cases: Vec<ExponentCase>,
}

impl RestrictionExponents {
    pub fn is_determined(&self) -> bool {
        self.value.is_some()
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Exponents of a multiarrangement on a line in the closed-form cases. All
/// applicable cases are evaluated and must agree.
pub fn exponents_2multi(ma: &Multiarrangement2) -> Result<RestrictionExponents> {
    let (m, n, m1) = (ma.total(), ma.n(), ma.mults[0]);
    let mut found: Vec<(ExponentCase, (usize, usize))> = Vec::new();
    if 2 * m1 >= m {
        found.push((ExponentCase::I, ordered(m1, m - m1)));
    }
    if 2 * n >= m + 2 {
        found.push((ExponentCase::II, ordered(m + 1 - n, n - 1)));
    }
    if n >= 2 && ma.mults.iter().all(|&x| x == 2) {
        found.push((ExponentCase::III, (n, n)));
    }
    if let Some(&(_, first)) = found.first() {
        if let Some(&(c, other)) = found.iter().find(|(_, v)| *v != first) {
            return Err(Error::CaseConflict(format!(
                "{:?} gives {first:?}, {c:?} gives {other:?} for {:?}",
                found[0].0, ma.mults
            )));
        }
    }
    Ok(RestrictionExponents {
        value: found.first().map(|f| f.1),
        cases: found.into_iter().map(|f| f.0).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlaggedLine {
    pub line: usize,
    pub exponents: (usize, usize),
    pub cases: Vec<ExponentCase>,
}

/// Lines whose Ziegler multirestriction has exponents in closed form. A
/// nonempty list means freeness is determined by the lattice.
pub fn yoshinaga_flag(inc: &IncidenceStructure) -> Result<Vec<FlaggedLine>> {
    let mut out = Vec::new();
    for h in 0..inc.d() {
        if inc.points_on_line(h)?.is_empty() {
            continue;
        }
        let r = exponents_2multi(&ziegler(inc, h)?)?;
        if let Some(exponents) = r.value {
            out.push(FlaggedLine { line: h, exponents, cases: r.cases });
        }
    }
    Ok(out)
}

/// One statement of the deletion/restriction triple for a line `H` of `A`
/// with `B = A \ {H}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DrFact {
    /// `A` is free with exponents `(d1, d2)`.
    AFree { d1: i64, d2: i64 },
    /// `B` is nearly free with exponents `(d1, d2)`.
    BNearlyFree { d1: i64, d2: i64 },
    /// `|A^H| = count`.
    RestrictionCount { count: i64 },
}

impl DrFact {
    fn exponents(self) -> Option<(i64, i64)> {
        match self {
            DrFact::AFree { d1, d2 } | DrFact::BNearlyFree { d1, d2 } => Some((d1, d2)),
            DrFact::RestrictionCount { .. } => None,
        }
    }

    fn slot(self) -> u8 {
        match self {
            DrFact::AFree { .. } => 0,
            DrFact::BNearlyFree { .. } => 1,
            DrFact::RestrictionCount { .. } => 2,
        }
    }
}

/// Given two of: `A` free with exponents `(d1, d2)`, `B = A \ {H}` nearly
/// free with the same exponents, `|A^H| = d1`; returns the third.
pub fn two_of_three(first: DrFact, second: DrFact) -> Result<DrFact> {
    if first.slot() == second.slot() {
        return Err(Error::Inconsistent("two distinct statements are required".into()));
    }
    let exps: Vec<(i64, i64)> = [first, second].iter().filter_map(|f| f.exponents()).collect();
    let (d1, d2) = exps[0];
    if d1 > d2 || d1 < 0 {
        return Err(Error::Inconsistent(format!("exponents ({d1},{d2}) are not ordered")));
    }
    if exps.len() == 2 && exps[0] != exps[1] {
        return Err(Error::Inconsistent(format!("exponents {:?} and {:?} differ", exps[0], exps[1])));
    }
    for f in [first, second] {
        if let DrFact::RestrictionCount { count } = f {
            if count != d1 {
                return Err(Error::Inconsistent(format!("|A^H| = {count} differs from d1 = {d1}")));
            }
        }
    }
    Ok(match 3 - first.slot() - second.slot() {
        0 => DrFact::AFree { d1, d2 },
        1 => DrFact::BNearlyFree { d1, d2 },
        _ => DrFact::RestrictionCount { count: d1 },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SufficiencyCase {
    /// `|A^H| = b + 1`.
    One,
    /// `|A^H| = a + 1` and `b != a + 2`.
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RemarkCase {
    /// `d1 = d2`, a line with `d1` or `d1 + 1` points.
    I,
    /// `d1 < d2`, `d2 != d1 + 3`, a line with `d1 + 1` or `d2` points.
    II,
    /// `d2 = d1 + 3`, a line with `d2` points.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkHit {
    pub exponents: ExponentPair,
    pub case: RemarkCase,
    pub line: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sufficiency {
    pub a: i64,
    pub b: i64,
    /// The first line meeting a case of the theorem, if any.
    pub applicable: Option<(usize, SufficiencyCase)>,
    /// The refined conditions, one entry per nearly free reading of `chi`.
    pub remark: Vec<RemarkHit>,
}

/// Integers `a <= b` with `chi = (t - a)(t - b) + 1`.
pub fn decompose_chi(cp: CharPoly) -> Result<(i64, i64)> {
    let err = Error::NoIntegerDecomposition { b1: cp.b1, b2: cp.b2 };
    let disc = cp.b1 * cp.b1 - 4 * (cp.b2 - 1);
    if disc < 0 {
        return Err(err);
    }
    let r = num_integer::Roots::sqrt(&disc);
    if r * r != disc || (cp.b1 - r) % 2 != 0 {
        return Err(err);
    }
    Ok(((cp.b1 - r) / 2, (cp.b1 + r) / 2))
}

/// The sufficient conditions for near freeness read off the lattice.
pub fn nearly_free_sufficiency(inc: &IncidenceStructure) -> Result<Sufficiency> {
    let cp = char_poly(&inc.multiplicity_vector());
    let (a, b) = decompose_chi(cp)?;
    let counts: Vec<i64> = inc.line_profiles().iter().map(|p| p.n_h() as i64).collect();
    let find = |n: i64| counts.iter().position(|&c| c == n);
    let applicable = find(b + 1)
        .map(|h| (h, SufficiencyCase::One))
        .or_else(|| if b != a + 2 { find(a + 1).map(|h| (h, SufficiencyCase::Two)) } else { None });
    let remark = exponent_candidates(cp, ExponentKind::NearlyFree)
        .into_iter()
        .map(|e| {
            let (d1, d2) = (e.d1, e.d2);
            let (case, line) = if d1 == d2 {
                (RemarkCase::I, find(d1).or_else(|| find(d1 + 1)))
            } else if d2 == d1 + 3 {
                (RemarkCase::III, find(d2))
            } else {
                (RemarkCase::II, find(d1 + 1).or_else(|| find(d2)))
            };
            RemarkHit { exponents: e, case, line }
        })
        .collect();
    Ok(Sufficiency { a, b, applicable, remark })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralChecks {
    /// Every line has at most `d2 + 1` points.
    pub upper_bound: bool,
    /// Some line has exactly `d2 + 1` points.
    pub line_with_d2_plus_one: Option<usize>,
    /// For `2d + 1` lines with exponents `(d, d + 1)`: a line with exactly
    /// `d` points, all triple. `None` when the shape does not apply.
    pub triple_point_line: Option<Option<usize>>,
    /// For the designated line: the deletion is free and the line meets it in
    /// `d2 + 1` points. `None` without a realization or designated line.
    pub addition: Option<bool>,
}

/// Necessary and sufficient structural facts for an arrangement with the
/// given kind and exponents.
pub fn structural_checks(
    inc: &IncidenceStructure,
    exps: ExponentPair,
    designated: Option<(usize, &Arrangement)>,
) -> Result<StructuralChecks> {
    let profiles = inc.line_profiles();
    let d2 = exps.d2;
    let upper_bound = profiles.iter().all(|p| p.n_h() as i64 <= d2 + 1);
    let line_with_d2_plus_one = profiles.iter().position(|p| p.n_h() as i64 == d2 + 1);
    let d = inc.d() as i64;
    let triple_point_line = (exps.kind == ExponentKind::NearlyFree && d == 2 * exps.d1 + 1 && d2 == exps.d1 + 1)
        .then(|| profiles.iter().position(|p| p.n_h() as i64 == exps.d1 && p.count(3) == p.n_h()));
    let addition = match designated {
        Some((h, arr)) => {
            let n_h = inc.line_profile(h)?.n_h() as i64;
            let (_, v) = arrangement_verdict(&arr.delete(h)?)?;
            Some(v.kind == VerdictKind::Free && n_h == d2 + 1)
        }
        None => None,
    };
    Ok(StructuralChecks { upper_bound, line_with_d2_plus_one, triple_point_line, addition })
}
