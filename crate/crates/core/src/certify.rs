//! Decision procedures for combinatorial freeness and near freeness that emit
//! executable certificates, and the full analysis report.
//!
//! Each certificate records a chain of rules; every rule lists the facts about
//! the subject that its hypotheses need. Facts are recomputed from the subject
//! on [`Certificate::replay`]. Imported theorems are named rules whose
//! hypotheses are checked here; their conclusions are taken as given.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::arrangement::io::Input;
use crate::arrangement::{classify_profile_13, Arrangement, IncidenceStructure, LineProfile, MultiplicityVector};
use crate::diophantine::{
    assert_property, enumerate_nonneg, lemma_properties, predefined, predefined_params, profile_vector,
    PropertyOutcome,
};
use crate::error::{Error, Result};
use crate::invariants::{
    char_poly, exponent_candidates, exponents_from_chi, hirzebruch_check, tjurina_combinatorial, tjurina_target,
    CharPoly, ExponentKind, ExponentPair,
};
use crate::restriction::{decompose_chi, exponents_2multi, two_of_three, ziegler, DrFact};
use crate::syzygy::{arrangement_verdict, VerdictKind};

pub const REPORT_SCHEMA: &str = "linefree.report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Procedure {
    /// Freeness for 13 lines.
    Terao13,
    /// Near freeness for at most 12 lines.
    NearlyFree12,
    /// Freeness for 14 lines, reduced to near freeness for 13.
    Reduce14,
}

impl Procedure {
    fn property(self) -> &'static str {
        match self {
            Procedure::NearlyFree12 => "nearly free",
            _ => "free",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// If some member of the lattice class has the property, all have it.
    Combinatorial,
    /// No member of the lattice class has the property.
    NoMember,
    /// Combinatorial, provided the stated hypothesis holds.
    Conditional(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    NoExponentShape,
    Generic,
    HighMultiplicity,
    ExponentBound,
    SmallArrangement,
    LowMultiplicity,
    LongLine,
    ShortLine,
    UpperBoundExceeded,
    AdditionLine,
    RemarkLine,
    TripleLine,
    LinePair,
    NoLinePair,
    SixPointLine,
    SystemInfeasible,
}

/// A checkable statement about the subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Fact {
    LineCount { d: usize },
    CharPoly { b1: i64, b2: i64 },
    Tjurina { tau: i64 },
    MaxMultiplicity { m: usize },
    /// `chi = (t - d1)(t - d2)` and `tau = (d - 1)^2 - d1 d2`.
    FreeShape { d1: i64, d2: i64 },
    NoFreeShape,
    /// `(d1, d2)` is a nearly free reading of `chi` and `tau` is its target.
    NearlyFreeShape { d1: i64, d2: i64 },
    NoNearlyFreeShape,
    AllPointsDouble,
    LinePoints { line: usize, points: usize },
    NoLineWithPoints { points: usize },
    /// Every line carries between `min` and `max` points.
    LinePointRange { min: usize, max: usize },
    /// `m (d1 + 2) >= 2 d` evaluates to `holds`.
    MultiplicityInequality { d1: i64, holds: bool },
    OnlyTriplePoints { line: usize, points: usize },
    ZieglerExponents { line: usize, e1: usize, e2: usize },
    PointCount { k: usize, count: u64 },
    AllLinesTyped13,
    /// Lines `h1`, `h2` carry 6 points each and meet in a point of the given
    /// multiplicity.
    SixPointLinesMeet { h1: usize, h2: usize, multiplicity: usize },
    NoSixPointLinesOffDouble,
    /// `chi(A \ line) = (t - a)(t - b) + 1`.
    DeletionDecomposition { line: usize, a: i64, b: i64 },
    /// In `A \ line`, the line `other` (original index) carries `points`.
    DeletionLinePoints { line: usize, other: usize, points: usize },
    Deduction { first: DrFact, second: DrFact, third: DrFact },
    LinesInTable { system: String },
    SystemEmpty { system: String },
    /// The subject's counts solve the system and every stated conclusion
    /// holds on the full solution set.
    LemmaSystem { system: String },
    RealizationVerdict { kind: VerdictKind, exponents: Option<(i64, i64)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub rule: String,
    pub statement: String,
    pub facts: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRecord {
    /// The exponent hypothesis the branch works under, if any.
    pub exponents: Option<ExponentPair>,
    pub branch: Branch,
    pub claim: Claim,
    pub rule_chain: Vec<RuleApplication>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub procedure: Procedure,
    /// Digest of the subject's incidence structure.
    pub subject: String,
    pub d: usize,
    pub preamble: Vec<RuleApplication>,
    /// One record, or one per nearly free reading of `chi`.
    pub branches: Vec<BranchRecord>,
}

impl Certificate {
    /// Recomputes every fact on the subject. Fails if the subject differs or
    /// a fact does not hold.
    pub fn replay(&self, inc: &IncidenceStructure, realization: Option<&Arrangement>) -> Result<()> {
        if inc.digest() != self.subject {
            return Err(Error::InternalInconsistency("certificate subject does not match".into()));
        }
        let ctx = Ctx::new(inc, realization);
        let rules = self.preamble.iter().chain(self.branches.iter().flat_map(|b| &b.rule_chain));
        for rule in rules {
            for fact in &rule.facts {
                if !ctx.holds(fact)? {
                    return Err(Error::InternalInconsistency(format!("rule {}: {fact:?} does not hold", rule.rule)));
                }
            }
        }
        Ok(())
    }

    pub fn claim_text(&self, record: &BranchRecord) -> String {
        let p = self.procedure.property();
        match &record.claim {
            Claim::Combinatorial => format!("if one member of the lattice class is {p}, every member is {p}"),
            Claim::NoMember => format!("no member of the lattice class is {p}"),
            Claim::Conditional(h) => format!("if {h}: if one member of the lattice class is {p}, every member is {p}"),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} on {} lines, subject {}", self.procedure, self.d, &self.subject[..16])?;
        for r in &self.preamble {
            writeln!(f, "  [{}] {}", r.rule, r.statement)?;
        }
        for b in &self.branches {
            match b.exponents {
                Some(e) => writeln!(f, "branch {:?} under exponents {e}", b.branch)?,
                None => writeln!(f, "branch {:?}", b.branch)?,
            }
            for r in &b.rule_chain {
                writeln!(f, "  [{}] {}", r.rule, r.statement)?;
                for fact in &r.facts {
                    writeln!(f, "      {fact:?}")?;
                }
            }
            writeln!(f, "  claim: {}", self.claim_text(b))?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    inc: &'a IncidenceStructure,
    real: Option<&'a Arrangement>,
    mv: MultiplicityVector,
    cp: CharPoly,
    tau: i64,
    m: usize,
    profiles: Vec<LineProfile>,
}

impl<'a> Ctx<'a> {
    fn new(inc: &'a IncidenceStructure, real: Option<&'a Arrangement>) -> Self {
        let mv = inc.multiplicity_vector();
        Self {
            inc,
            real,
            cp: char_poly(&mv),
            tau: tjurina_combinatorial(&mv),
            m: inc.max_multiplicity(),
            profiles: inc.line_profiles(),
            mv,
        }
    }

    fn d(&self) -> i64 {
        self.inc.d() as i64
    }

    fn n_h(&self, h: usize) -> usize {
        self.profiles[h].n_h()
    }

    fn line_where(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.inc.d()).find(|&h| pred(self.n_h(h)))
    }

    fn free_shape(&self) -> Option<ExponentPair> {
        exponents_from_chi(self.cp, ExponentKind::Free)
            .filter(|e| tjurina_target(self.d(), e.d1, ExponentKind::Free) == self.tau)
    }

    fn nearly_free_shapes(&self) -> Vec<ExponentPair> {
        let mut v: Vec<ExponentPair> = exponent_candidates(self.cp, ExponentKind::NearlyFree)
            .into_iter()
            .filter(|e| e.d1 >= 1 && tjurina_target(self.d(), e.d1, ExponentKind::NearlyFree) == self.tau)
            .collect();
        v.sort_by_key(|e| (e.d2 - e.d1, e.d1));
        v
    }

    /// Multiplicity of the common point of two lines.
    fn meet(&self, h1: usize, h2: usize) -> usize {
        self.inc.heavy_points().iter().find(|p| p.contains(&h1) && p.contains(&h2)).map_or(2, Vec::len)
    }

    fn six_point_pair(&self) -> Option<(usize, usize, usize)> {
        let six: Vec<usize> = (0..self.inc.d()).filter(|&h| self.n_h(h) == 6).collect();
        six.iter()
            .enumerate()
            .flat_map(|(i, &a)| six[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| (a, b, self.meet(a, b)))
            .find(|&(_, _, m)| m >= 3)
    }

    fn holds(&self, fact: &Fact) -> Result<bool> {
        let d = self.inc.d();
        Ok(match fact {
            Fact::LineCount { d: n } => *n == d,
            Fact::CharPoly { b1, b2 } => self.cp == CharPoly { b1: *b1, b2: *b2 },
            Fact::Tjurina { tau } => *tau == self.tau,
            Fact::MaxMultiplicity { m } => *m == self.m,
            Fact::FreeShape { d1, d2 } => self.free_shape().map(|e| (e.d1, e.d2)) == Some((*d1, *d2)),
            Fact::NoFreeShape => self.free_shape().is_none(),
            Fact::NearlyFreeShape { d1, d2 } => {
                self.nearly_free_shapes().iter().any(|e| (e.d1, e.d2) == (*d1, *d2))
            }
            Fact::NoNearlyFreeShape => self.nearly_free_shapes().is_empty(),
            Fact::AllPointsDouble => self.inc.heavy_points().is_empty(),
            Fact::LinePoints { line, points } => *line < d && self.n_h(*line) == *points,
            Fact::NoLineWithPoints { points } => self.line_where(|n| n == *points).is_none(),
            Fact::LinePointRange { min, max } => (0..d).all(|h| (*min..=*max).contains(&self.n_h(h))),
            Fact::MultiplicityInequality { d1, holds } => {
                (self.m as i64 * (d1 + 2) >= 2 * self.d()) == *holds
            }
            Fact::OnlyTriplePoints { line, points } => {
                *line < d && self.n_h(*line) == *points && self.profiles[*line].count(3) == *points
            }
            Fact::ZieglerExponents { line, e1, e2 } => {
                exponents_2multi(&ziegler(self.inc, *line)?)?.value == Some((*e1, *e2))
            }
            Fact::PointCount { k, count } => self.mv.get(*k) == *count,
            Fact::AllLinesTyped13 => d == 13 && self.profiles.iter().all(|p| classify_profile_13(p).is_some()),
            Fact::SixPointLinesMeet { h1, h2, multiplicity } => {
                *h1 < d && *h2 < d && h1 != h2
                    && self.n_h(*h1) == 6
                    && self.n_h(*h2) == 6
                    && self.meet(*h1, *h2) == *multiplicity
                    && *multiplicity >= 3
            }
            Fact::NoSixPointLinesOffDouble => self.six_point_pair().is_none(),
            Fact::DeletionDecomposition { line, a, b } => {
                let del = self.inc.delete_line(*line)?;
                decompose_chi(char_poly(&del.multiplicity_vector())).ok() == Some((*a, *b))
            }
            Fact::DeletionLinePoints { line, other, points } => {
                if other == line || *other >= d {
                    return Ok(false);
                }
                let del = self.inc.delete_line(*line)?;
                let shifted = if other > line { other - 1 } else { *other };
                del.line_profile(shifted)?.n_h() == *points
            }
            Fact::Deduction { first, second, third } => two_of_three(*first, *second).ok() == Some(*third),
            Fact::LinesInTable { system } => {
                let table = predefined_params(system)?.table;
                self.profiles.iter().all(|p| table.rows().iter().any(|(_, q)| q == p))
            }
            Fact::SystemEmpty { system } => enumerate_nonneg(&predefined(system)?)?.is_empty(),
            Fact::LemmaSystem { system } => {
                let params = predefined_params(system)?;
                let sys = predefined(system)?;
                let sols = enumerate_nonneg(&sys)?;
                let own = profile_vector(self.inc, &params.table, &sys, params.options.naming);
                own.is_some_and(|v| sols.solutions.contains(&v))
                    && lemma_properties()
                        .iter()
                        .filter(|p| p.system == system)
                        .all(|p| assert_property(&sols, p.check) == PropertyOutcome::Holds)
            }
            Fact::RealizationVerdict { kind, exponents } => match self.real {
                Some(arr) => {
                    let (_, v) = arrangement_verdict(arr)?;
                    v.kind == *kind && v.exponents.map(|e| (e.d1, e.d2)) == *exponents
                }
                None => false,
            },
        })
    }

    fn preamble(&self) -> RuleApplication {
        RuleApplication {
            rule: "lattice-data".into(),
            statement: "combinatorial invariants of the subject".into(),
            facts: vec![
                Fact::LineCount { d: self.inc.d() },
                Fact::CharPoly { b1: self.cp.b1, b2: self.cp.b2 },
                Fact::Tjurina { tau: self.tau },
                Fact::MaxMultiplicity { m: self.m },
            ],
        }
    }
}

fn rule(id: &str, statement: &str, facts: Vec<Fact>) -> RuleApplication {
    RuleApplication { rule: id.into(), statement: statement.into(), facts }
}

fn record(exponents: Option<ExponentPair>, branch: Branch, claim: Claim, rule_chain: Vec<RuleApplication>) -> BranchRecord {
    BranchRecord { exponents, branch, claim, rule_chain }
}

fn shape_rule(e: ExponentPair) -> RuleApplication {
    match e.kind {
        ExponentKind::Free => rule(
            "free-shape",
            "a free member would have exponents read off chi, with tau = (d-1)^2 - d1 d2",
            vec![Fact::FreeShape { d1: e.d1, d2: e.d2 }],
        ),
        ExponentKind::NearlyFree => rule(
            "nearly-free-shape",
            "a nearly free member with these exponents has chi = (t-d1)(t-d2+1)+1 and tau = (d-1)^2 - d1(d-d1-1) - 1",
            vec![Fact::NearlyFreeShape { d1: e.d1, d2: e.d2 }],
        ),
    }
}

fn high_multiplicity(e: ExponentPair, m: usize, property: &str) -> BranchRecord {
    record(
        Some(e),
        Branch::HighMultiplicity,
        Claim::Combinatorial,
        vec![
            shape_rule(e),
            rule(
                "multiplicity-at-least-d1",
                &format!("m(A) >= d1 makes being {property} a lattice property"),
                vec![Fact::MaxMultiplicity { m }],
            ),
        ],
    )
}

fn low_multiplicity(e: ExponentPair) -> BranchRecord {
    record(
        Some(e),
        Branch::LowMultiplicity,
        Claim::NoMember,
        vec![
            shape_rule(e),
            rule(
                "multiplicity-lower-bound",
                "a free or nearly free arrangement has m(A) >= 2d / (d1 + 2)",
                vec![Fact::MultiplicityInequality { d1: e.d1, holds: false }],
            ),
        ],
    )
}

/// Checks a certificate against an algebraic verdict on the realization.
fn cross_check(cert: &mut Certificate, ctx: &Ctx<'_>, target: VerdictKind) -> Result<()> {
    let Some(arr) = ctx.real else { return Ok(()) };
    let (_, v) = arrangement_verdict(arr)?;
    let exps = v.exponents.map(|e| (e.d1, e.d2));
    if v.kind == target {
        let rec = cert
            .branches
            .iter()
            .find(|b| b.exponents.is_none() || b.exponents.map(|e| (e.d1, e.d2)) == exps)
            .ok_or_else(|| Error::InternalInconsistency(format!("verdict exponents {exps:?} match no branch")))?;
        if rec.claim == Claim::NoMember {
            return Err(Error::InternalInconsistency(format!(
                "branch {:?} excludes {} members, but the realization is one",
                rec.branch,
                cert.procedure.property()
            )));
        }
    }
    cert.preamble.push(rule(
        "realization",
        "algebraic verdict computed on the supplied coordinates",
        vec![Fact::RealizationVerdict { kind: v.kind, exponents: exps }],
    ));
    Ok(())
}

fn certificate(procedure: Procedure, ctx: &Ctx<'_>, branches: Vec<BranchRecord>) -> Certificate {
    Certificate { procedure, subject: ctx.inc.digest(), d: ctx.inc.d(), preamble: vec![ctx.preamble()], branches }
}

/// Whether freeness of a 13-line lattice is combinatorial, following the
/// reduction to maximal multiplicity 4 or 5 with all lines carrying at most 6
/// points, and the pair of 6-point lines found there.
pub fn certify_terao_13(inc: &IncidenceStructure, realization: Option<&Arrangement>) -> Result<Certificate> {
    if inc.d() != 13 {
        return Err(Error::NotThirteen(inc.d()));
    }
    let ctx = Ctx::new(inc, realization);
    let branch = terao13_branch(&ctx)?;
    let mut cert = certificate(Procedure::Terao13, &ctx, vec![branch]);
    cross_check(&mut cert, &ctx, VerdictKind::Free)?;
    Ok(cert)
}

fn terao13_branch(ctx: &Ctx<'_>) -> Result<BranchRecord> {
    let Some(e) = ctx.free_shape() else {
        return Ok(record(
            None,
            Branch::NoExponentShape,
            Claim::NoMember,
            vec![rule(
                "free-shape",
                "a free arrangement has chi = (t-d1)(t-d2) with tau = (d-1)^2 - d1 d2",
                vec![Fact::NoFreeShape],
            )],
        ));
    };
    let m = ctx.m;
    if m as i64 >= e.d1 {
        return Ok(high_multiplicity(e, m, "free"));
    }
    if e.d1 <= 5 {
        return Ok(record(
            Some(e),
            Branch::ExponentBound,
            Claim::Combinatorial,
            vec![shape_rule(e), rule("small-exponent", "freeness with d1 <= 5 is a lattice property on 13 lines", vec![])],
        ));
    }
    if m as i64 * (e.d1 + 2) < 2 * ctx.d() {
        return Ok(low_multiplicity(e));
    }
    if let Some(h) = ctx.line_where(|n| n >= 7) {
        return Ok(record(
            Some(e),
            Branch::LongLine,
            Claim::Combinatorial,
            vec![
                shape_rule(e),
                rule(
                    "long-line",
                    "a line with at least 7 points makes freeness a lattice property",
                    vec![Fact::LinePoints { line: h, points: ctx.n_h(h) }],
                ),
            ],
        ));
    }
    let mut chain = vec![
        shape_rule(e),
        rule(
            "reduced-case",
            "d1 = 6, m(A) in {4, 5}, every line carries at most 6 points",
            vec![Fact::MaxMultiplicity { m }, Fact::LinePointRange { min: 1, max: 6 }],
        ),
    ];
    if m == 5 {
        if let Some(h) = ctx.line_where(|n| n <= 4) {
            chain.push(rule(
                "short-line-square-chi",
                "chi is a perfect square and a line has at most 4 points: every member is free or nearly free; \
                 a nearly free member would have exponents (5,8) and m = 5 >= 5, which forces near freeness on all",
                vec![Fact::LinePoints { line: h, points: ctx.n_h(h) }],
            ));
            return Ok(record(Some(e), Branch::ShortLine, Claim::Combinatorial, chain));
        }
    }
    if let Some(h) = (0..ctx.inc.d()).find(|&h| ctx.profiles[h] == LineProfile::from_pairs(&[(3, 6)])) {
        chain.push(rule(
            "triple-point-line",
            "the restriction to a line with only triple points has closed-form exponents, so freeness is a lattice property",
            vec![Fact::OnlyTriplePoints { line: h, points: 6 }, Fact::ZieglerExponents { line: h, e1: 6, e2: 6 }],
        ));
        return Ok(record(Some(e), Branch::TripleLine, Claim::Combinatorial, chain));
    }
    let n5 = ctx.mv.get(5);
    let typed = ctx.profiles.iter().all(|p| classify_profile_13(p).is_some());
    if !typed || n5 > 3 {
        return Err(Error::BranchHypothesisUnverifiable(format!(
            "reduced case with n5 = {n5} and all lines typed = {typed}"
        )));
    }
    let system = format!("lemma33_n5_{n5}");
    chain.push(rule(
        "line-type-system",
        "every line has a listed type; the counts solve the system and its conclusions hold on all solutions",
        vec![Fact::AllLinesTyped13, Fact::PointCount { k: 5, count: n5 }, Fact::LemmaSystem { system }],
    ));
    match ctx.six_point_pair() {
        Some((h1, h2, mult)) => {
            let a = DrFact::AFree { d1: 6, d2: 6 };
            let r = DrFact::RestrictionCount { count: 6 };
            let b = DrFact::BNearlyFree { d1: 6, d2: 6 };
            chain.push(rule(
                "six-point-pair",
                "two 6-point lines meeting in a point of multiplicity at least 3",
                vec![Fact::SixPointLinesMeet { h1, h2, multiplicity: mult }],
            ));
            chain.push(rule(
                "deletion-restriction",
                "a free member with |A^H| = d1 loses H to a nearly free arrangement with the same exponents",
                vec![Fact::LinePoints { line: h1, points: 6 }, Fact::Deduction { first: a, second: r, third: b }],
            ));
            chain.push(rule(
                "nearly-free-sufficiency",
                "in any member, the deletion has chi = (t-5)(t-6)+1 and a line with a+1 = 6 points, b != a+2, so it is nearly free",
                vec![
                    Fact::DeletionDecomposition { line: h1, a: 5, b: 6 },
                    Fact::DeletionLinePoints { line: h1, other: h2, points: 6 },
                ],
            ));
            chain.push(rule(
                "nearly-free-exponents",
                "nearly free curves of equal degree and Tjurina number share exponents, so the deletion has (6,6)",
                vec![],
            ));
            chain.push(rule(
                "deletion-restriction",
                "a nearly free deletion with exponents (6,6) and |A^H| = 6 makes A free",
                vec![Fact::Deduction { first: b, second: r, third: a }],
            ));
            Ok(record(Some(e), Branch::LinePair, Claim::Combinatorial, chain))
        }
        None => {
            chain.push(rule(
                "no-six-point-pair",
                "a free member has two 6-point lines meeting off a double point; this lattice has none",
                vec![Fact::NoSixPointLinesOffDouble],
            ));
            Ok(record(Some(e), Branch::NoLinePair, Claim::NoMember, chain))
        }
    }
}

/// Whether near freeness of a lattice with at most 12 lines is combinatorial.
/// Each nearly free reading of `chi` gets its own branch.
pub fn certify_nearly_free_le12(inc: &IncidenceStructure, realization: Option<&Arrangement>) -> Result<Certificate> {
    if inc.d() > 12 {
        return Err(Error::TooManyLines(inc.d()));
    }
    let ctx = Ctx::new(inc, realization);
    let d = inc.d();
    let branches = if inc.heavy_points().is_empty() && d >= 4 {
        let claim = if d == 4 { Claim::Combinatorial } else { Claim::NoMember };
        let statement = if d == 4 {
            "four generic lines are nearly free, whatever the coordinates"
        } else {
            "generic arrangements of at least 5 lines are never nearly free"
        };
        vec![record(None, Branch::Generic, claim, vec![rule("generic", statement, vec![Fact::AllPointsDouble])])]
    } else {
        let shapes = ctx.nearly_free_shapes();
        if shapes.is_empty() {
            vec![record(
                None,
                Branch::NoExponentShape,
                Claim::NoMember,
                vec![rule(
                    "nearly-free-shape",
                    "a nearly free arrangement has chi = (t-d1)(t-d2+1)+1 with tau = (d-1)^2 - d1(d-d1-1) - 1",
                    vec![Fact::NoNearlyFreeShape],
                )],
            )]
        } else {
            shapes.into_iter().map(|e| nfree_branch(&ctx, e)).collect::<Result<Vec<_>>>()?
        }
    };
    let mut cert = certificate(Procedure::NearlyFree12, &ctx, branches);
    cross_check(&mut cert, &ctx, VerdictKind::NearlyFree)?;
    Ok(cert)
}

fn nfree_branch(ctx: &Ctx<'_>, e: ExponentPair) -> Result<BranchRecord> {
    let (d1, d2) = (e.d1, e.d2);
    let d = ctx.inc.d();
    let m = ctx.m;
    let line_with = |n: i64| ctx.line_where(|c| c as i64 == n);
    let points = |h: usize| Fact::LinePoints { line: h, points: ctx.n_h(h) };
    let done = |branch, claim, mut extra: Vec<RuleApplication>| {
        let mut chain = vec![shape_rule(e)];
        chain.append(&mut extra);
        Ok(record(Some(e), branch, claim, chain))
    };
    if m as i64 >= d1 {
        return Ok(high_multiplicity(e, m, "nearly free"));
    }
    if d <= 7 {
        let statement = "with at most 7 lines every nearly free arrangement is a free one plus a line meeting it in d2+1 points";
        return match line_with(d2 + 1) {
            Some(h) => done(
                Branch::SmallArrangement,
                Claim::Combinatorial,
                vec![rule("small-addition", statement, vec![points(h)])],
            ),
            None => done(
                Branch::SmallArrangement,
                Claim::NoMember,
                vec![rule("small-addition", statement, vec![Fact::NoLineWithPoints { points: (d2 + 1) as usize }])],
            ),
        };
    }
    if m as i64 * (d1 + 2) < 2 * d as i64 {
        return Ok(low_multiplicity(e));
    }
    if let Some(h) = ctx.line_where(|n| n <= 4) {
        return done(
            Branch::ShortLine,
            Claim::Combinatorial,
            vec![rule("short-line", "a line with at most 4 points makes near freeness a lattice property here", vec![points(h)])],
        );
    }
    if let Some(h) = ctx.line_where(|n| n as i64 > d2 + 1) {
        return done(
            Branch::UpperBoundExceeded,
            Claim::NoMember,
            vec![rule("points-upper-bound", "every line of a nearly free arrangement has at most d2+1 points", vec![points(h)])],
        );
    }
    if let Some(h) = line_with(d2 + 1) {
        return done(
            Branch::AdditionLine,
            Claim::Combinatorial,
            vec![rule(
                "addition-line",
                "a line with d2+1 points leaves a free deletion, and freeness is a lattice property below 14 lines",
                vec![points(h)],
            )],
        );
    }
    let remark = if d1 == d2 {
        line_with(d1).or_else(|| line_with(d1 + 1))
    } else if d2 == d1 + 3 {
        line_with(d2)
    } else {
        line_with(d1 + 1).or_else(|| line_with(d2))
    };
    if let Some(h) = remark {
        return done(
            Branch::RemarkLine,
            Claim::Combinatorial,
            vec![rule(
                "remark-line",
                "d1 = d2 with a line of d1 or d1+1 points; d1 < d2 != d1+3 with d1+1 or d2 points; or d2 = d1+3 with d2 points",
                vec![points(h)],
            )],
        );
    }
    if d as i64 == 2 * d1 + 1 && d2 == d1 + 1 {
        let triple = (0..d).find(|&h| ctx.n_h(h) as i64 == d1 && ctx.profiles[h].count(3) as i64 == d1);
        if let Some(h) = triple {
            return done(
                Branch::TripleLine,
                Claim::Combinatorial,
                vec![rule(
                    "triple-point-line",
                    "2d+1 lines with exponents (d, d+1) and a line of exactly d triple points",
                    vec![Fact::OnlyTriplePoints { line: h, points: d1 as usize }],
                )],
            );
        }
    }
    let system = match (d, d1, d2) {
        (11, 5, 6) => "sys11",
        (12, 5, 7) => "sys12_I",
        (12, 6, 6) => "sys12_II",
        _ => {
            return Err(Error::BranchHypothesisUnverifiable(format!(
                "{d} lines with exponents {e} reach no listed case"
            )))
        }
    };
    let in_table = ctx.holds(&Fact::LinesInTable { system: system.into() })?;
    if !in_table {
        return Err(Error::BranchHypothesisUnverifiable(format!("a line type outside the table of {system}")));
    }
    // The subject's counts would solve the system, so it cannot be empty.
    Err(Error::InternalInconsistency(format!("lattice solves {system}, which has no solutions")))
}

/// The branch certificates for the listed-type systems, which no lattice can
/// reach: near freeness with these exponents forces a line outside the table.
pub fn vacuous_system_certificate(system: &str) -> Result<RuleApplication> {
    let statement = "no nonnegative solution exists, so every nearly free arrangement with these exponents \
                     has a line of a type already handled";
    let rule = rule("system-infeasible", statement, vec![Fact::SystemEmpty { system: system.into() }]);
    let empty = enumerate_nonneg(&predefined(system)?)?.is_empty();
    if !empty {
        return Err(Error::InternalInconsistency(format!("{system} has solutions")));
    }
    Ok(rule)
}

/// Freeness for 14 lines, conditional on near freeness being combinatorial
/// for 13 lines.
pub fn reduce_terao_14(inc: &IncidenceStructure) -> Result<Certificate> {
    if inc.d() != 14 {
        return Err(Error::NotFourteen(inc.d()));
    }
    let ctx = Ctx::new(inc, None);
    let branch = reduce14_branch(&ctx)?;
    Ok(certificate(Procedure::Reduce14, &ctx, vec![branch]))
}

fn reduce14_branch(ctx: &Ctx<'_>) -> Result<BranchRecord> {
    let Some(e) = ctx.free_shape() else {
        return Ok(record(
            None,
            Branch::NoExponentShape,
            Claim::NoMember,
            vec![rule("free-shape", "a free arrangement has chi = (t-d1)(t-d2) with tau = (d-1)^2 - d1 d2", vec![Fact::NoFreeShape])],
        ));
    };
    let m = ctx.m;
    if m as i64 >= e.d1 {
        return Ok(high_multiplicity(e, m, "free"));
    }
    if e.d1 <= 5 {
        return Ok(record(
            Some(e),
            Branch::ExponentBound,
            Claim::Combinatorial,
            vec![shape_rule(e), rule("small-exponent", "freeness with d1 <= 5 is a lattice property on 14 lines", vec![])],
        ));
    }
    if m as i64 * (e.d1 + 2) < 2 * ctx.d() {
        return Ok(low_multiplicity(e));
    }
    let points = |h: usize| Fact::LinePoints { line: h, points: ctx.n_h(h) };
    if let Some(h) = ctx.line_where(|n| n <= 4) {
        return Ok(record(
            Some(e),
            Branch::ShortLine,
            Claim::Combinatorial,
            vec![
                shape_rule(e),
                rule("short-line", "chi is not a perfect square and a line has at most 4 points", vec![points(h)]),
            ],
        ));
    }
    if let Some(h) = ctx.line_where(|n| n >= 7) {
        return Ok(record(
            Some(e),
            Branch::LongLine,
            Claim::Combinatorial,
            vec![shape_rule(e), rule("long-line", "a line with at least 7 points makes freeness a lattice property", vec![points(h)])],
        ));
    }
    let Some(h) = ctx.line_where(|n| n == 6) else {
        return Err(Error::InternalInconsistency("lattice without a 6-point line solves sys14".into()));
    };
    let a = DrFact::AFree { d1: 6, d2: 7 };
    let r = DrFact::RestrictionCount { count: 6 };
    let b = DrFact::BNearlyFree { d1: 6, d2: 7 };
    let chain = vec![
        shape_rule(e),
        rule(
            "reduced-case",
            "exponents (6,7), m(A) in {4, 5}, every line carries 5 or 6 points",
            vec![Fact::MaxMultiplicity { m }, Fact::LinePointRange { min: 5, max: 6 }],
        ),
        rule(
            "six-point-line",
            "the system for lines of 5 points only has no solution, so a 6-point line exists",
            vec![Fact::SystemEmpty { system: "sys14".into() }, points(h)],
        ),
        rule(
            "deletion-restriction",
            "a free member with |A^H| = 6 loses H to a nearly free 13-line arrangement with exponents (6,7)",
            vec![Fact::Deduction { first: a, second: r, third: b }],
        ),
        rule(
            "deletion-restriction",
            "if near freeness is a lattice property at 13 lines, the deletion in any member is nearly free (6,7), so the member is free",
            vec![Fact::Deduction { first: b, second: r, third: a }],
        ),
    ];
    Ok(record(
        Some(e),
        Branch::SixPointLine,
        Claim::Conditional("near freeness is combinatorial for 13 lines".into()),
        chain,
    ))
}

/// Runs the procedure that fits the number of lines, if any.
pub fn applicable_certificate(inc: &IncidenceStructure, realization: Option<&Arrangement>) -> Option<Result<Certificate>> {
    match inc.d() {
        13 => Some(certify_terao_13(inc, realization)),
        14 => Some(reduce_terao_14(inc)),
        d if d <= 12 => Some(certify_nearly_free_le12(inc, realization)),
        _ => None,
    }
}

/// The full report on an input: combinatorial data always, algebraic data
/// when coordinates are present.
pub fn analyze(input: &Input) -> Result<serde_json::Value> {
    let inc = input.incidence();
    let mv = inc.multiplicity_vector();
    let cp = char_poly(&mv);
    let lines: Vec<serde_json::Value> = inc
        .line_profiles()
        .iter()
        .enumerate()
        .map(|(h, p)| {
            let ziegler_exps = ziegler(&inc, h)
                .ok()
                .and_then(|z| exponents_2multi(&z).ok())
                .and_then(|r| r.value)
                .map(|(a, b)| json!([a, b]));
            json!({
                "index": h,
                "points": p.n_h(),
                "profile": p.counts.iter().map(|(k, c)| (k.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
                "type13": if inc.d() == 13 { classify_profile_13(p).map(|t| t.tag()) } else { None },
                "ziegler_exponents": ziegler_exps,
            })
        })
        .collect();
    let algebraic = match input.realization() {
        Some(arr) => {
            let (report, verdict) = arrangement_verdict(arr)?;
            json!({
                "mdr": report.mdr,
                "ar_dims": report.ar_dims,
                "tau_alg": report.tau_alg,
                "nf_dims": report.nf_dims,
                "verdict": verdict.kind,
                "exponents": verdict.exponents.map(|e| json!([e.d1, e.d2])),
            })
        }
        None => json!("requires realization"),
    };
    let certificate = match applicable_certificate(&inc, input.realization()) {
        Some(Ok(c)) => json!({
            "procedure": c.procedure,
            "branches": c.branches.iter().map(|b| json!({
                "branch": b.branch,
                "exponents": b.exponents.map(|e| json!([e.d1, e.d2])),
                "claim": c.claim_text(b),
            })).collect::<Vec<_>>(),
        }),
        Some(Err(Error::InternalInconsistency(msg))) => return Err(Error::InternalInconsistency(msg)),
        Some(Err(e)) => json!({ "error": e.to_string() }),
        None => serde_json::Value::Null,
    };
    Ok(json!({
        "schema": REPORT_SCHEMA,
        "d": inc.d(),
        "digest": inc.digest(),
        "n_k": mv.n.iter().map(|(k, c)| (k.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "lines": lines,
        "chi": cp.to_string(),
        "tau_comb": tjurina_combinatorial(&mv),
        "hirzebruch": hirzebruch_check(&mv),
        "algebraic": algebraic,
        "certificate": certificate,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn grid_takes_the_multiplicity_branch() {
        let arr = corpus::grid13();
        let inc = arr.incidence();
        let c = certify_terao_13(&inc, Some(&arr)).unwrap();
        assert_eq!(c.branches.len(), 1);
        assert_eq!((c.branches[0].branch, &c.branches[0].claim), (Branch::HighMultiplicity, &Claim::Combinatorial));
        c.replay(&inc, Some(&arr)).unwrap();
        assert!(c.replay(&corpus::pencil(13).incidence(), None).is_err());
    }

    #[test]
    fn pencil_lattices() {
        for inc in [corpus::pencil(13).incidence(), corpus::near_pencil(13).incidence()] {
            let c = certify_terao_13(&inc, None).unwrap();
            assert_eq!(c.branches[0].branch, Branch::HighMultiplicity);
            c.replay(&inc, None).unwrap();
        }
        let c = reduce_terao_14(&corpus::pencil(14).incidence()).unwrap();
        assert_eq!((c.branches[0].branch, &c.branches[0].claim), (Branch::HighMultiplicity, &Claim::Combinatorial));
    }

    #[test]
    fn wrong_sizes() {
        assert!(matches!(certify_terao_13(&corpus::triangle().incidence(), None), Err(Error::NotThirteen(3))));
        assert!(matches!(reduce_terao_14(&corpus::triangle().incidence(), ), Err(Error::NotFourteen(3))));
        assert!(matches!(certify_nearly_free_le12(&corpus::grid13().incidence(), None), Err(Error::TooManyLines(13))));
    }

    #[test]
    fn unit13_is_not_in_the_reduced_case() {
        let arr = corpus::unit13();
        let inc = arr.incidence();
        let c = certify_terao_13(&inc, Some(&arr)).unwrap();
        assert_ne!(c.branches[0].claim, Claim::NoMember);
        c.replay(&inc, Some(&arr)).unwrap();
    }

    #[test]
    fn nearly_free_small() {
        let arr = corpus::a1(2);
        let inc = arr.incidence();
        let c = certify_nearly_free_le12(&inc, Some(&arr)).unwrap();
        assert_eq!(c.branches.len(), 1);
        assert_eq!(c.branches[0].branch, Branch::HighMultiplicity);
        assert_eq!(c.branches[0].exponents.map(|e| (e.d1, e.d2)), Some((3, 4)));
        c.replay(&inc, Some(&arr)).unwrap();

        let g = corpus::generic(4).incidence();
        let c = certify_nearly_free_le12(&g, None).unwrap();
        assert_eq!((c.branches[0].branch, &c.branches[0].claim), (Branch::Generic, &Claim::Combinatorial));
        let g5 = corpus::generic(5).incidence();
        let c = certify_nearly_free_le12(&g5, Some(&corpus::generic(5))).unwrap();
        assert_eq!(c.branches[0].claim, Claim::NoMember);
        let t = corpus::triangle().incidence();
        assert_eq!(certify_nearly_free_le12(&t, None).unwrap().branches[0].branch, Branch::NoExponentShape);
    }

    #[test]
    fn nearly_free_corpus_is_consistent() {
        for (name, arr) in corpus::named() {
            let inc = arr.incidence();
            if inc.d() > 12 {
                continue;
            }
            let c = certify_nearly_free_le12(&inc, Some(&arr)).unwrap_or_else(|e| panic!("{name}: {e}"));
            c.replay(&inc, Some(&arr)).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn vacuous_systems() {
        for s in ["sys11", "sys12_I", "sys12_II"] {
            assert_eq!(vacuous_system_certificate(s).unwrap().facts, vec![Fact::SystemEmpty { system: s.into() }]);
        }
    }

    #[test]
    fn report_sections() {
        let r = analyze(&Input::Arrangement(corpus::grid13())).unwrap();
        assert_eq!(r["schema"], REPORT_SCHEMA);
        assert_eq!(r["chi"], "t^2 - 12t + 36");
        assert_eq!(r["tau_comb"], 108);
        assert_eq!(r["algebraic"]["verdict"], "Free");
        assert_eq!(r["algebraic"]["exponents"], json!([6, 6]));
        assert_eq!(r["certificate"]["branches"][0]["branch"], "HighMultiplicity");
        let r = analyze(&Input::Arrangement(corpus::a1(2))).unwrap();
        assert_eq!(r["algebraic"]["verdict"], "NearlyFree");
        assert_eq!((r["n_k"]["3"].clone(), r["n_k"]["2"].clone()), (json!(5), json!(6)));
        let r = analyze(&Input::Incidence(corpus::a2(2).incidence())).unwrap();
        assert_eq!(r["algebraic"], "requires realization");
        let again = analyze(&Input::Incidence(corpus::a2(2).incidence())).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }
}
