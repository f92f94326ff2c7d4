//! Integer linear systems built from line-type tables, and exhaustive
//! enumeration of their nonnegative solutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arrangement::{IncidenceStructure, LineProfile, LineType13};
use crate::error::{Error, Result};
use crate::invariants::{tjurina_target, ExponentKind, ExponentPair};
use crate::par;

/// Named line types, each with its profile `multiplicity -> count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineTypeTable {
    rows: Vec<(String, LineProfile)>,
}

impl LineTypeTable {
    pub fn new(rows: Vec<(String, LineProfile)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (tag, _) in &rows {
            if !seen.insert(tag.as_str()) {
                return Err(Error::InvalidIncidence(format!("duplicate line type `{tag}`")));
            }
        }
        Ok(Self { rows })
    }

    /// Rows from `(tag, [n5, n4, n3, n2])`.
    pub fn from_counts(rows: &[(&str, [usize; 4])]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|(t, [n5, n4, n3, n2])| {
                    (t.to_string(), LineProfile::from_pairs(&[(5, *n5), (4, *n4), (3, *n3), (2, *n2)]))
                })
                .collect(),
        )
    }

    pub fn from_types_13(types: &[LineType13]) -> Self {
        Self { rows: types.iter().map(|t| (t.tag().to_string(), t.profile())).collect() }
    }

    pub fn rows(&self) -> &[(String, LineProfile)] {
        &self.rows
    }

    pub fn max_multiplicity(&self) -> usize {
        self.rows.iter().map(|(_, p)| p.max_multiplicity()).max().unwrap_or(2)
    }

    fn validate(&self, d: usize) -> Result<()> {
        for (tag, p) in &self.rows {
            if p.degree_sum() + 1 != d {
                return Err(Error::InconsistentTable {
                    d,
                    reason: format!("type `{tag}` has sum (i-1) n_i = {}, expected {}", p.degree_sum(), d - 1),
                });
            }
        }
        Ok(())
    }
}

/// One row `sum coeffs[j] x_j = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Equation {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub var_names: Vec<String>,
    pub equations: Vec<Equation>,
    /// Inclusive upper bounds; `None` where none is given.
    pub bounds: Vec<Option<i64>>,
}

type CanonicalRow = (BTreeMap<String, i64>, i64);

impl LinearSystem {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    /// Rows keyed by variable name, sign-normalized and sorted, for
    /// comparing systems up to row order.
    pub fn canonical_rows(&self) -> BTreeSet<CanonicalRow> {
        self.equations
            .iter()
            .map(|e| {
                let mut m: BTreeMap<String, i64> = self
                    .var_names
                    .iter()
                    .zip(&e.coeffs)
                    .filter(|(_, &c)| c != 0)
                    .map(|(n, &c)| (n.clone(), c))
                    .collect();
                let mut rhs = e.rhs;
                if m.values().next().is_some_and(|&c| c < 0) {
                    m.values_mut().for_each(|c| *c = -*c);
                    rhs = -rhs;
                }
                (m, rhs)
            })
            .collect()
    }

    pub fn satisfies(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v >= 0)
            && x.iter().zip(&self.bounds).all(|(&v, b)| b.is_none_or(|b| v <= b))
            && self.equations.iter().all(|e| e.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<i64>() == e.rhs)
    }

    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            vars: self.var_names.clone(),
            eqs: self
                .equations
                .iter()
                .map(|e| EquationSpec {
                    coeffs: self
                        .var_names
                        .iter()
                        .zip(&e.coeffs)
                        .filter(|(_, &c)| c != 0)
                        .map(|(n, &c)| (n.clone(), c))
                        .collect(),
                    rhs: e.rhs,
                })
                .collect(),
            bounds: self
                .var_names
                .iter()
                .zip(&self.bounds)
                .filter_map(|(n, b)| b.map(|b| (n.clone(), b)))
                .collect(),
        }
    }

    /// Equations in the usual written form, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.equations {
            let mut first = true;
            for (n, &c) in self.var_names.iter().zip(&e.coeffs) {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else if first { "" } else { "+" };
                let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                let _ = write!(out, "{sign}{mag}{n}");
                first = false;
            }
            let _ = writeln!(out, "={}", e.rhs);
        }
        out
    }
}

/// The JSON form of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub vars: Vec<String>,
    pub eqs: Vec<EquationSpec>,
    #[serde(default)]
    pub bounds: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSpec {
    pub coeffs: BTreeMap<String, i64>,
    pub rhs: i64,
}

impl SystemSpec {
    pub fn into_system(self) -> Result<LinearSystem> {
        let index: BTreeMap<&str, usize> = self.vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != self.vars.len() {
            return Err(Error::parse(0, 0, "duplicate variable name"));
        }
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::parse(0, 0, format!("unknown variable `{name}`")));
        let mut equations = Vec::new();
        for e in &self.eqs {
            let mut coeffs = vec![0; self.vars.len()];
            for (name, &c) in &e.coeffs {
                coeffs[lookup(name)?] = c;
            }
            equations.push(Equation { coeffs, rhs: e.rhs });
        }
        let mut bounds = vec![None; self.vars.len()];
        for (name, &b) in &self.bounds {
            bounds[lookup(name)?] = Some(b);
        }
        Ok(LinearSystem { var_names: self.vars, equations, bounds })
    }
}

pub fn parse_system_json(text: &str) -> Result<LinearSystem> {
    let spec: SystemSpec =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    spec.into_system()
}

/// Parses a written equation such as `-2n_2+3e+d=0`. Names are a letter
/// followed by digits; underscores are ignored.
pub fn parse_equation(text: &str, vars: &[String]) -> Result<Equation> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
    let (lhs, rhs) = cleaned.split_once('=').ok_or_else(|| Error::parse(1, 1, "missing `=`"))?;
    let rhs: i64 = rhs.parse().map_err(|_| Error::parse(1, lhs.len() + 2, "right-hand side is not an integer"))?;
    let mut coeffs = vec![0; vars.len()];
    let chars: Vec<char> = lhs.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let col = pos + 1;
        let mut sign = 1;
        if chars[pos] == '+' || chars[pos] == '-' {
            sign = if chars[pos] == '-' { -1 } else { 1 };
            pos += 1;
        }
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef: i64 = if start == pos { 1 } else { chars[start..pos].iter().collect::<String>().parse().expect("digits") };
        if pos >= chars.len() || !chars[pos].is_ascii_alphabetic() {
            return Err(Error::parse(1, pos + 1, "expected a variable name"));
        }
        let name_start = pos;
        pos += 1;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let name: String = chars[name_start..pos].iter().collect();
        let idx = vars.iter().position(|v| *v == name).ok_or_else(|| Error::parse(1, col, format!("unknown variable `{name}`")))?;
        coeffs[idx] += sign * coef;
    }
    Ok(Equation { coeffs, rhs })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointNaming {
    /// `n2, n3, ...`
    #[default]
    Indexed,
    /// `a, b, c, o` for multiplicities 2 to 5.
    Letters,
}

impl PointNaming {
    fn name(self, k: usize) -> String {
        match (self, k) {
            (PointNaming::Letters, 2..=5) => ["a", "b", "c", "o"][k - 2].to_string(),
            _ => format!("n{k}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    pub naming: PointNaming,
    /// Point counts fixed in advance, e.g. `5 -> 1` for one quintuple point.
    pub fixed: BTreeMap<usize, i64>,
}

/// The system whose nonnegative solutions are the candidate combinatorics:
/// point counts `n_k` and line-type counts satisfying the Tjurina row, the
/// pair count, the incidence count for each multiplicity and the number of
/// lines.
pub fn build_system(d: usize, exps: ExponentPair, table: &LineTypeTable, opts: &BuildOptions) -> Result<LinearSystem> {
    let bad = |reason: String| Error::InconsistentTable { d, reason };
    table.validate(d)?;
    let want = match exps.kind {
        ExponentKind::Free => d as i64 - 1,
        ExponentKind::NearlyFree => d as i64,
    };
    if exps.d1 + exps.d2 != want || exps.d1 > exps.d2 || exps.d1 < 0 {
        return Err(bad(format!("exponents {exps} do not fit {d} lines")));
    }
    if let Some((&k, _)) = opts.fixed.iter().find(|(&k, &v)| k < 2 || v < 0) {
        return Err(bad(format!("invalid fixed count for multiplicity {k}")));
    }
    let kmax = table.max_multiplicity().max(opts.fixed.keys().copied().max().unwrap_or(2));
    let point_ks: Vec<usize> = (2..=kmax).filter(|k| !opts.fixed.contains_key(k)).collect();
    let mut var_names: Vec<String> = point_ks.iter().map(|&k| opts.naming.name(k)).collect();
    let ntypes = table.rows.len();
    var_names.extend(table.rows.iter().map(|(t, _)| t.clone()));
    let np = point_ks.len();
    let nv = var_names.len();
    let pairs = |k: i64| k * (k - 1) / 2;
    let di = d as i64;

    let mut equations = Vec::new();
    let fixed_sum = |w: &dyn Fn(i64) -> i64| opts.fixed.iter().map(|(&k, &v)| w(k as i64) * v).sum::<i64>();
    let sq = |k: i64| (k - 1) * (k - 1);
    let mut row = vec![0; nv];
    for (j, &k) in point_ks.iter().enumerate() {
        row[j] = sq(k as i64);
    }
    equations.push(Equation { coeffs: row, rhs: tjurina_target(di, exps.d1, exps.kind) - fixed_sum(&sq) });
    let mut row = vec![0; nv];
    for (j, &k) in point_ks.iter().enumerate() {
        row[j] = pairs(k as i64);
    }
    equations.push(Equation { coeffs: row, rhs: pairs(di) - fixed_sum(&pairs) });
    let incidence_row = |k: usize| -> Vec<i64> {
        let mut row = vec![0; nv];
        for (t, (_, p)) in table.rows.iter().enumerate() {
            row[np + t] = p.count(k) as i64;
        }
        row
    };
    for (j, &k) in point_ks.iter().enumerate() {
        let mut row = incidence_row(k);
        row[j] = -(k as i64);
        equations.push(Equation { coeffs: row, rhs: 0 });
    }
    let mut row = vec![0; nv];
    row[np..].iter_mut().for_each(|c| *c = 1);
    equations.push(Equation { coeffs: row, rhs: di });
    for (&k, &v) in &opts.fixed {
        let row = incidence_row(k);
        if row.iter().any(|&c| c != 0) || v != 0 {
            equations.push(Equation { coeffs: row, rhs: k as i64 * v });
        }
    }
    let mut bounds: Vec<Option<i64>> = point_ks.iter().map(|&k| Some(pairs(di) / pairs(k as i64))).collect();
    bounds.extend(std::iter::repeat_n(Some(di), ntypes));
    Ok(LinearSystem { var_names, equations, bounds })
}

/// All nonnegative integer solutions of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub var_names: Vec<String>,
    pub solutions: Vec<Vec<i64>>,
    /// The enumeration was exhaustive.
    pub complete: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment<'_>> {
        self.solutions.iter().map(|s| Assignment { names: &self.var_names, values: s })
    }

    /// Solutions as a JSON array of objects keyed by variable name.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.solutions
                .iter()
                .map(|s| {
                    let obj = self.var_names.iter().zip(s).map(|(n, v)| (n.clone(), serde_json::Value::from(*v))).collect();
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }

    /// Aligned text table, one solution per row.
    pub fn to_table(&self) -> String {
        let widths: Vec<usize> = self
            .var_names
            .iter()
            .enumerate()
            .map(|(j, n)| self.solutions.iter().map(|s| s[j].to_string().len()).max().unwrap_or(0).max(n.len()))
            .collect();
        let mut out = String::new();
        let line = |cells: Vec<String>| -> String {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")
        };
        out.push_str(&line(self.var_names.clone()));
        out.push('\n');
        for s in &self.solutions {
            out.push_str(&line(s.iter().map(i64::to_string).collect()));
            out.push('\n');
        }
        out
    }
}

/// A solution seen through its variable names.
#[derive(Clone, Copy, Debug)]
pub struct Assignment<'a> {
    names: &'a [String],
    values: &'a [i64],
}

impl Assignment<'_> {
    /// Value of a variable; names absent from the system read as zero.
    pub fn get(&self, name: &str) -> i64 {
        self.names.iter().position(|n| n == name).map_or(0, |i| self.values[i])
    }

    pub fn sum(&self, names: &[&str]) -> i64 {
        names.iter().map(|n| self.get(n)).sum()
    }

    pub fn values(&self) -> &[i64] {
        self.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PropertyOutcome {
    Holds,
    Counterexample(Vec<i64>),
}

/// Checks a predicate on every solution.
pub fn assert_property(sols: &SolutionSet, pred: impl Fn(&Assignment<'_>) -> bool) -> PropertyOutcome {
    sols.assignments()
        .find(|a| !pred(a))
        .map_or(PropertyOutcome::Holds, |a| PropertyOutcome::Counterexample(a.values.to_vec()))
}

#[derive(Clone, Debug)]
struct Domain {
    lo: Vec<i64>,
    hi: Vec<Option<i64>>,
}

/// Tightens the box `lo <= x <= hi` against every equation until nothing
/// changes. Returns false when the box becomes empty.
fn propagate(eqs: &[Equation], dom: &mut Domain) -> bool {
    loop {
        let mut changed = false;
        for e in eqs {
            // Bounds of sum c_j x_j over all j; None is infinite.
            let mut min_all: Option<i64> = Some(0);
            let mut max_all: Option<i64> = Some(0);
            for (j, &c) in e.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (at_lo, at_hi) = (Some(c * dom.lo[j]), dom.hi[j].map(|h| c * h));
                let (mn, mx) = if c > 0 { (at_lo, at_hi) } else { (at_hi, at_lo) };
                min_all = min_all.zip(mn).map(|(a, b)| a + b);
                max_all = max_all.zip(mx).map(|(a, b)| a + b);
            }
            if min_all.is_some_and(|m| m > e.rhs) || max_all.is_some_and(|m| m < e.rhs) {
                return false;
            }
            for (j, &c) in e.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (at_lo, at_hi) = (Some(c * dom.lo[j]), dom.hi[j].map(|h| c * h));
                let (mn, mx) = if c > 0 { (at_lo, at_hi) } else { (at_hi, at_lo) };
                // Rest bounds: remove this variable's contribution.
                let rest_min = min_all.and_then(|m| mn.map(|v| m - v)).or_else(|| {
                    if mn.is_none() {
                        rest_bound(e, dom, j, true)
                    } else {
                        None
                    }
                });
                let rest_max = max_all.and_then(|m| mx.map(|v| m - v)).or_else(|| {
                    if mx.is_none() {
                        rest_bound(e, dom, j, false)
                    } else {
                        None
                    }
                });
                // c x_j lies in [rhs - rest_max, rhs - rest_min].
                let (new_lo, new_hi) = if c > 0 {
                    (rest_max.map(|r| Integer::div_ceil(&(e.rhs - r), &c)), rest_min.map(|r| Integer::div_floor(&(e.rhs - r), &c)))
                } else {
                    (rest_min.map(|r| Integer::div_ceil(&(e.rhs - r), &c)), rest_max.map(|r| Integer::div_floor(&(e.rhs - r), &c)))
                };
                if let Some(l) = new_lo {
                    if l > dom.lo[j] {
                        dom.lo[j] = l;
                        changed = true;
                    }
                }
                if let Some(h) = new_hi {
                    if dom.hi[j].is_none_or(|old| h < old) {
                        dom.hi[j] = Some(h);
                        changed = true;
                    }
                }
                if dom.hi[j].is_some_and(|h| h < dom.lo[j]) {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Minimum (or maximum) of `sum_{k != j} c_k x_k`, when finite.
fn rest_bound(e: &Equation, dom: &Domain, j: usize, min: bool) -> Option<i64> {
    let mut total = 0;
    for (k, &c) in e.coeffs.iter().enumerate() {
        if k == j || c == 0 {
            continue;
        }
        let v = if (c > 0) == min { Some(c * dom.lo[k]) } else { dom.hi[k].map(|h| c * h) };
        total += v?;
    }
    Some(total)
}

fn search(eqs: &[Equation], mut dom: Domain, out: &mut Vec<Vec<i64>>) {
    if !propagate(eqs, &mut dom) {
        return;
    }
    let Some(j) = (0..dom.lo.len()).find(|&j| dom.hi[j] != Some(dom.lo[j])) else {
        out.push(dom.lo);
        return;
    };
    let hi = dom.hi[j].expect("bounded after the initial pass");
    for v in dom.lo[j]..=hi {
        let mut next = dom.clone();
        next.lo[j] = v;
        next.hi[j] = Some(v);
        search(eqs, next, out);
    }
}

/// Every nonnegative integer solution within the bounds, in lexicographic
/// order. Depth-first search with interval propagation; the range of the
/// first free variable is split across threads.
pub fn enumerate_nonneg(sys: &LinearSystem) -> Result<SolutionSet> {
    let n = sys.var_names.len();
    let mut dom = Domain { lo: vec![0; n], hi: sys.bounds.clone() };
    let empty = |complete| SolutionSet { var_names: sys.var_names.clone(), solutions: Vec::new(), complete };
    if !propagate(&sys.equations, &mut dom) {
        return Ok(empty(true));
    }
    if let Some(j) = (0..n).find(|&j| dom.hi[j].is_none()) {
        return Err(Error::Unbounded(sys.var_names[j].clone()));
    }
    let mut solutions: Vec<Vec<i64>> = match (0..n).find(|&j| dom.hi[j] != Some(dom.lo[j])) {
        None => vec![dom.lo],
        Some(j) => {
            let values: Vec<i64> = (dom.lo[j]..=dom.hi[j].expect("bounded")).collect();
            par::map_collect(values, |v| {
                let mut d = dom.clone();
                d.lo[j] = v;
                d.hi[j] = Some(v);
                let mut out = Vec::new();
                search(&sys.equations, d, &mut out);
                out
            })
            .into_iter()
            .flatten()
            .collect()
        }
    };
    solutions.sort();
    debug_assert!(solutions.iter().all(|s| sys.satisfies(s)));
    Ok(SolutionSet { var_names: sys.var_names.clone(), solutions, complete: true })
}

pub const PREDEFINED: [&str; 8] =
    ["lemma33_n5_0", "lemma33_n5_1", "lemma33_n5_2", "lemma33_n5_3", "sys11", "sys12_I", "sys12_II", "sys14"];

/// Build parameters reproducing a named system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemParams {
    pub d: usize,
    pub exponents: ExponentPair,
    pub table: LineTypeTable,
    pub options: BuildOptions,
}

fn lemma_types(n5: i64) -> Vec<LineType13> {
    use LineType13::*;
    match n5 {
        0 => vec![A0, A, B, C, D, E],
        1 => vec![A, B, C, D, E, F, G, H, I, J],
        _ => vec![A, B, C, D, E, F, G, H, I, J, K, L],
    }
}

pub fn predefined_params(name: &str) -> Result<SystemParams> {
    let free = |d1, d2| ExponentPair { d1, d2, kind: ExponentKind::Free };
    let nfree = |d1, d2| ExponentPair { d1, d2, kind: ExponentKind::NearlyFree };
    let letters = BuildOptions { naming: PointNaming::Letters, fixed: BTreeMap::new() };
    Ok(match name {
        "lemma33_n5_0" | "lemma33_n5_1" | "lemma33_n5_2" | "lemma33_n5_3" => {
            let n5: i64 = name[name.len() - 1..].parse().expect("digit");
            SystemParams {
                d: 13,
                exponents: free(6, 6),
                table: LineTypeTable::from_types_13(&lemma_types(n5)),
                options: BuildOptions { naming: PointNaming::Indexed, fixed: BTreeMap::from([(5, n5)]) },
            }
        }
        "sys11" => SystemParams {
            d: 11,
            exponents: nfree(5, 6),
            table: LineTypeTable::from_counts(&[("d", [0, 2, 1, 2]), ("e", [0, 1, 3, 1])])?,
            options: letters,
        },
        "sys12_I" => SystemParams {
            d: 12,
            exponents: nfree(5, 7),
            table: LineTypeTable::from_counts(&[("d", [0, 3, 0, 2]), ("e", [0, 2, 2, 1]), ("f", [0, 1, 4, 0])])?,
            options: letters,
        },
        "sys12_II" => SystemParams {
            d: 12,
            exponents: nfree(6, 6),
            table: LineTypeTable::from_counts(&[
                ("d", [2, 0, 0, 3]),
                ("e", [1, 1, 1, 2]),
                ("f", [1, 0, 3, 1]),
                ("g", [0, 3, 0, 2]),
                ("h", [0, 2, 2, 1]),
                ("i", [0, 1, 4, 0]),
            ])?,
            options: letters,
        },
        "sys14" => SystemParams {
            d: 14,
            exponents: free(6, 7),
            table: LineTypeTable::from_counts(&[
                ("d", [2, 0, 2, 1]),
                ("e", [2, 1, 0, 2]),
                ("f", [1, 2, 1, 1]),
                ("g", [1, 1, 3, 0]),
                ("h", [0, 4, 0, 1]),
                ("i", [0, 3, 2, 0]),
            ])?,
            options: letters,
        },
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// The quintuple row of the 14-line system as printed, with `c` where the
/// quintuple count `o` belongs.
pub const SYS14_PRINTED_QUINTUPLE_ROW: &str = "-5c+2d+2e+f+g=0";

fn transcription(name: &str, strict: bool) -> Result<(Vec<&'static str>, Vec<&'static str>)> {
    const L0: [&str; 9] = ["n2", "n3", "n4", "a0", "a", "b", "c", "d", "e"];
    const L1: [&str; 13] = ["n2", "n3", "n4", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    const L2: [&str; 15] = ["n2", "n3", "n4", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];
    let lemma_tail = [
        "-2n_2+3e+d+2c+a+2f+3h+2j+4k+2l+i=0",
        "-3n_3+d+3b+2c+4a+3f+4g+h+l+2i=0",
        "-4n_4+a+2c+2b+3d+3e+h+2j+i=0",
        "a+b+c+d+e+f+g+h+i+j+k+l=13",
    ];
    Ok(match name {
        "lemma33_n5_0" => (
            L0.to_vec(),
            vec![
                "n_2+4n_3+9n_4=108",
                "n_2+3n_3+6n_4=78",
                "-2n_2+3e+d+2c+a=0",
                "-3n_3+d+3b+2c+4a=0",
                "-4n_4+4a_0+a+2c+2b+3d+3e=0",
                "a_0+a+b+c+d+e=13",
            ],
        ),
        "lemma33_n5_1" => (
            L1.to_vec(),
            vec![
                "n_2+4n_3+9n_4=92",
                "n_2+3n_3+6n_4=68",
                "-2n_2+3e+d+2c+a+2f+3h+2j+i=0",
                "-3n_3+d+3b+2c+4a+3f+4g+h+2i=0",
                "-4n_4+a+2c+2b+3d+3e+h+2j+i=0",
                "a+b+c+d+e+f+g+h+i+j=13",
                "f+g+h+i+j=5",
            ],
        ),
        "lemma33_n5_2" => {
            let mut rows = vec!["n_2+4n_3+9n_4=76", "n_2+3n_3+6n_4=58"];
            rows.extend(lemma_tail);
            rows.push("f+g+h+i+j+2k+2l=10");
            (L2.to_vec(), rows)
        }
        "lemma33_n5_3" => {
            let mut rows = vec!["n_2+4n_3+9n_4=60", "n_2+3n_3+6n_4=48"];
            rows.extend(lemma_tail);
            rows.push("f+g+h+i+j+2k+2l=15");
            (L2.to_vec(), rows)
        }
        "sys11" => (
            vec!["a", "b", "c", "d", "e"],
            vec!["a+4b+9c=74", "a+3b+6c=55", "-2a+2d+e=0", "-3b+d+3e=0", "-4c+2d+e=0", "d+e=11"],
        ),
        "sys12_I" => (
            vec!["a", "b", "c", "d", "e", "f"],
            vec!["a+4b+9c=90", "a+3b+6c=66", "-2a+2d+e=0", "-3b+2e+4f=0", "-4c+3d+2e+f=0", "d+e+f=12"],
        ),
        "sys12_II" => (
            vec!["a", "b", "c", "o", "d", "e", "f", "g", "h", "i"],
            vec![
                "a+4b+9c+16o=90",
                "a+3b+6c+10o=66",
                "-2a+3d+2e+f+2g+h=0",
                "-3b+e+3f+2h+4i=0",
                "-4c+e+3g+2h+i=0",
                "-5o+2d+e+f=0",
                "d+e+f+g+h+i=12",
            ],
        ),
        "sys14" => (
            vec!["a", "b", "c", "o", "d", "e", "f", "g", "h", "i"],
            vec![
                "a+4b+9c+16o=127",
                "a+3b+6c+10o=91",
                "-2a+d+2e+f+h=0",
                "-3b+2d+f+3g+2i=0",
                "-4c+e+2f+g+4h+3i=0",
                if strict { SYS14_PRINTED_QUINTUPLE_ROW } else { "-5o+2d+2e+f+g=0" },
                "d+e+f+g+h+i=14",
            ],
        ),
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// A named system as written out, with the bounds of [`build_system`].
/// `strict` keeps the printed quintuple row of the 14-line system; otherwise
/// that row uses the quintuple count.
pub fn predefined_with(name: &str, strict: bool) -> Result<LinearSystem> {
    let (vars, rows) = transcription(name, strict)?;
    let var_names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let equations = rows.iter().map(|r| parse_equation(r, &var_names)).collect::<Result<Vec<_>>>()?;
    let params = predefined_params(name)?;
    let built = build_system(params.d, params.exponents, &params.table, &params.options)?;
    let bounds = var_names
        .iter()
        .map(|v| built.var_index(v).and_then(|i| built.bounds[i]))
        .collect();
    Ok(LinearSystem { var_names, equations, bounds })
}

pub fn predefined(name: &str) -> Result<LinearSystem> {
    predefined_with(name, false)
}

/// A conclusion drawn from a solution set.
#[derive(Clone, Copy)]
pub struct NamedProperty {
    pub system: &'static str,
    pub description: &'static str,
    pub check: fn(&Assignment<'_>) -> bool,
}

impl std::fmt::Debug for NamedProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.system, self.description)
    }
}

/// The conclusions drawn from the four 13-line systems.
pub fn lemma_properties() -> Vec<NamedProperty> {
    vec![
        NamedProperty {
            system: "lemma33_n5_0",
            description: "b+d+a0 = 12-n4-a0",
            check: |s| s.sum(&["b", "d", "a0"]) == 12 - s.get("n4") - s.get("a0"),
        },
        NamedProperty {
            system: "lemma33_n5_0",
            description: "a0 > 0 implies n4 >= 4 and a+c+e >= 6",
            check: |s| s.get("a0") == 0 || (s.get("n4") >= 4 && s.sum(&["a", "c", "e"]) >= 6),
        },
        NamedProperty {
            system: "lemma33_n5_0",
            description: "a0 = 0 implies 3(b+d) = 24-n2 and a+c+e >= 5",
            check: |s| s.get("a0") > 0 || (3 * s.sum(&["b", "d"]) == 24 - s.get("n2") && s.sum(&["a", "c", "e"]) >= 5),
        },
        NamedProperty {
            system: "lemma33_n5_1",
            description: "a+c+e+f+h = 4+n4 and n4 >= 2",
            check: |s| s.sum(&["a", "c", "e", "f", "h"]) == 4 + s.get("n4") && s.get("n4") >= 2,
        },
        NamedProperty {
            system: "lemma33_n5_2",
            description: "b+d+g+i+j+l = 6-n4, so at least 7 lines carry 6 points",
            check: |s| {
                s.sum(&["b", "d", "g", "i", "j", "l"]) == 6 - s.get("n4")
                    && s.sum(&["a", "c", "e", "f", "h", "k"]) >= 7
            },
        },
        NamedProperty {
            system: "lemma33_n5_3",
            description: "d+b+g+j+l+i = 3-n4, so at least 10 lines carry 6 points",
            check: |s| {
                s.sum(&["d", "b", "g", "j", "l", "i"]) == 3 - s.get("n4")
                    && s.sum(&["a", "c", "e", "f", "h", "k"]) >= 10
            },
        },
    ]
}

/// The `(n_k, type counts)` vector of an incidence structure in the variable
/// order of `sys`, if every line has a profile listed in `table`.
pub fn profile_vector(inc: &IncidenceStructure, table: &LineTypeTable, sys: &LinearSystem, naming: PointNaming) -> Option<Vec<i64>> {
    let mv = inc.multiplicity_vector();
    let mut values: BTreeMap<String, i64> = mv.n.iter().map(|(&k, &c)| (naming.name(k), c as i64)).collect();
    for (tag, _) in &table.rows {
        values.insert(tag.clone(), 0);
    }
    for p in inc.line_profiles() {
        let (tag, _) = table.rows.iter().find(|(_, q)| *q == p)?;
        *values.get_mut(tag).expect("inserted") += 1;
    }
    Some(sys.var_names.iter().map(|n| values.get(n).copied().unwrap_or(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(vars: &[&str], rows: &[&str], bound: i64) -> LinearSystem {
        let var_names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let equations = rows.iter().map(|r| parse_equation(r, &var_names).unwrap()).collect();
        LinearSystem { var_names, equations, bounds: vec![Some(bound); vars.len()] }
    }

    #[test]
    fn trivial_system() {
        let s = enumerate_nonneg(&sys(&["x", "y"], &["x+y=2"], 10)).unwrap();
        assert_eq!(s.solutions, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(s.complete);
    }

    #[test]
    fn bounds_come_from_equations() {
        let mut s = sys(&["x", "y"], &["2x+3y=12"], 0);
        s.bounds = vec![None, None];
        assert_eq!(enumerate_nonneg(&s).unwrap().len(), 3);
        let mut s = sys(&["x", "y"], &["x-y=0"], 0);
        s.bounds = vec![None, None];
        assert!(matches!(enumerate_nonneg(&s), Err(Error::Unbounded(_))));
    }

    #[test]
    fn equation_parser() {
        let vars: Vec<String> = ["n2", "a0", "a", "e"].iter().map(|s| s.to_string()).collect();
        let e = parse_equation("-2n_2+3e+a+4a_0=0", &vars).unwrap();
        assert_eq!(e.coeffs, vec![-2, 4, 1, 3]);
        assert!(matches!(parse_equation("x=1", &vars), Err(Error::Parse { .. })));
        assert!(matches!(parse_equation("a+", &vars), Err(Error::Parse { .. })));
    }

    #[test]
    fn builder_matches_transcriptions() {
        for name in PREDEFINED {
            let p = predefined_params(name).unwrap();
            let built = build_system(p.d, p.exponents, &p.table, &p.options).unwrap();
            let lit = predefined(name).unwrap();
            assert_eq!(built.canonical_rows(), lit.canonical_rows(), "{name}");
            let mut a = built.var_names.clone();
            let mut b = lit.var_names.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{name}");
        }
        assert_ne!(predefined_with("sys14", true).unwrap().canonical_rows(), predefined("sys14").unwrap().canonical_rows());
    }

    #[test]
    fn first_rows() {
        let p = predefined_params("sys11").unwrap();
        let s = build_system(p.d, p.exponents, &p.table, &p.options).unwrap();
        assert_eq!(s.to_text().lines().next(), Some("a+4b+9c=74"));
        let p = predefined_params("sys14").unwrap();
        let s = build_system(p.d, p.exponents, &p.table, &p.options).unwrap();
        assert_eq!(s.to_text().lines().next(), Some("a+4b+9c+16o=127"));
        let l0 = predefined("lemma33_n5_0").unwrap();
        assert_eq!((l0.equations.len(), l0.var_names.len()), (6, 9));
        assert_eq!(predefined("sys12_II").unwrap().equations.len(), 7);
        assert!(matches!(predefined("sys13"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn inconsistent_tables() {
        let t = LineTypeTable::from_counts(&[("d", [0, 2, 1, 2])]).unwrap();
        let e = ExponentPair { d1: 5, d2: 6, kind: ExponentKind::NearlyFree };
        assert!(matches!(build_system(12, e, &t, &BuildOptions::default()), Err(Error::InconsistentTable { .. })));
        let e = ExponentPair { d1: 5, d2: 5, kind: ExponentKind::NearlyFree };
        assert!(matches!(build_system(11, e, &t, &BuildOptions::default()), Err(Error::InconsistentTable { .. })));
        assert!(LineTypeTable::from_counts(&[("d", [0, 2, 1, 2]), ("d", [0, 1, 3, 1])]).is_err());
    }

    #[test]
    fn section_four_systems_are_empty() {
        for name in ["sys11", "sys12_I", "sys12_II", "sys14"] {
            assert!(enumerate_nonneg(&predefined(name).unwrap()).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn table_output() {
        let s = enumerate_nonneg(&sys(&["x", "y12"], &["x+y12=1"], 5)).unwrap();
        assert_eq!(s.to_table(), "x y12\n0   1\n1   0\n");
        assert_eq!(s.to_json()[1]["x"], 1);
    }

    #[test]
    fn spec_round_trip() {
        let s = predefined("sys12_II").unwrap();
        let json = serde_json::to_string(&s.to_spec()).unwrap();
        assert_eq!(parse_system_json(&json).unwrap(), s);
        assert!(matches!(parse_system_json("{\"vars\": [\"x\"], \"eqs\": ["), Err(Error::Parse { .. })));
    }

    #[test]
    fn lemma_solution_counts_and_conclusions() {
        let mut counts = Vec::new();
        for name in &PREDEFINED[..4] {
            let sols = enumerate_nonneg(&predefined(name).unwrap()).unwrap();
            counts.push(sols.len());
            for p in lemma_properties().iter().filter(|p| p.system == *name) {
                assert_eq!(assert_property(&sols, p.check), PropertyOutcome::Holds, "{p:?}");
            }
        }
        assert_eq!(counts, vec![126, 1504, 2767, 238]);
    }
}
