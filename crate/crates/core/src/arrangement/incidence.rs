use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

fn choose2(k: usize) -> u64 {
    (k as u64) * (k as u64).saturating_sub(1) / 2
}

/// Abstract rank-2 lattice data: line count plus the points of multiplicity
/// at least 3. Pairs of lines not covered by a stored point meet in a double
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IncidenceStructure {
    d: usize,
    points: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Accepts point sets of size at least 2 in any order. Sets of size 2 are
    /// checked and then dropped, since double points are implicit.
    pub fn new(d: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyArrangement);
        }
        let mut covered = vec![vec![false; d]; d];
        let mut points = Vec::new();
        for mut set in sets {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidIncidence(format!("point {set:?} repeats a line")));
            }
            if set.len() < 2 {
                return Err(Error::InvalidIncidence(format!("point {set:?} has fewer than 2 lines")));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= d) {
                return Err(Error::BadIndex { index: bad, d });
            }
            for (a, &i) in set.iter().enumerate() {
                for &j in &set[a + 1..] {
                    if covered[i][j] {
                        return Err(Error::InvalidIncidence(format!(
                            "lines {i} and {j} meet in more than one listed point"
                        )));
                    }
                    covered[i][j] = true;
                }
            }
            if set.len() >= 3 {
                points.push(set);
            }
        }
        points.sort();
        Ok(Self { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Points of multiplicity at least 3, sorted.
    pub fn heavy_points(&self) -> &[Vec<usize>] {
        &self.points
    }

    /// Every multiple point including the double points, sorted.
    pub fn expanded_points(&self) -> Vec<Vec<usize>> {
        let mut covered = vec![vec![false; self.d]; self.d];
        for p in &self.points {
            for (a, &i) in p.iter().enumerate() {
                for &j in &p[a + 1..] {
                    covered[i][j] = true;
                }
            }
        }
        let mut out = self.points.clone();
        for i in 0..self.d {
            for j in (i + 1)..self.d {
                if !covered[i][j] {
                    out.push(vec![i, j]);
                }
            }
        }
        out.sort();
        out
    }

    /// `table[i][j]` is the index in [`Self::expanded_points`] of the point
    /// where lines `i` and `j` meet (`usize::MAX` on the diagonal).
    pub fn meet_table(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let pts = self.expanded_points();
        let mut table = vec![vec![usize::MAX; self.d]; self.d];
        for (idx, p) in pts.iter().enumerate() {
            for &i in p {
                for &j in p {
                    if i != j {
                        table[i][j] = idx;
                    }
                }
            }
        }
        (table, pts)
    }

    pub fn multiplicity_vector(&self) -> MultiplicityVector {
        MultiplicityVector::from_multiplicities(self.d, self.expanded_points().iter().map(Vec::len))
            .expect("a valid incidence structure satisfies the counting identity")
    }

    /// Multiplicities of the points on line `h`, in the order of
    /// [`Self::expanded_points`].
    pub fn points_on_line(&self, h: usize) -> Result<Vec<Vec<usize>>> {
        self.check(h)?;
        Ok(self.expanded_points().into_iter().filter(|p| p.contains(&h)).collect())
    }

    pub fn line_profile(&self, h: usize) -> Result<LineProfile> {
        Ok(LineProfile::from_multiplicities(self.points_on_line(h)?.iter().map(Vec::len)))
    }

    pub fn line_profiles(&self) -> Vec<LineProfile> {
        let mut profiles = vec![LineProfile::default(); self.d];
        for p in self.expanded_points() {
            for &h in &p {
                *profiles[h].counts.entry(p.len()).or_default() += 1;
            }
        }
        profiles
    }

    /// Maximal multiplicity m(A); 1 for a single line.
    pub fn max_multiplicity(&self) -> usize {
        if self.d == 1 {
            return 1;
        }
        self.points.iter().map(Vec::len).max().unwrap_or(2)
    }

    /// Incidence structure of the arrangement with line `h` removed; later
    /// indices shift down by one.
    pub fn delete_line(&self, h: usize) -> Result<IncidenceStructure> {
        self.check(h)?;
        if self.d == 1 {
            return Err(Error::EmptyArrangement);
        }
        let sets = self
            .points
            .iter()
            .map(|p| p.iter().filter(|&&i| i != h).map(|&i| if i > h { i - 1 } else { i }).collect())
            .collect();
        IncidenceStructure::new(self.d - 1, sets)
    }

    /// Relabels lines: line `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<IncidenceStructure> {
        let mut seen = vec![false; self.d];
        if perm.len() != self.d || perm.iter().any(|&j| j >= self.d || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::InvalidIncidence("relabeling is not a permutation".into()));
        }
        let sets = self.points.iter().map(|p| p.iter().map(|&i| perm[i]).collect()).collect();
        IncidenceStructure::new(self.d, sets)
    }

    fn check(&self, h: usize) -> Result<()> {
        if h >= self.d {
            return Err(Error::BadIndex { index: h, d: self.d });
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_string().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The incidence text format: `d=<n>` followed by one heavy point per line.
impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={}", self.d)?;
        for p in &self.points {
            let s: Vec<String> = p.iter().map(usize::to_string).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Point counts `n_k` by multiplicity `k >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultiplicityVector {
    pub d: usize,
    pub n: BTreeMap<usize, u64>,
}

impl MultiplicityVector {
    /// Counts multiplicities and checks `sum n_k C(k,2) = C(d,2)`.
    pub fn from_multiplicities<I: IntoIterator<Item = usize>>(d: usize, mults: I) -> Result<Self> {
        let mut n = BTreeMap::new();
        for m in mults {
            *n.entry(m).or_insert(0u64) += 1;
        }
        let mv = Self { d, n };
        let got: u64 = mv.n.iter().map(|(&k, &c)| c * choose2(k)).sum();
        let expected = choose2(d);
        if got != expected || mv.n.keys().any(|&k| k < 2) {
            return Err(Error::CountingIdentityViolation { got, expected });
        }
        Ok(mv)
    }

    pub fn from_points(d: usize, pts: &[super::MultiplePoint]) -> Result<Self> {
        Self::from_multiplicities(d, pts.iter().map(|p| p.multiplicity()))
    }

    pub fn get(&self, k: usize) -> u64 {
        self.n.get(&k).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.n.keys().next_back().copied().unwrap_or(1)
    }

    pub fn point_count(&self) -> u64 {
        self.n.values().sum()
    }
}

/// Multiplicities of the points on one line: `i -> n_i^H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LineProfile {
    pub counts: BTreeMap<usize, usize>,
}

impl LineProfile {
    pub fn from_multiplicities<I: IntoIterator<Item = usize>>(mults: I) -> Self {
        let mut counts = BTreeMap::new();
        for m in mults {
            *counts.entry(m).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self { counts: pairs.iter().copied().filter(|&(_, c)| c > 0).collect() }
    }

    /// Number of multiple points on the line.
    pub fn n_h(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// `sum (i-1) n_i^H`, which equals `d - 1`.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(&i, &c)| (i - 1) * c).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(1)
    }
}

impl fmt::Display for LineProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().rev().map(|(i, c)| format!("{i}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The thirteen line types of a 13-line arrangement with only points of
/// multiplicity at most 5, indexed by `(n5, n4, n3, n2)` on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LineType13 {
    A0,
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

impl LineType13 {
    pub const ALL: [LineType13; 13] = [
        Self::A0,
        Self::A,
        Self::B,
        Self::C,
        Self::D,
        Self::E,
        Self::F,
        Self::G,
        Self::H,
        Self::I,
        Self::J,
        Self::K,
        Self::L,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::A0 => "a0",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
            Self::E => "e",
            Self::F => "f",
            Self::G => "g",
            Self::H => "h",
            Self::I => "i",
            Self::J => "j",
            Self::K => "k",
            Self::L => "l",
        }
    }

    /// `(n5, n4, n3, n2)` on a line of this type.
    pub fn counts(self) -> [usize; 4] {
        match self {
            Self::A0 => [0, 4, 0, 0],
            Self::A => [0, 1, 4, 1],
            Self::B => [0, 2, 3, 0],
            Self::C => [0, 2, 2, 2],
            Self::D => [0, 3, 1, 1],
            Self::E => [0, 3, 0, 3],
            Self::F => [1, 0, 3, 2],
            Self::G => [1, 0, 4, 0],
            Self::H => [1, 1, 1, 3],
            Self::I => [1, 1, 2, 1],
            Self::J => [1, 2, 0, 2],
            Self::K => [2, 0, 0, 4],
            Self::L => [2, 0, 1, 2],
        }
    }

    pub fn profile(self) -> LineProfile {
        let [n5, n4, n3, n2] = self.counts();
        LineProfile::from_pairs(&[(5, n5), (4, n4), (3, n3), (2, n2)])
    }

    pub fn n_h(self) -> usize {
        self.counts().iter().sum()
    }
}

/// Matches a line profile against the 13-line type table.
pub fn classify_profile_13(p: &LineProfile) -> Option<LineType13> {
    LineType13::ALL.into_iter().find(|t| &t.profile() == p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn table_rows_have_degree_twelve() {
        for t in LineType13::ALL {
            assert_eq!(t.profile().degree_sum(), 12, "{}", t.tag());
        }
        // Apart from a0, the table lists every profile with a quadruple or
        // quintuple point and 5 or 6 points in total.
        let mut expected = vec![[0, 4, 0, 0]];
        for n5 in 0..=3usize {
            for n4 in 0..=4usize {
                for n3 in 0..=6usize {
                    let used = 4 * n5 + 3 * n4 + 2 * n3;
                    if used > 12 || n5 + n4 == 0 {
                        continue;
                    }
                    let n2 = 12 - used;
                    if (5..=6).contains(&(n5 + n4 + n3 + n2)) {
                        expected.push([n5, n4, n3, n2]);
                    }
                }
            }
        }
        expected.sort();
        let mut got: Vec<_> = LineType13::ALL.iter().map(|t| t.counts()).collect();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn classify_examples() {
        let g = LineProfile::from_pairs(&[(5, 1), (3, 4)]);
        assert_eq!(classify_profile_13(&g), Some(LineType13::G));
        assert_eq!(classify_profile_13(&LineProfile::from_pairs(&[(4, 4)])), Some(LineType13::A0));
        assert_eq!(classify_profile_13(&LineProfile::from_pairs(&[(2, 12)])), None);
    }

    #[test]
    fn triangle_structure() {
        let s = corpus::triangle().incidence();
        assert_eq!(s.d(), 3);
        assert!(s.heavy_points().is_empty());
        assert_eq!(s.expanded_points(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let p = s.line_profile(0).unwrap();
        assert_eq!(p, LineProfile::from_pairs(&[(2, 2)]));
        assert_eq!(p.n_h(), 2);
    }

    #[test]
    fn pencil_structure() {
        let s = corpus::pencil(4).incidence();
        assert_eq!(s.heavy_points(), &[vec![0, 1, 2, 3]]);
        assert_eq!(s.max_multiplicity(), 4);
    }

    #[test]
    fn ceva_and_grid_profiles() {
        let ceva = corpus::ceva3().incidence();
        for p in ceva.line_profiles() {
            assert_eq!(p, LineProfile::from_pairs(&[(3, 4)]));
        }
        let mv = ceva.multiplicity_vector();
        assert_eq!(mv.n, BTreeMap::from([(3, 12)]));

        let grid = corpus::grid13().incidence();
        assert_eq!(grid.line_profile(0).unwrap(), LineProfile::from_pairs(&[(7, 2)]));
        let mv = grid.multiplicity_vector();
        assert_eq!(mv.n, BTreeMap::from([(2, 36), (7, 2)]));
    }

    #[test]
    fn a1_counts_and_family_invariance() {
        let s2 = corpus::a1(2).incidence();
        let mv = s2.multiplicity_vector();
        assert_eq!(mv.n, BTreeMap::from([(2, 6), (3, 5)]));
        assert_eq!(s2, corpus::a1(3).incidence());
    }

    #[test]
    fn counting_identity_is_enforced() {
        let err = MultiplicityVector::from_multiplicities(4, [2, 2, 2]).unwrap_err();
        assert_eq!(err, Error::CountingIdentityViolation { got: 3, expected: 6 });
    }

    #[test]
    fn invalid_structures_are_rejected() {
        assert!(matches!(
            IncidenceStructure::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]),
            Err(Error::InvalidIncidence(_))
        ));
        assert_eq!(
            IncidenceStructure::new(3, vec![vec![0, 1, 3]]),
            Err(Error::BadIndex { index: 3, d: 3 })
        );
    }

    #[test]
    fn delete_and_relabel() {
        let s = corpus::pencil(4).incidence();
        let t = s.delete_line(0).unwrap();
        assert_eq!(t.heavy_points(), &[vec![0, 1, 2]]);
        let u = corpus::near_pencil(5).incidence();
        let r = u.relabel(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(r.heavy_points(), &[vec![1, 2, 3, 4]]);
        assert_ne!(u.digest(), r.digest());
    }
}
