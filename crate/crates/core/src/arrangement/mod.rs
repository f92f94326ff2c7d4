//! Line arrangements in the projective plane with exact coefficients.

mod incidence;
pub mod io;
mod iso;

pub use incidence::{
    classify_profile_13, IncidenceStructure, LineProfile, LineType13, MultiplicityVector,
};
pub use iso::lattice_isomorphic;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::HomogPoly;
use crate::scalar::Scalar;

/// A projective triple scaled so that its first nonzero entry is 1.
pub type Triple = [Scalar; 3];

fn canonical(v: Triple) -> Option<Triple> {
    let lead = v.iter().find(|c| !c.is_zero())?.inv()?;
    Some(v.map(|c| &c * &lead))
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &Triple, b: &Triple) -> Scalar {
    let mut acc = &a[0] * &b[0];
    acc += &(&a[1] * &b[1]);
    acc += &(&a[2] * &b[2]);
    acc
}

/// The line `a x + b y + c z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjLine {
    coeffs: Triple,
}

impl ProjLine {
    pub fn new(coeffs: Triple) -> Result<Self> {
        canonical(coeffs).map(|coeffs| Self { coeffs }).ok_or(Error::ZeroLine)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([Scalar::int(a), Scalar::int(b), Scalar::int(c)])
    }

    pub fn coeffs(&self) -> &Triple {
        &self.coeffs
    }

    pub fn contains(&self, pt: &Triple) -> bool {
        dot(&self.coeffs, pt).is_zero()
    }

    pub fn linear_form(&self) -> HomogPoly {
        HomogPoly::linear(&self.coeffs)
    }
}

/// Canonical coordinates of the common point of two distinct lines.
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<Triple> {
    canonical(cross(&l1.coeffs, &l2.coeffs)).ok_or(Error::IdenticalLines(0, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplePoint {
    pub coords: Triple,
    pub incident: Vec<usize>,
}

impl MultiplePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// An ordered list of pairwise distinct projective lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
}

impl Arrangement {
    pub fn new(lines: Vec<ProjLine>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        let mut seen: BTreeMap<&ProjLine, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&j) = seen.get(l) {
                return Err(Error::RepeatedLine(i, j));
            }
            seen.insert(l, i);
        }
        Ok(Self { lines })
    }

    pub fn from_coeffs(coeffs: Vec<Triple>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(ProjLine::new).collect::<Result<_>>()?)
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_int_rows(rows: &[[i64; 3]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| ProjLine::from_ints(r[0], r[1], r[2])).collect::<Result<_>>()?)
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line(&self, h: usize) -> Result<&ProjLine> {
        self.lines.get(h).ok_or(Error::BadIndex { index: h, d: self.d() })
    }

    /// The defining polynomial: the product of the lines' linear forms.
    pub fn polynomial(&self) -> HomogPoly {
        self.lines
            .iter()
            .fold(HomogPoly::constant(Scalar::one()), |acc, l| acc.mul(&l.linear_form()))
    }

    /// All intersection points, each with its full set of incident lines,
    /// sorted by canonical coordinates.
    pub fn multiple_points(&self) -> Vec<MultiplePoint> {
        let mut pts: BTreeMap<Triple, Vec<usize>> = BTreeMap::new();
        for i in 0..self.d() {
            for j in (i + 1)..self.d() {
                let p = canonical(cross(&self.lines[i].coeffs, &self.lines[j].coeffs))
                    .expect("lines are distinct");
                let entry = pts.entry(p).or_default();
                for k in [i, j] {
                    if let Err(pos) = entry.binary_search(&k) {
                        entry.insert(pos, k);
                    }
                }
            }
        }
        pts.into_iter().map(|(coords, incident)| MultiplePoint { coords, incident }).collect()
    }

    pub fn incidence(&self) -> IncidenceStructure {
        incidence_of(self)
    }

    /// Removes line `h`; later lines shift down by one.
    pub fn delete(&self, h: usize) -> Result<Arrangement> {
        self.line(h)?;
        let lines: Vec<_> =
            self.lines.iter().enumerate().filter(|&(i, _)| i != h).map(|(_, l)| l.clone()).collect();
        Arrangement::new(lines)
    }

    /// Applies the substitution `X -> M X`; line `l` becomes `M^T l`.
    /// `M` must be invertible.
    pub fn change_coordinates(&self, m: &[[Scalar; 3]; 3]) -> Result<Arrangement> {
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let c = &l.coeffs;
                let col = |j: usize| {
                    let mut acc = &c[0] * &m[0][j];
                    acc += &(&c[1] * &m[1][j]);
                    acc += &(&c[2] * &m[2][j]);
                    acc
                };
                ProjLine::new([col(0), col(1), col(2)])
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(lines)
    }
}

/// Forgets coordinates, keeping which lines pass through which points.
pub fn incidence_of(arr: &Arrangement) -> IncidenceStructure {
    let sets = arr.multiple_points().into_iter().map(|p| p.incident).collect();
    IncidenceStructure::new(arr.d(), sets).expect("points of a realized arrangement are consistent")
}

/// Determinant of a 3x3 matrix of scalars.
pub fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    let rows = [m[0].clone(), m[1].clone(), m[2].clone()];
    dot(&rows[0], &cross(&rows[1], &rows[2]))
}
