//! Combinatorial invariants read off a multiplicity vector.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::arrangement::MultiplicityVector;

/// `chi(t) = t^2 - b1 t + b2`, the characteristic polynomial divided by `t - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharPoly {
    pub b1: i64,
    pub b2: i64,
}

impl CharPoly {
    pub fn eval(&self, t: i64) -> i64 {
        t * t - self.b1 * t + self.b2
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |v: i64| if v < 0 { "+" } else { "-" };
        write!(f, "t^2 {} {}t", sign(self.b1), self.b1.abs())?;
        if self.b2 == 0 {
            return Ok(());
        }
        let s = if self.b2 < 0 { "-" } else { "+" };
        write!(f, " {} {}", s, self.b2.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExponentKind {
    Free,
    NearlyFree,
}

/// Exponents `(d1, d2)` with `d1 <= d2`; `d1 + d2` is `d - 1` when free and
/// `d` when nearly free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentPair {
    pub d1: i64,
    pub d2: i64,
    pub kind: ExponentKind,
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// `b1 = d - 1`, `b2 = sum_p (m_p - 1) - (d - 1)`.
pub fn char_poly(mv: &MultiplicityVector) -> CharPoly {
    let d = mv.d as i64;
    let s: i64 = mv.n.iter().map(|(&k, &c)| (k as i64 - 1) * c as i64).sum();
    CharPoly { b1: d - 1, b2: s - (d - 1) }
}

/// `sum_k (k - 1)^2 n_k`.
pub fn tjurina_combinatorial(mv: &MultiplicityVector) -> i64 {
    mv.n.iter().map(|(&k, &c)| ((k as i64 - 1).pow(2)) * c as i64).sum()
}

/// Global Tjurina number forced by the given exponent `d1`.
pub fn tjurina_target(d: i64, d1: i64, kind: ExponentKind) -> i64 {
    match kind {
        ExponentKind::Free => (d - 1).pow(2) - d1 * (d - 1 - d1),
        ExponentKind::NearlyFree => (d - 1).pow(2) - d1 * (d - d1 - 1) - 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hirzebruch {
    /// Left side minus right side, nonnegative.
    Satisfied(BigRational),
    /// Right side minus left side, positive.
    Violated(BigRational),
    NotApplicable,
}

impl fmt::Display for Hirzebruch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hirzebruch::Satisfied(s) => write!(f, "satisfied (slack {s})"),
            Hirzebruch::Violated(s) => write!(f, "violated (deficit {s})"),
            Hirzebruch::NotApplicable => f.write_str("not applicable"),
        }
    }
}

impl Serialize for Hirzebruch {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `n2 + 3/4 n3 >= d + sum_{k>=5} (k - 4) n_k`, valid when `n_d = n_{d-1} = 0`.
pub fn hirzebruch_check(mv: &MultiplicityVector) -> Hirzebruch {
    let d = mv.d;
    if d < 3 || mv.get(d) != 0 || mv.get(d - 1) != 0 {
        return Hirzebruch::NotApplicable;
    }
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let lhs = int(mv.get(2) as i64) + BigRational::new(3.into(), 4.into()) * int(mv.get(3) as i64);
    let tail: i64 = mv.n.iter().filter(|(&k, _)| k >= 5).map(|(&k, &c)| (k as i64 - 4) * c as i64).sum();
    let slack = lhs - int(d as i64 + tail);
    if slack.is_negative() {
        Hirzebruch::Violated(-slack)
    } else {
        Hirzebruch::Satisfied(slack)
    }
}

/// Integer roots `r1 <= r2` of `t^2 - s t + p`.
fn integer_roots(s: i64, p: i64) -> Option<(i64, i64)> {
    let disc = s.checked_mul(s)?.checked_sub(4i64.checked_mul(p)?)?;
    if disc < 0 {
        return None;
    }
    let r = disc.isqrt();
    if r * r != disc || (s - r) % 2 != 0 {
        return None;
    }
    Some(((s - r) / 2, (s + r) / 2))
}

/// Every exponent pair compatible with `chi`. Free: at most one. Nearly free:
/// `chi = (t - d1)(t - d2 + 1) + 1` can have two solutions `d1 <= d2`, namely
/// `(r, r + 2)` and `(r + 1, r + 1)` when `chi - 1` has roots `r, r + 1`.
pub fn exponent_candidates(cp: CharPoly, kind: ExponentKind) -> Vec<ExponentPair> {
    let pair = |d1, d2| ExponentPair { d1, d2, kind };
    match kind {
        ExponentKind::Free => integer_roots(cp.b1, cp.b2)
            .filter(|&(r1, _)| r1 >= 0)
            .map(|(r1, r2)| vec![pair(r1, r2)])
            .unwrap_or_default(),
        ExponentKind::NearlyFree => {
            let Some((r1, r2)) = integer_roots(cp.b1, cp.b2 - 1) else {
                return Vec::new();
            };
            let mut out = Vec::new();
            if r1 >= 0 {
                out.push(pair(r1, r2 + 1));
            }
            if r2 == r1 + 1 {
                out.push(pair(r2, r1 + 1));
            }
            out
        }
    }
}

/// The exponent pair read off `chi`, preferring the balanced pair when two
/// nearly free readings exist.
pub fn exponents_from_chi(cp: CharPoly, kind: ExponentKind) -> Option<ExponentPair> {
    exponent_candidates(cp, kind).into_iter().min_by_key(|p| p.d2 - p.d1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBounds {
    /// `m >= d1`.
    pub cor17: bool,
    /// `m >= 2d / (d1 + 2)`.
    pub prop13: bool,
}

pub fn multiplicity_bounds_check(d: i64, d1: i64, m: i64) -> MultiplicityBounds {
    MultiplicityBounds { cor17: m >= d1, prop13: m * (d1 + 2) >= 2 * d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn mv(name: &str) -> MultiplicityVector {
        corpus::by_name(name).unwrap().incidence().multiplicity_vector()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&mv("grid13")), CharPoly { b1: 12, b2: 36 });
        assert_eq!(char_poly(&mv("triangle")), CharPoly { b1: 2, b2: 1 });
        assert_eq!(char_poly(&mv("a1")), CharPoly { b1: 6, b2: 10 });
        assert_eq!(CharPoly { b1: 12, b2: 36 }.to_string(), "t^2 - 12t + 36");
        // (t - 3)(t - 3) + 1 = t^2 - 6t + 10
        let cp = char_poly(&mv("a1"));
        assert_eq!(cp.eval(5), (5 - 3) * (5 - 4 + 1) + 1);
    }

    #[test]
    fn tjurina_examples() {
        assert_eq!(tjurina_combinatorial(&mv("grid13")), 108);
        assert_eq!(tjurina_combinatorial(&mv("a1")), 26);
        assert_eq!(tjurina_combinatorial(&mv("pencil4")), 9);
        assert_eq!(tjurina_target(13, 6, ExponentKind::Free), 108);
        assert_eq!(tjurina_target(11, 5, ExponentKind::NearlyFree), 74);
        assert_eq!(tjurina_target(14, 6, ExponentKind::Free), 127);
    }

    #[test]
    fn hirzebruch_examples() {
        let int = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(hirzebruch_check(&mv("ceva3")), Hirzebruch::Satisfied(int(0)));
        assert_eq!(hirzebruch_check(&mv("triangle")), Hirzebruch::NotApplicable);
        assert_eq!(hirzebruch_check(&mv("grid13")), Hirzebruch::Satisfied(int(17)));
        let a1 = hirzebruch_check(&mv("a1"));
        // n2 + 3/4 n3 = 6 + 15/4 against d = 7
        assert_eq!(a1, Hirzebruch::Satisfied(BigRational::new(11.into(), 4.into())));
    }

    #[test]
    fn exponents_examples() {
        let free = ExponentKind::Free;
        let nf = ExponentKind::NearlyFree;
        assert_eq!(
            exponents_from_chi(CharPoly { b1: 12, b2: 36 }, free),
            Some(ExponentPair { d1: 6, d2: 6, kind: free })
        );
        assert_eq!(
            exponents_from_chi(CharPoly { b1: 11, b2: 31 }, nf),
            Some(ExponentPair { d1: 6, d2: 6, kind: nf })
        );
        assert_eq!(exponent_candidates(CharPoly { b1: 11, b2: 31 }, nf).len(), 2);
        assert_eq!(exponents_from_chi(CharPoly { b1: 3, b2: 1 }, free), None);
        assert_eq!(
            exponents_from_chi(CharPoly { b1: 6, b2: 10 }, nf),
            Some(ExponentPair { d1: 3, d2: 4, kind: nf })
        );
    }

    #[test]
    fn multiplicity_bound_examples() {
        assert!(!multiplicity_bounds_check(11, 4, 3).prop13);
        assert_eq!(multiplicity_bounds_check(12, 5, 4), MultiplicityBounds { cor17: false, prop13: true });
        assert!(multiplicity_bounds_check(13, 6, 7).cor17);
    }

    #[test]
    fn nearly_free_target_is_one_below_free() {
        for d in 1..30 {
            for d1 in 0..=d {
                assert_eq!(
                    tjurina_target(d, d1, ExponentKind::NearlyFree),
                    tjurina_target(d, d1, ExponentKind::Free) - 1
                );
            }
        }
    }

    /// Moebius function of the central lattice from its recursive definition,
    /// then synthetic division of `sum_X mu(X) t^(3 - rk X)` by `t - 1`.
    fn b2_by_moebius(inc: &crate::arrangement::IncidenceStructure) -> i64 {
        let d = inc.d();
        // Flats as sets of lines, with rank.
        let mut flats: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
        flats.extend((0..d).map(|i| (vec![i], 1)));
        flats.extend(inc.expanded_points().into_iter().map(|p| (p, 2)));
        flats.push(((0..d).collect(), 3));
        let below = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.contains(x));
        let mut mu = vec![0i64; flats.len()];
        mu[0] = 1;
        for x in 1..flats.len() {
            mu[x] = -(0..x).filter(|&y| flats[y].1 < flats[x].1 && below(&flats[y].0, &flats[x].0)).map(|y| mu[y]).sum::<i64>();
        }
        let mut coeffs = [0i64; 4];
        for (f, m) in flats.iter().zip(&mu) {
            coeffs[f.1] += m;
        }
        // coeffs[r] multiplies t^(3 - r); divide by (t - 1).
        let q0 = coeffs[0];
        let q1 = coeffs[1] + q0;
        let q2 = coeffs[2] + q1;
        assert_eq!(coeffs[3] + q2, 0, "t = 1 is a root");
        assert_eq!((q0, q1), (1, 1 - d as i64));
        q2
    }

    #[test]
    fn b2_agrees_with_moebius_summation() {
        for (name, arr) in corpus::named() {
            let inc = arr.incidence();
            assert_eq!(char_poly(&inc.multiplicity_vector()).b2, b2_by_moebius(&inc), "{name}");
        }
    }

    #[test]
    fn factorizations_match_targets() {
        // chi = (t - d1)(t - d2) and tau = target for free members.
        for (name, d1) in [("grid13", 6), ("ceva3", 4), ("triangle", 1)] {
            let m = mv(name);
            let cp = char_poly(&m);
            let e = exponents_from_chi(cp, ExponentKind::Free).unwrap();
            assert_eq!(e.d1, d1);
            assert_eq!(tjurina_combinatorial(&m), tjurina_target(m.d as i64, d1, ExponentKind::Free));
        }
    }
}
