use super::incidence::{IncidenceStructure, LineProfile};
use crate::par;

struct Side {
    meet: Vec<Vec<usize>>,
    mult: Vec<usize>,
    signature: Vec<LineProfile>,
}

impl Side {
    fn new(s: &IncidenceStructure) -> Self {
        let (meet, pts) = s.meet_table();
        Self { meet, mult: pts.iter().map(Vec::len).collect(), signature: s.line_profiles() }
    }
}

struct Search<'a> {
    a: &'a Side,
    b: &'a Side,
    d: usize,
}

impl Search<'_> {
    /// Extends `sigma` (images of lines `0..sigma.len()`) to a full bijection.
    fn extend(
        &self,
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        pmap: &mut [usize],
        pinv: &mut [usize],
    ) -> bool {
        let i = sigma.len();
        if i == self.d {
            return true;
        }
        for t in 0..self.d {
            if used[t] || self.a.signature[i] != self.b.signature[t] {
                continue;
            }
            let mut fresh = Vec::new();
            if self.assign(i, t, sigma, pmap, pinv, &mut fresh) {
                sigma.push(t);
                used[t] = true;
                if self.extend(sigma, used, pmap, pinv) {
                    return true;
                }
                sigma.pop();
                used[t] = false;
            }
            for (p, q) in fresh {
                pmap[p] = usize::MAX;
                pinv[q] = usize::MAX;
            }
        }
        false
    }

    /// Checks that mapping line `i` to `t` keeps the point correspondence a
    /// multiplicity-preserving bijection; records new point pairs in `fresh`.
    fn assign(
        &self,
        i: usize,
        t: usize,
        sigma: &[usize],
        pmap: &mut [usize],
        pinv: &mut [usize],
        fresh: &mut Vec<(usize, usize)>,
    ) -> bool {
        for (j, &s) in sigma.iter().enumerate() {
            let p = self.a.meet[i][j];
            let q = self.b.meet[t][s];
            if self.a.mult[p] != self.b.mult[q] {
                return false;
            }
            match (pmap[p], pinv[q]) {
                (usize::MAX, usize::MAX) => {
                    pmap[p] = q;
                    pinv[q] = p;
                    fresh.push((p, q));
                }
                (mp, mq) if mp == q && mq == p => {}
                _ => return false,
            }
        }
        true
    }
}

/// Finds the lexicographically least line bijection `sigma` such that a set of
/// lines is a point of `s1` exactly when its image is a point of `s2`.
pub fn lattice_isomorphic(s1: &IncidenceStructure, s2: &IncidenceStructure) -> Option<Vec<usize>> {
    if s1.d() != s2.d() || s1.multiplicity_vector() != s2.multiplicity_vector() {
        return None;
    }
    let (a, b) = (Side::new(s1), Side::new(s2));
    let mut sa = a.signature.clone();
    let mut sb = b.signature.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let d = s1.d();
    let search = Search { a: &a, b: &b, d };
    let first: Vec<usize> = (0..d).filter(|&t| a.signature[0] == b.signature[t]).collect();
    par::find_map_first(first, |t| {
        let mut sigma = vec![t];
        let mut used = vec![false; d];
        used[t] = true;
        let mut pmap = vec![usize::MAX; a.mult.len()];
        let mut pinv = vec![usize::MAX; b.mult.len()];
        search.extend(&mut sigma, &mut used, &mut pmap, &mut pinv).then_some(sigma)
    })
}
