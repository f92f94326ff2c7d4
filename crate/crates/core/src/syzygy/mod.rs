//! Jacobian syzygies, Hilbert functions, the module `N(f)` and the
//! free / nearly free verdict.

pub mod exact;
mod fast;
pub mod jacobian;

pub use jacobian::{
    ar_dimension, jacobian_matrix_csv, jf_hilbert, mdr, nf_dims, nf_dims_saturated, tau_algebraic,
};

use serde::Serialize;

use crate::arrangement::{Arrangement, MultiplicityVector};
use crate::error::{Error, Result};
use crate::invariants::{tjurina_combinatorial, tjurina_target, ExponentKind, ExponentPair};
use crate::modp::PrimeField;
use crate::par;
use crate::poly::HomogPoly;
use fast::{dim_s, ModArrangement};

/// Graded data of the Jacobian ideal of an arrangement polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub d: usize,
    /// `dim AR(f)_m` for `0 <= m <= d - 1`.
    pub ar_dims: Vec<usize>,
    pub mdr: usize,
    pub tau_alg: usize,
    /// `dim (S/J_f)_k` for `0 <= k <= 3d - 4`.
    pub jf_hilbert: Vec<usize>,
    /// `dim (S/J_f^sat)_k` for `0 <= k <= 3d - 6`.
    pub jsat_hilbert: Vec<usize>,
    /// `dim N(f)_k` for `0 <= k <= 3d - 6`.
    pub nf_dims: Vec<usize>,
}

fn elementwise_max(runs: Vec<Vec<usize>>) -> Vec<usize> {
    let mut it = runs.into_iter();
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, r| acc.into_iter().zip(r).map(|(a, b)| a.max(b)).collect())
}

/// Computes the report from derivation and local conditions. Every rank is
/// taken modulo each default prime and the maximum kept; the resulting
/// dimensions are then checked against the exact Tjurina number.
pub fn analyze_arrangement(arr: &Arrangement) -> Result<SyzygyReport> {
    let d = arr.d();
    let di = d as i64;
    let top_ar = (2 * di - 3).max(d as i64 - 1).max(0) as u32;
    let nf_top = 3 * di - 6;
    let ks: Vec<u32> = (0..=(3 * di - 5).max(0)).map(|k| k as u32).collect();

    let runs: Vec<(Vec<usize>, Vec<usize>)> = par::map_collect(PrimeField::default_primes().to_vec(), |p| {
        ModArrangement::new(arr, p).map(|ma| {
            let ar: Vec<usize> = (0..=top_ar).map(|m| ma.ar_dim(m)).collect();
            let sat = ma.saturation_hilbert(&ks);
            (ar, sat)
        })
    })
    .into_iter()
    .flatten()
    .collect();
    if runs.is_empty() {
        return Err(Error::InternalInconsistency("every prime divides a denominator".into()));
    }
    // Ranks are lower bounds, so the AR dimension (a corank) is an upper bound:
    // take the minimum across primes; the saturation Hilbert function is a rank.
    let ar_all: Vec<usize> = {
        let mut it = runs.iter().map(|r| r.0.clone());
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, r| acc.into_iter().zip(r).map(|(a, b)| a.min(b)).collect())
    };
    let sat = elementwise_max(runs.into_iter().map(|r| r.1).collect());

    let hj = |k: i64| -> usize {
        let m = k - di + 1;
        let ar = if m < 0 { 0 } else { ar_all[m as usize] };
        dim_s(k) - (3 * dim_s(m) - ar)
    };
    let jf: Vec<usize> = (0..=(3 * di - 4).max(0)).map(hj).collect();
    let tau_comb = tjurina_combinatorial(&arr.incidence().multiplicity_vector()) as usize;
    let (pa, pb) = ((3 * di - 5).max(0) as usize, (3 * di - 4).max(0) as usize);
    if jf[pa] != jf[pb] {
        return Err(Error::NotStabilized(jf[pa], pa as i64, jf[pb], pb as i64));
    }
    let tau_alg = jf[pa];
    if sat.last().copied() != Some(tau_comb) {
        return Err(Error::InternalInconsistency(format!(
            "saturation Hilbert function ends at {:?}, expected {tau_comb}",
            sat.last()
        )));
    }
    let mut nf = Vec::new();
    for k in 0..=nf_top.max(-1) {
        let (a, b) = (jf[k as usize], sat[k as usize]);
        if b > a {
            return Err(Error::InternalInconsistency(format!("dim N(f)_{k} would be negative")));
        }
        nf.push(a - b);
    }
    let ar_dims: Vec<usize> = ar_all[..d].to_vec();
    let mdr = ar_dims.iter().position(|&v| v > 0).ok_or(Error::NoRelationFound(d as u32 - 1))?;
    let jsat_hilbert = sat[..nf.len()].to_vec();
    Ok(SyzygyReport { d, ar_dims, mdr, tau_alg, jf_hilbert: jf, jsat_hilbert, nf_dims: nf })
}

/// The same report from the Jacobian matrices of an arbitrary polynomial;
/// slower, used as the reference.
pub fn analyze_polynomial(f: &HomogPoly) -> Result<SyzygyReport> {
    let d = f.degree() as usize;
    let ar_dims = (0..d as u32).map(|m| ar_dimension(f, m)).collect::<Result<Vec<_>>>()?;
    let mdr = ar_dims.iter().position(|&v| v > 0).ok_or(Error::NoRelationFound(d as u32 - 1))?;
    let tau_alg = tau_algebraic(f)?;
    let jf = (0..=(3 * d as i64 - 4).max(0) as u32).map(|k| jf_hilbert(f, k)).collect::<Result<Vec<_>>>()?;
    let nf = nf_dims(f)?;
    let jsat_hilbert = nf.iter().zip(&jf).map(|(n, h)| h - n).collect();
    Ok(SyzygyReport { d, ar_dims, mdr, tau_alg, jf_hilbert: jf, jsat_hilbert, nf_dims: nf })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    Free,
    NearlyFree,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub mdr: usize,
    pub tau_alg: usize,
    /// Whether `tau` equals the target for the verdict's exponents; absent
    /// for `Neither`.
    pub tau_target_hit: Option<bool>,
    pub nf_profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub kind: VerdictKind,
    pub exponents: Option<ExponentPair>,
    pub evidence: Evidence,
}

/// Decides from `N(f)`: zero means free with exponents `(mdr, d - 1 - mdr)`,
/// nonzero with every piece of dimension at most one means nearly free with
/// `(mdr, d - mdr)`. The Tjurina number is then checked against the target
/// for those exponents.
pub fn verdict_from_report(report: &SyzygyReport, mv: &MultiplicityVector) -> Result<FreenessVerdict> {
    let d = report.d as i64;
    let mdr = report.mdr as i64;
    let max = report.nf_dims.iter().copied().max().unwrap_or(0);
    let (kind, exponents) = match max {
        0 => (VerdictKind::Free, Some(ExponentPair { d1: mdr, d2: d - 1 - mdr, kind: ExponentKind::Free })),
        1 => (VerdictKind::NearlyFree, Some(ExponentPair { d1: mdr, d2: d - mdr, kind: ExponentKind::NearlyFree })),
        _ => (VerdictKind::Neither, None),
    };
    let tau_comb = tjurina_combinatorial(mv);
    if tau_comb != report.tau_alg as i64 {
        return Err(Error::InternalInconsistency(format!(
            "algebraic Tjurina number {} differs from combinatorial {tau_comb}",
            report.tau_alg
        )));
    }
    let tau_target_hit = exponents.map(|e| tjurina_target(d, e.d1, e.kind) == tau_comb);
    if tau_target_hit == Some(false) {
        return Err(Error::InternalInconsistency(format!(
            "{kind:?} with exponents {} but tau = {tau_comb}",
            exponents.expect("present")
        )));
    }
    if let Some(e) = exponents {
        if e.d1 > e.d2 {
            return Err(Error::InternalInconsistency(format!("exponents {e} are not ordered")));
        }
    }
    Ok(FreenessVerdict {
        kind,
        exponents,
        evidence: Evidence { mdr: report.mdr, tau_alg: report.tau_alg, tau_target_hit, nf_profile: report.nf_dims.clone() },
    })
}

/// Verdict for a polynomial via the Jacobian matrices.
pub fn verdict(f: &HomogPoly, mv: &MultiplicityVector) -> Result<FreenessVerdict> {
    verdict_from_report(&analyze_polynomial(f)?, mv)
}

/// Verdict for an arrangement via the fast route.
pub fn arrangement_verdict(arr: &Arrangement) -> Result<(SyzygyReport, FreenessVerdict)> {
    let report = analyze_arrangement(arr)?;
    let v = verdict_from_report(&report, &arr.incidence().multiplicity_vector())?;
    Ok((report, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn fast_route_matches_jacobian_route() {
        for name in ["triangle", "pencil3", "pencil5", "near_pencil4", "near_pencil6", "generic4", "generic5", "a1", "a2"] {
            let arr = corpus::by_name(name).unwrap();
            let fast = analyze_arrangement(&arr).unwrap();
            let slow = analyze_polynomial(&arr.polynomial()).unwrap();
            assert_eq!(fast, slow, "{name}");
        }
    }

    #[test]
    fn named_verdicts() {
        let (r, v) = arrangement_verdict(&corpus::a1(2)).unwrap();
        assert_eq!(v.kind, VerdictKind::NearlyFree);
        assert_eq!(v.exponents.map(|e| (e.d1, e.d2)), Some((3, 4)));
        assert_eq!((r.mdr, r.tau_alg), (3, 26));
        let (_, v) = arrangement_verdict(&corpus::generic(5)).unwrap();
        assert_eq!(v.kind, VerdictKind::Neither);
        let (_, v) = arrangement_verdict(&corpus::triangle()).unwrap();
        assert_eq!(v.exponents.map(|e| (e.d1, e.d2)), Some((1, 1)));
    }

    #[test]
    fn small_degrees() {
        for d in 1..=3 {
            let (r, v) = arrangement_verdict(&corpus::pencil(d)).unwrap();
            assert_eq!(v.kind, VerdictKind::Free, "{d}");
            assert_eq!(r.mdr, 0);
        }
    }

    #[test]
    fn larger_members() {
        let (r, v) = arrangement_verdict(&corpus::grid13()).unwrap();
        assert_eq!((v.kind, r.tau_alg, r.mdr), (VerdictKind::Free, 108, 6));
        let (r, v) = arrangement_verdict(&corpus::ceva3()).unwrap();
        assert_eq!((v.kind, r.tau_alg, r.mdr), (VerdictKind::Free, 48, 4));
        let (r, v) = arrangement_verdict(&corpus::a2(2)).unwrap();
        assert_eq!((v.kind, r.tau_alg, r.mdr), (VerdictKind::NearlyFree, 26, 3));
        let (r, v) = arrangement_verdict(&corpus::unit13()).unwrap();
        assert_eq!((v.kind, r.mdr), (VerdictKind::Free, 5));
    }

    #[test]
    fn nf_is_self_dual() {
        for (name, arr) in corpus::named() {
            let r = analyze_arrangement(&arr).unwrap();
            let n = r.nf_dims.len();
            for k in 0..n {
                assert_eq!(r.nf_dims[k], r.nf_dims[n - 1 - k], "{name}");
            }
        }
    }
}
