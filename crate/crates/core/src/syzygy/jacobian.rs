//! Graded linear algebra on the Jacobian ideal of an arbitrary homogeneous
//! polynomial. Each rank is taken modulo several primes; the maximum is a
//! lower bound for the exact rank and equals it unless every prime is unlucky.

use crate::error::{Error, Result};
use crate::modp::{Echelon, PrimeField};
use crate::par;
use crate::poly::{jacobian, monomial_count, monomial_index, monomial_name, monomials, HomogPoly, Monomial};

/// The partials of `f` reduced modulo one prime.
pub(crate) struct ModPartials {
    field: PrimeField,
    degree: u32,
    parts: [Vec<(Monomial, u32)>; 3],
}

impl ModPartials {
    fn new(f: &HomogPoly, p: u64) -> Option<Self> {
        let field = PrimeField::new(p);
        let j = jacobian(f);
        let mut parts: [Vec<(Monomial, u32)>; 3] = Default::default();
        for (slot, g) in parts.iter_mut().zip(&j) {
            for (m, c) in g.terms() {
                let v = c.to_mod(&field)? as u32;
                if v != 0 {
                    slot.push((*m, v));
                }
            }
        }
        Some(Self { field, degree: f.degree(), parts })
    }

    /// Dense `mu * f_r` in degree `|mu| + d - 1`.
    fn row(&self, r: usize, mu: Monomial) -> Vec<u32> {
        let deg = mu[0] + mu[1] + mu[2] + self.degree - 1;
        let mut out = vec![0u32; monomial_count(deg)];
        for (m, c) in &self.parts[r] {
            out[monomial_index([m[0] + mu[0], m[1] + mu[1], m[2] + mu[2]])] = *c;
        }
        out
    }

    /// Echelon basis of `J_k` (empty below degree `d - 1`).
    fn ideal_piece(&self, k: u32) -> Echelon<'_> {
        let mut ech = Echelon::new(&self.field, monomial_count(k));
        if k + 1 >= self.degree {
            let m = k + 1 - self.degree;
            'outer: for mu in monomials(m) {
                for r in 0..3 {
                    if ech.is_full() {
                        break 'outer;
                    }
                    ech.insert(self.row(r, mu));
                }
            }
        }
        ech
    }

    /// Rank of `(a, b, c) -> a f_x + b f_y + c f_z` on degree-`m` triples.
    fn image_rank(&self, m: i64) -> usize {
        if m < 0 {
            return 0;
        }
        self.ideal_piece(m as u32 + self.degree - 1).rank()
    }

    /// `dim (S/J^sat)_k` for each `k` in `ks`: the rank of
    /// `g -> (x^e g, y^e g, z^e g)` into `(S/J)^3` in degree `target(k) = k + e`.
    fn saturation_ranks(&self, ks: &[u32], target: impl Fn(u32) -> u32) -> Vec<usize> {
        let mut out = Vec::with_capacity(ks.len());
        let mut cache: Option<(u32, Echelon<'_>, Vec<usize>)> = None;
        for &k in ks {
            let t = target(k);
            if cache.as_ref().map(|c| c.0) != Some(t) {
                let ech = self.ideal_piece(t);
                let free = ech.free_columns();
                cache = Some((t, ech, free));
            }
            let (_, ech, free) = cache.as_ref().expect("cache filled");
            let e = t - k;
            let tau = free.len();
            let coords = |m: Monomial| -> Vec<u32> {
                let mut v = vec![0u32; ech.ncols()];
                v[monomial_index(m)] = 1;
                ech.reduce_in_place(&mut v);
                free.iter().map(|&c| v[c]).collect()
            };
            let mut img = Echelon::new(&self.field, 3 * tau);
            for g in monomials(k) {
                if img.is_full() {
                    break;
                }
                let mut row = Vec::with_capacity(3 * tau);
                for r in 0..3 {
                    let mut m = g;
                    m[r] += e;
                    row.extend(coords(m));
                }
                img.insert(row);
            }
            out.push(img.rank());
        }
        out
    }
}

fn per_prime<T: Send>(f: &HomogPoly, job: impl Fn(&ModPartials) -> T + Sync + Send) -> Result<Vec<T>> {
    let out: Vec<T> = par::map_collect(PrimeField::default_primes().to_vec(), |p| {
        ModPartials::new(f, p).map(|mp| job(&mp))
    })
    .into_iter()
    .flatten()
    .collect();
    if out.is_empty() {
        return Err(Error::InternalInconsistency("every prime divides a denominator".into()));
    }
    Ok(out)
}

fn max_rank(f: &HomogPoly, job: impl Fn(&ModPartials) -> usize + Sync + Send) -> Result<usize> {
    Ok(per_prime(f, job)?.into_iter().max().unwrap_or(0))
}

/// `dim AR(f)_m`: relations `(a, b, c)` of degree `m` with `a f_x + b f_y + c f_z = 0`.
pub fn ar_dimension(f: &HomogPoly, m: u32) -> Result<usize> {
    let rank = max_rank(f, |mp| mp.image_rank(i64::from(m)))?;
    Ok(3 * monomial_count(m) - rank)
}

/// Minimal degree of a Jacobian relation, searched up to `d - 1`.
pub fn mdr(f: &HomogPoly) -> Result<u32> {
    let d = f.degree();
    for m in 0..d.max(1) {
        if ar_dimension(f, m)? > 0 {
            return Ok(m);
        }
    }
    Err(Error::NoRelationFound(d.saturating_sub(1)))
}

/// `dim (S/J_f)_k`.
pub fn jf_hilbert(f: &HomogPoly, k: u32) -> Result<usize> {
    let m = i64::from(k) - i64::from(f.degree()) + 1;
    let rank = max_rank(f, |mp| mp.image_rank(m))?;
    Ok(monomial_count(k) - rank)
}

fn probes(d: u32) -> (u32, u32) {
    let a = (3 * i64::from(d) - 5).max(0) as u32;
    (a, a + 1)
}

/// Global Tjurina number: the stable value of the Hilbert function of
/// `S/J_f`, read at degrees `3d - 5` and `3d - 4`.
pub fn tau_algebraic(f: &HomogPoly) -> Result<usize> {
    let (a, b) = probes(f.degree());
    let (ha, hb) = (jf_hilbert(f, a)?, jf_hilbert(f, b)?);
    if ha != hb {
        return Err(Error::NotStabilized(ha, i64::from(a), hb, i64::from(b)));
    }
    Ok(ha)
}

fn nf_range(d: u32) -> Vec<u32> {
    let top = 3 * i64::from(d) - 6;
    (0..=top.max(-1)).map(|k| k as u32).collect()
}

/// `dim N(f)_k` for `0 <= k <= 3d - 6`, testing saturation inside the single
/// stable degree `D = 3d - 5`: `g` lies in the saturation exactly when
/// `x^(D-k) g, y^(D-k) g, z^(D-k) g` lie in `J_D`, because `J_D` is already
/// saturated there (checked via the Hilbert function).
pub fn nf_dims(f: &HomogPoly) -> Result<Vec<usize>> {
    let d = f.degree();
    let tau = tau_algebraic(f)?;
    let ks = nf_range(d);
    let (top, _) = probes(d);
    let jhat = elementwise_max(per_prime(f, |mp| mp.saturation_ranks(&ks, |_| top))?);
    combine(f, &ks, &jhat, tau)
}

/// `dim N(f)_k` with the literal saturation exponent `n`: `g` in degree `k`
/// belongs to the saturation when `x^n g, y^n g, z^n g` lie in `J_(k+n)`.
pub fn nf_dims_saturated(f: &HomogPoly, n: u32) -> Result<Vec<usize>> {
    let d = f.degree();
    let tau = tau_algebraic(f)?;
    let ks = nf_range(d);
    let jhat = elementwise_max(per_prime(f, |mp| mp.saturation_ranks(&ks, |k| k + n))?);
    combine(f, &ks, &jhat, tau)
}

fn elementwise_max(runs: Vec<Vec<usize>>) -> Vec<usize> {
    let mut it = runs.into_iter();
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, r| acc.into_iter().zip(r).map(|(a, b)| a.max(b)).collect())
}

fn combine(f: &HomogPoly, ks: &[u32], jhat: &[usize], tau: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(ks.len());
    for (&k, &hj) in ks.iter().zip(jhat) {
        let h = jf_hilbert(f, k)?;
        if hj > h || hj > tau {
            return Err(Error::InternalInconsistency(format!(
                "saturation has larger Hilbert function than J_f in degree {k}"
            )));
        }
        out.push(h - hj);
    }
    Ok(out)
}

/// The matrix of `(a, b, c) -> a f_x + b f_y + c f_z` on degree-`m` triples
/// as CSV of exact entries. Columns are the monomials of degree `m + d - 1`
/// in graded lexicographic order; rows are `(partial, monomial)` pairs.
pub fn jacobian_matrix_csv(f: &HomogPoly, m: u32) -> String {
    let j = jacobian(f);
    let target = m + f.degree() - 1;
    let cols = monomials(target);
    let mut out = String::from("# order=graded-lex; rows=(partial,monomial); columns=monomials of degree ");
    out.push_str(&format!("{target}\nrow"));
    for c in &cols {
        out.push(',');
        out.push_str(&monomial_name(*c));
    }
    out.push('\n');
    for (r, name) in ["f_x", "f_y", "f_z"].iter().enumerate() {
        for mu in monomials(m) {
            let prod = j[r].mul(&HomogPoly::from_terms(m, [(mu, crate::scalar::Scalar::one())]));
            out.push_str(&format!("{name}*{}", monomial_name(mu)));
            for c in &cols {
                out.push(',');
                out.push_str(&prod.coeff(*c).to_string());
            }
            out.push('\n');
        }
    }
    out
}

/// Exact dense matrix of the same map, for the fraction-free reference path.
pub fn jacobian_matrix_exact(f: &HomogPoly, m: u32) -> Vec<Vec<crate::scalar::Scalar>> {
    let j = jacobian(f);
    let cols = monomials(m + f.degree() - 1);
    let mut rows = Vec::new();
    for g in &j {
        for mu in monomials(m) {
            let prod = g.mul(&HomogPoly::from_terms(m, [(mu, crate::scalar::Scalar::one())]));
            rows.push(cols.iter().map(|c| prod.coeff(*c)).collect());
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::syzygy::exact::bareiss_rank;

    fn poly(name: &str) -> HomogPoly {
        corpus::by_name(name).unwrap().polynomial()
    }

    #[test]
    fn ar_dimension_examples() {
        let t = poly("triangle");
        assert_eq!(ar_dimension(&t, 0).unwrap(), 0);
        assert_eq!(ar_dimension(&t, 1).unwrap(), 2);
        assert_eq!(ar_dimension(&poly("pencil4"), 0).unwrap(), 1);
    }

    #[test]
    fn mdr_examples() {
        assert_eq!(mdr(&poly("pencil4")).unwrap(), 0);
        assert_eq!(mdr(&poly("triangle")).unwrap(), 1);
        assert_eq!(mdr(&poly("a1")).unwrap(), 3);
    }

    #[test]
    fn hilbert_and_tau() {
        let t = poly("triangle");
        assert_eq!(jf_hilbert(&t, 0).unwrap(), 1);
        for k in 4..8 {
            assert_eq!(jf_hilbert(&t, k).unwrap(), 3);
        }
        assert_eq!(tau_algebraic(&t).unwrap(), 3);
        assert_eq!(tau_algebraic(&poly("a1")).unwrap(), 26);
        assert_eq!(tau_algebraic(&poly("ceva3")).unwrap(), 48);
    }

    #[test]
    fn modular_rank_matches_fraction_free_reference() {
        for name in ["triangle", "pencil4", "near_pencil5", "generic5", "a1", "a2"] {
            let f = poly(name);
            for m in 0..4 {
                let exact = bareiss_rank(&jacobian_matrix_exact(&f, m));
                assert_eq!(3 * monomial_count(m) - exact, ar_dimension(&f, m).unwrap(), "{name} m={m}");
            }
        }
        let f = poly("ceva3");
        let exact = bareiss_rank(&jacobian_matrix_exact(&f, 4));
        assert_eq!(3 * monomial_count(4) - exact, ar_dimension(&f, 4).unwrap());
    }

    #[test]
    fn nf_examples() {
        assert!(nf_dims(&poly("triangle")).unwrap().iter().all(|&v| v == 0));
        let a1 = nf_dims(&poly("a1")).unwrap();
        assert_eq!(a1.iter().max(), Some(&1));
        let g5 = nf_dims(&poly("generic5")).unwrap();
        assert!(g5.iter().max().unwrap() >= &2, "{g5:?}");
    }

    #[test]
    fn saturation_exponent_is_stable() {
        for name in ["triangle", "pencil4", "near_pencil5", "generic4", "generic5", "a1"] {
            let f = poly(name);
            let d = f.degree();
            let base = nf_dims_saturated(&f, 3 * d).unwrap();
            assert_eq!(base, nf_dims_saturated(&f, 3 * d + 2).unwrap(), "{name}");
            assert_eq!(base, nf_dims(&f).unwrap(), "{name}");
        }
    }

    #[test]
    fn csv_has_header_and_shape() {
        let csv = jacobian_matrix_csv(&poly("triangle"), 1);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# order=graded-lex"));
        assert_eq!(lines[1], "row,x^3,x^2*y,x^2*z,x*y^2,x*y*z,x*z^2,y^3,y^2*z,y*z^2,z^3");
        assert_eq!(lines.len(), 2 + 9);
        assert_eq!(lines[2], "f_x*x,0,0,0,0,1,0,0,0,0,0");
    }
}
