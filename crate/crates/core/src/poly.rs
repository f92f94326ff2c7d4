//! Homogeneous polynomials in `x, y, z` with exact coefficients.
//!
//! Monomials of a fixed degree are indexed in graded lexicographic order:
//! `x^n, x^(n-1) y, x^(n-1) z, x^(n-2) y^2, ...`, i.e. descending in the `x`
//! exponent and then in the `y` exponent.

use std::collections::BTreeMap;
use std::fmt;

use crate::modp::PrimeField;
use crate::scalar::Scalar;

/// Exponent triple `(i, j, k)` for `x^i y^j z^k`.
pub type Monomial = [u32; 3];

pub fn monomial_count(degree: u32) -> usize {
    let n = degree as usize;
    (n + 1) * (n + 2) / 2
}

/// Number of monomials of degree `degree`, or 0 for negative degrees.
pub fn monomial_count_signed(degree: i64) -> usize {
    if degree < 0 {
        0
    } else {
        monomial_count(degree as u32)
    }
}

/// All monomials of the given degree in graded lexicographic order.
pub fn monomials(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// Position of `m` in [`monomials`] of its own degree.
#[inline]
pub fn monomial_index(m: Monomial) -> usize {
    let n = (m[0] + m[1] + m[2]) as usize;
    let s = n - m[0] as usize;
    s * (s + 1) / 2 + (s - m[1] as usize)
}

pub fn monomial_name(m: Monomial) -> String {
    let mut parts = Vec::new();
    for (e, v) in m.iter().zip(["x", "y", "z"]) {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogPoly {
    pub fn zero(degree: u32) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(0);
        p.add_term([0, 0, 0], c);
        p
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: &[Scalar; 3]) -> Self {
        let mut p = Self::zero(1);
        p.add_term([1, 0, 0], coeffs[0].clone());
        p.add_term([0, 1, 0], coeffs[1].clone());
        p.add_term([0, 0, 1], coeffs[2].clone());
        p
    }

    /// Builds a polynomial from terms; panics on a degree mismatch.
    pub fn from_terms<I>(degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m[0] + m[1] + m[2], self.degree, "monomial degree mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let mut out = HomogPoly::zero(self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca * cb);
            }
        }
        out
    }

    /// Formal partial derivative in variable `var` (0 = x, 1 = y, 2 = z).
    pub fn derivative(&self, var: usize) -> HomogPoly {
        let mut out = HomogPoly::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut dm = *m;
            dm[var] -= 1;
            out.add_term(dm, c * &Scalar::int(i64::from(m[var])));
        }
        out
    }

    /// Evaluates at a point with exact coordinates.
    pub fn eval(&self, pt: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in pt.iter().zip(m.iter()) {
                for _ in 0..e {
                    t = &t * v;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Dense coefficient vector over F_p in graded lexicographic order, or
    /// `None` if some coefficient has a denominator divisible by `p`.
    pub fn to_dense_mod(&self, field: &PrimeField) -> Option<Vec<u32>> {
        let mut out = vec![0u32; monomial_count(self.degree)];
        for (m, c) in &self.terms {
            out[monomial_index(*m)] = c.to_mod(field)? as u32;
        }
        Some(out)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Print in graded lexicographic order (largest x exponent first).
        let mut first = true;
        for m in self.terms.keys().rev() {
            let c = &self.terms[m];
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*{}", monomial_name(*m))?;
        }
        Ok(())
    }
}

/// The partial derivatives `(f_x, f_y, f_z)`.
pub fn jacobian(f: &HomogPoly) -> [HomogPoly; 3] {
    [f.derivative(0), f.derivative(1), f.derivative(2)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> HomogPoly {
        let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        c[i] = Scalar::one();
        HomogPoly::linear(&c)
    }

    #[test]
    fn monomial_indexing_is_consistent() {
        for n in 0..8 {
            let ms = monomials(n);
            assert_eq!(ms.len(), monomial_count(n));
            for (i, m) in ms.iter().enumerate() {
                assert_eq!(monomial_index(*m), i);
            }
        }
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }

    #[test]
    fn jacobian_of_xyz() {
        let f = var(0).mul(&var(1)).mul(&var(2));
        let [fx, fy, fz] = jacobian(&f);
        assert_eq!(fx, var(1).mul(&var(2)));
        assert_eq!(fy, var(0).mul(&var(2)));
        assert_eq!(fz, var(0).mul(&var(1)));
    }

    #[test]
    fn jacobian_of_x2y() {
        let f = var(0).mul(&var(0)).mul(&var(1));
        let [fx, fy, fz] = jacobian(&f);
        assert_eq!(fx, HomogPoly::from_terms(2, [([1, 1, 0], Scalar::int(2))]));
        assert_eq!(fy, var(0).mul(&var(0)));
        assert!(fz.is_zero());
        assert_eq!(fz.degree(), 2);
    }

    #[test]
    fn jacobian_of_x_minus_y_times_z() {
        let l = HomogPoly::linear(&[Scalar::one(), Scalar::int(-1), Scalar::zero()]);
        let f = l.mul(&var(2));
        let [fx, fy, fz] = jacobian(&f);
        assert_eq!(fx, var(2));
        assert_eq!(fy, HomogPoly::linear(&[Scalar::zero(), Scalar::zero(), Scalar::int(-1)]));
        assert_eq!(fz, l);
    }

    #[test]
    fn euler_identity() {
        let l1 = HomogPoly::linear(&[Scalar::one(), Scalar::int(2), Scalar::ratio(1, 3)]);
        let l2 = HomogPoly::linear(&[Scalar::omega(), Scalar::int(-1), Scalar::one()]);
        let f = l1.mul(&l2).mul(&var(1));
        let j = jacobian(&f);
        let mut lhs = HomogPoly::zero(3);
        for (i, d) in j.iter().enumerate() {
            for (m, c) in var(i).mul(d).terms() {
                lhs.add_term(*m, c.clone());
            }
        }
        let mut rhs = HomogPoly::zero(3);
        for (m, c) in f.terms() {
            rhs.add_term(*m, c * &Scalar::int(3));
        }
        assert_eq!(lhs, rhs);
    }
}
