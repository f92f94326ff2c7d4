//! Arithmetic modulo word-sized primes and incremental row echelon forms.
//!
//! Ranks over F_p of a reduction of an exact matrix are lower bounds for the
//! exact rank, so callers combine several primes and keep the maximum.

use std::sync::OnceLock;

/// Primes `p < 2^31` with `p = 1 mod 3`, so that F_p contains a primitive cube
/// root of unity to stand in for `w`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    barrett: u64,
    omega: u64,
}

const PRIME_COUNT: usize = 3;

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 3 && p < (1 << 31) && p % 3 == 1, "unsupported modulus {p}");
        let barrett = (u128::from(u64::MAX) / u128::from(p)) as u64;
        let mut field = Self { p, barrett, omega: 0 };
        field.omega = (2..p)
            .map(|g| field.pow(g, (p - 1) / 3))
            .find(|&r| r != 1)
            .expect("p = 1 mod 3 has a primitive cube root of unity");
        field
    }

    /// The fixed, deterministic prime list used by the modular rank path.
    pub fn default_primes() -> &'static [u64] {
        static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
        PRIMES.get_or_init(|| {
            let mut out = Vec::with_capacity(PRIME_COUNT);
            let mut candidate: u64 = (1 << 31) - 1;
            while out.len() < PRIME_COUNT {
                if candidate % 3 == 1 && is_prime(candidate) {
                    out.push(candidate);
                }
                candidate -= 2;
            }
            out
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    /// Reduces `x < p^2 + p` (anything below 2^64 is fine) into `[0, p)`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.barrett)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Semi-reduced row echelon basis built by inserting vectors one at a time.
///
/// Each stored row has a leading 1 at its pivot and zeros at the pivots of
/// every row inserted before it, so reducing a vector against the rows in
/// insertion order clears all pivot positions. The reduced vector is the
/// unique representative of its coset with zeros there.
#[derive(Clone, Debug)]
pub struct Echelon<'a> {
    field: &'a PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl<'a> Echelon<'a> {
    pub fn new(field: &'a PrimeField, ncols: usize) -> Self {
        Self { field, ncols, rows: Vec::new(), pivots: Vec::new(), is_pivot: vec![false; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.is_pivot[col]
    }

    /// Columns without a pivot, in increasing order: coordinates on the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot[c]).collect()
    }

    pub fn reduce_in_place(&self, v: &mut [u32]) {
        let f = self.field;
        let p = f.modulus();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = u64::from(v[piv]);
            if c == 0 {
                continue;
            }
            let m = p - c;
            for (x, &r) in v[piv..].iter_mut().zip(&row[piv..]) {
                if r != 0 {
                    *x = f.reduce(u64::from(*x) + m * u64::from(r)) as u32;
                }
            }
        }
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        self.reduce_in_place(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let scale = f.inv(u64::from(v[piv]));
        for x in v[piv..].iter_mut() {
            if *x != 0 {
                *x = f.mul(u64::from(*x), scale) as u32;
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        self.is_pivot[piv] = true;
        true
    }
}

/// Rank over F_p of the matrix whose rows are yielded by `rows`.
pub fn rank_of_rows<I>(field: &PrimeField, ncols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let mut ech = Echelon::new(field, ncols);
    for row in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(row);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(PrimeField::default_primes()[0])
    }

    #[test]
    fn default_primes_are_one_mod_three() {
        let primes = PrimeField::default_primes();
        assert_eq!(primes.len(), PRIME_COUNT);
        for &p in primes {
            assert_eq!(p % 3, 1);
            assert!(is_prime(p));
            let f = PrimeField::new(p);
            let w = f.omega();
            assert_ne!(w, 1);
            assert_eq!(f.add(f.add(f.mul(w, w), w), 1), 0);
        }
    }

    #[test]
    fn barrett_matches_plain_remainder() {
        let f = field();
        let p = f.modulus();
        for x in [0, 1, p - 1, p, p + 1, (p - 1) * (p - 1), (p - 1) * (p - 1) + p - 1, u64::MAX / 4] {
            assert_eq!(f.reduce(x), x % p, "{x}");
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = field();
        let m = |rows: &[&[i64]]| -> Vec<Vec<u32>> {
            rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x) as u32).collect()).collect()
        };
        assert_eq!(rank_of_rows(&f, 3, m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank_of_rows(&f, 3, m(&[&[0, 0, 0]])), 0);
        assert_eq!(rank_of_rows(&f, 2, m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
    }

    #[test]
    fn reduction_gives_coset_representatives() {
        let f = field();
        let mut ech = Echelon::new(&f, 3);
        ech.insert(vec![1, 1, 0]);
        ech.insert(vec![0, 1, 1]);
        let mut a = vec![1, 0, 0];
        let mut b = vec![0, 1, 0];
        ech.reduce_in_place(&mut a);
        ech.reduce_in_place(&mut b);
        // e1 + e2 lies in the span, so the representatives cancel.
        assert_eq!(&a[..2], &[0, 0]);
        assert_eq!(f.add(u64::from(a[2]), u64::from(b[2])), 0);
        assert_eq!(ech.free_columns(), vec![2]);
    }
}
