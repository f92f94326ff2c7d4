//! Syzygy data of a line arrangement from two small families of linear
//! conditions instead of the large Jacobian matrices.
//!
//! * `AR(f)_m` from logarithmic derivations: `theta = (a, b, c)` of degree
//!   `m` lies in `D(A)` when `theta(alpha_H)` vanishes on every line `H`.
//!   Then `D(A) = S * Euler + AR(f)`, so `dim AR_m = dim D_m - dim S_(m-1)`,
//!   and `dim J_k = 3 dim S_(k-d+1) - dim AR_(k-d+1)`.
//! * `dim (S/J^sat)_k` from the local Tjurina algebras: at a point of
//!   multiplicity `m`, with local product of lines `g`, the Tjurina ideal is
//!   `(g_u, g_v)`, which contains every monomial of degree `2m - 3`. The
//!   saturation in degree `k` is the kernel of `S_k` to the sum of these
//!   algebras.

use crate::arrangement::Arrangement;
use crate::modp::{Echelon, PrimeField};
use crate::poly::{monomial_count_signed, monomials, Monomial};

struct LocalPoint {
    others: [usize; 2],
    coords: [u64; 3],
    /// Truncation degree `2m - 4` of the local algebra.
    top: u32,
    /// Index of `u^i v^j` in the truncated space, for `i + j <= top`.
    index: Vec<Vec<usize>>,
    ideal: Vec<Vec<u32>>,
    free: Vec<usize>,
}

pub(crate) struct ModArrangement {
    field: PrimeField,
    lines: Vec<[u64; 3]>,
    points: Vec<LocalPoint>,
    binom: Vec<Vec<u64>>,
}

fn bivariate_mul(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    // Homogeneous binary forms as coefficient lists in u^(n-j) v^j.
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

impl ModArrangement {
    pub(crate) fn new(arr: &Arrangement, p: u64) -> Option<Self> {
        let field = PrimeField::new(p);
        let lines = arr
            .lines()
            .iter()
            .map(|l| {
                let c = l.coeffs();
                Some([c[0].to_mod(&field)?, c[1].to_mod(&field)?, c[2].to_mod(&field)?])
            })
            .collect::<Option<Vec<_>>>()?;
        let d = arr.d();
        let size = 3 * d + 2;
        let mut binom = vec![vec![0u64; size + 1]; size + 1];
        for n in 0..=size {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = field.add(binom[n - 1][k - 1], if k < n { binom[n - 1][k] } else { 0 });
            }
        }
        let mut points = Vec::new();
        for mp in arr.multiple_points() {
            let chart = mp.coords.iter().position(|c| !c.is_zero())?;
            let others = match chart {
                0 => [1, 2],
                1 => [0, 2],
                _ => [0, 1],
            };
            let coords = [
                mp.coords[0].to_mod(&field)?,
                mp.coords[1].to_mod(&field)?,
                mp.coords[2].to_mod(&field)?,
            ];
            let m = mp.multiplicity() as u32;
            // Local product of the lines through the point, a binary form of degree m.
            let mut g = vec![1u64];
            for &i in &mp.incident {
                let l = lines[i];
                g = bivariate_mul(&field, &g, &[l[others[0]], l[others[1]]]);
            }
            // g_u and g_v, binary forms of degree m - 1.
            let gu: Vec<u64> =
                (0..m as usize).map(|j| field.mul(g[j], u64::from(m) - j as u64)).collect();
            let gv: Vec<u64> = (0..m as usize).map(|j| field.mul(g[j + 1], j as u64 + 1)).collect();
            let top = 2 * m - 4;
            let mut index = vec![Vec::new(); top as usize + 1];
            let mut n = 0;
            for (i, row) in index.iter_mut().enumerate() {
                for _ in 0..=(top as usize - i) {
                    row.push(n);
                    n += 1;
                }
            }
            let mut ideal = Vec::new();
            // Degree (m-1) + s for s = 0..=m-3, times each monomial u^(s-t) v^t.
            for s in 0..=(top as i64 - (m as i64 - 1)) {
                let s = s as usize;
                for t in 0..=s {
                    for gen in [&gu, &gv] {
                        let mut row = vec![0u32; n];
                        let deg = m as usize - 1 + s;
                        for (j, &c) in gen.iter().enumerate() {
                            let vexp = j + t;
                            let uexp = deg - vexp;
                            row[index[uexp][vexp]] = c as u32;
                        }
                        ideal.push(row);
                    }
                }
            }
            let mut ech = Echelon::new(&field, n);
            for r in &ideal {
                ech.insert(r.clone());
            }
            let free = ech.free_columns();
            if free.len() != ((m - 1) * (m - 1)) as usize {
                return None;
            }
            points.push(LocalPoint { others, coords, top, index, ideal, free });
        }
        Some(Self { field, lines, points, binom })
    }

    pub(crate) fn tau(&self) -> usize {
        self.points.iter().map(|p| p.free.len()).sum()
    }

    fn pow(&self, base: u64, e: u32) -> u64 {
        self.field.pow(base, u64::from(e))
    }

    /// `dim D(A)_m`.
    pub(crate) fn derivation_dim(&self, m: u32) -> usize {
        let f = &self.field;
        let mons = monomials(m);
        let ncols = 3 * mons.len();
        let mut ech = Echelon::new(f, ncols);
        for l in &self.lines {
            let c = l.iter().position(|&x| x != 0).expect("nonzero line");
            let inv = f.inv(l[c]);
            // Two independent points on the line.
            let mut basis = Vec::new();
            for j in 0..3 {
                if j != c {
                    let mut v = [0u64; 3];
                    v[j] = 1;
                    v[c] = f.neg(f.mul(l[j], inv));
                    basis.push(v);
                }
            }
            for t in 0..=u64::from(m) {
                if ech.is_full() {
                    return 0;
                }
                let q: [u64; 3] =
                    std::array::from_fn(|i| f.add(basis[0][i], f.mul(t, basis[1][i])));
                let vals: Vec<u64> = mons
                    .iter()
                    .map(|mu| f.mul(f.mul(self.pow(q[0], mu[0]), self.pow(q[1], mu[1])), self.pow(q[2], mu[2])))
                    .collect();
                let mut row = vec![0u32; ncols];
                for r in 0..3 {
                    if l[r] == 0 {
                        continue;
                    }
                    for (k, &v) in vals.iter().enumerate() {
                        row[r * mons.len() + k] = f.mul(l[r], v) as u32;
                    }
                }
                ech.insert(row);
            }
        }
        ncols - ech.rank()
    }

    /// `dim AR(f)_m`.
    pub(crate) fn ar_dim(&self, m: u32) -> usize {
        self.derivation_dim(m) - monomial_count_signed(i64::from(m) - 1)
    }

    /// `dim (S/J^sat)_k` for each requested degree.
    pub(crate) fn saturation_hilbert(&self, ks: &[u32]) -> Vec<usize> {
        let f = &self.field;
        let tau = self.tau();
        let echelons: Vec<Echelon<'_>> = self
            .points
            .iter()
            .map(|pt| {
                let n = pt.index.iter().map(Vec::len).sum();
                let mut e = Echelon::new(f, n);
                for r in &pt.ideal {
                    e.insert(r.clone());
                }
                e
            })
            .collect();
        ks.iter()
            .map(|&k| {
                let mut img = Echelon::new(f, tau);
                for mu in monomials(k) {
                    if img.is_full() {
                        break;
                    }
                    let mut row = Vec::with_capacity(tau);
                    for (pt, ech) in self.points.iter().zip(&echelons) {
                        self.taylor_reduced(pt, ech, mu, &mut row);
                    }
                    img.insert(row);
                }
                img.rank()
            })
            .collect()
    }

    fn taylor_reduced(&self, pt: &LocalPoint, ech: &Echelon<'_>, mu: Monomial, out: &mut Vec<u32>) {
        let f = &self.field;
        let [a, b] = pt.others;
        let (ea, eb) = (mu[a] as usize, mu[b] as usize);
        let mut v = vec![0u32; ech.ncols()];
        for i in 0..=ea.min(pt.top as usize) {
            let ci = f.mul(self.binom[ea][i], self.pow(pt.coords[a], (ea - i) as u32));
            if ci == 0 {
                continue;
            }
            for j in 0..=eb.min(pt.top as usize - i) {
                let cj = f.mul(self.binom[eb][j], self.pow(pt.coords[b], (eb - j) as u32));
                v[pt.index[i][j]] = f.mul(ci, cj) as u32;
            }
        }
        ech.reduce_in_place(&mut v);
        out.extend(pt.free.iter().map(|&c| v[c]));
    }
}

/// `dim S_k`, zero for negative `k`.
pub(crate) fn dim_s(k: i64) -> usize {
    monomial_count_signed(k)
}
