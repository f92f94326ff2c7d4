//! Fraction-free elimination over Z[w], the reference path for ranks.

use crate::scalar::Scalar;

/// Rank of an exact matrix by Bareiss elimination. Rows are first scaled to
/// integral entries; every intermediate entry is then a minor of the input,
/// so the divisions below are exact.
pub fn bareiss_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(num_bigint::BigInt::from(1), |acc, c| {
                num_integer::Integer::lcm(&acc, &c.denominator_lcm())
            });
            let s = Scalar::rational(num_rational::BigRational::from_integer(lcm));
            r.iter().map(|c| c * &s).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = Scalar::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..ncols {
                let num = &(&prow[col] * &row[j]) - &(&factor * &prow[j]);
                row[j] = num.div(&prev).expect("nonzero previous pivot");
            }
            row[col] = Scalar::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
