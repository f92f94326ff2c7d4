//! Named arrangements used throughout the tests, benches and CLI.

use crate::arrangement::Arrangement;
use crate::scalar::Scalar;

fn ints(rows: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_int_rows(rows).expect("corpus arrangements are reduced")
}

/// `xyz`.
pub fn triangle() -> Arrangement {
    ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

/// `d` lines through `(0:0:1)`: `y` and `x - i y` for `i = 0..d-2`.
pub fn pencil(d: usize) -> Arrangement {
    assert!(d >= 1);
    let mut rows = vec![[0, 1, 0]];
    rows.extend((0..d as i64 - 1).map(|i| [1, -i, 0]));
    ints(&rows)
}

/// A pencil of `d - 1` lines plus the line `z`.
pub fn near_pencil(d: usize) -> Arrangement {
    assert!(d >= 2);
    let mut rows: Vec<[i64; 3]> = vec![[0, 1, 0]];
    rows.extend((0..d as i64 - 2).map(|i| [1, -i, 0]));
    rows.push([0, 0, 1]);
    ints(&rows)
}

/// `d <= 6` lines with only double points: the coordinate lines and
/// `x + t y + t^2 z` for `t = 1, 2, 3`.
pub fn generic(d: usize) -> Arrangement {
    assert!((1..=6).contains(&d));
    ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 4], [1, 3, 9]][..d])
}

/// `(x^3 - y^3)(y^3 - z^3)(x^3 - z^3)`: nine lines, twelve triple points.
pub fn ceva3() -> Arrangement {
    let w = Scalar::omega();
    let powers = [Scalar::one(), w.clone(), &w * &w];
    let mut coeffs = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        for p in &powers {
            let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
            c[a] = Scalar::one();
            c[b] = -p;
            coeffs.push(c);
        }
    }
    Arrangement::from_coeffs(coeffs).expect("distinct lines")
}

/// `z (x - iz)_{i<6} (y - jz)_{j<6}`: two 7-fold points and 36 double points.
pub fn grid13() -> Arrangement {
    let mut rows = vec![[0, 0, 1]];
    rows.extend((0..6).map(|i| [1, 0, -i]));
    rows.extend((0..6).map(|j| [0, 1, -j]));
    ints(&rows)
}

/// `xyz(x-y)(x+z)(y+z)(x+ay+z)`, nearly free for `a != 0, 1`.
pub fn a1(a: i64) -> Arrangement {
    ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, 1], [0, 1, 1], [1, a, 1]])
}

/// `xyz(x-cy)(x+z)(y+z)(x-cy+(1-c)z)`.
pub fn a2(c: i64) -> Arrangement {
    ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -c, 0], [1, 0, 1], [0, 1, 1], [1, -c, 1 - c]])
}

/// The thirteen lines with coefficients in `{-1, 0, 1}`.
pub fn unit13() -> Arrangement {
    let mut coeffs = Vec::new();
    for a in -1..=1i64 {
        for b in -1..=1i64 {
            for c in -1..=1i64 {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        coeffs.push(v);
                    }
                }
            }
        }
    }
    ints(&coeffs)
}

/// Every named member, with a display name.
pub fn named() -> Vec<(String, Arrangement)> {
    let mut out = vec![("triangle".to_string(), triangle())];
    out.extend((3..=6).map(|d| (format!("pencil{d}"), pencil(d))));
    out.extend((4..=7).map(|d| (format!("near_pencil{d}"), near_pencil(d))));
    out.extend((4..=6).map(|d| (format!("generic{d}"), generic(d))));
    out.push(("ceva3".into(), ceva3()));
    out.push(("grid13".into(), grid13()));
    out.push(("a1".into(), a1(2)));
    out.push(("a2".into(), a2(2)));
    out
}

/// Looks up a member by name; accepts `a1:<a>` and `a2:<c>` for other
/// parameters.
pub fn by_name(name: &str) -> Option<Arrangement> {
    if let Some(v) = name.strip_prefix("a1:") {
        return v.parse().ok().filter(|&a: &i64| a != 0 && a != 1).map(a1);
    }
    if let Some(v) = name.strip_prefix("a2:") {
        return v.parse().ok().filter(|&c: &i64| c != 0 && c != 1).map(a2);
    }
    if name == "unit13" {
        return Some(unit13());
    }
    named().into_iter().find(|(n, _)| n == name).map(|(_, a)| a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(pencil(5).d(), 5);
        assert_eq!(near_pencil(5).d(), 5);
        assert_eq!(grid13().d(), 13);
        assert_eq!(unit13().d(), 13);
        assert_eq!(ceva3().d(), 9);
    }

    #[test]
    fn generic_has_only_double_points() {
        for d in 1..=6 {
            assert!(generic(d).multiple_points().iter().all(|p| p.multiplicity() == 2));
        }
    }

    #[test]
    fn a2_counts() {
        let mv = a2(2).incidence().multiplicity_vector();
        assert_eq!((mv.get(3), mv.get(2)), (5, 6));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("a1:3"), Some(a1(3)));
        assert_eq!(by_name("grid13"), Some(grid13()));
        assert!(by_name("a1:1").is_none());
        assert!(by_name("nothing").is_none());
    }
}
