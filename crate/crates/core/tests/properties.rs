use std::collections::BTreeMap;

use proptest::prelude::*;

use linefree::arrangement::{Arrangement, IncidenceStructure};
use linefree::corpus;
use linefree::diophantine::{enumerate_nonneg, Equation, LinearSystem};
use linefree::invariants::{ExponentKind, ExponentPair};
use linefree::restriction::{structural_checks, two_of_three, ziegler, DrFact};
use linefree::scalar::Scalar;
use linefree::syzygy::{analyze_arrangement, arrangement_verdict, VerdictKind};

fn small_corpus() -> Vec<Arrangement> {
    corpus::named().into_iter().map(|(_, a)| a).filter(|a| a.d() <= 7).collect()
}

fn int_arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::btree_set((-3i64..=3, -3i64..=3, -3i64..=3), 3..=9).prop_filter_map("reduced", |rows| {
        let mut seen: Vec<[i64; 3]> = Vec::new();
        for (a, b, c) in rows {
            let v = [a, b, c];
            let dup = seen.iter().any(|w| {
                let cross = [v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0]];
                cross == [0, 0, 0]
            });
            if v != [0, 0, 0] && !dup {
                seen.push(v);
            }
        }
        (seen.len() >= 3).then(|| Arrangement::from_int_rows(&seen).ok()).flatten()
    })
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Pairs of lines counted through their common point, from the expanded
/// point list.
fn pairs_through_points(inc: &IncidenceStructure) -> u64 {
    inc.expanded_points().iter().map(|p| choose2(p.len() as u64)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coordinate_changes_keep_lattice_and_mdr(
        pick in 0usize..64,
        entries in prop::array::uniform9((-4i64..=4, 1i64..=3)),
    ) {
        let arrs = small_corpus();
        let arr = &arrs[pick % arrs.len()];
        let m: [[Scalar; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| {
            let (n, q) = entries[3 * i + j];
            Scalar::ratio(n, q)
        }));
        prop_assume!(!linefree::arrangement::det3(&m).is_zero());
        let moved = arr.change_coordinates(&m).unwrap();
        prop_assert_eq!(moved.incidence(), arr.incidence());
        prop_assert_eq!(analyze_arrangement(&moved).unwrap().mdr, analyze_arrangement(arr).unwrap().mdr);
    }

    #[test]
    fn counting_identities(arr in int_arrangement()) {
        let inc = arr.incidence();
        let d = inc.d() as u64;
        let mv = inc.multiplicity_vector();
        let by_counts: u64 = mv.n.iter().map(|(&k, &c)| c * choose2(k as u64)).sum();
        prop_assert_eq!(by_counts, choose2(d));
        prop_assert_eq!(pairs_through_points(&inc), choose2(d));
        let mut on_lines: BTreeMap<usize, u64> = BTreeMap::new();
        for h in 0..inc.d() {
            let p = inc.line_profile(h).unwrap();
            let deg: usize = p.counts.iter().map(|(&i, &c)| (i - 1) * c).sum();
            prop_assert_eq!(deg, inc.d() - 1);
            for (&i, &c) in &p.counts {
                *on_lines.entry(i).or_default() += c as u64;
            }
            if inc.points_on_line(h).unwrap().iter().any(|pt| pt.len() >= 2) {
                prop_assert_eq!(ziegler(&inc, h).unwrap().total(), inc.d() - 1);
            }
        }
        for (&v, &n) in &mv.n {
            prop_assert_eq!(on_lines.get(&v).copied().unwrap_or(0), v as u64 * n);
        }
    }

    #[test]
    fn two_of_three_round_trip(d1 in 0i64..10, gap in 0i64..5) {
        let d2 = d1 + gap;
        let facts = [
            DrFact::AFree { d1, d2 },
            DrFact::BNearlyFree { d1, d2 },
            DrFact::RestrictionCount { count: d1 },
        ];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let k = 3 - i - j;
                    prop_assert_eq!(two_of_three(facts[i], facts[j]).unwrap(), facts[k]);
                }
            }
        }
        let wrong = two_of_three(facts[0], DrFact::RestrictionCount { count: d1 + 1 });
        prop_assert!(wrong.is_err());
    }
}

fn naive(sys: &LinearSystem) -> Vec<Vec<i64>> {
    let n = sys.var_names.len();
    let bounds: Vec<i64> = sys.bounds.iter().map(|b| b.unwrap()).collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        if sys.equations.iter().all(|e| e.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>() == e.rhs) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn random_system() -> impl Strategy<Value = LinearSystem> {
    (1usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(0i64..=8, n),
            prop::collection::vec((prop::collection::vec(-3i64..=3, n), -6i64..=12), 1..=3),
        )
            .prop_map(move |(bounds, eqs)| LinearSystem {
                var_names: (0..n).map(|i| format!("x{i}")).collect(),
                equations: eqs.into_iter().map(|(coeffs, rhs)| Equation { coeffs, rhs }).collect(),
                bounds: bounds.into_iter().map(Some).collect(),
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn enumerator_matches_grid_search(sys in random_system()) {
        let sols = enumerate_nonneg(&sys).unwrap();
        prop_assert!(sols.complete);
        prop_assert_eq!(sols.solutions, naive(&sys));
    }
}

#[test]
fn verdicts_are_sound_on_the_corpus() {
    for (name, arr) in corpus::named() {
        let (report, v) = arrangement_verdict(&arr).unwrap();
        let inc = arr.incidence();
        match v.kind {
            VerdictKind::Free | VerdictKind::NearlyFree => {
                let e = v.exponents.unwrap();
                assert_eq!(e.d1, report.mdr as i64, "{name}");
                let checks = structural_checks(&inc, e, None).unwrap();
                assert!(checks.upper_bound, "{name}: a line carries more than d2 + 1 points");
                if v.kind == VerdictKind::NearlyFree {
                    assert!(report.nf_dims.iter().all(|&n| n <= 1), "{name}");
                } else {
                    assert!(report.nf_dims.iter().all(|&n| n == 0), "{name}");
                }
            }
            VerdictKind::Neither => {
                assert!(report.nf_dims.iter().any(|&n| n >= 2), "{name}");
            }
        }
    }
}

#[test]
fn nearly_free_members_pass_the_upper_bound() {
    for arr in [corpus::a1(2), corpus::a1(3), corpus::a2(2), corpus::a2(5), corpus::generic(4)] {
        let (_, v) = arrangement_verdict(&arr).unwrap();
        assert_eq!(v.kind, VerdictKind::NearlyFree);
        let e = v.exponents.unwrap();
        assert_eq!(e.kind, ExponentKind::NearlyFree);
        assert!(structural_checks(&arr.incidence(), e, None).unwrap().upper_bound);
    }
    let bogus = ExponentPair { d1: 1, d2: 2, kind: ExponentKind::NearlyFree };
    assert!(!structural_checks(&corpus::near_pencil(6).incidence(), bogus, None).unwrap().upper_bound);
}
