use klein168::data;
use klein168::diophantine::{
    castelnuovo, curve_orbit_sizes, orbit_sum_decomposition, representable_as_orbit_sum, rh_enumerate,
    BranchDatum, ORBIT_SIZES,
};
use proptest::prelude::*;

#[test]
fn sporadic_genera_table() {
    let expected: [(u32, [u32; 4]); 11] = [
        (3, [1, 0, 1, 1]),
        (8, [0, 1, 2, 0]),
        (10, [1, 1, 0, 1]),
        (15, [0, 2, 1, 0]),
        (15, [0, 0, 1, 3]),
        (17, [1, 0, 2, 0]),
        (19, [2, 0, 0, 1]),
        (22, [0, 3, 0, 0]),
        (22, [0, 1, 0, 3]),
        (24, [1, 1, 1, 0]),
        (29, [0, 0, 2, 2]),
    ];
    let rows = rh_enumerate(30).unwrap();
    let got: Vec<(u32, [u32; 4])> = rows.iter().map(|r| (r.genus, r.table_row())).collect();
    assert_eq!(got, expected);
    assert!(rows.iter().all(|r| r.quotient_genus == 0 && r.satisfies_identity()));
}

#[test]
fn enumeration_is_complete_by_brute_force() {
    for gmax in [10u32, 30, 60] {
        let mut brute = Vec::new();
        for gbar in 0..=1i64 {
            for a2 in 0..=8i64 {
                for a3 in 0..=8i64 {
                    for a4 in 0..=8i64 {
                        for a7 in 0..=8i64 {
                            let rhs = 168 * (2 * gbar - 2) + 84 * a2 + 112 * a3 + 126 * a4 + 144 * a7;
                            if rhs % 2 == 0 && (rhs + 2) / 2 >= 2 && (rhs + 2) / 2 <= gmax as i64 {
                                brute.push(((rhs + 2) / 2, gbar, a2, a3, a4, a7));
                            }
                        }
                    }
                }
            }
        }
        brute.sort();
        let mut got: Vec<(i64, i64, i64, i64, i64, i64)> = rh_enumerate(gmax)
            .unwrap()
            .iter()
            .map(|r| (r.genus as i64, r.quotient_genus as i64, r.a2 as i64, r.a3 as i64, r.a4 as i64, r.a7 as i64))
            .collect();
        got.sort();
        assert_eq!(got, brute, "g_max = {gmax}");
    }
}

#[test]
fn curve_orbits() {
    let sizes: Vec<usize> = curve_orbit_sizes(data::psl27_p3()).into_iter().collect();
    assert_eq!(sizes, [24, 42, 56, 84, 168]);
}

#[test]
fn castelnuovo_bounds() {
    assert_eq!(castelnuovo(6).unwrap(), 4);
    assert_eq!(castelnuovo(7).unwrap(), 6);
    assert_eq!(castelnuovo(14).unwrap(), 36);
    assert!(castelnuovo(2).is_err());
}

#[test]
fn orbit_sum_cases() {
    assert!(!representable_as_orbit_sum(60));
    assert_eq!(orbit_sum_decomposition(90), Some([2, 1, 0, 0, 0]));
    assert_eq!(orbit_sum_decomposition(120), Some([5, 0, 0, 0, 0]));
}

#[test]
fn rejects_small_genus_bound() {
    assert!(rh_enumerate(1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decompositions_sum_to_target(m in 0u64..2000) {
        match orbit_sum_decomposition(m) {
            Some(n) => {
                let total: u64 = n.iter().zip(ORBIT_SIZES).map(|(a, b)| a * b).sum();
                prop_assert_eq!(total, m);
            }
            None => {
                // every orbit size is even, and the gcd of all sizes is 2
                let reachable = (0..=m / 24).any(|a| {
                    (0..=(m - 24 * a) / 42).any(|b| (m - 24 * a - 42 * b) % 56 == 0 || {
                        let r = m - 24 * a - 42 * b;
                        (0..=r / 56).any(|c| (r - 56 * c) % 84 == 0)
                    })
                });
                prop_assert!(!reachable);
            }
        }
    }

    #[test]
    fn branch_data_satisfy_riemann_hurwitz(gmax in 2u32..80) {
        for r in rh_enumerate(gmax).unwrap() {
            prop_assert!(r.satisfies_identity());
            prop_assert_eq!(2 * r.genus as i64 - 2, BranchDatum::rhs(&r));
            prop_assert!(r.genus <= gmax);
        }
    }

    #[test]
    fn castelnuovo_is_monotone(d in 3u32..500) {
        prop_assert!(castelnuovo(d).unwrap() <= castelnuovo(d + 1).unwrap());
    }
}
