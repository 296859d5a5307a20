use klein168::data;
use klein168::linalg::CycMatrix;
use klein168::{CycNum, Error};
use proptest::prelude::*;

fn small_int_matrix(n: usize) -> impl Strategy<Value = CycMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        CycMatrix::from_fn(n, n, 1, |i, j| CycNum::from_int(1, v[i * n + j]))
    })
}

fn cyc7_matrix(n: usize) -> impl Strategy<Value = CycMatrix> {
    prop::collection::vec((-2i64..=2, 0i64..7), n * n).prop_map(move |v| {
        CycMatrix::from_fn(n, n, 7, |i, j| {
            let (a, k) = v[i * n + j];
            CycNum::zeta_pow(7, k).scale_int(a)
        })
    })
}

/// Cofactor expansion, an independent determinant.
fn cofactor_det(m: &CycMatrix) -> CycNum {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = CycNum::zero(m.conductor());
    for j in 0..n {
        let minor = CycMatrix::from_fn(n - 1, n - 1, m.conductor(), |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j) * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_cofactor_expansion(m in cyc7_matrix(4)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (cyc7_matrix(3), cyc7_matrix(3))) {
        let ab = a.mat_mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn inverse_or_singular(m in cyc7_matrix(3)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(m.mat_mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mat_mul(&m).unwrap().is_identity());
            }
            Err(Error::Singular) => prop_assert!(m.det().unwrap().is_zero()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn rank_nullity(m in small_int_matrix(4)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(CycNum::is_zero));
        }
    }
}

#[test]
fn generators_have_determinant_one() {
    for g in data::sl27_p3_generators() {
        assert!(g.det().unwrap().is_one());
    }
}

#[test]
fn eigenspaces_of_generators() {
    let gens = data::sl27_p3_generators();
    for g in &gens {
        let order = g.order(1000).unwrap();
        let spaces = g.root_of_unity_eigenspaces(order).unwrap();
        assert_eq!(spaces.iter().map(|(_, s)| s.dim()).sum::<usize>(), 4);
        for (lam, s) in &spaces {
            for v in s.basis() {
                let gv = g.apply(v).unwrap();
                for (a, b) in gv.iter().zip(v) {
                    let (x, y) = CycNum::to_common(a, &(lam * b));
                    assert_eq!(x, y);
                }
            }
        }
    }
}

#[test]
fn shape_errors() {
    let a = CycMatrix::identity(3, 7);
    let b = CycMatrix::identity(4, 7);
    assert!(matches!(a.mat_mul(&b), Err(Error::ShapeMismatch(_))));
    assert!(CycMatrix::from_rows(vec![]).is_err());
}
