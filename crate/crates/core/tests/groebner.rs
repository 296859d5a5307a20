use klein168::groebner::{
    buchberger, is_smooth_hypersurface, modular_image, projective_dimension, projective_dimension_report,
    smoothness_report, zeta_images, Mono, PrimeFieldPoly, DEFAULT_PRIMES,
};
use klein168::invariants::{catalog, SparsePoly};
use klein168::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 32003;

fn poly(n: usize, terms: &[(&[u32], u64)]) -> PrimeFieldPoly {
    PrimeFieldPoly::new(P, n, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
}

fn sparse(s: &str, n: usize) -> SparsePoly {
    SparsePoly::parse(s, n).unwrap()
}

fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|k| {
            exponent_vectors(n - 1, d - k).into_iter().map(move |mut v| {
                v.insert(0, k);
                v
            })
        })
        .collect()
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32) -> PrimeFieldPoly {
    let terms: Vec<(Vec<u32>, u64)> = exponent_vectors(n, d).into_iter().map(|e| (e, rng.gen_range(0..P))).collect();
    PrimeFieldPoly::new(P, n, terms).unwrap()
}

fn arb_sparse_poly(n: usize, max_deg: u32) -> impl Strategy<Value = PrimeFieldPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1u64..P), 1..=3).prop_map(move |ts| {
        let ts = ts.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > max_deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (e, c)
        });
        PrimeFieldPoly::new(P, n, ts).unwrap()
    })
}

#[test]
fn toy_staircase() {
    // x1^2 - x2 and x2^2: x1^4 lies in the ideal, leading terms x1^2, x2^2
    let f = poly(2, &[(&[2, 0], 1), (&[0, 1], P - 1)]);
    let g = poly(2, &[(&[0, 2], 1)]);
    let gb = buchberger(&[f, g]).unwrap();
    let mut lead: Vec<Vec<u32>> = gb.leading_monomials().iter().map(|m| m.exponents(2)).collect();
    lead.sort();
    assert_eq!(lead, [vec![0, 2], vec![2, 0]]);
    assert!(gb.contains(&poly(2, &[(&[4, 0], 1)])));
    assert!(!gb.contains(&poly(2, &[(&[3, 0], 1)])));
    assert_eq!(gb.affine_dimension(), 0);
}

#[test]
fn cyclic_three_roots() {
    // x+y+z, xy+yz+zx, xyz - 1: zero-dimensional of degree 6
    let gens = [
        poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]),
        poly(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]),
        poly(3, &[(&[1, 1, 1], 1), (&[0, 0, 0], P - 1)]),
    ];
    let gb = buchberger(&gens).unwrap();
    assert!(gb.is_reduced() && gb.s_pairs_reduce_to_zero());
    assert_eq!(gb.affine_dimension(), 0);
    let lead: Vec<Mono> = gb.leading_monomials();
    let standard = exponent_vectors(3, 0)
        .into_iter()
        .chain((1..=3).flat_map(|d| exponent_vectors(3, d)))
        .filter(|e| {
            let m = Mono::from_exponents(e).unwrap();
            !lead.iter().any(|l| l.divides(&m))
        })
        .count();
    assert_eq!(standard, 6);
}

#[test]
fn unit_and_empty_ideals() {
    let gb = buchberger(&[poly(2, &[(&[1, 0], 1), (&[0, 0], 1)]), poly(2, &[(&[1, 0], 1)])]).unwrap();
    assert!(gb.is_unit_ideal());
    assert_eq!(gb.affine_dimension(), -1);
    assert!(matches!(buchberger(&[]), Err(Error::EmptyGenerators)));
}

#[test]
fn input_validation() {
    let f = sparse("x1^2 + x2", 4);
    assert!(matches!(projective_dimension(&[f], &DEFAULT_PRIMES), Err(Error::NotHomogeneous)));
    let h = sparse("x1^2 + x2^2", 4);
    assert!(matches!(projective_dimension(&[h.clone()], &[]), Err(Error::InvalidArgument(_))));
    assert!(matches!(projective_dimension(&[h.clone()], &[31990]), Err(Error::BadPrime { .. })));
    assert!(matches!(projective_dimension(&[], &DEFAULT_PRIMES), Err(Error::EmptyGenerators)));
    let z = SparsePoly::parse("cyc(7; z)*x1 + x2", 4).unwrap();
    assert!(matches!(modular_image(&z, 32003), Err(Error::BadPrime { .. })));
}

#[test]
fn zeta_images_are_roots_of_unity() {
    for p in DEFAULT_PRIMES {
        let imgs = zeta_images(p, 7).unwrap();
        assert_eq!(imgs.len(), 6);
        for z in imgs {
            let mut acc = 1u64;
            for _ in 0..7 {
                acc = acc * z % p;
            }
            assert_eq!(acc, 1);
        }
    }
}

#[test]
fn regular_sequences_cut_down_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..200 {
        let k = case % 5;
        let gens: Vec<PrimeFieldPoly> = (0..k.max(1))
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_form(&mut rng, 4, d)
            })
            .collect();
        let gb = buchberger(&gens).unwrap();
        let expected = 4 - gens.len() as i64;
        assert_eq!(gb.affine_dimension(), expected, "case {case}");
        assert_eq!(gb.affine_dimension_by_subsets(), expected, "case {case}");
    }
}

#[test]
fn invariant_triples_are_finite() {
    let c = catalog();
    for set in [["Phi4", "Phi6", "Phi8p"], ["Phi4", "Phi6", "Phi14"], ["Phi4", "Phi8p", "Phi14"]] {
        let gens: Vec<SparsePoly> = set.iter().map(|n| c.get(n).unwrap().clone()).collect();
        let r = projective_dimension_report(&gens, &DEFAULT_PRIMES).unwrap();
        assert_eq!(r.dimension, 0, "{set:?}");
        assert_eq!(r.runs.len(), 2);
        assert_ne!(r.runs[0].prime, r.runs[1].prime);
    }
    let pair = vec![c.phi4.clone(), c.phi6.clone()];
    assert_eq!(projective_dimension(&pair, &DEFAULT_PRIMES).unwrap(), 1);
}

#[test]
fn smoothness_certificates() {
    let c = catalog();
    assert!(is_smooth_hypersurface(&c.phi4, &DEFAULT_PRIMES).unwrap());
    assert!(is_smooth_hypersurface(&c.hessian, &DEFAULT_PRIMES).unwrap());
    assert!(is_smooth_hypersurface(&c.klein, &DEFAULT_PRIMES).unwrap());
    let conic = sparse("x^2 + y^2 - z^2", 3);
    assert!(is_smooth_hypersurface(&conic, &DEFAULT_PRIMES).unwrap());
    let nodal = sparse("y^2*z - x^3 - x^2*z", 3);
    assert_eq!(smoothness_report(&nodal, &DEFAULT_PRIMES).unwrap().dimension, 0);
}

#[test]
fn disagreement_is_reported() {
    // determinant 7: smooth in characteristic 0, x^2 + (y + z)^2 modulo 7
    let f = sparse("x^2 + y^2 + 2*y*z + 8*z^2", 3);
    match smoothness_report(&f, &[7, 31991]) {
        Err(Error::PrimeDisagreement(msg)) => {
            assert!(msg.contains("p=7") && msg.contains("p=31991"));
            assert!(msg.matches("p=").count() >= 4);
        }
        other => panic!("expected disagreement, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_basis_is_independent_of_generator_order(
        gens in prop::collection::vec(arb_sparse_poly(3, 3), 1..=3),
        seed in any::<u64>(),
    ) {
        let gb = buchberger(&gens).unwrap();
        prop_assert!(gb.is_reduced());
        prop_assert!(gb.s_pairs_reduce_to_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut other: Vec<PrimeFieldPoly> = gens.iter().map(|g| g.scale(rng.gen_range(1..P))).collect();
        if gens.len() > 1 {
            other.push(gens[0].add(&gens[1].mul(&gens[0])));
        }
        other.shuffle(&mut rng);
        let gb2 = buchberger(&other).unwrap();
        prop_assert_eq!(gb.polys(), gb2.polys());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn staircase_matches_subset_search(gens in prop::collection::vec(arb_sparse_poly(4, 2), 1..=3)) {
        let gb = buchberger(&gens).unwrap();
        prop_assert_eq!(gb.affine_dimension(), gb.affine_dimension_by_subsets());
    }

    #[test]
    fn grevlex_is_a_monomial_order(
        a in prop::collection::vec(0u32..5, 4),
        b in prop::collection::vec(0u32..5, 4),
        c in prop::collection::vec(0u32..5, 4),
    ) {
        let (ma, mb, mc) = (
            Mono::from_exponents(&a).unwrap(),
            Mono::from_exponents(&b).unwrap(),
            Mono::from_exponents(&c).unwrap(),
        );
        prop_assert_eq!(ma.cmp(&mb), ma.mul(&mc).cmp(&mb.mul(&mc)));
        prop_assert!(ma.mul(&mc) >= ma);
        let divides = a.iter().zip(&b).all(|(x, y)| x <= y);
        prop_assert_eq!(ma.divides(&mb), divides);
        let l: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
        prop_assert_eq!(ma.lcm(&mb).exponents(4), l);
    }
}
