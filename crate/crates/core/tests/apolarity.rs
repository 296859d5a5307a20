use klein168::apolarity::{
    apolar_embedding, catalecticant, final_hexagon, is_degenerate, linear_form, power_sum, powersum_solve,
    spusk_report, verify_spusk, z4_hexagon, HexagonSystem, SpuskRoute,
};
use klein168::invariants::{catalog, SparsePoly};
use klein168::{CycNum, Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> SparsePoly {
    SparsePoly::parse(s, 3).unwrap()
}

fn int(v: i64) -> CycNum {
    CycNum::from_int(1, v)
}

fn random_line(rng: &mut ChaCha8Rng) -> SparsePoly {
    loop {
        let c: Vec<CycNum> = (0..3).map(|_| int(rng.gen_range(-5..=5))).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return linear_form(&c);
        }
    }
}

fn random_lines(rng: &mut ChaCha8Rng, k: usize) -> Vec<SparsePoly> {
    let mut out: Vec<SparsePoly> = Vec::new();
    while out.len() < k {
        let l = random_line(rng);
        // skip lines proportional to earlier ones
        if out.iter().all(|m| catalecticant(&m.pow(4).checked_add(&l.pow(4)).unwrap()).unwrap().rank() == 2) {
            out.push(l);
        }
    }
    out
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=6);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

#[test]
fn klein_quartic_is_not_degenerate() {
    let f = &catalog().klein_eps;
    assert!(!is_degenerate(f).unwrap());
    assert_eq!(catalecticant(f).unwrap().rank(), 6);
    assert!(!is_degenerate(&catalog().klein).unwrap());
    assert!(is_degenerate(&p("x^4 + y^4")).unwrap());
}

#[test]
fn catalecticant_rank_of_power_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..200 {
        let k = 1 + case % 8;
        let lines = random_lines(&mut rng, k);
        let mu: Vec<CycNum> = (0..k).map(|_| int(nonzero(&mut rng))).collect();
        let f = power_sum(&lines, &mu).unwrap();
        assert_eq!(catalecticant(&f).unwrap().rank(), k.min(6), "case {case}");
    }
}

#[test]
fn catalecticant_is_symmetric_with_factorial_weights() {
    let c = catalecticant(&p("x^4")).unwrap();
    let m = c.matrix();
    assert_eq!(c.monomials()[0], vec![2, 0, 0]);
    assert_eq!(m.get(0, 0), &CycNum::from_int(m.conductor(), 24));
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(m.get(i, j), m.get(j, i));
        }
    }
}

#[test]
fn multipliers_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..200 {
        let lines = random_lines(&mut rng, 6);
        let mu: Vec<CycNum> = if case % 4 == 0 {
            vec![int(1); 6]
        } else {
            (0..6)
                .map(|_| CycNum::from_rational(1, &Rational::new(nonzero(&mut rng).into(), rng.gen_range(1i64..=5).into())))
                .collect()
        };
        let f = power_sum(&lines, &mu).unwrap();
        let r = powersum_solve(&f, &lines).unwrap();
        assert!(r.is_solved() && r.unique, "case {case}");
        assert_eq!(r.rank, 6);
        let got = r.multipliers.unwrap();
        for (a, b) in got.iter().zip(&mu) {
            let (x, y) = CycNum::to_common(a, b);
            assert_eq!(x, y, "case {case}");
        }

        // rescaling a line by c divides its multiplier by c^4
        let c = nonzero(&mut rng);
        let mut scaled = lines.clone();
        scaled[0] = scaled[0].scale_int(c);
        let r2 = powersum_solve(&f, &scaled).unwrap();
        let m0 = r2.multipliers.unwrap()[0].clone();
        let expected = mu[0].scale(&Rational::new(1.into(), (c.pow(4)).into()));
        let (x, y) = CycNum::to_common(&m0, &expected);
        assert_eq!(x, y, "case {case}");
    }
}

#[test]
fn hexagon_systems_are_inconsistent() {
    let f = &catalog().klein_eps;
    for lines in [z4_hexagon(), final_hexagon()] {
        let r = powersum_solve(f, &lines).unwrap();
        assert!(r.is_inconsistent());
        assert_eq!(r.status(), "inconsistent");
        assert_eq!((r.rank, r.augmented_rank), (6, 7));
        assert!(r.multipliers.is_none());
    }
    let sys = HexagonSystem::new(f, &z4_hexagon()).unwrap();
    assert_eq!(sys.conductor() % 4, 0);
    assert_eq!(sys.conductor() % 7, 0);
}

#[test]
fn hexagon_input_validation() {
    let f = &catalog().klein_eps;
    let lines = final_hexagon();
    assert!(matches!(powersum_solve(f, &lines[..5]), Err(Error::InvalidArgument(_) | Error::ShapeMismatch(_))));
    let mut with_zero = lines.clone();
    with_zero[2] = SparsePoly::zero(3, 1);
    assert!(powersum_solve(f, &with_zero).is_err());
    assert!(powersum_solve(&p("x^3"), &lines).is_err());
}

#[test]
fn apolar_embeddings() {
    let c = catalog();
    for f in [&c.klein_eps, &c.klein] {
        let e = apolar_embedding(f).unwrap();
        assert!(e.is_injective());
        assert_eq!(e.rank, 3);
        assert_eq!(e.partials.len(), 3);
    }
    assert!(!apolar_embedding(&p("x^4")).unwrap().is_injective());
}

#[test]
fn spusk_on_klein_models() {
    let c = catalog();
    assert!(verify_spusk(&c.klein_eps).unwrap());
    assert!(verify_spusk(&c.klein).unwrap());
    for f in [&c.klein_eps, &c.klein] {
        let r = spusk_report(f, SpuskRoute::Tensor).unwrap();
        assert_eq!(r.checks, 90);
        assert_eq!(r.failures, 0);
        assert!(spusk_report(f, SpuskRoute::Symmetrized).unwrap().holds());
    }
}

#[test]
fn spusk_on_generic_quartics() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut symmetrized_failures = 0;
    for _ in 0..6 {
        let lines = random_lines(&mut rng, 7);
        let mu: Vec<CycNum> = (0..7).map(|_| int(nonzero(&mut rng))).collect();
        let f = power_sum(&lines, &mu).unwrap();
        assert!(verify_spusk(&f).unwrap());
        if !spusk_report(&f, SpuskRoute::Symmetrized).unwrap().holds() {
            symmetrized_failures += 1;
        }
    }
    // the symmetrized route is not a valid substitute away from the Klein models
    assert!(symmetrized_failures > 0);
    assert_eq!(verify_spusk(&p("x^4 + y^4")), Err(Error::Degenerate));
}
