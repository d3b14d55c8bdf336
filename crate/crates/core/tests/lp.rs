mod common;

use branchproof::linalg::{rational, RatVector, Rational};
use branchproof::lp::{combine, is_empty, lp_optimize, reduce_certificate, FarkasCertificate, InequalitySystem, LpOutcome, Sense};
use common::{fm_is_empty, random_system};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sys(rows: &[(&[i64], i64)]) -> InequalitySystem {
    let mut k = InequalitySystem::new(rows[0].0.len());
    for (a, b) in rows {
        k.push(RatVector::from_i64s(a), rational(*b)).unwrap();
    }
    k
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

#[test]
fn optimize_examples() {
    let cube = sys(&[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)]);
    match lp_optimize(&cube, &RatVector::from_i64s(&[1, 1]), Sense::Max).unwrap() {
        LpOutcome::Optimal { value, point, .. } => assert_eq!((value, point), (rational(2), RatVector::from_i64s(&[1, 1]))),
        o => panic!("{o:?}"),
    }
    let bad = sys(&[(&[1], 0), (&[-1], -1)]);
    match lp_optimize(&bad, &RatVector::from_i64s(&[3]), Sense::Min).unwrap() {
        LpOutcome::Infeasible(c) => assert_eq!(c.multipliers, RatVector::from_i64s(&[1, 1])),
        o => panic!("{o:?}"),
    }
    match lp_optimize(&sys(&[(&[-1], 0)]), &RatVector::from_i64s(&[1]), Sense::Max).unwrap() {
        LpOutcome::Unbounded(ray) => assert_eq!(ray, RatVector::from_i64s(&[1])),
        o => panic!("{o:?}"),
    }
    assert!(lp_optimize(&cube, &RatVector::from_i64s(&[1]), Sense::Max).is_err());
}

#[test]
fn emptiness_examples() {
    assert_eq!(is_empty(&sys(&[(&[1], 0), (&[-1], -1)])).unwrap().multipliers, RatVector::from_i64s(&[1, 1]));
    assert!(is_empty(&sys(&[(&[1], 1), (&[-1], 0)])).is_none());
    assert!(is_empty(&sys(&[(&[2], 1), (&[-2], -1)])).is_none());
}

#[test]
fn reduction_examples() {
    let k = sys(&[(&[1], 0), (&[1], 0), (&[-1], -1), (&[-1], -1)]);
    let r = reduce_certificate(&k, &FarkasCertificate::new(RatVector::from_i64s(&[1, 1, 1, 1]))).unwrap();
    assert!(r.verify(&k));
    assert_eq!(r.nonzeros(), 2);
    let r7 = reduce_certificate(&k, &FarkasCertificate::new(RatVector::from_i64s(&[7, 7, 7, 7]))).unwrap();
    assert!(r7.verify(&k));
    let two = sys(&[(&[1], 0), (&[-1], -1)]);
    let r = reduce_certificate(&two, &FarkasCertificate::new(RatVector::from_i64s(&[1, 1]))).unwrap();
    assert_eq!(r.multipliers, RatVector::from_i64s(&[1, 1]));
    assert!(reduce_certificate(&two, &FarkasCertificate::new(RatVector::from_i64s(&[1, 0]))).is_err());
}

#[test]
fn emptiness_matches_elimination() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=6);
        let k = random_system(&mut rng, n, m, 3);
        assert_eq!(is_empty(&k).is_some(), fm_is_empty(&k), "{k:?}");
    }
}

fn check_outcome(k: &InequalitySystem, c: &RatVector, sense: Sense) -> Result<(), TestCaseError> {
    match lp_optimize(k, c, sense).unwrap() {
        LpOutcome::Optimal { value, point, dual } => {
            prop_assert!(k.contains(&point));
            prop_assert_eq!(dot(c, &point), value.clone());
            prop_assert!(dual.iter().all(|d| !d.is_negative()));
            let target = match sense {
                Sense::Max => c.clone(),
                Sense::Min => -c,
            };
            prop_assert_eq!(combine(k, &dual), target);
            let dual_value = dot(&dual, k.rhs());
            let primal_value = if sense == Sense::Max { dual_value } else { -dual_value };
            prop_assert_eq!(primal_value, value);
        }
        LpOutcome::Infeasible(cert) => {
            prop_assert!(cert.verify(k));
            prop_assert!(cert.multipliers.iter().all(|d| !d.is_negative()));
        }
        LpOutcome::Unbounded(ray) => {
            prop_assert!(k.rows().iter().all(|a| !dot(a, &ray).is_positive()));
            let gain = dot(c, &ray);
            let improving = if sense == Sense::Max { gain.is_positive() } else { gain.is_negative() };
            prop_assert!(improving);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn outcomes_carry_valid_certificates(seed in any::<u64>(), max in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=6);
        let k = random_system(&mut rng, n, m, 3);
        let c: RatVector = (0..n).map(|_| rational(rng.gen_range(-3..=3))).collect();
        check_outcome(&k, &c, if max { Sense::Max } else { Sense::Min })?;
    }

    #[test]
    fn reduced_certificates_are_sparse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let k = random_system(&mut rng, n, 8, 2);
        if let Some(cert) = is_empty(&k) {
            let r = reduce_certificate(&k, &cert.scaled(&rational(5))).unwrap();
            prop_assert!(r.verify(&k));
            prop_assert!(r.nonzeros() <= n + 1);
        }
    }
}
