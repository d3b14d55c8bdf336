mod common;

use branchproof::generators::pn_polytope;
use branchproof::linalg::{ratio, rational, IntVector, Integer, RatVector};
use branchproof::lp::{find_point, InequalitySystem};
use branchproof::polytope::{
    apply_cg, apply_cg_list, contains_set, face, implies_r, l1_radius_bound, same_set, support_value, CutRhs, Halfspace, SupportValue,
};
use common::{integer_points, push_box, random_system};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn unit_square() -> InequalitySystem {
    let mut k = InequalitySystem::new(2);
    push_box(&mut k, 0, 1);
    k
}

fn empty_1d() -> InequalitySystem {
    let mut k = InequalitySystem::new(1);
    k.push(RatVector::from_i64s(&[1]), rational(0)).unwrap();
    k.push(RatVector::from_i64s(&[-1]), rational(-1)).unwrap();
    k
}

fn corner() -> InequalitySystem {
    unit_square().with_row(RatVector::from_i64s(&[1, 1]), ratio(3, 2)).unwrap()
}

#[test]
fn support_examples() {
    assert_eq!(support_value(&unit_square(), &RatVector::from_i64s(&[1, 1])).unwrap(), SupportValue::Finite(rational(2)));
    assert_eq!(support_value(&empty_1d(), &RatVector::from_i64s(&[5])).unwrap(), SupportValue::NegInfinity);
    assert_eq!(support_value(&pn_polytope(2).unwrap(), &RatVector::from_i64s(&[1, 0])).unwrap(), SupportValue::Finite(ratio(1, 2)));
}

#[test]
fn cg_examples() {
    let (k, cut) = apply_cg(&corner(), &IntVector::from_i64s(&[1, 1])).unwrap();
    assert_eq!(cut.rhs, CutRhs::Finite(Integer::from(1)));
    assert_eq!(support_value(&k, &RatVector::from_i64s(&[1, 1])).unwrap(), SupportValue::Finite(rational(1)));

    let (k, cut) = apply_cg(&unit_square(), &IntVector::from_i64s(&[1, 0])).unwrap();
    assert_eq!(cut.rhs, CutRhs::Finite(Integer::from(1)));
    assert!(same_set(&k, &unit_square()).unwrap());

    let mut half = InequalitySystem::new(1);
    half.push_equality(RatVector::from_i64s(&[1]), ratio(1, 2)).unwrap();
    push_box(&mut half, 0, 1);
    let (k, cut) = apply_cg(&half, &IntVector::from_i64s(&[1])).unwrap();
    assert_eq!(cut.rhs, CutRhs::Finite(Integer::from(0)));
    assert!(find_point(&k).is_err());

    assert_eq!(apply_cg(&empty_1d(), &IntVector::from_i64s(&[1])).unwrap().1.rhs, CutRhs::NegInfinity);
}

#[test]
fn cg_list_examples() {
    assert_eq!(apply_cg_list(&corner(), &[]).unwrap(), corner());
    assert!(find_point(&apply_cg_list(&empty_1d(), &[IntVector::from_i64s(&[3])]).unwrap()).is_err());
    let d = IntVector::from_i64s(&[1, 1]);
    let once = apply_cg_list(&corner(), std::slice::from_ref(&d)).unwrap();
    let twice = apply_cg_list(&corner(), &[d.clone(), d]).unwrap();
    assert!(same_set(&once, &twice).unwrap());
}

#[test]
fn face_examples() {
    let f = face(&unit_square(), &IntVector::from_i64s(&[1, 0])).unwrap();
    let mut expect = unit_square();
    expect.push_equality(RatVector::from_i64s(&[1, 0]), rational(1)).unwrap();
    assert!(same_set(&f, &expect).unwrap());

    let mut seg = InequalitySystem::new(2);
    seg.push_equality(RatVector::from_i64s(&[0, 1]), ratio(1, 2)).unwrap();
    seg.push(RatVector::from_i64s(&[1, 0]), rational(1)).unwrap();
    seg.push(RatVector::from_i64s(&[-1, 0]), rational(0)).unwrap();
    let f = face(&seg, &IntVector::from_i64s(&[1, 0])).unwrap();
    assert_eq!(find_point(&f).unwrap(), RatVector::from_ratios(&[(1, 1), (1, 2)]));

    let f = face(&unit_square(), &IntVector::from_i64s(&[1, 1])).unwrap();
    assert_eq!(find_point(&f).unwrap(), RatVector::from_i64s(&[1, 1]));
    assert!(face(&empty_1d(), &IntVector::from_i64s(&[1])).is_err());
}

#[test]
fn implication_examples() {
    let mut le0 = InequalitySystem::new(1);
    le0.push(RatVector::from_i64s(&[1]), rational(0)).unwrap();
    let t = Halfspace::integral(&IntVector::from_i64s(&[7]), &Integer::from(3));
    assert!(implies_r(&le0, &t, &Integer::from(2), false).unwrap());
    let mut le1 = InequalitySystem::new(1);
    le1.push(RatVector::from_i64s(&[1]), rational(1)).unwrap();
    assert!(!implies_r(&le1, &t, &Integer::from(2), false).unwrap());
    assert!(implies_r(&empty_1d(), &t, &Integer::from(1), true).unwrap());
}

#[test]
fn radius_examples() {
    assert_eq!(l1_radius_bound(&unit_square()).unwrap(), Integer::from(2));
    assert_eq!(l1_radius_bound(&pn_polytope(2).unwrap()).unwrap(), Integer::from(1));
    let mut ray = InequalitySystem::new(1);
    ray.push(RatVector::from_i64s(&[-1]), rational(0)).unwrap();
    assert!(l1_radius_bound(&ray).is_err());
}

fn random_2d(rng: &mut StdRng) -> InequalitySystem {
    let m = rng.gen_range(0..=4);
    let mut k = random_system(rng, 2, m, 3);
    push_box(&mut k, -3, 3);
    k
}

fn random_cuts(rng: &mut StdRng, len: usize) -> Vec<IntVector> {
    (0..len).map(|_| IntVector::from_i64s(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]
    #[test]
    fn cuts_keep_integer_points(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_2d(&mut rng);
        let len = rng.gen_range(1..=4);
        let out = apply_cg_list(&k, &random_cuts(&mut rng, len)).unwrap();
        for p in integer_points(&k, 3) {
            prop_assert!(out.contains(&p.to_rational()));
        }
    }

    #[test]
    fn cut_result_is_a_subset(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_2d(&mut rng);
        let a = random_cuts(&mut rng, 1).remove(0);
        prop_assert!(contains_set(&k, &apply_cg(&k, &a).unwrap().0).unwrap());
    }

    #[test]
    fn implication_is_monotone(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (m1, m2) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
        let s = random_system(&mut rng, 2, m1, 3);
        let extra = random_system(&mut rng, 2, m2, 3);
        let t = Halfspace::integral(&random_cuts(&mut rng, 1).remove(0), &Integer::from(rng.gen_range(-4..=4)));
        let r = Integer::from(rng.gen_range(1..=4));
        for strict in [false, true] {
            if implies_r(&s, &t, &r, strict).unwrap() {
                prop_assert!(implies_r(&s.concat(&extra).unwrap(), &t, &r, strict).unwrap());
            }
        }
    }

    #[test]
    fn face_keeps_support(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_2d(&mut rng);
        let a = random_cuts(&mut rng, 1).remove(0);
        if find_point(&k).is_ok() {
            let ar = a.to_rational();
            prop_assert_eq!(support_value(&face(&k, &a).unwrap(), &ar).unwrap(), support_value(&k, &ar).unwrap());
        }
    }
}
