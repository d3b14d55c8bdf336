mod common;

use branchproof::enum_cp::{enum_to_cp, enum_to_cp_traced, lift_cg_cut, lift_cg_sequence};
use branchproof::linalg::{floor, rational, to_rational, IntVector, Integer, RatVector};
use branchproof::lp::{find_point, InequalitySystem};
use branchproof::polytope::{apply_cg, apply_cg_list, contains_set, face, same_set, support_value, SupportValue};
use branchproof::proof::{EnumNode, EnumerativeProof};
use common::{coordinate_proof, integer_points, push_box, random_integer_free, random_system};
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn invalid_proof_is_rejected() {
    let mut k = InequalitySystem::new(1);
    push_box(&mut k, 0, 1);
    let t = EnumerativeProof::new(EnumNode::Empty);
    assert!(enum_to_cp(&k, &t).is_err());
}

#[test]
fn lifting_needs_integral_face_value() {
    let mut k = InequalitySystem::new(2);
    push_box(&mut k, 0, 1);
    k.push(RatVector::from_i64s(&[1, 0]), RatVector::from_ratios(&[(1, 2)])[0].clone()).unwrap();
    assert!(lift_cg_cut(&k, &IntVector::from_i64s(&[1, 0]), &IntVector::from_i64s(&[0, 1])).is_err());
}

fn random_polytope(rng: &mut StdRng, n: usize) -> InequalitySystem {
    let m = rng.gen_range(0..=3);
    let mut k = random_system(rng, n, m, 3);
    push_box(&mut k, -3, 3);
    k
}

fn short(rng: &mut StdRng, n: usize) -> IntVector {
    IntVector::new((0..n).map(|_| Integer::from(rng.gen_range(-2..=2))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn lifted_sequences_match_the_face(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let mut k = random_polytope(&mut rng, n);
        let c = short(&mut rng, n);
        let h = match support_value(&k, &c.to_rational()).unwrap() {
            SupportValue::Finite(h) => h,
            _ => return Ok(()),
        };
        if !c.is_zero() {
            k.push_int(&c, &floor(&h)).unwrap();
            if find_point(&k).is_err() {
                return Ok(());
            }
        }
        let len = rng.gen_range(0..=3);
        let cuts: Vec<IntVector> = (0..len).map(|_| short(&mut rng, n)).collect();
        let lifted = lift_cg_sequence(&k, &c, &cuts).unwrap();
        prop_assert_eq!(lifted.len(), cuts.len());
        let normals: Vec<IntVector> = lifted.iter().map(|l| l.normal()).collect();
        let f = if c.is_zero() { k.clone() } else { face(&k, &c).unwrap() };
        let mut lhs = apply_cg_list(&k, &normals).unwrap();
        if !c.is_zero() {
            let hk = support_value(&k, &c.to_rational()).unwrap();
            lhs.push_equality(c.to_rational(), hk.finite().unwrap().clone()).unwrap();
        }
        prop_assert!(same_set(&lhs, &apply_cg_list(&f, &cuts).unwrap()).unwrap());
        for l in &lifted {
            prop_assert!(l.multiplier >= Integer::zero());
        }
    }

    #[test]
    fn conversions_are_short_and_empty(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let k = random_integer_free(&mut rng, n);
        let t = coordinate_proof(&k).unwrap();
        let (cuts, trace) = enum_to_cp_traced(&k, &t).unwrap();
        prop_assert!(cuts.len() < 2 * t.len());
        let mut cur = k.clone();
        for a in &cuts {
            let next = apply_cg(&cur, a).unwrap().0;
            prop_assert!(contains_set(&cur, &next).unwrap());
            for p in integer_points(&k, 3) {
                prop_assert!(next.contains(&p.to_rational()));
            }
            cur = next;
        }
        prop_assert!(find_point(&cur).is_err());
        for node in &trace {
            for w in node.values.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
            for b in &node.values {
                let b = to_rational(b);
                prop_assert!(node.lower <= b && b <= node.upper);
            }
        }
    }
}

#[test]
fn face_cuts_lift_with_zero_multiplier_when_already_valid() {
    let mut k = InequalitySystem::new(2);
    push_box(&mut k, 0, 1);
    let c = lift_cg_cut(&k, &IntVector::from_i64s(&[1, 0]), &IntVector::from_i64s(&[0, 1])).unwrap();
    assert_eq!(c.multiplier, Integer::zero());
    assert_eq!(support_value(&k, &c.normal().to_rational()).unwrap(), SupportValue::Finite(rational(1)));
}
