#![allow(dead_code)]

use branchproof::linalg::{ceil, floor, to_rational, IntVector, Integer, RatVector, Rational};
use branchproof::lp::InequalitySystem;
use branchproof::polytope::{support_value, SupportValue};
use branchproof::proof::{EnumNode, EnumerativeProof};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(int(p), int(d))
}

/// Fourier–Motzkin elimination down to constant rows; empty iff some `0 ≤ b` fails.
pub fn fm_is_empty(k: &InequalitySystem) -> bool {
    let mut rows: Vec<(Vec<Rational>, Rational)> = k.rows().iter().zip(k.rhs()).map(|(a, b)| (a.entries().to_vec(), b.clone())).collect();
    for var in 0..k.dim() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in rows {
            if a[var].is_positive() {
                pos.push((a, b));
            } else if a[var].is_negative() {
                neg.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let (sp, sn) = (-&an[var], ap[var].clone());
                let a: Vec<Rational> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                rest.push((a, bp * &sp + bn * &sn));
            }
        }
        rows = dedup(rest);
    }
    rows.iter().any(|(_, b)| b.is_negative())
}

/// Scales each row to unit `ℓ∞` norm and drops repeats.
fn dedup(rows: Vec<(Vec<Rational>, Rational)>) -> Vec<(Vec<Rational>, Rational)> {
    let mut out: Vec<(Vec<Rational>, Rational)> = rows
        .into_iter()
        .map(|(a, b)| {
            let m = a.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
            if m.is_zero() {
                (a, b)
            } else {
                (a.iter().map(|x| x / &m).collect(), b / m)
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All integer points of `k` inside `[-r, r]^n`.
pub fn integer_points(k: &InequalitySystem, r: i64) -> Vec<IntVector> {
    let n = k.dim();
    let mut out = Vec::new();
    let mut x = vec![-r; n];
    loop {
        let v = IntVector::from_i64s(&x);
        if k.contains(&v.to_rational()) {
            out.push(v);
        }
        let mut i = 0;
        while i < n && x[i] == r {
            x[i] = -r;
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

pub fn random_rational(rng: &mut StdRng, span: i64, den: i64) -> Rational {
    q(rng.gen_range(-span * den..=span * den), rng.gen_range(1..=den))
}

pub fn random_system(rng: &mut StdRng, n: usize, m: usize, coeff: i64) -> InequalitySystem {
    let mut k = InequalitySystem::new(n);
    for _ in 0..m {
        let a: RatVector = (0..n).map(|_| Rational::from_integer(int(rng.gen_range(-coeff..=coeff)))).collect();
        k.push(a, random_rational(rng, 3, 4)).unwrap();
    }
    k
}

pub fn push_box(k: &mut InequalitySystem, lo: i64, hi: i64) {
    for i in 0..k.dim() {
        k.push(RatVector::unit(k.dim(), i), Rational::from_integer(int(hi))).unwrap();
        k.push(-&RatVector::unit(k.dim(), i), Rational::from_integer(int(-lo))).unwrap();
    }
}

/// Nonempty polytope in `[-3, 3]^n` without integer points: a few random
/// halfspaces around a random rational centre.
pub fn random_integer_free(rng: &mut StdRng, n: usize) -> InequalitySystem {
    loop {
        let centre: Vec<Rational> = (0..n).map(|_| random_rational(rng, 2, 6)).collect();
        let mut k = InequalitySystem::new(n);
        push_box(&mut k, -3, 3);
        for _ in 0..rng.gen_range(n + 1..=n + 3) {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            let av = RatVector::from_i64s(&a);
            let at = av.iter().zip(&centre).fold(Rational::zero(), |s, (x, y)| s + x * y);
            k.push(av, at + q(rng.gen_range(1..=12), 8)).unwrap();
        }
        if !fm_is_empty(&k) && integer_points(&k, 3).is_empty() {
            return k;
        }
    }
}

/// Enumerates coordinates in order with LP bounds; `None` when an integer point is reached.
pub fn coordinate_proof(k: &InequalitySystem) -> Option<EnumerativeProof> {
    fn go(k: &InequalitySystem, var: usize) -> Option<EnumNode> {
        let n = k.dim();
        if var == n {
            return None;
        }
        let e = RatVector::unit(n, var);
        let (hi, lo) = match (support_value(k, &e).unwrap(), support_value(k, &-&e).unwrap()) {
            (SupportValue::Finite(h), SupportValue::Finite(l)) => (h, -l),
            _ => return Some(EnumNode::Empty),
        };
        let mut children = Vec::new();
        let mut b = ceil(&lo);
        while b <= floor(&hi) {
            let mut sub = k.clone();
            sub.push_equality(e.clone(), to_rational(&b)).unwrap();
            let child = if fm_is_empty(&sub) { EnumNode::Empty } else { go(&sub, var + 1)? };
            children.push((b.clone(), child));
            b += Integer::one();
        }
        Some(EnumNode::Branch { direction: IntVector::new((0..n).map(|i| int(i64::from(i == var))).collect()), lower: lo, upper: hi, children })
    }
    if fm_is_empty(k) {
        return Some(EnumerativeProof::new(EnumNode::Empty));
    }
    go(k, 0).map(EnumerativeProof::new)
}

/// `{a x = β} ∩ [-1, 1]^n` with `β` a half-integer, so no integer point; `a` has one long entry.
pub fn random_long_hyperplane(rng: &mut StdRng, n: usize, long: i64) -> (InequalitySystem, IntVector, Integer) {
    let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    a[rng.gen_range(0..n)] = rng.gen_range(long / 2..=long) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let l1: i64 = a.iter().map(|x| x.abs()).sum();
    let base = rng.gen_range(-(l1 / 2)..l1 / 2);
    let mut k = InequalitySystem::new(n);
    let av = IntVector::from_i64s(&a);
    k.push_equality(av.to_rational(), q(2 * base + 1, 2)).unwrap();
    push_box(&mut k, -1, 1);
    (k, av, int(base))
}
