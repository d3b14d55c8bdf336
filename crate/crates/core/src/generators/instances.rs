//! The cube-clause polytope `P_n`, its extended form `Q_n` with the split-cut
//! refutation, and the thin segment.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{ratio, rational, IntVector, Integer, RatVector, Rational};
use crate::lp::{find_point, FarkasCertificate, InequalitySystem};
use crate::polytope::{support_value, SupportValue};
use crate::proof::{BranchNode, BranchingProof, Side};

const MAX_N: usize = 16;

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("n = {n} outside 2..={MAX_N}")));
    }
    Ok(())
}

fn push_box(k: &mut InequalitySystem, vars: std::ops::Range<usize>) -> Result<()> {
    for i in vars {
        k.push(RatVector::unit(k.dim(), i), rational(1))?;
        k.push(-&RatVector::unit(k.dim(), i), rational(0))?;
    }
    Ok(())
}

/// Row `S` (as a bitmask, bit `i` for `x_i`) is the clause `Σ_{i∈S} xᵢ + Σ_{i∉S} (1 − xᵢ) ≥ 1`; the box follows.
pub fn pn_polytope(n: usize) -> Result<InequalitySystem> {
    check_n(n)?;
    let mut k = InequalitySystem::new(n);
    for s in 0u32..(1 << n) {
        let row: Vec<i64> = (0..n).map(|i| if s >> i & 1 == 1 { -1 } else { 1 }).collect();
        k.push(RatVector::from_i64s(&row), rational(n as i64 - i64::from(s.count_ones()) - 1))?;
    }
    push_box(&mut k, 0..n)?;
    Ok(k)
}

/// Variables `(x, y)`: `Σ yᵢ ≤ n/2 − 1`, `|xᵢ − 1/2| ≤ yᵢ`, and the unit box.
pub fn qn_polytope(n: usize) -> Result<InequalitySystem> {
    check_n(n)?;
    let d = 2 * n;
    let mut k = InequalitySystem::new(d);
    let ys: RatVector = (0..d).map(|i| rational(i64::from(i >= n))).collect();
    k.push(ys, ratio(n as i64 - 2, 2))?;
    for i in 0..n {
        let x = RatVector::unit(d, i);
        let y = RatVector::unit(d, n + i);
        k.push(&x - &y, ratio(1, 2))?;
        k.push(-&(&x + &y), ratio(-1, 2))?;
    }
    push_box(&mut k, 0..d)?;
    Ok(k)
}

/// Validity of `yᵢ ≥ rhs` on one side of `xᵢ ≤ 0 ∨ xᵢ ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideCheck {
    pub index: usize,
    pub side: Side,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRefutation {
    pub valid: bool,
    pub side_checks: Vec<SideCheck>,
    /// Farkas certificate for `Q_n` plus all cuts, when that system is empty.
    pub certificate: Option<FarkasCertificate>,
}

/// Checks the split cuts `yᵢ ≥ 1/2` and that adding all of them empties `Q_n`.
pub fn qn_split_refutation(n: usize) -> Result<SplitRefutation> {
    qn_split_refutation_with(n, &ratio(1, 2))
}

/// As [`qn_split_refutation`] with cuts `yᵢ ≥ rhs`.
pub fn qn_split_refutation_with(n: usize, rhs: &Rational) -> Result<SplitRefutation> {
    let q = qn_polytope(n)?;
    let d = 2 * n;
    let mut side_checks = Vec::with_capacity(2 * n);
    let mut augmented = q.clone();
    for i in 0..n {
        let x = RatVector::unit(d, i);
        let y = RatVector::unit(d, n + i);
        for (side, a, b) in [(Side::Left, x.clone(), rational(0)), (Side::Right, -&x, rational(-1))] {
            let valid = match support_value(&q.with_row(a, b)?, &-&y)? {
                SupportValue::Finite(h) => -h >= *rhs,
                SupportValue::NegInfinity => true,
                SupportValue::Unbounded => false,
            };
            side_checks.push(SideCheck { index: i, side, valid });
        }
        augmented.push(-&y, -rhs)?;
    }
    let certificate = find_point(&augmented).err().filter(|c| c.verify(&augmented));
    let valid = side_checks.iter().all(|c| c.valid) && certificate.is_some();
    Ok(SplitRefutation { valid, side_checks, certificate })
}

/// `K = {M x₁ + x₂ = 1/2, 0 ≤ x₂ ≤ 2}` with the one-split proof on `(M, 1)`.
pub fn thin_segment(m: &Integer) -> Result<(InequalitySystem, BranchingProof)> {
    if !m.is_positive() {
        return Err(Error::Precondition("M must be positive".into()));
    }
    let a = IntVector::new(vec![m.clone(), Integer::from(1)]);
    let mut k = InequalitySystem::new(2);
    k.push_equality(a.to_rational(), ratio(1, 2))?;
    k.push(RatVector::from_i64s(&[0, 1]), rational(2))?;
    k.push(RatVector::from_i64s(&[0, -1]), rational(0))?;
    let t = BranchingProof::new(BranchNode::split(a, Integer::from(0), BranchNode::leaf(), BranchNode::leaf()));
    Ok((k, t))
}
