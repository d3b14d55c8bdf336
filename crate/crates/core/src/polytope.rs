//! Support functions, Chvátal-Gomory cuts, faces and `ℓ1`-ball implications.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{ceil, floor, IntVector, Integer, RatVector, Rational};
use crate::lp::{is_empty, lp_optimize, InequalitySystem, LpOutcome, Sense};

/// Value of `sup_{x∈K} a x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportValue {
    Finite(Rational),
    NegInfinity,
    Unbounded,
}

impl SupportValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SupportValue::Finite(h) => Some(h),
            _ => None,
        }
    }

    /// Whether `sup ≤ bound` (true for the empty set, false when unbounded).
    pub fn at_most(&self, bound: &Rational) -> bool {
        match self {
            SupportValue::Finite(h) => h <= bound,
            SupportValue::NegInfinity => true,
            SupportValue::Unbounded => false,
        }
    }
}

/// The halfspace `{x : a x ≤ b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: RatVector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: RatVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    pub fn integral(normal: &IntVector, rhs: &Integer) -> Self {
        Halfspace { normal: normal.to_rational(), rhs: Rational::from_integer(rhs.clone()) }
    }
}

/// Right-hand side of an applied cut; `NegInfinity` marks a cut on the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutRhs {
    Finite(Integer),
    NegInfinity,
}

/// The cut `a x ≤ ⌊h_K(a)⌋` recorded when it was applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgCut {
    pub normal: IntVector,
    pub rhs: CutRhs,
}

impl fmt::Display for CgCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            CutRhs::Finite(b) => write!(f, "{} x <= {b}", self.normal),
            CutRhs::NegInfinity => write!(f, "{} x <= -inf", self.normal),
        }
    }
}

pub fn support_value(k: &InequalitySystem, a: &RatVector) -> Result<SupportValue> {
    Ok(match lp_optimize(k, a, Sense::Max)? {
        LpOutcome::Optimal { value, .. } => SupportValue::Finite(value),
        LpOutcome::Infeasible(_) => SupportValue::NegInfinity,
        LpOutcome::Unbounded(_) => SupportValue::Unbounded,
    })
}

/// Finite support value or an error naming the unbounded direction.
pub(crate) fn bounded_support(k: &InequalitySystem, a: &RatVector) -> Result<Option<Rational>> {
    match support_value(k, a)? {
        SupportValue::Finite(h) => Ok(Some(h)),
        SupportValue::NegInfinity => Ok(None),
        SupportValue::Unbounded => Err(Error::Unbounded(a.to_string())),
    }
}

/// `K ∩ {a x ≤ ⌊h_K(a)⌋}`. The row is only appended when it cuts something off.
pub fn apply_cg(k: &InequalitySystem, a: &IntVector) -> Result<(InequalitySystem, CgCut)> {
    check_dim(k.dim(), a.dim())?;
    let Some(h) = bounded_support(k, &a.to_rational())? else {
        return Ok((k.clone(), CgCut { normal: a.clone(), rhs: CutRhs::NegInfinity }));
    };
    let rhs = floor(&h);
    let mut out = k.clone();
    if !h.is_integer() {
        out.push_int(a, &rhs)?;
    }
    Ok((out, CgCut { normal: a.clone(), rhs: CutRhs::Finite(rhs) }))
}

/// Applies the cuts left to right.
pub fn apply_cg_list(k: &InequalitySystem, cuts: &[IntVector]) -> Result<InequalitySystem> {
    let mut cur = k.clone();
    for a in cuts {
        let (next, cut) = apply_cg(&cur, a)?;
        if cut.rhs == CutRhs::NegInfinity {
            check_dim(k.dim(), a.dim())?;
            continue;
        }
        cur = next;
    }
    Ok(cur)
}

/// The face of maximisers `K ∩ {a x = h_K(a)}`.
pub fn face(k: &InequalitySystem, a: &IntVector) -> Result<InequalitySystem> {
    check_dim(k.dim(), a.dim())?;
    let Some(h) = bounded_support(k, &a.to_rational())? else {
        return Err(Error::Precondition("face of an empty set".into()));
    };
    let mut out = k.clone();
    if !a.is_zero() {
        out.push_equality(a.to_rational(), h)?;
    }
    Ok(out)
}

/// `premise ⇒_R target`: every `x` of the premise with `‖x‖₁ ≤ R` satisfies the target.
pub fn implies_r(premise: &InequalitySystem, target: &Halfspace, radius: &Integer, strict: bool) -> Result<bool> {
    let n = premise.dim();
    check_dim(n, target.normal.dim())?;
    let lifted = ball_intersection(premise, radius);
    let c: RatVector = target.normal.iter().cloned().chain((0..n).map(|_| Rational::zero())).collect();
    Ok(match support_value(&lifted, &c)? {
        SupportValue::NegInfinity => true,
        SupportValue::Finite(v) if strict => v < target.rhs,
        SupportValue::Finite(v) => v <= target.rhs,
        SupportValue::Unbounded => unreachable!("the l1 ball is bounded"),
    })
}

/// `{(x, y) : x ∈ P, −y ≤ x ≤ y, Σ y ≤ R}`.
pub fn ball_intersection(premise: &InequalitySystem, radius: &Integer) -> InequalitySystem {
    let n = premise.dim();
    let mut s = premise.extend_dim(n);
    let one = Rational::one();
    for i in 0..n {
        let mut up = vec![Rational::zero(); 2 * n];
        up[i] = one.clone();
        up[n + i] = -one.clone();
        let mut down = up.clone();
        down[i] = -one.clone();
        s.push(up.into(), Rational::zero()).expect("dimension");
        s.push(down.into(), Rational::zero()).expect("dimension");
    }
    let sum: RatVector = (0..2 * n).map(|j| if j < n { Rational::zero() } else { one.clone() }).collect();
    s.push(sum, Rational::from_integer(radius.clone())).expect("dimension");
    s
}

/// Smallest integer `R ≥ 1` of the form `⌈Σ max(|min xᵢ|, |max xᵢ|)⌉` with `K ⊆ R·B₁ⁿ`.
pub fn l1_radius_bound(k: &InequalitySystem) -> Result<Integer> {
    let n = k.dim();
    let mut total = Rational::zero();
    for i in 0..n {
        let e = RatVector::unit(n, i);
        let Some(hi) = bounded_support(k, &e)? else {
            return Ok(Integer::one());
        };
        let lo = bounded_support(k, &-&e)?.expect("nonempty set");
        total += std::cmp::max(hi.abs(), lo.abs());
    }
    Ok(std::cmp::max(ceil(&total), Integer::one()))
}

/// Whether `inner ⊆ outer` as sets.
pub fn contains_set(outer: &InequalitySystem, inner: &InequalitySystem) -> Result<bool> {
    check_dim(outer.dim(), inner.dim())?;
    if is_empty(inner).is_some() {
        return Ok(true);
    }
    for (a, b) in outer.rows().iter().zip(outer.rhs()) {
        if !support_value(inner, a)?.at_most(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn same_set(a: &InequalitySystem, b: &InequalitySystem) -> Result<bool> {
    Ok(contains_set(a, b)? && contains_set(b, a)?)
}

pub fn is_empty_set(k: &InequalitySystem) -> bool {
    is_empty(k).is_some()
}
