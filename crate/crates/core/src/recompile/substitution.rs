//! Replacing one long-coefficient inequality by a short one plus a chain of
//! approximating levels.

use num_traits::{One, Signed, Zero};

use crate::diophantine::{classify_rhs, dirichlet_approx, RhsCase};
use crate::error::{Error, Result};
use crate::linalg::{round_nearest, to_rational, IntVector, Integer, RatVector, Rational};
use crate::lp::InequalitySystem;
use crate::polytope::{implies_r, Halfspace};

/// Radius and the two precisions `N`, `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precision {
    pub radius: Integer,
    pub n: Integer,
    pub m: Integer,
}

impl Precision {
    /// `N = 10·dim·R` and `M = N^{dim+2}`.
    pub fn standard(dim: usize, radius: &Integer) -> Self {
        let n = Integer::from(10 * dim) * radius;
        let m = num_traits::pow(n.clone(), dim + 2);
        Precision { radius: radius.clone(), n, m }
    }
}

/// One approximation level `aᵢ x ≤ bᵢ` with error bound `γᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub a: IntVector,
    pub b: Integer,
    pub gamma: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSequence {
    pub a_prime: IntVector,
    pub b_prime: Integer,
    pub levels: Vec<Level>,
    pub precision: Precision,
}

impl SubstitutionSequence {
    /// Number of levels `k`.
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// `Σ M^{k−i} vᵢ` over the levels.
    fn combine(levels: &[Level], m: &Integer) -> (IntVector, Integer) {
        let dim = levels[0].a.dim();
        let mut a = IntVector::zeros(dim);
        let mut b = Integer::zero();
        for lv in levels {
            a = &a.scale(m) + &lv.a;
            b = &b * m + &lv.b;
        }
        (a, b)
    }

    fn from_levels(levels: Vec<Level>, precision: &Precision) -> Self {
        let (a_prime, b_prime) = Self::combine(&levels, &precision.m);
        SubstitutionSequence { a_prime, b_prime, levels, precision: precision.clone() }
    }
}

/// Iterate of the approximation loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationState {
    pub a_hat: RatVector,
    pub b_hat: Rational,
    pub alpha: Rational,
    pub iteration: usize,
}

pub fn long_to_short(a: &IntVector, b: &Integer, precision: &Precision) -> Result<SubstitutionSequence> {
    long_to_short_trace(a, b, precision).map(|(s, _)| s)
}

/// As [`long_to_short`], also returning the state of every loop iteration.
pub fn long_to_short_trace(a: &IntVector, b: &Integer, precision: &Precision) -> Result<(SubstitutionSequence, Vec<ApproximationState>)> {
    let Precision { radius, n: prec, .. } = precision;
    if a.is_zero() {
        return Err(Error::Precondition("cannot shorten a zero normal".into()));
    }
    if !radius.is_positive() || Integer::from(4) * radius >= *prec {
        return Err(Error::Precondition("need 0 < R and R/N < 1/4".into()));
    }
    let dim = a.dim();
    let threshold = to_rational(&(Integer::from(10 * dim) * num_traits::pow(prec.clone(), dim)));
    let five_n = Rational::from_integer(Integer::from(5 * dim));

    let mut a_hat = a.to_rational();
    let mut b_hat = to_rational(b);
    let mut levels: Vec<Level> = Vec::new();
    let mut alphas: Vec<Rational> = Vec::new();
    let mut trace = Vec::new();

    while a_hat.norm_linf() > threshold {
        let approx = dirichlet_approx(&a_hat, prec)?;
        let class = classify_rhs(&a_hat, &b_hat, &approx, radius, prec)?;
        if class.case == RhsCase::Dominating {
            levels.push(Level { a: approx.a_prime, b: class.b_prime, gamma: Rational::zero() });
            return Ok((SubstitutionSequence::from_levels(levels, precision), trace));
        }
        let alpha = class.alpha;
        trace.push(ApproximationState { a_hat: a_hat.clone(), b_hat: b_hat.clone(), alpha: alpha.clone(), iteration: levels.len() + 1 });
        let gamma = Rational::from_integer(2.into()) * &alpha / &five_n;
        a_hat = &a_hat - &approx.a_prime.to_rational().scale(&alpha);
        b_hat -= &alpha * to_rational(&class.b_prime);
        levels.push(Level { a: approx.a_prime, b: class.b_prime, gamma });
        alphas.push(alpha);
        if levels.len() > dim {
            return Err(Error::Precondition("approximation loop exceeded n iterations".into()));
        }
    }

    let mut a_last = a.clone();
    let mut b_last = b.clone();
    for (lv, alpha) in levels.iter().zip(&alphas) {
        let r = round_nearest(&RatVector::new(vec![alpha.clone()]))[0].clone();
        a_last = &a_last - &lv.a.scale(&r);
        b_last -= &r * &lv.b;
    }
    let bound = radius * a_last.norm_linf();
    let b_k = if b_last >= bound {
        bound
    } else if b_last <= -&bound - Integer::one() {
        -bound - Integer::one()
    } else {
        b_last
    };
    levels.push(Level { a: a_last, b: b_k, gamma: Rational::zero() });
    Ok((SubstitutionSequence::from_levels(levels, precision), trace))
}

/// The sequence for `−a x ≤ −b − 1`.
pub fn flip_sequence(s: &SubstitutionSequence) -> SubstitutionSequence {
    let k = s.k();
    let levels = s
        .levels
        .iter()
        .enumerate()
        .map(|(i, lv)| {
            let b = if i + 1 == k { -&lv.b - Integer::one() } else { -&lv.b };
            Level { a: -&lv.a, b, gamma: lv.gamma.clone() }
        })
        .collect();
    SubstitutionSequence { a_prime: -&s.a_prime, b_prime: -&s.b_prime - Integer::one(), levels, precision: s.precision.clone() }
}

/// Replaces each `γᵢ` by `min_{j≤i} γⱼ`.
pub fn normalize_gammas(s: &SubstitutionSequence) -> SubstitutionSequence {
    let mut out = s.clone();
    for i in 1..out.levels.len() {
        if out.levels[i].gamma > out.levels[i - 1].gamma {
            out.levels[i].gamma = out.levels[i - 1].gamma.clone();
        }
    }
    out
}

/// A violated property at a level (levels are 1-based, 0 for whole-sequence checks).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub property: u8,
    pub level: usize,
    pub detail: String,
}

/// All violations, sorted by property then level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl SequenceReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// `{a′x ≤ b′, aᵢx = bᵢ for i < l}`; with `replace` the first row becomes `a_l x ≤ b_l − 1`.
fn level_premise(s: &SubstitutionSequence, l: usize, replace: bool) -> Result<InequalitySystem> {
    let dim = s.a_prime.dim();
    let mut p = InequalitySystem::new(dim);
    if replace {
        let lv = &s.levels[l - 1];
        p.push_int(&lv.a, &(&lv.b - Integer::one()))?;
    } else {
        p.push_int(&s.a_prime, &s.b_prime)?;
    }
    for lv in &s.levels[..l - 1] {
        p.push_equality(lv.a.to_rational(), to_rational(&lv.b))?;
    }
    Ok(p)
}

/// Checks the bound identities by arithmetic and the three implication families by LP.
pub fn verify_substitution_sequence(s: &SubstitutionSequence, a: &IntVector, b: &Integer) -> Result<SequenceReport> {
    let dim = a.dim();
    let mut found = Vec::new();
    let mut flag = |property, level, detail: String| found.push(Violation { property, level, detail });
    let Precision { radius, n: prec, m } = &s.precision;
    let k = s.k();
    if s.levels.iter().any(|lv| lv.a.dim() != dim) || s.a_prime.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: s.a_prime.dim() });
    }
    if k == 0 || k > dim + 1 {
        flag(1, k, format!("k = {k} outside [1, n+1]"));
        return Ok(SequenceReport { valid: false, violations: found });
    }

    let nn = num_traits::pow(prec.clone(), dim);
    let big = &nn * num_traits::pow(m.clone(), dim + 1);
    if s.a_prime.norm_linf() > big {
        flag(1, 0, "‖a′‖∞ exceeds NⁿMⁿ⁺¹".into());
    }
    if s.b_prime.abs() > radius * &big {
        flag(1, 0, "|b′| exceeds RNⁿMⁿ⁺¹".into());
    }
    let (sum_a, sum_b) = SubstitutionSequence::combine(&s.levels, m);
    if sum_a != s.a_prime || sum_b != s.b_prime {
        flag(1, 0, "a′, b′ differ from Σ M^{k−i}(aᵢ, bᵢ)".into());
    }
    let level_cap = Integer::from(11 * dim) * &nn;
    for (i, lv) in s.levels.iter().enumerate() {
        if lv.a.norm_linf() > level_cap {
            flag(1, i + 1, "‖aᵢ‖∞ exceeds 11nNⁿ".into());
        }
        if lv.b.abs() > radius * lv.a.norm_linf() + Integer::one() {
            flag(1, i + 1, "|bᵢ| exceeds R‖aᵢ‖∞ + 1".into());
        }
        if lv.gamma.is_negative() {
            flag(1, i + 1, "negative γ".into());
        }
    }
    if !s.levels[k - 1].gamma.is_zero() {
        flag(1, k, "γ_k is not zero".into());
    }

    let target_a = a.to_rational();
    let n_rat = Rational::from_integer(Integer::from(dim));
    for l in 1..=k {
        let premise = level_premise(s, l, false)?;
        let lv = &s.levels[l - 1];
        if l < k {
            let t = Halfspace::integral(&lv.a, &(&lv.b + Integer::one()));
            if !implies_r(&premise, &t, radius, true)? {
                flag(2, l, format!("premise does not force a_{l} x < b_{l} + 1"));
            }
        }
        let t = Halfspace::new(target_a.clone(), to_rational(b) + &lv.gamma);
        if !implies_r(&premise, &t, radius, false)? {
            flag(3, l, format!("premise does not force a x ≤ b + γ_{l}"));
        }
        if l < k {
            let t = Halfspace::new(target_a.clone(), to_rational(b) - &n_rat * &lv.gamma);
            if !implies_r(&level_premise(s, l, true)?, &t, radius, false)? {
                flag(4, l, format!("a_{l} x ≤ b_{l} − 1 does not force a x ≤ b − nγ_{l}"));
            }
        }
    }
    found.sort();
    Ok(SequenceReport { valid: found.is_empty(), violations: found })
}
