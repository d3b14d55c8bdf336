//! Cutting-plane fix-ups for leaves whose relaxation became nonempty after
//! the disjunctions were shortened.

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{to_rational, IntVector, Integer, RatVector, Rational};
use crate::lp::{combine, find_point, reduce_certificate, FarkasCertificate, InequalitySystem};
use crate::polytope::{apply_cg_list, contains_set, support_value, SupportValue};

use super::substitution::SubstitutionSequence;

/// `min_{x∈K} λᵀ(Ax − b)`, or `None` when `K` is empty or unbounded below.
fn certificate_margin(k: &InequalitySystem, p: &InequalitySystem, lam: &RatVector) -> Result<Option<Rational>> {
    let dir = combine(p, lam);
    let offset = lam.iter().zip(p.rhs()).fold(Rational::zero(), |acc, (l, b)| acc + l * b);
    Ok(match support_value(k, &-&dir)? {
        SupportValue::Finite(h) => Some(-h - offset),
        _ => None,
    })
}

/// Whether `λ ≥ 0` over `P`'s rows satisfies `min_{x∈K} λᵀ(Ax − b) > 0`.
pub fn check_generalized_certificate(k: &InequalitySystem, p: &InequalitySystem, lam: &FarkasCertificate) -> Result<bool> {
    check_dim(p.num_rows(), lam.multipliers.dim())?;
    if lam.multipliers.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    Ok(certificate_margin(k, p, &lam.multipliers)?.is_some_and(|m| m.is_positive()))
}

/// Multipliers over `P`'s rows certifying `K ∩ P = ∅` relative to `K`, with at most `n + 1` nonzeros.
pub fn generalized_certificate(k: &InequalitySystem, p: &InequalitySystem) -> Result<FarkasCertificate> {
    check_dim(k.dim(), p.dim())?;
    if find_point(k).is_err() {
        return Err(Error::Precondition("K is empty".into()));
    }
    let both = k.concat(p)?;
    let cert = match find_point(&both) {
        Ok(x) => return Err(Error::Precondition(format!("K ∩ P contains {x}"))),
        Err(cert) => reduce_certificate(&both, &cert)?,
    };
    let lam = FarkasCertificate::new(cert.multipliers[k.num_rows()..].iter().cloned().collect());
    if !check_generalized_certificate(k, p, &lam)? {
        return Err(Error::InvalidCertificate("extracted multipliers do not separate K from P".into()));
    }
    Ok(lam)
}

/// `P` with every right-hand side relaxed by `ε`.
pub fn relax(p: &InequalitySystem, eps: &[Rational]) -> InequalitySystem {
    let rhs = p.rhs().iter().zip(eps).map(|(b, e)| b + e).collect();
    InequalitySystem::from_rows(p.dim(), p.rows().to_vec(), rhs).expect("same shape")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// `λ` already certifies `K ∩ P_ε = ∅`.
    EmptyWitness,
    Row(usize),
}

/// Picks the row whose error dominates `λᵀε`; tightening it by `(n+1)ε_j` empties the set.
pub fn select_violated_row(k: &InequalitySystem, p: &InequalitySystem, eps: &[Rational], lam: &FarkasCertificate) -> Result<Selection> {
    check_dim(p.num_rows(), eps.len())?;
    if !check_generalized_certificate(k, p, lam)? {
        return Err(Error::InvalidCertificate("λ does not separate K from P".into()));
    }
    let mut best: Option<(usize, Rational)> = None;
    for (j, (e, l)) in eps.iter().zip(lam.multipliers.iter()).enumerate() {
        let v = e * l;
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((j, v));
        }
    }
    let Some((j, v)) = best.filter(|(_, v)| v.is_positive()) else {
        return Ok(Selection::EmptyWitness);
    };
    debug_assert!(v.is_positive());
    let mut tight = eps.to_vec();
    tight[j] -= Rational::from_integer(Integer::from(k.dim() + 1)) * &eps[j];
    if let Ok(x) = find_point(&k.concat(&relax(p, &tight))?) {
        return Err(Error::InvalidCertificate(format!("tightened row {j} still admits {x}")));
    }
    Ok(Selection::Row(j))
}

/// Whether the affine set `V` lies inside `{a x = b}`.
fn inside_hyperplane(v: &InequalitySystem, v_empty: bool, a: &IntVector, b: &Integer) -> Result<bool> {
    if v_empty {
        return Ok(true);
    }
    let a = a.to_rational();
    let b = to_rational(b);
    Ok(support_value(v, &a)? == SupportValue::Finite(b.clone()) && support_value(v, &-&a)? == SupportValue::Finite(-b))
}

/// Cut normals, in pairs `a, −a`, that empty `K ∩ P′` given that `K ∩ P` is empty.
pub fn gen_cg_cuts(k: &InequalitySystem, p: &InequalitySystem, p_prime: &InequalitySystem, seqs: &[SubstitutionSequence]) -> Result<Vec<IntVector>> {
    let n = k.dim();
    check_dim(n, p.dim())?;
    check_dim(n, p_prime.dim())?;
    check_dim(p.num_rows(), seqs.len())?;
    check_dim(p.num_rows(), p_prime.num_rows())?;
    let start = k.concat(p_prime)?;
    if find_point(&start).is_err() {
        return Ok(Vec::new());
    }
    let lam = generalized_certificate(k, p)?;
    let mut level = vec![0usize; seqs.len()];
    let gamma = |level: &[usize]| -> Vec<Rational> { seqs.iter().zip(level).map(|(s, &i)| s.levels[i].gamma.clone()).collect() };
    let mut eps = gamma(&level);
    let mut v = InequalitySystem::new(n);
    let mut v_empty = false;
    let mut cuts: Vec<IntVector> = Vec::new();

    while !v_empty && find_point(&k.concat(&relax(p, &eps))?).is_ok() {
        let j = match select_violated_row(k, p, &eps, &lam)? {
            Selection::Row(j) => j,
            Selection::EmptyWitness => break,
        };
        let lv = &seqs[j].levels[level[j]];
        cuts.push(lv.a.clone());
        cuts.push(-&lv.a);
        v.push_equality(lv.a.to_rational(), to_rational(&lv.b))?;
        v_empty = find_point(&v).is_err();
        for (i, s) in seqs.iter().enumerate() {
            while level[i] + 1 < s.k() && inside_hyperplane(&v, v_empty, &s.levels[level[i]].a, &s.levels[level[i]].b)? {
                level[i] += 1;
            }
        }
        eps = gamma(&level);
        if cuts.len() > 2 * (n + 1) {
            return Err(Error::Precondition("fix-up exceeded 2(n+1) cuts; is K inside the radius?".into()));
        }
        if cfg!(debug_assertions) {
            let cg = apply_cg_list(&start, &cuts)?;
            debug_assert!(v_empty || contains_set(&v, &cg)?, "CG set left the affine subspace");
            debug_assert!(contains_set(&relax(p, &eps), &cg)?, "CG set left the relaxed P");
        }
    }
    Ok(cuts)
}
