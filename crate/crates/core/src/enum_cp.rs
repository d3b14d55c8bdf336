//! Converting enumerative branching proofs into cutting-plane proofs.

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{floor, to_rational, IntVector, Integer, Rational};
use crate::lp::{find_point, InequalitySystem};
use crate::polytope::{apply_cg, bounded_support, face, support_value, SupportValue};
use crate::proof::{verify_enumerative_proof, EnumNode, EnumerativeProof};

/// A cut `a` valid on a face `{c x = h_K(c)}`, lifted to `a + multiplier·c` on `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCut {
    pub base: IntVector,
    pub face_normal: IntVector,
    pub multiplier: Integer,
}

impl LiftedCut {
    pub fn normal(&self) -> IntVector {
        &self.base + &self.face_normal.scale(&self.multiplier)
    }
}

fn finite_support(k: &InequalitySystem, a: &IntVector, what: &str) -> Result<Rational> {
    bounded_support(k, &a.to_rational())?.ok_or_else(|| Error::Precondition(format!("{what} is empty")))
}

/// Searches `i = 0, 1, 2, 4, …` for the first multiplier passing `⌊h_K(a+ic) − i·h_K(c)⌋ = ⌊h_F(a)⌋`.
pub fn lift_cg_cut(k: &InequalitySystem, c: &IntVector, a: &IntVector) -> Result<LiftedCut> {
    check_dim(k.dim(), c.dim())?;
    check_dim(k.dim(), a.dim())?;
    let lifted = |i: Integer| LiftedCut { base: a.clone(), face_normal: c.clone(), multiplier: i };
    if c.is_zero() {
        finite_support(k, a, "K")?;
        return Ok(lifted(Integer::zero()));
    }
    let hc = finite_support(k, c, "K")?;
    if !hc.is_integer() {
        return Err(Error::Precondition(format!("h_K({c}) = {hc} is not integral")));
    }
    let target = floor(&finite_support(&face(k, c)?, a, "face")?);
    let cap = Integer::one() << 64u32;
    let mut i = Integer::zero();
    while i <= cap {
        let h = finite_support(k, &(a + &c.scale(&i)), "K")?;
        if floor(&(h - to_rational(&i) * &hc)) == target {
            return Ok(lifted(i));
        }
        i = if i.is_zero() { Integer::one() } else { i * 2 };
    }
    Err(Error::SearchLimit(format!("no lifting multiplier for {a} up to 2^64")))
}

/// Lifts a cut sequence valid on `face(K, c)` one cut at a time, tracking both the lifted set and the face.
pub fn lift_cg_sequence(k: &InequalitySystem, c: &IntVector, cuts: &[IntVector]) -> Result<Vec<LiftedCut>> {
    let mut kk = k.clone();
    let mut ff = if c.is_zero() { k.clone() } else { face(k, c)? };
    let mut out = Vec::with_capacity(cuts.len());
    for a in cuts {
        let cut = if find_point(&ff).is_err() {
            check_dim(k.dim(), a.dim())?;
            LiftedCut { base: a.clone(), face_normal: c.clone(), multiplier: Integer::zero() }
        } else {
            lift_cg_cut(&kk, c, a)?
        };
        kk = apply_cg(&kk, &cut.normal())?.0;
        ff = apply_cg(&ff, a)?.0;
        out.push(cut);
    }
    Ok(out)
}

/// Values `b` of one node's push loop, with the node's bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushTrace {
    pub lower: Rational,
    pub upper: Rational,
    pub values: Vec<Integer>,
}

/// CG cut normals emptying `K`, at most `2|T| − 1` of them.
pub fn enum_to_cp(k: &InequalitySystem, t: &EnumerativeProof) -> Result<Vec<IntVector>> {
    Ok(enum_to_cp_traced(k, t)?.0)
}

/// As [`enum_to_cp`], also returning each node's push values in visit order.
pub fn enum_to_cp_traced(k: &InequalitySystem, t: &EnumerativeProof) -> Result<(Vec<IntVector>, Vec<PushTrace>)> {
    let report = verify_enumerative_proof(k, t)?;
    if let Some(f) = report.failing_leaves.first() {
        return Err(Error::InvalidProof(format!("node {}: {}", f.path, f.reason)));
    }
    let mut trace = Vec::new();
    let cuts = convert(k, &t.root, &mut trace)?;
    debug_assert!(cuts.len() < 2 * t.len());
    Ok((cuts, trace))
}

fn convert(k: &InequalitySystem, node: &EnumNode, trace: &mut Vec<PushTrace>) -> Result<Vec<IntVector>> {
    if find_point(k).is_err() {
        return Ok(Vec::new());
    }
    let EnumNode::Branch { direction: a, lower, upper, .. } = node else {
        return Err(Error::InvalidProof("empty leaf reached with a nonempty set".into()));
    };
    let mut kk = apply_cg(k, a)?.0;
    let mut cuts = vec![a.clone()];
    let slot = trace.len();
    trace.push(PushTrace { lower: lower.clone(), upper: upper.clone(), values: Vec::new() });
    loop {
        let b = match support_value(&kk, &a.to_rational())? {
            SupportValue::Finite(h) if h >= *lower => h,
            SupportValue::Finite(_) | SupportValue::NegInfinity => break,
            SupportValue::Unbounded => return Err(Error::Unbounded(a.to_string())),
        };
        let b = b.to_integer();
        let child = node.child(&b).ok_or_else(|| Error::InvalidProof(format!("no child for {a} x = {b}")))?;
        trace[slot].values.push(b);
        let sub = convert(&face(&kk, a)?, child, trace)?;
        for cut in lift_cg_sequence(&kk, a, &sub)? {
            let normal = cut.normal();
            kk = apply_cg(&kk, &normal)?.0;
            cuts.push(normal);
        }
        kk = apply_cg(&kk, a)?.0;
        cuts.push(a.clone());
    }
    debug_assert!(find_point(&kk).is_err());
    Ok(cuts)
}
