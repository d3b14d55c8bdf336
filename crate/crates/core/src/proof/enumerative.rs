//! Enumerative branching proofs: multi-way branching on every integer value of `a x`.

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{ceil, floor, to_rational, IntVector, Integer, Rational};
use crate::lp::{find_point, InequalitySystem};
use crate::polytope::{support_value, SupportValue};

use super::branching::{BranchNode, BranchingProof, FailingLeaf, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumNode {
    /// Leaf whose relaxation is empty.
    Empty,
    /// `a x` ranges in `[lower, upper]` over the node's relaxation; one child per
    /// integer in that range, labelled `a x = b`. Without integers this is a gap leaf.
    Branch { direction: IntVector, lower: Rational, upper: Rational, children: Vec<(Integer, EnumNode)> },
}

#[allow(clippy::len_without_is_empty)]
impl EnumNode {
    pub fn gap(direction: IntVector, lower: Rational, upper: Rational) -> Self {
        EnumNode::Branch { direction, lower, upper, children: Vec::new() }
    }

    pub fn len(&self) -> usize {
        match self {
            EnumNode::Empty => 1,
            EnumNode::Branch { children, .. } => 1 + children.iter().map(|(_, c)| c.len()).sum::<usize>(),
        }
    }

    /// Gap leaf: `⌊upper⌋ < lower`.
    pub fn is_gap(&self) -> bool {
        matches!(self, EnumNode::Branch { lower, upper, .. } if Rational::from_integer(floor(upper)) < *lower)
    }

    pub fn child(&self, b: &Integer) -> Option<&EnumNode> {
        match self {
            EnumNode::Empty => None,
            EnumNode::Branch { children, .. } => children.iter().find(|(v, _)| v == b).map(|(_, c)| c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerativeProof {
    pub root: EnumNode,
}

impl EnumerativeProof {
    pub fn new(root: EnumNode) -> Self {
        EnumerativeProof { root }
    }

    pub fn len(&self) -> usize {
        self.root.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The equivalent binary proof: each range becomes a chain of `≤ / ≥` splits.
    pub fn to_branching(&self) -> Result<BranchingProof> {
        Ok(BranchingProof::new(chain_node(&self.root)?))
    }
}

fn chain_node(node: &EnumNode) -> Result<BranchNode> {
    let EnumNode::Branch { direction, lower, upper, children } = node else {
        return Ok(BranchNode::leaf());
    };
    let lo = ceil(lower);
    let hi = floor(upper);
    // a x ≥ b holds on entry; split off a x = b and continue with a x ≥ b + 1
    let mut tail = BranchNode::leaf();
    let mut b = hi.clone();
    while b >= lo {
        let child = children
            .iter()
            .find(|(v, _)| *v == b)
            .ok_or_else(|| Error::InvalidProof(format!("missing child {b} for direction {direction}")))?;
        tail = BranchNode::split(direction.clone(), b.clone(), chain_node(&child.1)?, tail);
        b -= Integer::one();
    }
    Ok(BranchNode::split(direction.clone(), lo - Integer::one(), BranchNode::leaf(), tail))
}

fn path_string(path: &[Integer]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|b| format!("/{b}")).collect()
    }
}

/// Checks bounds and child completeness at every branch and emptiness at every `Empty` leaf.
pub fn verify_enumerative_proof(k: &InequalitySystem, t: &EnumerativeProof) -> Result<Report> {
    let mut failures = Vec::new();
    walk(k, &t.root, &mut Vec::new(), &mut failures)?;
    failures.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(Report::from_failures(failures))
}

fn walk(kv: &InequalitySystem, node: &EnumNode, path: &mut Vec<Integer>, out: &mut Vec<FailingLeaf>) -> Result<()> {
    let fail = |reason: String, witness| FailingLeaf { path: path_string(path), reason, witness };
    let EnumNode::Branch { direction, lower, upper, children } = node else {
        if let Ok(x) = find_point(kv) {
            out.push(fail("empty leaf has a nonempty relaxation".into(), Some(x)));
        }
        return Ok(());
    };
    check_dim(kv.dim(), direction.dim())?;
    if direction.is_zero() {
        out.push(fail("zero branching direction".into(), None));
        return Ok(());
    }
    let a = direction.to_rational();
    match (support_value(kv, &a)?, support_value(kv, &-&a)?) {
        (SupportValue::Finite(hi), SupportValue::Finite(neg_lo)) => {
            let lo = -neg_lo;
            if lo < *lower || hi > *upper {
                out.push(fail(format!("range [{lo}, {hi}] of {direction} x exceeds [{lower}, {upper}]"), None));
            }
        }
        (SupportValue::NegInfinity, _) | (_, SupportValue::NegInfinity) => {}
        _ => out.push(fail(format!("{direction} x is unbounded"), None)),
    }
    let lo = ceil(lower);
    let hi = floor(upper);
    let mut seen = BTreeSet::new();
    for (b, _) in children {
        if *b < lo || *b > hi || !seen.insert(b.clone()) {
            out.push(fail(format!("unexpected child {b}"), None));
        }
    }
    if hi >= lo && Integer::from(seen.len()) != &hi - &lo + Integer::one() {
        let mut b = lo.clone();
        while b <= hi {
            if !seen.contains(&b) {
                out.push(fail(format!("missing child {b}"), None));
                break;
            }
            b += Integer::one();
        }
    }
    for (b, child) in children {
        let mut sub = kv.clone();
        sub.push_equality(a.clone(), to_rational(b))?;
        path.push(b.clone());
        walk(&sub, child, path, out)?;
        path.pop();
    }
    Ok(())
}
