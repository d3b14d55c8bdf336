//! Rewriting a branching proof so every disjunction has short coefficients.

pub mod fixup;
pub mod substitution;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{floor, IntVector, Integer};
use crate::lp::{find_point, InequalitySystem};
use crate::polytope::{l1_radius_bound, support_value, SupportValue};
use crate::proof::{edge_row, leaf_relaxation, verify_branching_proof, BranchNode, BranchingProof, Side};

pub use fixup::{check_generalized_certificate, gen_cg_cuts, generalized_certificate, relax, select_violated_row, Selection};
pub use substitution::{
    flip_sequence, long_to_short, long_to_short_trace, normalize_gammas, verify_substitution_sequence, ApproximationState, Level, Precision,
    SequenceReport, SubstitutionSequence, Violation,
};

/// Fix-up cuts inserted below one leaf of the input proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafFixup {
    pub path: String,
    pub cuts: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recompilation {
    pub proof: BranchingProof,
    pub precision: Precision,
    pub fixups: Vec<LeafFixup>,
}

impl Recompilation {
    /// Largest leaf-level cut count over all fix-ups.
    pub fn max_fixup_cuts(&self) -> usize {
        self.fixups.iter().map(|f| f.cuts.len()).max().unwrap_or(0)
    }
}

struct Walk<'a> {
    k: &'a InequalitySystem,
    precision: Precision,
    fixups: Vec<LeafFixup>,
}

impl Walk<'_> {
    fn node(
        &mut self,
        node: &BranchNode,
        path: &mut Vec<Side>,
        old_rows: &mut Vec<(IntVector, Integer)>,
        new_rows: &mut Vec<(IntVector, Integer)>,
        seqs: &mut Vec<SubstitutionSequence>,
    ) -> Result<BranchNode> {
        let BranchNode::Split { normal, rhs, left, right } = node else {
            return self.leaf(path, old_rows, new_rows, seqs);
        };
        let seq = long_to_short(normal, rhs, &self.precision)?;
        let mut children = Vec::with_capacity(2);
        for (side, child, s) in [(Side::Left, left, seq.clone()), (Side::Right, right, flip_sequence(&seq))] {
            path.push(side);
            old_rows.push(edge_row(normal, rhs, side));
            new_rows.push(edge_row(&seq.a_prime, &seq.b_prime, side));
            seqs.push(s);
            children.push(self.node(child, path, old_rows, new_rows, seqs)?);
            path.pop();
            old_rows.pop();
            new_rows.pop();
            seqs.pop();
        }
        let right = children.pop().expect("two children");
        let left = children.pop().expect("two children");
        Ok(BranchNode::split(seq.a_prime, seq.b_prime, left, right))
    }

    fn leaf(
        &mut self,
        path: &[Side],
        old_rows: &[(IntVector, Integer)],
        new_rows: &[(IntVector, Integer)],
        seqs: &[SubstitutionSequence],
    ) -> Result<BranchNode> {
        let n = self.k.dim();
        let start = leaf_relaxation(self.k, new_rows)?;
        if find_point(&start).is_err() {
            return Ok(BranchNode::leaf());
        }
        let rel = |rows: &[(IntVector, Integer)]| leaf_relaxation(&InequalitySystem::new(n), rows);
        let cuts = gen_cg_cuts(self.k, &rel(old_rows)?, &rel(new_rows)?, seqs)?;
        self.fixups.push(LeafFixup { path: crate::proof::Path(path.to_vec()).to_string(), cuts: cuts.clone() });
        fixup_chain(&start, &cuts)
    }
}

/// Left spine of splits `a x ≤ ⌊h(a)⌋` over the shrinking set; each right child is empty.
fn fixup_chain(start: &InequalitySystem, cuts: &[IntVector]) -> Result<BranchNode> {
    let mut cur = start.clone();
    let mut rhs = Vec::with_capacity(cuts.len());
    for a in cuts {
        let b = match support_value(&cur, &a.to_rational())? {
            SupportValue::Finite(h) => floor(&h),
            SupportValue::NegInfinity => Integer::zero(),
            SupportValue::Unbounded => return Err(Error::Unbounded(a.to_string())),
        };
        cur.push_int(a, &b)?;
        rhs.push(b);
    }
    let mut node = BranchNode::leaf();
    for (a, b) in cuts.iter().zip(rhs).rev() {
        node = BranchNode::split(a.clone(), b, node, BranchNode::leaf());
    }
    Ok(node)
}

/// Rewrites a valid proof for `K` into one whose labels satisfy `max(‖a‖∞, |b|) ≤ (10nR)^{(n+2)²}`.
///
/// `radius` must bound `‖x‖₁` over `K`; it defaults to a bound computed from `K`.
pub fn recompile(k: &InequalitySystem, t: &BranchingProof, radius: Option<&Integer>) -> Result<Recompilation> {
    let report = verify_branching_proof(k, t)?;
    if let Some(f) = report.failing_leaves.first() {
        return Err(Error::InvalidProof(format!("leaf {} is not empty", f.path)));
    }
    let radius = match radius {
        Some(r) if *r >= Integer::from(1) => r.clone(),
        Some(r) => return Err(Error::Precondition(format!("radius {r} must be positive"))),
        None => l1_radius_bound(k)?,
    };
    let mut walk = Walk { k, precision: Precision::standard(k.dim(), &radius), fixups: Vec::new() };
    let root = walk.node(&t.root, &mut Vec::new(), &mut Vec::new(), &mut Vec::new(), &mut Vec::new())?;
    let proof = BranchingProof::new(root);
    let out = verify_branching_proof(k, &proof)?;
    if let Some(f) = out.failing_leaves.first() {
        return Err(Error::Precondition(format!("recompiled leaf {} is not empty; does R bound K?", f.path)));
    }
    Ok(Recompilation { proof, precision: walk.precision, fixups: walk.fixups })
}

/// `(10nR)^{(n+2)²}`.
pub fn coefficient_bound(dim: usize, radius: &Integer) -> Integer {
    num_traits::pow(Integer::from(10 * dim) * radius, (dim + 2) * (dim + 2))
}
