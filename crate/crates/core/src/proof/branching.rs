//! Binary branching proofs and their certified variant.

use std::fmt;

use num_traits::One;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{BitSize, IntVector, Integer, RatVector};
use crate::lp::{find_point, reduce_certificate, FarkasCertificate, InequalitySystem};

/// Which child of a disjunction a path takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `a x ≤ b`
    Left,
    /// `a x ≥ b + 1`, stored as `−a x ≤ −b − 1`
    Right,
}

/// Root-to-node sequence of sides.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<Side>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        for s in &self.0 {
            write!(f, "{}", if *s == Side::Left { 'L' } else { 'R' })?;
        }
        Ok(())
    }
}

/// The inequality labelling an edge.
pub fn edge_row(normal: &IntVector, rhs: &Integer, side: Side) -> (IntVector, Integer) {
    match side {
        Side::Left => (normal.clone(), rhs.clone()),
        Side::Right => (-normal, -rhs - Integer::one()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchNode {
    Leaf { certificate: Option<FarkasCertificate> },
    Split { normal: IntVector, rhs: Integer, left: Box<BranchNode>, right: Box<BranchNode> },
}

#[allow(clippy::len_without_is_empty)]
impl BranchNode {
    pub fn leaf() -> Self {
        BranchNode::Leaf { certificate: None }
    }

    pub fn split(normal: IntVector, rhs: Integer, left: BranchNode, right: BranchNode) -> Self {
        BranchNode::Split { normal, rhs, left: Box::new(left), right: Box::new(right) }
    }

    pub fn len(&self) -> usize {
        match self {
            BranchNode::Leaf { .. } => 1,
            BranchNode::Split { left, right, .. } => 1 + left.len() + right.len(),
        }
    }
}

/// A leaf together with the edge rows leading to it.
#[derive(Clone, Debug)]
pub struct LeafView<'a> {
    pub path: Path,
    pub rows: Vec<(IntVector, Integer)>,
    pub certificate: Option<&'a FarkasCertificate>,
}

/// A binary tree of integer disjunctions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingProof {
    pub root: BranchNode,
}

impl BranchingProof {
    pub fn new(root: BranchNode) -> Self {
        BranchingProof { root }
    }

    /// Number of nodes `|T|`.
    pub fn len(&self) -> usize {
        self.root.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leaves in path order (left before right).
    pub fn leaves(&self) -> Vec<LeafView<'_>> {
        fn walk<'a>(node: &'a BranchNode, path: &mut Vec<Side>, rows: &mut Vec<(IntVector, Integer)>, out: &mut Vec<LeafView<'a>>) {
            match node {
                BranchNode::Leaf { certificate } => {
                    out.push(LeafView { path: Path(path.clone()), rows: rows.clone(), certificate: certificate.as_ref() })
                }
                BranchNode::Split { normal, rhs, left, right } => {
                    for (side, child) in [(Side::Left, left), (Side::Right, right)] {
                        path.push(side);
                        rows.push(edge_row(normal, rhs, side));
                        walk(child, path, rows, out);
                        rows.pop();
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves().len()
    }

    /// Every normal in the tree, in preorder.
    pub fn normals(&self) -> Vec<&IntVector> {
        fn walk<'a>(node: &'a BranchNode, out: &mut Vec<&'a IntVector>) {
            if let BranchNode::Split { normal, left, right, .. } = node {
                out.push(normal);
                walk(left, out);
                walk(right, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Copy of the tree with every certificate removed.
    pub fn strip_certificates(&self) -> BranchingProof {
        fn strip(node: &BranchNode) -> BranchNode {
            match node {
                BranchNode::Leaf { .. } => BranchNode::leaf(),
                BranchNode::Split { normal, rhs, left, right } => BranchNode::split(normal.clone(), rhs.clone(), strip(left), strip(right)),
            }
        }
        BranchingProof::new(strip(&self.root))
    }

    /// Bit sizes of the leaf certificates, in leaf order.
    pub fn certificate_bit_sizes(&self) -> Vec<u64> {
        self.leaves().iter().map(|l| l.certificate.map_or(0, BitSize::bit_size)).collect()
    }

    fn check_dims(&self, n: usize) -> Result<()> {
        self.normals().iter().try_for_each(|a| check_dim(n, a.dim()))
    }
}

/// `K` followed by the path rows of a leaf.
pub fn leaf_relaxation(k: &InequalitySystem, rows: &[(IntVector, Integer)]) -> Result<InequalitySystem> {
    let mut s = k.clone();
    for (a, b) in rows {
        s.push_int(a, b)?;
    }
    Ok(s)
}

/// A leaf whose relaxation is nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingLeaf {
    pub path: String,
    pub reason: String,
    pub witness: Option<RatVector>,
}

/// Verification outcome; failing leaves are sorted by path.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub valid: bool,
    pub failing_leaves: Vec<FailingLeaf>,
}

impl Report {
    pub(crate) fn from_failures(failing_leaves: Vec<FailingLeaf>) -> Self {
        Report { valid: failing_leaves.is_empty(), failing_leaves }
    }
}

/// Solves every leaf LP; valid iff each leaf relaxation is empty.
pub fn verify_branching_proof(k: &InequalitySystem, t: &BranchingProof) -> Result<Report> {
    t.check_dims(k.dim())?;
    let mut failures = Vec::new();
    for leaf in t.leaves() {
        if let Ok(x) = find_point(&leaf_relaxation(k, &leaf.rows)?) {
            failures.push(FailingLeaf { path: leaf.path.to_string(), reason: "leaf relaxation is nonempty".into(), witness: Some(x) });
        }
    }
    Ok(Report::from_failures(failures))
}

/// Pure arithmetic check of every leaf certificate; no LP is solved.
pub fn verify_certified_proof(k: &InequalitySystem, t: &BranchingProof) -> Result<bool> {
    t.check_dims(k.dim())?;
    for leaf in t.leaves() {
        let Some(cert) = leaf.certificate else {
            return Err(Error::InvalidProof(format!("leaf {} carries no certificate", leaf.path)));
        };
        if cert.multipliers.dim() != k.num_rows() + leaf.rows.len() || !cert.verify(&leaf_relaxation(k, &leaf.rows)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Labels every leaf with a reduced Farkas certificate over `K`'s rows then the path rows.
pub fn certify(k: &InequalitySystem, t: &BranchingProof) -> Result<BranchingProof> {
    t.check_dims(k.dim())?;
    fn go(k: &InequalitySystem, node: &BranchNode, path: &mut Vec<Side>, rows: &mut Vec<(IntVector, Integer)>) -> Result<BranchNode> {
        match node {
            BranchNode::Leaf { .. } => {
                let relax = leaf_relaxation(k, rows)?;
                match find_point(&relax) {
                    Ok(x) => Err(Error::InvalidProof(format!("leaf {} is nonempty, contains {x}", Path(path.clone())))),
                    Err(cert) => Ok(BranchNode::Leaf { certificate: Some(reduce_certificate(&relax, &cert)?) }),
                }
            }
            BranchNode::Split { normal, rhs, left, right } => {
                let mut kids = Vec::with_capacity(2);
                for (side, child) in [(Side::Left, left), (Side::Right, right)] {
                    path.push(side);
                    rows.push(edge_row(normal, rhs, side));
                    kids.push(go(k, child, path, rows)?);
                    rows.pop();
                    path.pop();
                }
                let right = kids.pop().expect("two children");
                let left = kids.pop().expect("two children");
                Ok(BranchNode::split(normal.clone(), rhs.clone(), left, right))
            }
        }
    }
    Ok(BranchingProof::new(go(k, &t.root, &mut Vec::new(), &mut Vec::new())?))
}
