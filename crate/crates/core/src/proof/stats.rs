//! Size measures of proof objects.

use std::cmp::max;

use num_traits::{Signed, Zero};

use crate::linalg::{tree_bit_size, BitSize, IntVector, Integer};

use super::branching::{edge_row, BranchNode, BranchingProof, Side};
use super::enumerative::{EnumNode, EnumerativeProof};

/// Length, encoding size and largest coefficient of a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStats {
    pub length: u64,
    pub bit_size: u64,
    pub max_coeff: Integer,
}

pub trait HasStats {
    fn stats(&self) -> ProofStats;
}

pub fn proof_stats<T: HasStats + ?Sized>(t: &T) -> ProofStats {
    t.stats()
}

fn label_coeff(a: &IntVector, b: &Integer) -> Integer {
    max(a.norm_linf(), b.abs())
}

impl HasStats for BranchingProof {
    fn stats(&self) -> ProofStats {
        fn go(node: &BranchNode, nodes: &mut u64, labels: &mut u64, coeff: &mut Integer) {
            *nodes += 1;
            match node {
                BranchNode::Leaf { certificate } => *labels += certificate.bit_size(),
                BranchNode::Split { normal, rhs, left, right } => {
                    for (side, child) in [(Side::Left, left), (Side::Right, right)] {
                        let (a, b) = edge_row(normal, rhs, side);
                        *labels += a.bit_size() + b.bit_size();
                        *coeff = max(coeff.clone(), label_coeff(&a, &b));
                        go(child, nodes, labels, coeff);
                    }
                }
            }
        }
        let (mut nodes, mut labels, mut coeff) = (0, 0, Integer::zero());
        go(&self.root, &mut nodes, &mut labels, &mut coeff);
        ProofStats { length: nodes, bit_size: tree_bit_size(nodes, nodes - 1, labels), max_coeff: coeff }
    }
}

impl HasStats for EnumerativeProof {
    fn stats(&self) -> ProofStats {
        fn go(node: &EnumNode, nodes: &mut u64, labels: &mut u64, coeff: &mut Integer) {
            *nodes += 1;
            if let EnumNode::Branch { direction, lower, upper, children } = node {
                *labels += direction.bit_size() + lower.bit_size() + upper.bit_size();
                for (b, child) in children {
                    *labels += direction.bit_size() + b.bit_size();
                    *coeff = max(coeff.clone(), label_coeff(direction, b));
                    go(child, nodes, labels, coeff);
                }
            }
        }
        let (mut nodes, mut labels, mut coeff) = (0, 0, Integer::zero());
        go(&self.root, &mut nodes, &mut labels, &mut coeff);
        ProofStats { length: nodes, bit_size: tree_bit_size(nodes, nodes - 1, labels), max_coeff: coeff }
    }
}

impl HasStats for [IntVector] {
    fn stats(&self) -> ProofStats {
        ProofStats {
            length: self.len() as u64,
            bit_size: self.iter().map(BitSize::bit_size).sum(),
            max_coeff: self.iter().map(IntVector::norm_linf).max().unwrap_or_else(Integer::zero),
        }
    }
}
