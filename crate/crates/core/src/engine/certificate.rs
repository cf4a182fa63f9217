//! Proof trees and their independent checker.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::{self, Direction, Params, RewriteStep, RuleId, RuleLimits};
use crate::vector::DimensionVector;
use crate::verdict::Status;

/// A node in a proof tree: a step plus one subtree per output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub step: RewriteStep,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    /// Steps in pre-order.
    pub fn steps(&self) -> Vec<&RewriteStep> {
        let mut out = vec![&self.step];
        for c in &self.children {
            out.extend(c.steps());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofNode::size).sum::<usize>()
    }

    /// Rebuilds a tree from a pre-order step list, consuming one step per
    /// declared output.
    pub fn from_preorder(steps: &[RewriteStep]) -> Result<Self, CertificateError> {
        let mut it = steps.iter();
        let node = Self::take(&mut it)?;
        if it.next().is_some() {
            return Err(CertificateError::TrailingSteps);
        }
        Ok(node)
    }

    fn take<'a>(
        it: &mut impl Iterator<Item = &'a RewriteStep>,
    ) -> Result<Self, CertificateError> {
        let step = it.next().ok_or(CertificateError::TruncatedTrace)?.clone();
        let children = (0..step.outputs.len())
            .map(|_| Self::take(it))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProofNode { step, children })
    }
}

/// A claimed verdict for `root` together with its proof tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub root: DimensionVector,
    pub claim: Status,
    pub limits: RuleLimits,
    pub tree: ProofNode,
}

/// The certificate cannot be checked at all (as opposed to failing checks).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("step {rule:?} on {input} declares {outputs} outputs but has {children} subtrees")]
    ChildCount {
        rule: RuleId,
        input: String,
        outputs: usize,
        children: usize,
    },
    #[error("a certificate must claim Dense or Sparse")]
    UnknownClaim,
    #[error("trace ended before every output was justified")]
    TruncatedTrace,
    #[error("trace has steps after the proof tree is complete")]
    TrailingSteps,
}

impl Certificate {
    /// Checks every step, every parent/child link and the direction logic.
    /// `Ok(false)` means the certificate is well formed but wrong.
    pub fn verify(&self) -> Result<bool, CertificateError> {
        if self.claim == Status::Unknown {
            return Err(CertificateError::UnknownClaim);
        }
        if self.tree.step.input != self.root {
            return Ok(false);
        }
        check_node(&self.tree, self.claim, &self.limits)
    }
}

pub fn verify_certificate(c: &Certificate) -> Result<bool, CertificateError> {
    c.verify()
}

fn direction_allowed(dir: Direction, claim: Status) -> bool {
    match claim {
        Status::Dense => matches!(dir, Direction::Iff | Direction::DenseIf | Direction::BaseDense),
        Status::Sparse => {
            matches!(dir, Direction::Iff | Direction::SparseIf | Direction::BaseSparse)
        }
        Status::Unknown => false,
    }
}

fn check_node(
    node: &ProofNode,
    claim: Status,
    limits: &RuleLimits,
) -> Result<bool, CertificateError> {
    let step = &node.step;
    if node.children.len() != step.outputs.len() {
        return Err(CertificateError::ChildCount {
            rule: step.rule,
            input: step.input.to_string(),
            outputs: step.outputs.len(),
            children: node.children.len(),
        });
    }
    if !direction_allowed(step.direction, claim) {
        return Ok(false);
    }
    if step.direction.is_base() != step.outputs.is_empty() {
        return Ok(false);
    }
    if !refires(step, limits) {
        return Ok(false);
    }
    for (child, out) in node.children.iter().zip(&step.outputs) {
        if child.step.input != *out {
            return Ok(false);
        }
        if !check_node(child, claim, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn refires(step: &RewriteStep, limits: &RuleLimits) -> bool {
    match step.rule {
        RuleId::Domination => match (&step.params, step.outputs.as_slice()) {
            (Params::Dominates { side }, [w]) => {
                let s = side.apply(&step.input);
                step.direction == Direction::SparseIf
                    && w.len() < s.len()
                    && s.dominates(w).unwrap_or(false)
            }
            _ => false,
        },
        _ => rules::rerun(step, limits).iter().any(|s| s == step),
    }
}
