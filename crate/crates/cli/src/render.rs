//! Text rendering of certificates and the rule table.

use grassdense::engine::ProofNode;
use grassdense::rules::{RewriteStep, RuleId};

/// Indented tree, two spaces per level.
pub fn trace_tree(steps: &[RewriteStep]) -> String {
    match ProofNode::from_preorder(steps) {
        Ok(root) => {
            let mut out = String::new();
            walk(&root, 0, &mut out);
            out
        }
        Err(_) => steps.iter().map(|s| format!("{}\n", s.summary())).collect(),
    }
}

fn walk(node: &ProofNode, depth: usize, out: &mut String) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(&format!("{:?} ", node.step.direction));
    out.push_str(&node.step.summary());
    out.push('\n');
    for c in &node.children {
        walk(c, depth + 1, out);
    }
}

/// Rule identifiers as they appear in JSON, with their trace names.
pub fn rule_table() -> String {
    let mut s = String::from("Rules (JSON id: trace name):\n");
    for r in RuleId::ALL {
        s += &format!("  {:<16} {}\n", r.serialized_name(), r.description());
    }
    s
}
