//! Bounded proof search: two terms are equal in the theory presented by a
//! rule set iff one rewrites to the other under the symmetrized system.
//! The search runs convex DPO steps on the interpretations from both ends
//! and meets in the middle.

use crate::cospan::InterfacedGraph;
use crate::dpo::{applicable_steps, rule_from_terms, DpoError, DpoRule};
use crate::signature::Signature;
use crate::term::{interpret, typecheck, Mode, RewriteRuleTerm, Term, TypeError};

/// One step of a found derivation: which rule, and whether it was applied
/// in its stated direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub rule: String,
    pub forward: bool,
}

impl std::fmt::Display for ProofStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.forward {
            write!(f, "{}", self.rule)
        } else {
            write!(f, "{} (reversed)", self.rule)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProveOutcome {
    /// A derivation of at most `fuel` steps was found.
    Proved(Vec<ProofStep>),
    /// The search space within the fuel bound was exhausted or cut off.
    Inconclusive,
}

/// Search for a derivation between `t1` and `t2` of length at most `fuel`
/// over the rules applied in both directions.
pub fn prove_equal(
    t1: &Term,
    t2: &Term,
    rules: &[RewriteRuleTerm],
    sig: &Signature,
    mode: Mode,
    fuel: usize,
) -> Result<ProveOutcome, DpoError> {
    let ty1 = typecheck(t1, sig, mode)?;
    let ty2 = typecheck(t2, sig, mode)?;
    if ty1 != ty2 {
        return Err(DpoError::Type(TypeError::SidesMismatch {
            lhs: ty1,
            rhs: ty2,
        }));
    }
    let mut system: Vec<(DpoRule, bool)> = Vec::new();
    for r in rules {
        system.push((rule_from_terms(r, sig, mode)?, true));
        let flipped = RewriteRuleTerm::new(r.name.clone(), r.rhs.clone(), r.lhs.clone());
        system.push((rule_from_terms(&flipped, sig, mode)?, false));
    }

    let start = interpret(t1, sig, mode)?;
    let goal = interpret(t2, sig, mode)?;
    if start.iso_to(&goal) {
        return Ok(ProveOutcome::Proved(Vec::new()));
    }

    // path entries are (graph, steps-from-that-side's-term).
    let mut left: Vec<(InterfacedGraph, Vec<ProofStep>)> = vec![(start, Vec::new())];
    let mut right: Vec<(InterfacedGraph, Vec<ProofStep>)> = vec![(goal, Vec::new())];
    let mut left_frontier: Vec<usize> = vec![0];
    let mut right_frontier: Vec<usize> = vec![0];
    let mut depth_left = 0;
    let mut depth_right = 0;

    while depth_left + depth_right < fuel {
        let expand_left = depth_left <= depth_right;
        let (seen, frontier, other, depth) = if expand_left {
            (&mut left, &mut left_frontier, &right, &mut depth_left)
        } else {
            (&mut right, &mut right_frontier, &left, &mut depth_right)
        };
        if frontier.is_empty() {
            return Ok(ProveOutcome::Inconclusive);
        }
        *depth += 1;
        let mut next_frontier = Vec::new();
        for &idx in frontier.iter() {
            let (host, path) = seen[idx].clone();
            for (rule, forward) in &system {
                let steps = applicable_steps(&host, std::slice::from_ref(rule), mode)?;
                for step in steps {
                    if seen.iter().any(|(g, _)| g.iso_to(&step.after)) {
                        continue;
                    }
                    let mut new_path = path.clone();
                    new_path.push(ProofStep {
                        rule: rule.name.clone(),
                        forward: *forward,
                    });
                    // Meeting the other side closes the derivation.
                    if let Some((_, other_path)) =
                        other.iter().find(|(g, _)| g.iso_to(&step.after))
                    {
                        let trace = assemble(expand_left, &new_path, other_path);
                        return Ok(ProveOutcome::Proved(trace));
                    }
                    seen.push((step.after.clone(), new_path));
                    next_frontier.push(seen.len() - 1);
                }
            }
        }
        *frontier = next_frontier;
        if left_frontier.is_empty() && right_frontier.is_empty() {
            return Ok(ProveOutcome::Inconclusive);
        }
    }
    Ok(ProveOutcome::Inconclusive)
}

/// Join the two half-paths into a single derivation from `t1` to `t2`.
/// Steps found from the right end are replayed backwards with their
/// direction flipped.
fn assemble(met_from_left: bool, new_path: &[ProofStep], other_path: &[ProofStep]) -> Vec<ProofStep> {
    let (from_left, from_right) = if met_from_left {
        (new_path, other_path)
    } else {
        (other_path, new_path)
    };
    let mut trace: Vec<ProofStep> = from_left.to_vec();
    for step in from_right.iter().rev() {
        trace.push(ProofStep {
            rule: step.rule.clone(),
            forward: !step.forward,
        });
    }
    trace
}
