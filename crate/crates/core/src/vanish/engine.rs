use super::context::Context;
use super::fact::{FactSet, HypothesisRecord};
use super::rules::{apply, Emission, RuleId};
use crate::error::Result;

/// Saturate the context under every rule.
pub fn infer(ctx: &Context) -> Result<FactSet> {
    infer_with_order(ctx, RuleId::ALL)
}

/// Saturate using the given rule order. The fixed point does not depend on
/// the order; this entry point exists so that can be tested.
pub fn infer_with_order(ctx: &Context, order: &[RuleId]) -> Result<FactSet> {
    ctx.validate()?;
    let mut set = FactSet::new(ctx.a(), ctx.k());
    for h in ctx.assumptions() {
        set.hypotheses.insert(*h, HypothesisRecord::asserted());
    }
    loop {
        let mut changed = false;
        for &rule in order {
            for emission in apply(rule, ctx, &set)? {
                changed |= match emission {
                    Emission::Hypothesis(h, d) => set.add_hypothesis(h, d),
                    Emission::Fact(f) => set.insert(f)?,
                    Emission::Relation(r) => set.relations.insert(r),
                };
            }
        }
        if !changed {
            return Ok(set);
        }
    }
}
