//! Decision procedures for the six blocking notions.
//!
//! Every predicate takes the blocked allocation `mu`, the alternative
//! `sigma` (a full allocation differing from `mu`), and the blocking
//! coalition, and evaluates the defining clauses literally. `find_block`
//! is the existential wrapper used by the core solvers.

use crate::control::{controlled, controlled_star_unchecked};
use crate::economy::{Allocation, Economy};
use crate::set::{Coalition, SmallSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Weak,
    Strong,
    Exclusion,
    WeakExclusion,
    Effective,
    Rectification,
}

impl BlockKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockKind::Weak => "weak",
            BlockKind::Strong => "strong",
            BlockKind::Exclusion => "exclusion",
            BlockKind::WeakExclusion => "weak-exclusion",
            BlockKind::Effective => "effective",
            BlockKind::Rectification => "rectification",
        }
    }
}

/// A verified witness that `coalition` blocks some allocation via
/// `alternative` under `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingCertificate {
    pub kind: BlockKind,
    pub coalition: Coalition,
    pub alternative: Allocation,
}

/// Split `coalition` into (strictly better under σ, unaffected, worse or
/// incomparable).
pub fn partition_by_effect(
    economy: &Economy,
    coalition: Coalition,
    sigma: &Allocation,
    mu: &Allocation,
) -> (SmallSet, SmallSet, SmallSet) {
    let mut better = SmallSet::EMPTY;
    let mut unaffected = SmallSet::EMPTY;
    let mut worse = SmallSet::EMPTY;
    for i in coalition.iter() {
        if sigma.get(i) == mu.get(i) {
            unaffected.insert(i);
        } else if economy.prefs[i].strictly_prefers(sigma.get(i), mu.get(i)) {
            better.insert(i);
        } else {
            worse.insert(i);
        }
    }
    (better, unaffected, worse)
}

fn self_enforcing_under(economy: &Economy, sigma: &Allocation, c: SmallSet) -> bool {
    sigma.assigned_objects(c).is_subset(economy.endowment(c))
}

/// Clause 1 of the weak-improvement definitions: everyone in C weakly
/// prefers σ, someone strictly.
fn weak_improvement(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    let (better, unaffected, worse) = partition_by_effect(economy, coalition, sigma, mu);
    worse.is_empty() && !better.is_empty() && better.union(unaffected) == coalition
}

fn strict_improvement(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    coalition
        .iter()
        .all(|i| economy.prefs[i].strictly_prefers(sigma.get(i), mu.get(i)))
}

/// Outsiders strictly harmed by the move from μ to σ.
fn harmed_outsiders(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> SmallSet {
    economy
        .all_agents()
        .difference(coalition)
        .iter()
        .filter(|&j| economy.prefs[j].strictly_prefers(mu.get(j), sigma.get(j)))
        .collect()
}

pub fn weakly_blocks(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    weak_improvement(economy, coalition, sigma, mu)
        && self_enforcing_under(economy, sigma, coalition)
}

pub fn strongly_blocks(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    !coalition.is_empty()
        && strict_improvement(economy, coalition, sigma, mu)
        && self_enforcing_under(economy, sigma, coalition)
}

pub fn exclusion_blocks(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    if coalition.is_empty() || !strict_improvement(economy, coalition, sigma, mu) {
        return false;
    }
    let harmed = harmed_outsiders(economy, coalition, sigma, mu);
    if harmed.is_empty() {
        return true;
    }
    let omega = controlled(economy, coalition, mu).objects;
    harmed.iter().all(|j| matches!(mu.get(j), Some(o) if omega.contains(o)))
}

pub fn weakly_exclusion_blocks(
    economy: &Economy,
    coalition: Coalition,
    sigma: &Allocation,
    mu: &Allocation,
) -> bool {
    if !weak_improvement(economy, coalition, sigma, mu) {
        return false;
    }
    let (_, unaffected, _) = partition_by_effect(economy, coalition, sigma, mu);
    // Clause 2: the unaffected members' σ-assignments come from ω(C).
    if !sigma
        .assigned_objects(unaffected)
        .is_subset(economy.endowment(coalition))
    {
        return false;
    }
    let harmed = harmed_outsiders(economy, coalition, sigma, mu);
    if harmed.is_empty() {
        return true;
    }
    let omega = controlled(economy, coalition, mu).objects;
    // The subcoalitions of unaffected agents that stand on their own
    // endowments under σ; their independent control must not reach any
    // harmed outsider's μ-object.
    let own_closures: Vec<SmallSet> = unaffected
        .nonempty_subsets()
        .filter(|&c| self_enforcing_under(economy, sigma, c))
        .map(|c| controlled_star_unchecked(economy, c, coalition, mu).objects)
        .collect();
    harmed.iter().all(|j| match mu.get(j) {
        Some(o) => omega.contains(o) && own_closures.iter().all(|objs| !objs.contains(o)),
        None => false,
    })
}

fn redundancy_clause(
    economy: &Economy,
    coalition: Coalition,
    sigma: &Allocation,
    mu: &Allocation,
    rectification: bool,
) -> bool {
    let grand = economy.all_agents();
    let (_, unaffected, _) = partition_by_effect(economy, coalition, sigma, mu);
    let sigma_c = sigma.assigned_objects(coalition);
    for c in unaffected.nonempty_subsets() {
        if !self_enforcing_under(economy, sigma, c) {
            continue;
        }
        let redundant = economy.endowment(c).difference(sigma.assigned_objects(c));
        for o in redundant.iter() {
            let applies = if rectification {
                // 3': only objects initially held outside the coalition.
                matches!(mu.holder(o), Some(h) if !coalition.contains(h))
            } else {
                // 3: any redundant endowment, unless everyone is in C.
                coalition != grand
            };
            if applies && sigma_c.contains(o) {
                return false;
            }
        }
    }
    true
}

pub fn effectively_blocks(economy: &Economy, coalition: Coalition, sigma: &Allocation, mu: &Allocation) -> bool {
    weakly_blocks(economy, coalition, sigma, mu)
        && redundancy_clause(economy, coalition, sigma, mu, false)
}

pub fn rectification_blocks(
    economy: &Economy,
    coalition: Coalition,
    sigma: &Allocation,
    mu: &Allocation,
) -> bool {
    weakly_blocks(economy, coalition, sigma, mu)
        && redundancy_clause(economy, coalition, sigma, mu, true)
}

pub fn blocks(
    economy: &Economy,
    kind: BlockKind,
    coalition: Coalition,
    sigma: &Allocation,
    mu: &Allocation,
) -> bool {
    match kind {
        BlockKind::Weak => weakly_blocks(economy, coalition, sigma, mu),
        BlockKind::Strong => strongly_blocks(economy, coalition, sigma, mu),
        BlockKind::Exclusion => exclusion_blocks(economy, coalition, sigma, mu),
        BlockKind::WeakExclusion => weakly_exclusion_blocks(economy, coalition, sigma, mu),
        BlockKind::Effective => effectively_blocks(economy, coalition, sigma, mu),
        BlockKind::Rectification => rectification_blocks(economy, coalition, sigma, mu),
    }
}

/// Search every alternative allocation and candidate coalition for a
/// block of `mu`, in canonical (σ, C) order. Candidate coalitions are
/// restricted by clause 1: subsets of the strict improvers for the
/// strict-improvement notions, subsets of the weak improvers containing
/// a strict improver otherwise.
pub fn find_block(
    economy: &Economy,
    mu: &Allocation,
    kind: BlockKind,
    all: &[Allocation],
) -> Option<BlockingCertificate> {
    for sigma in all {
        if sigma == mu {
            continue;
        }
        let grand = economy.all_agents();
        let (better, unaffected, _) = partition_by_effect(economy, grand, sigma, mu);
        let strict_only = matches!(kind, BlockKind::Strong | BlockKind::Exclusion);
        let candidates = if strict_only { better } else { better.union(unaffected) };
        for c in candidates.nonempty_subsets() {
            if !strict_only && c.is_disjoint(better) {
                continue;
            }
            if blocks(economy, kind, c, sigma, mu) {
                return Some(BlockingCertificate {
                    kind,
                    coalition: c,
                    alternative: sigma.clone(),
                });
            }
        }
    }
    None
}
