//! Reduced economies and the consistency checkers.
//!
//! A self-enforcing coalition may leave with its assignments; the
//! remaining agents inherit the surviving ownership structure, with
//! orphaned objects becoming publicly owned. The checkers quantify over
//! every member of a solution and every qualifying departure and
//! recompute the solution on each reduction.

use crate::cores::{compute_core, Concept};
use crate::economy::{
    is_self_enforcing, minimal_self_enforcing, Allocation, Economy, Preference,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::set::{Coalition, SmallSet};
use crate::taxonomy;
use crate::yrmh::yrmh_all_outcomes;

/// Γ(μ, I∖I′) together with the index remaps back to the original
/// economy.
#[derive(Clone, Debug)]
pub struct ReducedEconomy {
    pub economy: Economy,
    /// reduced agent index → original agent index (ascending).
    pub agent_map: Vec<usize>,
    /// reduced object index → original object index (ascending).
    pub object_map: Vec<usize>,
    /// Removed agents, in original indices.
    pub removed: Coalition,
    original_agents: usize,
}

impl ReducedEconomy {
    /// μ_{I∖I′}: the restriction of an original-economy allocation.
    /// Callers must pass an allocation assigning the removed agents the
    /// same objects as the allocation used to build the reduction (or
    /// none of the removed objects at all).
    pub fn restrict(&self, mu: &Allocation) -> Result<Allocation> {
        let max_orig = self.object_map.iter().copied().max().map_or(0, |m| m + 1);
        let mut obj_remap: Vec<Option<usize>> = vec![None; max_orig];
        for (new, &orig) in self.object_map.iter().enumerate() {
            obj_remap[orig] = Some(new);
        }
        let mut out = Vec::with_capacity(self.agent_map.len());
        for &orig in &self.agent_map {
            match mu.get(orig) {
                None => out.push(None),
                Some(o) => match obj_remap.get(o).copied().flatten() {
                    Some(new) => out.push(Some(new)),
                    None => {
                        return Err(Error::invalid(
                            "allocation assigns a removed object to a remaining agent",
                        ))
                    }
                },
            }
        }
        Ok(Allocation(out))
    }

    /// μ′ ⊕ μ_{I′}: the reduced allocation combined with the removed
    /// agents' assignments under the original allocation.
    pub fn extend(&self, reduced: &Allocation, original_mu: &Allocation) -> Allocation {
        let mut out = vec![None; self.original_agents];
        for (new, &orig) in self.agent_map.iter().enumerate() {
            out[orig] = reduced.get(new).map(|o| self.object_map[o]);
        }
        for i in self.removed.iter() {
            out[i] = original_mu.get(i);
        }
        Allocation(out)
    }
}

/// Build Γ(μ, I∖I′). The removed coalition must be a nonempty proper
/// subset that is self-enforcing under μ.
pub fn reduce(economy: &Economy, mu: &Allocation, removed: Coalition) -> Result<ReducedEconomy> {
    mu.validate(economy)?;
    if removed.is_empty() || !removed.is_proper_subset(economy.all_agents()) {
        return Err(Error::invalid(
            "removed coalition must be a nonempty proper subset of the agents",
        ));
    }
    if !is_self_enforcing(economy, mu, removed) {
        return Err(Error::invalid(
            "removed coalition is not self-enforcing under the allocation",
        ));
    }
    let remaining_agents = economy.all_agents().difference(removed);
    let removed_objects = mu.assigned_objects(removed);
    let agent_map: Vec<usize> = remaining_agents.iter().collect();
    let object_map: Vec<usize> = economy
        .all_objects()
        .difference(removed_objects)
        .iter()
        .collect();

    let agents = agent_map.iter().map(|&i| economy.agents[i].clone()).collect();
    let objects: Vec<String> = object_map.iter().map(|&o| economy.objects[o].clone()).collect();
    let mut obj_remap = vec![usize::MAX; economy.n_objects()];
    for (new, &orig) in object_map.iter().enumerate() {
        obj_remap[orig] = new;
    }
    let mut agent_remap = vec![usize::MAX; economy.n_agents()];
    for (new, &orig) in agent_map.iter().enumerate() {
        agent_remap[orig] = new;
    }

    let prefs = agent_map
        .iter()
        .map(|&i| {
            let ranking: Vec<usize> = economy.prefs[i]
                .ranking()
                .iter()
                .filter(|&&o| !removed_objects.contains(o))
                .map(|&o| obj_remap[o])
                .collect();
            Preference::new(ranking, object_map.len())
        })
        .collect::<Result<Vec<_>>>()?;

    let full = SmallSet::full(agent_map.len());
    let ownership = object_map
        .iter()
        .map(|&o| {
            let survivors = economy.ownership[o].intersect(remaining_agents);
            if survivors.is_empty() {
                full
            } else {
                survivors.iter().map(|i| agent_remap[i]).collect()
            }
        })
        .collect();

    let reduced = Economy::new(agents, objects, prefs, ownership)?;
    Ok(ReducedEconomy {
        economy: reduced,
        agent_map,
        object_map,
        removed,
        original_agents: economy.n_agents(),
    })
}

/// A solution whose consistency can be checked: one of the core
/// concepts, or the YRMH-IGYT outcome set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solution {
    Core(Concept),
    Yrmh,
}

impl Solution {
    pub fn name(self) -> &'static str {
        match self {
            Solution::Core(c) => c.name(),
            Solution::Yrmh => "yrmh",
        }
    }

    pub fn parse(name: &str) -> Result<Solution> {
        if name == "yrmh" {
            Ok(Solution::Yrmh)
        } else {
            Concept::parse(name).map(Solution::Core)
        }
    }

    pub fn compute(self, economy: &Economy, exec: Exec) -> Result<Vec<Allocation>> {
        match self {
            Solution::Core(c) => Ok(compute_core(economy, c, exec)?.members),
            Solution::Yrmh => yrmh_all_outcomes(economy, exec),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    Weak,
    StrongGeneral,
    StrongE0,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Weak => "weak",
            Mode::StrongGeneral => "strong",
            Mode::StrongE0 => "strong-e0",
        }
    }

    pub fn parse(name: &str) -> Result<Mode> {
        match name {
            "full" => Ok(Mode::Full),
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::StrongGeneral),
            "strong-e0" => Ok(Mode::StrongE0),
            _ => Err(Error::invalid(format!(
                "unknown mode {name:?}; expected full, weak, strong, or strong-e0"
            ))),
        }
    }
}

/// The first failure found, reported in a replayable form.
#[derive(Clone, Debug)]
pub struct Counterexample {
    /// The solution member whose departure breaks the property.
    pub mu: Option<Allocation>,
    /// The departing coalition, in original agent indices.
    pub removed: Option<Coalition>,
    /// The comparison economy (reduced, or augmented for the E⁰ mode).
    pub comparison: Option<Economy>,
    /// Expected member absent from the comparison solution set.
    pub missing: Option<Allocation>,
    /// Comparison-set member with no matching counterpart.
    pub extra: Option<Allocation>,
}

#[derive(Clone, Debug)]
pub struct ConsistencyVerdict {
    pub solution: Solution,
    pub mode: Mode,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

fn qualifying_departures(
    economy: &Economy,
    mu: &Allocation,
    mode: Mode,
) -> Vec<Coalition> {
    match mode {
        Mode::Weak => minimal_self_enforcing(economy, mu),
        _ => {
            let grand = economy.all_agents();
            grand
                .nonempty_subsets()
                .filter(|&c| c != grand && is_self_enforcing(economy, mu, c))
                .collect()
        }
    }
}

/// Consistency / weak consistency: every member's restriction survives
/// in every qualifying reduction.
pub fn check_consistency(
    economy: &Economy,
    solution: Solution,
    mode: Mode,
    exec: Exec,
) -> Result<ConsistencyVerdict> {
    assert!(matches!(mode, Mode::Full | Mode::Weak));
    let f = solution.compute(economy, exec)?;
    for mu in &f {
        for removed in qualifying_departures(economy, mu, mode) {
            let r = reduce(economy, mu, removed)?;
            let restriction = r.restrict(mu)?;
            let f_red = solution.compute(&r.economy, exec)?;
            if !f_red.contains(&restriction) {
                return Ok(ConsistencyVerdict {
                    solution,
                    mode,
                    holds: false,
                    counterexample: Some(Counterexample {
                        mu: Some(mu.clone()),
                        removed: Some(removed),
                        comparison: Some(r.economy.clone()),
                        missing: Some(restriction),
                        extra: None,
                    }),
                });
            }
        }
    }
    Ok(ConsistencyVerdict {
        solution,
        mode,
        holds: true,
        counterexample: None,
    })
}

/// Set-equality consistency: the reduced solution set must equal the
/// restrictions of the members agreeing with μ on the departing agents.
pub fn check_strong_consistency_general(
    economy: &Economy,
    solution: Solution,
    exec: Exec,
) -> Result<ConsistencyVerdict> {
    let f = solution.compute(economy, exec)?;
    for mu in &f {
        for removed in qualifying_departures(economy, mu, Mode::Full) {
            let r = reduce(economy, mu, removed)?;
            let f_red = solution.compute(&r.economy, exec)?;
            let mut expected: Vec<Allocation> = f
                .iter()
                .filter(|delta| removed.iter().all(|i| delta.get(i) == mu.get(i)))
                .map(|delta| r.restrict(delta))
                .collect::<Result<_>>()?;
            expected.sort();
            expected.dedup();
            let missing = expected.iter().find(|a| !f_red.contains(a)).cloned();
            let extra = f_red.iter().find(|a| !expected.contains(a)).cloned();
            if missing.is_some() || extra.is_some() {
                return Ok(ConsistencyVerdict {
                    solution,
                    mode: Mode::StrongGeneral,
                    holds: false,
                    counterexample: Some(Counterexample {
                        mu: Some(mu.clone()),
                        removed: Some(removed),
                        comparison: Some(r.economy.clone()),
                        missing,
                        extra,
                    }),
                });
            }
        }
    }
    Ok(ConsistencyVerdict {
        solution,
        mode: Mode::StrongGeneral,
        holds: true,
        counterexample: None,
    })
}

/// Private-public augmentation invariance: f(Γ) must equal the
/// restrictions of f(Γ*) after dropping the artificial agent.
pub fn check_strong_consistency_e0(
    economy: &Economy,
    solution: Solution,
    exec: Exec,
) -> Result<ConsistencyVerdict> {
    if !taxonomy::is_private_public_ownership(economy) {
        return Err(Error::invalid(
            "strong-e0 consistency requires a private-public-ownership economy",
        ));
    }
    let star = taxonomy::augment_private_public(economy)?;
    let left = solution.compute(economy, exec)?;
    let mut right: Vec<Allocation> = solution
        .compute(&star, exec)?
        .into_iter()
        .map(|mu| {
            // Drop the artificial agent (last index); her assignment, if
            // real, simply goes unassigned in the restriction.
            Allocation(mu.0[..economy.n_agents()].to_vec())
        })
        .collect();
    right.sort();
    right.dedup();
    let missing = left.iter().find(|a| !right.contains(a)).cloned();
    let extra = right.iter().find(|a| !left.contains(a)).cloned();
    let holds = missing.is_none() && extra.is_none();
    Ok(ConsistencyVerdict {
        solution,
        mode: Mode::StrongE0,
        holds,
        counterexample: if holds {
            None
        } else {
            Some(Counterexample {
                mu: None,
                removed: None,
                comparison: Some(star),
                missing,
                extra,
            })
        },
    })
}

/// Dispatch on the mode.
pub fn check(
    economy: &Economy,
    solution: Solution,
    mode: Mode,
    exec: Exec,
) -> Result<ConsistencyVerdict> {
    match mode {
        Mode::Full | Mode::Weak => check_consistency(economy, solution, mode, exec),
        Mode::StrongGeneral => check_strong_consistency_general(economy, solution, exec),
        Mode::StrongE0 => check_strong_consistency_e0(economy, solution, exec),
    }
}
