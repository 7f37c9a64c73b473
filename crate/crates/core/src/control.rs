//! Control operators: which objects a coalition can ultimately direct,
//! given the current allocation.
//!
//! Both operators are fixed points of the same monotone extension step:
//! starting from a seed coalition, repeatedly add outside agents whose
//! current assignment lies inside the closure's endowment. The starred
//! variant never extends through a designated excluded set, so those
//! agents' ownership cannot grow the closure.

use crate::economy::{Allocation, Economy};
use crate::error::{Error, Result};
use crate::set::{Coalition, SmallSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ControlClosure {
    /// ∪_k C^k: the seed plus every agent pulled in by the iteration.
    pub agents: SmallSet,
    /// ω(closure agents): the objects the closure controls.
    pub objects: SmallSet,
}

fn closure(economy: &Economy, mu: &Allocation, seed: SmallSet, excluded: SmallSet) -> ControlClosure {
    let all = economy.all_agents();
    let mut agents = seed;
    loop {
        let owned = economy.endowment(agents);
        let mut grew = false;
        for i in all.difference(agents).difference(excluded).iter() {
            if let Some(o) = mu.get(i) {
                if owned.contains(o) {
                    agents.insert(i);
                    grew = true;
                }
            }
        }
        if !grew {
            return ControlClosure {
                agents,
                objects: economy.endowment(agents),
            };
        }
    }
}

/// Ω(C | ω, μ): objects controlled by `coalition` under `mu`.
pub fn controlled(economy: &Economy, coalition: Coalition, mu: &Allocation) -> ControlClosure {
    closure(economy, mu, coalition, SmallSet::EMPTY)
}

/// Ω*(C′ | C, ω, μ): objects controlled by `subcoalition` independently
/// of the ownership of `coalition ∖ subcoalition`, which never joins the
/// closure.
pub fn controlled_star(
    economy: &Economy,
    subcoalition: Coalition,
    coalition: Coalition,
    mu: &Allocation,
) -> Result<ControlClosure> {
    if !subcoalition.is_proper_subset(coalition) {
        return Err(Error::invalid(
            "controlled_star requires the subcoalition to be a proper subset of the coalition",
        ));
    }
    Ok(closure(economy, mu, subcoalition, coalition.difference(subcoalition)))
}

/// Internal variant used by blocking predicates, where the subcoalition
/// may coincide with the unaffected set without a proper-subset check.
pub(crate) fn controlled_star_unchecked(
    economy: &Economy,
    subcoalition: SmallSet,
    coalition: Coalition,
    mu: &Allocation,
) -> ControlClosure {
    closure(economy, mu, subcoalition, coalition.difference(subcoalition))
}
