//! The economy model: agents, objects, strict preferences with an
//! acceptability cutoff, collective ownership, and allocations.

use std::cmp::Ordering;
use std::fmt;

use crate::bounds;
use crate::error::{Error, Result};
use crate::set::{Coalition, SmallSet};

/// A strict ranking of acceptable objects.
///
/// The null object sits immediately after the last acceptable object.
/// Unlisted objects are unacceptable: each is strictly worse than null,
/// and two distinct unacceptable objects are mutually unranked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preference {
    ranking: Vec<usize>,
    rank_of: Vec<usize>,
    null_rank: usize,
}

impl Preference {
    pub fn new(ranking: Vec<usize>, n_objects: usize) -> Result<Self> {
        let null_rank = ranking.len();
        let mut rank_of = vec![null_rank + 1; n_objects];
        for (r, &o) in ranking.iter().enumerate() {
            if o >= n_objects {
                return Err(Error::invalid(format!(
                    "preference lists object index {o}, but there are only {n_objects} objects"
                )));
            }
            if rank_of[o] != null_rank + 1 {
                return Err(Error::invalid(format!(
                    "preference lists object index {o} twice"
                )));
            }
            rank_of[o] = r;
        }
        Ok(Preference {
            ranking,
            rank_of,
            null_rank,
        })
    }

    /// Acceptable objects, best first.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn is_acceptable(&self, o: usize) -> bool {
        self.rank_of[o] < self.null_rank
    }

    fn rank(&self, a: Assignment) -> usize {
        match a {
            None => self.null_rank,
            Some(o) => self.rank_of[o],
        }
    }

    /// a ≻ b. Two distinct unacceptable objects are not comparable.
    pub fn strictly_prefers(&self, a: Assignment, b: Assignment) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// a ≽ b: strictly better or the very same assignment.
    pub fn weakly_prefers(&self, a: Assignment, b: Assignment) -> bool {
        a == b || self.strictly_prefers(a, b)
    }

    /// The ≻-best entry of `available ∪ {null}`: the highest-ranked
    /// acceptable object in `available`, or null when there is none.
    pub fn favorite(&self, available: SmallSet) -> Assignment {
        self.ranking.iter().copied().find(|&o| available.contains(o))
    }
}

/// An agent's assignment: a real object index or the null object.
pub type Assignment = Option<usize>;

/// An exchange economy with collective endowments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Economy {
    pub agents: Vec<String>,
    pub objects: Vec<String>,
    pub prefs: Vec<Preference>,
    /// Per object, its nonempty owner set C_o.
    pub ownership: Vec<SmallSet>,
}

impl Economy {
    pub fn new(
        agents: Vec<String>,
        objects: Vec<String>,
        prefs: Vec<Preference>,
        ownership: Vec<SmallSet>,
    ) -> Result<Self> {
        let e = Economy {
            agents,
            objects,
            prefs,
            ownership,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_agents();
        let m = self.n_objects();
        if n == 0 {
            return Err(Error::invalid("economy has no agents"));
        }
        if n > 63 || m > 63 {
            return Err(Error::invalid("at most 63 agents and 63 objects are representable"));
        }
        if self.prefs.len() != n {
            return Err(Error::invalid(format!(
                "expected {n} preference lists, found {}",
                self.prefs.len()
            )));
        }
        if self.ownership.len() != m {
            return Err(Error::invalid(format!(
                "expected {m} owner sets, found {}",
                self.ownership.len()
            )));
        }
        let all = self.all_agents();
        for (o, &owners) in self.ownership.iter().enumerate() {
            if owners.is_empty() {
                return Err(Error::invalid(format!(
                    "object {} has an empty owner set",
                    self.objects[o]
                )));
            }
            if !owners.is_subset(all) {
                return Err(Error::invalid(format!(
                    "object {} lists an unknown owner index",
                    self.objects[o]
                )));
            }
        }
        for p in &self.prefs {
            if p.rank_of.len() != m {
                return Err(Error::invalid("preference built for a different object count"));
            }
        }
        let mut labels: Vec<&str> = self.agents.iter().map(String::as_str).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate agent labels"));
        }
        let mut labels: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate object labels"));
        }
        Ok(())
    }

    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn all_agents(&self) -> SmallSet {
        SmallSet::full(self.n_agents())
    }

    pub fn all_objects(&self) -> SmallSet {
        SmallSet::full(self.n_objects())
    }

    pub fn agent_index(&self, label: &str) -> Result<usize> {
        self.agents
            .iter()
            .position(|a| a == label)
            .ok_or_else(|| Error::invalid(format!("unknown agent {label:?}")))
    }

    pub fn object_index(&self, label: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::invalid(format!("unknown object {label:?}")))
    }

    /// ω(C): the objects whose entire owner set lies inside `coalition`.
    pub fn endowment(&self, coalition: SmallSet) -> SmallSet {
        let mut owned = SmallSet::EMPTY;
        for (o, &owners) in self.ownership.iter().enumerate() {
            if owners.is_subset(coalition) {
                owned.insert(o);
            }
        }
        owned
    }

    /// Every allocation, exactly once, in canonical order: lexicographic
    /// by agent index, each agent's assignments ordered by object index
    /// with null last.
    pub fn allocations(&self) -> Result<Vec<Allocation>> {
        bounds::check_enumeration(self.n_agents(), self.n_objects())?;
        let n = self.n_agents();
        let mut out = Vec::new();
        let mut current: Vec<Assignment> = vec![None; n];
        let mut used = SmallSet::EMPTY;
        fn rec(
            i: usize,
            n: usize,
            m: usize,
            current: &mut Vec<Assignment>,
            used: &mut SmallSet,
            out: &mut Vec<Allocation>,
        ) {
            if i == n {
                out.push(Allocation(current.clone()));
                return;
            }
            for o in 0..m {
                if !used.contains(o) {
                    current[i] = Some(o);
                    used.insert(o);
                    rec(i + 1, n, m, current, used, out);
                    used.remove(o);
                }
            }
            current[i] = None;
            rec(i + 1, n, m, current, used, out);
        }
        rec(0, n, self.n_objects(), &mut current, &mut used, &mut out);
        Ok(out)
    }
}

/// A feasible assignment of objects to agents, injective on real objects.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Allocation(pub Vec<Assignment>);

impl Allocation {
    pub fn get(&self, agent: usize) -> Assignment {
        self.0[agent]
    }

    pub fn n_agents(&self) -> usize {
        self.0.len()
    }

    /// σ(C) restricted to real objects.
    pub fn assigned_objects(&self, coalition: SmallSet) -> SmallSet {
        let mut objs = SmallSet::EMPTY;
        for i in coalition.iter() {
            if let Some(o) = self.0[i] {
                objs.insert(o);
            }
        }
        objs
    }

    /// All real objects in the image.
    pub fn image(&self) -> SmallSet {
        let mut objs = SmallSet::EMPTY;
        for a in &self.0 {
            if let Some(o) = a {
                objs.insert(*o);
            }
        }
        objs
    }

    /// The agent holding `object`, if any.
    pub fn holder(&self, object: usize) -> Option<usize> {
        self.0.iter().position(|&a| a == Some(object))
    }

    pub fn validate(&self, economy: &Economy) -> Result<()> {
        if self.0.len() != economy.n_agents() {
            return Err(Error::invalid(format!(
                "allocation covers {} agents, economy has {}",
                self.0.len(),
                economy.n_agents()
            )));
        }
        let mut seen = SmallSet::EMPTY;
        for &a in &self.0 {
            if let Some(o) = a {
                if o >= economy.n_objects() {
                    return Err(Error::invalid(format!("allocation uses object index {o}")));
                }
                if seen.contains(o) {
                    return Err(Error::invalid(format!(
                        "object {} assigned twice",
                        economy.objects[o]
                    )));
                }
                seen.insert(o);
            }
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, economy: &'a Economy) -> AllocationDisplay<'a> {
        AllocationDisplay {
            alloc: self,
            economy,
        }
    }
}

impl fmt::Debug for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|a| match a {
                Some(o) => o.to_string(),
                None => "·".to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Canonical ordering matching `Economy::allocations` enumeration order:
/// real objects ascending, null greater than every real object.
impl Ord for Allocation {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |a: Assignment| a.map_or(usize::MAX, |o| o);
        self.0
            .iter()
            .map(|&a| key(a))
            .cmp(other.0.iter().map(|&a| key(a)))
    }
}

impl PartialOrd for Allocation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct AllocationDisplay<'a> {
    alloc: &'a Allocation,
    economy: &'a Economy,
}

impl fmt::Display for AllocationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .alloc
            .0
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let obj = match a {
                    Some(o) => self.economy.objects[o].as_str(),
                    None => "null",
                };
                format!("{}←{}", self.economy.agents[i], obj)
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// σ(C) ⊆ ω(C) ∪ {o*}: the coalition can enforce its own assignments.
pub fn is_self_enforcing(economy: &Economy, alloc: &Allocation, coalition: Coalition) -> bool {
    alloc
        .assigned_objects(coalition)
        .is_subset(economy.endowment(coalition))
}

/// The ⊆-minimal nonempty self-enforcing proper coalitions under
/// `alloc`, in ascending bitmask order. The grand coalition is always
/// self-enforcing and is not counted.
pub fn minimal_self_enforcing(economy: &Economy, alloc: &Allocation) -> Vec<Coalition> {
    let grand = economy.all_agents();
    let all: Vec<Coalition> = grand
        .nonempty_subsets()
        .filter(|&c| c != grand && is_self_enforcing(economy, alloc, c))
        .collect();
    all.iter()
        .copied()
        .filter(|&c| !all.iter().any(|&d| d.is_proper_subset(c)))
        .collect()
}

/// σ Pareto dominates μ: everyone weakly better off, someone strictly.
pub fn pareto_dominates(economy: &Economy, sigma: &Allocation, mu: &Allocation) -> bool {
    let mut strict = false;
    for (i, p) in economy.prefs.iter().enumerate() {
        if !p.weakly_prefers(sigma.get(i), mu.get(i)) {
            return false;
        }
        if p.strictly_prefers(sigma.get(i), mu.get(i)) {
            strict = true;
        }
    }
    strict
}

/// No allocation in `all` Pareto dominates `mu`.
pub fn pareto_efficient(economy: &Economy, mu: &Allocation, all: &[Allocation]) -> bool {
    !all.iter().any(|s| pareto_dominates(economy, s, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(n: usize, m: usize, prefs: &[&[usize]], owners: &[&[usize]]) -> Economy {
        Economy::new(
            (1..=n).map(|i| i.to_string()).collect(),
            (0..m).map(|o| char::from(b'a' + o as u8).to_string()).collect(),
            prefs
                .iter()
                .map(|r| Preference::new(r.to_vec(), m).unwrap())
                .collect(),
            owners
                .iter()
                .map(|c| SmallSet::from_indices(c.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn allocation_counts() {
        let e = toy(2, 2, &[&[0, 1], &[0, 1]], &[&[0], &[1]]);
        assert_eq!(e.allocations().unwrap().len(), 7);
        let e = toy(
            5,
            4,
            &[&[0], &[0], &[0], &[0], &[0]],
            &[&[0], &[1], &[2], &[3]],
        );
        assert_eq!(e.allocations().unwrap().len(), 501);
    }

    #[test]
    fn allocations_canonical_order_no_duplicates() {
        let e = toy(3, 2, &[&[0, 1], &[0, 1], &[0, 1]], &[&[0], &[1]]);
        let all = e.allocations().unwrap();
        for w in all.windows(2) {
            assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
        }
        for a in &all {
            a.validate(&e).unwrap();
        }
    }

    #[test]
    fn preference_comparisons() {
        // 3 objects, accepts only b (index 1).
        let p = Preference::new(vec![1], 3).unwrap();
        assert!(p.strictly_prefers(Some(1), None));
        assert!(p.strictly_prefers(None, Some(0)));
        // two unacceptable objects: unranked both ways, weak only if equal
        assert!(!p.strictly_prefers(Some(0), Some(2)));
        assert!(!p.strictly_prefers(Some(2), Some(0)));
        assert!(!p.weakly_prefers(Some(0), Some(2)));
        assert!(p.weakly_prefers(Some(0), Some(0)));
        assert_eq!(p.favorite(SmallSet::from_indices([0, 2])), None);
        assert_eq!(p.favorite(SmallSet::from_indices([0, 1])), Some(1));
    }

    #[test]
    fn endowment_monotone_and_exact() {
        let e = toy(3, 2, &[&[0, 1], &[0, 1], &[0, 1]], &[&[0, 1], &[0]]);
        assert_eq!(e.endowment(SmallSet::singleton(0)), SmallSet::singleton(1));
        assert_eq!(
            e.endowment(SmallSet::from_indices([0, 1])),
            SmallSet::from_indices([0, 1])
        );
        assert_eq!(e.endowment(SmallSet::singleton(2)), SmallSet::EMPTY);
    }

    #[test]
    fn minimal_self_enforcing_singletons() {
        // 1 owns a and is assigned it; 2 and 3 own nothing and hold null.
        let e = toy(3, 1, &[&[0], &[0], &[0]], &[&[0]]);
        let mu = Allocation(vec![Some(0), None, None]);
        let mins = minimal_self_enforcing(&e, &mu);
        assert_eq!(
            mins,
            vec![SmallSet::singleton(0), SmallSet::singleton(1), SmallSet::singleton(2)]
        );
    }
}
