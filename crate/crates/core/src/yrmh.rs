//! The generalized "you request my house — I get your turn" mechanism.
//!
//! A pointer state machine over remaining agents and objects. In each
//! step every remaining object points to its highest remaining owner
//! under the current working order (falling back to shared owners);
//! the top agent points to her favorite remaining object. Claims and
//! cycles remove agents; requests promote owners — and a promoted agent
//! also gains pointing priority for the objects she owns; after a cycle
//! is removed, the surviving owners and sharers of cycle objects inherit
//! shared ownership of the cycle agents' other endowments.

use crate::bounds;
use crate::economy::{Allocation, Assignment, Economy};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::set::SmallSet;

/// A permutation of the agent indices, highest priority first.
pub type PriorityOrder = Vec<usize>;

pub fn validate_order(economy: &Economy, order: &[usize]) -> Result<()> {
    let n = economy.n_agents();
    if order.len() != n || SmallSet::from_indices(order.iter().copied()) != economy.all_agents() {
        return Err(Error::invalid(
            "priority order must be a permutation of all agents",
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// The acting agent points to her favorite remaining object (or null).
    Pointed { agent: usize, object: Assignment },
    /// An object's target changed since the previous step (because its
    /// pointed agent was removed, or an owner rose in the working order).
    Repointed { object: usize, agent: Option<usize> },
    /// The owner of the requested object moves to the top of the order.
    Promoted { agent: usize },
    /// The acting agent obtains an unpointed object or the null object.
    Claimed { agent: usize, object: Assignment },
    /// A cycle is removed; each pair is (agent, object she obtains).
    CycleRemoved { pairs: Vec<(usize, usize)> },
    /// Surviving owners of a cycle object join the sharer set of `object`.
    SharedOwnership { object: usize, agents: SmallSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: usize,
    pub events: Vec<TraceEvent>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YrmhTrace {
    pub steps: Vec<TraceStep>,
}

struct State<'a> {
    economy: &'a Economy,
    remaining_agents: SmallSet,
    remaining_objects: SmallSet,
    /// C_o(t): original owners still remaining.
    owners: Vec<SmallSet>,
    /// S_o(t): remaining agents holding acquired shared ownership.
    sharers: Vec<SmallSet>,
    /// Working order of remaining agents, top first.
    order: Vec<usize>,
    /// object → pointed agent.
    obj_arc: Vec<Option<usize>>,
    /// agent → pointed (real) object.
    agent_arc: Vec<Option<usize>>,
    assignment: Vec<Assignment>,
}

impl State<'_> {
    /// The working-order-highest member of `set`, if any.
    fn highest_in_order(&self, set: SmallSet) -> Option<usize> {
        self.order.iter().copied().find(|&i| set.contains(i))
    }

    /// The agent the object should currently point to: its highest
    /// remaining owner in the working order, else its highest sharer.
    fn object_target(&self, o: usize) -> Option<usize> {
        self.highest_in_order(self.owners[o])
            .or_else(|| self.highest_in_order(self.sharers[o]))
    }

    fn remove_agent(&mut self, i: usize) {
        self.remaining_agents.remove(i);
        self.order.retain(|&j| j != i);
        self.agent_arc[i] = None;
        for o in 0..self.economy.n_objects() {
            self.owners[o].remove(i);
            self.sharers[o].remove(i);
        }
    }

    fn remove_object(&mut self, o: usize) {
        self.remaining_objects.remove(o);
        self.obj_arc[o] = None;
        for arc in self.agent_arc.iter_mut() {
            if *arc == Some(o) {
                *arc = None;
            }
        }
    }
}

/// Run the mechanism under a fixed priority order.
pub fn yrmh_run(economy: &Economy, order: &[usize]) -> Result<(Allocation, YrmhTrace)> {
    validate_order(economy, order)?;
    let n = economy.n_agents();
    let m = economy.n_objects();
    let mut st = State {
        economy,
        remaining_agents: economy.all_agents(),
        remaining_objects: economy.all_objects(),
        owners: economy.ownership.clone(),
        sharers: vec![SmallSet::EMPTY; m],
        order: order.to_vec(),
        obj_arc: vec![None; m],
        agent_arc: vec![None; n],
        assignment: vec![None; n],
    };
    for o in 0..m {
        st.obj_arc[o] = st.object_target(o);
    }

    let mut trace = YrmhTrace::default();
    let step_budget = 2 * (n + 1) * (m + n + 1);
    let mut step = 0usize;
    while !st.remaining_agents.is_empty() {
        step += 1;
        assert!(step <= step_budget, "mechanism failed to terminate");
        let mut events = Vec::new();

        // Re-point every remaining object whose target changed, whether
        // through a removal or a promotion reshuffling the order.
        for o in st.remaining_objects.iter() {
            let target = st.object_target(o);
            if st.obj_arc[o] != target {
                st.obj_arc[o] = target;
                events.push(TraceEvent::Repointed { object: o, agent: target });
            }
        }

        let actor = st.order[0];
        let favorite = economy.prefs[actor].favorite(st.remaining_objects);
        events.push(TraceEvent::Pointed { agent: actor, object: favorite });

        match favorite {
            None => {
                // Null object: immediate removal.
                events.push(TraceEvent::Claimed { agent: actor, object: None });
                st.assignment[actor] = None;
                st.remove_agent(actor);
            }
            Some(o) => {
                st.agent_arc[actor] = Some(o);
                match st.obj_arc[o] {
                    None => {
                        events.push(TraceEvent::Claimed { agent: actor, object: Some(o) });
                        st.assignment[actor] = Some(o);
                        st.remove_agent(actor);
                        st.remove_object(o);
                    }
                    Some(first_pointed) => {
                        // Walk the unique pointer path out of the actor.
                        let mut path = vec![(actor, o)];
                        let mut cycle = false;
                        let mut cur = first_pointed;
                        loop {
                            if cur == actor {
                                cycle = true;
                                break;
                            }
                            match st.agent_arc[cur] {
                                Some(next_obj) => {
                                    assert!(
                                        path.len() <= n,
                                        "pointer path longer than the agent count"
                                    );
                                    path.push((cur, next_obj));
                                    match st.obj_arc[next_obj] {
                                        Some(next_agent) => cur = next_agent,
                                        // The object's owners are all
                                        // gone; the path dead-ends.
                                        None => break,
                                    }
                                }
                                None => break,
                            }
                        }
                        if cycle {
                            let prev_owners = st.owners.clone();
                            let prev_sharers = st.sharers.clone();
                            events.push(TraceEvent::CycleRemoved { pairs: path.clone() });
                            for &(j, a) in &path {
                                st.assignment[j] = Some(a);
                            }
                            for &(j, _) in &path {
                                st.remove_agent(j);
                            }
                            for &(_, a) in &path {
                                st.remove_object(a);
                            }
                            // Sharing: surviving owners of cycle objects
                            // inherit the cycle agents' other endowments.
                            for b in st.remaining_objects.iter() {
                                let holders = prev_owners[b].union(prev_sharers[b]);
                                let cycle_holds =
                                    path.iter().any(|&(j, _)| holders.contains(j));
                                if !cycle_holds {
                                    continue;
                                }
                                let mut joiners = SmallSet::EMPTY;
                                for &(_, a) in &path {
                                    joiners = joiners.union(
                                        prev_owners[a]
                                            .union(prev_sharers[a])
                                            .intersect(st.remaining_agents)
                                            .difference(holders),
                                    );
                                }
                                if !joiners.is_empty() {
                                    st.sharers[b] = st.sharers[b].union(joiners);
                                    events.push(TraceEvent::SharedOwnership {
                                        object: b,
                                        agents: joiners,
                                    });
                                }
                            }
                        } else {
                            events.push(TraceEvent::Promoted { agent: first_pointed });
                            st.order.retain(|&j| j != first_pointed);
                            st.order.insert(0, first_pointed);
                        }
                    }
                }
            }
        }
        trace.steps.push(TraceStep { step, events });
    }
    Ok((Allocation(st.assignment), trace))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = items.len();
        if k == n {
            out.push(items.clone());
            return;
        }
        // Lexicographic: rotate each candidate into position k.
        for i in k..n {
            items[k..=i].rotate_right(1);
            rec(k + 1, items, out);
            items[k..=i].rotate_left(1);
        }
    }
    rec(0, &mut items, &mut out);
    out
}

/// The deduplicated outcome set over all |I|! priority orders, in
/// canonical allocation order.
pub fn yrmh_all_outcomes(economy: &Economy, exec: Exec) -> Result<Vec<Allocation>> {
    bounds::check_order_enumeration(economy.n_agents())?;
    let orders = permutations(economy.n_agents());
    let mut outcomes = exec::map_vec(exec, orders, |ord| {
        yrmh_run(economy, &ord)
            .expect("generated orders are valid permutations")
            .0
    });
    outcomes.sort();
    outcomes.dedup();
    Ok(outcomes)
}

/// Render a trace with the economy's labels, one line per step.
pub fn render_trace(economy: &Economy, trace: &YrmhTrace) -> String {
    let agent = |i: usize| economy.agents[i].clone();
    let object = |a: Assignment| match a {
        Some(o) => economy.objects[o].clone(),
        None => "null".to_string(),
    };
    let mut out = String::new();
    for step in &trace.steps {
        let mut parts = Vec::new();
        for ev in &step.events {
            parts.push(match ev {
                TraceEvent::Pointed { agent: i, object: o } => {
                    format!("{} points to {}", agent(*i), object(*o))
                }
                TraceEvent::Repointed { object: o, agent: Some(i) } => {
                    format!("{} re-points to {}", economy.objects[*o], agent(*i))
                }
                TraceEvent::Repointed { object: o, agent: None } => {
                    format!("{} points to nobody", economy.objects[*o])
                }
                TraceEvent::Promoted { agent: i } => format!("{} moves to the top", agent(*i)),
                TraceEvent::Claimed { agent: i, object: o } => {
                    format!("{} obtains {}", agent(*i), object(*o))
                }
                TraceEvent::CycleRemoved { pairs } => {
                    let cyc: Vec<String> = pairs
                        .iter()
                        .map(|&(i, o)| format!("{}→{}", agent(i), economy.objects[o]))
                        .collect();
                    format!("cycle removed [{}]", cyc.join(", "))
                }
                TraceEvent::SharedOwnership { object: o, agents } => {
                    let who: Vec<String> = agents.iter().map(agent).collect();
                    format!(
                        "{} acquire shared ownership of {}",
                        who.join(" and "),
                        economy.objects[*o]
                    )
                }
            });
        }
        out.push_str(&format!("step {}: {}\n", step.step, parts.join("; ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::Preference;

    // Four agents; a co-owned by {1,2,3}, b/c/d privately owned by 2/3/4.
    fn second_design() -> Economy {
        Economy::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                Preference::new(vec![0, 1, 2, 3], 4).unwrap(),
                Preference::new(vec![0, 2, 1, 3], 4).unwrap(),
                Preference::new(vec![1, 3, 2, 0], 4).unwrap(),
                Preference::new(vec![0, 1, 3, 2], 4).unwrap(),
            ],
            vec![
                SmallSet::from_indices([0, 1, 2]),
                SmallSet::singleton(1),
                SmallSet::singleton(2),
                SmallSet::singleton(3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn second_design_documented_run() {
        let e = second_design();
        let (alloc, trace) = yrmh_run(&e, &[3, 1, 2, 0]).unwrap();
        assert_eq!(alloc, Allocation(vec![Some(2), Some(0), Some(1), Some(3)]));
        assert_eq!(trace.steps.len(), 6);
        // Step two removes the (2, a) cycle and grants 1 and 3 shared
        // ownership of b.
        assert!(trace.steps[1].events.contains(&TraceEvent::SharedOwnership {
            object: 1,
            agents: SmallSet::from_indices([0, 2]),
        }));
        // Step four also passes b's surviving sharer 1 the shared
        // ownership of c, so step six resolves as the trivial (1, c) cycle.
        assert!(trace.steps[3].events.contains(&TraceEvent::SharedOwnership {
            object: 2,
            agents: SmallSet::singleton(0),
        }));
        assert!(trace.steps[5]
            .events
            .contains(&TraceEvent::CycleRemoved { pairs: vec![(0, 2)] }));
    }

    #[test]
    fn self_cycles_when_everyone_wants_their_own() {
        // Two agents each owning their favorite: identity regardless of order.
        let e = Economy::new(
            vec!["1".into(), "2".into()],
            vec!["a".into(), "b".into()],
            vec![
                Preference::new(vec![0, 1], 2).unwrap(),
                Preference::new(vec![1, 0], 2).unwrap(),
            ],
            vec![SmallSet::singleton(0), SmallSet::singleton(1)],
        )
        .unwrap();
        for ord in [[0, 1], [1, 0]] {
            let (alloc, _) = yrmh_run(&e, &ord).unwrap();
            assert_eq!(alloc, Allocation(vec![Some(0), Some(1)]));
        }
    }

    #[test]
    fn replay_determinism_and_modes_agree() {
        let e = second_design();
        let a = yrmh_run(&e, &[3, 1, 2, 0]).unwrap();
        let b = yrmh_run(&e, &[3, 1, 2, 0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            yrmh_all_outcomes(&e, Exec::Sequential).unwrap(),
            yrmh_all_outcomes(&e, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let perms = permutations(3);
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert_eq!(perms[5], vec![2, 1, 0]);
    }
}
