//! Built-in example economies with known solution structure.
//!
//! Each fixture embeds an economy document plus a verification routine that
//! recomputes the facts the fixture is meant to illustrate and reports any
//! mismatches. The registry backs the `fixtures` CLI subcommand and the
//! integration tests.

use crate::cores::{compute_core, Concept};
use crate::doc::parse_economy;
use crate::economy::{Allocation, Assignment, Economy};
use crate::error::Result;
use crate::exec::Exec;
use crate::reduction::{check, Mode, Solution};
use crate::yrmh::{yrmh_all_outcomes, yrmh_run};
use crate::{control, set::SmallSet};

/// A named example economy with a self-check.
pub struct Fixture {
    pub id: &'static str,
    pub description: &'static str,
    pub source: &'static str,
    check: fn(&Economy) -> Result<Vec<String>>,
}

impl Fixture {
    /// Parse the embedded document.
    pub fn economy(&self) -> Result<Economy> {
        parse_economy(self.source)
    }

    /// Recompute the fixture's documented facts. Returns one message per
    /// mismatch; an empty list means every fact checked out.
    pub fn verify(&self) -> Result<Vec<String>> {
        let economy = self.economy()?;
        (self.check)(&economy)
    }
}

/// All registered fixtures, in presentation order.
pub fn all() -> &'static [Fixture] {
    FIXTURES
}

/// Look up a fixture by identifier.
pub fn find(id: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.id == id)
}

static FIXTURES: &[Fixture] = &[
    Fixture {
        id: "ex1",
        description: "three agents, one of whom owns both objects",
        source: include_str!("../fixtures/ex1.econ"),
        check: check_ex1,
    },
    Fixture {
        id: "ex2",
        description: "a single object co-owned by two of three agents",
        source: include_str!("../fixtures/ex2.econ"),
        check: check_ex2,
    },
    Fixture {
        id: "ex3",
        description: "a co-owned object alongside a privately owned one",
        source: include_str!("../fixtures/ex3.econ"),
        check: check_ex3,
    },
    Fixture {
        id: "ex5",
        description: "four agents with one triply co-owned object; documented trading run",
        source: include_str!("../fixtures/ex5.econ"),
        check: check_ex5,
    },
    Fixture {
        id: "ex6",
        description: "three private objects plus one fully public object",
        source: include_str!("../fixtures/ex6.econ"),
        check: check_ex6,
    },
    Fixture {
        id: "ex7",
        description: "a co-owned object and a private object; reduction counterexample",
        source: include_str!("../fixtures/ex7.econ"),
        check: check_ex7,
    },
    Fixture {
        id: "ex8",
        description: "one agent owning two objects plus a triply co-owned third",
        source: include_str!("../fixtures/ex8.econ"),
        check: check_ex8,
    },
    Fixture {
        id: "appendix-omega",
        description: "control-closure walkthrough economy",
        source: include_str!("../fixtures/appendix-omega.econ"),
        check: check_appendix_omega,
    },
    Fixture {
        id: "appendix-yrmh",
        description: "refined-exclusion-core member unreachable by the trading mechanism",
        source: include_str!("../fixtures/appendix-yrmh.econ"),
        check: check_appendix_yrmh,
    },
    Fixture {
        id: "appendix-effective",
        description: "effective-core member excluded by rectification blocking",
        source: include_str!("../fixtures/appendix-effective.econ"),
        check: check_appendix_effective,
    },
    Fixture {
        id: "prop1-augmented",
        description: "augmented market where every object is co-owned with an artificial agent",
        source: include_str!("../fixtures/prop1-augmented.econ"),
        check: check_prop1_augmented,
    },
    Fixture {
        id: "prop2-weakcore",
        description: "one agent owning every object; weak-core consistency counterexample",
        source: include_str!("../fixtures/prop2-weakcore.econ"),
        check: check_prop2_weakcore,
    },
];

/// Build an allocation from `(agent label, object label or None)` pairs.
/// Agents not listed go unassigned.
fn alloc(economy: &Economy, pairs: &[(&str, Option<&str>)]) -> Result<Allocation> {
    let mut slots: Vec<Assignment> = vec![None; economy.n_agents()];
    for (agent, object) in pairs {
        let i = economy.agent_index(agent)?;
        slots[i] = match object {
            Some(label) => Some(economy.object_index(label)?),
            None => None,
        };
    }
    Ok(Allocation(slots))
}

fn expect_core(
    economy: &Economy,
    concept: Concept,
    expected: &mut Vec<Allocation>,
    problems: &mut Vec<String>,
) -> Result<()> {
    expected.sort();
    let got = compute_core(economy, concept, Exec::default())?;
    if got.members != *expected {
        problems.push(format!(
            "{} core has {} member(s), expected {}",
            concept.name(),
            got.members.len(),
            expected.len()
        ));
    }
    Ok(())
}

fn check_ex1(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a"))])?;
    let sigma = alloc(e, &[("1", Some("a")), ("2", Some("b"))])?;
    let delta = alloc(e, &[("1", Some("a")), ("3", Some("b"))])?;

    expect_core(
        e,
        Concept::Weak,
        &mut vec![mu.clone(), sigma.clone(), delta.clone()],
        &mut problems,
    )?;
    expect_core(e, Concept::Strong, &mut vec![], &mut problems)?;
    expect_core(
        e,
        Concept::Exclusion,
        &mut vec![sigma.clone(), delta.clone()],
        &mut problems,
    )?;
    let refined = compute_core(e, Concept::RefinedExclusion, Exec::default())?;
    let exclusion = compute_core(e, Concept::Exclusion, Exec::default())?;
    if refined.members.is_empty() {
        problems.push("refined-exclusion core is empty".into());
    }
    if !refined.members.iter().all(|a| exclusion.contains(a)) {
        problems.push("refined-exclusion core is not inside the exclusion core".into());
    }
    Ok(problems)
}

fn check_ex2(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a"))])?;
    let sigma = alloc(e, &[("2", Some("a"))])?;
    let delta = alloc(e, &[("3", Some("a"))])?;
    let eta = alloc(e, &[])?;

    expect_core(
        e,
        Concept::Weak,
        &mut vec![mu.clone(), sigma.clone(), delta.clone(), eta],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::Strong,
        &mut vec![mu.clone(), sigma.clone()],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::Exclusion,
        &mut vec![mu.clone(), sigma.clone(), delta],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::RefinedExclusion,
        &mut vec![mu, sigma],
        &mut problems,
    )?;
    Ok(problems)
}

fn check_ex3(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a")), ("2", Some("b"))])?;
    let sigma = alloc(e, &[("2", Some("a")), ("1", Some("b"))])?;
    let delta = alloc(e, &[("1", Some("a")), ("3", Some("b"))])?;

    expect_core(
        e,
        Concept::Strong,
        &mut vec![mu.clone(), sigma.clone()],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::Exclusion,
        &mut vec![mu.clone(), sigma.clone(), delta],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::RefinedExclusion,
        &mut vec![mu, sigma],
        &mut problems,
    )?;
    Ok(problems)
}

fn check_ex5(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    // Priority order 4, 2, 3, 1.
    let order = vec![
        e.agent_index("4")?,
        e.agent_index("2")?,
        e.agent_index("3")?,
        e.agent_index("1")?,
    ];
    let (outcome, trace) = yrmh_run(e, &order)?;
    let expected = alloc(
        e,
        &[
            ("1", Some("c")),
            ("2", Some("a")),
            ("3", Some("b")),
            ("4", Some("d")),
        ],
    )?;
    if outcome != expected {
        problems.push("trading run produced an unexpected allocation".into());
    }
    if trace.steps.len() != 6 {
        problems.push(format!("trading run took {} steps, expected 6", trace.steps.len()));
    }
    let shared = SmallSet::from_indices([e.agent_index("1")?, e.agent_index("3")?]);
    let b = e.object_index("b")?;
    let saw_share = trace.steps.iter().flat_map(|s| s.events.iter()).any(|ev| {
        matches!(ev, crate::yrmh::TraceEvent::SharedOwnership { object, agents }
            if *object == b && *agents == shared)
    });
    if !saw_share {
        problems.push("agents 1 and 3 never acquired shared ownership of b".into());
    }
    Ok(problems)
}

fn check_ex6(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(
        e,
        &[
            ("1", Some("a")),
            ("3", Some("b")),
            ("2", Some("c")),
            ("4", Some("d")),
        ],
    )?;
    let sigma1 = alloc(
        e,
        &[
            ("4", Some("a")),
            ("1", Some("b")),
            ("3", Some("c")),
            ("2", Some("d")),
        ],
    )?;
    let sigma2 = alloc(
        e,
        &[
            ("1", Some("a")),
            ("3", Some("b")),
            ("4", Some("c")),
            ("2", Some("d")),
        ],
    )?;

    expect_core(
        e,
        Concept::Strong,
        &mut vec![mu.clone(), sigma1.clone(), sigma2.clone()],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::Exclusion,
        &mut vec![sigma1.clone(), sigma2.clone()],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::RefinedExclusion,
        &mut vec![sigma1.clone(), sigma2.clone()],
        &mut problems,
    )?;
    expect_core(
        e,
        Concept::Rectified,
        &mut vec![mu, sigma1.clone(), sigma2.clone()],
        &mut problems,
    )?;
    let mut reachable = vec![sigma1, sigma2];
    reachable.sort();
    let outcomes = yrmh_all_outcomes(e, Exec::default())?;
    if outcomes != reachable {
        problems.push("trading-mechanism outcomes differ from the documented pair".into());
    }
    Ok(problems)
}

fn check_ex7(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a")), ("3", Some("b"))])?;
    let sigma = alloc(e, &[("3", Some("a")), ("2", Some("b"))])?;

    expect_core(
        e,
        Concept::RefinedExclusion,
        &mut vec![mu, sigma],
        &mut problems,
    )?;
    let verdict = check(
        e,
        Solution::Core(Concept::RefinedExclusion),
        Mode::StrongGeneral,
        Exec::default(),
    )?;
    if verdict.holds {
        problems.push("refined-exclusion core unexpectedly passes strong consistency".into());
    }
    Ok(problems)
}

fn check_ex8(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a")), ("2", Some("b")), ("3", Some("c"))])?;
    let sigma = alloc(e, &[("1", Some("a")), ("2", Some("b")), ("4", Some("c"))])?;

    let refined = compute_core(e, Concept::RefinedExclusion, Exec::default())?;
    if refined.contains(&mu) {
        problems.push("refined-exclusion core unexpectedly contains the assignment giving c to 3".into());
    }
    if !refined.contains(&sigma) {
        problems.push("refined-exclusion core is missing the assignment giving c to 4".into());
    }
    let verdict = check(
        e,
        Solution::Core(Concept::RefinedExclusion),
        Mode::StrongGeneral,
        Exec::default(),
    )?;
    if verdict.holds {
        problems.push("refined-exclusion core unexpectedly passes strong consistency".into());
    }
    Ok(problems)
}

fn check_appendix_omega(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("b")), ("2", Some("c")), ("3", Some("a"))])?;
    let one = e.agent_index("1")?;
    let two = e.agent_index("2")?;
    let pair = SmallSet::from_indices([one, two]);

    let omega = control::controlled(e, pair, &mu);
    if omega.objects != e.all_objects() {
        problems.push("the coalition {1,2} should control every object".into());
    }
    let starred = control::controlled_star(e, SmallSet::singleton(one), pair, &mu)?;
    let expected = SmallSet::from_indices([e.object_index("b")?, e.object_index("c")?]);
    if starred.objects != expected {
        problems.push("restricted control of {1} within {1,2} should be {b, c}".into());
    }
    let refined = compute_core(e, Concept::RefinedExclusion, Exec::default())?;
    if refined.contains(&mu) {
        problems.push("the walkthrough allocation should fall to refined exclusion blocking".into());
    }
    Ok(problems)
}

fn check_appendix_yrmh(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a")), ("2", Some("b")), ("4", Some("c"))])?;

    let refined = compute_core(e, Concept::RefinedExclusion, Exec::default())?;
    if !refined.contains(&mu) {
        problems.push("refined-exclusion core is missing the documented member".into());
    }
    let outcomes = yrmh_all_outcomes(e, Exec::default())?;
    if outcomes.contains(&mu) {
        problems.push("the trading mechanism unexpectedly reaches the documented member".into());
    }
    Ok(problems)
}

fn check_appendix_effective(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("2", Some("a")), ("3", Some("b")), ("4", Some("c"))])?;

    let effective = compute_core(e, Concept::Effective, Exec::default())?;
    if !effective.contains(&mu) {
        problems.push("effective core is missing the documented member".into());
    }
    let rectified = compute_core(e, Concept::Rectified, Exec::default())?;
    if rectified.contains(&mu) {
        problems.push("rectified core unexpectedly retains the documented member".into());
    }
    let verdict = check(
        e,
        Solution::Core(Concept::Effective),
        Mode::Full,
        Exec::default(),
    )?;
    if verdict.holds {
        problems.push("effective core unexpectedly passes full consistency".into());
    }
    Ok(problems)
}

fn check_prop1_augmented(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let ttc = alloc(
        e,
        &[
            ("1", Some("b")),
            ("2", Some("a")),
            ("3", Some("c")),
            ("i*", None),
        ],
    )?;

    expect_core(e, Concept::Strong, &mut vec![ttc], &mut problems)?;
    let verdict = check(
        e,
        Solution::Core(Concept::Exclusion),
        Mode::Full,
        Exec::default(),
    )?;
    if verdict.holds {
        problems.push("exclusion core unexpectedly passes full consistency".into());
    }
    Ok(problems)
}

fn check_prop2_weakcore(e: &Economy) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let mu = alloc(e, &[("1", Some("a"))])?;

    let weak = compute_core(e, Concept::Weak, Exec::default())?;
    if !weak.contains(&mu) {
        problems.push("weak core is missing the single-assignment allocation".into());
    }
    let verdict = check(e, Solution::Core(Concept::Weak), Mode::Weak, Exec::default())?;
    if verdict.holds {
        problems.push("weak core unexpectedly passes weak consistency".into());
    }
    Ok(problems)
}
