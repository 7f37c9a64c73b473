//! Acceptance gate: twelve end-to-end criteria, one test each, printing a
//! pass/fail line per criterion.

use std::sync::OnceLock;

use coresolve::blocking::{self, BlockKind};
use coresolve::cores::{compute_core, compute_core_with, Concept};
use coresolve::economy::{is_self_enforcing, pareto_efficient, Allocation, Economy};
use coresolve::exec::{self, Exec};
use coresolve::fixtures;
use coresolve::generator::{generate, GeneratorSpec};
use coresolve::reduction::{check, reduce, Mode, Solution};
use coresolve::set::SmallSet;
use coresolve::taxonomy::{self, ClassLabel};
use coresolve::yrmh::{yrmh_all_outcomes, yrmh_run, TraceEvent};

type CheckResult = Result<(), String>;

fn criterion(number: usize, name: &str, body: impl FnOnce() -> CheckResult) {
    match body() {
        Ok(()) => println!("criterion {number} ({name}): pass"),
        Err(msg) => {
            println!("criterion {number} ({name}): FAIL — {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn fixture_economy(id: &str) -> Economy {
    fixtures::find(id)
        .unwrap_or_else(|| panic!("missing fixture {id}"))
        .economy()
        .unwrap()
}

fn alloc(economy: &Economy, pairs: &[(&str, &str)]) -> Allocation {
    let mut slots = vec![None; economy.n_agents()];
    for (agent, object) in pairs {
        let i = economy.agent_index(agent).unwrap();
        slots[i] = match *object {
            "null" => None,
            label => Some(economy.object_index(label).unwrap()),
        };
    }
    Allocation(slots)
}

fn agents(economy: &Economy, labels: &[&str]) -> SmallSet {
    labels
        .iter()
        .map(|l| economy.agent_index(l).unwrap())
        .collect()
}

fn core_members(economy: &Economy, concept: Concept) -> Vec<Allocation> {
    compute_core(economy, concept, Exec::default())
        .unwrap()
        .members
}

fn expect_members(
    economy: &Economy,
    concept: Concept,
    expected: &[Allocation],
) -> CheckResult {
    let got = core_members(economy, concept);
    let mut want = expected.to_vec();
    want.sort();
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "{} core has {} members, expected {}",
            concept.name(),
            got.len(),
            want.len()
        ))
    }
}

fn require(cond: bool, msg: &str) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

// ---------------------------------------------------------------------------
// Shared random sweep (criteria 8, 10, 12).

struct Instance {
    economy: Economy,
    all: Vec<Allocation>,
    cores: Vec<(Concept, Vec<Allocation>)>,
    yrmh: Vec<Allocation>,
    pareto: Vec<Allocation>,
}

impl Instance {
    fn core(&self, concept: Concept) -> &[Allocation] {
        &self
            .cores
            .iter()
            .find(|(c, _)| *c == concept)
            .expect("all concepts computed")
            .1
    }
}

fn build_instance(spec: &GeneratorSpec) -> Instance {
    let economy = generate(spec).unwrap();
    let all = economy.allocations().unwrap();
    let cores = Concept::ALL
        .iter()
        .map(|&c| {
            (
                c,
                compute_core_with(&economy, c, Exec::Sequential, &all).members,
            )
        })
        .collect();
    let yrmh = yrmh_all_outcomes(&economy, Exec::Sequential).unwrap();
    let pareto = all
        .iter()
        .filter(|a| pareto_efficient(&economy, a, &all))
        .cloned()
        .collect();
    Instance {
        economy,
        all,
        cores,
        yrmh,
        pareto,
    }
}

fn sweep() -> &'static [Instance] {
    static SWEEP: OnceLock<Vec<Instance>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let shapes = [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (2, 3), (1, 2), (4, 3)];
        let densities = [1.0, 0.8, 0.6, 0.4];
        let mut specs = Vec::new();
        for seed in 0..1000u64 {
            let (n, m) = shapes[seed as usize % shapes.len()];
            let mut spec = GeneratorSpec::new(seed, n, m);
            spec.density = densities[seed as usize % densities.len()];
            specs.push(spec);
        }
        for seed in 0..100u64 {
            let mut spec = GeneratorSpec::new(10_000 + seed, 5, 4);
            spec.density = densities[seed as usize % densities.len()];
            specs.push(spec);
        }
        exec::map_vec(Exec::default(), specs, |spec| build_instance(&spec))
    })
}

// Shared class-conditional sweep (criteria 9, 10).

fn class_sweep() -> &'static [(ClassLabel, Instance)] {
    static CLASSES: OnceLock<Vec<(ClassLabel, Instance)>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let densities = [1.0, 0.8, 0.6];
        let mut specs = Vec::new();
        for &label in &ClassLabel::ALL {
            // Two size configurations per class; 200 seeds each class.
            let shapes: [(usize, usize); 2] = match label {
                ClassLabel::HousingMarket => [(3, 3), (4, 4)],
                ClassLabel::AugmentedHousingMarket => [(4, 3), (5, 4)],
                ClassLabel::NoRedundantOwnership | ClassLabel::NoOverlappingOwnership => [(3, 3), (4, 3)],
                _ => [(3, 3), (4, 3)],
            };
            for seed in 0..200u64 {
                let (n, m) = shapes[if seed < 150 { 0 } else { 1 }];
                let mut spec = GeneratorSpec::new(20_000 + seed, n, m);
                spec.class = Some(label);
                spec.density = densities[seed as usize % densities.len()];
                specs.push((label, spec));
            }
        }
        exec::map_vec(Exec::default(), specs, |(label, spec)| {
            (label, build_instance(&spec))
        })
    })
}

fn is_subset(small: &[Allocation], large: &[Allocation]) -> bool {
    small.iter().all(|a| large.contains(a))
}

fn set_eq(a: &[Allocation], b: &[Allocation]) -> bool {
    a == b
}

// Full/weak consistency by direct recomputation over qualifying departures.
fn consistent(economy: &Economy, members: &[Allocation], concept: Concept, weak: bool) -> bool {
    for mu in members {
        let departures: Vec<SmallSet> = if weak {
            coresolve::economy::minimal_self_enforcing(economy, mu)
        } else {
            economy
                .all_agents()
                .nonempty_subsets()
                .filter(|&c| c != economy.all_agents() && is_self_enforcing(economy, mu, c))
                .collect()
        };
        for removed in departures {
            let r = reduce(economy, mu, removed).unwrap();
            let restriction = r.restrict(mu).unwrap();
            let reduced_core = core_members(&r.economy, concept);
            if !reduced_core.contains(&restriction) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_kingdom_exact_sets() {
    criterion(1, "single-owner economy exact core sets", || {
        let e = fixture_economy("ex1");
        let mu = alloc(&e, &[("1", "a")]);
        let sigma = alloc(&e, &[("1", "a"), ("2", "b")]);
        let delta = alloc(&e, &[("1", "a"), ("3", "b")]);
        expect_members(&e, Concept::Weak, &[mu.clone(), sigma.clone(), delta.clone()])?;
        expect_members(&e, Concept::Strong, &[])?;
        expect_members(&e, Concept::Exclusion, &[sigma, delta])?;
        require(
            !core_members(&e, Concept::RefinedExclusion).is_empty(),
            "refined-exclusion core must be nonempty",
        )
    });
}

#[test]
fn criterion_02_co_ownership_exact_sets() {
    criterion(2, "co-ownership economy exact core sets", || {
        let e = fixture_economy("ex2");
        let mu = alloc(&e, &[("1", "a")]);
        let sigma = alloc(&e, &[("2", "a")]);
        let delta = alloc(&e, &[("3", "a")]);
        let eta = alloc(&e, &[]);
        expect_members(
            &e,
            Concept::Weak,
            &[mu.clone(), sigma.clone(), delta.clone(), eta],
        )?;
        expect_members(&e, Concept::Strong, &[mu.clone(), sigma.clone()])?;
        expect_members(&e, Concept::Exclusion, &[mu.clone(), sigma.clone(), delta.clone()])?;
        expect_members(&e, Concept::RefinedExclusion, &[mu.clone(), sigma])?;
        require(
            blocking::weakly_exclusion_blocks(&e, agents(&e, &["1", "2"]), &mu, &delta),
            "{1,2} must weakly exclusion block the outsider allocation",
        )
    });
}

#[test]
fn criterion_03_combined_exact_sets() {
    criterion(3, "co-owned plus private economy exact core sets", || {
        let e = fixture_economy("ex3");
        let mu = alloc(&e, &[("1", "a"), ("2", "b")]);
        let sigma = alloc(&e, &[("2", "a"), ("1", "b")]);
        let delta = alloc(&e, &[("1", "a"), ("3", "b")]);
        expect_members(&e, Concept::Strong, &[mu.clone(), sigma.clone()])?;
        expect_members(&e, Concept::Exclusion, &[mu.clone(), sigma.clone(), delta.clone()])?;
        expect_members(&e, Concept::RefinedExclusion, &[mu.clone(), sigma])?;
        require(
            blocking::weakly_exclusion_blocks(&e, agents(&e, &["1", "2"]), &mu, &delta),
            "{1,2} must weakly exclusion block delta via mu",
        )
    });
}

#[test]
fn criterion_04_documented_trading_run() {
    criterion(4, "documented six-step trading run", || {
        let e = fixture_economy("ex5");
        let order: Vec<usize> = ["4", "2", "3", "1"]
            .iter()
            .map(|l| e.agent_index(l).unwrap())
            .collect();
        let (outcome, trace) = yrmh_run(&e, &order).unwrap();
        let sigma = alloc(&e, &[("1", "c"), ("2", "a"), ("3", "b"), ("4", "d")]);
        require(outcome == sigma, "run must produce the documented allocation")?;
        require(trace.steps.len() == 6, "run must take exactly six steps")?;
        let i = |l: &str| e.agent_index(l).unwrap();
        let o = |l: &str| e.object_index(l).unwrap();
        let has = |step: usize, ev: TraceEvent| trace.steps[step].events.contains(&ev);
        require(
            has(0, TraceEvent::Promoted { agent: i("2") }),
            "step one must promote 2",
        )?;
        require(
            has(1, TraceEvent::CycleRemoved { pairs: vec![(i("2"), o("a"))] }),
            "step two must remove the (2, a) cycle",
        )?;
        require(
            has(1, TraceEvent::SharedOwnership {
                object: o("b"),
                agents: agents(&e, &["1", "3"]),
            }),
            "step two must grant 1 and 3 shared ownership of b",
        )?;
        require(
            has(2, TraceEvent::Promoted { agent: i("3") }),
            "step three must promote 3",
        )?;
        require(
            has(3, TraceEvent::CycleRemoved { pairs: vec![(i("3"), o("b"))] }),
            "step four must remove the (3, b) cycle",
        )?;
        require(
            has(4, TraceEvent::CycleRemoved { pairs: vec![(i("4"), o("d"))] }),
            "step five must remove the (4, d) cycle",
        )?;
        require(
            has(5, TraceEvent::CycleRemoved { pairs: vec![(i("1"), o("c"))] }),
            "step six must hand c to 1",
        )
    });
}

#[test]
fn criterion_05_existing_tenants_and_augmentation() {
    criterion(5, "existing-tenants economy and its augmentation", || {
        let e = fixture_economy("ex6");
        let mu = alloc(&e, &[("1", "a"), ("3", "b"), ("2", "c"), ("4", "d")]);
        let sigma1 = alloc(&e, &[("4", "a"), ("1", "b"), ("3", "c"), ("2", "d")]);
        let sigma2 = alloc(&e, &[("1", "a"), ("3", "b"), ("4", "c"), ("2", "d")]);
        expect_members(&e, Concept::Strong, &[mu.clone(), sigma1.clone(), sigma2.clone()])?;
        expect_members(&e, Concept::Exclusion, &[sigma1.clone(), sigma2.clone()])?;
        expect_members(&e, Concept::RefinedExclusion, &[sigma1.clone(), sigma2.clone()])?;
        expect_members(&e, Concept::Rectified, &[mu.clone(), sigma1.clone(), sigma2.clone()])?;
        let mut pair = vec![sigma1.clone(), sigma2.clone()];
        pair.sort();
        require(
            yrmh_all_outcomes(&e, Exec::default()).unwrap() == pair,
            "mechanism outcomes must be the documented pair",
        )?;

        // Augmentation: the public object becomes privately owned by an
        // artificial agent who accepts nothing.
        let aug = taxonomy::augment_private_public(&e).unwrap();
        let extend = |a: &Allocation| {
            let mut v = a.0.clone();
            v.push(None);
            Allocation(v)
        };
        let (mu_x, s1_x, s2_x) = (extend(&mu), extend(&sigma1), extend(&sigma2));
        expect_members(&aug, Concept::Strong, &[])?;
        let star = aug.n_agents() - 1;
        let coalition = |labels: &[&str]| {
            let mut c = agents(&aug, labels);
            c.insert(star);
            c
        };
        require(
            blocking::weakly_blocks(&aug, coalition(&["1", "2"]), &s1_x, &mu_x),
            "{1,2,i*} must weakly block the tenant allocation via the first exchange",
        )?;
        require(
            blocking::weakly_blocks(&aug, coalition(&["2", "3"]), &s2_x, &s1_x),
            "{2,3,i*} must weakly block the first exchange via the second",
        )?;
        require(
            blocking::weakly_blocks(&aug, coalition(&["1", "2"]), &s1_x, &s2_x),
            "{1,2,i*} must weakly block the second exchange via the first",
        )?;

        // Augmentation invariance holds for exclusion/refined/mechanism,
        // fails for the strong core.
        for solution in [
            Solution::Core(Concept::Exclusion),
            Solution::Core(Concept::RefinedExclusion),
            Solution::Yrmh,
        ] {
            let verdict = check(&e, solution, Mode::StrongE0, Exec::default()).unwrap();
            require(
                verdict.holds,
                "augmentation invariance must hold for the exclusion-style solutions",
            )?;
        }
        let verdict = check(&e, Solution::Core(Concept::Strong), Mode::StrongE0, Exec::default())
            .unwrap();
        require(!verdict.holds, "augmentation invariance must fail for the strong core")
    });
}

#[test]
fn criterion_06_augmented_market_fixture() {
    criterion(6, "augmented market: singleton strong core, Pareto exclusion core", || {
        let e = fixture_economy("prop1-augmented");
        let ttc = alloc(&e, &[("1", "b"), ("2", "a"), ("3", "c"), ("i*", "null")]);
        expect_members(&e, Concept::Strong, &[ttc])?;
        let all = e.allocations().unwrap();
        let pareto: Vec<Allocation> = all
            .iter()
            .filter(|a| pareto_efficient(&e, a, &all))
            .cloned()
            .collect();
        require(
            core_members(&e, Concept::Exclusion) == pareto,
            "exclusion core must equal the Pareto set",
        )?;
        let verdict = check(
            &e,
            Solution::Core(Concept::Exclusion),
            Mode::Weak,
            Exec::default(),
        )
        .unwrap();
        require(!verdict.holds, "exclusion core must fail weak consistency")?;
        let removed = verdict
            .counterexample
            .as_ref()
            .and_then(|c| c.removed)
            .ok_or("verdict must carry the departing coalition")?;
        require(
            removed == SmallSet::singleton(e.agent_index("i*").unwrap()),
            "the counterexample departure must be the artificial agent alone",
        )
    });
}

#[test]
fn criterion_07_appendix_fixtures() {
    criterion(7, "control closure, unreachable member, inconsistency witnesses", || {
        // Control-operator walkthrough.
        let e = fixture_economy("appendix-omega");
        let mu = alloc(&e, &[("1", "b"), ("2", "c"), ("3", "a")]);
        let sigma = alloc(&e, &[("1", "b"), ("2", "a"), ("3", "c")]);
        let pair = agents(&e, &["1", "2"]);
        require(
            coresolve::control::controlled(&e, pair, &mu).objects == e.all_objects(),
            "{1,2} must control all three objects",
        )?;
        let one = agents(&e, &["1"]);
        let bc: SmallSet = [e.object_index("b").unwrap(), e.object_index("c").unwrap()]
            .into_iter()
            .collect();
        require(
            coresolve::control::controlled_star(&e, one, pair, &mu)
                .unwrap()
                .objects
                == bc,
            "restricted control of {1} within {1,2} must be {b, c}",
        )?;
        require(
            blocking::weakly_exclusion_blocks(&e, pair, &sigma, &mu),
            "{1,2} must weakly exclusion block the walkthrough allocation",
        )?;

        // Refined-core member the mechanism never reaches.
        let e = fixture_economy("appendix-yrmh");
        let mu = alloc(&e, &[("1", "a"), ("2", "b"), ("4", "c")]);
        require(
            core_members(&e, Concept::RefinedExclusion).contains(&mu),
            "the documented member must lie in the refined-exclusion core",
        )?;
        require(
            !yrmh_all_outcomes(&e, Exec::default()).unwrap().contains(&mu),
            "no priority order may reach the documented member",
        )?;

        // Effective core member whose departure breaks consistency.
        let e = fixture_economy("appendix-effective");
        let mu = alloc(&e, &[("2", "a"), ("3", "b"), ("4", "c")]);
        require(
            core_members(&e, Concept::Effective).contains(&mu),
            "the documented member must lie in the effective core",
        )?;
        let verdict = check(
            &e,
            Solution::Core(Concept::Effective),
            Mode::Full,
            Exec::default(),
        )
        .unwrap();
        require(!verdict.holds, "effective core must fail full consistency")?;
        let removed = agents(&e, &["3", "4"]);
        let r = reduce(&e, &mu, removed).unwrap();
        let restriction = r.restrict(&mu).unwrap();
        require(
            !core_members(&r.economy, Concept::Effective).contains(&restriction),
            "removing {3,4} must strand the restriction outside the reduced effective core",
        )
    });
}

#[test]
fn criterion_08_lattice_sweep() {
    criterion(8, "inclusion lattice over the random sweep", || {
        for inst in sweep() {
            let refined = inst.core(Concept::RefinedExclusion);
            let exclusion = inst.core(Concept::Exclusion);
            let rectified = inst.core(Concept::Rectified);
            let effective = inst.core(Concept::Effective);
            let strong = inst.core(Concept::Strong);
            let weak = inst.core(Concept::Weak);
            let pareto = &inst.pareto;
            require(!refined.is_empty(), "refined-exclusion core must be nonempty")?;
            require(
                is_subset(refined, exclusion) && is_subset(refined, rectified),
                "refined must sit inside exclusion and rectified",
            )?;
            require(
                is_subset(strong, rectified)
                    && is_subset(rectified, effective)
                    && is_subset(effective, weak),
                "strong ⊆ rectified ⊆ effective ⊆ weak must hold",
            )?;
            require(
                is_subset(&inst.yrmh, refined),
                "every mechanism outcome must lie in the refined-exclusion core",
            )?;
            for members in [exclusion, refined, effective, rectified, strong] {
                require(
                    is_subset(members, pareto),
                    "each exclusion-style and strong core must be Pareto efficient",
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_class_conditional_sweep() {
    criterion(9, "ownership-class equalities over the class sweep", || {
        for (label, inst) in class_sweep() {
            let yrmh = &inst.yrmh;
            let refined = inst.core(Concept::RefinedExclusion);
            let exclusion = inst.core(Concept::Exclusion);
            let strong = inst.core(Concept::Strong);
            let rectified = inst.core(Concept::Rectified);
            let effective = inst.core(Concept::Effective);
            let pareto = &inst.pareto;
            match label {
                ClassLabel::HousingMarket => {
                    require(
                        strong.len() == 1
                            && set_eq(yrmh, strong)
                            && set_eq(refined, strong)
                            && set_eq(exclusion, strong),
                        "housing market: all four solutions must be the same singleton",
                    )?;
                }
                ClassLabel::AugmentedHousingMarket => {
                    require(strong.len() == 1, "augmented market: strong core must stay a singleton")?;
                    require(
                        set_eq(exclusion, pareto),
                        "augmented market: exclusion core must equal the Pareto set",
                    )?;
                }
                ClassLabel::HouseAllocation | ClassLabel::PublicOwnership => {
                    for members in [yrmh, refined, exclusion, strong, rectified, effective] {
                        require(
                            set_eq(members, pareto),
                            "public ownership: every solution must equal the Pareto set",
                        )?;
                    }
                }
                ClassLabel::NoRedundantOwnership => {
                    require(
                        is_subset(yrmh, refined)
                            && is_subset(refined, strong)
                            && is_subset(refined, exclusion),
                        "no-redundant: mechanism ⊆ refined ⊆ strong ∩ exclusion",
                    )?;
                    require(
                        set_eq(rectified, strong) && set_eq(effective, strong),
                        "no-redundant: rectified and effective must equal the strong core",
                    )?;
                }
                ClassLabel::NoOverlappingOwnership => {
                    require(
                        set_eq(yrmh, strong) && set_eq(refined, strong) && is_subset(strong, exclusion),
                        "no-overlapping: mechanism = refined = strong ⊆ exclusion",
                    )?;
                    require(
                        set_eq(rectified, strong) && set_eq(effective, strong),
                        "no-overlapping: rectified and effective must equal the strong core",
                    )?;
                }
                ClassLabel::PrivateOwnership => {
                    require(
                        set_eq(yrmh, refined) && set_eq(refined, exclusion),
                        "private ownership: mechanism = refined = exclusion",
                    )?;
                    require(
                        is_subset(exclusion, rectified) && is_subset(exclusion, effective),
                        "private ownership: exclusion ⊆ rectified ∩ effective",
                    )?;
                    if !strong.is_empty() {
                        require(
                            set_eq(exclusion, strong),
                            "private ownership with nonempty strong core: exclusion = strong",
                        )?;
                    }
                }
                ClassLabel::PrivatePublicOwnership => {
                    require(
                        set_eq(yrmh, refined) && set_eq(refined, exclusion),
                        "private-public: mechanism = refined = exclusion",
                    )?;
                    require(
                        is_subset(exclusion, rectified) && is_subset(exclusion, effective),
                        "private-public: exclusion ⊆ rectified ∩ effective",
                    )?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_consistency_sweep() {
    criterion(10, "consistency across the sweeps and stored fixtures", || {
        let everything: Vec<&Instance> = sweep()
            .iter()
            .chain(class_sweep().iter().map(|(_, inst)| inst))
            .collect();
        let verdicts = exec::map_vec(Exec::default(), everything, |inst| {
            let ok = [Concept::Strong, Concept::Rectified, Concept::RefinedExclusion]
                .into_iter()
                .all(|c| consistent(&inst.economy, inst.core(c), c, false))
                && consistent(
                    &inst.economy,
                    inst.core(Concept::Effective),
                    Concept::Effective,
                    true,
                );
            ok
        });
        require(
            verdicts.iter().all(|&ok| ok),
            "strong/rectified/refined full consistency and effective weak consistency \
             must hold on every sweep instance",
        )?;

        let e = fixture_economy("appendix-effective");
        let verdict = check(&e, Solution::Core(Concept::Effective), Mode::Full, Exec::default())
            .unwrap();
        require(!verdict.holds, "effective core must fail full consistency on its fixture")?;

        let e = fixture_economy("prop1-augmented");
        let verdict = check(&e, Solution::Core(Concept::Exclusion), Mode::Weak, Exec::default())
            .unwrap();
        require(!verdict.holds, "exclusion core must fail weak consistency on its fixture")?;

        let e = fixture_economy("prop2-weakcore");
        let verdict = check(&e, Solution::Core(Concept::Weak), Mode::Weak, Exec::default())
            .unwrap();
        require(!verdict.holds, "weak core must fail weak consistency on its fixture")
    });
}

#[test]
fn criterion_11_set_equality_counterexamples() {
    criterion(11, "set-equality consistency negative fixtures", || {
        // First economy: the reduced refined core gains an allocation.
        let e = fixture_economy("ex7");
        let verdict = check(
            &e,
            Solution::Core(Concept::RefinedExclusion),
            Mode::StrongGeneral,
            Exec::default(),
        )
        .unwrap();
        require(!verdict.holds, "refined-exclusion core must fail set-equality consistency")?;
        let mu = alloc(&e, &[("1", "a"), ("3", "b")]);
        let r = reduce(&e, &mu, agents(&e, &["3"])).unwrap();
        let reduced_core = core_members(&r.economy, Concept::RefinedExclusion);
        let gained = Allocation(vec![None, Some(0)]); // 2 takes the co-owned object.
        require(
            reduced_core.contains(&gained),
            "the reduced refined core must gain the outsider assignment",
        )?;
        require(
            reduced_core.contains(&gained)
                && !r.restrict(&mu).map(|m| m == gained).unwrap_or(false),
            "the gained member must not be a restriction of the departing member",
        )?;

        // Second economy: the reduced economy retains the excluded allocation.
        let e = fixture_economy("ex8");
        let verdict = check(
            &e,
            Solution::Core(Concept::RefinedExclusion),
            Mode::StrongGeneral,
            Exec::default(),
        )
        .unwrap();
        require(!verdict.holds, "refined-exclusion core must fail set-equality consistency")?;
        let sigma = alloc(&e, &[("1", "a"), ("2", "b"), ("4", "c")]);
        let mu = alloc(&e, &[("1", "a"), ("2", "b"), ("3", "c")]);
        require(
            core_members(&e, Concept::RefinedExclusion).contains(&sigma)
                && !core_members(&e, Concept::RefinedExclusion).contains(&mu),
            "only the second assignment of c may survive in the original refined core",
        )?;
        let r = reduce(&e, &sigma, agents(&e, &["1"])).unwrap();
        let retained = r.restrict(&mu).unwrap();
        require(
            core_members(&r.economy, Concept::RefinedExclusion).contains(&retained),
            "the reduced refined core must retain the excluded allocation's restriction",
        )
    });
}

#[test]
fn criterion_12_shortcut_oracle_equivalence() {
    criterion(12, "exclusion-block shortcut agrees with exhaustive search", || {
        let disagreements = exec::map_vec(Exec::default(), sweep().iter().collect(), |inst| {
            let e = &inst.economy;
            let stride = if e.n_agents() >= 5 { 5 } else { 1 };
            for mu in inst.all.iter().step_by(stride) {
                let exhaustive =
                    blocking::find_block(e, mu, BlockKind::Exclusion, &inst.all).is_some();
                let shortcut = inst.all.iter().any(|sigma| {
                    if sigma == mu {
                        return false;
                    }
                    let mut improvers = SmallSet::EMPTY;
                    for i in 0..e.n_agents() {
                        if e.prefs[i].strictly_prefers(sigma.get(i), mu.get(i)) {
                            improvers.insert(i);
                        }
                    }
                    !improvers.is_empty()
                        && blocking::exclusion_blocks(e, improvers, sigma, mu)
                });
                if exhaustive != shortcut {
                    return 1usize;
                }
            }
            0usize
        });
        require(
            disagreements.iter().sum::<usize>() == 0,
            "shortcut and exhaustive exclusion-block search must agree everywhere",
        )
    });
}
