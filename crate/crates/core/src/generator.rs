//! Seeded random economy generation, optionally constrained to a class.
//!
//! Ownership structure is drawn first to guarantee class membership by
//! construction; `classify` is still re-run as a postcondition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::economy::{Economy, Preference};
use crate::error::{Error, Result};
use crate::set::SmallSet;
use crate::taxonomy::{self, ClassLabel};

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub agents: usize,
    pub objects: usize,
    pub class: Option<ClassLabel>,
    /// Probability that an object is acceptable to an agent, in (0, 1].
    /// Ignored by classes that force full acceptability.
    pub density: f64,
}

impl GeneratorSpec {
    pub fn new(seed: u64, agents: usize, objects: usize) -> Self {
        GeneratorSpec {
            seed,
            agents,
            objects,
            class: None,
            density: 1.0,
        }
    }
}

fn agent_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn object_labels(m: usize) -> Vec<String> {
    (0..m)
        .map(|o| {
            if o < 26 {
                char::from(b'a' + o as u8).to_string()
            } else {
                format!("o{o}")
            }
        })
        .collect()
}

fn random_nonempty_subset(rng: &mut ChaCha8Rng, n: usize) -> SmallSet {
    let mut set = SmallSet::EMPTY;
    for i in 0..n {
        if rng.gen_bool(0.5) {
            set.insert(i);
        }
    }
    if set.is_empty() {
        set.insert(rng.gen_range(0..n));
    }
    set
}

fn forces_full_acceptability(class: Option<ClassLabel>) -> bool {
    matches!(
        class,
        Some(
            ClassLabel::HousingMarket
                | ClassLabel::AugmentedHousingMarket
                | ClassLabel::HouseAllocation
                | ClassLabel::NoRedundantOwnership
                | ClassLabel::NoOverlappingOwnership
        )
    )
}

pub fn generate(spec: &GeneratorSpec) -> Result<Economy> {
    let n = spec.agents;
    let m = spec.objects;
    if n == 0 {
        return Err(Error::invalid("at least one agent is required"));
    }
    bounds::check_enumeration(n, m)?;
    if !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(Error::invalid("density must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut agents = agent_labels(n);
    let objects = object_labels(m);
    let all = SmallSet::full(n);

    // The augmented-housing-market class reserves the last agent as the
    // artificial co-owner.
    let mut empty_ranking_agent: Option<usize> = None;

    let ownership: Vec<SmallSet> = match spec.class {
        None => (0..m).map(|_| random_nonempty_subset(&mut rng, n)).collect(),
        Some(ClassLabel::HousingMarket) => {
            if n != m {
                return Err(Error::invalid("housing-market requires equal agent and object counts"));
            }
            let mut owners: Vec<usize> = (0..n).collect();
            owners.shuffle(&mut rng);
            owners.into_iter().map(SmallSet::singleton).collect()
        }
        Some(ClassLabel::AugmentedHousingMarket) => {
            if n != m + 1 || m == 0 {
                return Err(Error::invalid(
                    "augmented-housing-market requires one more agent than objects",
                ));
            }
            empty_ranking_agent = Some(n - 1);
            agents[n - 1] = "i*".to_string();
            let mut owners: Vec<usize> = (0..n - 1).collect();
            owners.shuffle(&mut rng);
            owners
                .into_iter()
                .map(|i| SmallSet::from_indices([i, n - 1]))
                .collect()
        }
        Some(ClassLabel::HouseAllocation) | Some(ClassLabel::PublicOwnership) => {
            if n < 2 {
                return Err(Error::invalid("public ownership requires at least two agents"));
            }
            vec![all; m]
        }
        Some(ClassLabel::NoRedundantOwnership) => {
            if m > n {
                return Err(Error::invalid(
                    "no-redundant-ownership requires at most as many objects as agents",
                ));
            }
            // Distinct representatives keep |ω(C)| ≤ |C| for every C.
            let mut reps: Vec<usize> = (0..n).collect();
            reps.shuffle(&mut rng);
            (0..m)
                .map(|o| {
                    let mut set = random_nonempty_subset(&mut rng, n);
                    set.insert(reps[o]);
                    set
                })
                .collect()
        }
        Some(ClassLabel::NoOverlappingOwnership) => {
            if m > n {
                return Err(Error::invalid(
                    "no-overlapping-ownership requires at most as many objects as agents",
                ));
            }
            let mut pool: Vec<usize> = (0..n).collect();
            pool.shuffle(&mut rng);
            let mut sets: Vec<SmallSet> =
                pool[..m].iter().map(|&i| SmallSet::singleton(i)).collect();
            for &i in &pool[m..] {
                if m > 0 && rng.gen_bool(0.5) {
                    let o = rng.gen_range(0..m);
                    sets[o].insert(i);
                }
            }
            sets
        }
        Some(ClassLabel::PrivateOwnership) => (0..m)
            .map(|_| SmallSet::singleton(rng.gen_range(0..n)))
            .collect(),
        Some(ClassLabel::PrivatePublicOwnership) => (0..m)
            .map(|_| {
                if n >= 2 && rng.gen_bool(0.5) {
                    all
                } else {
                    SmallSet::singleton(rng.gen_range(0..n))
                }
            })
            .collect(),
    };

    let full_acceptability = forces_full_acceptability(spec.class);
    let prefs: Vec<Preference> = (0..n)
        .map(|i| {
            let ranking = if Some(i) == empty_ranking_agent {
                Vec::new()
            } else {
                let mut accepted: Vec<usize> = (0..m)
                    .filter(|_| full_acceptability || rng.gen_bool(spec.density))
                    .collect();
                accepted.shuffle(&mut rng);
                accepted
            };
            Preference::new(ranking, m)
        })
        .collect::<Result<_>>()?;

    let economy = Economy::new(agents, objects, prefs, ownership)?;
    if let Some(class) = spec.class {
        let labels = taxonomy::classify(&economy)?;
        if !labels.contains(&class) {
            return Err(Error::invalid(format!(
                "generated economy failed the {class} class postcondition"
            )));
        }
    }
    Ok(economy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::serialize_economy;

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::new(7, 4, 3);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(serialize_economy(&a), serialize_economy(&b));
    }

    #[test]
    fn class_postconditions() {
        for class in ClassLabel::ALL {
            let (n, m) = match class {
                ClassLabel::HousingMarket => (3, 3),
                ClassLabel::AugmentedHousingMarket => (4, 3),
                _ => (4, 3),
            };
            for seed in 0..20 {
                let spec = GeneratorSpec {
                    seed,
                    agents: n,
                    objects: m,
                    class: Some(class),
                    density: 1.0,
                };
                let e = generate(&spec).unwrap();
                assert!(taxonomy::classify(&e).unwrap().contains(&class), "{class}");
            }
        }
    }

    #[test]
    fn infeasible_specs_rejected() {
        let mut spec = GeneratorSpec::new(0, 3, 2);
        spec.class = Some(ClassLabel::HousingMarket);
        assert!(generate(&spec).is_err());
        let mut spec = GeneratorSpec::new(0, 1, 1);
        spec.class = Some(ClassLabel::PublicOwnership);
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn sweep_validity() {
        for seed in 0..200 {
            let e = generate(&GeneratorSpec {
                seed,
                agents: 4,
                objects: 3,
                class: None,
                density: 0.7,
            })
            .unwrap();
            e.validate().unwrap();
        }
    }
}
