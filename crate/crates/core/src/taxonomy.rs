//! Economy class detection and the two augmentation constructions.

use crate::bounds;
use crate::economy::{Economy, Preference};
use crate::error::{Error, Result};
use crate::set::SmallSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    HousingMarket,
    AugmentedHousingMarket,
    HouseAllocation,
    NoRedundantOwnership,
    NoOverlappingOwnership,
    PrivateOwnership,
    PublicOwnership,
    PrivatePublicOwnership,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 8] = [
        ClassLabel::HousingMarket,
        ClassLabel::AugmentedHousingMarket,
        ClassLabel::HouseAllocation,
        ClassLabel::NoRedundantOwnership,
        ClassLabel::NoOverlappingOwnership,
        ClassLabel::PrivateOwnership,
        ClassLabel::PublicOwnership,
        ClassLabel::PrivatePublicOwnership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::HousingMarket => "housing-market",
            ClassLabel::AugmentedHousingMarket => "augmented-housing-market",
            ClassLabel::HouseAllocation => "house-allocation",
            ClassLabel::NoRedundantOwnership => "no-redundant-ownership",
            ClassLabel::NoOverlappingOwnership => "no-overlapping-ownership",
            ClassLabel::PrivateOwnership => "private-ownership",
            ClassLabel::PublicOwnership => "public-ownership",
            ClassLabel::PrivatePublicOwnership => "private-public-ownership",
        }
    }

    pub fn parse(name: &str) -> Result<ClassLabel> {
        ClassLabel::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::invalid(format!("unknown class {name:?}")))
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn all_acceptable(economy: &Economy) -> bool {
    economy
        .prefs
        .iter()
        .all(|p| (0..economy.n_objects()).all(|o| p.is_acceptable(o)))
}

/// Each object owned by exactly one agent, all owners distinct.
fn disjoint_singletons(economy: &Economy) -> bool {
    let mut seen = SmallSet::EMPTY;
    for &c in &economy.ownership {
        if c.len() != 1 || !c.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(c);
    }
    true
}

pub fn is_housing_market(economy: &Economy) -> bool {
    economy.n_agents() == economy.n_objects() && disjoint_singletons(economy)
}

/// An agent who is a co-owner of every object, accepts nothing, and
/// whose removal leaves a housing market.
pub fn is_augmented_housing_market(economy: &Economy) -> bool {
    if economy.n_agents() != economy.n_objects() + 1 || economy.n_objects() == 0 {
        return false;
    }
    'candidate: for x in 0..economy.n_agents() {
        if !economy.prefs[x].ranking().is_empty() {
            continue;
        }
        let mut seen = SmallSet::EMPTY;
        for &c in &economy.ownership {
            if c.len() != 2 || !c.contains(x) {
                continue 'candidate;
            }
            let other = c.difference(SmallSet::singleton(x));
            if !other.is_disjoint(seen) {
                continue 'candidate;
            }
            seen = seen.union(other);
        }
        return true;
    }
    false
}

/// Every object publicly owned by the grand coalition. For a single
/// agent an object is deliberately read as private, not public.
fn is_public_object(economy: &Economy, o: usize) -> bool {
    economy.n_agents() >= 2 && economy.ownership[o] == economy.all_agents()
}

pub fn is_public_ownership(economy: &Economy) -> bool {
    (0..economy.n_objects()).all(|o| is_public_object(economy, o))
}

pub fn is_private_ownership(economy: &Economy) -> bool {
    economy.ownership.iter().all(|c| c.len() == 1)
}

pub fn is_private_public_ownership(economy: &Economy) -> bool {
    (0..economy.n_objects())
        .all(|o| economy.ownership[o].len() == 1 || is_public_object(economy, o))
}

pub fn is_no_overlapping_ownership(economy: &Economy) -> bool {
    if !all_acceptable(economy) {
        return false;
    }
    let mut seen = SmallSet::EMPTY;
    for &c in &economy.ownership {
        if !c.is_disjoint(seen) {
            return false;
        }
        seen = seen.union(c);
    }
    true
}

/// All objects acceptable to all agents and |ω(C)| ≤ |C| for every
/// coalition (exhaustive sweep).
pub fn is_no_redundant_ownership(economy: &Economy) -> Result<bool> {
    if economy.n_agents() > bounds::max_agents() {
        return Err(Error::Capacity {
            what: "agents (coalition sweep)",
            bound: bounds::max_agents(),
            actual: economy.n_agents(),
        });
    }
    if !all_acceptable(economy) {
        return Ok(false);
    }
    Ok(economy
        .all_agents()
        .nonempty_subsets()
        .all(|c| economy.endowment(c).len() <= c.len()))
}

/// All public objects and full acceptability: the classical model where
/// a pool of objects is assigned with no individual endowments.
pub fn is_house_allocation(economy: &Economy) -> bool {
    is_public_ownership(economy) && all_acceptable(economy)
}

/// Every applicable class label, in declaration order.
pub fn classify(economy: &Economy) -> Result<Vec<ClassLabel>> {
    let mut labels = Vec::new();
    if is_housing_market(economy) {
        labels.push(ClassLabel::HousingMarket);
    }
    if is_augmented_housing_market(economy) {
        labels.push(ClassLabel::AugmentedHousingMarket);
    }
    if is_house_allocation(economy) {
        labels.push(ClassLabel::HouseAllocation);
    }
    if is_no_redundant_ownership(economy)? {
        labels.push(ClassLabel::NoRedundantOwnership);
    }
    if is_no_overlapping_ownership(economy) {
        labels.push(ClassLabel::NoOverlappingOwnership);
    }
    if is_private_ownership(economy) {
        labels.push(ClassLabel::PrivateOwnership);
    }
    if is_public_ownership(economy) {
        labels.push(ClassLabel::PublicOwnership);
    }
    if is_private_public_ownership(economy) {
        labels.push(ClassLabel::PrivatePublicOwnership);
    }
    Ok(labels)
}

/// A label for the artificial agent that does not collide with the
/// existing ones.
fn artificial_label(economy: &Economy) -> String {
    let mut label = "i*".to_string();
    while economy.agents.contains(&label) {
        label.push('*');
    }
    label
}

/// Add an artificial co-owner of every object who accepts nothing.
pub fn augment_housing_market(economy: &Economy) -> Result<Economy> {
    if !is_housing_market(economy) {
        return Err(Error::invalid(
            "augment --kind housing requires a housing-market economy",
        ));
    }
    let star = economy.n_agents();
    let mut agents = economy.agents.clone();
    agents.push(artificial_label(economy));
    let mut prefs = economy.prefs.clone();
    prefs.push(Preference::new(Vec::new(), economy.n_objects())?);
    let ownership = economy
        .ownership
        .iter()
        .map(|&c| c.union(SmallSet::singleton(star)))
        .collect();
    Economy::new(agents, economy.objects.clone(), prefs, ownership)
}

/// Turn the public endowments into the private endowments of an
/// artificial agent who accepts nothing.
pub fn augment_private_public(economy: &Economy) -> Result<Economy> {
    if !is_private_public_ownership(economy) {
        return Err(Error::invalid(
            "augment --kind private-public requires a private-public-ownership economy",
        ));
    }
    let star = economy.n_agents();
    let mut agents = economy.agents.clone();
    agents.push(artificial_label(economy));
    let mut prefs = economy.prefs.clone();
    prefs.push(Preference::new(Vec::new(), economy.n_objects())?);
    let ownership = (0..economy.n_objects())
        .map(|o| {
            if is_public_object(economy, o) {
                SmallSet::singleton(star)
            } else {
                economy.ownership[o]
            }
        })
        .collect();
    Economy::new(agents, economy.objects.clone(), prefs, ownership)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::Preference;

    fn het_first() -> Economy {
        Economy::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                Preference::new(vec![1, 0, 2, 3], 4).unwrap(),
                Preference::new(vec![3, 2, 1, 0], 4).unwrap(),
                Preference::new(vec![1, 2, 0, 3], 4).unwrap(),
                Preference::new(vec![0, 3, 2, 1], 4).unwrap(),
            ],
            vec![
                SmallSet::singleton(0),
                SmallSet::singleton(1),
                SmallSet::singleton(2),
                SmallSet::full(4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn het_classification_and_augmentation() {
        let e = het_first();
        let labels = classify(&e).unwrap();
        assert!(labels.contains(&ClassLabel::PrivatePublicOwnership));
        assert!(!labels.contains(&ClassLabel::PrivateOwnership));
        assert!(!labels.contains(&ClassLabel::PublicOwnership));

        let aug = augment_private_public(&e).unwrap();
        assert_eq!(aug.n_agents(), 5);
        assert_eq!(aug.ownership[3], SmallSet::singleton(4));
        assert!(aug.prefs[4].ranking().is_empty());
        let labels = classify(&aug).unwrap();
        assert!(labels.contains(&ClassLabel::PrivateOwnership));
        assert!(labels.contains(&ClassLabel::PrivatePublicOwnership));
    }

    #[test]
    fn housing_market_detection_and_augmentation() {
        let e = Economy::new(
            vec!["1".into(), "2".into()],
            vec!["a".into(), "b".into()],
            vec![
                Preference::new(vec![1, 0], 2).unwrap(),
                Preference::new(vec![0, 1], 2).unwrap(),
            ],
            vec![SmallSet::singleton(0), SmallSet::singleton(1)],
        )
        .unwrap();
        assert!(is_housing_market(&e));
        let aug = augment_housing_market(&e).unwrap();
        assert!(is_augmented_housing_market(&aug));
        assert!(aug.ownership.iter().all(|c| c.len() == 2));
        assert!(!is_housing_market(&aug));
    }

    #[test]
    fn all_public_labels() {
        let e = Economy::new(
            vec!["1".into(), "2".into()],
            vec!["a".into()],
            vec![
                Preference::new(vec![0], 1).unwrap(),
                Preference::new(vec![], 1).unwrap(),
            ],
            vec![SmallSet::full(2)],
        )
        .unwrap();
        let labels = classify(&e).unwrap();
        assert!(labels.contains(&ClassLabel::PublicOwnership));
        assert!(labels.contains(&ClassLabel::PrivatePublicOwnership));
        // agent 2 rejects a, so this is not the classical pooled model
        assert!(!labels.contains(&ClassLabel::HouseAllocation));
    }

    #[test]
    fn single_agent_objects_are_private() {
        let e = Economy::new(
            vec!["1".into()],
            vec!["a".into()],
            vec![Preference::new(vec![0], 1).unwrap()],
            vec![SmallSet::singleton(0)],
        )
        .unwrap();
        let labels = classify(&e).unwrap();
        assert!(labels.contains(&ClassLabel::PrivateOwnership));
        assert!(!labels.contains(&ClassLabel::PublicOwnership));
    }
}
