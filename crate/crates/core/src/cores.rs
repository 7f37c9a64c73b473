//! Core solvers: each solution concept as an explicit allocation set,
//! plus the pairwise inclusion report.

use std::fmt;

use crate::blocking::{self, BlockKind, BlockingCertificate};
use crate::economy::{pareto_efficient, Allocation, Economy};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Weak,
    Strong,
    Exclusion,
    RefinedExclusion,
    Effective,
    Rectified,
    Pareto,
}

impl Concept {
    pub const ALL: [Concept; 7] = [
        Concept::Weak,
        Concept::Strong,
        Concept::Exclusion,
        Concept::RefinedExclusion,
        Concept::Effective,
        Concept::Rectified,
        Concept::Pareto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Concept::Weak => "weak",
            Concept::Strong => "strong",
            Concept::Exclusion => "exclusion",
            Concept::RefinedExclusion => "refined-exclusion",
            Concept::Effective => "effective",
            Concept::Rectified => "rectified",
            Concept::Pareto => "pareto",
        }
    }

    pub fn parse(name: &str) -> Result<Concept> {
        Concept::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown concept {name:?}; expected one of weak, strong, exclusion, \
                     refined-exclusion, effective, rectified, pareto"
                ))
            })
    }

    /// The blocking notion whose survivors form this core, if any.
    pub fn block_kind(self) -> Option<BlockKind> {
        match self {
            Concept::Weak => Some(BlockKind::Strong),
            Concept::Strong => Some(BlockKind::Weak),
            Concept::Exclusion => Some(BlockKind::Exclusion),
            Concept::RefinedExclusion => Some(BlockKind::WeakExclusion),
            Concept::Effective => Some(BlockKind::Effective),
            Concept::Rectified => Some(BlockKind::Rectification),
            Concept::Pareto => None,
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exactly computed solution set in canonical allocation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSet {
    pub concept: Concept,
    pub members: Vec<Allocation>,
    /// When diagnostics are enabled: one certificate per efficient
    /// allocation excluded from the set.
    pub certificates: Vec<BlockingCertificate>,
}

impl CoreSet {
    pub fn contains(&self, alloc: &Allocation) -> bool {
        self.members.contains(alloc)
    }
}

/// Membership test for a single allocation, given the full search space.
pub fn in_core(economy: &Economy, concept: Concept, mu: &Allocation, all: &[Allocation]) -> bool {
    match concept.block_kind() {
        None => pareto_efficient(economy, mu, all),
        Some(kind) => blocking::find_block(economy, mu, kind, all).is_none(),
    }
}

/// Compute a core over a pre-enumerated allocation list.
pub fn compute_core_with(
    economy: &Economy,
    concept: Concept,
    exec: Exec,
    all: &[Allocation],
) -> CoreSet {
    let members = exec::filter_slice(exec, all, |mu| in_core(economy, concept, mu, all));
    CoreSet {
        concept,
        members,
        certificates: Vec::new(),
    }
}

pub fn compute_core(economy: &Economy, concept: Concept, exec: Exec) -> Result<CoreSet> {
    let all = economy.allocations()?;
    Ok(compute_core_with(economy, concept, exec, &all))
}

/// As `compute_core`, but records a blocking certificate for every
/// Pareto-efficient allocation excluded from the set.
pub fn compute_core_diagnostic(economy: &Economy, concept: Concept, exec: Exec) -> Result<CoreSet> {
    let all = economy.allocations()?;
    let mut set = compute_core_with(economy, concept, exec, &all);
    if let Some(kind) = concept.block_kind() {
        for mu in &all {
            if !set.contains(mu) && pareto_efficient(economy, mu, &all) {
                if let Some(cert) = blocking::find_block(economy, mu, kind, &all) {
                    set.certificates.push(cert);
                }
            }
        }
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    LeftSubset,
    RightSubset,
    Incomparable,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::LeftSubset => "⊊",
            Relation::RightSubset => "⊋",
            Relation::Incomparable => "incomparable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationEntry {
    pub left: Concept,
    pub right: Concept,
    pub relation: Relation,
    /// Member of left ∖ right, when nonempty.
    pub left_only: Option<Allocation>,
    /// Member of right ∖ left, when nonempty.
    pub right_only: Option<Allocation>,
}

#[derive(Clone, Debug)]
pub struct InclusionReport {
    pub cores: Vec<CoreSet>,
    pub relations: Vec<RelationEntry>,
}

impl InclusionReport {
    pub fn core(&self, concept: Concept) -> &CoreSet {
        self.cores
            .iter()
            .find(|c| c.concept == concept)
            .expect("all concepts computed")
    }
}

/// Compute all seven solution sets and every pairwise relation, with
/// witnesses for strict inclusions.
pub fn inclusion_report(economy: &Economy, exec: Exec) -> Result<InclusionReport> {
    let all = economy.allocations()?;
    let cores = exec::map_vec(exec, Concept::ALL.to_vec(), |c| {
        compute_core_with(economy, c, exec, &all)
    });
    let mut relations = Vec::new();
    for (i, a) in Concept::ALL.iter().enumerate() {
        for b in &Concept::ALL[i + 1..] {
            let left = &cores[Concept::ALL.iter().position(|c| c == a).unwrap()];
            let right = &cores[Concept::ALL.iter().position(|c| c == b).unwrap()];
            let left_only = left.members.iter().find(|m| !right.contains(m)).cloned();
            let right_only = right.members.iter().find(|m| !left.contains(m)).cloned();
            let relation = match (&left_only, &right_only) {
                (None, None) => Relation::Equal,
                (None, Some(_)) => Relation::LeftSubset,
                (Some(_), None) => Relation::RightSubset,
                (Some(_), Some(_)) => Relation::Incomparable,
            };
            relations.push(RelationEntry {
                left: *a,
                right: *b,
                relation,
                left_only,
                right_only,
            });
        }
    }
    Ok(InclusionReport { cores, relations })
}
