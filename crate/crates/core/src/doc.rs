//! The on-disk economy document and allocation literal formats.
//!
//! Documents are JSON with sorted map keys and order-preserving arrays,
//! so serialized files are diffable and round-trip bit-exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::economy::{Allocation, Assignment, Economy, Preference};
use crate::error::{Error, Result};
use crate::set::SmallSet;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomyDocument {
    pub agents: Vec<String>,
    pub objects: Vec<String>,
    /// object label → nonempty list of owner labels.
    pub ownership: BTreeMap<String, Vec<String>>,
    /// agent label → acceptable object labels, best first. A missing
    /// entry means the agent accepts nothing.
    #[serde(default)]
    pub preferences: BTreeMap<String, Vec<String>>,
}

pub fn parse_economy(text: &str) -> Result<Economy> {
    let doc: EconomyDocument =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("economy document: {e}")))?;
    economy_from_document(&doc)
}

pub fn economy_from_document(doc: &EconomyDocument) -> Result<Economy> {
    if doc.objects.iter().any(|o| o == "null") {
        return Err(Error::parse(
            "object label \"null\" is reserved for the null object",
        ));
    }
    let agent_index = |label: &str| -> Result<usize> {
        doc.agents
            .iter()
            .position(|a| a == label)
            .ok_or_else(|| Error::parse(format!("unknown agent label {label:?}")))
    };
    let object_index = |label: &str| -> Result<usize> {
        doc.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::parse(format!("unknown object label {label:?}")))
    };
    let mut ownership = Vec::with_capacity(doc.objects.len());
    for obj in &doc.objects {
        let owners = doc
            .ownership
            .get(obj)
            .ok_or_else(|| Error::parse(format!("object {obj:?} has no ownership entry")))?;
        if owners.is_empty() {
            return Err(Error::parse(format!("object {obj:?} has an empty owner list")));
        }
        let mut set = SmallSet::EMPTY;
        for label in owners {
            set.insert(agent_index(label)?);
        }
        ownership.push(set);
    }
    for key in doc.ownership.keys() {
        object_index(key)?;
    }
    let mut prefs = Vec::with_capacity(doc.agents.len());
    for agent in &doc.agents {
        let ranking = match doc.preferences.get(agent) {
            Some(labels) => labels
                .iter()
                .map(|l| object_index(l))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        prefs.push(Preference::new(ranking, doc.objects.len())?);
    }
    for key in doc.preferences.keys() {
        agent_index(key)?;
    }
    Economy::new(doc.agents.clone(), doc.objects.clone(), prefs, ownership)
}

pub fn document_from_economy(economy: &Economy) -> EconomyDocument {
    let ownership = economy
        .objects
        .iter()
        .enumerate()
        .map(|(o, label)| {
            (
                label.clone(),
                economy.ownership[o]
                    .iter()
                    .map(|i| economy.agents[i].clone())
                    .collect(),
            )
        })
        .collect();
    let preferences = economy
        .agents
        .iter()
        .enumerate()
        .map(|(i, label)| {
            (
                label.clone(),
                economy.prefs[i]
                    .ranking()
                    .iter()
                    .map(|&o| economy.objects[o].clone())
                    .collect(),
            )
        })
        .collect();
    EconomyDocument {
        agents: economy.agents.clone(),
        objects: economy.objects.clone(),
        ownership,
        preferences,
    }
}

pub fn serialize_economy(economy: &Economy) -> String {
    let doc = document_from_economy(economy);
    let mut text = serde_json::to_string_pretty(&doc).expect("document serialization");
    text.push('\n');
    text
}

/// Parse a `{"agent": "object" | "null", ...}` literal against an
/// economy. Every agent must appear exactly once.
pub fn parse_allocation(text: &str, economy: &Economy) -> Result<Allocation> {
    let map: BTreeMap<String, String> = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("allocation literal: {e}")))?;
    let mut out: Vec<Assignment> = vec![None; economy.n_agents()];
    let mut seen = vec![false; economy.n_agents()];
    for (agent, object) in &map {
        let i = economy
            .agent_index(agent)
            .map_err(|_| Error::parse(format!("unknown agent label {agent:?}")))?;
        seen[i] = true;
        out[i] = if object == "null" {
            None
        } else {
            Some(
                economy
                    .object_index(object)
                    .map_err(|_| Error::parse(format!("unknown object label {object:?}")))?,
            )
        };
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::parse(format!(
            "allocation literal is missing agent {:?}",
            economy.agents[i]
        )));
    }
    let alloc = Allocation(out);
    alloc.validate(economy)?;
    Ok(alloc)
}

/// Render an allocation as a single-line literal with sorted keys.
pub fn allocation_literal(economy: &Economy, alloc: &Allocation) -> String {
    let map: BTreeMap<&str, &str> = economy
        .agents
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let obj = match alloc.get(i) {
                Some(o) => economy.objects[o].as_str(),
                None => "null",
            };
            (label.as_str(), obj)
        })
        .collect();
    serde_json::to_string(&map).expect("literal serialization")
}
