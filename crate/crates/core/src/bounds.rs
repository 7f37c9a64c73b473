//! Exhaustive-search capacity bounds.
//!
//! Every operation that enumerates allocations, coalitions, or priority
//! orders checks these bounds first and reports a capacity error citing
//! the active bound instead of silently blowing up.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_AGENTS: usize = 8;
pub const DEFAULT_MAX_OBJECTS: usize = 7;
pub const DEFAULT_MAX_ORDER_AGENTS: usize = 7;

/// Environment override for the agent bound.
pub const MAX_AGENTS_ENV: &str = "CORE_SOLVE_MAX_AGENTS";

/// Active bound on the number of agents for exhaustive enumeration.
pub fn max_agents() -> usize {
    std::env::var(MAX_AGENTS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1 && v <= 63)
        .unwrap_or(DEFAULT_MAX_AGENTS)
}

/// Active bound on the number of objects for exhaustive enumeration.
pub fn max_objects() -> usize {
    DEFAULT_MAX_OBJECTS
}

/// Active bound on `|I|` for iterating all `|I|!` priority orders.
pub fn max_order_agents() -> usize {
    std::env::var(MAX_AGENTS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1 && v <= 63)
        .unwrap_or(DEFAULT_MAX_ORDER_AGENTS)
}

pub fn check_enumeration(n_agents: usize, n_objects: usize) -> Result<()> {
    let ma = max_agents();
    if n_agents > ma {
        return Err(Error::Capacity {
            what: "agents",
            bound: ma,
            actual: n_agents,
        });
    }
    let mo = max_objects();
    if n_objects > mo {
        return Err(Error::Capacity {
            what: "objects",
            bound: mo,
            actual: n_objects,
        });
    }
    Ok(())
}

pub fn check_order_enumeration(n_agents: usize) -> Result<()> {
    let bound = max_order_agents();
    if n_agents > bound {
        return Err(Error::Capacity {
            what: "agents (priority orders)",
            bound,
            actual: n_agents,
        });
    }
    Ok(())
}
