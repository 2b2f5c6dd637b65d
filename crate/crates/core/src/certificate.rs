//! Weak-duality certificates: a valid multipacking and a dominating
//! broadcast of equal value are both optimal.

use std::fmt;

use crate::broadcast::{is_dominating, Broadcast, UncoveredWitness};
use crate::graph::Universe;
use crate::multipacking::{is_multipacking, Multipacking, ViolationWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCertificate {
    pub graph: String,
    pub multipacking: Multipacking,
    pub broadcast: Broadcast,
    pub value: usize,
}

/// Which of the three certificate checks failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub packing_violation: Option<ViolationWitness>,
    pub uncovered: Option<UncoveredWitness>,
    /// `(|M|, cost(f))` when they differ.
    pub value_gap: Option<(usize, usize)>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(w) = &self.packing_violation {
            parts.push(format!("multipacking invalid ({w})"));
        }
        if let Some(w) = &self.uncovered {
            parts.push(format!("broadcast leaves vertex {} uncovered", w.vertex));
        }
        if let Some((size, cost)) = self.value_gap {
            parts.push(format!("packing size {size} differs from broadcast cost {cost}"));
        }
        f.write_str(&parts.join("; "))
    }
}

pub fn certify_optimality<U: Universe + ?Sized>(
    universe: &U,
    packing: &Multipacking,
    broadcast: &Broadcast,
) -> Result<DualityCertificate, Mismatch> {
    let mismatch = Mismatch {
        packing_violation: is_multipacking(universe, packing).err(),
        uncovered: is_dominating(universe, broadcast).err(),
        value_gap: (packing.len() != broadcast.cost()).then(|| (packing.len(), broadcast.cost())),
    };
    if mismatch.packing_violation.is_none() && mismatch.uncovered.is_none() && mismatch.value_gap.is_none() {
        Ok(DualityCertificate {
            graph: universe.describe(),
            multipacking: packing.clone(),
            broadcast: broadcast.clone(),
            value: packing.len(),
        })
    } else {
        Err(mismatch)
    }
}
