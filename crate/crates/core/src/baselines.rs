//! Comparison algorithms spanning two axes: how tightly node and link
//! mapping are coupled, and whether links are weighted by hops or by
//! interference.
//!
//! | link weight \ coupling | none | intermediate | full |
//! |------------------------|------|--------------|------|
//! | hop                    | alg1 | alg2         | alg3 |
//! | influence              | alg4 | alg5         | alg6 |
//!
//! `alg6` is the interference-aware joint embedding. All variants share the
//! root search, metric ranking and feasibility checking.

use serde::{Deserialize, Serialize};

use crate::embedding::{embed, EmbedDecision, EmbedParams, LinkWeight};
use crate::error::{Error, Result};
use crate::feasibility::Checker;
use crate::network::{ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coupling {
    /// Resource-greedy node mapping, then shortest-path link mapping.
    None,
    /// Nodes placed near the root only, then shortest-path link mapping.
    Intermediate,
    /// Each node placed to minimize weighted distance to its placed
    /// neighbors, links routed at the same time.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgorithmVariant {
    pub coupling: Coupling,
    pub link_weight: LinkWeight,
}

impl AlgorithmVariant {
    pub const ALG1: Self = Self { coupling: Coupling::None, link_weight: LinkWeight::Hop };
    pub const ALG2: Self = Self { coupling: Coupling::Intermediate, link_weight: LinkWeight::Hop };
    pub const ALG3: Self = Self { coupling: Coupling::Full, link_weight: LinkWeight::Hop };
    pub const ALG4: Self = Self { coupling: Coupling::None, link_weight: LinkWeight::Influence };
    pub const ALG5: Self = Self { coupling: Coupling::Intermediate, link_weight: LinkWeight::Influence };
    pub const ALG6: Self = Self { coupling: Coupling::Full, link_weight: LinkWeight::Influence };
    pub const WEM: Self = Self::ALG6;

    pub const ALL: [Self; 6] = [Self::ALG1, Self::ALG2, Self::ALG3, Self::ALG4, Self::ALG5, Self::ALG6];

    /// Table index 1..=6.
    pub fn index(self) -> usize {
        let col = match self.coupling {
            Coupling::None => 1,
            Coupling::Intermediate => 2,
            Coupling::Full => 3,
        };
        match self.link_weight {
            LinkWeight::Hop => col,
            LinkWeight::Influence => col + 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }
}

impl std::fmt::Display for AlgorithmVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alg{}", self.index())
    }
}

impl std::str::FromStr for AlgorithmVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix("alg")
            .and_then(|n| n.parse().ok())
            .and_then(Self::from_index)
            .or((s == "wem").then_some(Self::WEM))
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}` (expected alg1..alg6)")))
    }
}

impl Serialize for AlgorithmVariant {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgorithmVariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Embeds `vn` with the given variant.
#[allow(clippy::too_many_arguments)]
pub fn embed_with_variant<S: Scalar>(
    variant: AlgorithmVariant,
    sn: &SubstrateNetwork<S>,
    ledger: &ResourceLedger<S>,
    vn: &VirtualNetworkRequest<S>,
    k: usize,
    alpha: S,
    checker: &Checker,
) -> Result<EmbedDecision<S>> {
    embed(sn, ledger, vn, &EmbedParams { k, alpha, variant }, checker)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for v in AlgorithmVariant::ALL {
            assert_eq!(v.to_string().parse::<AlgorithmVariant>().unwrap(), v);
        }
        assert_eq!("wem".parse::<AlgorithmVariant>().unwrap(), AlgorithmVariant::ALG6);
        assert!("alg7".parse::<AlgorithmVariant>().is_err());
        assert!("alg0".parse::<AlgorithmVariant>().is_err());
    }
}
