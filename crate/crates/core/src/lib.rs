//! Interference-aware virtual network embedding on wireless multi-hop
//! substrates, with feasibility checking and an online admission simulator.
//!
//! Numeric types are generic over [`Scalar`] (`f32`, `f64`); the aliases
//! below fix the common `f64` instantiation.

pub mod baselines;
pub mod config;
pub mod embedding;
pub mod error;
pub mod feasibility;
pub mod network;
pub mod online;
pub mod scalar;
pub mod sweep;

pub use baselines::{embed_with_variant, AlgorithmVariant, Coupling};
pub use embedding::{wem_embed, EmbedDecision, EmbeddedPath, Embedding, EmbeddingRecord, LinkWeight};
pub use error::{Error, Result};
pub use feasibility::{Checker, Method, Verdict};
pub use network::{ConflictGraph, LoadVector, ResourceLedger, SubstrateNetwork, VirtualNetworkRequest};
pub use scalar::{LpField, Scalar};

pub type Substrate = SubstrateNetwork<f64>;
pub type Request = VirtualNetworkRequest<f64>;
pub type Mapping = Embedding<f64>;
pub type Ledger = ResourceLedger<f64>;
pub type Loads = LoadVector<f64>;

pub type Substrate32 = SubstrateNetwork<f32>;
pub type Request32 = VirtualNetworkRequest<f32>;
pub type Mapping32 = Embedding<f32>;
pub type Ledger32 = ResourceLedger<f32>;
pub type Loads32 = LoadVector<f32>;
