//! Mechanical checks of structural statements about automorphism groups,
//! each producing a [`VerifyReport`].
//!
//! A report separates the hypothesis (does the statement apply to this
//! instance?) from the conclusion (does it hold?). Refuted conclusions
//! always carry a witness.

mod family;
mod johnson;
mod stability;
mod structure;
pub mod suite;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::auteng::automorphism_group;
use crate::families::FamilyError;
use crate::graph::{bipartite_double, Bipartition, Graph};
use crate::perm::{PermGroup, Permutation};

pub use family::{expected_aut_order, family_checks, verify_family};
pub use johnson::{johnson_neighbor_counts, xab_pair, xab_structure, XabPair};
pub use stability::{check_stable, is_stable, stability_criterion, stability_report, Criterion, StabilityVerdict};
pub use structure::{
    check_attached, check_bipartition_behavior, check_perp_automorphism, check_pointwise_fix,
    check_s_u_isomorphism, check_semidirect_structure, check_vd, weichsel_check,
};

/// Seed for the random generator products used as spot checks.
pub const PRODUCT_SEED: u64 = 0x5_eed0_fa17;
/// Number of random generator products per spot check.
pub const PRODUCT_SAMPLES: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0} is outside the table of known automorphism group orders")]
    OutOfTable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("bad suite config: {0}")]
    Config(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Hypothesis {
    Holds,
    Fails { witness: String },
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Conclusion {
    Verified,
    Refuted { witness: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem_id: String,
    pub instance: String,
    pub statement: String,
    pub hypothesis: Hypothesis,
    pub conclusion: Conclusion,
    pub evidence: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerifyReport {
    pub(crate) fn new(theorem_id: &str, instance: &str, statement: &str) -> Self {
        VerifyReport {
            theorem_id: theorem_id.to_string(),
            instance: instance.to_string(),
            statement: statement.to_string(),
            hypothesis: Hypothesis::Holds,
            conclusion: Conclusion::Verified,
            evidence: BTreeMap::new(),
            wall_time_ms: None,
        }
    }

    pub(crate) fn not_applicable(mut self, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        self.hypothesis = Hypothesis::NotApplicable { reason: reason.clone() };
        self.conclusion = Conclusion::Skipped { reason };
        self
    }

    pub(crate) fn hypothesis_fails(mut self, witness: impl Into<String>) -> Self {
        let witness = witness.into();
        self.hypothesis = Hypothesis::Fails { witness: witness.clone() };
        self.conclusion = Conclusion::Skipped {
            reason: format!("hypothesis fails: {witness}"),
        };
        self
    }

    pub(crate) fn refute(&mut self, witness: impl Into<String>) {
        if !self.is_refuted() {
            self.conclusion = Conclusion::Refuted { witness: witness.into() };
        }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.note(key, value);
        self
    }

    pub(crate) fn note(&mut self, key: &str, value: impl Serialize) {
        self.evidence
            .insert(key.to_string(), serde_json::to_value(value).expect("evidence serializes"));
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.conclusion, Conclusion::Refuted { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.conclusion, Conclusion::Verified)
    }
}

/// A graph with lazily computed automorphism group and bipartition, shared
/// between the checks run on one instance.
#[derive(Debug)]
pub struct Analyzed {
    graph: Graph,
    instance: String,
    aut: OnceLock<PermGroup>,
    bipartition: OnceLock<Option<Bipartition>>,
    double_order: OnceLock<BigUint>,
}

impl Analyzed {
    pub fn new(graph: Graph, instance: impl Into<String>) -> Self {
        Analyzed {
            graph,
            instance: instance.into(),
            aut: OnceLock::new(),
            bipartition: OnceLock::new(),
            double_order: OnceLock::new(),
        }
    }

    /// Names the instance by a prefix of the graph digest.
    pub fn anonymous(graph: Graph) -> Self {
        let instance = format!("graph:{}", &graph.digest()[..16]);
        Analyzed::new(graph, instance)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn instance(&self) -> &str {
        &self.instance
    }

    pub fn aut(&self) -> &PermGroup {
        self.aut.get_or_init(|| automorphism_group(&self.graph))
    }

    /// `|Aut(B(G))|` for the bipartite double `B(G)`.
    pub fn double_aut_order(&self) -> &BigUint {
        self.double_order
            .get_or_init(|| automorphism_group(&bipartite_double(&self.graph)).order().clone())
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.get_or_init(|| self.graph.bipartition()).as_ref()
    }
}

/// `count` products of random generator words of length 1 to 8, from a
/// fixed seed.
pub(crate) fn random_products(group: &PermGroup, count: usize) -> Vec<Permutation> {
    let gens = group.generators();
    if gens.is_empty() {
        return vec![Permutation::identity(group.degree()); count.min(1)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PRODUCT_SEED);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            (0..len).fold(Permutation::identity(group.degree()), |acc, _| {
                acc.after(&gens[rng.gen_range(0..gens.len())])
            })
        })
        .collect()
}

pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn big(n: u64) -> BigUint {
    BigUint::from(n)
}
