//! Family spec strings: `<kind>:<p1>,<p2>,...`, case-insensitive.
//!
//! | kind                | parameters |
//! |---------------------|------------|
//! | `johnson`           | `n,k`      |
//! | `kneser`            | `n,k`      |
//! | `bipartite-kneser`  | `n,k`      |
//! | `bnk`               | `n,k`      |
//! | `set-inclusion`     | `n,k,l`    |
//! | `complete`          | `n`        |
//! | `cycle`             | `n`        |
//! | `grassmann`         | `q,n,k`    |
//! | `doubled-grassmann` | `q,n,k`    |
//!
//! Whitespace around tokens is ignored and `_` may stand for `-`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{binomial, FamilyError};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Johnson,
    Kneser,
    BipartiteKneser,
    Bnk,
    SetInclusion,
    Complete,
    Cycle,
    Grassmann,
    DoubledGrassmann,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::Johnson,
        FamilyKind::Kneser,
        FamilyKind::BipartiteKneser,
        FamilyKind::Bnk,
        FamilyKind::SetInclusion,
        FamilyKind::Complete,
        FamilyKind::Cycle,
        FamilyKind::Grassmann,
        FamilyKind::DoubledGrassmann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Johnson => "johnson",
            FamilyKind::Kneser => "kneser",
            FamilyKind::BipartiteKneser => "bipartite-kneser",
            FamilyKind::Bnk => "bnk",
            FamilyKind::SetInclusion => "set-inclusion",
            FamilyKind::Complete => "complete",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Grassmann => "grassmann",
            FamilyKind::DoubledGrassmann => "doubled-grassmann",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FamilyKind::Complete | FamilyKind::Cycle => 1,
            FamilyKind::SetInclusion | FamilyKind::Grassmann | FamilyKind::DoubledGrassmann => 3,
            _ => 2,
        }
    }
}

/// A family instance such as `johnson:5,2` or `doubled-grassmann:2,3,1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<u64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<u64>) -> Result<Self, FamilyError> {
        let spec = FamilySpec { kind, params };
        if spec.params.len() != kind.arity() {
            return Err(FamilyError::Parse {
                input: spec.to_string(),
                reason: format!("{} takes {} parameters", kind.name(), kind.arity()),
            });
        }
        Ok(spec)
    }

    pub fn johnson(n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::Johnson, params: vec![n, k] }
    }

    pub fn kneser(n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::Kneser, params: vec![n, k] }
    }

    pub fn bipartite_kneser(n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::BipartiteKneser, params: vec![n, k] }
    }

    pub fn bnk(n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::Bnk, params: vec![n, k] }
    }

    pub fn set_inclusion(n: u64, k: u64, l: u64) -> Self {
        FamilySpec { kind: FamilyKind::SetInclusion, params: vec![n, k, l] }
    }

    pub fn complete(n: u64) -> Self {
        FamilySpec { kind: FamilyKind::Complete, params: vec![n] }
    }

    pub fn cycle(n: u64) -> Self {
        FamilySpec { kind: FamilyKind::Cycle, params: vec![n] }
    }

    pub fn grassmann(q: u64, n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::Grassmann, params: vec![q, n, k] }
    }

    pub fn doubled_grassmann(q: u64, n: u64, k: u64) -> Self {
        FamilySpec { kind: FamilyKind::DoubledGrassmann, params: vec![q, n, k] }
    }

    /// Checks the parameter ranges without building the graph.
    pub fn validate(&self) -> Result<(), FamilyError> {
        super::check_params(self.kind, &self.params)
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        let p = &self.params;
        match self.kind {
            FamilyKind::Johnson => super::johnson(p[0], p[1]),
            FamilyKind::Kneser => super::kneser(p[0], p[1]),
            FamilyKind::BipartiteKneser => super::bipartite_kneser(p[0], p[1]),
            FamilyKind::Bnk => super::bnk(p[0], p[1]),
            FamilyKind::SetInclusion => super::set_inclusion(p[0], p[1], p[2]),
            FamilyKind::Complete => super::complete(p[0]),
            FamilyKind::Cycle => super::cycle(p[0]),
            FamilyKind::Grassmann => Ok(crate::grassmann::grassmann_graph(p[0], p[1] as usize, p[2] as usize)?.graph),
            FamilyKind::DoubledGrassmann => {
                Ok(crate::grassmann::doubled_grassmann(p[0], p[1] as usize, p[2] as usize)?.graph)
            }
        }
    }

    /// For the two-layer set families: `(n, k, l)` with layers of `k`- and
    /// `l`-subsets.
    pub fn inclusion_layers(&self) -> Option<(u64, u64, u64)> {
        let p = &self.params;
        match self.kind {
            FamilyKind::BipartiteKneser => Some((p[0], p[1], p[0] - p[1])),
            FamilyKind::Bnk => Some((p[0], p[1], p[1] + 1)),
            FamilyKind::SetInclusion => Some((p[0], p[1], p[2])),
            _ => None,
        }
    }

    /// Size of the first vertex layer for the bipartite families.
    pub fn first_layer_size(&self) -> Option<usize> {
        if let Some((n, k, _)) = self.inclusion_layers() {
            return Some(binomial(n, k) as usize);
        }
        match self.kind {
            FamilyKind::DoubledGrassmann => {
                let p = &self.params;
                crate::fq::gaussian_binomial(p[1] as u32, p[2] as u32, p[0])
                    .ok()
                    .and_then(|b| usize::try_from(b).ok())
            }
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind.name())?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FamilyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, args) = input.split_once(':').ok_or_else(|| err("expected `<kind>:<params>`"))?;
        let name = name.trim().to_ascii_lowercase().replace('_', "-");
        let kind = FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| err("unknown family kind"))?;
        let params = args
            .split(',')
            .map(|a| a.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(&format!("bad parameter: {e}")))?;
        if params.len() != kind.arity() {
            return Err(err(&format!("{} takes {} parameters", kind.name(), kind.arity())));
        }
        Ok(FamilySpec { kind, params })
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = FamilyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FamilySpec> for String {
    fn from(s: FamilySpec) -> Self {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_case_insensitively() {
        let s: FamilySpec = " Doubled_Grassmann : 2, 3 ,1".parse().unwrap();
        assert_eq!(s, FamilySpec::doubled_grassmann(2, 3, 1));
        assert_eq!(s.to_string(), "doubled-grassmann:2,3,1");
        assert_eq!("JOHNSON:5,2".parse::<FamilySpec>().unwrap(), FamilySpec::johnson(5, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["johnson", "johnson:5", "johnson:5,2,1", "petersen:1", "cycle:x", "cycle:-3", ""] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn serde_uses_the_string_form() {
        let s = FamilySpec::set_inclusion(4, 1, 3);
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"set-inclusion:4,1,3\"");
        let back: FamilySpec = serde_json::from_str("\"set-inclusion:4,1,3\"").unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn builds() {
        assert_eq!(FamilySpec::cycle(5).build().unwrap().edge_count(), 5);
        assert_eq!(FamilySpec::grassmann(2, 4, 2).build().unwrap().n(), 35);
        assert!(FamilySpec::johnson(3, 5).build().is_err());
        assert_eq!(FamilySpec::bipartite_kneser(5, 2).first_layer_size(), Some(10));
        assert_eq!(FamilySpec::doubled_grassmann(2, 3, 1).first_layer_size(), Some(7));
    }
}
