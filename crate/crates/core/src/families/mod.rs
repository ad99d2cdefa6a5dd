//! Constructors for set-system graph families with canonical vertex orders.
//!
//! Subsets of `[n] = {1..n}` are stored as bit masks (element `i` is bit
//! `i - 1`) and printed 1-based, e.g. `{1,3}`. Every family lists its
//! vertices as the `k`-subsets in lexicographic order, followed by the second
//! layer (if any) in the same order.

mod spec;

use itertools::Itertools;
use thiserror::Error;

use crate::fq::{FieldError, FieldSpec};
use crate::graph::Graph;
use crate::perm::Permutation;

pub use spec::{FamilyKind, FamilySpec};

/// Largest ground set size supported by the bit-mask encoding.
pub const MAX_GROUND: u64 = 63;

/// Refuse to build graphs with more vertices than this.
pub const MAX_VERTICES: u64 = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("cannot parse family spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid parameters for {family}: {reason}")]
    Parameters { family: String, reason: String },
    #[error("index {index} out of range for {n} choose {k}")]
    IndexOutOfRange { index: u64, n: u64, k: u64 },
    #[error("invalid subset {0:?}")]
    InvalidSubset(Vec<u8>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn params_error(family: &str, reason: impl Into<String>) -> FamilyError {
    FamilyError::Parameters {
        family: family.to_string(),
        reason: reason.into(),
    }
}

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// A sorted subset of `[n]` with 1-based elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    elements: Vec<u8>,
}

impl KSubset {
    pub fn new(mut elements: Vec<u8>, n: u64) -> Result<Self, FamilyError> {
        elements.sort_unstable();
        let bad = elements.windows(2).any(|w| w[0] == w[1])
            || elements.iter().any(|&e| e == 0 || e as u64 > n || e as u64 > MAX_GROUND);
        if bad {
            return Err(FamilyError::InvalidSubset(elements));
        }
        Ok(KSubset { elements })
    }

    pub fn from_mask(mask: u64) -> Self {
        KSubset {
            elements: (0..64u8).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
        }
    }

    pub fn elements(&self) -> &[u8] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.elements.iter().fold(0, |m, &e| m | 1u64 << (e - 1))
    }
}

impl std::fmt::Display for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.elements.iter().join(","))
    }
}

/// Lexicographic rank of `s` among the `|s|`-subsets of `[n]`.
pub fn rank_subset(s: &KSubset, n: u64) -> Result<u64, FamilyError> {
    if s.elements.last().is_some_and(|&e| e as u64 > n) {
        return Err(FamilyError::InvalidSubset(s.elements.clone()));
    }
    let k = s.len() as u64;
    let mut rank = 0;
    let mut prev = 0u64;
    for (i, &e) in s.elements.iter().enumerate() {
        for x in prev + 1..e as u64 {
            rank += binomial(n - x, k - i as u64 - 1);
        }
        prev = e as u64;
    }
    Ok(rank)
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(mut index: u64, n: u64, k: u64) -> Result<KSubset, FamilyError> {
    if k > n || n > MAX_GROUND || index >= binomial(n, k) {
        return Err(FamilyError::IndexOutOfRange { index, n, k });
    }
    let mut elements = Vec::with_capacity(k as usize);
    let mut x = 1u64;
    for i in 0..k {
        loop {
            let block = binomial(n - x, k - i - 1);
            if index < block {
                break;
            }
            index -= block;
            x += 1;
        }
        elements.push(x as u8);
        x += 1;
    }
    Ok(KSubset { elements })
}

/// Bit masks of the `k`-subsets of `[n]` in lexicographic order.
pub fn subset_masks(n: u64, k: u64) -> Vec<u64> {
    (0..n)
        .combinations(k as usize)
        .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect()
}

fn mask_label(mask: u64) -> String {
    KSubset::from_mask(mask).to_string()
}

fn subset_graph<F>(masks: &[u64], adjacent: F) -> Graph
where
    F: Fn(u64, u64) -> bool,
{
    Graph::from_predicate(masks.len(), |u, v| adjacent(masks[u], masks[v]))
        .with_labels(masks.iter().map(|&m| mask_label(m)).collect())
        .expect("one label per vertex")
}

fn check_ground(family: &str, n: u64) -> Result<(), FamilyError> {
    if n > MAX_GROUND {
        return Err(params_error(family, format!("n = {n} exceeds {MAX_GROUND}")));
    }
    Ok(())
}

/// Parameter ranges for each family; `p` must have the kind's arity.
pub(crate) fn check_params(kind: FamilyKind, p: &[u64]) -> Result<(), FamilyError> {
    let name = kind.name();
    let require = |ok: bool, rule: &str| {
        if ok {
            Ok(())
        } else {
            Err(params_error(name, format!("need {rule}, got {}", p.iter().join(","))))
        }
    };
    match kind {
        FamilyKind::Complete => require(p[0] >= 1, "n >= 1")?,
        FamilyKind::Cycle => require(p[0] >= 3, "n >= 3")?,
        FamilyKind::Grassmann => {
            FieldSpec::of_order(p[0])?;
            require(p[2] > 1 && p[2].saturating_mul(2) <= p[1], "1 < k <= n/2")?
        }
        FamilyKind::DoubledGrassmann => {
            FieldSpec::of_order(p[0])?;
            require(p[1] >= 3 && p[2] >= 1 && p[2].saturating_mul(2) <= p[1], "n >= 3 and 1 <= k <= n/2")?
        }
        _ => {
            check_ground(name, p[0])?;
            let (n, k) = (p[0], p[1]);
            match kind {
                FamilyKind::Johnson => require(1 <= k && k < n, "1 <= k < n")?,
                FamilyKind::Kneser | FamilyKind::Bnk => require(1 <= k && 2 * k < n, "1 <= k < n/2")?,
                FamilyKind::BipartiteKneser => require(k >= 1 && n > 2 * k, "n > 2k >= 2")?,
                _ => {
                    let l = p[2];
                    require(0 < k && k < l && l < n && k + l <= n, "0 < k < l < n and k + l <= n")?
                }
            }
        }
    }
    let count = vertex_count(kind, p);
    if count > MAX_VERTICES {
        return Err(params_error(name, format!("{count} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    Ok(())
}

/// Vertex count of a family with valid parameters, saturating.
fn vertex_count(kind: FamilyKind, p: &[u64]) -> u64 {
    // For 0 < k < n the count is at least 2^(n-1), so large n is over any cap.
    let gauss = |n: u64, k: u64| {
        if n > 40 {
            return u64::MAX;
        }
        crate::fq::gaussian_binomial(n as u32, k as u32, p[0])
            .ok()
            .and_then(|b| u64::try_from(b).ok())
            .unwrap_or(u64::MAX)
    };
    match kind {
        FamilyKind::Complete | FamilyKind::Cycle => p[0],
        FamilyKind::Johnson | FamilyKind::Kneser => binomial(p[0], p[1]),
        FamilyKind::BipartiteKneser => binomial(p[0], p[1]).saturating_mul(2),
        FamilyKind::Bnk => binomial(p[0], p[1]).saturating_add(binomial(p[0], p[1] + 1)),
        FamilyKind::SetInclusion => binomial(p[0], p[1]).saturating_add(binomial(p[0], p[2])),
        FamilyKind::Grassmann => gauss(p[1], p[2]),
        FamilyKind::DoubledGrassmann => gauss(p[1], p[2]).saturating_add(gauss(p[1], p[2] + 1)),
    }
}

/// `J(n, k)`: `k`-subsets, adjacent when they share `k − 1` elements.
pub fn johnson(n: u64, k: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::Johnson, &[n, k])?;
    Ok(subset_graph(&subset_masks(n, k), |a, b| (a & b).count_ones() as u64 == k - 1))
}

/// `K(n, k)`: `k`-subsets, adjacent when disjoint.
pub fn kneser(n: u64, k: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::Kneser, &[n, k])?;
    Ok(subset_graph(&subset_masks(n, k), |a, b| a & b == 0))
}

/// `G(n, k, l)`: `k`-subsets then `l`-subsets, adjacent under containment.
pub fn set_inclusion(n: u64, k: u64, l: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::SetInclusion, &[n, k, l])?;
    Ok(inclusion_graph(n, k, l))
}

fn inclusion_graph(n: u64, k: u64, l: u64) -> Graph {
    let masks: Vec<u64> = subset_masks(n, k).into_iter().chain(subset_masks(n, l)).collect();
    subset_graph(&masks, |a, b| a != b && (a & b == a || a & b == b))
}

/// `H(n, k) = G(n, k, n − k)`.
pub fn bipartite_kneser(n: u64, k: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::BipartiteKneser, &[n, k])?;
    Ok(inclusion_graph(n, k, n - k))
}

/// `B(n, k) = G(n, k, k + 1)`.
pub fn bnk(n: u64, k: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::Bnk, &[n, k])?;
    Ok(inclusion_graph(n, k, k + 1))
}

pub fn complete(n: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::Complete, &[n])?;
    Ok(Graph::from_predicate(n as usize, |_, _| true))
}

pub fn cycle(n: u64) -> Result<Graph, FamilyError> {
    check_params(FamilyKind::Cycle, &[n])?;
    let n = n as usize;
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid"))
}

/// Index of `mask` within the lexicographic list of `|mask|`-subsets of `[n]`.
fn mask_rank(mask: u64, n: u64) -> u64 {
    rank_subset(&KSubset::from_mask(mask), n).expect("mask lies inside [n]")
}

/// `t(v) = [n] \ v` on the vertices of `H(n, k)`.
pub fn complement_map(n: u64, k: u64) -> Result<Permutation, FamilyError> {
    check_ground("complement", n)?;
    if !(k >= 1 && n > 2 * k) {
        return Err(params_error("complement", format!("need n > 2k >= 2, got n={n}, k={k}")));
    }
    let full = (1u64 << n) - 1;
    let side = binomial(n, k);
    let masks: Vec<u64> = subset_masks(n, k).into_iter().chain(subset_masks(n, n - k)).collect();
    let images = masks
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let c = full & !m;
            let offset = if (i as u64) < side { side } else { 0 };
            (offset + mask_rank(c, n)) as usize
        })
        .collect();
    Ok(Permutation::from_images(images).expect("complement is a bijection"))
}

/// Lifts a permutation of `[n]` (given 0-based) to the vertices of a set
/// family whose layers consist of the subsets of the listed sizes.
pub fn lift_point_permutation(n: u64, layer_sizes: &[u64], sigma: &Permutation) -> Result<Permutation, FamilyError> {
    if sigma.degree() as u64 != n {
        return Err(params_error("lift", format!("permutation degree {} != n = {n}", sigma.degree())));
    }
    let mut images = Vec::new();
    let mut offset = 0u64;
    for &size in layer_sizes {
        for mask in subset_masks(n, size) {
            let image = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0u64, |m, i| m | 1 << sigma.apply(i as usize));
            images.push((offset + mask_rank(image, n)) as usize);
        }
        offset += binomial(n, size);
    }
    Permutation::from_images(images).map_err(|e| params_error("lift", e.to_string()))
}

/// Lifts of the transposition `(1 2)` and the cycle `(1 2 … n)`, which
/// generate `Sym([n])`.
pub fn lifted_symmetric_generators(n: u64, layer_sizes: &[u64]) -> Result<Vec<Permutation>, FamilyError> {
    let n_us = n as usize;
    let cycle: Vec<usize> = (0..n_us).collect();
    let gens = [
        Permutation::transposition(n_us, 0, 1.min(n_us.saturating_sub(1))),
        Permutation::from_cycles(n_us, &[&cycle]),
    ];
    gens.into_iter()
        .map(|g| {
            let g = g.map_err(|e| params_error("lift", e.to_string()))?;
            lift_point_permutation(n, layer_sizes, &g)
        })
        .collect()
}
