//! Permutations of `0..n` and permutation groups backed by a stabilizer chain.
//!
//! Groups are built with the deterministic incremental Schreier–Sims
//! algorithm. Base points are chosen as the first point moved by the element
//! that opens a new level, unless a base prefix is requested explicitly.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("generator {index} ({generator}) neither fixes nor swaps the part")]
    PartViolation { index: usize, generator: Permutation },
    #[error("stated order {stated} does not match computed order {computed}")]
    OrderMismatch { stated: String, computed: String },
}

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree || seen[img] {
                return Err(PermError::NotBijection { degree });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::NotBijection { degree });
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        if a == b {
            if a >= degree {
                return Err(PermError::PointOutOfRange { point: a, degree });
            }
            return Ok(Self::identity(degree));
        }
        Self::from_cycles(degree, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.after(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    pub(crate) fn after(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, img)| i != *img).map(|(i, _)| i)
    }

    /// True when the image of `set` is `set` itself. `membership` must be the
    /// indicator vector of the same set.
    pub(crate) fn maps_set_into(&self, set: &[usize], membership: &[bool]) -> bool {
        set.iter().all(|&v| membership[self.images[v]])
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `coset[b] = (u, u⁻¹)` with `u(point) = b`.
    coset: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut coset = vec![None; degree];
        let id = Permutation::identity(degree);
        coset[point] = Some((id.clone(), id));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            coset,
        }
    }
}

struct ChainBuilder {
    degree: usize,
    prefix: Vec<usize>,
    levels: Vec<Level>,
}

impl ChainBuilder {
    fn new(degree: usize, prefix: Vec<usize>) -> Self {
        ChainBuilder {
            degree,
            prefix,
            levels: Vec::new(),
        }
    }

    fn sift(&self, from: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for j in from..self.levels.len() {
            let level = &self.levels[j];
            let b = h.apply(level.point);
            match &level.coset[b] {
                Some((_, inv)) => h = inv.after(&h),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    fn is_member_from(&self, from: usize, g: &Permutation) -> bool {
        let (h, j) = self.sift(from, g);
        j == self.levels.len() && h.is_identity()
    }

    fn base_point_for(&self, level: usize, g: &Permutation) -> usize {
        if level < self.prefix.len() {
            self.prefix[level]
        } else {
            g.first_moved_point()
                .expect("non-identity element opens a new level")
        }
    }

    fn insert(&mut self, i: usize, g: Permutation) {
        if g.is_identity() || self.is_member_from(i, &g) {
            return;
        }
        if i == self.levels.len() {
            let point = self.base_point_for(i, &g);
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[i].gens.push(g.clone());

        let mut work: Vec<(usize, Permutation)> = self.levels[i]
            .orbit
            .iter()
            .map(|&b| (b, g.clone()))
            .collect();
        while let Some((b, s)) = work.pop() {
            let c = s.apply(b);
            let u_b = &self.levels[i].coset[b].as_ref().expect("orbit point").0;
            let t = s.after(u_b);
            match &self.levels[i].coset[c] {
                Some((_, u_c_inv)) => {
                    let schreier = u_c_inv.after(&t);
                    if !schreier.is_identity() {
                        self.insert(i + 1, schreier);
                    }
                }
                None => {
                    let t_inv = t.inverse();
                    let level = &mut self.levels[i];
                    level.coset[c] = Some((t, t_inv));
                    level.orbit.push(c);
                    for s2 in &level.gens {
                        work.push((c, s2.clone()));
                    }
                }
            }
        }
    }
}

/// A permutation group given by generators, with a base and strong
/// generating set and its exact order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Like [`PermGroup::from_generators`], but the base starts with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut seen = vec![false; degree];
        let mut base_prefix = Vec::with_capacity(prefix.len());
        for &p in prefix {
            if p >= degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            if !seen[p] {
                seen[p] = true;
                base_prefix.push(p);
            }
        }
        let mut chain = ChainBuilder::new(degree, base_prefix);
        for g in &generators {
            chain.insert(0, g.clone());
        }
        let order = chain
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(PermGroup {
            degree,
            generators,
            levels: chain.levels,
            order,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Strong generators in level order; those listed for level `i` fix the
    /// first `i` base points.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Strong generators grouped by the level they were added to.
    pub fn strong_generators_by_level(&self) -> Vec<(usize, Vec<Permutation>)> {
        self.levels.iter().map(|l| (l.point, l.gens.clone())).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    fn check_degree(&self, p: &Permutation) -> Result<(), PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        self.check_degree(p)?;
        let mut h = p.clone();
        for level in &self.levels {
            let b = h.apply(level.point);
            match &level.coset[b] {
                Some((_, inv)) => h = inv.after(&h),
                None => return Ok(false),
            }
        }
        Ok(h.is_identity())
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit index of every point; orbits are numbered by their least point.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.degree];
        for start in 0..self.degree {
            if id[start] != usize::MAX {
                continue;
            }
            for p in self.orbit(start) {
                id[p] = start;
            }
        }
        id
    }

    /// Subgroup fixing every listed point, computed by extending the base.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, PermError> {
        let chain = PermGroup::with_base_prefix(self.degree, self.strong_generators(), points)?;
        let depth = {
            let mut seen = vec![false; self.degree];
            points.iter().filter(|&&p| !std::mem::replace(&mut seen[p], true)).count()
        };
        let gens: Vec<Permutation> = chain
            .levels
            .iter()
            .skip(depth)
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        let stab = PermGroup::from_generators(self.degree, gens)?;
        debug_assert_eq!(
            stab.order,
            chain
                .levels
                .iter()
                .skip(depth)
                .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
        );
        Ok(stab)
    }

    /// Setwise stabilizer of `part` when every generator either fixes `part`
    /// or maps it onto its complement. The result has index 1 or 2.
    pub fn part_stabilizer(&self, part: &[usize]) -> Result<PermGroup, PermError> {
        let mut inside = vec![false; self.degree];
        for &p in part {
            if p >= self.degree {
                return Err(PermError::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
            inside[p] = true;
        }
        let outside: Vec<usize> = (0..self.degree).filter(|&v| !inside[v]).collect();
        let outside_mask: Vec<bool> = inside.iter().map(|&b| !b).collect();

        let mut fixing = Vec::new();
        let mut swapping = Vec::new();
        for (index, g) in self.generators.iter().enumerate() {
            if g.maps_set_into(part, &inside) {
                fixing.push(g.clone());
            } else if part.len() == outside.len() && g.maps_set_into(part, &outside_mask) {
                swapping.push(g.clone());
            } else {
                return Err(PermError::PartViolation {
                    index,
                    generator: g.clone(),
                });
            }
        }

        // Schreier generators for the transversal {1, g0}.
        let mut gens = fixing.clone();
        if let Some(g0) = swapping.first() {
            let g0_inv = g0.inverse();
            for f in &fixing {
                gens.push(g0.after(f).after(&g0_inv));
            }
            for h in &swapping {
                gens.push(h.after(&g0_inv));
                gens.push(g0.after(h));
            }
        }
        gens.retain(|g| !g.is_identity());
        gens.sort();
        gens.dedup();
        let stab = PermGroup::from_generators(self.degree, gens)?;
        debug_assert!(
            stab.order == self.order || stab.order.clone() * 2u32 == self.order,
            "part stabilizer must have index 1 or 2"
        );
        Ok(stab)
    }

    /// True iff `p` commutes with every generator.
    pub fn commutes_with(&self, p: &Permutation) -> Result<bool, PermError> {
        self.check_degree(p)?;
        Ok(self
            .generators
            .iter()
            .all(|g| p.after(g) == g.after(p)))
    }
}

pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
    PermGroup::from_generators(degree, gens)
}

pub fn commutes(p: &Permutation, grp: &PermGroup) -> Result<bool, PermError> {
    grp.commutes_with(p)
}

#[derive(Serialize, Deserialize)]
struct PermGroupRepr {
    degree: usize,
    generators: Vec<Permutation>,
    order: String,
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PermGroupRepr {
            degree: self.degree,
            generators: self.generators.clone(),
            order: self.order.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PermGroupRepr::deserialize(deserializer)?;
        let group = PermGroup::from_generators(repr.degree, repr.generators)
            .map_err(serde::de::Error::custom)?;
        if group.order.to_string() != repr.order {
            return Err(serde::de::Error::custom(PermError::OrderMismatch {
                stated: repr.order,
                computed: group.order.to_string(),
            }));
        }
        Ok(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_transpositions_gives_three_cycle() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let c = compose(&a, &b).unwrap();
        assert_eq!(c.images(), &[1, 2, 0]);
        assert_eq!(c, Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap());
    }

    #[test]
    fn compose_identity_and_involution() {
        let q = p(&[2, 0, 3, 1]);
        let id = Permutation::identity(4);
        assert_eq!(compose(&id, &q).unwrap(), q);
        let t = Permutation::transposition(4, 1, 3).unwrap();
        assert!(compose(&t, &t).unwrap().is_identity());
        assert!(compose(&q, &q.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, PermError::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(*PermGroup::from_generators(5, vec![]).unwrap().order(), BigUint::one());
        let adj: Vec<_> = (0..4).map(|i| Permutation::transposition(5, i, i + 1).unwrap()).collect();
        assert_eq!(*PermGroup::from_generators(5, adj).unwrap().order(), BigUint::from(120u32));
        let c5 = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(*PermGroup::from_generators(5, vec![c5]).unwrap().order(), BigUint::from(5u32));
    }

    #[test]
    fn membership() {
        let c3 = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let g = PermGroup::from_generators(3, vec![c3.clone()]).unwrap();
        assert!(g.contains(&Permutation::identity(3)).unwrap());
        assert!(g.contains(&c3).unwrap());
        assert!(!g.contains(&Permutation::transposition(3, 0, 1).unwrap()).unwrap());
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn stabilizers() {
        let c3 = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let z3 = PermGroup::from_generators(3, vec![c3.clone()]).unwrap();
        assert!(z3.pointwise_stabilizer(&[0]).unwrap().is_trivial());
        let s3 = PermGroup::from_generators(3, vec![c3, Permutation::transposition(3, 0, 1).unwrap()]).unwrap();
        assert_eq!(*s3.pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(2u32));
        assert!(s3.pointwise_stabilizer(&[0, 1, 2]).unwrap().is_trivial());
        assert!(s3.pointwise_stabilizer(&[7]).is_err());
    }

    #[test]
    fn base_prefix_is_respected() {
        let s4: Vec<_> = (0..3).map(|i| Permutation::transposition(4, i, i + 1).unwrap()).collect();
        let g = PermGroup::with_base_prefix(4, s4, &[3, 1]).unwrap();
        assert_eq!(&g.base()[..2], &[3, 1]);
        assert_eq!(*g.order(), BigUint::from(24u32));
        for (i, (_, gens)) in g.strong_generators_by_level().iter().enumerate() {
            for s in gens {
                for &b in &g.base()[..i] {
                    assert_eq!(s.apply(b), b);
                }
            }
        }
    }

    #[test]
    fn part_stabilizer_of_hexagon_side() {
        // D6 acting on the 6-cycle 0-1-2-3-4-5.
        let rot = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let refl = p(&[0, 5, 4, 3, 2, 1]);
        let d6 = PermGroup::from_generators(6, vec![rot, refl]).unwrap();
        assert_eq!(*d6.order(), BigUint::from(12u32));
        let s = d6.part_stabilizer(&[0, 2, 4]).unwrap();
        assert_eq!(*s.order(), BigUint::from(6u32));

        let fixing = PermGroup::from_generators(6, vec![p(&[2, 1, 4, 3, 0, 5])]).unwrap();
        let same = fixing.part_stabilizer(&[0, 2, 4]).unwrap();
        assert_eq!(same.order(), fixing.order());
    }

    #[test]
    fn part_stabilizer_reports_violation() {
        let g = PermGroup::from_generators(4, vec![Permutation::transposition(4, 0, 2).unwrap()]).unwrap();
        assert!(matches!(g.part_stabilizer(&[0, 1]), Err(PermError::PartViolation { index: 0, .. })));
    }

    #[test]
    fn commutation() {
        let c3 = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let z3 = PermGroup::from_generators(3, vec![c3]).unwrap();
        assert!(commutes(&Permutation::identity(3), &z3).unwrap());
        assert!(!commutes(&Permutation::transposition(3, 0, 1).unwrap(), &z3).unwrap());
    }

    #[test]
    fn json_shapes() {
        let q = p(&[1, 2, 0]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1,2,0]");
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
        let g = PermGroup::from_generators(3, vec![q]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"degree":3,"generators":[[1,2,0]],"order":"3"}"#);
        let back: PermGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back.order(), g.order());
        assert!(serde_json::from_str::<PermGroup>(r#"{"degree":3,"generators":[[1,2,0]],"order":"6"}"#).is_err());
    }

    #[test]
    fn display_cycles() {
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p(&[1, 0, 3, 4, 2]).to_string(), "(0 1)(2 3 4)");
    }
}
