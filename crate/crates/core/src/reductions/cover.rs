//! Set cover and element cover instances with enumeration oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subsets beyond this count are too many to enumerate.
pub const ENUMERATION_LIMIT: usize = 20;

/// Weighted set cover over elements `0..elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl SetCoverInstance {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>, weights: Vec<u64>) -> Result<Self> {
        let mut sets = sets;
        for s in sets.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let sc = SetCoverInstance {
            elements,
            sets,
            weights,
            budget: None,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.sets.len() {
            return Err(Error::InvalidInstance("one weight per set required".into()));
        }
        if self.weights.contains(&0) {
            return Err(Error::InvalidInstance(
                "set weights must be positive".into(),
            ));
        }
        let mut covered = vec![false; self.elements];
        for (i, s) in self.sets.iter().enumerate() {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInstance(format!(
                    "set {i} is not sorted and distinct"
                )));
            }
            for &e in s {
                if e >= self.elements {
                    return Err(Error::InvalidInstance(format!(
                        "set {i} names element {e} out of range"
                    )));
                }
                covered[e] = true;
            }
        }
        if let Some(e) = covered.iter().position(|&c| !c) {
            return Err(Error::InvalidInstance(format!("element {e} is in no set")));
        }
        Ok(())
    }

    /// Sets containing each element, in set order.
    pub fn containing(&self) -> Vec<Vec<usize>> {
        let mut by = vec![Vec::new(); self.elements];
        for (i, s) in self.sets.iter().enumerate() {
            for &e in s {
                by[e].push(i);
            }
        }
        by
    }

    pub fn incidences(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = vec![false; self.elements];
        for &i in chosen {
            if i >= self.k() {
                return false;
            }
            for &e in &self.sets[i] {
                covered[e] = true;
            }
        }
        covered.iter().all(|&c| c)
    }

    pub fn weight(&self, chosen: &[usize]) -> u64 {
        chosen.iter().map(|&i| self.weights[i]).sum()
    }
}

fn members(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum weight cover; ties go to the lexicographically smallest set list.
pub fn min_set_cover(sc: &SetCoverInstance) -> Result<(u64, Vec<usize>)> {
    sc.validate()?;
    let k = sc.k();
    if k > ENUMERATION_LIMIT {
        return Err(Error::InstanceTooLarge {
            what: "set cover enumeration",
            size: 1 << k,
            limit: 1 << ENUMERATION_LIMIT,
        });
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    for mask in 0u32..1 << k {
        let chosen = members(mask, k);
        if sc.is_cover(&chosen) {
            let cand = (sc.weight(&chosen), chosen);
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.ok_or(Error::Infeasible)
}

/// Which cover problem a [`CoverInstance`] poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CoverObjective {
    /// Choose `m` subsets covering as few distinct elements as possible.
    Min { m: usize },
    /// Choose `n1` elements fully covering as many subsets as possible.
    Max { n1: usize },
}

/// A collection of subsets of `0..ground`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInstance {
    pub ground: usize,
    pub subsets: Vec<Vec<usize>>,
    pub objective: CoverObjective,
}

impl CoverInstance {
    pub fn new(ground: usize, subsets: Vec<Vec<usize>>, objective: CoverObjective) -> Result<Self> {
        let mut subsets = subsets;
        for s in subsets.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let c = CoverInstance {
            ground,
            subsets,
            objective,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.subsets.iter().enumerate() {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInstance(format!(
                    "subset {i} is not sorted and distinct"
                )));
            }
            if s.iter().any(|&e| e >= self.ground) {
                return Err(Error::InvalidInstance(format!(
                    "subset {i} leaves the ground set"
                )));
            }
        }
        match self.objective {
            CoverObjective::Min { m } if m > self.subsets.len() => Err(Error::InvalidInstance(
                format!("cannot choose {m} of {} subsets", self.subsets.len()),
            )),
            CoverObjective::Max { n1 } if n1 > self.ground => Err(Error::InvalidInstance(format!(
                "cannot choose {n1} of {} elements",
                self.ground
            ))),
            _ => Ok(()),
        }
    }

    /// Largest subset size.
    pub fn tau(&self) -> usize {
        self.subsets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of subsets lying entirely inside `chosen`.
    pub fn covered_count(&self, chosen: &[usize]) -> usize {
        let mut inside = vec![false; self.ground];
        for &e in chosen {
            if e < self.ground {
                inside[e] = true;
            }
        }
        self.subsets
            .iter()
            .filter(|s| s.iter().all(|&e| inside[e]))
            .count()
    }

    /// Distinct elements in the union of the chosen subsets.
    pub fn union_size(&self, chosen: &[usize]) -> usize {
        let mut hit = vec![false; self.ground];
        for &i in chosen {
            for &e in &self.subsets[i] {
                hit[e] = true;
            }
        }
        hit.iter().filter(|&&h| h).count()
    }
}

/// All `r`-subsets of `0..n` as masks, in increasing numeric order.
fn masks_of_size(n: usize, r: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == r)
}

/// Max cover: best `n1` elements and the number of subsets they fully cover.
pub fn max_cover(c: &CoverInstance) -> Result<(usize, Vec<usize>)> {
    let CoverObjective::Max { n1 } = c.objective else {
        return Err(Error::InvalidInstance("not a max-cover instance".into()));
    };
    if c.ground > ENUMERATION_LIMIT {
        return Err(Error::InstanceTooLarge {
            what: "max cover enumeration",
            size: 1 << c.ground,
            limit: 1 << ENUMERATION_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in masks_of_size(c.ground, n1) {
        let chosen = members(mask, c.ground);
        let count = c.covered_count(&chosen);
        let better = match &best {
            None => true,
            Some((bc, bs)) => count > *bc || (count == *bc && chosen < *bs),
        };
        if better {
            best = Some((count, chosen));
        }
    }
    Ok(best.expect("n1 ≤ ground so some choice exists"))
}

/// Min cover: best `m` subsets and the size of their union.
pub fn min_cover(c: &CoverInstance) -> Result<(usize, Vec<usize>)> {
    let CoverObjective::Min { m } = c.objective else {
        return Err(Error::InvalidInstance("not a min-cover instance".into()));
    };
    let k = c.subsets.len();
    if k > ENUMERATION_LIMIT {
        return Err(Error::InstanceTooLarge {
            what: "min cover enumeration",
            size: 1 << k,
            limit: 1 << ENUMERATION_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in masks_of_size(k, m) {
        let chosen = members(mask, k);
        let cand = (c.union_size(&chosen), chosen);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(best.expect("m ≤ |C| so some choice exists"))
}

/// Default cap on the squared collection size.
pub const SQUARE_LIMIT: usize = 1 << 20;

/// Collection of unions of all ordered pairs of subsets, repetitions kept.
pub fn square_collection(c: &CoverInstance, limit: usize) -> Result<CoverInstance> {
    if !matches!(c.objective, CoverObjective::Max { .. }) {
        return Err(Error::InvalidInstance(
            "squaring applies to max-cover instances".into(),
        ));
    }
    let size = c.subsets.len() * c.subsets.len();
    if size > limit {
        return Err(Error::SizeBoundExceeded { size, limit });
    }
    let mut subsets = Vec::with_capacity(size);
    for a in &c.subsets {
        for b in &c.subsets {
            let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
            u.sort_unstable();
            u.dedup();
            subsets.push(u);
        }
    }
    Ok(CoverInstance {
        ground: c.ground,
        subsets,
        objective: c.objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_cover() -> SetCoverInstance {
        SetCoverInstance::new(3, vec![vec![0, 2], vec![1, 2], vec![0, 1]], vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn triangle_needs_two_sets() {
        assert_eq!(min_set_cover(&triangle_cover()).unwrap(), (2, vec![0, 1]));
    }

    #[test]
    fn uncovered_element_rejected() {
        assert!(SetCoverInstance::new(3, vec![vec![0, 1]], vec![1]).is_err());
        assert!(SetCoverInstance::new(2, vec![vec![0, 1]], vec![0]).is_err());
    }

    #[test]
    fn squared_listing() {
        let c = CoverInstance::new(
            3,
            vec![vec![0, 1], vec![1, 2]],
            CoverObjective::Max { n1: 2 },
        )
        .unwrap();
        let sq = square_collection(&c, SQUARE_LIMIT).unwrap();
        assert_eq!(
            sq.subsets,
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2], vec![1, 2]]
        );
        assert!(sq.tau() <= 2 * c.tau());
        assert_eq!(
            square_collection(&c, 3).unwrap_err(),
            Error::SizeBoundExceeded { size: 4, limit: 3 }
        );
    }

    #[test]
    fn cover_oracles() {
        let c = CoverInstance::new(
            4,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0]],
            CoverObjective::Max { n1: 2 },
        )
        .unwrap();
        assert_eq!(max_cover(&c).unwrap(), (2, vec![0, 1]));
        let c = CoverInstance {
            objective: CoverObjective::Min { m: 2 },
            ..c
        };
        assert_eq!(min_cover(&c).unwrap(), (2, vec![0, 3]));
    }
}
