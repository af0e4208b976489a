//! Finite posets of lattice sites, their allowed orderings (linear
//! extensions), pedestals and the volume-additive bijection
//! `heights <-> (pedestal, partition)`.
//!
//! Sites are indexed in a fixed reference order, which is itself a linear
//! extension; an ordering is a permutation of site indices.

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    /// Lattice coordinates of each site (0-based).
    labels: Vec<Vec<usize>>,
    /// Sites that must carry a height at least as large.
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

/// Total order on the sites, stored as the sequence of site indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SiteOrdering {
    pub sites: Vec<usize>,
}

impl SiteOrdering {
    /// `rank[site]` = position of the site in the ordering.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.sites.len()];
        for (pos, &s) in self.sites.iter().enumerate() {
            r[s] = pos;
        }
        r
    }
}

impl Poset {
    /// Builds a poset from labels and covering pairs `(upper, lower)`,
    /// meaning `height(upper) >= height(lower)`. Label order must be a
    /// linear extension.
    pub fn new(labels: Vec<Vec<usize>>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        for &(a, b) in covers {
            if a >= n || b >= n || a >= b {
                return invalid(format!(
                    "cover ({a}, {b}) does not respect the reference order"
                ));
            }
            preds[b].push(a);
            succs[a].push(b);
        }
        Ok(Self {
            labels,
            preds,
            succs,
        })
    }

    /// Cells of an `m x n x k` box ordered by coordinate sum, then
    /// lexicographically; each cell dominates its three forward neighbours.
    pub fn box3(m: usize, n: usize, k: usize) -> Self {
        let mut labels: Vec<Vec<usize>> = Vec::with_capacity(m * n * k);
        for i in 0..m {
            for j in 0..n {
                for l in 0..k {
                    labels.push(vec![i, j, l]);
                }
            }
        }
        labels.sort_by_key(|c| (c[0] + c[1] + c[2], c[0], c[1]));
        Self::from_grid_labels(labels)
    }

    /// Poset on the given grid cells where each cell dominates the cells
    /// one step further along any axis.
    pub fn from_grid_labels(labels: Vec<Vec<usize>>) -> Self {
        let index: std::collections::HashMap<&[usize], usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_slice(), i))
            .collect();
        let mut covers = Vec::new();
        for (a, l) in labels.iter().enumerate() {
            for axis in 0..l.len() {
                let mut next = l.clone();
                next[axis] += 1;
                if let Some(&b) = index.get(next.as_slice()) {
                    covers.push((a, b));
                }
            }
        }
        Self::new(labels, &covers).expect("grid labels sorted by coordinate sum")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn preds(&self, site: usize) -> &[usize] {
        &self.preds[site]
    }

    pub fn succs(&self, site: usize) -> &[usize] {
        &self.succs[site]
    }

    pub fn reference_ordering(&self) -> SiteOrdering {
        SiteOrdering {
            sites: (0..self.len()).collect(),
        }
    }

    pub fn is_linear_extension(&self, ord: &SiteOrdering) -> bool {
        if ord.sites.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; self.len()];
        for &s in &ord.sites {
            if s >= self.len() || seen[s] || self.preds[s].iter().any(|&p| !seen[p]) {
                return false;
            }
            seen[s] = true;
        }
        true
    }

    /// Heights are non-increasing along every cover.
    pub fn is_monotone(&self, heights: &[u32]) -> bool {
        heights.len() == self.len()
            && (0..self.len()).all(|a| self.succs[a].iter().all(|&b| heights[a] >= heights[b]))
    }

    /// Heights descending, ties broken by the reference order.
    pub fn ordering_from_heights(&self, heights: &[u32]) -> SiteOrdering {
        let mut sites: Vec<usize> = (0..self.len()).collect();
        sites.sort_by(|&a, &b| heights[b].cmp(&heights[a]).then(a.cmp(&b)));
        SiteOrdering { sites }
    }

    /// Minimal heights inducing `ord`: scanning backwards from the last
    /// site at height 0, the height steps up by one whenever consecutive
    /// sites appear against the reference order.
    pub fn pedestal_from_ordering(&self, ord: &SiteOrdering) -> Result<Vec<u32>> {
        if !self.is_linear_extension(ord) {
            return invalid("ordering is not allowed (not a linear extension)");
        }
        let n = self.len();
        let mut p = vec![0u32; n];
        for t in (0..n.saturating_sub(1)).rev() {
            let (a, b) = (ord.sites[t], ord.sites[t + 1]);
            p[a] = p[b] + u32::from(a > b);
        }
        Ok(p)
    }

    pub fn is_pedestal(&self, heights: &[u32]) -> bool {
        self.is_monotone(heights)
            && self
                .pedestal_from_ordering(&self.ordering_from_heights(heights))
                .is_ok_and(|p| p == heights)
    }

    /// Volume-additive bijection `heights -> (pedestal, partition)`.
    pub fn stanley_forward(&self, heights: &[u32]) -> Result<(Vec<u32>, Partition)> {
        if !self.is_monotone(heights) {
            return invalid("heights are not monotone on the poset");
        }
        let ord = self.ordering_from_heights(heights);
        let pedestal = self.pedestal_from_ordering(&ord)?;
        let mut parts = Vec::with_capacity(self.len());
        for &s in &ord.sites {
            let d = heights[s].checked_sub(pedestal[s]).ok_or_else(|| {
                Error::ContractViolation(format!("pedestal exceeds the skyscraper at site {s}"))
            })?;
            parts.push(d);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ContractViolation(
                "excess over the pedestal is not non-increasing along the ordering".into(),
            ));
        }
        Ok((pedestal, Partition::from_unsorted(parts)))
    }

    /// Inverse of [`Poset::stanley_forward`]: lays the parts of `p` along the
    /// ordering induced by the pedestal and adds the pedestal.
    pub fn stanley_inverse(&self, pedestal: &[u32], p: &Partition) -> Result<Vec<u32>> {
        if p.len() > self.len() {
            return invalid(format!(
                "partition has {} parts but the shape has {} sites",
                p.len(),
                self.len()
            ));
        }
        if !self.is_pedestal(pedestal) {
            return invalid("heights are not a pedestal");
        }
        let ord = self.ordering_from_heights(pedestal);
        let mut heights = pedestal.to_vec();
        for (k, &part) in p.parts().iter().enumerate() {
            heights[ord.sites[k]] += part;
        }
        Ok(heights)
    }

    /// Visits every linear extension in lexicographic order of site index.
    pub fn for_each_linear_extension(&self, mut visit: impl FnMut(&SiteOrdering)) {
        let n = self.len();
        let mut missing: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ord = SiteOrdering {
            sites: Vec::with_capacity(n),
        };
        let mut used = vec![false; n];
        fn rec(
            poset: &Poset,
            missing: &mut [usize],
            used: &mut [bool],
            ord: &mut SiteOrdering,
            visit: &mut dyn FnMut(&SiteOrdering),
        ) {
            if ord.sites.len() == poset.len() {
                visit(ord);
                return;
            }
            for s in 0..poset.len() {
                if used[s] || missing[s] != 0 {
                    continue;
                }
                used[s] = true;
                ord.sites.push(s);
                for &t in &poset.succs[s] {
                    missing[t] -= 1;
                }
                rec(poset, missing, used, ord, visit);
                for &t in &poset.succs[s] {
                    missing[t] += 1;
                }
                ord.sites.pop();
                used[s] = false;
            }
        }
        rec(self, &mut missing, &mut used, &mut ord, &mut visit);
    }

    pub fn count_linear_extensions(&self) -> u64 {
        let mut count = 0;
        self.for_each_linear_extension(|_| count += 1);
        count
    }

    /// Pedestal volume histogram over all allowed orderings (index =
    /// volume).
    pub fn pedestal_volume_counts(&self) -> Vec<u64> {
        let mut counts: Vec<u64> = Vec::new();
        self.for_each_linear_extension(|ord| {
            let v: u32 = self
                .pedestal_from_ordering(ord)
                .expect("enumerated ordering is allowed")
                .iter()
                .sum();
            let v = v as usize;
            if counts.len() <= v {
                counts.resize(v + 1, 0);
            }
            counts[v] += 1;
        });
        counts
    }

    /// Visits every monotone height assignment of total volume at most
    /// `max_volume`.
    pub fn for_each_monotone(&self, max_volume: u32, mut visit: impl FnMut(&[u32])) {
        let mut heights = vec![0u32; self.len()];
        fn rec(
            poset: &Poset,
            site: usize,
            budget: u32,
            heights: &mut Vec<u32>,
            visit: &mut dyn FnMut(&[u32]),
        ) {
            if site == poset.len() {
                visit(heights);
                return;
            }
            let cap = poset.preds[site]
                .iter()
                .map(|&p| heights[p])
                .min()
                .unwrap_or(budget)
                .min(budget);
            for h in 0..=cap {
                heights[site] = h;
                rec(poset, site + 1, budget - h, heights, visit);
            }
            heights[site] = 0;
        }
        rec(self, 0, max_volume, &mut heights, &mut visit);
    }

    /// Number of monotone height assignments of each volume `0..=max`.
    pub fn monotone_counts(&self, max_volume: u32) -> Vec<u64> {
        let mut counts = vec![0u64; max_volume as usize + 1];
        self.for_each_monotone(max_volume, |h| {
            counts[h.iter().sum::<u32>() as usize] += 1;
        });
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square2() -> Poset {
        Poset::from_grid_labels(vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]])
    }

    #[test]
    fn zero_heights_give_reference_and_zero_pedestal() {
        let p = square2();
        let ord = p.ordering_from_heights(&[0; 4]);
        assert_eq!(ord, p.reference_ordering());
        assert_eq!(p.pedestal_from_ordering(&ord).unwrap(), vec![0; 4]);
    }

    #[test]
    fn two_by_two_pedestals() {
        let p = square2();
        assert_eq!(p.count_linear_extensions(), 2);
        assert_eq!(p.pedestal_volume_counts(), vec![1, 0, 1]);
    }

    #[test]
    fn non_allowed_ordering_rejected() {
        let p = square2();
        let bad = SiteOrdering {
            sites: vec![1, 0, 2, 3],
        };
        assert!(p.pedestal_from_ordering(&bad).is_err());
    }

    #[test]
    fn strict_heights_give_pure_height_order() {
        let p = square2();
        // [[3,1],[2,0]]
        let ord = p.ordering_from_heights(&[3, 1, 2, 0]);
        assert_eq!(ord.sites, vec![0, 2, 1, 3]);
    }

    #[test]
    fn box_extension_count() {
        assert_eq!(Poset::box3(2, 2, 2).count_linear_extensions(), 48);
    }

    #[test]
    fn bijection_round_trip_small() {
        let p = square2();
        p.for_each_monotone(8, |h| {
            let (ped, part) = p.stanley_forward(h).unwrap();
            assert!(p.is_pedestal(&ped));
            assert_eq!(
                ped.iter().map(|&v| v as u64).sum::<u64>() + part.volume(),
                h.iter().map(|&v| v as u64).sum::<u64>()
            );
            assert_eq!(p.stanley_inverse(&ped, &part).unwrap(), h);
        });
    }
}
