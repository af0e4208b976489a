//! Integer partitions, Young-diagram profiles and brute-force enumeration.

use crate::error::{invalid, Error, Result};
use crate::geometry::Vec2;

/// Enumeration guard for [`enumerate_partitions`].
pub const PARTITION_GUARD: usize = 60;

/// Parts `n_1 >= n_2 >= ... > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not a non-increasing positive sequence"));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn volume(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `r_k` = number of parts equal to `k`, indexed from `k = 1` at
    /// position 0.
    pub fn multiplicities(&self) -> Vec<u32> {
        let top = self.parts.first().copied().unwrap_or(0) as usize;
        let mut r = vec![0; top];
        for &p in &self.parts {
            r[p as usize - 1] += 1;
        }
        r
    }

    pub fn from_multiplicities(r: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (k, &m) in r.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(k as u32 + 1, m as usize));
        }
        Self { parts }
    }

    pub fn conjugate(&self) -> Self {
        let top = self.parts.first().copied().unwrap_or(0);
        Self {
            parts: (1..=top)
                .map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

/// All partitions of `n` in decreasing lexicographic order, optionally
/// with at most `max_parts` parts and/or distinct parts.
pub fn enumerate_partitions(
    n: usize,
    max_parts: Option<usize>,
    strict: bool,
    override_guard: bool,
) -> Result<Vec<Partition>> {
    if n > PARTITION_GUARD && !override_guard {
        return Err(Error::GuardExceeded {
            what: "partition enumeration size N",
            value: n,
            limit: PARTITION_GUARD,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let limit = max_parts.unwrap_or(usize::MAX);
    fn rec(
        rest: u32,
        largest: u32,
        limit: usize,
        strict: bool,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if current.len() == limit {
            return;
        }
        for p in (1..=largest.min(rest)).rev() {
            current.push(p);
            let next_largest = if strict { p - 1 } else { p };
            rec(rest - p, next_largest, limit, strict, current, out);
            current.pop();
        }
    }
    rec(n as u32, n as u32, limit, strict, &mut current, &mut out);
    Ok(out)
}

/// Step function `phi(y)` = number of parts `>= ceil(y)` with its boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramProfile {
    /// `heights[k-1] = phi` on `(k-1, k]`.
    pub heights: Vec<u32>,
    /// From `(0, phi(0+))` to `(n_1, 0)`, alternating horizontal and
    /// vertical pieces.
    pub boundary: Vec<Vec2>,
}

impl DiagramProfile {
    pub fn area(&self) -> u64 {
        self.heights.iter().map(|&h| h as u64).sum()
    }

    /// Recovers the partition through `r_k = phi_k - phi_{k+1}`.
    pub fn to_partition(&self) -> Partition {
        let r: Vec<u32> = (0..self.heights.len())
            .map(|k| self.heights[k] - self.heights.get(k + 1).copied().unwrap_or(0))
            .collect();
        Partition::from_multiplicities(&r)
    }
}

pub fn profile(p: &Partition) -> DiagramProfile {
    let heights = p.conjugate().parts;
    let mut boundary = Vec::with_capacity(2 * heights.len() + 2);
    if heights.is_empty() {
        boundary.push(Vec2::new(0.0, 0.0));
        return DiagramProfile { heights, boundary };
    }
    boundary.push(Vec2::new(0.0, heights[0] as f64));
    for k in 0..heights.len() {
        let h = heights[k] as f64;
        let next = heights.get(k + 1).copied().unwrap_or(0);
        if next != heights[k] {
            boundary.push(Vec2::new((k + 1) as f64, h));
            boundary.push(Vec2::new((k + 1) as f64, next as f64));
        }
    }
    DiagramProfile { heights, boundary }
}

/// Profile boundary scaled by `1/sqrt(n)`.
pub fn scaled_profile(p: &Partition, n: f64) -> Result<Vec<Vec2>> {
    if !(n > 0.0) {
        return invalid("scaling volume must be positive");
    }
    let s = 1.0 / n.sqrt();
    Ok(profile(p).boundary.into_iter().map(|v| v * s).collect())
}

/// Area under a monotone staircase or polyline starting on the `y` axis.
pub fn area_under(boundary: &[Vec2]) -> f64 {
    boundary
        .windows(2)
        .map(|w| (w[1].x - w[0].x) * 0.5 * (w[0].y + w[1].y))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{bounded_parts_series, euler_series, strict_series};
    use num_bigint::BigInt;

    fn parts(v: &[Partition]) -> Vec<Vec<u32>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn four() {
        let all = enumerate_partitions(4, None, false, false).unwrap();
        assert_eq!(
            parts(&all),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        let strict = enumerate_partitions(4, None, true, false).unwrap();
        assert_eq!(parts(&strict), vec![vec![4], vec![3, 1]]);
        let zero = enumerate_partitions(0, None, false, false).unwrap();
        assert_eq!(zero, vec![Partition::empty()]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            enumerate_partitions(61, None, false, false),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn oracle_matches_series_up_to_40() {
        let e = euler_series(40);
        let st = strict_series(40);
        let b3 = bounded_parts_series(3, 40).unwrap();
        for n in 0..=40 {
            let all = enumerate_partitions(n, None, false, false).unwrap();
            assert_eq!(BigInt::from(all.len()), *e.coeff(n));
            let strict = enumerate_partitions(n, None, true, false).unwrap();
            assert_eq!(BigInt::from(strict.len()), *st.coeff(n));
            let few = enumerate_partitions(n, Some(3), false, false).unwrap();
            assert_eq!(BigInt::from(few.len()), *b3.coeff(n));
        }
    }

    #[test]
    fn profiles() {
        let one = profile(&Partition::new(vec![1]).unwrap());
        assert_eq!(
            one.boundary,
            vec![Vec2::new(0.0, 1.0), Vec2::new(1.0, 1.0), Vec2::new(1.0, 0.0)]
        );
        let p = Partition::new(vec![2, 1]).unwrap();
        let pr = profile(&p);
        assert_eq!(pr.heights, vec![2, 1]);
        assert_eq!(pr.area(), 3);
        assert_eq!(area_under(&pr.boundary), 3.0);
        assert_eq!(pr.to_partition(), p);
    }
}
