//! Plane partitions ("skyscrapers") on skew Young shapes, their pedestals
//! and the product formulas for their generating functions.

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;
use crate::poset::{Poset, SiteOrdering};
use crate::series::{bounded_parts_series, Polynomial, TruncatedIntSeries};

/// Young diagram given by non-increasing row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    rows: Vec<usize>,
}

impl Diagram {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{rows:?} is not a Young diagram (rows must not increase)"));
        }
        Ok(Self { rows })
    }

    pub fn rectangle(m: usize, n: usize) -> Self {
        Self {
            rows: if n == 0 { Vec::new() } else { vec![n; m] },
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        j < self.row(i)
    }

    pub fn is_rectangle(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] == w[1])
    }

    pub fn contains_diagram(&self, other: &Diagram) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }
}

/// The skew shape `B \ A` with its sites in reference order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    outer: Diagram,
    inner: Diagram,
    poset: Poset,
}

impl SkewShape {
    pub fn new(outer: Diagram, inner: Diagram) -> Result<Self> {
        if !outer.contains_diagram(&inner) {
            return invalid(format!(
                "hole {:?} is not contained in {:?}",
                inner.rows(),
                outer.rows()
            ));
        }
        let mut labels = Vec::new();
        for (i, &len) in outer.rows().iter().enumerate() {
            for j in inner.row(i)..len {
                labels.push(vec![i, j]);
            }
        }
        labels.sort_by_key(|c| (c[0] + c[1], c[0]));
        let poset = Poset::from_grid_labels(labels);
        Ok(Self {
            outer,
            inner,
            poset,
        })
    }

    pub fn rectangle(m: usize, n: usize) -> Self {
        Self::new(Diagram::rectangle(m, n), Diagram::empty()).expect("rectangle is a diagram")
    }

    pub fn outer(&self) -> &Diagram {
        &self.outer
    }

    pub fn inner(&self) -> &Diagram {
        &self.inner
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.len()
    }

    /// Site index of the cell `(i, j)` (0-based) if it lies in the shape.
    pub fn site(&self, i: usize, j: usize) -> Option<usize> {
        self.poset
            .labels()
            .iter()
            .position(|l| l[0] == i && l[1] == j)
    }
}

/// Heights on the sites of a skew shape, non-increasing along rows and
/// columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePartition {
    shape: SkewShape,
    heights: Vec<u32>,
}

impl PlanePartition {
    pub fn new(shape: SkewShape, heights: Vec<u32>) -> Result<Self> {
        if !shape.poset.is_monotone(&heights) {
            return invalid("heights are not non-increasing along rows and columns");
        }
        Ok(Self { shape, heights })
    }

    /// From a rectangular array of rows on the rectangle shape.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return invalid("rows of unequal length");
        }
        let shape = SkewShape::rectangle(m, n);
        let heights = shape
            .poset
            .labels()
            .iter()
            .map(|l| rows[l[0]][l[1]])
            .collect();
        Self::new(shape, heights)
    }

    pub fn zero(shape: SkewShape) -> Self {
        let n = shape.size();
        Self {
            shape,
            heights: vec![0; n],
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn volume(&self) -> u64 {
        self.heights.iter().map(|&h| h as u64).sum()
    }

    /// Height at cell `(i, j)`, zero outside the shape.
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.shape.site(i, j).map_or(0, |s| self.heights[s])
    }

    /// Rows of the outer diagram, zero-filled in the hole.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.shape
            .outer
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| self.at(i, j)).collect())
            .collect()
    }
}

/// The entries listed in non-increasing order, zeros dropped.
pub fn flatten(s: &PlanePartition) -> Partition {
    Partition::from_unsorted(s.heights.clone())
}

/// Fixed allowed ordering: sites by `i + j`, then by row.
pub fn reference_ordering(shape: &SkewShape) -> Result<SiteOrdering> {
    let ord = shape.poset.reference_ordering();
    if !shape.poset.is_linear_extension(&ord) {
        return Err(Error::ContractViolation(
            "reference ordering is not allowed".into(),
        ));
    }
    Ok(ord)
}

pub fn ordering_from_skyscraper(s: &PlanePartition) -> SiteOrdering {
    s.shape.poset.ordering_from_heights(&s.heights)
}

pub fn pedestal_from_ordering(shape: &SkewShape, ord: &SiteOrdering) -> Result<PlanePartition> {
    let heights = shape.poset.pedestal_from_ordering(ord)?;
    Ok(PlanePartition {
        shape: shape.clone(),
        heights,
    })
}

/// `S -> (P, Y)` with `P` the pedestal of the ordering induced by `S` and
/// `Y` the flattened excess `S - P`.
pub fn stanley_forward(s: &PlanePartition) -> Result<(PlanePartition, Partition)> {
    let (ped, part) = s.shape.poset.stanley_forward(&s.heights)?;
    Ok((
        PlanePartition {
            shape: s.shape.clone(),
            heights: ped,
        },
        part,
    ))
}

pub fn stanley_inverse(pedestal: &PlanePartition, p: &Partition) -> Result<PlanePartition> {
    let heights = pedestal.shape.poset.stanley_inverse(&pedestal.heights, p)?;
    Ok(PlanePartition {
        shape: pedestal.shape.clone(),
        heights,
    })
}

/// All plane partitions on `shape` of volume at most `max_volume`.
pub fn enumerate_plane_partitions(shape: &SkewShape, max_volume: u32) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    shape.poset.for_each_monotone(max_volume, |h| {
        out.push(PlanePartition {
            shape: shape.clone(),
            heights: h.to_vec(),
        })
    });
    out
}

/// Brute-force counting series of plane partitions on `shape`.
pub fn brute_force_series(shape: &SkewShape, degree: usize) -> TruncatedIntSeries {
    let counts = shape.poset.monotone_counts(degree as u32);
    TruncatedIntSeries::from_coeffs(counts, degree)
}

/// `prod_{i <= m, j <= n} 1/(1 - x^{i+j-1})`; `None` for both sides gives
/// the series of all plane partitions.
pub fn macmahon_series(m: Option<usize>, n: Option<usize>, degree: usize) -> Result<TruncatedIntSeries> {
    match (m, n) {
        (Some(0), _) | (_, Some(0)) => invalid("MacMahon box sides must be at least 1"),
        (Some(m), Some(n)) => Ok(TruncatedIntSeries::geometric_product(
            (1..=m).flat_map(|i| (1..=n).map(move |j| i + j - 1)),
            degree,
        )),
        (None, None) => Ok(TruncatedIntSeries::geometric_product(
            (1..=degree).flat_map(|l| std::iter::repeat_n(l, l)),
            degree,
        )),
        _ => invalid("MacMahon series needs both sides finite or both infinite"),
    }
}

/// Hook length of every site of `B \ A`: one plus the cells of the shape
/// to the left in the same row and above in the same column.
pub fn hook_lengths(outer: &Diagram, inner: &Diagram) -> Result<Vec<usize>> {
    let shape = SkewShape::new(outer.clone(), inner.clone())?;
    Ok(shape_hooks(&shape))
}

fn shape_hooks(shape: &SkewShape) -> Vec<usize> {
    let labels = shape.poset.labels();
    labels
        .iter()
        .map(|b| {
            let (i, j) = (b[0], b[1]);
            let left = (0..j).filter(|&jj| shape.inner.row(i) <= jj).count();
            let up = (0..i)
                .filter(|&ii| shape.inner.row(ii) <= j && j < shape.outer.row(ii))
                .count();
            left + up + 1
        })
        .collect()
}

/// `prod_b 1/(1 - x^{h(b)})` over the hook lengths.
pub fn skew_series(outer: &Diagram, inner: &Diagram, degree: usize) -> Result<TruncatedIntSeries> {
    Ok(TruncatedIntSeries::geometric_product(
        hook_lengths(outer, inner)?,
        degree,
    ))
}

/// Exact quotient `prod_{l=1}^{|B\A|} (1 - x^l) / prod_b (1 - x^{h(b)})`.
///
/// A nonzero remainder contradicts the hook product formula; this happens
/// when `B` is not a rectangle.
pub fn pedestal_polynomial(outer: &Diagram, inner: &Diagram) -> Result<Polynomial> {
    let shape = SkewShape::new(outer.clone(), inner.clone())?;
    let hooks = shape_hooks(&shape);
    let numerator = Polynomial::one_minus_x_product(1..=shape.size());
    let denominator = Polynomial::one_minus_x_product(hooks.iter().copied());
    let (q, r) = numerator.div_rem(&denominator)?;
    if !r.is_zero() {
        return Err(Error::Contradiction(format!(
            "hook product does not divide prod (1 - x^l) for B = {:?}, A = {:?}; remainder {r}",
            outer.rows(),
            inner.rows()
        )));
    }
    if !q.has_nonnegative_coeffs() {
        return Err(Error::Contradiction(format!(
            "pedestal polynomial {q} has a negative coefficient"
        )));
    }
    Ok(q)
}

/// Pedestal polynomial summed over allowed orderings directly.
pub fn pedestal_polynomial_by_orderings(poset: &Poset) -> Polynomial {
    Polynomial::new(
        poset
            .pedestal_volume_counts()
            .into_iter()
            .map(BigInt::from)
            .collect(),
    )
}

/// Factorized series `g_P(x) prod_{l <= |B\A|} 1/(1 - x^l)`.
pub fn factorized_series(outer: &Diagram, inner: &Diagram, degree: usize) -> Result<TruncatedIntSeries> {
    let poly = pedestal_polynomial(outer, inner)?;
    let size = outer.size() - inner.size();
    if size == 0 {
        return Ok(poly.to_series(degree));
    }
    Ok(poly.to_series(degree).mul(&bounded_parts_series(size, degree)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[usize]) -> Diagram {
        Diagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn flatten_example() {
        let s = PlanePartition::from_rows(&[vec![2, 1], vec![1, 0]]).unwrap();
        assert_eq!(flatten(&s).parts(), &[2, 1, 1]);
        let zero = PlanePartition::zero(SkewShape::rectangle(2, 2));
        assert!(flatten(&zero).is_empty());
    }

    #[test]
    fn reference_orderings() {
        let sq = SkewShape::rectangle(2, 2);
        let ord = reference_ordering(&sq).unwrap();
        let cells: Vec<&[usize]> = ord.sites.iter().map(|&s| sq.poset().labels()[s].as_slice()).collect();
        assert_eq!(cells, vec![&[0, 0][..], &[0, 1], &[1, 0], &[1, 1]]);
        let row = SkewShape::rectangle(1, 3);
        let ord = reference_ordering(&row).unwrap();
        let cells: Vec<&[usize]> = ord.sites.iter().map(|&s| row.poset().labels()[s].as_slice()).collect();
        assert_eq!(cells, vec![&[0, 0][..], &[0, 1], &[0, 2]]);
        assert!(Diagram::new(vec![1, 2]).is_err());
    }

    #[test]
    fn hooks() {
        let mut h = hook_lengths(&d(&[2, 2]), &Diagram::empty()).unwrap();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 2, 3]);
        assert_eq!(hook_lengths(&d(&[1]), &Diagram::empty()).unwrap(), vec![1]);
        let mut h3 = hook_lengths(&d(&[3, 3, 3]), &Diagram::empty()).unwrap();
        h3.sort_unstable();
        assert_eq!(h3, vec![1, 2, 2, 3, 3, 3, 4, 4, 5]);
    }

    #[test]
    fn two_by_two_pedestal_polynomial() {
        let p = pedestal_polynomial(&d(&[2, 2]), &Diagram::empty()).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[1, 0, 1]));
        assert_eq!(p.eval_at_one(), BigInt::from(2));
        assert_eq!(pedestal_polynomial(&d(&[1]), &Diagram::empty()).unwrap(), Polynomial::one());
    }

    #[test]
    fn non_rectangular_outer_shape_contradicts_hook_product() {
        // straight shape (2,1): 3 plane partitions of volume 3 exist, but
        // the hook product predicts a different count
        let shape = SkewShape::new(d(&[2, 1]), Diagram::empty()).unwrap();
        assert_eq!(brute_force_series(&shape, 3).coeff(3), &BigInt::from(4));
        let hooked = skew_series(&d(&[2, 1]), &Diagram::empty(), 3).unwrap();
        assert_eq!(hooked.coeff(3), &BigInt::from(3));
        assert!(matches!(
            pedestal_polynomial(&d(&[2, 1]), &Diagram::empty()),
            Err(Error::Contradiction(_))
        ));
    }

    #[test]
    fn macmahon_examples() {
        let m11 = macmahon_series(Some(1), Some(1), 6).unwrap();
        assert!(m11.coeffs().iter().all(|c| *c == BigInt::from(1)));
        let g3 = macmahon_series(None, None, 3).unwrap();
        let want: Vec<BigInt> = [1, 1, 3, 6].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(g3.coeffs(), want.as_slice());
        // brute force over a 3x3 board sees every plane partition of
        // volume <= 3
        let bf = brute_force_series(&SkewShape::rectangle(3, 3), 3);
        assert_eq!(bf, g3);
        let m22 = macmahon_series(Some(2), Some(2), 16).unwrap();
        assert_eq!(m22, brute_force_series(&SkewShape::rectangle(2, 2), 16));
    }

    #[test]
    fn skew_examples() {
        let l_shape = skew_series(&d(&[2, 2]), &d(&[1]), 10).unwrap();
        let shape = SkewShape::new(d(&[2, 2]), d(&[1])).unwrap();
        assert_eq!(l_shape, brute_force_series(&shape, 10));
        let full = skew_series(&d(&[2, 2]), &d(&[2, 2]), 5).unwrap();
        assert_eq!(full, TruncatedIntSeries::one(5));
    }

    #[test]
    fn orderings_may_coincide() {
        let a = PlanePartition::from_rows(&[vec![2, 1], vec![1, 0]]).unwrap();
        let b = PlanePartition::from_rows(&[vec![3, 1], vec![1, 0]]).unwrap();
        assert_eq!(ordering_from_skyscraper(&a), ordering_from_skyscraper(&b));
    }
}
