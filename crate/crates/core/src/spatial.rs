//! Spatial partitions: monotone 3D arrays in an `m x n x k` box.
//!
//! Counting uses a transfer over 2D layers taken across the largest side.
//! With `f_1(L) = x^{|L|}` and `f_{t+1}(L') = x^{|L'|} sum_{L >= L'} f_t(L)`,
//! the series is `sum_L f_c(L)`. The dominance sums run as one suffix sum
//! per layer cell over the monotone layers of bounded volume.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::poset::Poset;
use crate::series::{Polynomial, TruncatedIntSeries};

/// Largest box volume `m n k` accepted without an override.
pub const SPATIAL_GUARD: usize = 12;

/// Trailing zero coefficients demanded past the pedestal degree bound.
pub const CERTIFY_ZEROS: usize = 8;

/// Heights `n_{ijl}` non-increasing along each of the three axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialPartition {
    dims: [usize; 3],
    heights: Vec<u32>,
}

impl SpatialPartition {
    /// `heights` in row-major order `(i, j, l)`.
    pub fn new(dims: [usize; 3], heights: Vec<u32>) -> Result<Self> {
        if heights.len() != dims.iter().product::<usize>() {
            return invalid("height array does not match the box");
        }
        let s = Self { dims, heights };
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for l in 0..dims[2] {
                    let h = s.at(i, j, l);
                    if (i + 1 < dims[0] && s.at(i + 1, j, l) > h)
                        || (j + 1 < dims[1] && s.at(i, j + 1, l) > h)
                        || (l + 1 < dims[2] && s.at(i, j, l + 1) > h)
                    {
                        return invalid(format!("heights increase at ({i}, {j}, {l})"));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn at(&self, i: usize, j: usize, l: usize) -> u32 {
        self.heights[(i * self.dims[1] + j) * self.dims[2] + l]
    }

    pub fn volume(&self) -> u64 {
        self.heights.iter().map(|&h| h as u64).sum()
    }
}

fn check_box(m: usize, n: usize, k: usize, override_guard: bool) -> Result<usize> {
    if m == 0 || n == 0 || k == 0 {
        return invalid("box sides must be at least 1");
    }
    let size = m * n * k;
    if size > SPATIAL_GUARD && !override_guard {
        return Err(Error::GuardExceeded {
            what: "spatial box volume m*n*k",
            value: size,
            limit: SPATIAL_GUARD,
        });
    }
    Ok(size)
}

/// Polynomial truncated at `degree`, stored from degree `offset` on.
#[derive(Clone)]
struct Shifted {
    offset: usize,
    coeffs: Vec<u128>,
}

impl Shifted {
    fn monomial(offset: usize, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1 - offset];
        coeffs[0] = 1;
        Self { offset, coeffs }
    }

    fn add_assign(&mut self, other: &Shifted) -> Result<()> {
        let shift = other.offset - self.offset;
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[k + shift];
            *slot = slot
                .checked_add(*c)
                .ok_or_else(|| Error::InvalidParameter("coefficient overflow".into()))?;
        }
        Ok(())
    }
}

/// Counting series of spatial partitions in the `m x n x k` box.
pub fn spatial_series(
    m: usize,
    n: usize,
    k: usize,
    degree: usize,
    override_guard: bool,
) -> Result<TruncatedIntSeries> {
    check_box(m, n, k, override_guard)?;
    let mut dims = [m, n, k];
    dims.sort_unstable();
    let [a, b, layers] = dims;
    let mut labels: Vec<Vec<usize>> = (0..a)
        .flat_map(|i| (0..b).map(move |j| vec![i, j]))
        .collect();
    labels.sort_by_key(|c| (c[0] + c[1], c[0]));
    let layer = Poset::from_grid_labels(labels);
    let cells = layer.len();

    let mut states: Vec<Vec<u32>> = Vec::new();
    layer.for_each_monotone(degree as u32, |h| states.push(h.to_vec()));
    let volume: Vec<usize> = states
        .iter()
        .map(|s| s.iter().sum::<u32>() as usize)
        .collect();
    let mut order: Vec<usize> = (0..states.len()).collect();
    order.sort_by_key(|&s| std::cmp::Reverse(volume[s]));
    let index: HashMap<Vec<u32>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    // neighbour[c][s] = state with cell c raised by one
    let neighbour: Vec<Vec<Option<usize>>> = (0..cells)
        .map(|c| {
            states
                .iter()
                .map(|s| {
                    let mut up = s.clone();
                    up[c] += 1;
                    index.get(&up).copied()
                })
                .collect()
        })
        .collect();

    let mut f: Vec<Option<Shifted>> = volume
        .iter()
        .map(|&v| Some(Shifted::monomial(v, degree)))
        .collect();
    for t in 1..=layers {
        let live = |s: usize| t * volume[s] <= degree;
        // dominance sums, one suffix pass per cell, last cell innermost
        for c in (0..cells).rev() {
            for &s in &order {
                if !live(s) {
                    continue;
                }
                if let Some(up) = neighbour[c][s].filter(|&u| live(u)) {
                    let above = f[up].clone().expect("live state");
                    f[s].as_mut().expect("live state").add_assign(&above)?;
                }
            }
        }
        if t == layers {
            let zero = index[&vec![0u32; cells]];
            let g = f[zero].take().expect("zero state is live");
            return Ok(TruncatedIntSeries::from_coeffs(
                g.coeffs.into_iter().map(BigInt::from),
                degree,
            ));
        }
        for s in 0..states.len() {
            let v = volume[s];
            if (t + 1) * v > degree {
                f[s] = None;
                continue;
            }
            let g = f[s].take().expect("live state");
            let shift = (t + 1) * v - g.offset;
            f[s] = Some(Shifted {
                offset: (t + 1) * v,
                coeffs: g.coeffs[..g.coeffs.len() - shift].to_vec(),
            });
        }
    }
    unreachable!("loop returns on the last layer")
}

/// `g_4 * prod_{l <= mnk} (1 - x^l)`, certified to terminate.
///
/// Pedestal volumes never exceed `C(mnk, 2)`, so the product is computed
/// to that degree plus [`CERTIFY_ZEROS`] coefficients that must vanish.
pub fn spatial_pedestal_polynomial(m: usize, n: usize, k: usize, override_guard: bool) -> Result<Polynomial> {
    let size = check_box(m, n, k, override_guard)?;
    let bound = size * (size - 1) / 2;
    let degree = bound + CERTIFY_ZEROS;
    let mut s = spatial_series(m, n, k, degree, override_guard)?;
    for l in 1..=size {
        s.mul_one_minus(l);
    }
    if s.coeffs()[bound + 1..].iter().any(|c| *c != BigInt::from(0)) {
        return Err(Error::Contradiction(format!(
            "pedestal series of the {m}x{n}x{k} box does not terminate by degree {bound}"
        )));
    }
    let poly = s.to_polynomial();
    if !poly.has_nonnegative_coeffs() {
        return Err(Error::Contradiction(format!(
            "pedestal polynomial {poly} has a negative coefficient"
        )));
    }
    Ok(poly)
}

/// Pedestal polynomial from pedestal volumes of all allowed orderings.
pub fn spatial_pedestal_polynomial_by_orderings(m: usize, n: usize, k: usize, override_guard: bool) -> Result<Polynomial> {
    check_box(m, n, k, override_guard)?;
    Ok(Polynomial::new(
        Poset::box3(m, n, k)
            .pedestal_volume_counts()
            .into_iter()
            .map(BigInt::from)
            .collect(),
    ))
}

/// `prod 1/(1 - x^{i+j+l-2})` over the box.
pub fn conjectured_series(m: usize, n: usize, k: usize, degree: usize) -> TruncatedIntSeries {
    TruncatedIntSeries::geometric_product(
        (1..=m).flat_map(|i| (1..=n).flat_map(move |j| (1..=k).map(move |l| i + j + l - 2))),
        degree,
    )
}

/// Evidence that the product formula fails in the `m x n x k` box.
#[derive(Debug, Clone, PartialEq)]
pub struct RefutationReport {
    pub dims: [usize; 3],
    pub pedestal: Polynomial,
    /// `prod_{l <= mnk} (1 - x^l) mod pedestal`.
    pub remainder: Polynomial,
    /// First degree where the conjectured product and the true series
    /// differ, with (conjectured, true) coefficients.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
}

impl RefutationReport {
    pub fn refuted(&self) -> bool {
        !self.remainder.is_zero() && self.first_mismatch.is_some()
    }
}

pub fn macmahon_4d_refutation(m: usize, n: usize, k: usize) -> Result<RefutationReport> {
    let size = check_box(m, n, k, false)?;
    let pedestal = spatial_pedestal_polynomial(m, n, k, false)?;
    let (_, remainder) = Polynomial::one_minus_x_product(1..=size).div_rem(&pedestal)?;
    let degree = 40;
    let truth = spatial_series(m, n, k, degree, false)?;
    let guess = conjectured_series(m, n, k, degree);
    let first_mismatch = (0..=degree)
        .find(|&d| truth.coeff(d) != guess.coeff(d))
        .map(|d| (d, guess.coeff(d).clone(), truth.coeff(d).clone()));
    Ok(RefutationReport {
        dims: [m, n, k],
        pedestal,
        remainder,
        first_mismatch,
    })
}
