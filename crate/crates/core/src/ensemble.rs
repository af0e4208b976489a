//! Grand-canonical ensembles of independent geometric particles for Young
//! diagrams and plane partitions, fugacity calibration, exact canonical
//! conditioning and the limit-shape experiment.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::{vershik_kerov_curve, vk_window, MonotoneGraph};
use crate::error::{invalid, Result};
use crate::geometry::{clip_polyline_to_box, hausdorff, Vec2};
use crate::partition::{enumerate_partitions, scaled_profile, Partition};
use crate::series::euler_series;

/// Relative accuracy of the truncated expected volume.
pub const CUTOFF_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Particles `zeta_l`, weight exponent `l`.
    Young,
    /// Particles `zeta_ij`, weight exponent `i + j - 1`.
    Plane,
}

impl Model {
    /// Number of particles sharing the weight exponent `l`.
    fn multiplicity(self, l: usize) -> f64 {
        match self {
            Model::Young => 1.0,
            Model::Plane => l as f64,
        }
    }
}

impl std::str::FromStr for Model {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "young" => Ok(Model::Young),
            "plane" => Ok(Model::Plane),
            other => invalid(format!("unknown model {other:?} (expected young or plane)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrandCanonicalSpec {
    pub model: Model,
    pub fugacity: f64,
    /// Largest weight exponent carried by a particle.
    pub l_max: usize,
    pub seed: u64,
}

impl GrandCanonicalSpec {
    pub fn new(model: Model, fugacity: f64, seed: u64) -> Result<Self> {
        let t = rate(fugacity)?;
        Ok(Self {
            model,
            fugacity,
            l_max: cutoff(model, t),
            seed,
        })
    }

    /// Independent generator for sample number `index`.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

fn rate(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return invalid(format!("fugacity {x} must lie in (0, 1)"));
    }
    Ok(-x.ln())
}

/// `l x^l / (1 - x^l)` with `x = e^{-t}`.
fn mean_term(l: usize, t: f64) -> f64 {
    let lt = l as f64 * t;
    l as f64 * (-lt).exp() / -(-lt).exp_m1()
}

fn volume_sum(model: Model, t: f64, l_max: usize) -> f64 {
    (1..=l_max)
        .map(|l| model.multiplicity(l) * mean_term(l, t))
        .sum()
}

/// Index where the remaining terms are below machine precision.
fn full_length(model: Model, t: f64) -> usize {
    let mut sum = 0.0;
    let mut l = 1;
    loop {
        let term = model.multiplicity(l) * mean_term(l, t);
        sum += term;
        if (l as f64) * t > 1.0 && term < 1e-18 * sum {
            return l;
        }
        l += 1;
    }
}

fn cutoff(model: Model, t: f64) -> usize {
    let full = volume_sum(model, t, full_length(model, t));
    let mut sum = 0.0;
    let mut l = 0;
    while sum < (1.0 - CUTOFF_TOLERANCE) * full {
        l += 1;
        sum += model.multiplicity(l) * mean_term(l, t);
    }
    l.max(1)
}

/// `E[vol]` under the grand-canonical measure with fugacity `x`.
pub fn expected_volume(model: Model, x: f64) -> Result<f64> {
    let t = rate(x)?;
    Ok(volume_sum(model, t, full_length(model, t)))
}

/// `E[vol]` with particles up to exponent `l_max` only.
pub fn expected_volume_truncated(model: Model, x: f64, l_max: usize) -> Result<f64> {
    Ok(volume_sum(model, rate(x)?, l_max))
}

/// `Var[vol] = sum l^2 x^l / (1 - x^l)^2` over all particles.
pub fn volume_variance(model: Model, x: f64) -> Result<f64> {
    let t = rate(x)?;
    Ok((1..=full_length(model, t))
        .map(|l| {
            let lt = l as f64 * t;
            let q = (-lt).exp();
            let d = -(-lt).exp_m1();
            model.multiplicity(l) * (l * l) as f64 * q / (d * d)
        })
        .sum())
}

/// The fugacity `x(N)` with `E[vol] = N`, by bisection on `t = -ln x`.
pub fn solve_fugacity(model: Model, n: f64) -> Result<f64> {
    if !(n >= 1.0) || !n.is_finite() {
        return invalid("target volume must be at least 1");
    }
    let e = |t: f64| volume_sum(model, t, full_length(model, t));
    let (mut lo, mut hi) = (1.0_f64, 1.0_f64);
    while e(hi) > n {
        hi *= 2.0;
    }
    while e(lo) < n {
        lo /= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if e(mid) > n {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= 1e-15 * hi {
            break;
        }
    }
    Ok((-0.5 * (lo + hi)).exp())
}

/// Inversion draw with `P(k) = (1 - x^l) x^{lk}`.
fn geometric<R: Rng + ?Sized>(rng: &mut R, l: usize, t: f64) -> u32 {
    let u: f64 = 1.0 - rng.random::<f64>();
    let k = (u.ln() / (-(l as f64) * t)).floor();
    if k >= u32::MAX as f64 {
        u32::MAX
    } else {
        k as u32
    }
}

/// Particles `zeta_1..zeta_{l_max}` of the Young ensemble.
pub fn sample_young_particles<R: Rng + ?Sized>(spec: &GrandCanonicalSpec, rng: &mut R) -> Vec<u32> {
    let t = -spec.fugacity.ln();
    (1..=spec.l_max).map(|l| geometric(rng, l, t)).collect()
}

/// The diagram with `zeta_l` columns of height `l`.
pub fn sample_young<R: Rng + ?Sized>(spec: &GrandCanonicalSpec, rng: &mut R) -> Partition {
    Partition::from_multiplicities(&sample_young_particles(spec, rng)).conjugate()
}

/// Raw particles of the plane-partition ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneParticles {
    /// `zeta[i][j]` for the particle at `(i + 1, j + 1)`, `i + j + 1 <= l_max`.
    pub zeta: Vec<Vec<u32>>,
    pub volume: u64,
}

pub fn sample_plane_partition<R: Rng + ?Sized>(spec: &GrandCanonicalSpec, rng: &mut R) -> PlaneParticles {
    let t = -spec.fugacity.ln();
    let mut volume = 0u64;
    let zeta = (0..spec.l_max)
        .map(|i| {
            (0..spec.l_max - i)
                .map(|j| {
                    let l = i + j + 1;
                    let z = geometric(rng, l, t);
                    volume += l as u64 * z as u64;
                    z
                })
                .collect()
        })
        .collect();
    PlaneParticles { zeta, volume }
}

/// `P(vol = N)` for `N = 0..=n_max`: `count(N) x^N prod (1 - x^l)^{m_l}`.
pub fn volume_law(model: Model, x: f64, n_max: usize) -> Result<Vec<f64>> {
    let t = rate(x)?;
    let counts = match model {
        Model::Young => euler_series(n_max),
        Model::Plane => crate::skyscraper::macmahon_series(None, None, n_max)?,
    };
    let ln_norm: f64 = (1..=full_length(model, t))
        .map(|l| model.multiplicity(l) * (-(-(l as f64) * t).exp_m1()).ln())
        .sum();
    Ok((0..=n_max)
        .map(|n| {
            let c = counts.coeff(n).to_f64().unwrap_or(f64::INFINITY);
            c * (ln_norm - n as f64 * t).exp()
        })
        .collect())
}

/// `P(vol = N) / P(vol = 0)` by convolving the exact particle laws.
pub fn particle_volume_ratios(model: Model, x: &BigRational, n_max: usize) -> Vec<BigRational> {
    let mut dist = vec![BigRational::zero(); n_max + 1];
    dist[0] = BigRational::one();
    for l in 1..=n_max {
        let copies = match model {
            Model::Young => 1,
            Model::Plane => l,
        };
        let step = num_traits::pow(x.clone(), l);
        for _ in 0..copies {
            // multiply by sum_k (x^l)^k
            for n in l..=n_max {
                let carry = dist[n - l].clone() * &step;
                dist[n] += carry;
            }
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub n: usize,
    pub diagrams: Vec<Partition>,
    /// One row per fugacity: `P_x(Y | vol = N)` for each diagram.
    pub conditionals: Vec<(BigRational, Vec<BigRational>)>,
    pub expected: BigRational,
}

impl UniformityReport {
    pub fn uniform(&self) -> bool {
        self.conditionals
            .iter()
            .all(|(_, row)| row.iter().all(|p| *p == self.expected))
    }
}

/// Exact conditional law of the diagram given its volume.
pub fn canonical_uniformity_check(n: usize, fugacities: &[BigRational]) -> Result<UniformityReport> {
    if n > 10 {
        return invalid("exact uniformity check is limited to N <= 10");
    }
    let diagrams = enumerate_partitions(n, None, false, false)?;
    let count = euler_series(n).coeff(n).clone();
    let mut conditionals = Vec::new();
    for x in fugacities {
        if *x <= BigRational::zero() || *x >= BigRational::one() {
            return invalid("fugacity must lie in (0, 1)");
        }
        // factors with l > N are common to every diagram of volume N
        let weights: Vec<BigRational> = diagrams
            .iter()
            .map(|y| {
                let r = y.conjugate().multiplicities();
                (1..=n.max(1)).fold(BigRational::one(), |acc, l| {
                    let xl = num_traits::pow(x.clone(), l);
                    let zeta = r.get(l - 1).copied().unwrap_or(0) as usize;
                    acc * (BigRational::one() - &xl) * num_traits::pow(xl, zeta)
                })
            })
            .collect();
        let total = weights
            .iter()
            .fold(BigRational::zero(), |acc, w| acc + w);
        conditionals.push((x.clone(), weights.into_iter().map(|w| w / &total).collect()));
    }
    Ok(UniformityReport {
        n,
        diagrams,
        conditionals,
        expected: BigRational::new(BigInt::one(), count),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitShapeStats {
    pub n: usize,
    pub fugacity: f64,
    pub window: (f64, f64),
    pub drawn: usize,
    pub accepted: usize,
    pub distances: Vec<f64>,
    pub diagonal_points: Vec<f64>,
    pub median: f64,
    pub mean: f64,
    pub q10: f64,
    pub q90: f64,
    pub warnings: Vec<String>,
    /// Scaled profile boundaries of the accepted samples.
    pub profiles: Vec<Vec<Vec2>>,
}

/// Polyline from `(0, w)` down the `y` axis, along the curve and out to
/// `(w, 0)`.
fn close_in_window(curve: &[Vec2], w: f64) -> Vec<Vec2> {
    let mut pts = vec![Vec2::new(0.0, w)];
    pts.extend(clip_polyline_to_box(curve, w, w));
    pts.push(Vec2::new(w, 0.0));
    pts
}

/// Hausdorff distance of a scaled profile to the limit shape, both closed
/// by the axes inside `[0, W]^2`.
pub fn profile_distance(profile: &[Vec2], vk: &[Vec2], w: f64) -> f64 {
    hausdorff(&close_in_window(profile, w), vk, 1e-3)
}

/// The limit-shape polyline used by [`profile_distance`].
pub fn limit_shape_reference() -> Vec<Vec2> {
    close_in_window(&vershik_kerov_curve(4000), vk_window())
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
    } else {
        sorted[i]
    }
}

/// Samples diagrams at `x(N)`, keeps volumes in `[0.9 N, 1.1 N]`, rescales
/// each by `1/sqrt(vol)` and measures its distance to the limit shape.
pub fn limit_shape_experiment(n: usize, samples: usize, seed: u64) -> Result<LimitShapeStats> {
    if n < 400 {
        return invalid("limit-shape experiment needs N >= 400");
    }
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let x = solve_fugacity(Model::Young, n as f64)?;
    let spec = GrandCanonicalSpec::new(Model::Young, x, seed)?;
    let w = vk_window();
    let vk = limit_shape_reference();
    let mut half_width = 0.1;
    let mut warnings = Vec::new();
    let mut drawn = 0usize;
    let mut accepted = Vec::new();
    let mut batch_drawn = 0usize;
    let mut batch_accepted = 0usize;
    while accepted.len() < samples {
        let mut rng = spec.rng(drawn as u64);
        drawn += 1;
        batch_drawn += 1;
        let p = sample_young(&spec, &mut rng);
        let vol = p.volume() as f64;
        if (vol - n as f64).abs() <= half_width * n as f64 && vol > 0.0 {
            accepted.push(p);
            batch_accepted += 1;
        }
        if batch_drawn >= 1000 && batch_accepted * 100 < batch_drawn {
            warnings.push(format!(
                "acceptance rate {}/{} below 1% at window +-{:.0}%; widening",
                batch_accepted,
                batch_drawn,
                half_width * 100.0
            ));
            half_width *= 2.0;
            batch_drawn = 0;
            batch_accepted = 0;
        }
    }
    let mut distances = Vec::with_capacity(samples);
    let mut diagonal_points = Vec::with_capacity(samples);
    let mut profiles = Vec::with_capacity(samples);
    for p in &accepted {
        let prof = scaled_profile(p, p.volume() as f64)?;
        distances.push(profile_distance(&prof, &vk, w));
        if let Some(d) = MonotoneGraph::from_curve(&prof, f64::INFINITY)?.diagonal_point() {
            diagonal_points.push(d);
        }
        profiles.push(prof);
    }
    let mut sorted = distances.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(LimitShapeStats {
        n,
        fugacity: x,
        window: ((1.0 - half_width) * n as f64, (1.0 + half_width) * n as f64),
        drawn,
        accepted: accepted.len(),
        median: quantile(&sorted, 0.5),
        mean: distances.iter().sum::<f64>() / samples as f64,
        q10: quantile(&sorted, 0.1),
        q90: quantile(&sorted, 0.9),
        distances,
        diagonal_points,
        warnings,
        profiles,
    })
}
