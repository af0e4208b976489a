//! The maximizing dual of the Wulff problem over monotone graphs in the
//! positive quadrant, the staircase entropy, and the Vershik-Kerov curve.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::geometry::{clip_halfplane, clip_polyline_to_box, signed_area, Vec2};

type Evaluator = Arc<dyn Fn(Vec2) -> f64 + Send + Sync>;

/// Nonnegative function on the quarter circle `{n : n_1, n_2 >= 0, |n| = 1}`.
#[derive(Clone)]
pub struct OctantField {
    name: String,
    decays: bool,
    scale: f64,
    f: Evaluator,
}

impl fmt::Debug for OctantField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OctantField")
            .field("name", &self.name)
            .field("decays", &self.decays)
            .field("scale", &self.scale)
            .finish()
    }
}

impl OctantField {
    pub fn new(name: &str, decays: bool, f: impl Fn(Vec2) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            decays,
            scale: 1.0,
            f: Arc::new(f),
        }
    }

    /// The staircase entropy density [`entropy_density`].
    pub fn staircase_entropy() -> Self {
        Self::new("staircase-entropy", true, entropy_density)
    }

    pub fn zero() -> Self {
        Self::new("zero", true, |_| 0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new("constant", c == 0.0, move |_| c)
    }

    /// Table of `(angle, value)` over `[0, pi/2]`, linearly interpolated.
    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        let mut table = samples.to_vec();
        if table.len() < 2 {
            return invalid("tabulated field needs at least two samples");
        }
        if table
            .iter()
            .any(|&(a, v)| !(-1e-12..=FRAC_PI_2 + 1e-12).contains(&a) || !(v >= 0.0))
        {
            return invalid("table angles must lie in [0, pi/2] with nonnegative values");
        }
        table.sort_by(|a, b| a.0.total_cmp(&b.0));
        let decays = table[0].1 == 0.0 && table[table.len() - 1].1 == 0.0;
        Ok(Self::new("tabulated", decays, move |n| {
            let a = n.y.atan2(n.x).clamp(table[0].0, table[table.len() - 1].0);
            let k = table.partition_point(|t| t.0 <= a).clamp(1, table.len() - 1);
            let (lo, hi) = (table[k - 1], table[k]);
            if hi.0 == lo.0 {
                return lo.1;
            }
            lo.1 + (a - lo.0) / (hi.0 - lo.0) * (hi.1 - lo.1)
        }))
    }

    /// Named built-in: `staircase-entropy`, `zero` or `product` (`n_1 n_2`).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "staircase-entropy" | "entropy" => Ok(Self::staircase_entropy()),
            "zero" => Ok(Self::zero()),
            "product" => Ok(Self::new("product", true, |n| n.x * n.y)),
            _ => invalid(format!(
                "unknown octant field '{name}' (expected staircase-entropy, zero or product)"
            )),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let mut out = self.clone();
        out.scale *= lambda;
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decays(&self) -> bool {
        self.decays
    }

    pub fn eval(&self, n: Vec2) -> f64 {
        (self.f)(n) * self.scale
    }
}

/// `-(n_1 ln(n_1/(n_1+n_2)) + n_2 ln(n_2/(n_1+n_2)))` with `0 ln 0 = 0`.
pub fn entropy_density(n: Vec2) -> f64 {
    let (a, b) = (n.x.max(0.0), n.y.max(0.0));
    let s = a + b;
    if s == 0.0 {
        return 0.0;
    }
    let (p, q) = (a / s, b / s);
    let plogp = |p: f64, q: f64| {
        if p == 0.0 {
            0.0
        } else if p < 0.5 {
            // ln p directly, the partner via log1p for accuracy near 1
            p * p.ln()
        } else {
            p * (-q).ln_1p()
        }
    };
    -s * (plogp(p, q) + plogp(q, p))
}

/// `C((b1 - a1) + (a2 - b2), b1 - a1)`: monotone staircases from `A` down
/// and right to `B`.
pub fn staircase_count(a: (i64, i64), b: (i64, i64)) -> Result<BigUint> {
    if !(a.0 < b.0 && a.1 > b.1) {
        return invalid(format!(
            "staircase endpoints must satisfy a1 < b1 and a2 > b2, got {a:?}, {b:?}"
        ));
    }
    let right = (b.0 - a.0) as u64;
    let down = (a.1 - b.1) as u64;
    Ok(binomial(right + down, right))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural logarithm of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(staircase_count) / |B - A|`.
pub fn staircase_rate(a: (i64, i64), b: (i64, i64)) -> Result<f64> {
    let count = staircase_count(a, b)?;
    let len = ((b.0 - a.0) as f64).hypot((a.1 - b.1) as f64);
    Ok(ln_biguint(&count) / len)
}

/// Lattice displacement `(right, down)` of length about `length` whose
/// segment has outward normal close to `n`.
pub fn lattice_displacement(n: Vec2, length: f64) -> Result<(u64, u64)> {
    if !(n.x >= 0.0 && n.y >= 0.0) || n.norm() == 0.0 {
        return invalid("direction must lie in the closed positive quadrant");
    }
    let n = n.normalized();
    let right = (length * n.y).round() as u64;
    let down = (length * n.x).round() as u64;
    if right == 0 || down == 0 {
        return invalid("segment too short or too close to an axis for a lattice staircase");
    }
    Ok((right, down))
}

/// Transfer-matrix rate `ln(count)/|B - A|` of staircases confined to the
/// tube of half-width `1/(2 eps)` around the segment with normal `n` and
/// length about `length`. Returns `-inf` when no staircase fits.
pub fn constrained_staircase_rate(n: Vec2, eps: f64, length: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return invalid(format!("eps = {eps} must be positive"));
    }
    let (right, down) = lattice_displacement(n, length)?;
    let (a, b) = (right as i64, down as i64);
    let seg_len = (a as f64).hypot(b as f64);
    let half_width = 0.5 / eps;
    // after i right and j down steps the offset from the chord is
    // |i b - j a| / |B - A|
    let bound = half_width * seg_len;
    let steps = a + b;
    let mut row = vec![0.0f64; (a + 1) as usize];
    row[0] = 1.0;
    let mut log_scale = 0.0;
    for k in 1..=steps {
        let lo = (k - b).max(0);
        let hi = k.min(a);
        let mut next = vec![0.0f64; (a + 1) as usize];
        let mut peak = 0.0f64;
        for i in lo..=hi {
            let j = k - i;
            if ((i * b - j * a) as f64).abs() > bound {
                continue;
            }
            let mut v = 0.0;
            if i >= 1 {
                v += row[(i - 1) as usize];
            }
            if j >= 1 && i <= a {
                v += row[i as usize];
            }
            next[i as usize] = v;
            peak = peak.max(v);
        }
        if peak == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        for v in &mut next {
            *v /= peak;
        }
        log_scale += peak.ln();
        row = next;
    }
    let last = row[a as usize];
    if last == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((last.ln() + log_scale) / seg_len)
}

/// Unconstrained counterpart of [`constrained_staircase_rate`] on the same
/// lattice displacement.
pub fn unconstrained_staircase_rate(n: Vec2, length: f64) -> Result<f64> {
    let (right, down) = lattice_displacement(n, length)?;
    staircase_rate((0, down as i64), (right as i64, 0))
}

/// Non-increasing graph in the quadrant as a polyline from the `y` axis
/// (`x = 0`) to the `x` axis (`y = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneGraph {
    pub points: Vec<Vec2>,
    /// Box side used to truncate the graph, `inf` if untruncated.
    pub truncation: f64,
}

impl MonotoneGraph {
    /// Completes a monotone polyline to the axes.
    pub fn from_curve(curve: &[Vec2], truncation: f64) -> Result<Self> {
        if curve.is_empty() {
            return invalid("empty curve");
        }
        let mut points = Vec::with_capacity(curve.len() + 2);
        if curve[0].x > 0.0 {
            points.push(Vec2::new(0.0, curve[0].y));
        }
        points.extend_from_slice(curve);
        let last = *curve.last().unwrap();
        if last.y > 0.0 {
            points.push(Vec2::new(last.x, 0.0));
        }
        let g = Self { points, truncation };
        g.check_monotone()?;
        Ok(g)
    }

    fn check_monotone(&self) -> Result<()> {
        for w in self.points.windows(2) {
            if w[1].x < w[0].x - 1e-12 * (1.0 + w[0].x.abs())
                || w[1].y > w[0].y + 1e-12 * (1.0 + w[0].y.abs())
            {
                return Err(Error::ContractViolation(format!(
                    "graph is not monotone between {:?} and {:?}",
                    w[0], w[1]
                )));
            }
        }
        if self.points.iter().any(|p| p.x < -1e-12 || p.y < -1e-12) {
            return Err(Error::ContractViolation("graph leaves the quadrant".into()));
        }
        Ok(())
    }

    /// Area between the graph and the axes.
    pub fn volume(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].x - w[0].x) * 0.5 * (w[0].y + w[1].y))
            .sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            points: self.points.iter().map(|&p| p * s).collect(),
            truncation: self.truncation * s,
        }
    }

    /// Value of the graph at `x` (linear interpolation; the upper end of a
    /// vertical piece).
    pub fn value_at(&self, x: f64) -> f64 {
        let pts = &self.points;
        if x <= pts[0].x {
            return pts[0].y;
        }
        for w in pts.windows(2) {
            if x <= w[1].x {
                if w[1].x == w[0].x {
                    return w[0].y;
                }
                let t = (x - w[0].x) / (w[1].x - w[0].x);
                return w[0].y + t * (w[1].y - w[0].y);
            }
        }
        0.0
    }

    /// First crossing with the diagonal `x = y`.
    pub fn diagonal_point(&self) -> Option<f64> {
        for w in self.points.windows(2) {
            let (d0, d1) = (w[0].y - w[0].x, w[1].y - w[1].x);
            if d0 >= 0.0 && d1 <= 0.0 {
                if d0 == d1 {
                    return Some(w[0].x);
                }
                let t = d0 / (d0 - d1);
                return Some(w[0].x + t * (w[1].x - w[0].x));
            }
        }
        None
    }
}

/// `int eta(n_x) ds` over the graph, segment by segment.
pub fn dual_functional(g: &MonotoneGraph, eta: &OctantField) -> Result<f64> {
    let mut total = 0.0;
    for (k, w) in g.points.windows(2).enumerate() {
        let d = w[1] - w[0];
        let len = d.norm();
        if len == 0.0 {
            continue;
        }
        let n = Vec2::new(-d.y, d.x) * (1.0 / len);
        if n.x < -1e-12 || n.y < -1e-12 {
            return Err(Error::ContractViolation(format!(
                "segment {k} has normal ({:.3e}, {:.3e}) outside the quadrant",
                n.x, n.y
            )));
        }
        total += eta.eval(Vec2::new(n.x.max(0.0), n.y.max(0.0))) * len;
    }
    Ok(total)
}

/// Unnormalized quadrant direction `(t, 1 - t)` with `t = 1/(1 + e^{-u})`,
/// both components computed without cancellation.
fn logit_direction(u: f64) -> Vec2 {
    let (t, s) = if u < 0.0 {
        let e = u.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    } else {
        let e = (-u).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    };
    Vec2::new(t, s)
}

/// Logit range of the normal grid for the box `[0, r]^2`, relative to the
/// natural length scale of `eta`.
fn logit_extent(eta: &OctantField, r: f64) -> f64 {
    32.0 * r / truncation_radius(eta) + 12.0
}

/// Boundary of `{x : (x, n) >= eta(n)}` inside the box `[0, r]^2` as a
/// completed monotone graph, using the axis normals and `resolution`
/// normals on a logistic grid that resolves the exponential tails.
fn dual_boundary(eta: &OctantField, r: f64, resolution: usize) -> MonotoneGraph {
    let u_max = logit_extent(eta, r);
    let mut lines: Vec<(Vec2, f64)> = Vec::with_capacity(resolution + 2);
    let unit_line = |v: Vec2| {
        let len = v.norm();
        (v, len * eta.eval(v * (1.0 / len)))
    };
    lines.push(unit_line(Vec2::new(1.0, 0.0)));
    // angle increases from the x axis normal to the y axis normal, so u
    // runs from +u_max to -u_max
    for k in 0..resolution {
        let u = u_max - 2.0 * u_max * k as f64 / (resolution - 1) as f64;
        lines.push(unit_line(logit_direction(u)));
    }
    lines.push(unit_line(Vec2::new(0.0, 1.0)));
    lines.dedup_by(|b, a| a.0 == b.0);

    let meet = |l1: (Vec2, f64), l2: (Vec2, f64)| -> Vec2 {
        let det = l1.0.cross(l2.0);
        Vec2::new(
            (l1.1 * l2.0.y - l2.1 * l1.0.y) / det,
            (l1.0.x * l2.1 - l2.0.x * l1.1) / det,
        )
    };
    let mut stack: Vec<(Vec2, f64)> = Vec::new();
    for &line in &lines {
        while stack.len() >= 2 {
            let top = stack[stack.len() - 1];
            let p = meet(stack[stack.len() - 2], line);
            if p.dot(top.0) >= top.1 {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(line);
    }
    let far = 8.0 * r;
    let first = stack[0];
    let last = stack[stack.len() - 1];
    let mut chain = Vec::with_capacity(stack.len() + 1);
    // ray along the first line, going up
    let dir_first = Vec2::new(-first.0.y, first.0.x);
    let p0 = if stack.len() >= 2 { meet(stack[0], stack[1]) } else { Vec2::new(first.1, 0.0) };
    chain.push(p0 + dir_first.normalized() * far);
    for w in stack.windows(2) {
        chain.push(meet(w[0], w[1]));
    }
    let dir_last = Vec2::new(last.0.y, -last.0.x);
    let pl = *chain.last().unwrap();
    chain.push(pl + dir_last.normalized() * far);
    let inside = clip_polyline_to_box(&chain, r, r);
    let (mut x_run, mut y_run) = (0.0f64, r);
    let inside: Vec<Vec2> = inside
        .into_iter()
        .map(|p| {
            x_run = x_run.max(p.x.clamp(0.0, r));
            y_run = y_run.min(p.y.clamp(0.0, r));
            Vec2::new(x_run, y_run)
        })
        .collect();
    if inside.is_empty() {
        // the body misses the box: everything below the graph
        return MonotoneGraph {
            points: vec![Vec2::new(0.0, r), Vec2::new(r, r), Vec2::new(r, 0.0)],
            truncation: r,
        };
    }
    let mut points = Vec::with_capacity(inside.len() + 2);
    if inside[0].x > 0.0 {
        points.push(Vec2::new(0.0, inside[0].y));
    }
    points.extend(inside.iter().copied());
    let end = *inside.last().unwrap();
    if end.y > 0.0 {
        points.push(Vec2::new(end.x, 0.0));
    }
    MonotoneGraph {
        points,
        truncation: r,
    }
}

/// Truncated volume `r^2 - |K cap [0,r]^2|` by clipping the box directly; a
/// route independent of the envelope construction.
pub fn truncated_volume_by_clipping(eta: &OctantField, r: f64, normals: usize) -> f64 {
    let mut poly = vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(r, 0.0),
        Vec2::new(r, r),
        Vec2::new(0.0, r),
    ];
    let u_max = logit_extent(eta, r);
    let mut dirs = vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
    for k in 0..normals {
        dirs.push(logit_direction(-u_max + 2.0 * u_max * k as f64 / (normals - 1) as f64));
    }
    for v in dirs {
        let n = v.normalized();
        poly = clip_halfplane(&poly, -n, -eta.eval(n), 1e-13 * r);
        if poly.is_empty() {
            return r * r;
        }
    }
    r * r - signed_area(&poly)
}

pub const DEFAULT_DUAL_RESOLUTION: usize = 20_000;

fn truncation_radius(eta: &OctantField) -> f64 {
    let peak = (0..=256)
        .map(|k| eta.eval(Vec2::from_angle(FRAC_PI_2 * k as f64 / 256.0)))
        .fold(0.0, f64::max);
    if peak > 0.0 {
        32.0 * peak
    } else {
        1.0
    }
}

/// Boundary `G_eta` of `K^> = {x : (x, n) >= eta(n)}` as a monotone graph.
///
/// The volume is computed in the boxes of side `R` and `2R`; relative
/// growth above `1e-3` is reported as an infinite volume.
pub fn dual_body_graph(eta: &OctantField, resolution: usize) -> Result<MonotoneGraph> {
    if resolution < 16 {
        return invalid(format!("resolution {resolution} < 16"));
    }
    let r = truncation_radius(eta);
    let g = dual_boundary(eta, r, resolution);
    let g2 = dual_boundary(eta, 2.0 * r, resolution);
    let (v1, v2) = (g.volume(), g2.volume());
    if v2 > 0.0 && (v2 - v1) / v2 > 1e-3 {
        return Err(Error::InfiniteVolume(format!(
            "volume grows from {v1:.6} to {v2:.6} when the box side doubles from {r} to {}",
            2.0 * r
        )));
    }
    Ok(g)
}

/// `sqrt(2 / V_eta(G_eta)) G_eta`, the graph of unit volume maximizing
/// the dual functional.
pub fn maximizer(eta: &OctantField, resolution: usize) -> Result<MonotoneGraph> {
    let g = dual_body_graph(eta, resolution)?;
    let v = dual_functional(&g, eta)?;
    if !(v > 0.0) || g.volume() <= 0.0 {
        return invalid(format!(
            "{} yields a degenerate body (volume {}, functional {v})",
            eta.name(),
            g.volume()
        ));
    }
    Ok(g.scaled((2.0 / v).sqrt()))
}

/// `pi / sqrt(6)`.
pub fn vk_rate() -> f64 {
    PI / 6f64.sqrt()
}

/// Points of `exp(-c x) + exp(-c y) = 1` with `c = pi/sqrt(6)`, from
/// `y = x_max` down to `y = y_min`, on a logistic grid.
pub fn vershik_kerov_curve_until(samples: usize, y_min: f64) -> Vec<Vec2> {
    let c = vk_rate();
    // parametrize by s = exp(-c x), 1 - s = exp(-c y); y = y_min at s_min
    let s_min = -(-c * y_min).exp_m1();
    let u_min = (s_min / (1.0 - s_min)).ln();
    let samples = samples.max(2);
    (0..samples)
        .map(|k| {
            // s runs from 1 - s_min (top) to s_min (bottom)
            let u = -u_min + 2.0 * u_min * k as f64 / (samples - 1) as f64;
            let v = logit_direction(u);
            let (s, one_minus_s) = (v.x, v.y);
            Vec2::new(-s.ln() / c, -one_minus_s.ln() / c)
        })
        .collect()
}

/// The limit shape, clipped where `y` reaches `1e-6`.
pub fn vershik_kerov_curve(samples: usize) -> Vec<Vec2> {
    vershik_kerov_curve_until(samples, 1e-6)
}

/// Side of the square window `[0, W]^2` holding the clipped limit shape.
pub fn vk_window() -> f64 {
    let c = vk_rate();
    -(-(-c * 1e-6).exp_m1()).ln() / c
}

/// Points of `exp(-x) + exp(-y) = 1` down to `y = y_min`.
pub fn entropy_curve_until(samples: usize, y_min: f64) -> Vec<Vec2> {
    let c = vk_rate();
    vershik_kerov_curve_until(samples, y_min / c)
        .into_iter()
        .map(|p| p * c)
        .collect()
}

/// Two evaluations of `V_h(C_VK)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrConstant {
    /// The functional evaluated on the closed-form limit curve.
    pub direct: f64,
    /// `sqrt(2 V_h(G_h))` from the dual construction.
    pub via_dual: f64,
}

pub fn hr_constant() -> Result<HrConstant> {
    let eta = OctantField::staircase_entropy();
    let curve = vershik_kerov_curve_until(200_000, 1e-13);
    let g = MonotoneGraph::from_curve(&curve, f64::INFINITY)?;
    let direct = dual_functional(&g, &eta)?;
    let gh = dual_body_graph(&eta, DEFAULT_DUAL_RESOLUTION)?;
    let via_dual = (2.0 * dual_functional(&gh, &eta)?).sqrt();
    Ok(HrConstant { direct, via_dual })
}

/// `{x : (x, nu) >= eta'(nu)}` for the tangent derivative `eta'` at a
/// skyscraper facet, as a boundary curve inside a box of side
/// `32 max eta'`.
pub fn skyscraper_facet_curve(eta_prime: &OctantField, resolution: usize) -> Result<MonotoneGraph> {
    for k in 1..512 {
        let nu = Vec2::from_angle(FRAC_PI_2 * k as f64 / 512.0);
        let v = eta_prime.eval(nu);
        if !(v > 0.0) {
            return Err(Error::NoFacet(format!(
                "derivative {v} at angle {:.6} is not positive; the region degenerates \
                 to the quadrant and its boundary to the axes",
                nu.y.atan2(nu.x)
            )));
        }
    }
    if resolution < 16 {
        return invalid(format!("resolution {resolution} < 16"));
    }
    Ok(dual_boundary(eta_prime, truncation_radius(eta_prime), resolution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, SQRT_2};

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_density(Vec2::new(1.0, 0.0)), 0.0);
        let d = Vec2::new(1.0, 1.0).normalized();
        assert!((entropy_density(d) - SQRT_2 * LN_2).abs() < 1e-15);
        let direct = -(0.6 * (0.6f64 / 1.4).ln() + 0.8 * (0.8f64 / 1.4).ln());
        assert!((entropy_density(Vec2::new(0.6, 0.8)) - direct).abs() < 1e-15);
    }

    #[test]
    fn staircase_small_counts() {
        assert_eq!(staircase_count((0, 1), (1, 0)).unwrap(), BigUint::from(2u32));
        assert_eq!(staircase_count((0, 2), (2, 0)).unwrap(), BigUint::from(6u32));
        assert!(staircase_count((1, 1), (0, 0)).is_err());
        // ln C(400, 200) / (200 sqrt 2) sits 1.16% under sqrt(2) ln 2 at
        // this size; the gap is the Stirling correction ln(pi n)/2
        let r = staircase_rate((0, 200), (200, 0)).unwrap();
        let h = SQRT_2 * LN_2;
        let len = 200.0 * SQRT_2;
        let stirling = (400.0 * LN_2 - 0.5 * (PI * 200.0f64).ln()) / len;
        assert!((r - stirling).abs() < 1e-4);
        assert!((r / h - 1.0).abs() < 0.012);
        assert!((r - h).abs() <= 2.0 * len.ln() / len);
    }

    #[test]
    fn staircase_count_matches_path_enumeration() {
        fn paths(r: u32, d: u32) -> u64 {
            if r == 0 || d == 0 {
                1
            } else {
                paths(r - 1, d) + paths(r, d - 1)
            }
        }
        for r in 1..8 {
            for d in 1..8 {
                let c = staircase_count((0, d as i64), (r as i64, 0)).unwrap();
                assert_eq!(c, BigUint::from(paths(r, d)));
            }
        }
    }

    #[test]
    fn tube_rates() {
        let diag = Vec2::new(1.0, 1.0);
        let free = unconstrained_staircase_rate(diag, 200.0).unwrap();
        let wide = constrained_staircase_rate(diag, 1.0 / 400.0, 200.0).unwrap();
        assert!((free - wide).abs() < 1e-12);
        let narrow = constrained_staircase_rate(diag, 0.5, 200.0).unwrap();
        assert!(narrow < free);
        let mid = constrained_staircase_rate(diag, 0.1, 200.0).unwrap();
        assert!(narrow < mid && mid < free);
    }

    #[test]
    fn product_field_gives_astroid() {
        let eta = OctantField::builtin("product").unwrap();
        let g = dual_body_graph(&eta, 4000).unwrap();
        // envelope of x/sin + y/cos = 1 is the astroid x^(2/3) + y^(2/3) = 1
        assert!((g.volume() - 3.0 * PI / 32.0).abs() < 1e-5);
        let g2 = dual_body_graph(&eta, DEFAULT_DUAL_RESOLUTION).unwrap();
        assert!((g2.volume() - 3.0 * PI / 32.0).abs() < 1e-6);
    }

    #[test]
    fn zero_field_is_flat() {
        let g = dual_body_graph(&OctantField::zero(), 64).unwrap();
        assert_eq!(g.volume(), 0.0);
        assert_eq!(dual_functional(&g, &OctantField::zero()).unwrap(), 0.0);
        assert!(maximizer(&OctantField::zero(), 64).is_err());
    }

    #[test]
    fn constant_field_has_infinite_volume() {
        assert!(matches!(
            dual_body_graph(&OctantField::constant(0.5), 256),
            Err(Error::InfiniteVolume(_))
        ));
    }

    #[test]
    fn entropy_body_passes_through_ln2() {
        let g = dual_body_graph(&OctantField::staircase_entropy(), DEFAULT_DUAL_RESOLUTION)
            .unwrap();
        assert!((g.diagonal_point().unwrap() - LN_2).abs() < 1e-6);
        let v = dual_functional(&g, &OctantField::staircase_entropy()).unwrap();
        assert!((v - PI * PI / 3.0).abs() < 1e-4);
        assert!((v - 2.0 * g.volume()).abs() < 1e-4);
    }

    #[test]
    fn envelope_agrees_with_direct_clipping() {
        let eta = OctantField::staircase_entropy();
        let r = 8.0;
        let env = dual_boundary(&eta, r, 4000).volume();
        let clip = truncated_volume_by_clipping(&eta, r, 4000);
        assert!((env - clip).abs() < 1e-9, "{env} vs {clip}");
    }

    #[test]
    fn vk_curve_area_and_diagonal() {
        let curve = vershik_kerov_curve(20_000);
        let g = MonotoneGraph::from_curve(&curve, f64::INFINITY).unwrap();
        assert!((g.volume() - 1.0).abs() < 1e-4);
        let diag = 6f64.sqrt() * LN_2 / PI;
        assert!((g.diagonal_point().unwrap() - diag).abs() < 1e-7);
        assert!((diag - 0.54044).abs() < 1e-5);
        assert!(curve[0].y > 10.0);
    }

    #[test]
    fn hr_constant_two_routes() {
        let hr = hr_constant().unwrap();
        let exact = PI * (2.0f64 / 3.0).sqrt();
        assert!((hr.direct - exact).abs() < 1e-4, "{hr:?}");
        assert!((hr.via_dual - exact).abs() < 1e-4, "{hr:?}");
        assert!((hr.direct - hr.via_dual).abs() < 1e-6, "{hr:?}");
    }

    #[test]
    fn contract_violation_on_rising_segment() {
        let g = MonotoneGraph {
            points: vec![Vec2::new(0.0, 1.0), Vec2::new(1.0, 2.0)],
            truncation: f64::INFINITY,
        };
        assert!(matches!(
            dual_functional(&g, &OctantField::staircase_entropy()),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn corner_facet_for_constant_derivative() {
        let c = 0.7;
        let g = skyscraper_facet_curve(&OctantField::constant(c), 2000).unwrap();
        // the region is the shifted quadrant [c, inf)^2
        for x in [1.0, 3.0, 10.0] {
            assert!((g.value_at(x) - c).abs() < 1e-9);
        }
        assert!((g.diagonal_point().unwrap() - c).abs() < 1e-9);
        assert!(matches!(
            skyscraper_facet_curve(&OctantField::zero(), 100),
            Err(Error::NoFacet(_))
        ));
    }
}
