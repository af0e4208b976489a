//! Wulff bodies, surface and droplet functionals, the saddle droplet,
//! Brunn-Minkowski and pyramid checks, and facets at cusps.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::field::DirectionField;
use crate::geometry::{
    self, clip_halfplane, dedup_ring, face_area_vector, find_self_crossing, icosphere,
    is_watertight, mesh_volume, signed_area, support_value, ConvexPolyhedron, Vec2, Vec3,
};

/// Intersection of half-spaces `(x, n) <= offset` with its boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportPolytope {
    Planar {
        halfspaces: Vec<(Vec2, f64)>,
        /// Counter-clockwise, not repeated at the end.
        boundary: Vec<Vec2>,
    },
    Solid {
        halfspaces: Vec<(Vec3, f64)>,
        body: ConvexPolyhedron,
    },
}

impl SupportPolytope {
    pub fn ambient_dimension(&self) -> usize {
        match self {
            Self::Planar { .. } => 2,
            Self::Solid { .. } => 3,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Self::Planar { boundary, .. } => signed_area(boundary),
            Self::Solid { body, .. } => {
                let faces: Vec<Vec<usize>> = body.faces.iter().map(|f| f.loop_.clone()).collect();
                mesh_volume(&body.vertices, &faces)
            }
        }
    }

    /// Convex polygon as the intersection of its edge half-planes.
    pub fn convex_polygon(vertices: Vec<Vec2>) -> Result<Self> {
        let mut boundary = vertices;
        if signed_area(&boundary) < 0.0 {
            boundary.reverse();
        }
        let n = boundary.len();
        if n < 3 {
            return invalid("a polygon needs at least three vertices");
        }
        let mut halfspaces = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b, c) = (boundary[i], boundary[(i + 1) % n], boundary[(i + 2) % n]);
            if (b - a).cross(c - b) < -1e-12 {
                return invalid("polygon is not convex");
            }
            let e = b - a;
            if e.norm() > 1e-15 {
                let normal = Vec2::new(e.y, -e.x).normalized();
                halfspaces.push((normal, a.dot(normal)));
            }
        }
        Ok(Self::Planar {
            halfspaces,
            boundary,
        })
    }

    /// Planar boundary with the first vertex repeated at the end.
    pub fn closed_boundary(&self) -> Option<Vec<Vec2>> {
        match self {
            Self::Planar { boundary, .. } => Some(geometry::closed_ring(boundary)),
            Self::Solid { .. } => None,
        }
    }

    pub fn vertices2(&self) -> &[Vec2] {
        match self {
            Self::Planar { boundary, .. } => boundary,
            Self::Solid { .. } => &[],
        }
    }

    /// Largest `(x, n) - offset` over boundary vertices and half-spaces.
    pub fn max_violation(&self) -> f64 {
        match self {
            Self::Planar { halfspaces, boundary } => halfspaces
                .iter()
                .flat_map(|&(n, c)| boundary.iter().map(move |v| v.dot(n) - c))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Solid { halfspaces, body } => halfspaces
                .iter()
                .flat_map(|&(n, c)| body.vertices.iter().map(move |v| v.dot(n) - c))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn surface(&self) -> DropletSurface {
        match self {
            Self::Planar { boundary, .. } => DropletSurface::Polygon {
                vertices: boundary.clone(),
                volume: signed_area(boundary),
            },
            Self::Solid { body, .. } => {
                let faces: Vec<Vec<usize>> = body.faces.iter().map(|f| f.loop_.clone()).collect();
                let volume = mesh_volume(&body.vertices, &faces);
                DropletSurface::Mesh {
                    vertices: body.vertices.clone(),
                    faces,
                    volume,
                }
            }
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Self::Planar { halfspaces, boundary } => Self::Planar {
                halfspaces: halfspaces.iter().map(|&(n, c)| (n, c * s)).collect(),
                boundary: boundary.iter().map(|&v| v * s).collect(),
            },
            Self::Solid { halfspaces, body } => {
                let mut body = body.clone();
                for v in &mut body.vertices {
                    *v = *v * s;
                }
                for f in &mut body.faces {
                    f.offset *= s;
                }
                Self::Solid {
                    halfspaces: halfspaces.iter().map(|&(n, c)| (n, c * s)).collect(),
                    body,
                }
            }
        }
    }

    /// Support function `h(n) = max_x (x, n)` over the boundary vertices.
    pub fn support2(&self, n: Vec2) -> f64 {
        support_value(self.vertices2(), n)
    }

    pub fn support3(&self, n: Vec3) -> f64 {
        match self {
            Self::Planar { boundary, .. } => support_value(boundary, Vec2::new(n.x, n.y)),
            Self::Solid { body, .. } => body
                .vertices
                .iter()
                .map(|v| v.dot(n))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Closed hypersurface bounding a droplet, or the empty droplet.
#[derive(Debug, Clone, PartialEq)]
pub enum DropletSurface {
    /// The degenerate droplet: no volume and no surface.
    Point,
    Polygon {
        /// Counter-clockwise, not repeated at the end.
        vertices: Vec<Vec2>,
        volume: f64,
    },
    Mesh {
        vertices: Vec<Vec3>,
        /// Outward-oriented polygonal faces.
        faces: Vec<Vec<usize>>,
        volume: f64,
    },
}

impl DropletSurface {
    /// Validates a simple polygon and orients it counter-clockwise.
    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        let mut vertices = vertices;
        if vertices.len() >= 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return invalid("a polygon needs at least three vertices");
        }
        if let Some((i, j)) = find_self_crossing(&vertices) {
            return Err(Error::SelfIntersecting(i, j));
        }
        let mut area = signed_area(&vertices);
        if area < 0.0 {
            vertices.reverse();
            area = -area;
        }
        Ok(Self::Polygon {
            vertices,
            volume: area,
        })
    }

    /// Validates a closed, outward-oriented polygon mesh.
    pub fn mesh(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if faces.iter().any(|f| f.len() < 3 || f.iter().any(|&i| i >= vertices.len())) {
            return invalid("mesh face with fewer than three or out-of-range vertices");
        }
        if !is_watertight(&faces) {
            return invalid("mesh is not closed");
        }
        let volume = mesh_volume(&vertices, &faces);
        if volume <= 0.0 {
            return invalid("mesh is not outward oriented");
        }
        Ok(Self::Mesh {
            vertices,
            faces,
            volume,
        })
    }

    pub fn ambient_dimension(&self) -> Option<usize> {
        match self {
            Self::Point => None,
            Self::Polygon { .. } => Some(2),
            Self::Mesh { .. } => Some(3),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Self::Point => Self::Point,
            Self::Polygon { vertices, volume } => Self::Polygon {
                vertices: vertices.iter().map(|&v| v * s).collect(),
                volume: volume * s * s,
            },
            Self::Mesh {
                vertices,
                faces,
                volume,
            } => Self::Mesh {
                vertices: vertices.iter().map(|&v| v * s).collect(),
                faces: faces.clone(),
                volume: volume * s * s * s,
            },
        }
    }

    pub fn translated2(&self, t: Vec2) -> Self {
        match self {
            Self::Polygon { vertices, volume } => Self::Polygon {
                vertices: vertices.iter().map(|&v| v + t).collect(),
                volume: *volume,
            },
            other => other.clone(),
        }
    }

    pub fn vertices2(&self) -> &[Vec2] {
        match self {
            Self::Polygon { vertices, .. } => vertices,
            _ => &[],
        }
    }
}

/// Cached enclosed volume (area in the plane); zero for the point droplet.
pub fn enclosed_volume(m: &DropletSurface) -> f64 {
    match m {
        DropletSurface::Point => 0.0,
        DropletSurface::Polygon { volume, .. } | DropletSurface::Mesh { volume, .. } => *volume,
    }
}

/// Shoelace area of a simple polygon, rejecting self-intersections.
pub fn polygon_volume(vertices: &[Vec2]) -> Result<f64> {
    DropletSurface::polygon(vertices.to_vec()).map(|m| enclosed_volume(&m))
}

/// `sum tau(n_e) |e|` with the count of skipped degenerate elements.
pub fn surface_energy_counted(m: &DropletSurface, tau: &DirectionField) -> (f64, usize) {
    let mut energy = 0.0;
    let mut skipped = 0;
    match m {
        DropletSurface::Point => {}
        DropletSurface::Polygon { vertices, .. } => {
            let n = vertices.len();
            for i in 0..n {
                let e = vertices[(i + 1) % n] - vertices[i];
                let len = e.norm();
                if len <= 1e-15 {
                    skipped += 1;
                    continue;
                }
                let normal = Vec2::new(e.y, -e.x) * (1.0 / len);
                energy += tau.eval2(normal) * len;
            }
        }
        DropletSurface::Mesh {
            vertices, faces, ..
        } => {
            for f in faces {
                let av = face_area_vector(vertices, f);
                let area = av.norm();
                if area <= 1e-15 {
                    skipped += 1;
                    continue;
                }
                energy += tau.eval(av * (1.0 / area)) * area;
            }
        }
    }
    (energy, skipped)
}

/// Wulff functional of a polygonal or polyhedral surface.
pub fn surface_energy(m: &DropletSurface, tau: &DirectionField) -> f64 {
    surface_energy_counted(m, tau).0
}

/// Normals `theta_k = 2 pi k / resolution`.
pub fn uniform_normals(resolution: usize) -> Vec<Vec2> {
    (0..resolution)
        .map(|k| Vec2::from_angle(TAU * k as f64 / resolution as f64))
        .collect()
}

/// Planar Wulff body for an explicit normal set.
pub fn planar_body_from_normals(tau: &DirectionField, normals: &[Vec2]) -> Result<SupportPolytope> {
    let mut halfspaces = Vec::with_capacity(normals.len());
    for &n in normals {
        let v = tau.eval2(n);
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::RejectedInput(format!(
                "direction field value {v} at angle {:.6} is not positive",
                n.y.atan2(n.x)
            )));
        }
        halfspaces.push((n, v));
    }
    let max_tau = halfspaces.iter().map(|h| h.1).fold(0.0, f64::max);
    let half = 4.0 * max_tau;
    let mut poly = geometry::square(half);
    for &(n, c) in &halfspaces {
        poly = clip_halfplane(&poly, n, c, 1e-12 * half);
    }
    dedup_ring(&mut poly, 1e-12 * max_tau);
    if poly.len() < 3 {
        return invalid("half-plane intersection is degenerate");
    }
    if poly.iter().any(|v| v.x.abs().max(v.y.abs()) >= half * (1.0 - 1e-12)) {
        return invalid("normals do not surround the origin; body is unbounded");
    }
    Ok(SupportPolytope::Planar {
        halfspaces,
        boundary: poly,
    })
}

/// Solid Wulff body for an explicit normal set.
pub fn solid_body_from_normals(tau: &DirectionField, normals: &[Vec3]) -> Result<SupportPolytope> {
    let mut halfspaces = Vec::with_capacity(normals.len());
    for &n in normals {
        let v = tau.eval(n);
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::RejectedInput(format!(
                "direction field value {v} at ({:.4}, {:.4}, {:.4}) is not positive",
                n.x, n.y, n.z
            )));
        }
        halfspaces.push((n, v));
    }
    let max_tau = halfspaces.iter().map(|h| h.1).fold(0.0, f64::max);
    let half = 4.0 * max_tau;
    let mut body = ConvexPolyhedron::cube(half);
    for &(n, c) in &halfspaces {
        body.clip(n, c);
    }
    if body.is_empty() {
        return invalid("half-space intersection is empty");
    }
    if body
        .vertices
        .iter()
        .any(|v| v.x.abs().max(v.y.abs()).max(v.z.abs()) >= half * (1.0 - 1e-12))
    {
        return invalid("normals do not surround the origin; body is unbounded");
    }
    Ok(SupportPolytope::Solid { halfspaces, body })
}

/// Intersection of `{x : (x, n) <= tau(n)}` over sampled normals.
///
/// `resolution` is the number of uniform angles in the plane (at least 8)
/// and the icosphere subdivision level in space.
pub fn wulff_body(tau: &DirectionField, resolution: usize) -> Result<SupportPolytope> {
    if !tau.is_even() {
        return Err(Error::RejectedInput(format!(
            "{} is not declared even",
            tau.name()
        )));
    }
    match tau.dimension() {
        1 => {
            if resolution < 8 {
                return invalid(format!("resolution {resolution} < 8"));
            }
            planar_body_from_normals(tau, &uniform_normals(resolution))
        }
        2 => {
            if resolution > 6 {
                return invalid(format!("icosphere level {resolution} > 6"));
            }
            solid_body_from_normals(tau, &icosphere(resolution as u32))
        }
        d => invalid(format!("surface dimension {d} not supported")),
    }
}

/// `|vol(W) - W_tau(W)/(d+1)| / vol(W)`.
pub fn volume_identity_check(tau: &DirectionField, resolution: usize) -> Result<f64> {
    let body = wulff_body(tau, resolution)?;
    let vol = body.volume();
    let energy = surface_energy(&body.surface(), tau);
    let d1 = body.ambient_dimension() as f64;
    Ok((vol - energy / d1).abs() / vol)
}

/// Factor `(q (d+1) / W_tau(W))^{1/(d+1)}` that scales the Wulff shape to
/// volume `q`.
pub fn minimizer_scale(tau: &DirectionField, body: &SupportPolytope, q: f64) -> f64 {
    let d1 = body.ambient_dimension() as f64;
    let energy = surface_energy(&body.surface(), tau);
    (q * d1 / energy).powf(1.0 / d1)
}

/// Wulff shape dilated to enclose volume `q`.
pub fn scaled_minimizer(tau: &DirectionField, q: f64, resolution: usize) -> Result<DropletSurface> {
    if !(q > 0.0) || !q.is_finite() {
        return invalid(format!("volume {q} must be positive"));
    }
    let body = wulff_body(tau, resolution)?;
    let s = minimizer_scale(tau, &body, q);
    Ok(body.surface().scaled(s))
}

/// `W_tau(M) - m_star h vol(M)`.
pub fn droplet_energy(m: &DropletSurface, tau: &DirectionField, h: f64, m_star: f64) -> f64 {
    surface_energy(m, tau) - m_star * h * enclosed_volume(m)
}

#[derive(Debug, Clone)]
pub struct SaddleDroplet {
    pub surface: DropletSurface,
    /// `Phi` at the saddle.
    pub phi: f64,
    /// Dilation factor `d / (h m_star)` applied to the Wulff shape.
    pub scale: f64,
    /// `|dPhi/ds|` at the saddle relative to the surface-energy slope.
    pub gradient_rel: f64,
    /// `dPhi/ds` at `0.9 s` and `1.1 s`.
    pub slopes_around: (f64, f64),
}

/// The non-trivial critical point `(d / (h m_star)) W_tau` of the droplet
/// functional, with a finite-difference stationarity certificate.
pub fn saddle_droplet(
    tau: &DirectionField,
    h: f64,
    m_star: f64,
    resolution: usize,
) -> Result<SaddleDroplet> {
    if !(h > 0.0) || !h.is_finite() {
        return invalid(format!("field h = {h} must be positive"));
    }
    if !(m_star > 0.0) || !m_star.is_finite() {
        return invalid(format!("m_star = {m_star} must be positive"));
    }
    let body = wulff_body(tau, resolution)?;
    let wulff = body.surface();
    let d = (body.ambient_dimension() - 1) as f64;
    let energy = surface_energy(&wulff, tau);
    let s = d / (h * m_star);
    let phi = d.powf(d) / (h * m_star).powf(d) * energy / (d + 1.0);

    let phi_at = |x: f64| droplet_energy(&wulff.scaled(x), tau, h, m_star);
    let slope = |x: f64| {
        let delta = 1e-4 * x;
        (phi_at(x + delta) - phi_at(x - delta)) / (2.0 * delta)
    };
    let gradient_rel = slope(s).abs() / (d * s.powf(d - 1.0) * energy);
    let slopes_around = (slope(0.9 * s), slope(1.1 * s));
    if gradient_rel > 1e-6 || !(slopes_around.0 > 0.0 && slopes_around.1 < 0.0) {
        return Err(Error::Contradiction(format!(
            "dilated Wulff shape is not a saddle: relative slope {gradient_rel:e}, \
             slopes around {slopes_around:?}"
        )));
    }
    Ok(SaddleDroplet {
        surface: wulff.scaled(s),
        phi,
        scale: s,
        gradient_rel,
        slopes_around,
    })
}

/// Random simple polygon, star-shaped about the origin, with `k` vertices
/// at sorted angles and radii in `[r_min, 1]`.
pub fn random_star_polygon<R: Rng + ?Sized>(rng: &mut R, k: usize, r_min: f64) -> Vec<Vec2> {
    let mut angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles
        .into_iter()
        .map(|a| Vec2::from_angle(a) * rng.random_range(r_min..=1.0))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityReport {
    pub trials: usize,
    /// Energy of the Wulff shape of volume `q`.
    pub wulff_energy: f64,
    /// Smallest `(W_tau(M) - W_tau(Wulff)) / W_tau(Wulff)` seen.
    pub worst_gap: f64,
    /// Polygons undercutting the Wulff energy by more than the slack.
    pub violations: usize,
}

/// Compares the Wulff shape of volume `q` with random polygons of the same
/// area: half random star-shaped polygons, half radially perturbed Wulff
/// shapes.
pub fn minimality_check(
    tau: &DirectionField,
    q: f64,
    trials: usize,
    seed: u64,
    resolution: usize,
    slack: f64,
) -> Result<MinimalityReport> {
    if tau.dimension() != 1 {
        return invalid("minimality check is planar");
    }
    let wulff = scaled_minimizer(tau, q, resolution)?;
    let wulff_energy = surface_energy(&wulff, tau);
    let base = wulff_body(tau, resolution.min(720))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_gap = f64::INFINITY;
    let mut violations = 0;
    for t in 0..trials {
        let verts = if t % 2 == 0 {
            let k = rng.random_range(3..=40);
            random_star_polygon(&mut rng, k, 0.3)
        } else {
            let amp = rng.random_range(0.0..0.05);
            base.vertices2()
                .iter()
                .map(|&v| v * (1.0 + amp * rng.random_range(-1.0..1.0)))
                .collect()
        };
        let m = DropletSurface::polygon(verts)?;
        let m = m.scaled((q / enclosed_volume(&m)).sqrt());
        let gap = (surface_energy(&m, tau) - wulff_energy) / wulff_energy;
        worst_gap = worst_gap.min(gap);
        if gap < -slack {
            violations += 1;
        }
    }
    Ok(MinimalityReport {
        trials,
        wulff_energy,
        worst_gap,
        violations,
    })
}

/// Symmetric Hausdorff distance of two polylines (a single point is
/// allowed), densified to `1e-4` of the larger diameter.
pub fn hausdorff_distance(a: &[Vec2], b: &[Vec2]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return invalid("Hausdorff distance of an empty set");
    }
    let diam = |p: &[Vec2]| {
        let (mut lo, mut hi) = (p[0], p[0]);
        for v in p {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        hi.dist(lo)
    };
    let spacing = (1e-4 * diam(a).max(diam(b))).max(1e-12);
    Ok(geometry::hausdorff(a, b, spacing))
}

/// Hausdorff distance of two closed curves given as open rings.
pub fn hausdorff_distance_closed(a: &[Vec2], b: &[Vec2]) -> Result<f64> {
    hausdorff_distance(&geometry::closed_ring(a), &geometry::closed_ring(b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PyramidViolation {
    pub triangle: [Vec2; 3],
    /// `tau|long side| - (tau|side 1| + tau|side 2|) > 0`.
    pub excess: f64,
}

fn side_term(tau: &DirectionField, a: Vec2, b: Vec2) -> f64 {
    let e = b - a;
    let len = e.norm();
    if len == 0.0 {
        return 0.0;
    }
    tau.eval2(Vec2::new(e.y, -e.x) * (1.0 / len)) * len
}

/// Samples random triangles (half of them nearly flat) and records every
/// side whose weighted length exceeds the sum over the other two.
pub fn pyramid_inequality_check(
    tau: &DirectionField,
    trials: usize,
    seed: u64,
) -> Vec<PyramidViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for t in 0..trials {
        let a = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let b = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let c = if t % 2 == 0 {
            Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        } else {
            let s: f64 = rng.random_range(0.0..1.0);
            let e = b - a;
            let off: f64 = rng.random_range(-0.05..0.05);
            a + e * s + Vec2::new(-e.y, e.x) * off
        };
        let sides = [side_term(tau, a, b), side_term(tau, b, c), side_term(tau, c, a)];
        let scale = sides.iter().sum::<f64>().max(1e-300);
        for k in 0..3 {
            let excess = sides[k] - sides[(k + 1) % 3] - sides[(k + 2) % 3];
            if excess > 1e-12 * scale {
                out.push(PyramidViolation {
                    triangle: [a, b, c],
                    excess,
                });
                break;
            }
        }
    }
    out
}

/// Minkowski sum by adding support functions on the union of face normals.
pub fn minkowski_sum(a: &SupportPolytope, b: &SupportPolytope) -> Result<SupportPolytope> {
    match (a, b) {
        (SupportPolytope::Planar { .. }, SupportPolytope::Planar { .. }) => {
            let mut normals = Vec::new();
            for p in [a, b] {
                let v = p.vertices2();
                let n = v.len();
                for i in 0..n {
                    let e = v[(i + 1) % n] - v[i];
                    if e.norm() > 1e-15 {
                        normals.push(Vec2::new(e.y, -e.x).normalized());
                    }
                }
            }
            let halfspaces: Vec<(Vec2, f64)> = normals
                .into_iter()
                .map(|n| (n, a.support2(n) + b.support2(n)))
                .collect();
            let extent = halfspaces.iter().map(|h| h.1.abs()).fold(0.0, f64::max);
            let half = 4.0 * extent + 1.0;
            let mut poly = geometry::square(half);
            for &(n, c) in &halfspaces {
                poly = clip_halfplane(&poly, n, c, 1e-12 * half);
            }
            dedup_ring(&mut poly, 1e-12 * extent);
            Ok(SupportPolytope::Planar {
                halfspaces,
                boundary: poly,
            })
        }
        (SupportPolytope::Solid { body: ba, .. }, SupportPolytope::Solid { body: bb, .. }) => {
            let normals: Vec<Vec3> = ba.faces.iter().chain(&bb.faces).map(|f| f.normal).collect();
            let halfspaces: Vec<(Vec3, f64)> = normals
                .into_iter()
                .map(|n| (n, a.support3(n) + b.support3(n)))
                .collect();
            let extent = halfspaces.iter().map(|h| h.1.abs()).fold(0.0, f64::max);
            let mut body = ConvexPolyhedron::cube(4.0 * extent + 1.0);
            for &(n, c) in &halfspaces {
                body.clip(n, c);
            }
            Ok(SupportPolytope::Solid { halfspaces, body })
        }
        _ => invalid("Minkowski sum of bodies of different dimensions"),
    }
}

/// `|A+B|^{1/n} - |A|^{1/n} - |B|^{1/n}` in ambient dimension `n`.
pub fn brunn_minkowski_check(a: &SupportPolytope, b: &SupportPolytope) -> Result<f64> {
    let sum = minkowski_sum(a, b)?;
    let k = 1.0 / a.ambient_dimension() as f64;
    Ok(sum.volume().powf(k) - a.volume().powf(k) - b.volume().powf(k))
}

/// Facet of a Wulff shape at a cusp direction `n0`, as a planar body in the
/// tangent frame `(u, v)` of `n0`.
#[derive(Debug, Clone)]
pub struct Facet {
    pub body: SupportPolytope,
    pub normal: Vec3,
    pub frame: (Vec3, Vec3),
}

/// `{x in T_{n0} : (x, nu) <= tau'(nu)}` for the tangent derivative field
/// `tau'` (a planar field on the tangent circle).
pub fn facet_shape(tau_prime: &DirectionField, n0: Vec3, resolution: usize) -> Result<Facet> {
    if tau_prime.dimension() != 1 {
        return invalid("tangent derivative field must be planar");
    }
    if resolution < 8 {
        return invalid(format!("resolution {resolution} < 8"));
    }
    let normals = uniform_normals(resolution.max(720));
    let vmax = normals.iter().map(|&nu| tau_prime.eval2(nu)).fold(0.0, f64::max);
    for &nu in &normals {
        let v = tau_prime.eval2(nu);
        if !(v > 1e-9 * vmax) {
            return Err(Error::NoFacet(format!(
                "derivative {v} at angle {:.6} is not positive; no cusp",
                nu.y.atan2(nu.x)
            )));
        }
        if tau_prime.is_even() && (v - tau_prime.eval2(-nu)).abs() > 1e-12 * v {
            return Err(Error::NoFacet("derivative field is not symmetric".into()));
        }
    }
    if !tau_prime.is_even() {
        return Err(Error::NoFacet("derivative field is not symmetric".into()));
    }
    let violations = pyramid_inequality_check(tau_prime, 4000, 0x5eed);
    if let Some(v) = violations.first() {
        return Err(Error::NotSupportFunction(format!(
            "pyramid inequality fails by {:.3e} on {} sampled triangles",
            v.excess,
            violations.len()
        )));
    }
    let body = wulff_body(tau_prime, resolution)?;
    let n = n0.normalized();
    Ok(Facet {
        body,
        normal: n,
        frame: n.tangent_frame(),
    })
}
