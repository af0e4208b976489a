//! Planar and solid geometry primitives: vectors, half-plane clipping of
//! convex polygons, half-space clipping of convex polyhedra, icosphere
//! direction sets and Hausdorff distances between polylines.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Absolute tolerance for geometric predicates on unit-scale inputs.
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn as_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl Add for Vec2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Any two unit vectors completing `self` (assumed unit) to a
    /// right-handed orthonormal frame `(u, v, self)`.
    pub fn tangent_frame(self) -> (Self, Self) {
        let helper = if self.x.abs() < 0.9 {
            Vec3::new(1.0, 0.0, 0.0)
        } else {
            Vec3::new(0.0, 1.0, 0.0)
        };
        let u = helper.cross(self).normalized();
        let v = self.cross(u);
        (u, v)
    }
}

impl Add for Vec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

// ---------------------------------------------------------------------------
// Polygons

/// Shoelace area; positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        acc += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * acc
}

pub fn perimeter(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].dist(poly[(i + 1) % n])).sum()
}

/// Axis-aligned square `[-half, half]^2`, counter-clockwise.
pub fn square(half: f64) -> Vec<Vec2> {
    vec![
        Vec2::new(-half, -half),
        Vec2::new(half, -half),
        Vec2::new(half, half),
        Vec2::new(-half, half),
    ]
}

/// Sutherland-Hodgman step: keeps the part of a convex polygon with
/// `(x, normal) <= offset`.
pub fn clip_halfplane(poly: &[Vec2], normal: Vec2, offset: f64, tol: f64) -> Vec<Vec2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    let dist: Vec<f64> = poly.iter().map(|p| p.dot(normal) - offset).collect();
    if dist.iter().all(|&d| d <= tol) {
        return poly.to_vec();
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (poly[i], poly[j]);
        let (da, db) = (dist[i], dist[j]);
        if da <= tol {
            out.push(a);
        }
        if (da < -tol && db > tol) || (da > tol && db < -tol) {
            let t = da / (da - db);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Drops consecutive vertices closer than `tol` (cyclically).
pub fn dedup_ring(poly: &mut Vec<Vec2>, tol: f64) {
    poly.dedup_by(|b, a| a.dist(*b) <= tol);
    while poly.len() > 1 && poly[0].dist(*poly.last().unwrap()) <= tol {
        poly.pop();
    }
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Proper crossing test: the open segments intersect in a single point
/// interior to both.
pub fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let scale = 1e-12 * (1.0 + a.norm() + b.norm() + c.norm() + d.norm());
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    ((o1 > scale && o2 < -scale) || (o1 < -scale && o2 > scale))
        && ((o3 > scale && o4 < -scale) || (o3 < -scale && o4 > scale))
}

/// First pair of non-adjacent edges of a closed polygon that cross.
pub fn find_self_crossing(poly: &[Vec2]) -> Option<(usize, usize)> {
    let n = poly.len();
    if n < 4 {
        return None;
    }
    let bbox: Vec<(Vec2, Vec2)> = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            (
                Vec2::new(a.x.min(b.x), a.y.min(b.y)),
                Vec2::new(a.x.max(b.x), a.y.max(b.y)),
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| bbox[i].0.x.total_cmp(&bbox[j].0.x));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if bbox[j].0.x > bbox[i].1.x {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent || bbox[j].0.y > bbox[i].1.y || bbox[i].0.y > bbox[j].1.y {
                continue;
            }
            if segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

/// Support function `max_v (v, n)` of a finite point set.
pub fn support_value(points: &[Vec2], n: Vec2) -> f64 {
    points
        .iter()
        .map(|p| p.dot(n))
        .fold(f64::NEG_INFINITY, f64::max)
}

// ---------------------------------------------------------------------------
// Polylines and Hausdorff distance

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Inserts points so that consecutive points are at most `spacing` apart.
pub fn densify(polyline: &[Vec2], spacing: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(polyline.len());
    for w in polyline.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pieces = ((a.dist(b) / spacing).ceil() as usize).max(1);
        for k in 0..pieces {
            out.push(a + (b - a) * (k as f64 / pieces as f64));
        }
    }
    if let Some(&last) = polyline.last() {
        out.push(last);
    }
    out
}

/// Closes a ring by repeating its first vertex.
pub fn closed_ring(poly: &[Vec2]) -> Vec<Vec2> {
    let mut ring = poly.to_vec();
    if let Some(&first) = poly.first() {
        ring.push(first);
    }
    ring
}

/// Uniform-grid bucket of segments for nearest-segment queries.
pub struct SegmentIndex {
    segments: Vec<(Vec2, Vec2)>,
    origin: Vec2,
    cell: f64,
    nx: i64,
    ny: i64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl SegmentIndex {
    /// Indexes the segments of a polyline (a single point counts as a
    /// degenerate segment).
    pub fn from_polyline(polyline: &[Vec2]) -> Self {
        let segments: Vec<(Vec2, Vec2)> = if polyline.len() == 1 {
            vec![(polyline[0], polyline[0])]
        } else {
            polyline.windows(2).map(|w| (w[0], w[1])).collect()
        };
        let (mut lo, mut hi) = (
            Vec2::new(f64::INFINITY, f64::INFINITY),
            Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for &(a, b) in &segments {
            for p in [a, b] {
                lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let cells_per_side = ((segments.len() as f64).sqrt().ceil()).clamp(1.0, 512.0);
        let cell = extent / cells_per_side;
        let nx = ((hi.x - lo.x) / cell).floor() as i64 + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as i64 + 1;
        let mut index = Self {
            segments,
            origin: lo,
            cell,
            nx,
            ny,
            buckets: HashMap::new(),
        };
        for (k, &(a, b)) in index.segments.iter().enumerate() {
            let (ia, ja) = index.cell_of(a);
            let (ib, jb) = index.cell_of(b);
            let pieces = (((a.dist(b)) / (0.5 * cell)).ceil() as usize).max(1);
            let mut seen = Vec::new();
            for s in 0..=pieces {
                let c = index.cell_of(a + (b - a) * (s as f64 / pieces as f64));
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            // the sampled cells cover the segment; bounding cells keep
            // diagonal corner cases safe
            for i in ia.min(ib)..=ia.max(ib) {
                for j in ja.min(jb)..=ja.max(jb) {
                    if (ia == ib || ja == jb) && !seen.contains(&(i, j)) {
                        seen.push((i, j));
                    }
                }
            }
            for c in seen {
                index.buckets.entry(c).or_default().push(k);
            }
        }
        index
    }

    fn cell_of(&self, p: Vec2) -> (i64, i64) {
        let i = ((p.x - self.origin.x) / self.cell).floor() as i64;
        let j = ((p.y - self.origin.y) / self.cell).floor() as i64;
        (i.clamp(0, self.nx - 1), j.clamp(0, self.ny - 1))
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        let (ci, cj) = self.cell_of(p);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) + 1;
        let mut visited_any = false;
        for r in 0..=max_ring {
            for i in (ci - r)..=(ci + r) {
                for j in (cj - r)..=(cj + r) {
                    if (i - ci).abs() != r && (j - cj).abs() != r {
                        continue;
                    }
                    if let Some(list) = self.buckets.get(&(i, j)) {
                        visited_any = true;
                        for &k in list {
                            let (a, b) = self.segments[k];
                            best = best.min(point_segment_distance(p, a, b));
                        }
                    }
                }
            }
            if visited_any && best <= r as f64 * self.cell {
                break;
            }
        }
        best
    }
}

/// `sup_{a in A} dist(a, B)` with `A` densified to `spacing`.
pub fn directed_hausdorff(a: &[Vec2], b: &[Vec2], spacing: f64) -> f64 {
    let index = SegmentIndex::from_polyline(b);
    densify(a, spacing)
        .into_iter()
        .map(|p| index.distance(p))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines.
pub fn hausdorff(a: &[Vec2], b: &[Vec2], spacing: f64) -> f64 {
    directed_hausdorff(a, b, spacing).max(directed_hausdorff(b, a, spacing))
}

/// Keeps the parts of a polyline inside `[0, xmax] x [0, ymax]`, cutting
/// segments at the box boundary.
pub fn clip_polyline_to_box(polyline: &[Vec2], xmax: f64, ymax: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::new();
    let inside = |p: Vec2| p.x >= -1e-15 && p.y >= -1e-15 && p.x <= xmax && p.y <= ymax;
    if polyline.len() == 1 {
        return polyline.iter().copied().filter(|&p| inside(p)).collect();
    }
    for w in polyline.windows(2) {
        let (a, b) = (w[0], w[1]);
        // Liang-Barsky
        let d = b - a;
        let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
        let checks = [(-d.x, a.x), (d.x, xmax - a.x), (-d.y, a.y), (d.y, ymax - a.y)];
        let mut keep = true;
        for (p, q) in checks {
            if p == 0.0 {
                if q < 0.0 {
                    keep = false;
                    break;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        if !keep || t0 > t1 {
            continue;
        }
        let (pa, pb) = (a + d * t0, a + d * t1);
        if out.last().is_none_or(|&l| l.dist(pa) > 1e-15) {
            out.push(pa);
        }
        out.push(pb);
    }
    out
}

// ---------------------------------------------------------------------------
// Convex polyhedra

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub normal: Vec3,
    pub offset: f64,
    /// Vertex indices, counter-clockwise seen from outside.
    pub loop_: Vec<usize>,
}

/// Convex polyhedron as an indexed polygon mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<Face>,
}

fn sort_ccw(points: &[Vec3], ids: &mut [usize], normal: Vec3) {
    let centroid = ids
        .iter()
        .fold(Vec3::default(), |acc, &i| acc + points[i])
        * (1.0 / ids.len() as f64);
    let (u, v) = normal.tangent_frame();
    ids.sort_by(|&a, &b| {
        let pa = points[a] - centroid;
        let pb = points[b] - centroid;
        let ta = pa.dot(v).atan2(pa.dot(u));
        let tb = pb.dot(v).atan2(pb.dot(u));
        ta.total_cmp(&tb)
    });
}

impl ConvexPolyhedron {
    pub fn cube(half: f64) -> Self {
        let mut vertices = Vec::with_capacity(8);
        for bits in 0..8u32 {
            let s = |b: u32| if bits & b != 0 { half } else { -half };
            vertices.push(Vec3::new(s(1), s(2), s(4)));
        }
        let mut faces = Vec::with_capacity(6);
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut normal = Vec3::default();
                match axis {
                    0 => normal.x = sign,
                    1 => normal.y = sign,
                    _ => normal.z = sign,
                }
                let mut ids: Vec<usize> = (0..8)
                    .filter(|&i| (vertices[i].dot(normal) - half).abs() < 1e-12)
                    .collect();
                sort_ccw(&vertices, &mut ids, normal);
                faces.push(Face {
                    normal,
                    offset: half,
                    loop_: ids,
                });
            }
        }
        Self { vertices, faces }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    fn scale(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.norm())
            .fold(1.0, f64::max)
    }

    /// Keeps the part with `(x, normal) <= offset`.
    pub fn clip(&mut self, normal: Vec3, offset: f64) {
        let tol = 1e-12 * self.scale();
        let dist: Vec<f64> = self
            .vertices
            .iter()
            .map(|v| v.dot(normal) - offset)
            .collect();
        if dist.iter().all(|&d| d <= tol) {
            return;
        }
        if dist.iter().all(|&d| d > tol) {
            self.vertices.clear();
            self.faces.clear();
            return;
        }
        let mut cut_cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cap: Vec<usize> = Vec::new();
        let mut faces = Vec::with_capacity(self.faces.len() + 1);
        for face in &self.faces {
            let m = face.loop_.len();
            let mut new_loop = Vec::with_capacity(m + 1);
            for k in 0..m {
                let a = face.loop_[k];
                let b = face.loop_[(k + 1) % m];
                let (da, db) = (dist[a], dist[b]);
                if da <= tol {
                    new_loop.push(a);
                    if da.abs() <= tol && !cap.contains(&a) {
                        cap.push(a);
                    }
                }
                if (da < -tol && db > tol) || (da > tol && db < -tol) {
                    let key = (a.min(b), a.max(b));
                    let id = *cut_cache.entry(key).or_insert_with(|| {
                        let (pa, pb) = (self.vertices[a], self.vertices[b]);
                        let t = da / (da - db);
                        self.vertices.push(pa + (pb - pa) * t);
                        self.vertices.len() - 1
                    });
                    new_loop.push(id);
                    if !cap.contains(&id) {
                        cap.push(id);
                    }
                }
            }
            if new_loop.len() >= 3 {
                faces.push(Face {
                    normal: face.normal,
                    offset: face.offset,
                    loop_: new_loop,
                });
            }
        }
        if cap.len() >= 3 {
            sort_ccw(&self.vertices, &mut cap, normal);
            faces.push(Face {
                normal,
                offset,
                loop_: cap,
            });
        }
        self.faces = faces;
        self.compact();
    }

    fn compact(&mut self) {
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for face in &mut self.faces {
            for id in &mut face.loop_ {
                if remap[*id] == usize::MAX {
                    remap[*id] = vertices.len();
                    vertices.push(self.vertices[*id]);
                }
                *id = remap[*id];
            }
        }
        self.vertices = vertices;
    }

    /// Fan triangulation of every face.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut tris = Vec::new();
        for face in &self.faces {
            for k in 1..face.loop_.len() - 1 {
                tris.push([face.loop_[0], face.loop_[k], face.loop_[k + 1]]);
            }
        }
        tris
    }
}

/// Polygon face area vector (Newell); its norm is the face area and its
/// direction the outward normal.
pub fn face_area_vector(vertices: &[Vec3], loop_: &[usize]) -> Vec3 {
    let m = loop_.len();
    let mut acc = Vec3::default();
    for k in 0..m {
        let a = vertices[loop_[k]];
        let b = vertices[loop_[(k + 1) % m]];
        acc = acc + a.cross(b);
    }
    acc * 0.5
}

/// Divergence-theorem volume of a closed, outward-oriented polygon mesh.
pub fn mesh_volume(vertices: &[Vec3], faces: &[Vec<usize>]) -> f64 {
    let mut vol = 0.0;
    for f in faces {
        let p0 = vertices[f[0]];
        for k in 1..f.len() - 1 {
            vol += p0.dot(vertices[f[k]].cross(vertices[f[k + 1]]));
        }
    }
    vol / 6.0
}

/// `V - E + F` of the fan triangulation of a polygon mesh.
pub fn euler_characteristic(faces: &[Vec<usize>]) -> i64 {
    let mut verts = std::collections::HashSet::new();
    let mut edges = std::collections::HashSet::new();
    let mut tri_count = 0i64;
    for f in faces {
        for k in 1..f.len() - 1 {
            let t = [f[0], f[k], f[k + 1]];
            tri_count += 1;
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                verts.insert(a);
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    verts.len() as i64 - edges.len() as i64 + tri_count
}

/// Every undirected edge of the fan triangulation is shared by exactly two
/// triangles.
pub fn is_watertight(faces: &[Vec<usize>]) -> bool {
    let mut count: HashMap<(usize, usize), u32> = HashMap::new();
    for f in faces {
        for k in 1..f.len() - 1 {
            let t = [f[0], f[k], f[k + 1]];
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                *count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
    }
    count.values().all(|&c| c == 2)
}

/// Unit vertices of the icosahedron subdivided `level` times.
pub fn icosphere(level: u32) -> Vec<Vec3> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vec3> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vec3::new(x, y, z).normalized())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vec3>| -> usize {
            *midpoint.entry((a.min(b), a.max(b))).or_insert_with(|| {
                verts.push(((verts[a] + verts[b]) * 0.5).normalized());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    verts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_square_by_diagonal() {
        let sq = square(1.0);
        let n = Vec2::new(1.0, 1.0).normalized();
        let cut = clip_halfplane(&sq, n, 0.0, 1e-12);
        assert!((signed_area(&cut) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cube_clipped_to_half() {
        let mut c = ConvexPolyhedron::cube(1.0);
        c.clip(Vec3::new(1.0, 0.0, 0.0), 0.0);
        let faces: Vec<Vec<usize>> = c.faces.iter().map(|f| f.loop_.clone()).collect();
        assert!((mesh_volume(&c.vertices, &faces) - 4.0).abs() < 1e-12);
        assert_eq!(euler_characteristic(&faces), 2);
        assert!(is_watertight(&faces));
    }

    #[test]
    fn icosphere_counts() {
        assert_eq!(icosphere(0).len(), 12);
        assert_eq!(icosphere(1).len(), 42);
        assert_eq!(icosphere(4).len(), 2562);
    }

    #[test]
    fn crossing_detection() {
        let bow = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!(find_self_crossing(&bow).is_some());
        assert!(find_self_crossing(&square(1.0)).is_none());
    }

    #[test]
    fn hausdorff_of_offset_segments() {
        let a = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)];
        let b = [Vec2::new(0.0, 0.25), Vec2::new(1.0, 0.25)];
        assert!((hausdorff(&a, &b, 0.01) - 0.25).abs() < 1e-12);
        assert_eq!(hausdorff(&a, &a, 0.01), 0.0);
    }

    #[test]
    fn box_clip_cuts_segments() {
        let line = [Vec2::new(-1.0, 3.0), Vec2::new(3.0, -1.0)];
        let c = clip_polyline_to_box(&line, 2.0, 2.0);
        assert_eq!(c.len(), 2);
        assert!((c[0].x - 0.0).abs() < 1e-12 && (c[0].y - 2.0).abs() < 1e-12);
        assert!((c[1].x - 2.0).abs() < 1e-12 && (c[1].y - 0.0).abs() < 1e-12);
    }
}
