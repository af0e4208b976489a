//! Invariants of the planar Wulff construction.

use proptest::prelude::*;
use wulff_core::field::DirectionField;
use wulff_core::geometry::{signed_area, Vec2};
use wulff_core::wulff::{
    hausdorff_distance_closed, minkowski_sum, saddle_droplet, surface_energy, wulff_body,
    DropletSurface, SupportPolytope,
};

const FIELDS: [&str; 3] = ["isotropic", "l1", "cos4"];

fn field(k: usize) -> DirectionField {
    DirectionField::builtin(FIELDS[k % FIELDS.len()], 1).unwrap()
}

fn centroid(poly: &[Vec2]) -> Vec2 {
    let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let c = p.cross(q);
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    Vec2::new(cx / (3.0 * a), cy / (3.0 * a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_covariance(k in 0usize..3, which in 0usize..3) {
        let lambda = [0.5, 2.0, 10.0][which];
        let tau = field(k);
        let a = wulff_body(&tau.scaled(lambda), 360).unwrap();
        let b = wulff_body(&tau, 360).unwrap().scaled(lambda);
        prop_assert_eq!(a.vertices2().len(), b.vertices2().len());
        for (p, q) in a.vertices2().iter().zip(b.vertices2()) {
            prop_assert!(p.dist(*q) < 1e-9, "{:?} vs {:?}", p, q);
        }
    }

    #[test]
    fn boundary_respects_every_half_plane(k in 0usize..3, res in 8usize..400) {
        let body = wulff_body(&field(k), res).unwrap();
        prop_assert!(body.max_violation() <= 1e-9);
        let ring = body.closed_boundary().unwrap();
        prop_assert_eq!(ring.first(), ring.last());
    }

    #[test]
    fn saddle_is_stationary(k in 0usize..3, h in 0.2f64..3.0, m in 0.3f64..1.5) {
        let s = saddle_droplet(&field(k), h, m, 720).unwrap();
        prop_assert!(s.gradient_rel < 1e-6);
        prop_assert!(s.slopes_around.0 > 0.0 && s.slopes_around.1 < 0.0);
    }

    /// Convex polygons inscribed in random ellipses against `N + eps K`.
    #[test]
    fn step_one_inequality(
        k in 0usize..3,
        angles in prop::collection::vec(0.0f64..std::f64::consts::TAU, 3..24),
        a in 0.3f64..3.0,
        b in 0.3f64..3.0,
        rot in 0.0f64..std::f64::consts::PI,
    ) {
        let mut angles = angles;
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|x, y| (*x - *y).abs() < 1e-3);
        prop_assume!(angles.len() >= 3);
        let (c, s) = (rot.cos(), rot.sin());
        let verts: Vec<Vec2> = angles
            .iter()
            .map(|t| {
                let (x, y) = (a * t.cos(), b * t.sin());
                Vec2::new(c * x - s * y, s * x + c * y)
            })
            .collect();
        prop_assume!(signed_area(&verts) > 1e-3);
        let n = match SupportPolytope::convex_polygon(verts.clone()) {
            Ok(n) => n,
            Err(_) => return Ok(()),
        };
        let tau = field(k);
        let eps = 1e-3;
        let grown = minkowski_sum(&n, &wulff_body(&tau, 720).unwrap().scaled(eps)).unwrap();
        let rate = (grown.volume() - n.volume()) / eps;
        let energy = surface_energy(&DropletSurface::polygon(verts).unwrap(), &tau);
        prop_assert!(rate <= energy + 1e-2 * energy, "rate {} energy {}", rate, energy);
    }
}

/// Smooth radial perturbations of the Wulff curve, area renormalized and
/// centred: the energy excess grows at least quadratically in the
/// Hausdorff distance with a positive fitted constant.
#[test]
fn stability_fit_is_positive() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for k in 0..3 {
        let tau = field(k);
        let body = wulff_body(&tau, 720).unwrap();
        let wulff = body.surface();
        let base_energy = surface_energy(&wulff, &tau);
        let base_area = body.volume();
        let verts = body.vertices2().to_vec();
        let mut fit = f64::INFINITY;
        let mut trend = Vec::new();
        for delta in [0.0125, 0.025, 0.05] {
            let mut gaps = Vec::new();
            for _ in 0..8 {
                let modes: Vec<(f64, f64, f64)> = (2..6)
                    .map(|m| (m as f64, rng.random_range(-1.0..1.0), rng.random_range(0.0..6.3)))
                    .collect();
                let norm: f64 = modes.iter().map(|m| m.1.abs()).sum();
                let bumped: Vec<Vec2> = verts
                    .iter()
                    .map(|v| {
                        let t = v.y.atan2(v.x);
                        let r: f64 = modes.iter().map(|(m, c, p)| c * (m * t + p).cos()).sum();
                        *v * (1.0 + delta * r / norm)
                    })
                    .collect();
                let s = (base_area / signed_area(&bumped)).sqrt();
                let c0 = centroid(&bumped);
                let shifted: Vec<Vec2> = bumped.iter().map(|v| (*v - c0) * s).collect();
                let gap = surface_energy(&DropletSurface::polygon(shifted.clone()).unwrap(), &tau)
                    - base_energy;
                let rho = hausdorff_distance_closed(&shifted, &verts).unwrap();
                assert!(gap > -1e-9 * base_energy, "{} gap {gap}", FIELDS[k]);
                fit = fit.min(gap / (rho * rho));
                gaps.push(gap);
            }
            gaps.sort_by(f64::total_cmp);
            trend.push(gaps[gaps.len() / 2]);
        }
        assert!(fit > 0.0, "{}: fitted constant {fit}", FIELDS[k]);
        assert!(trend.windows(2).all(|w| w[1] > w[0]), "{}: {trend:?}", FIELDS[k]);
    }
}
