//! Subcommand bodies.

use std::path::Path;

use serde_json::json;
use wulff_core::dual::{
    dual_body_graph, dual_functional, hr_constant, maximizer, vershik_kerov_curve, vk_window,
    OctantField,
};
use wulff_core::ensemble::{
    expected_volume, limit_shape_experiment, limit_shape_reference, sample_plane_partition,
    solve_fugacity, volume_variance, GrandCanonicalSpec, Model,
};
use wulff_core::field::{parse_direction_table, DirectionField};
use wulff_core::geometry::{clip_polyline_to_box, Vec2, Vec3};
use wulff_core::ising::{glauber_run, BoundaryCondition, RateKind, SpinLattice, Topology};
use wulff_core::partition::enumerate_partitions;
use wulff_core::series::{bounded_parts_series, euler_series, strict_series, Polynomial, TruncatedIntSeries};
use wulff_core::skyscraper::{pedestal_polynomial, skew_series, Diagram};
use wulff_core::spatial::{spatial_pedestal_polynomial, spatial_series};
use wulff_core::verify::{self, CRITERIA};
use wulff_core::wulff::{
    enclosed_volume, facet_shape, scaled_minimizer, surface_energy, volume_identity_check, wulff_body,
    DropletSurface,
};

use crate::emit::{self, csv_num, Csv};
use crate::manifest::Outputs;
use crate::{
    DualArgs, FacetArgs, Failure, IsingArgs, PartitionsArgs, SampleArgs, SkyscraperArgs,
    VerifyArgs, WulffArgs,
};

type Res = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn extension(name: &str) -> &str {
    Path::new(name).extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn read_table(path: &str) -> Result<Vec<(f64, f64)>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(parse_direction_table(&text)?)
}

fn direction_field(spec: &str, dimension: usize) -> Result<DirectionField, Failure> {
    if Path::new(spec).is_file() {
        if dimension != 1 {
            return usage("tabulated tensions are planar only");
        }
        return Ok(DirectionField::tabulated(&read_table(spec)?, true)?);
    }
    Ok(DirectionField::builtin(spec, dimension)?)
}

fn octant_field(spec: &str) -> Result<OctantField, Failure> {
    if Path::new(spec).is_file() {
        return Ok(OctantField::tabulated(&read_table(spec)?)?);
    }
    Ok(OctantField::builtin(spec)?)
}

pub fn wulff(a: &WulffArgs, out: &mut Outputs) -> Res {
    if a.dim != 2 && a.dim != 3 {
        return usage(format!("--dim {} (expected 2 or 3)", a.dim));
    }
    let tau = direction_field(&a.tau, a.dim - 1)?;
    let resolution = a.resolution.unwrap_or(if a.dim == 2 { 360 } else { 3 });
    let body = wulff_body(&tau, resolution)?;
    let surface = match a.volume {
        Some(q) => scaled_minimizer(&tau, q, resolution)?,
        None => body.surface(),
    };
    println!("tension      {}", tau.name());
    println!("volume       {}", csv_num(enclosed_volume(&surface)));
    println!("energy       {}", csv_num(surface_energy(&surface, &tau)));
    println!("half-spaces  max violation {:.3e}", body.max_violation());
    println!("identity     {:.3e}", volume_identity_check(&tau, resolution)?);
    for name in &a.emit {
        let text = match (&surface, extension(name)) {
            (DropletSurface::Polygon { vertices, .. }, "csv") => emit::points_csv(vertices),
            (DropletSurface::Polygon { vertices, .. }, "svg") => emit::polygon_svg(vertices),
            (DropletSurface::Mesh { vertices, .. }, "csv") => mesh_csv(vertices),
            (DropletSurface::Mesh { .. }, "svg") => return usage("SVG output is planar only"),
            (_, ext) => return usage(format!("cannot emit a shape as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn mesh_csv(vertices: &[Vec3]) -> String {
    let mut csv = Csv::new(&["x", "y", "z"]);
    for v in vertices {
        csv.row(&[csv_num(v.x), csv_num(v.y), csv_num(v.z)]);
    }
    csv.finish()
}

pub fn dual(a: &DualArgs, out: &mut Outputs) -> Res {
    let eta = octant_field(&a.eta)?;
    let g = if a.raw {
        dual_body_graph(&eta, a.resolution)?
    } else {
        maximizer(&eta, a.resolution)?
    };
    println!("field        {}", eta.name());
    println!("volume       {}", csv_num(g.volume()));
    println!("functional   {}", csv_num(dual_functional(&g, &eta)?));
    if let Some(d) = g.diagonal_point() {
        println!("diagonal     {}", csv_num(d));
    }
    if eta.name() == "staircase-entropy" && !a.raw {
        let w = vk_window();
        let dist = wulff_core::wulff::hausdorff_distance(
            &clip_polyline_to_box(&g.points, w, w),
            &vershik_kerov_curve(20_000),
        )?;
        let hr = hr_constant()?;
        println!("vk distance  {dist:.3e}");
        println!("hr constant  {} (direct {})", csv_num(hr.via_dual), csv_num(hr.direct));
    }
    for name in &a.emit {
        let text = match extension(name) {
            "csv" => emit::points_csv(&g.points),
            "svg" => {
                let w = g.points.iter().map(|p| p.x.max(p.y)).fold(0.0, f64::max).min(4.0 * g.volume().sqrt().max(1.0));
                emit::overlay_svg(&clip_polyline_to_box(&g.points, w, w), &[], w)
            }
            ext => return usage(format!("cannot emit a graph as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => usage(format!("{what} must be {n} comma-separated numbers, got {s:?}")),
    }
}

pub fn facet(a: &FacetArgs, out: &mut Outputs) -> Res {
    let tau = direction_field(&a.tau_prime, 1)?;
    let n = parse_floats(&a.normal, 3, "--normal")?;
    let f = facet_shape(&tau, Vec3::new(n[0], n[1], n[2]), a.resolution)?;
    println!("normal       {}", [f.normal.x, f.normal.y, f.normal.z].map(csv_num).join(","));
    println!("facet area   {}", csv_num(f.body.volume()));
    let verts = f.body.vertices2();
    for name in &a.emit {
        let text = match extension(name) {
            "csv" => emit::points_csv(verts),
            "svg" => emit::polygon_svg(verts),
            ext => return usage(format!("cannot emit a facet as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn series_csv(s: &TruncatedIntSeries) -> String {
    let mut csv = Csv::new(&["degree", "coefficient"]);
    for (k, c) in s.coeffs().iter().enumerate() {
        csv.row(&[k.to_string(), c.to_string()]);
    }
    csv.finish()
}

pub fn partitions(a: &PartitionsArgs, out: &mut Outputs) -> Res {
    let (series, max_parts, strict) = match a.kind.as_str() {
        "all" => (euler_series(a.degree), None, false),
        "strict" => (strict_series(a.degree), None, true),
        "bounded" => {
            let Some(k) = a.max_parts else { return usage("--kind bounded needs --max-parts") };
            (bounded_parts_series(k, a.degree)?, Some(k), false)
        }
        other => return usage(format!("--kind {other:?} (expected all, strict or bounded)")),
    };
    println!("series       {series}");
    let listed = match a.list {
        Some(n) => {
            let parts = enumerate_partitions(n, max_parts, strict, a.override_guard)?;
            println!("partitions of {n}: {}", parts.len());
            Some(parts)
        }
        None => None,
    };
    for name in &a.emit {
        let text = match extension(name) {
            "csv" => series_csv(&series),
            "json" => {
                let Some(parts) = &listed else { return usage("partitions JSON needs --list N") };
                let arrays: Vec<&[u32]> = parts.iter().map(|p| p.parts()).collect();
                emit::json(&json!(arrays))
            }
            ext => return usage(format!("cannot emit partitions as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn parse_shape(s: &str) -> Result<Vec<usize>, Failure> {
    let dims: Result<Vec<usize>, _> = s.split(['x', 'X']).map(|t| t.trim().parse::<usize>()).collect();
    match dims {
        Ok(d) if (d.len() == 2 || d.len() == 3) && d.iter().all(|&v| v > 0) => Ok(d),
        _ => usage(format!("--shape {s:?} (expected mxn or mxnxk with positive sides)")),
    }
}

fn polynomial_json(shape: &str, hole: &[usize], p: &Polynomial) -> String {
    let coeffs: Vec<serde_json::Value> = p.coeffs().iter().map(emit::json_int).collect();
    emit::json(&json!({
        "shape": shape,
        "hole": hole,
        "degree": p.degree(),
        "value_at_one": emit::json_int(&p.eval_at_one()),
        "coefficients": coeffs,
    }))
}

pub fn skyscraper(a: &SkyscraperArgs, out: &mut Outputs) -> Res {
    let dims = parse_shape(&a.shape)?;
    let hole: Vec<usize> = match &a.hole {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: expected a JSON array of row lengths ({e})", path.display())))?
        }
        None => Vec::new(),
    };
    let wants_poly = a.pedestal_poly || a.emit.iter().any(|n| extension(n) == "json");
    let (series, pedestal) = if dims.len() == 3 {
        if !hole.is_empty() {
            return usage("holes apply to plane partitions only");
        }
        let s = spatial_series(dims[0], dims[1], dims[2], a.series_degree, a.override_guard)?;
        let p = if wants_poly {
            Some(spatial_pedestal_polynomial(dims[0], dims[1], dims[2], a.override_guard)?)
        } else {
            None
        };
        (s, p)
    } else {
        let outer = Diagram::rectangle(dims[0], dims[1]);
        let inner = Diagram::new(hole.clone())?;
        let s = skew_series(&outer, &inner, a.series_degree)?;
        let p = if wants_poly { Some(pedestal_polynomial(&outer, &inner)?) } else { None };
        (s, p)
    };
    println!("series       {series}");
    if let Some(p) = &pedestal {
        println!("pedestal     {p}");
        println!("g(1)         {}", p.eval_at_one());
    }
    for name in &a.emit {
        let text = match extension(name) {
            "csv" => series_csv(&series),
            "json" => polynomial_json(&a.shape, &hole, pedestal.as_ref().expect("computed above")),
            ext => return usage(format!("cannot emit skyscraper data as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

pub fn sample(a: &SampleArgs, seed: u64, out: &mut Outputs) -> Res {
    let model: Model = a.model.parse().map_err(|e: wulff_core::Error| Failure::Usage(e.to_string()))?;
    match model {
        Model::Young => sample_young(a, seed, out),
        Model::Plane => sample_plane(a, seed, out),
    }
}

fn sample_young(a: &SampleArgs, seed: u64, out: &mut Outputs) -> Res {
    let stats = limit_shape_experiment(a.n_target, a.samples, seed)?;
    for w in &stats.warnings {
        eprintln!("warning: {w}");
    }
    println!("fugacity     {}", csv_num(stats.fugacity));
    println!("window       [{}, {}]", csv_num(stats.window.0), csv_num(stats.window.1));
    println!("accepted     {} of {}", stats.accepted, stats.drawn);
    println!("hausdorff    median {} (q10 {}, q90 {})", csv_num(stats.median), csv_num(stats.q10), csv_num(stats.q90));
    for name in &a.emit {
        let text = match extension(name) {
            "csv" => {
                let mut csv = Csv::new(&["sample", "x", "y"]);
                for (k, prof) in stats.profiles.iter().enumerate() {
                    for p in prof {
                        csv.row(&[k.to_string(), csv_num(p.x), csv_num(p.y)]);
                    }
                }
                csv.finish()
            }
            "json" => emit::json(&json!({
                "model": "young",
                "n_target": stats.n,
                "fugacity": stats.fugacity,
                "window": [stats.window.0, stats.window.1],
                "drawn": stats.drawn,
                "accepted": stats.accepted,
                "median": stats.median,
                "mean": stats.mean,
                "q10": stats.q10,
                "q90": stats.q90,
                "distances": stats.distances,
                "diagonal_points": stats.diagonal_points,
                "warnings": stats.warnings,
            })),
            "svg" => {
                let w = vk_window();
                let clipped: Vec<Vec<Vec2>> = stats.profiles.iter().map(|p| clip_polyline_to_box(p, w, w)).collect();
                emit::overlay_svg(&limit_shape_reference(), &clipped, w)
            }
            ext => return usage(format!("cannot emit samples as .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn sample_plane(a: &SampleArgs, seed: u64, out: &mut Outputs) -> Res {
    let x = solve_fugacity(Model::Plane, a.n_target as f64)?;
    let spec = GrandCanonicalSpec::new(Model::Plane, x, seed)?;
    let volumes: Vec<u64> = (0..a.samples as u64)
        .map(|i| sample_plane_partition(&spec, &mut spec.rng(i)).volume)
        .collect();
    let mean = volumes.iter().sum::<u64>() as f64 / volumes.len().max(1) as f64;
    let expected = expected_volume(Model::Plane, x)?;
    println!("fugacity     {}", csv_num(x));
    println!("mean volume  {} (expected {})", csv_num(mean), csv_num(expected));
    for name in &a.emit {
        let text = match extension(name) {
            "json" => emit::json(&json!({
                "model": "plane",
                "n_target": a.n_target,
                "fugacity": x,
                "l_max": spec.l_max,
                "expected_volume": expected,
                "volume_variance": volume_variance(Model::Plane, x)?,
                "mean_volume": mean,
                "volumes": volumes,
            })),
            ext => return usage(format!("plane samples support stats .json only, not .{ext}")),
        };
        out.write(name, &text)?;
    }
    Ok(())
}

fn parse_sign(s: &str, what: &str) -> Result<i8, Failure> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        _ => usage(format!("{what} {s:?} (expected + or -)")),
    }
}

fn parse_topology(topology: &str, bc: &str) -> Result<Topology, Failure> {
    match topology {
        "torus" => Ok(Topology::Torus),
        "box" => {
            let bc = match bc {
                "+" | "plus" => BoundaryCondition::Plus,
                "-" | "minus" => BoundaryCondition::Minus,
                s => {
                    let Some(dir) = s.strip_prefix("split:") else {
                        return usage(format!("--bc {s:?} (expected +, - or split:nx,ny)"));
                    };
                    let v: Result<Vec<i32>, _> = dir.split(',').map(|t| t.trim().parse::<i32>()).collect();
                    match v.as_deref() {
                        Ok([nx, ny]) => BoundaryCondition::Split { nx: *nx, ny: *ny },
                        _ => return usage(format!("--bc {s:?} (expected split:nx,ny with integers)")),
                    }
                }
            };
            Ok(Topology::Box(bc))
        }
        other => usage(format!("--topology {other:?} (expected torus or box)")),
    }
}

pub fn ising(a: &IsingArgs, seed: u64, out: &mut Outputs) -> Res {
    let topology = parse_topology(&a.topology, &a.bc)?;
    let kind: RateKind = a.rate.parse().map_err(|e: wulff_core::Error| Failure::Usage(e.to_string()))?;
    let initial = parse_sign(&a.initial, "--initial")?;
    let mut lat = SpinLattice::new(a.size, topology, a.beta, a.field, initial)?;
    let side = lat.side();
    let pgm_names: Vec<&String> = a.emit.iter().filter(|n| extension(n) == "pgm").collect();
    if let Some(bad) = a.emit.iter().find(|n| !matches!(extension(n), "csv" | "pgm")) {
        return usage(format!("cannot emit an Ising run as {bad}"));
    }
    let mut rows = Vec::with_capacity(a.sweeps + 1);
    let mut snapshots: Vec<(usize, String)> = Vec::new();
    glauber_run(&mut lat, a.sweeps, kind, seed, |l, row| {
        rows.push(*row);
        let due = if a.snapshot_every == 0 { row.sweep == a.sweeps } else { row.sweep % a.snapshot_every == 0 };
        if due && !pgm_names.is_empty() {
            snapshots.push((row.sweep, emit::spins_pgm(side, |x, y| l.spin(x, y))));
        }
    })?;
    let last = rows.last().expect("at least the initial row");
    println!("sweeps       {}", a.sweeps);
    println!("final        magnetization {}, energy {}, largest contour area {}", csv_num(last.magnetization), csv_num(last.energy), last.largest_contour_area);
    for name in &a.emit {
        if extension(name) == "csv" {
            let mut csv = Csv::new(&["sweep", "magnetization", "energy", "largest_contour_area"]);
            for r in &rows {
                csv.row(&[r.sweep.to_string(), csv_num(r.magnetization), csv_num(r.energy), r.largest_contour_area.to_string()]);
            }
            out.write(name, &csv.finish())?;
        }
    }
    for name in pgm_names {
        if a.snapshot_every == 0 {
            out.write(name, &snapshots.last().expect("final snapshot").1)?;
        } else {
            let stem = name.trim_end_matches(".pgm");
            for (sweep, text) in &snapshots {
                out.write(&format!("{stem}_{sweep:06}.pgm"), text)?;
            }
        }
    }
    Ok(())
}

fn suite(name: &str) -> Result<Vec<u8>, Failure> {
    Ok(match name {
        "all" => (1..=13).collect(),
        "combinatorics" => vec![1, 2, 3, 4, 5, 6],
        "geometry" => vec![7, 8, 9],
        "sampling" => vec![10, 11],
        "ising" => vec![12, 13],
        other => return usage(format!("--suite {other:?} (expected all, combinatorics, geometry, sampling or ising)")),
    })
}

pub fn verify(a: &VerifyArgs, out: &mut Outputs) -> Res {
    let ids = if a.criterion.is_empty() { suite(&a.suite)? } else { a.criterion.clone() };
    if let Some(bad) = ids.iter().find(|&&id| !(1..=13).contains(&id)) {
        return usage(format!("--criterion {bad} (expected 1..=13)"));
    }
    let mut results = Vec::new();
    for id in ids {
        let started = std::time::Instant::now();
        let r = verify::run(id).unwrap_or_else(|e| verify::CriterionResult {
            id,
            name: CRITERIA[id as usize - 1].1,
            passed: false,
            detail: format!("error: {e}"),
        });
        println!("{r}");
        results.push((r, started.elapsed().as_secs_f64()));
    }
    let failed: Vec<u8> = results.iter().filter(|(r, _)| !r.passed).map(|(r, _)| r.id).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    for name in &a.emit {
        let text = match extension(name) {
            "json" => emit::json(&json!(results
                .iter()
                .map(|(r, secs)| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail, "seconds": secs}))
                .collect::<Vec<_>>())),
            "csv" => {
                let mut csv = Csv::new(&["id", "name", "passed"]);
                for (r, _) in &results {
                    csv.row(&[r.id.to_string(), r.name.to_string(), r.passed.to_string()]);
                }
                csv.finish()
            }
            ext => return usage(format!("cannot emit a report as .{ext}")),
        };
        out.write(name, &text)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Model(format!("criteria {failed:?} failed")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_boundaries() {
        assert_eq!(parse_shape("2x2x3").unwrap(), vec![2, 2, 3]);
        assert!(parse_shape("2x0").is_err());
        assert!(parse_shape("abc").is_err());
        assert_eq!(parse_topology("box", "split:1,-2").unwrap(), Topology::Box(BoundaryCondition::Split { nx: 1, ny: -2 }));
        assert!(parse_topology("box", "split:1").is_err());
        assert!(parse_topology("sphere", "+").is_err());
    }
}
