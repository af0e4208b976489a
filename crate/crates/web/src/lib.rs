//! WebAssembly bindings for the static demo page in `www/`: a Wulff shape
//! explorer, a Young diagram sampler drawn against the limit shape, and
//! Ising snapshots. Point lists cross the boundary as flat `[x0, y0, x1, ...]`.

use wasm_bindgen::prelude::*;
use wulff_core::dual::vk_window;
use wulff_core::ensemble::{
    limit_shape_reference, profile_distance, sample_young, solve_fugacity, GrandCanonicalSpec,
    Model,
};
use wulff_core::field::DirectionField;
use wulff_core::geometry::{clip_polyline_to_box, Vec2};
use wulff_core::ising::{glauber_run, RateKind, SpinLattice, Topology};
use wulff_core::partition::scaled_profile;
use wulff_core::wulff::{surface_energy, wulff_body};

fn flat(points: &[Vec2]) -> Vec<f64> {
    points.iter().flat_map(|p| [p.x, p.y]).collect()
}

fn js(e: wulff_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct WulffShape {
    vertices: Vec<f64>,
    area: f64,
    energy: f64,
}

#[wasm_bindgen]
impl WulffShape {
    pub fn vertices(&self) -> Vec<f64> {
        self.vertices.clone()
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }
}

/// Wulff shape of `1 + a cos(4 theta)` (`kind = "cos4"`), `|n_1| + |n_2|`
/// (`"l1"`) or the constant tension (`"isotropic"`).
#[wasm_bindgen]
pub fn wulff_shape(kind: &str, amplitude: f64, resolution: usize) -> Result<WulffShape, JsError> {
    let tau = match kind {
        "cos4" => DirectionField::cos4(1, amplitude),
        other => DirectionField::builtin(other, 1).map_err(js)?,
    };
    let body = wulff_body(&tau, resolution.max(8)).map_err(js)?;
    Ok(WulffShape {
        vertices: flat(body.vertices2()),
        area: body.volume(),
        energy: surface_energy(&body.surface(), &tau),
    })
}

#[wasm_bindgen]
pub struct YoungSample {
    profile: Vec<f64>,
    volume: u64,
    distance: f64,
}

#[wasm_bindgen]
impl YoungSample {
    /// Boundary scaled by `1/sqrt(volume)` and clipped to the window.
    pub fn profile(&self) -> Vec<f64> {
        self.profile.clone()
    }

    pub fn volume(&self) -> u64 {
        self.volume
    }

    /// Hausdorff distance to the limit shape inside the window.
    pub fn distance(&self) -> f64 {
        self.distance
    }
}

/// One grand-canonical Young diagram with mean volume `n_target`.
#[wasm_bindgen]
pub fn young_sample(n_target: f64, seed: u64) -> Result<YoungSample, JsError> {
    let x = solve_fugacity(Model::Young, n_target).map_err(js)?;
    let spec = GrandCanonicalSpec::new(Model::Young, x, seed).map_err(js)?;
    let p = sample_young(&spec, &mut spec.rng(0));
    let volume = p.volume();
    if volume == 0 {
        return Err(JsError::new("empty diagram; raise the target volume"));
    }
    let w = vk_window();
    let prof = scaled_profile(&p, volume as f64).map_err(js)?;
    let distance = profile_distance(&prof, &limit_shape_reference(), w);
    Ok(YoungSample {
        profile: flat(&clip_polyline_to_box(&prof, w, w)),
        volume,
        distance,
    })
}

/// The limit shape `e^{-cx} + e^{-cy} = 1` inside `[0, w]^2`.
#[wasm_bindgen]
pub fn limit_shape() -> Vec<f64> {
    let w = vk_window();
    flat(&clip_polyline_to_box(&limit_shape_reference(), w, w))
}

#[wasm_bindgen]
pub fn limit_shape_window() -> f64 {
    vk_window()
}

/// Spins (`+1`/`-1`, row-major from `y = 0`) after `sweeps` Metropolis
/// sweeps on the torus, started from all minus.
#[wasm_bindgen]
pub fn ising_snapshot(size: usize, beta: f64, field: f64, sweeps: usize, seed: u64) -> Result<Vec<i8>, JsError> {
    let mut lat = SpinLattice::new(size, Topology::Torus, beta, field, -1).map_err(js)?;
    glauber_run(&mut lat, sweeps.max(1), RateKind::Metropolis, seed, |_, _| {}).map_err(js)?;
    Ok(lat.spins().to_vec())
}
