//! Finite two-dimensional Ising model with
//! `H = -1/2 sum_<xy> s_x s_y - 1/2 sum_boundary s_x xi_y - h/2 sum s_x`,
//! Glauber dynamics, contours, exact enumeration on small boxes and the
//! critical droplet.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::field::DirectionField;
use crate::wulff::{surface_energy, wulff_body, DropletSurface};

/// Largest box side enumerated exactly without an override.
pub const EXACT_GUARD: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Plus,
    Minus,
    /// `xi(x) = +1` iff `(x - c, n) >= 0`, `c` the centre of the box.
    Split { nx: i32, ny: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Torus,
    Box(BoundaryCondition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateKind {
    Metropolis,
    HeatBath,
}

impl std::str::FromStr for RateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metropolis" => Ok(RateKind::Metropolis),
            "heatbath" | "heat-bath" => Ok(RateKind::HeatBath),
            other => invalid(format!("unknown rate {other:?} (expected metropolis or heatbath)")),
        }
    }
}

/// A bond of the lattice, possibly to a fixed boundary spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond {
    pub a: usize,
    pub b: Other,
    /// End points of the dual edge crossing the bond.
    pub dual: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Other {
    Site(usize),
    Boundary(i8),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinLattice {
    l: usize,
    topology: Topology,
    spins: Vec<i8>,
    pub h: f64,
    pub beta: f64,
    bonds: Vec<Bond>,
    /// Bond indices touching each site.
    incident: Vec<Vec<usize>>,
}

impl SpinLattice {
    pub fn new(l: usize, topology: Topology, beta: f64, h: f64, initial: i8) -> Result<Self> {
        if l == 0 {
            return invalid("lattice side must be at least 1");
        }
        if topology == Topology::Torus && l < 2 {
            return invalid("a torus needs side at least 2");
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return invalid(format!("inverse temperature {beta} must be finite and >= 0"));
        }
        if !h.is_finite() {
            return invalid("field must be finite");
        }
        if initial != 1 && initial != -1 {
            return invalid("spins are +1 or -1");
        }
        if let Topology::Box(BoundaryCondition::Split { nx: 0, ny: 0 }) = topology {
            return invalid("split direction must be nonzero");
        }
        let bonds = build_bonds(l, topology);
        let mut incident = vec![Vec::new(); l * l];
        for (k, b) in bonds.iter().enumerate() {
            incident[b.a].push(k);
            if let Other::Site(s) = b.b {
                incident[s].push(k);
            }
        }
        Ok(Self {
            l,
            topology,
            spins: vec![initial; l * l],
            h,
            beta,
            bonds,
            incident,
        })
    }

    pub fn side(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn site(&self, x: usize, y: usize) -> usize {
        y * self.l + x
    }

    pub fn spin(&self, x: usize, y: usize) -> i8 {
        self.spins[self.site(x, y)]
    }

    pub fn set_spins(&mut self, spins: Vec<i8>) -> Result<()> {
        if spins.len() != self.spins.len() || spins.iter().any(|&s| s != 1 && s != -1) {
            return invalid("spin array must have l*l entries of +1 or -1");
        }
        self.spins = spins;
        Ok(())
    }

    /// Spins from the low `l*l` bits of `bits` (bit set = +1).
    pub fn set_bits(&mut self, bits: u64) {
        for (k, s) in self.spins.iter_mut().enumerate() {
            *s = if bits >> k & 1 == 1 { 1 } else { -1 };
        }
    }

    pub fn flip(&mut self, site: usize) {
        self.spins[site] = -self.spins[site];
    }

    pub fn magnetization(&self) -> f64 {
        self.spins.iter().map(|&s| s as f64).sum::<f64>() / self.len() as f64
    }

    fn other_spin(&self, o: Other) -> i8 {
        match o {
            Other::Site(s) => self.spins[s],
            Other::Boundary(xi) => xi,
        }
    }

    /// Sum of the neighbouring spins (boundary spins included) of `site`.
    pub fn local_field(&self, site: usize) -> i32 {
        self.incident[site]
            .iter()
            .map(|&k| {
                let b = self.bonds[k];
                let other = if b.a == site { b.b } else { Other::Site(b.a) };
                self.other_spin(other) as i32
            })
            .sum()
    }

    /// `H(s^x) - H(s) = s_x (S_x + h)`.
    pub fn delta_h(&self, site: usize) -> f64 {
        self.spins[site] as f64 * (self.local_field(site) as f64 + self.h)
    }

    /// Bonds whose two spins disagree.
    pub fn disagreeing_bonds(&self) -> Vec<usize> {
        (0..self.bonds.len())
            .filter(|&k| {
                let b = self.bonds[k];
                self.spins[b.a] != self.other_spin(b.b)
            })
            .collect()
    }
}

fn build_bonds(l: usize, topology: Topology) -> Vec<Bond> {
    let torus = topology == Topology::Torus;
    let vside = if torus { l } else { l + 1 };
    let vertex = |x: usize, y: usize| (y % vside) * vside + (x % vside);
    let site = |x: usize, y: usize| (y % l) * l + (x % l);
    let centre = (l as f64 - 1.0) / 2.0;
    let xi = |x: i64, y: i64| -> i8 {
        match topology {
            Topology::Box(BoundaryCondition::Plus) | Topology::Torus => 1,
            Topology::Box(BoundaryCondition::Minus) => -1,
            Topology::Box(BoundaryCondition::Split { nx, ny }) => {
                let d = (x as f64 - centre) * nx as f64 + (y as f64 - centre) * ny as f64;
                if d >= 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    };
    let mut bonds = Vec::new();
    for y in 0..l {
        for x in 0..l {
            let a = site(x, y);
            let right = if x + 1 < l || torus {
                Other::Site(site(x + 1, y))
            } else {
                Other::Boundary(xi(x as i64 + 1, y as i64))
            };
            bonds.push(Bond {
                a,
                b: right,
                dual: (vertex(x + 1, y), vertex(x + 1, y + 1)),
            });
            let up = if y + 1 < l || torus {
                Other::Site(site(x, y + 1))
            } else {
                Other::Boundary(xi(x as i64, y as i64 + 1))
            };
            bonds.push(Bond {
                a,
                b: up,
                dual: (vertex(x, y + 1), vertex(x + 1, y + 1)),
            });
        }
    }
    if !torus {
        for y in 0..l {
            bonds.push(Bond {
                a: site(0, y),
                b: Other::Boundary(xi(-1, y as i64)),
                dual: (vertex(0, y), vertex(0, y + 1)),
            });
        }
        for x in 0..l {
            bonds.push(Bond {
                a: site(x, 0),
                b: Other::Boundary(xi(x as i64, -1)),
                dual: (vertex(x, 0), vertex(x + 1, 0)),
            });
        }
    }
    bonds
}

pub fn hamiltonian(lat: &SpinLattice) -> f64 {
    let bonds: f64 = lat
        .bonds
        .iter()
        .map(|b| (lat.spins[b.a] * lat.other_spin(b.b)) as f64)
        .sum();
    let total: f64 = lat.spins.iter().map(|&s| s as f64).sum();
    -0.5 * bonds - 0.5 * lat.h * total
}

/// `(exp(-beta (dH)^+), 1 / (1 + exp(beta dH)))` for flipping `site`.
pub fn flip_rates(lat: &SpinLattice, site: usize) -> (f64, f64) {
    rates_for(lat.beta, lat.delta_h(site))
}

fn rates_for(beta: f64, dh: f64) -> (f64, f64) {
    let metropolis = if dh <= 0.0 { 1.0 } else { (-beta * dh).exp() };
    let heat_bath = 1.0 / (1.0 + (beta * dh).exp());
    (metropolis, heat_bath)
}

fn rate(kind: RateKind, beta: f64, dh: f64) -> f64 {
    let (m, hb) = rates_for(beta, dh);
    match kind {
        RateKind::Metropolis => m,
        RateKind::HeatBath => hb,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub sweep: usize,
    pub magnetization: f64,
    pub energy: f64,
    pub largest_contour_area: usize,
}

/// One sweep of `|Lambda|` random-site proposals; returns the energy change.
pub fn sweep<R: Rng + ?Sized>(lat: &mut SpinLattice, kind: RateKind, rng: &mut R) -> f64 {
    let n = lat.len();
    let mut de = 0.0;
    for _ in 0..n {
        let site = rng.random_range(0..n);
        let dh = lat.delta_h(site);
        let p = rate(kind, lat.beta, dh);
        if p >= 1.0 || rng.random::<f64>() < p {
            lat.flip(site);
            de += dh;
        }
    }
    de
}

/// Runs `sweeps` sweeps and records the state after each one (row 0 is the
/// initial state).
pub fn glauber_trajectory(lat: &mut SpinLattice, sweeps: usize, kind: RateKind, seed: u64) -> Result<Vec<TraceRow>> {
    let mut trace = Vec::with_capacity(sweeps + 1);
    glauber_run(lat, sweeps, kind, seed, |_, row| trace.push(*row))?;
    Ok(trace)
}

/// [`glauber_trajectory`] with a visitor called on the lattice and its row
/// after every sweep, and once before the first.
pub fn glauber_run(
    lat: &mut SpinLattice,
    sweeps: usize,
    kind: RateKind,
    seed: u64,
    mut visit: impl FnMut(&SpinLattice, &TraceRow),
) -> Result<()> {
    if sweeps == 0 {
        return invalid("need at least one sweep");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut energy = hamiltonian(lat);
    let row = |lat: &SpinLattice, sweep: usize, energy: f64| TraceRow {
        sweep,
        magnetization: lat.magnetization(),
        energy,
        largest_contour_area: extract_contours(lat).largest_area(),
    };
    visit(lat, &row(lat, 0, energy));
    for s in 1..=sweeps {
        energy += sweep(lat, kind, &mut rng);
        visit(lat, &row(lat, s, energy));
    }
    Ok(())
}

/// First sweep after which the magnetization is positive.
pub fn first_flip_sweep(lat: &mut SpinLattice, max_sweeps: usize, kind: RateKind, seed: u64) -> Option<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=max_sweeps).find(|_| {
        sweep(lat, kind, &mut rng);
        lat.magnetization() > 0.0
    })
}

/// Time average of `s(site)` over `sweeps` sweeps after `burn_in`, with a
/// batch-means standard error.
pub fn site_mean_estimate(
    lat: &mut SpinLattice,
    site: usize,
    burn_in: usize,
    sweeps: usize,
    batches: usize,
    kind: RateKind,
    seed: u64,
) -> Result<(f64, f64)> {
    if batches < 2 || sweeps < batches {
        return invalid("need at least two batches and one sweep per batch");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..burn_in {
        sweep(lat, kind, &mut rng);
    }
    let per = sweeps / batches;
    let means: Vec<f64> = (0..batches)
        .map(|_| {
            let mut acc = 0.0;
            for _ in 0..per {
                sweep(lat, kind, &mut rng);
                acc += lat.spins[site] as f64;
            }
            acc / per as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    Ok((mean, (var / batches as f64).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    /// Indices into [`SpinLattice::bonds`].
    pub bonds: Vec<usize>,
    /// Sites enclosed by the contour alone.
    pub area: usize,
}

impl Contour {
    pub fn length(&self) -> usize {
        self.bonds.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContourSet {
    pub contours: Vec<Contour>,
}

impl ContourSet {
    pub fn total_length(&self) -> usize {
        self.contours.iter().map(Contour::length).sum()
    }

    pub fn largest_area(&self) -> usize {
        self.contours.iter().map(|c| c.area).max().unwrap_or(0)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Connected components of the dual edges of disagreeing bonds.
pub fn extract_contours(lat: &SpinLattice) -> ContourSet {
    let broken = lat.disagreeing_bonds();
    if broken.is_empty() {
        return ContourSet::default();
    }
    let vside = if lat.topology == Topology::Torus { lat.l } else { lat.l + 1 };
    let mut parent: Vec<usize> = (0..vside * vside).collect();
    for &k in &broken {
        let (u, v) = lat.bonds[k].dual;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &k in &broken {
        let root = find(&mut parent, lat.bonds[k].dual.0);
        groups.entry(root).or_default().push(k);
    }
    let mut wall = vec![false; lat.bonds.len()];
    let contours = groups
        .into_values()
        .map(|bonds| {
            for &k in &bonds {
                wall[k] = true;
            }
            let area = enclosed_area(lat, &wall);
            for &k in &bonds {
                wall[k] = false;
            }
            Contour { bonds, area }
        })
        .collect();
    ContourSet { contours }
}

/// Sites cut off from the outside by the walls: from the exterior in a
/// box, from the largest region on a torus.
fn enclosed_area(lat: &SpinLattice, wall: &[bool]) -> usize {
    let n = lat.len();
    let exterior = n;
    let mut comp = vec![usize::MAX; n + 1];
    let mut sizes = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (k, b) in lat.bonds.iter().enumerate() {
        if wall[k] {
            continue;
        }
        let other = match b.b {
            Other::Site(s) => s,
            Other::Boundary(_) => exterior,
        };
        adjacency[b.a].push(other);
        adjacency[other].push(b.a);
    }
    let has_exterior = lat.topology != Topology::Torus;
    let starts: Vec<usize> = if has_exterior {
        std::iter::once(exterior).chain(0..n).collect()
    } else {
        (0..n).collect()
    };
    for start in starts {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        comp[start] = id;
        while let Some(v) = queue.pop_front() {
            if v != exterior {
                size += 1;
            }
            for &w in &adjacency[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    if has_exterior {
        n - sizes[0]
    } else {
        n - sizes.iter().copied().max().unwrap_or(0)
    }
}

fn exact_guard(lat: &SpinLattice, override_guard: bool) -> Result<()> {
    if lat.l > EXACT_GUARD && !override_guard {
        return Err(Error::GuardExceeded {
            what: "exact enumeration side l",
            value: lat.l,
            limit: EXACT_GUARD,
        });
    }
    if lat.len() > 30 {
        return invalid("exact enumeration beyond 30 spins is not supported");
    }
    Ok(())
}

/// Calls `visit(state bits, H)` for every configuration.
pub fn for_each_state(lat: &SpinLattice, mut visit: impl FnMut(u64, &SpinLattice, f64)) {
    let mut work = lat.clone();
    for bits in 0..1u64 << lat.len() {
        work.set_bits(bits);
        let e = hamiltonian(&work);
        visit(bits, &work, e);
    }
}

/// `ln Z` by exhaustive enumeration.
pub fn exact_log_partition_function(lat: &SpinLattice, override_guard: bool) -> Result<f64> {
    exact_guard(lat, override_guard)?;
    let mut energies = Vec::with_capacity(1 << lat.len());
    for_each_state(lat, |_, _, e| energies.push(-lat.beta * e));
    Ok(log_sum_exp(&energies))
}

pub fn exact_partition_function(lat: &SpinLattice, override_guard: bool) -> Result<f64> {
    Ok(exact_log_partition_function(lat, override_guard)?.exp())
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Exact Gibbs expectation of `s(site)`.
pub fn exact_site_mean(lat: &SpinLattice, site: usize, override_guard: bool) -> Result<f64> {
    let ln_z = exact_log_partition_function(lat, override_guard)?;
    let mut acc = 0.0;
    for_each_state(lat, |_, s, e| {
        acc += s.spins[site] as f64 * (-lat.beta * e - ln_z).exp();
    });
    Ok(acc)
}

/// Largest `|mu(s) c(s, x) - mu(s^x) c(s^x, x)|` relative to the flux,
/// over all states and sites.
pub fn detailed_balance_defect(lat: &SpinLattice, kind: RateKind) -> Result<f64> {
    exact_guard(lat, false)?;
    let mut worst: f64 = 0.0;
    let beta = lat.beta;
    for_each_state(lat, |_, s, e| {
        for site in 0..s.len() {
            let dh = s.delta_h(site);
            let forward = (-beta * e).exp() * rate(kind, beta, dh);
            let backward = (-beta * (e + dh)).exp() * rate(kind, beta, -dh);
            let scale = forward.abs().max(backward.abs());
            if scale > 0.0 {
                worst = worst.max((forward - backward).abs() / scale);
            }
        }
    });
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalLaw {
    /// Imposed `sum s_x`.
    pub total_spin: i64,
    /// `(state bits, probability)` over the restricted configurations.
    pub states: Vec<(u64, f64)>,
    pub most_probable: u64,
    /// Number of contours of the most probable configuration.
    pub most_probable_contours: usize,
}

/// Gibbs law restricted to `sum s_x` closest to `rho |Lambda|` (ties to the
/// smaller value).
pub fn exact_canonical_law(lat: &SpinLattice, rho: f64, override_guard: bool) -> Result<CanonicalLaw> {
    exact_guard(lat, override_guard)?;
    if !(-1.0..=1.0).contains(&rho) {
        return invalid("density must lie in [-1, 1]");
    }
    let n = lat.len() as i64;
    let target = total_for_density(rho, n);
    let mut states = Vec::new();
    let mut logs = Vec::new();
    for_each_state(lat, |bits, s, e| {
        let total: i64 = s.spins.iter().map(|&v| v as i64).sum();
        if total == target {
            states.push(bits);
            logs.push(-lat.beta * e);
        }
    });
    let ln_z = log_sum_exp(&logs);
    let probs: Vec<(u64, f64)> = states
        .iter()
        .zip(&logs)
        .map(|(&b, &w)| (b, (w - ln_z).exp()))
        .collect();
    let most_probable = probs
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|p| p.0)
        .expect("nonempty restriction");
    let mut work = lat.clone();
    work.set_bits(most_probable);
    Ok(CanonicalLaw {
        total_spin: target,
        states: probs,
        most_probable,
        most_probable_contours: extract_contours(&work).contours.len(),
    })
}

fn total_for_density(rho: f64, n: i64) -> i64 {
    // achievable totals are n, n - 2, ..., -n
    (0..=n)
        .map(|k| n - 2 * k)
        .min_by(|a, b| {
            let (da, db) = ((*a as f64 - rho * n as f64).abs(), (*b as f64 - rho * n as f64).abs());
            da.total_cmp(&db).then(a.cmp(b))
        })
        .expect("n >= 0")
}

/// `-(1/(beta l)) ln(Z_split / Z_plus)` in the `l x l` box at `h = 0`.
pub fn surface_tension_estimate(l: usize, n: (i32, i32), beta: f64, override_guard: bool) -> Result<f64> {
    if !(beta > 0.0) {
        return invalid("surface tension needs beta > 0");
    }
    let split = SpinLattice::new(
        l,
        Topology::Box(BoundaryCondition::Split { nx: n.0, ny: n.1 }),
        beta,
        0.0,
        1,
    )?;
    let plus = SpinLattice::new(l, Topology::Box(BoundaryCondition::Plus), beta, 0.0, 1)?;
    let ratio = exact_log_partition_function(&split, override_guard)?
        - exact_log_partition_function(&plus, override_guard)?;
    Ok(-ratio / (beta * l as f64))
}

#[derive(Debug, Clone)]
pub struct CriticalDroplet {
    pub shape: DropletSurface,
    /// Dilation `1/(h m_star)` of the Wulff shape.
    pub scale: f64,
    pub phi: f64,
    pub lambda_c: f64,
}

/// `(1/(h m*)) W_tau`, `Phi = W_tau(W_tau)/(2 h m*)` and `lambda_c = h Phi/(3T)`.
pub fn critical_droplet(
    tau: &DirectionField,
    h: f64,
    m_star: f64,
    temperature: f64,
    resolution: usize,
) -> Result<CriticalDroplet> {
    for (name, v) in [("h", h), ("m_star", m_star), ("T", temperature)] {
        if !(v > 0.0) || !v.is_finite() {
            return invalid(format!("{name} = {v} must be positive"));
        }
    }
    if tau.dimension() != 1 {
        return invalid("the critical droplet is planar: tau must be a field on the circle");
    }
    let body = wulff_body(tau, resolution)?;
    let wulff = body.surface();
    let scale = 1.0 / (h * m_star);
    let phi = surface_energy(&wulff, tau) / (2.0 * h * m_star);
    Ok(CriticalDroplet {
        shape: wulff.scaled(scale),
        scale,
        phi,
        lambda_c: h * phi / (3.0 * temperature),
    })
}

/// Block averages of the spins over discs of radius `ceil(sqrt l)` (or
/// `radius`) centred at the sites `floor(t l)` for `t` on a `grid x grid`
/// mesh of the unit torus.
pub fn coarse_magnetization(lat: &SpinLattice, grid: usize, radius: Option<usize>) -> Result<Vec<Vec<f64>>> {
    if lat.topology != Topology::Torus {
        return invalid("coarse magnetization is defined on the torus");
    }
    if grid == 0 {
        return invalid("grid must be at least 1");
    }
    let l = lat.l as i64;
    let r = radius.unwrap_or_else(|| (lat.l as f64).sqrt().ceil() as usize) as i64;
    let offsets: Vec<(i64, i64)> = (-r..=r)
        .flat_map(|dy| (-r..=r).map(move |dx| (dx, dy)))
        .filter(|(dx, dy)| dx * dx + dy * dy <= r * r)
        .collect();
    Ok((0..grid)
        .map(|j| {
            (0..grid)
                .map(|i| {
                    let cx = (i as i64 * l) / grid as i64;
                    let cy = (j as i64 * l) / grid as i64;
                    let sum: i64 = offsets
                        .iter()
                        .map(|(dx, dy)| {
                            let x = (cx + dx).rem_euclid(l) as usize;
                            let y = (cy + dy).rem_euclid(l) as usize;
                            lat.spin(x, y) as i64
                        })
                        .sum();
                    sum as f64 / offsets.len() as f64
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(l: usize, beta: f64, h: f64, s: i8) -> SpinLattice {
        SpinLattice::new(l, Topology::Torus, beta, h, s).unwrap()
    }

    fn boxed(l: usize, bc: BoundaryCondition, beta: f64, h: f64, s: i8) -> SpinLattice {
        SpinLattice::new(l, Topology::Box(bc), beta, h, s).unwrap()
    }

    #[test]
    fn hamiltonian_examples() {
        let plus = torus(3, 1.0, 0.0, 1);
        assert_eq!(hamiltonian(&plus), -9.0);
        assert_eq!(hamiltonian(&torus(3, 1.0, 0.0, -1)), -9.0);
        let mut minus = torus(5, 1.0, 0.0, -1);
        let e0 = hamiltonian(&minus);
        let c = minus.site(2, 2);
        assert_eq!(minus.delta_h(c), 4.0);
        minus.flip(c);
        assert_eq!(hamiltonian(&minus) - e0, 4.0);
    }

    #[test]
    fn rate_examples() {
        let (m, hb) = rates_for(0.7, 0.0);
        assert_eq!((m, hb), (1.0, 0.5));
        let lat = torus(5, 0.8, 0.5, -1);
        let (m, _) = flip_rates(&lat, 7);
        assert!((m - (-0.8f64 * 3.5).exp()).abs() < 1e-15);
    }

    #[test]
    fn detailed_balance_small_boxes() {
        for l in [2, 3] {
            for lat in [
                torus(l, 0.7, 0.3, 1),
                boxed(l, BoundaryCondition::Plus, 0.4, -0.2, 1),
                boxed(l, BoundaryCondition::Split { nx: 1, ny: 1 }, 1.1, 0.0, 1),
            ] {
                for kind in [RateKind::Metropolis, RateKind::HeatBath] {
                    assert!(detailed_balance_defect(&lat, kind).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn contour_examples() {
        let mut lat = boxed(6, BoundaryCondition::Minus, 1.0, 0.0, -1);
        lat.flip(lat.site(2, 3));
        let c = extract_contours(&lat);
        assert_eq!(c.contours.len(), 1);
        assert_eq!((c.contours[0].length(), c.contours[0].area), (4, 1));

        let mut lat = boxed(6, BoundaryCondition::Minus, 1.0, 0.0, -1);
        for (x, y) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            lat.flip(lat.site(x, y));
        }
        let c = extract_contours(&lat);
        assert_eq!(c.contours.len(), 1);
        assert_eq!((c.contours[0].length(), c.contours[0].area), (8, 4));

        let mut t = torus(8, 1.0, 0.0, -1);
        t.flip(t.site(0, 0));
        let c = extract_contours(&t);
        assert_eq!((c.contours[0].length(), c.contours[0].area), (4, 1));
    }

    #[test]
    fn energy_perimeter_identity_exhaustive() {
        let lat = boxed(3, BoundaryCondition::Plus, 1.0, 0.0, 1);
        let e_plus = hamiltonian(&lat);
        for_each_state(&lat, |_, s, e| {
            let c = extract_contours(s);
            assert_eq!(e - e_plus, c.total_length() as f64);
            assert_eq!(c.total_length(), s.disagreeing_bonds().len());
        });
    }

    #[test]
    fn spin_flip_symmetry() {
        let mut a = torus(4, 1.0, 0.3, 1);
        let mut b = torus(4, 1.0, -0.3, 1);
        for bits in [0u64, 5, 0xbeef, 0x1234] {
            a.set_bits(bits);
            b.set_bits(!bits);
            assert_eq!(hamiltonian(&a), hamiltonian(&b));
        }
    }

    #[test]
    fn single_site_partition_function() {
        let beta = 0.37;
        let lat = boxed(1, BoundaryCondition::Plus, beta, 0.0, 1);
        let z = exact_partition_function(&lat, false).unwrap();
        let want = (2.0 * beta).exp() + (-2.0f64 * beta).exp();
        assert!((z - want).abs() < 1e-12);
    }

    #[test]
    fn site_mean_grows_with_beta() {
        let mut last = 0.0;
        for beta in [0.1, 0.3, 0.5, 0.8, 1.2] {
            let lat = boxed(3, BoundaryCondition::Plus, beta, 0.0, 1);
            let m = exact_site_mean(&lat, 4, false).unwrap();
            assert!(m > last);
            last = m;
        }
        let big = boxed(5, BoundaryCondition::Plus, 1.0, 0.0, 1);
        assert!(matches!(exact_site_mean(&big, 0, false), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn canonical_law_sums_to_one() {
        let lat = boxed(3, BoundaryCondition::Minus, 2.0, 0.0, 1);
        let law = exact_canonical_law(&lat, -0.3, false).unwrap();
        let total: f64 = law.states.iter().map(|s| s.1).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(law.total_spin, -3);
        assert_eq!(law.most_probable_contours, 1);
    }

    #[test]
    fn surface_tension_examples() {
        let cold = surface_tension_estimate(4, (0, 1), 3.0, false).unwrap();
        assert!(cold > 0.9 && cold < 1.0, "{cold}");
        let hot = surface_tension_estimate(4, (0, 1), 1e-6, false).unwrap();
        assert!(hot.abs() < 1e-3, "{hot}");
        let mut last = f64::INFINITY;
        for beta in [3.0, 2.0, 1.5, 1.0, 0.5] {
            let t = surface_tension_estimate(4, (0, 1), beta, false).unwrap();
            assert!(t < last);
            last = t;
        }
    }

    #[test]
    fn critical_droplet_isotropic() {
        let tau0 = 1.3;
        let (h, m, t) = (0.2, 0.9, 1.5);
        let tau = DirectionField::isotropic(1, tau0);
        let d = critical_droplet(&tau, h, m, t, 4096).unwrap();
        let pi = std::f64::consts::PI;
        assert!((d.phi / (pi * tau0 * tau0 / (h * m)) - 1.0).abs() < 1e-5);
        assert!((d.lambda_c / (pi * tau0 * tau0 / (3.0 * m * t)) - 1.0).abs() < 1e-5);
        assert_eq!(d.lambda_c / h, d.phi / (3.0 * t));
        let d2 = critical_droplet(&tau, 2.0 * h, m, t, 4096).unwrap();
        assert!((d2.scale * 2.0 - d.scale).abs() < 1e-12);
        assert!((d2.lambda_c - d.lambda_c).abs() < 1e-12 * d.lambda_c);
    }

    #[test]
    fn critical_droplet_is_the_planar_saddle() {
        let tau = DirectionField::cos4(1, 0.1);
        let d = critical_droplet(&tau, 0.3, 0.8, 1.0, 3600).unwrap();
        let s = crate::wulff::saddle_droplet(&tau, 0.3, 0.8, 3600).unwrap();
        assert!((d.phi - s.phi).abs() < 1e-9 * s.phi);
    }

    #[test]
    fn coarse_field_examples() {
        let plus = torus(16, 1.0, 0.0, 1);
        let m = coarse_magnetization(&plus, 4, None).unwrap();
        assert!(m.iter().flatten().all(|&v| v == 1.0));
        let mut stripe = torus(64, 1.0, 0.0, 1);
        for y in 32..64 {
            for x in 0..64 {
                let s = stripe.site(x, y);
                stripe.flip(s);
            }
        }
        let m = coarse_magnetization(&stripe, 16, None).unwrap();
        assert_eq!(m[4][3], 1.0);
        assert_eq!(m[12][3], -1.0);
        assert!(m[8][3].abs() < 1.0);
    }

    #[test]
    fn infinite_temperature_and_cold_stability() {
        let mut hot = torus(16, 0.0, 0.0, 1);
        let trace = glauber_trajectory(&mut hot, 400, RateKind::HeatBath, 9).unwrap();
        let mean = trace[100..].iter().map(|r| r.magnetization).sum::<f64>() / 301.0;
        assert!(mean.abs() < 0.05, "{mean}");
        let mut cold = torus(32, 3.0, 0.0, 1);
        let trace = glauber_trajectory(&mut cold, 1000, RateKind::Metropolis, 1).unwrap();
        assert!(trace.iter().all(|r| r.magnetization > 0.9));
        let last = trace.last().unwrap();
        assert!((last.energy - hamiltonian(&cold)).abs() < 1e-9);
    }
}
