//! Grand-canonical samplers and Glauber dynamics.

use proptest::prelude::*;
use wulff_core::ensemble::{
    expected_volume, expected_volume_truncated, sample_plane_partition, sample_young,
    volume_variance, GrandCanonicalSpec, Model,
};
use wulff_core::ising::{
    detailed_balance_defect, glauber_trajectory, hamiltonian, BoundaryCondition, RateKind,
    SpinLattice, Topology,
};

fn model(k: usize) -> Model {
    [Model::Young, Model::Plane][k % 2]
}

fn topology(k: usize) -> Topology {
    [
        Topology::Torus,
        Topology::Box(BoundaryCondition::Plus),
        Topology::Box(BoundaryCondition::Minus),
        Topology::Box(BoundaryCondition::Split { nx: 1, ny: 2 }),
    ][k % 4]
}

/// Sites on a split line take `+1`, so split conditions have no exact mirror.
fn mirrored(t: Topology) -> Topology {
    match t {
        Topology::Box(BoundaryCondition::Plus) => Topology::Box(BoundaryCondition::Minus),
        Topology::Box(BoundaryCondition::Minus) => Topology::Box(BoundaryCondition::Plus),
        t => t,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn seeded_samples_repeat(k in 0usize..2, x in 0.05f64..0.97, seed in any::<u64>(), index in 0u64..1000) {
        let spec = GrandCanonicalSpec::new(model(k), x, seed).unwrap();
        match model(k) {
            Model::Young => prop_assert_eq!(
                sample_young(&spec, &mut spec.rng(index)),
                sample_young(&spec, &mut spec.rng(index))
            ),
            Model::Plane => prop_assert_eq!(
                sample_plane_partition(&spec, &mut spec.rng(index)),
                sample_plane_partition(&spec, &mut spec.rng(index))
            ),
        }
    }

    #[test]
    fn truncation_is_sound(k in 0usize..2, x in 0.05f64..0.999) {
        let spec = GrandCanonicalSpec::new(model(k), x, 0).unwrap();
        let a = expected_volume_truncated(model(k), x, spec.l_max).unwrap();
        let b = expected_volume_truncated(model(k), x, 2 * spec.l_max).unwrap();
        prop_assert!((b - a).abs() <= 1e-9 * b);
    }

    #[test]
    fn detailed_balance(l in 2usize..4, t in 0usize..4, beta in 0.0f64..2.0, h in -1.5f64..1.5, heat in any::<bool>()) {
        let lat = SpinLattice::new(l, topology(t), beta, h, 1).unwrap();
        let kind = if heat { RateKind::HeatBath } else { RateKind::Metropolis };
        prop_assert!(detailed_balance_defect(&lat, kind).unwrap() < 1e-12);
    }

    #[test]
    fn spin_flip_symmetry(l in 2usize..6, t in 0usize..3, h in -1.5f64..1.5, bits in any::<u64>()) {
        let mut a = SpinLattice::new(l, topology(t), 0.5, h, 1).unwrap();
        let mut b = SpinLattice::new(l, mirrored(topology(t)), 0.5, -h, 1).unwrap();
        let spins: Vec<i8> = (0..l * l).map(|i| if (bits >> (i % 64)) & 1 == 1 { 1 } else { -1 }).collect();
        a.set_spins(spins.clone()).unwrap();
        b.set_spins(spins.iter().map(|s| -s).collect()).unwrap();
        prop_assert!((hamiltonian(&a) - hamiltonian(&b)).abs() < 1e-9);
    }

    #[test]
    fn trajectories_repeat(seed in any::<u64>(), t in 0usize..4) {
        let mut a = SpinLattice::new(8, topology(t), 0.6, 0.2, -1).unwrap();
        let mut b = a.clone();
        prop_assert_eq!(
            glauber_trajectory(&mut a, 20, RateKind::HeatBath, seed).unwrap(),
            glauber_trajectory(&mut b, 20, RateKind::HeatBath, seed).unwrap()
        );
    }
}

#[test]
fn mean_volume_within_four_sigma() {
    for (m, x) in [(Model::Young, 0.9), (Model::Plane, 0.8)] {
        let spec = GrandCanonicalSpec::new(m, x, 99).unwrap();
        let samples = 100_000u64;
        let total: f64 = (0..samples)
            .map(|i| match m {
                Model::Young => sample_young(&spec, &mut spec.rng(i)).volume() as f64,
                Model::Plane => sample_plane_partition(&spec, &mut spec.rng(i)).volume as f64,
            })
            .sum();
        let mean = total / samples as f64;
        let sigma = (volume_variance(m, x).unwrap() / samples as f64).sqrt();
        let z = (mean - expected_volume(m, x).unwrap()) / sigma;
        assert!(z.abs() < 4.0, "{m:?}: z = {z}");
    }
}
