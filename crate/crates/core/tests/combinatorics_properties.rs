//! Series arithmetic, partition profiles, the Stanley bijection and the
//! pedestal factorization.

use num_bigint::BigInt;
use proptest::prelude::*;
use wulff_core::dual::ln_biguint;
use wulff_core::partition::{enumerate_partitions, profile, Partition};
use wulff_core::poset::Poset;
use wulff_core::series::{bounded_parts_series, euler_series, TruncatedIntSeries};
use wulff_core::skyscraper::{
    brute_force_series, pedestal_polynomial, stanley_forward, stanley_inverse, Diagram,
    PlanePartition, SkewShape,
};
use wulff_core::spatial::{spatial_pedestal_polynomial, spatial_pedestal_polynomial_by_orderings};
use wulff_core::verify::{consistency_shapes, REFERENCE_PEDESTAL_222, REFERENCE_PEDESTAL_223};

fn sparse_series() -> impl Strategy<Value = TruncatedIntSeries> {
    prop::collection::vec((0usize..30, -50i64..50), 0..6).prop_map(|terms| {
        let mut c = vec![0i64; 30];
        for (k, v) in terms {
            c[k] += v;
        }
        TruncatedIntSeries::from_coeffs(c, 29)
    })
}

fn shape_strategy() -> impl Strategy<Value = SkewShape> {
    (1usize..5, 1usize..5, prop::collection::vec(0usize..5, 0..4)).prop_map(|(m, n, hole)| {
        let mut hole: Vec<usize> = hole.into_iter().map(|h| h.min(n)).take(m).collect();
        hole.sort_unstable_by(|a, b| b.cmp(a));
        hole.retain(|&h| h > 0);
        SkewShape::new(Diagram::rectangle(m, n), Diagram::new(hole).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in sparse_series(), b in sparse_series(), c in sparse_series()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn truncation_commutes_with_products(a in sparse_series(), b in sparse_series(), d in 0usize..30) {
        prop_assert_eq!(a.mul(&b).truncate(d), a.truncate(d).mul(&b.truncate(d)));
    }

    #[test]
    fn profile_round_trip(parts in prop::collection::vec(1u32..40, 0..25)) {
        let p = Partition::from_unsorted(parts);
        let prof = profile(&p);
        prop_assert_eq!(prof.area(), p.volume());
        prop_assert!(prof.heights.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(prof.to_partition(), p);
    }

    /// Random skyscrapers on random skew shapes split into pedestal plus
    /// partition and reassemble.
    #[test]
    fn stanley_bijection(shape in shape_strategy(), seeds in prop::collection::vec(0u32..25, 16)) {
        prop_assume!(shape.size() > 0);
        let poset = shape.poset();
        let mut heights = vec![0u32; shape.size()];
        for site in 0..shape.size() {
            let cap = poset.preds(site).iter().map(|&p| heights[p]).min().unwrap_or(24);
            heights[site] = seeds[site % seeds.len()].min(cap);
        }
        let s = PlanePartition::new(shape.clone(), heights).unwrap();
        let (ped, y) = stanley_forward(&s).unwrap();
        prop_assert!(poset.is_pedestal(ped.heights()));
        prop_assert_eq!(ped.volume() + y.volume(), s.volume());
        prop_assert!(y.len() <= shape.size());
        prop_assert_eq!(stanley_inverse(&ped, &y).unwrap(), s);
    }

    #[test]
    fn forward_after_inverse(shape in shape_strategy(), pick in 0usize..1000, parts in prop::collection::vec(1u32..6, 0..6)) {
        prop_assume!(shape.size() > 0);
        let poset = shape.poset();
        let mut pedestals = Vec::new();
        poset.for_each_linear_extension(|ord| pedestals.push(poset.pedestal_from_ordering(ord).unwrap()));
        let ped = PlanePartition::new(shape.clone(), pedestals[pick % pedestals.len()].clone()).unwrap();
        let y = Partition::from_unsorted(parts.into_iter().take(shape.size()).collect());
        let s = stanley_inverse(&ped, &y).unwrap();
        let (ped2, y2) = stanley_forward(&s).unwrap();
        prop_assert_eq!(ped2, ped);
        prop_assert_eq!(y2, y);
    }
}

#[test]
fn oracle_counts_match_euler_series() {
    let series = euler_series(40);
    for n in 0..=40 {
        let count = enumerate_partitions(n, None, false, false).unwrap().len();
        assert_eq!(BigInt::from(count), *series.coeff(n));
    }
    for k in 1..=5 {
        let bounded = bounded_parts_series(k, 30).unwrap();
        for n in 0..=30 {
            let count = enumerate_partitions(n, Some(k), false, false).unwrap().len();
            assert_eq!(BigInt::from(count), *bounded.coeff(n), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn hrr_sandwich() {
    let series = euler_series(200);
    let ln = |n: usize| ln_biguint(series.coeff(n).magnitude());
    assert!((1..200).all(|n| ln(n + 1) >= ln(n)));
    for n in [100usize, 150, 200] {
        let nf = n as f64;
        let asym = std::f64::consts::PI * (2.0 * nf / 3.0).sqrt() - (4.0 * nf * 3f64.sqrt()).ln();
        assert!((ln(n) - asym).abs() <= 0.1, "n = {n}");
    }
}

#[test]
fn factorization_on_consistency_shapes() {
    for (b, a) in consistency_shapes() {
        let (outer, inner) = (Diagram::new(b).unwrap(), Diagram::new(a).unwrap());
        let shape = SkewShape::new(outer.clone(), inner.clone()).unwrap();
        let ped = pedestal_polynomial(&outer, &inner).unwrap();
        let product = ped.to_series(20).mul(&bounded_parts_series(shape.size(), 20).unwrap());
        assert_eq!(brute_force_series(&shape, 20), product);
    }
}

#[test]
fn pedestal_counts_equal_linear_extensions() {
    for (m, n) in [(2, 2), (2, 3)] {
        let shape = SkewShape::rectangle(m, n);
        let g = pedestal_polynomial(shape.outer(), shape.inner()).unwrap();
        assert_eq!(g.eval_at_one(), BigInt::from(shape.poset().count_linear_extensions()));
    }
    let g = spatial_pedestal_polynomial(2, 2, 2, false).unwrap();
    assert_eq!(g.eval_at_one(), BigInt::from(Poset::box3(2, 2, 2).count_linear_extensions()));
    assert_eq!(g, spatial_pedestal_polynomial_by_orderings(2, 2, 2, false).unwrap());
}

#[test]
fn reference_pedestals_are_palindromic() {
    use wulff_core::series::Polynomial;
    assert!(Polynomial::from_i64(&REFERENCE_PEDESTAL_222).is_palindromic());
    assert!(Polynomial::from_i64(&REFERENCE_PEDESTAL_223).is_palindromic());
}
