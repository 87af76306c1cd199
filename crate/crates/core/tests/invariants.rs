use std::sync::OnceLock;

use proptest::prelude::*;
use tracecode::analysis::{Method, WeightDistribution};
use tracecode::{TraceCode, Variant};

fn code() -> &'static TraceCode {
    static CODE: OnceLock<TraceCode> = OnceLock::new();
    CODE.get_or_init(|| TraceCode::build(3, 2, 2, Variant::Lift).unwrap())
}

fn units() -> &'static TraceCode {
    static CODE: OnceLock<TraceCode> = OnceLock::new();
    CODE.get_or_init(|| TraceCode::build(5, 1, 1, Variant::Units).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_agrees_with_gray_image(k in 0u64..6561) {
        let c = code();
        let r = c.ring().from_index(k);
        let bytes = c.gray_bytes(&r).unwrap();
        prop_assert_eq!(c.lee_weight(&r), bytes.iter().filter(|&&b| b != 0).count() as u64);
        prop_assert_eq!(c.lee_weight(&r) % 4, 0);
    }

    #[test]
    fn gray_image_is_linear_and_isometric(a in 0u64..6561, b in 0u64..6561) {
        let c = code();
        let ring = c.ring();
        let (r, s) = (ring.from_index(a), ring.from_index(b));
        let (gr, gs) = (c.gray_bytes(&r).unwrap(), c.gray_bytes(&s).unwrap());
        let sum = c.gray_bytes(&ring.add(&r, &s)).unwrap();
        prop_assert!(gr.iter().zip(&gs).zip(&sum).all(|((x, y), z)| (x + y) % 3 == *z));
        let distance = gr.iter().zip(&gs).filter(|(x, y)| x != y).count() as u64;
        prop_assert_eq!(distance, c.lee_weight(&ring.sub(&r, &s)));
    }

    #[test]
    fn unit_coordinates_weight_is_scale_invariant(k in 0u64..625, lambda in 1u64..5) {
        let c = units();
        let r = c.ring().from_index(k);
        prop_assert_eq!(c.lee_weight(&c.ring().scale(lambda, &r)), c.lee_weight(&r));
    }

    #[test]
    fn merge_order_does_not_matter(weights in prop::collection::vec(0u64..20, 1..200), split in 0usize..200) {
        let split = split.min(weights.len());
        let whole = WeightDistribution::from_rows(Method::Exhaustive, weights.iter().map(|&w| (w, 1)));
        let left = WeightDistribution::from_rows(Method::Exhaustive, weights[..split].iter().map(|&w| (w, 1)));
        let right = WeightDistribution::from_rows(Method::Exhaustive, weights[split..].iter().map(|&w| (w, 1)));
        prop_assert_eq!(&left.clone().merge(&right), &whole);
        prop_assert_eq!(&right.merge(&left), &whole);
    }
}
