mod common;

use proptest::prelude::*;
use rand::Rng;
use regionres::*;

fn cloud(seed: u64, n: usize, dim: usize) -> PointCloud {
    let mut rng = common::rng(seed);
    PointCloud::new((0..n * dim).map(|_| rng.random::<f64>()).collect(), dim).unwrap()
}

fn kernels() -> impl Strategy<Value = Kernel> {
    prop_oneof![
        (0.05..0.8f64).prop_map(|r| Kernel::radial(r).unwrap()),
        (0.05..0.5f64).prop_map(|s| Kernel::gaussian(s).unwrap()),
        (1..6usize).prop_map(|k| Kernel::knn(k).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weights_are_bit_symmetric(seed in any::<u64>(), n in 8..60usize, kernel in kernels()) {
        let g = build_graph(&cloud(seed, n, 2), &kernel, &ScalingMode::None).unwrap();
        for i in 0..n {
            prop_assert_eq!(g.weight(i, i), 0.0);
            for (j, w) in g.neighbors(i) {
                prop_assert_eq!(w.to_bits(), g.weight(j, i).to_bits());
            }
        }
    }

    #[test]
    fn pointwise_is_unscaled_over_n_squared(seed in any::<u64>(), n in 8..60usize, kernel in kernels()) {
        let c = cloud(seed, n, 3);
        let plain = build_graph(&c, &kernel, &ScalingMode::None).unwrap();
        let pointwise = build_graph(&c, &kernel, &ScalingMode::Pointwise).unwrap();
        let scale = 1.0 / (n as f64 * n as f64);
        for i in 0..n {
            for (j, w) in plain.neighbors(i) {
                prop_assert_eq!(pointwise.weight(i, j), w * scale);
            }
        }
        prop_assert_eq!(plain.edge_count(), pointwise.edge_count());
    }

    #[test]
    fn uniform_regionwise_equals_pointwise(seed in any::<u64>(), n in 8..60usize, kernel in kernels()) {
        let c = cloud(seed, n, 2);
        let pointwise = build_graph(&c, &kernel, &ScalingMode::Pointwise).unwrap();
        let regionwise = build_graph(&c, &kernel, &ScalingMode::Regionwise(vec![1.0 / n as f64; n])).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((pointwise.weight(i, j) - regionwise.weight(i, j)).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn knn_contains_each_directed_neighbourhood(seed in any::<u64>(), n in 6..50usize, k in 1..5usize) {
        let c = cloud(seed, n, 2);
        let adj = knn_adjacency(&c, k).unwrap();
        for i in 0..n {
            for (_, j) in regionres::kernel::nearest_neighbors(&c, i, k) {
                prop_assert_eq!(adj.get(i, j), 1.0);
                prop_assert_eq!(adj.get(j, i), 1.0);
            }
        }
    }

    #[test]
    fn laplacian_is_positive_semidefinite(seed in any::<u64>(), n in 2..40usize) {
        let mut rng = common::rng(seed);
        let g = common::random_connected(n, 0.3, &mut rng);
        let l = laplacian(&g);
        for _ in 0..100 {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let q: f64 = l.mul_vec(&v).iter().zip(&v).map(|(a, b)| a * b).sum();
            prop_assert!(q >= -1e-12);
        }
    }
}
