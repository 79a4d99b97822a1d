use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use specsub_core::fixtures::{lie_catalog, lie_fixture, parse_lie, parse_warp, warp_catalog, write_lie, write_warp};
use specsub_core::group::lambda0_amenable;
use specsub_core::lie::{classify, koszul_connection, mean_curvature_identity_residual, Ideal, MetricLieAlgebra};
use specsub_core::Tolerances;

fn tols() -> Tolerances {
    Tolerances::default()
}

fn fixtures() -> Vec<MetricLieAlgebra> {
    lie_catalog().into_iter().map(|f| f.algebra).collect()
}

fn vec_strategy(n: usize) -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-3.0..3.0f64, n).prop_map(DVector::from_vec)
}

fn ip(alg: &MetricLieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    (x.transpose() * alg.metric() * y)[(0, 0)]
}

/// Random SPD metric `AᵀA + I/2`.
fn spd(n: usize, entries: &[f64]) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |i, j| entries[(i * n + j) % entries.len()]);
    a.transpose() * &a + DMatrix::identity(n, n) * 0.5
}

/// Orthogonal matrix from the QR factorization of a random matrix.
fn orthogonal(n: usize, entries: &[f64]) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |i, j| entries[(i * n + j) % entries.len()] + if i == j { 2.0 } else { 0.0 });
    a.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn torsion_free(idx in 0usize..13, xs in vec_strategy(5), ys in vec_strategy(5)) {
        let all = fixtures();
        let alg = &all[idx % all.len()];
        let n = alg.dim();
        let x = DVector::from_iterator(n, xs.iter().copied().take(n));
        let y = DVector::from_iterator(n, ys.iter().copied().take(n));
        let t = koszul_connection(alg, &x, &y).unwrap() - koszul_connection(alg, &y, &x).unwrap() - alg.bracket(&x, &y).unwrap();
        prop_assert!(t.amax() < 1e-10);
    }

    #[test]
    fn metric_compatible(idx in 0usize..13, xs in vec_strategy(5), ys in vec_strategy(5), zs in vec_strategy(5), g in prop::collection::vec(-1.0..1.0f64, 25)) {
        let base = &fixtures()[idx % lie_catalog().len()];
        let n = base.dim();
        let alg = MetricLieAlgebra::new(n, base.structure().to_vec(), spd(n, &g), &tols()).unwrap();
        let take = |v: &DVector<f64>| DVector::from_iterator(n, v.iter().copied().take(n));
        let (x, y, z) = (take(&xs), take(&ys), take(&zs));
        // Left-invariant fields have constant inner products.
        let lhs = ip(&alg, &koszul_connection(&alg, &x, &y).unwrap(), &z) + ip(&alg, &y, &koszul_connection(&alg, &x, &z).unwrap());
        prop_assert!(lhs.abs() < 1e-9 * (1.0 + x.norm() * y.norm() * z.norm()));
    }

    #[test]
    fn trace_covector_is_linear_and_is_trace_of_ad(idx in 0usize..13, xs in vec_strategy(5), ys in vec_strategy(5), a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let alg = &fixtures()[idx % lie_catalog().len()];
        let n = alg.dim();
        let x = DVector::from_iterator(n, xs.iter().copied().take(n));
        let y = DVector::from_iterator(n, ys.iter().copied().take(n));
        let tau = alg.trace_covector();
        let combo = &x * a + &y * b;
        prop_assert!((tau.eval(&combo) - a * tau.eval(&x) - b * tau.eval(&y)).abs() < 1e-12 * (1.0 + combo.norm()));
        prop_assert!((tau.eval(&x) - alg.ad_matrix(&x).unwrap().trace()).abs() < 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn classification_is_basis_independent(idx in 0usize..13, q in prop::collection::vec(-1.0..1.0f64, 25)) {
        let alg = &fixtures()[idx % lie_catalog().len()];
        let p = orthogonal(alg.dim(), &q);
        let rotated = alg.change_basis(&p).unwrap();
        let (a, b) = (classify(alg, &tols()).unwrap(), classify(&rotated, &tols()).unwrap());
        prop_assert_eq!(
            (a.unimodular, a.solvable, a.nilpotent, a.semisimple, a.amenable),
            (b.unimodular, b.solvable, b.nilpotent, b.semisimple, b.amenable)
        );
        prop_assert_eq!(a.radical.dim(), b.radical.dim());
        prop_assert_eq!(a.derived_series_lengths, b.derived_series_lengths);
    }

    #[test]
    fn mean_curvature_identity_random_metric(g in prop::collection::vec(-1.0..1.0f64, 25)) {
        for f in lie_catalog() {
            let n = f.algebra.dim();
            let alg = MetricLieAlgebra::new(n, f.algebra.structure().to_vec(), spd(n, &g), &tols()).unwrap();
            for (_, gens) in &f.ideals {
                let ideal = Ideal::from_vectors(&alg, gens, &tols()).unwrap();
                prop_assert!(mean_curvature_identity_residual(&alg, &ideal, &tols()).unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn lambda0_scales_inversely_with_metric(c in 0.1..5.0f64, t in 0.1..10.0f64) {
        let alg = lie_fixture("affine2", Some(c)).unwrap().algebra;
        let l = lambda0_amenable(&alg, &tols()).unwrap().lambda0.unwrap();
        let ls = lambda0_amenable(&alg.scaled_metric(t), &tols()).unwrap().lambda0.unwrap();
        prop_assert!((ls - l / t).abs() < 1e-12 * (1.0 + l / t));
    }
}

#[test]
fn catalog_fixtures_validate() {
    for f in lie_catalog() {
        let r = f.algebra.validate(&tols());
        assert!(r.valid, "{}: {r:?}", f.name);
    }
}

#[test]
fn unimodular_amenable_fixtures_have_zero_lambda0() {
    for name in ["heisenberg3", "so3", "paper_example3", "abelian"] {
        let alg = lie_fixture(name, None).unwrap().algebra;
        assert_eq!(lambda0_amenable(&alg, &tols()).unwrap().lambda0, Some(0.0), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn text_round_trip_with_random_metric(idx in 0usize..64, g in prop::collection::vec(-1.0..1.0f64, 25)) {
        let cat = lie_catalog();
        let base = &cat[idx % cat.len()].algebra;
        let n = base.dim();
        let alg = MetricLieAlgebra::new(n, base.structure().to_vec(), spd(n, &g), &tols()).unwrap();
        let back = parse_lie(&write_lie(&alg), &tols()).unwrap();
        prop_assert_eq!(back.structure(), alg.structure());
        prop_assert_eq!(back.metric(), alg.metric());
    }
}

#[test]
fn warp_text_round_trip() {
    for f in warp_catalog() {
        assert_eq!(parse_warp(&write_warp(&f.spec)).unwrap(), f.spec, "{}", f.name);
    }
}
