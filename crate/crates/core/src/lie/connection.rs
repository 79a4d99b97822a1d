use nalgebra::DVector;

use super::{Ideal, MetricLieAlgebra};
use crate::{Result, Tolerances};

/// Levi-Civita connection on left-invariant fields via the Koszul formula
///
/// `⟨∇_x y, z⟩ = ½(⟨[x,y],z⟩ − ⟨[y,z],x⟩ + ⟨[z,x],y⟩)`,
///
/// solved against the metric for `∇_x y`.
pub fn koszul_connection(alg: &MetricLieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    alg.check_len(x)?;
    alg.check_len(y)?;
    let n = alg.dim();
    let xy = alg.bracket_unchecked(x, y);
    let g_xy = alg.metric() * &xy;
    let g_x = alg.metric() * x;
    let g_y = alg.metric() * y;
    let mut rhs = DVector::zeros(n);
    for k in 0..n {
        let ek = alg.basis_vector(k);
        let y_ek = alg.bracket_unchecked(y, &ek);
        let ek_x = alg.bracket_unchecked(&ek, x);
        rhs[k] = 0.5 * (g_xy[k] - g_x.dot(&y_ek) + g_y.dot(&ek_x));
    }
    Ok(alg.solve_metric(&rhs))
}

/// Mean curvature `H = Σ_i (∇_{E_i} E_i)^⊥` of the orbits of the normal
/// subgroup with Lie algebra `ideal`, summed over an orthonormal basis of the
/// ideal. `H` lies in `𝔫⊥`.
pub fn mean_curvature(alg: &MetricLieAlgebra, ideal: &Ideal, tols: &Tolerances) -> Result<DVector<f64>> {
    ideal.check_ideal(alg, tols)?;
    let mut h = DVector::zeros(alg.dim());
    for e in ideal.basis_vectors() {
        h += koszul_connection(alg, &e, &e)?;
    }
    Ok(ideal.project_perp(alg, &h))
}

/// `tr(ad_{𝔤/𝔫} p_*x)` on the quotient realized on `𝔫⊥`.
pub fn quotient_trace(alg: &MetricLieAlgebra, ideal: &Ideal, x: &DVector<f64>) -> Result<f64> {
    alg.check_len(x)?;
    let perp = ideal.complement_basis(alg);
    let px = ideal.project_perp(alg, x);
    Ok(perp
        .column_iter()
        .map(|f| {
            let f = f.clone_owned();
            alg.inner(&alg.bracket_unchecked(&px, &f), &f)
        })
        .sum())
}

/// `‖H‖² − tr(ad H) + tr(ad_{𝔤/𝔫} p_*H)`, which vanishes for every ideal
/// (the divergence of a left-invariant field on `G/N` is `−tr(ad)`).
pub fn mean_curvature_identity_residual(alg: &MetricLieAlgebra, ideal: &Ideal, tols: &Tolerances) -> Result<f64> {
    let h = mean_curvature(alg, ideal, tols)?;
    let norm_sq = alg.inner(&h, &h);
    let tr = alg.trace_covector().eval(&h);
    let tr_q = quotient_trace(alg, ideal, &h)?;
    Ok(norm_sq - tr + tr_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn affine_gc(c: f64) -> MetricLieAlgebra {
        let g = DMatrix::from_row_slice(2, 2, &[1.0 / c, 0.0, 0.0, c]);
        MetricLieAlgebra::from_brackets(2, &[(0, 1, 1, 1.0)], g, &t()).unwrap()
    }

    #[test]
    fn abelian_connection_vanishes() {
        let alg = MetricLieAlgebra::from_brackets(3, &[], DMatrix::identity(3, 3), &t()).unwrap();
        let x = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let y = DVector::from_vec(vec![-1.0, 0.5, 0.0]);
        assert_eq!(koszul_connection(&alg, &x, &y).unwrap(), DVector::zeros(3));
    }

    #[test]
    fn affine_gc_connection_by_hand() {
        // E1 = √c X, E2 = Y/√c orthonormal, [E1,E2] = √c E2.
        // ⟨∇_{E2}E2, E1⟩ = ½(0 + √c + √c) = √c; the E2 component is 0.
        for &c in &[0.25, 1.0, 4.0] {
            let alg = affine_gc(c);
            let e1 = DVector::from_vec(vec![c.sqrt(), 0.0]);
            let e2 = DVector::from_vec(vec![0.0, 1.0 / c.sqrt()]);
            let n22 = koszul_connection(&alg, &e2, &e2).unwrap();
            assert!((n22 - &e1 * c.sqrt()).amax() < 1e-14);
            let n11 = koszul_connection(&alg, &e1, &e1).unwrap();
            assert!(n11.amax() < 1e-14);
        }
    }

    #[test]
    fn affine_mean_curvature_is_c_x() {
        for &c in &[0.25, 1.0, 4.0] {
            let alg = affine_gc(c);
            let n = Ideal::from_vectors(&alg, &[alg.basis_vector(1)], &t()).unwrap();
            let h = mean_curvature(&alg, &n, &t()).unwrap();
            assert!((&h - DVector::from_vec(vec![c, 0.0])).amax() < 1e-13);
            assert!((alg.inner(&h, &h) - c).abs() < 1e-13);
            assert!(mean_curvature_identity_residual(&alg, &n, &t()).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn abelian_mean_curvature_vanishes() {
        let alg = MetricLieAlgebra::from_brackets(3, &[], DMatrix::identity(3, 3), &t()).unwrap();
        let n = Ideal::from_vectors(&alg, &[alg.basis_vector(0), alg.basis_vector(2)], &t()).unwrap();
        assert!(mean_curvature(&alg, &n, &t()).unwrap().amax() < 1e-15);
    }

    #[test]
    fn example3_z_ideal() {
        let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 1.0), (0, 2, 2, -1.0)], DMatrix::identity(3, 3), &t()).unwrap();
        let n = Ideal::from_vectors(&alg, &[alg.basis_vector(2)], &t()).unwrap();
        let h = mean_curvature(&alg, &n, &t()).unwrap();
        assert!((&h + alg.basis_vector(0)).amax() < 1e-14);
        assert!(alg.trace_covector().eval(&h).abs() < 1e-14);
        assert!((quotient_trace(&alg, &n, &h).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let alg = affine_gc(1.0);
        let x = Ideal::from_vectors(&alg, &[alg.basis_vector(0)], &t()).unwrap();
        assert!(mean_curvature(&alg, &x, &t()).is_err());
    }
}
