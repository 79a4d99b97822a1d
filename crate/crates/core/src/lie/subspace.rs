use nalgebra::{DMatrix, DVector};

use super::MetricLieAlgebra;
use crate::{Error, Result, Tolerances};

/// A linear subspace of a metric Lie algebra: a subalgebra, usually an
/// ideal. Stored by a metric-orthonormal basis (columns of `basis`).
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    basis: DMatrix<f64>,
    marginal: bool,
}

/// Euclidean-orthonormal basis of the column span, thresholding singular
/// values at `rank_tol · max(σ_max, scale)`.
pub(crate) fn column_span(gens: &DMatrix<f64>, scale: f64, tols: &Tolerances) -> (DMatrix<f64>, bool) {
    let n = gens.nrows();
    if gens.ncols() == 0 {
        return (DMatrix::zeros(n, 0), false);
    }
    let svd = gens.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let sigma = &svd.singular_values;
    let threshold = tols.rank_tol * sigma.max().max(scale);
    let mut cols = Vec::new();
    let mut marginal = false;
    for (idx, &s) in sigma.iter().enumerate() {
        if s > threshold {
            cols.push(u.column(idx).clone_owned());
        }
        marginal |= is_marginal(s, threshold, tols);
    }
    (columns(n, &cols), marginal)
}

/// Euclidean-orthonormal basis of `{x : m·x = 0}`.
pub(crate) fn null_space(m: &DMatrix<f64>, scale: f64, tols: &Tolerances) -> (DMatrix<f64>, bool) {
    let n = m.ncols();
    // Pad to square so the SVD returns a full set of right singular vectors.
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigma = &svd.singular_values;
    let threshold = tols.rank_tol * sigma.max().max(scale);
    let mut cols = Vec::new();
    let mut marginal = false;
    for (idx, &s) in sigma.iter().enumerate() {
        if s <= threshold {
            cols.push(v_t.row(idx).transpose());
        }
        marginal |= is_marginal(s, threshold, tols);
    }
    (columns(n, &cols), marginal)
}

fn is_marginal(s: f64, threshold: f64, tols: &Tolerances) -> bool {
    s != 0.0 && threshold > 0.0 && s > threshold / tols.marginal_band && s < threshold * tols.marginal_band
}

fn columns(n: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Modified Gram–Schmidt in the metric, applied twice.
pub(crate) fn metric_orthonormalize(alg: &MetricLieAlgebra, basis: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(basis.ncols());
    for j in 0..basis.ncols() {
        let mut v = basis.column(j).clone_owned();
        for _ in 0..2 {
            for q in &out {
                let p = alg.inner(q, &v);
                v -= q * p;
            }
        }
        let norm = alg.norm(&v);
        if norm > 0.0 {
            out.push(v / norm);
        }
    }
    columns(alg.dim(), &out)
}

impl Ideal {
    /// Span of the columns of `generators`, reduced to a metric-orthonormal
    /// basis. No closure property is checked here.
    pub fn from_span(alg: &MetricLieAlgebra, generators: &DMatrix<f64>, tols: &Tolerances) -> Result<Self> {
        if generators.nrows() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: generators.nrows(),
            });
        }
        let scale = generators.amax();
        let (span, marginal) = column_span(generators, scale, tols);
        Ok(Ideal {
            basis: metric_orthonormalize(alg, &span),
            marginal,
        })
    }

    /// Span of the given coordinate vectors.
    pub fn from_vectors(alg: &MetricLieAlgebra, vectors: &[DVector<f64>], tols: &Tolerances) -> Result<Self> {
        for v in vectors {
            alg.check_len(v)?;
        }
        Self::from_span(alg, &columns(alg.dim(), vectors), tols)
    }

    pub fn zero(dim: usize) -> Self {
        Ideal {
            basis: DMatrix::zeros(dim, 0),
            marginal: false,
        }
    }

    pub fn full(alg: &MetricLieAlgebra) -> Self {
        Ideal {
            basis: metric_orthonormalize(alg, &DMatrix::identity(alg.dim(), alg.dim())),
            marginal: false,
        }
    }

    pub(crate) fn from_orthonormal(basis: DMatrix<f64>, marginal: bool) -> Self {
        Ideal { basis, marginal }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// True when a rank decision that produced this subspace was within the
    /// marginal band of the threshold.
    pub fn marginal(&self) -> bool {
        self.marginal
    }

    /// Metric-orthonormal basis, one vector per column.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<DVector<f64>> {
        self.basis.column_iter().map(|c| c.clone_owned()).collect()
    }

    /// Metric-orthogonal projection onto the subspace.
    pub fn project(&self, alg: &MetricLieAlgebra, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(v.len());
        for q in self.basis.column_iter() {
            let q = q.clone_owned();
            out += &q * alg.inner(&q, v);
        }
        out
    }

    /// Metric-orthogonal projection onto the complement.
    pub fn project_perp(&self, alg: &MetricLieAlgebra, v: &DVector<f64>) -> DVector<f64> {
        v - self.project(alg, v)
    }

    /// Metric norm of the component of `v` outside the subspace.
    pub fn distance(&self, alg: &MetricLieAlgebra, v: &DVector<f64>) -> f64 {
        alg.norm(&self.project_perp(alg, v))
    }

    /// Metric-orthonormal basis of the complement `𝔫⊥`.
    pub fn complement_basis(&self, alg: &MetricLieAlgebra) -> DMatrix<f64> {
        let n = alg.dim();
        let mut cand = DMatrix::zeros(n, n);
        for i in 0..n {
            cand.set_column(i, &self.project_perp(alg, &alg.basis_vector(i)));
        }
        let scale = cand.amax();
        let (span, _) = column_span(&cand, scale.max(1e-300), &Tolerances::default());
        let mut perp = metric_orthonormalize(alg, &span);
        // Re-project to remove round-off leakage into the subspace.
        for j in 0..perp.ncols() {
            let col = self.project_perp(alg, &perp.column(j).clone_owned());
            perp.set_column(j, &col);
        }
        metric_orthonormalize(alg, &perp)
    }

    /// max ‖proj_⊥ [a, b]‖ over basis vectors `a, b` of the subspace.
    pub fn subalgebra_residual(&self, alg: &MetricLieAlgebra) -> f64 {
        let vs = self.basis_vectors();
        let mut r: f64 = 0.0;
        for (i, a) in vs.iter().enumerate() {
            for b in &vs[i + 1..] {
                r = r.max(self.distance(alg, &alg.bracket_unchecked(a, b)));
            }
        }
        r
    }

    /// max ‖proj_⊥ [e_i, b]‖ over the parent basis and subspace basis,
    /// measured against metric-orthonormal parent vectors.
    pub fn ideal_residual(&self, alg: &MetricLieAlgebra) -> f64 {
        let parent = Ideal::full(alg);
        let mut r: f64 = 0.0;
        for x in parent.basis_vectors() {
            for b in self.basis_vectors() {
                r = r.max(self.distance(alg, &alg.bracket_unchecked(&x, &b)));
            }
        }
        r
    }

    pub fn check_subalgebra(&self, alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<()> {
        let residual = self.subalgebra_residual(alg);
        if residual > tols.ideal_tol {
            return Err(Error::NotASubalgebra { residual });
        }
        Ok(())
    }

    pub fn check_ideal(&self, alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<()> {
        let residual = self.ideal_residual(alg);
        if residual > tols.ideal_tol {
            return Err(Error::NotAnIdeal { residual });
        }
        Ok(())
    }
}

/// Span of `[a, b]` over basis vectors of `left` and `right`.
pub(crate) fn commutator(alg: &MetricLieAlgebra, left: &Ideal, right: &Ideal, tols: &Tolerances) -> Ideal {
    let mut gens = Vec::new();
    for a in left.basis_vectors() {
        for b in right.basis_vectors() {
            gens.push(alg.bracket_unchecked(&a, &b));
        }
    }
    let m = columns(alg.dim(), &gens);
    let (span, marginal) = column_span(&m, alg.structure_scale().max(m.amax()), tols);
    Ideal::from_orthonormal(metric_orthonormalize(alg, &span), marginal || left.marginal || right.marginal)
}

/// `[𝔰, 𝔰]` for a subalgebra `𝔰`.
pub fn derived_subalgebra(alg: &MetricLieAlgebra, sub: &Ideal, tols: &Tolerances) -> Result<Ideal> {
    if sub.basis.nrows() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: sub.basis.nrows(),
        });
    }
    sub.check_subalgebra(alg, tols)?;
    let mut gens = Vec::new();
    let vs = sub.basis_vectors();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            gens.push(alg.bracket_unchecked(a, b));
        }
    }
    let m = columns(alg.dim(), &gens);
    let (span, marginal) = column_span(&m, alg.structure_scale().max(m.amax()), tols);
    Ok(Ideal::from_orthonormal(metric_orthonormalize(alg, &span), marginal || sub.marginal))
}

fn algebra_on_basis(alg: &MetricLieAlgebra, basis: &DMatrix<f64>, project: impl Fn(&DVector<f64>) -> DVector<f64>) -> Result<MetricLieAlgebra> {
    let k = basis.ncols();
    if k == 0 {
        return Err(Error::InvalidAlgebra("zero-dimensional algebra".into()));
    }
    let vs: Vec<DVector<f64>> = basis.column_iter().map(|c| c.clone_owned()).collect();
    let mut c = vec![0.0; k * k * k];
    for a in 0..k {
        for b in 0..k {
            let br = project(&alg.bracket_unchecked(&vs[a], &vs[b]));
            for d in 0..k {
                c[(a * k + b) * k + d] = alg.inner(&br, &vs[d]);
            }
        }
    }
    MetricLieAlgebra::from_raw(k, c, DMatrix::identity(k, k))
}

/// The subalgebra `𝔰` as an algebra in its own right, in its orthonormal
/// basis, with the induced metric.
pub fn restrict_to(alg: &MetricLieAlgebra, sub: &Ideal, tols: &Tolerances) -> Result<MetricLieAlgebra> {
    sub.check_subalgebra(alg, tols)?;
    algebra_on_basis(alg, sub.basis(), |v| sub.project(alg, v))
}

/// `𝔤/𝔫` realized on `𝔫⊥` with bracket `proj_⊥ [x, y]`. Returns the
/// quotient algebra (in an orthonormal basis of `𝔫⊥`) and that basis.
pub fn quotient_algebra(alg: &MetricLieAlgebra, ideal: &Ideal, tols: &Tolerances) -> Result<(MetricLieAlgebra, DMatrix<f64>)> {
    ideal.check_ideal(alg, tols)?;
    let perp = ideal.complement_basis(alg);
    let q = algebra_on_basis(alg, &perp, |v| ideal.project_perp(alg, v))?;
    Ok((q, perp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn affine() -> MetricLieAlgebra {
        MetricLieAlgebra::from_brackets(2, &[(0, 1, 1, 1.0)], DMatrix::identity(2, 2), &tols()).unwrap()
    }

    fn example3() -> MetricLieAlgebra {
        MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 1.0), (0, 2, 2, -1.0)], DMatrix::identity(3, 3), &tols()).unwrap()
    }

    #[test]
    fn derived_of_abelian_is_zero() {
        let alg = MetricLieAlgebra::from_brackets(3, &[], DMatrix::identity(3, 3), &tols()).unwrap();
        let d = derived_subalgebra(&alg, &Ideal::full(&alg), &tols()).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn derived_of_affine_is_y() {
        let alg = affine();
        let d = derived_subalgebra(&alg, &Ideal::full(&alg), &tols()).unwrap();
        assert_eq!(d.dim(), 1);
        assert!(d.distance(&alg, &alg.basis_vector(1)) < 1e-14);
    }

    #[test]
    fn derived_of_example3_is_yz() {
        let alg = example3();
        // Rank oracle: the three basis brackets are Y, -Z, 0.
        let gens = DMatrix::from_columns(&[
            alg.bracket(&alg.basis_vector(0), &alg.basis_vector(1)).unwrap(),
            alg.bracket(&alg.basis_vector(0), &alg.basis_vector(2)).unwrap(),
            alg.bracket(&alg.basis_vector(1), &alg.basis_vector(2)).unwrap(),
        ]);
        assert_eq!(gens.rank(1e-12), 2);
        let d = derived_subalgebra(&alg, &Ideal::full(&alg), &tols()).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.distance(&alg, &alg.basis_vector(1)) < 1e-14);
        assert!(d.distance(&alg, &alg.basis_vector(2)) < 1e-14);
        assert!(d.distance(&alg, &alg.basis_vector(0)) > 0.99);
    }

    #[test]
    fn ideal_checks() {
        let alg = example3();
        let z = Ideal::from_vectors(&alg, &[alg.basis_vector(2)], &tols()).unwrap();
        assert!(z.check_ideal(&alg, &tols()).is_ok());
        let x = Ideal::from_vectors(&alg, &[alg.basis_vector(0)], &tols()).unwrap();
        assert!(x.check_subalgebra(&alg, &tols()).is_ok());
        assert!(matches!(x.check_ideal(&alg, &tols()), Err(Error::NotAnIdeal { .. })));
        let yz_mix = Ideal::from_vectors(&alg, &[&alg.basis_vector(1) + &alg.basis_vector(2)], &tols()).unwrap();
        assert!(yz_mix.check_ideal(&alg, &tols()).is_err());
    }

    #[test]
    fn span_drops_dependent_generators() {
        let alg = example3();
        let v = alg.basis_vector(1);
        let ideal = Ideal::from_vectors(&alg, &[v.clone(), &v * 2.0, DVector::zeros(3)], &tols()).unwrap();
        assert_eq!(ideal.dim(), 1);
        assert!(!ideal.marginal());
    }

    #[test]
    fn marginal_rank_is_flagged() {
        let alg = example3();
        let a = alg.basis_vector(1);
        let b = &alg.basis_vector(1) + &alg.basis_vector(2) * 1e-9;
        let ideal = Ideal::from_vectors(&alg, &[a, b], &tols()).unwrap();
        assert!(ideal.marginal());
    }

    #[test]
    fn quotient_of_example3_by_z_is_affine_like() {
        let alg = example3();
        let z = Ideal::from_vectors(&alg, &[alg.basis_vector(2)], &tols()).unwrap();
        let (q, perp) = quotient_algebra(&alg, &z, &tols()).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(perp.ncols(), 2);
        assert!(q.validate(&tols()).valid);
        // tr(ad p_* X) = 1 on the quotient.
        let x_in_q = DVector::from_fn(2, |a, _| alg.inner(&alg.basis_vector(0), &perp.column(a).clone_owned()));
        assert!((q.trace_covector().eval(&x_in_q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restriction_of_abelian_ideal_is_abelian() {
        let alg = example3();
        let yz = Ideal::from_vectors(&alg, &[alg.basis_vector(1), alg.basis_vector(2)], &tols()).unwrap();
        let n = restrict_to(&alg, &yz, &tols()).unwrap();
        assert_eq!(n.dim(), 2);
        assert!(n.structure_scale() < 1e-14);
    }

    #[test]
    fn complement_is_orthogonal_under_nontrivial_metric() {
        let g = DMatrix::from_row_slice(3, 3, &[2.0, 0.5, 0.1, 0.5, 1.0, 0.2, 0.1, 0.2, 3.0]);
        let alg = MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 1.0), (0, 2, 2, -1.0)], g, &tols()).unwrap();
        let z = Ideal::from_vectors(&alg, &[alg.basis_vector(2)], &tols()).unwrap();
        let perp = z.complement_basis(&alg);
        assert_eq!(perp.ncols(), 2);
        for j in 0..2 {
            let f = perp.column(j).clone_owned();
            assert!(alg.inner(&f, &z.basis_vectors()[0]).abs() < 1e-14);
            assert!((alg.norm(&f) - 1.0).abs() < 1e-14);
        }
    }
}
