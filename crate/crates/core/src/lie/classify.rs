use nalgebra::SymmetricEigen;

use super::subspace::{commutator, derived_subalgebra, metric_orthonormalize, null_space, quotient_algebra};
use super::{Ideal, MetricLieAlgebra};
use crate::{Result, Tolerances};

/// How amenability was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmenabilityPath {
    /// The radical is the whole algebra.
    Solvable,
    /// The Levi quotient `𝔤/𝔯` has negative-definite Killing form.
    CompactLeviQuotient,
    /// The Levi quotient has a Killing form that is not negative definite.
    NonCompactLeviQuotient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub unimodular: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub semisimple: bool,
    pub amenable: bool,
    pub radical: Ideal,
    /// Dimensions of `𝔤 ⊇ [𝔤,𝔤] ⊇ …` until the series stabilizes.
    pub derived_series_lengths: Vec<usize>,
    /// Dimensions of `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …`.
    pub lower_central_lengths: Vec<usize>,
    pub amenability_path: AmenabilityPath,
    /// Some rank decision sat inside the marginal band.
    pub numerically_marginal: bool,
}

fn series(alg: &MetricLieAlgebra, step: impl Fn(&Ideal) -> Ideal) -> (Vec<usize>, bool) {
    let mut current = Ideal::full(alg);
    let mut lengths = vec![current.dim()];
    let mut marginal = false;
    while !current.is_zero() {
        let next = step(&current);
        marginal |= next.marginal();
        if next.dim() == current.dim() {
            break;
        }
        lengths.push(next.dim());
        current = next;
    }
    (lengths, marginal)
}

/// The radical as the Killing-orthogonal complement of `[𝔤, 𝔤]`.
fn radical(alg: &MetricLieAlgebra, derived: &Ideal, tols: &Tolerances) -> Ideal {
    if derived.is_zero() {
        return Ideal::full(alg);
    }
    let killing = alg.killing_form();
    let m = derived.basis().transpose() * &killing;
    // Killing entries are sums of n products of structure constants; noise
    // must be judged against that, not against the (possibly tiny) form.
    let scale = killing.amax().max(alg.dim() as f64 * alg.structure_scale().powi(2));
    let (null, marginal) = null_space(&m, scale, tols);
    Ideal::from_orthonormal(metric_orthonormalize(alg, &null), marginal || derived.marginal())
}

pub fn classify(alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<ClassificationReport> {
    let full = Ideal::full(alg);
    let unimodular = alg.is_unimodular(tols.unimodular_tol);

    let (derived_series_lengths, m1) = series(alg, |cur| {
        derived_subalgebra(alg, cur, tols).unwrap_or_else(|_| Ideal::zero(alg.dim()))
    });
    let (lower_central_lengths, m2) = series(alg, |cur| commutator(alg, &full, cur, tols));
    let solvable = *derived_series_lengths.last().unwrap() == 0;
    let nilpotent = *lower_central_lengths.last().unwrap() == 0;

    let derived = derived_subalgebra(alg, &full, tols)?;
    let radical = radical(alg, &derived, tols);
    let semisimple = radical.is_zero();

    let amenability_path = if radical.dim() == alg.dim() {
        AmenabilityPath::Solvable
    } else {
        let (levi, _) = quotient_algebra(alg, &radical, tols)?;
        let killing = levi.killing_form();
        let scale = killing.amax().max(levi.dim() as f64 * levi.structure_scale().powi(2)).max(f64::MIN_POSITIVE);
        let max_eig = SymmetricEigen::new(killing).eigenvalues.max();
        if max_eig < -tols.rank_tol * scale {
            AmenabilityPath::CompactLeviQuotient
        } else {
            AmenabilityPath::NonCompactLeviQuotient
        }
    };
    let amenable = amenability_path != AmenabilityPath::NonCompactLeviQuotient;
    let numerically_marginal = m1 || m2 || radical.marginal();

    Ok(ClassificationReport {
        unimodular,
        solvable,
        nilpotent,
        semisimple,
        amenable,
        radical,
        derived_series_lengths,
        lower_central_lengths,
        amenability_path,
        numerically_marginal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    /// Killing-form signature `(positive, negative, zero)`.
    fn signature(b: &DMatrix<f64>) -> (usize, usize, usize) {
        let eig = SymmetricEigen::new(b.clone()).eigenvalues;
        let pos = eig.iter().filter(|&&v| v > 1e-9).count();
        let neg = eig.iter().filter(|&&v| v < -1e-9).count();
        (pos, neg, eig.len() - pos - neg)
    }

    fn id(n: usize) -> DMatrix<f64> {
        DMatrix::identity(n, n)
    }

    fn so3() -> MetricLieAlgebra {
        MetricLieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)], id(3), &t()).unwrap()
    }

    fn sl2() -> MetricLieAlgebra {
        // H, E, F
        MetricLieAlgebra::from_brackets(3, &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)], id(3), &t()).unwrap()
    }

    /// Killing form by explicit trace of products of bracket-built matrices.
    fn killing_oracle(alg: &MetricLieAlgebra) -> DMatrix<f64> {
        let n = alg.dim();
        let ad = |i: usize| {
            DMatrix::from_fn(n, n, |r, c| alg.bracket(&alg.basis_vector(i), &alg.basis_vector(c)).unwrap()[r])
        };
        DMatrix::from_fn(n, n, |i, j| {
            let (a, b) = (ad(i), ad(j));
            let mut tr = 0.0;
            for r in 0..n {
                for k in 0..n {
                    tr += a[(r, k)] * b[(k, r)];
                }
            }
            tr
        })
    }

    #[test]
    fn killing_so3_is_minus_two_identity() {
        let b = so3().killing_form();
        assert!((&b - killing_oracle(&so3())).amax() < 1e-14);
        assert!((b + id(3) * 2.0).amax() < 1e-14);
    }

    #[test]
    fn killing_sl2_entries_and_signature() {
        let b = sl2().killing_form();
        assert!((&b - killing_oracle(&sl2())).amax() < 1e-14);
        assert_eq!(b[(0, 0)], 8.0);
        assert_eq!(b[(1, 2)], 4.0);
        assert_eq!(signature(&b), (2, 1, 0));
    }

    #[test]
    fn killing_is_ad_invariant() {
        let alg = sl2();
        let b = alg.killing_form();
        let x = nalgebra::DVector::from_vec(vec![0.3, -1.2, 0.7]);
        let y = nalgebra::DVector::from_vec(vec![1.1, 0.4, -0.5]);
        let z = nalgebra::DVector::from_vec(vec![-0.2, 0.9, 2.0]);
        let bf = |u: &nalgebra::DVector<f64>, v: &nalgebra::DVector<f64>| (u.transpose() * &b * v)[(0, 0)];
        let lhs = bf(&alg.bracket(&x, &y).unwrap(), &z) + bf(&y, &alg.bracket(&x, &z).unwrap());
        assert!(lhs.abs() < 1e-12);
    }

    #[test]
    fn killing_of_abelian_is_zero() {
        let alg = MetricLieAlgebra::from_brackets(4, &[], id(4), &t()).unwrap();
        assert_eq!(alg.killing_form(), DMatrix::zeros(4, 4));
    }

    #[test]
    fn affine_classification() {
        let alg = MetricLieAlgebra::from_brackets(2, &[(0, 1, 1, 1.0)], id(2), &t()).unwrap();
        let r = classify(&alg, &t()).unwrap();
        assert!(r.solvable && !r.nilpotent && r.amenable && !r.unimodular && !r.semisimple);
        assert_eq!(r.radical.dim(), 2);
        assert_eq!(r.derived_series_lengths, vec![2, 1, 0]);
        assert_eq!(r.lower_central_lengths, vec![2, 1]);
    }

    #[test]
    fn sl2_is_semisimple_non_amenable() {
        let r = classify(&sl2(), &t()).unwrap();
        assert!(r.semisimple && !r.amenable && !r.solvable && r.unimodular);
        assert_eq!(r.amenability_path, AmenabilityPath::NonCompactLeviQuotient);
    }

    #[test]
    fn so3_is_semisimple_amenable() {
        let r = classify(&so3(), &t()).unwrap();
        assert!(r.semisimple && r.amenable && !r.solvable);
        assert_eq!(r.amenability_path, AmenabilityPath::CompactLeviQuotient);
    }

    #[test]
    fn reductive_sum_has_abelian_radical() {
        // so(3) ⊕ ℝ: radical is the center, Levi quotient compact.
        let alg = MetricLieAlgebra::from_brackets(4, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)], id(4), &t()).unwrap();
        let r = classify(&alg, &t()).unwrap();
        assert_eq!(r.radical.dim(), 1);
        assert!(r.amenable && !r.semisimple && !r.solvable && r.unimodular);
    }

    #[test]
    fn dimension_one_conventions() {
        let alg = MetricLieAlgebra::from_brackets(1, &[], id(1), &t()).unwrap();
        let r = classify(&alg, &t()).unwrap();
        assert!(r.unimodular && r.amenable && r.solvable && r.nilpotent && !r.semisimple);
    }
}
