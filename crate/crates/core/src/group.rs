//! Closed-form bottom of spectrum and Cheeger constant of connected Lie
//! groups with left-invariant metrics.
//!
//! For amenable groups `λ₀(G) = ¼h(G)² = ¼ max_{‖X‖=1} tr(ad X)²`. Since
//! `X ↦ tr(ad X)` is linear, the maximum over the unit sphere is the metric
//! norm of the trace covector and is attained at its metric dual.

use nalgebra::DVector;

use crate::lie::{classify, mean_curvature, quotient_algebra, restrict_to, derived_subalgebra, Ideal, MetricLieAlgebra};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Unimodular and amenable: `λ₀ = h = 0`.
    UnimodularAmenableZero,
    /// Amenable, not unimodular: `λ₀ = ¼‖T‖²`.
    AmenableFormula,
    /// Not amenable: only the Cheeger lower bound is known.
    LowerBoundOnly,
}

impl SpectrumMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumMethod::UnimodularAmenableZero => "unimodular_amenable_zero",
            SpectrumMethod::AmenableFormula => "amenable_formula",
            SpectrumMethod::LowerBoundOnly => "lower_bound_only",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpectrumReport {
    /// Absent when `method` is `LowerBoundOnly`.
    pub lambda0: Option<f64>,
    /// Exact Cheeger constant for amenable groups, otherwise the lower bound.
    pub cheeger: f64,
    /// Unit vector attaining the maximum, sign-normalized so that
    /// `tr(ad maximizer) ≥ 0`. Absent for unimodular groups.
    pub maximizer: Option<DVector<f64>>,
    pub method: SpectrumMethod,
}

/// `λ₀` and `h` of an amenable group.
pub fn lambda0_amenable(alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<GroupSpectrumReport> {
    let report = classify(alg, tols)?;
    if !report.amenable {
        return Err(Error::FormulaInapplicable(
            "group is not amenable; only the Cheeger lower bound is available".into(),
        ));
    }
    Ok(amenable_report(alg, tols))
}

fn amenable_report(alg: &MetricLieAlgebra, tols: &Tolerances) -> GroupSpectrumReport {
    let tau = alg.trace_covector();
    if tau.sup_norm() < tols.unimodular_tol {
        return GroupSpectrumReport {
            lambda0: Some(0.0),
            cheeger: 0.0,
            maximizer: None,
            method: SpectrumMethod::UnimodularAmenableZero,
        };
    }
    let t = tau.dual(alg);
    let norm = alg.norm(&t);
    GroupSpectrumReport {
        lambda0: Some(0.25 * norm * norm),
        cheeger: norm,
        maximizer: Some(t / norm),
        method: SpectrumMethod::AmenableFormula,
    }
}

/// `max_{‖X‖=1} tr(ad X)`, a lower bound for `h(G)` valid for every group.
pub fn cheeger_lower_bound(alg: &MetricLieAlgebra) -> f64 {
    alg.trace_covector().norm(alg).max(0.0)
}

/// Full report for any algebra: the closed form when amenable, otherwise
/// the Cheeger lower bound with `lambda0` absent.
pub fn group_spectrum(alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<GroupSpectrumReport> {
    match lambda0_amenable(alg, tols) {
        Ok(r) => Ok(r),
        Err(Error::FormulaInapplicable(_)) => Ok(GroupSpectrumReport {
            lambda0: None,
            cheeger: cheeger_lower_bound(alg),
            maximizer: None,
            method: SpectrumMethod::LowerBoundOnly,
        }),
        Err(e) => Err(e),
    }
}

/// Caller-supplied `λ₀` of the factors, overriding the recursive formula.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FactorSpectra {
    pub lambda0_subgroup: Option<f64>,
    pub lambda0_quotient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientBoundReport {
    pub ideal: Ideal,
    /// Mean curvature of the normal subgroup, in parent coordinates.
    pub mean_curvature: DVector<f64>,
    pub mean_curvature_norm_sq: f64,
    pub trace_ad_h: f64,
    /// `λ₀(G/N) + λ₀(N) − ¼‖H‖² + ½ tr(ad H)`.
    pub lower_bound: f64,
    /// `N` unimodular and amenable, so the bound is attained with the
    /// `λ₀(N)` term absent (it is then 0).
    pub equality_expected: bool,
    pub lambda0_subgroup: Option<f64>,
    pub lambda0_quotient: Option<f64>,
    /// A factor's `λ₀` was unavailable and replaced by 0.
    pub partial: bool,
}

fn factor_lambda0(alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<Option<f64>> {
    match lambda0_amenable(alg, tols) {
        Ok(r) => Ok(r.lambda0),
        Err(Error::FormulaInapplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Lower bound on `λ₀(G)` from a closed connected normal subgroup `N`.
pub fn quotient_bound(
    alg: &MetricLieAlgebra,
    ideal: &Ideal,
    supplied: FactorSpectra,
    tols: &Tolerances,
) -> Result<QuotientBoundReport> {
    let h = mean_curvature(alg, ideal, tols)?;
    let norm_sq = alg.inner(&h, &h);
    let tr = alg.trace_covector().eval(&h);

    let (lambda0_subgroup, equality_expected) = if ideal.is_zero() {
        (Some(0.0), true)
    } else {
        let sub = restrict_to(alg, ideal, tols)?;
        let cls = classify(&sub, tols)?;
        let eq = cls.unimodular && cls.amenable;
        let l = match supplied.lambda0_subgroup {
            Some(v) => Some(v),
            None => factor_lambda0(&sub, tols)?,
        };
        (l, eq)
    };
    let lambda0_quotient = if ideal.dim() == alg.dim() {
        Some(0.0)
    } else {
        match supplied.lambda0_quotient {
            Some(v) => Some(v),
            None => factor_lambda0(&quotient_algebra(alg, ideal, tols)?.0, tols)?,
        }
    };
    let partial = lambda0_subgroup.is_none() || lambda0_quotient.is_none();
    let lower_bound = lambda0_quotient.unwrap_or(0.0) + lambda0_subgroup.unwrap_or(0.0) - 0.25 * norm_sq + 0.5 * tr;

    Ok(QuotientBoundReport {
        ideal: ideal.clone(),
        mean_curvature: h,
        mean_curvature_norm_sq: norm_sq,
        trace_ad_h: tr,
        lower_bound,
        equality_expected,
        lambda0_subgroup,
        lambda0_quotient,
        partial,
    })
}

/// `λ₀(G) = ¼‖H‖² = ¼ tr(ad H)` with `H` the mean curvature of `[𝔰, 𝔰]`,
/// `𝔰` the radical. Fails unless `G` is amenable, not unimodular, and has a
/// non-abelian radical. Both expressions and the maximizer direction are
/// cross-checked against [`lambda0_amenable`].
pub fn radical_commutator_lambda0(alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<GroupSpectrumReport> {
    let cls = classify(alg, tols)?;
    if !cls.amenable {
        return Err(Error::Precondition("group is not amenable".into()));
    }
    if cls.unimodular {
        return Err(Error::Precondition("group is unimodular".into()));
    }
    let commutator = derived_subalgebra(alg, &cls.radical, tols)?;
    if commutator.is_zero() {
        return Err(Error::Precondition("radical is abelian".into()));
    }
    let h = mean_curvature(alg, &commutator, tols)?;
    let norm_sq = alg.inner(&h, &h);
    let tr = alg.trace_covector().eval(&h);
    if (norm_sq - tr).abs() > tols.identity_tol * norm_sq.max(1.0) {
        return Err(Error::Precondition(format!(
            "‖H‖² = {norm_sq} and tr(ad H) = {tr} disagree"
        )));
    }
    let norm = norm_sq.sqrt();
    let direction = &h / norm;

    let formula = amenable_report(alg, tols);
    if let (Some(l), Some(m)) = (formula.lambda0, &formula.maximizer) {
        let lambda0 = 0.25 * tr;
        if (lambda0 - l).abs() > tols.identity_tol * l.max(1.0) {
            return Err(Error::Precondition(format!(
                "mean-curvature route gives {lambda0}, trace route gives {l}"
            )));
        }
        if alg.norm(&(&direction - m)) > 1e-6 {
            return Err(Error::Precondition("maximizer is not parallel to H".into()));
        }
    }
    Ok(GroupSpectrumReport {
        lambda0: Some(0.25 * tr),
        cheeger: tr.sqrt(),
        maximizer: Some(direction),
        method: SpectrumMethod::AmenableFormula,
    })
}
