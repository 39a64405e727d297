//! Tilted (exponential) families, linear families, membership tests and the
//! tilted typical-set predicates.
//!
//! The mismatched tilt of order `α` of a base `ν` with respect to a reference
//! `μ` is
//!
//! ```text
//! T(ν, μ, α)(x) = μ(x) ν(x)^α / Σ_x' μ(x') ν(x')^α
//! ```
//!
//! with the limits `α → +∞` (point mass on `argmax ν`), `α → −∞` (point mass
//! on `argmin ν`) and `T(ν, μ, 0) = μ`. With the uniform reference this is the
//! plain tilted family `T(ν, α)`.

use crate::dist::{argmax, argmin, cross_entropy_of, softmax, Dist};
use crate::error::{Error, Result};

/// Log-space tolerance for deciding membership in a tilted family.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Rounding slack applied on top of `eps` in the typical-set predicates.
pub const TYPICALITY_SLACK: f64 = 1e-12;

/// Extended-real tilt parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TiltParam {
    Finite(f64),
    PosInf,
    NegInf,
}

impl From<f64> for TiltParam {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            TiltParam::PosInf
        } else if v == f64::NEG_INFINITY {
            TiltParam::NegInf
        } else {
            TiltParam::Finite(v)
        }
    }
}

/// One-parameter curve `β ↦ T(base, reference, β)`.
#[derive(Debug, Clone)]
pub struct TiltCurve {
    base: Dist,
    reference: Dist,
    log_base: Vec<f64>,
    // `None` for the uniform reference: the constant cancels in normalization
    log_reference: Option<Vec<f64>>,
}

impl TiltCurve {
    pub fn new(base: Dist, reference: Dist) -> Result<Self> {
        base.check_same_alphabet(&reference)?;
        if !base.is_unambiguous() {
            return Err(Error::Ambiguous("tilt base"));
        }
        let log_base = base.log_probs();
        let log_reference = Some(reference.log_probs());
        Ok(TiltCurve {
            base,
            reference,
            log_base,
            log_reference,
        })
    }

    /// The plain tilted family of `base` (uniform reference).
    pub fn uniform(base: Dist) -> Result<Self> {
        if !base.is_unambiguous() {
            return Err(Error::Ambiguous("tilt base"));
        }
        let reference = base.uniform_like();
        let log_base = base.log_probs();
        Ok(TiltCurve {
            base,
            reference,
            log_base,
            log_reference: None,
        })
    }

    /// Uniform-reference curve without the unambiguity check. Only for
    /// callers that tolerate ties in the base (e.g. the matched variational
    /// moment form, which is well defined for any full-support source).
    pub(crate) fn uniform_unchecked(base: Dist) -> Self {
        let reference = base.uniform_like();
        let log_base = base.log_probs();
        TiltCurve {
            base,
            reference,
            log_base,
            log_reference: None,
        }
    }

    pub fn base(&self) -> &Dist {
        &self.base
    }

    pub fn reference(&self) -> &Dist {
        &self.reference
    }

    pub fn at(&self, alpha: impl Into<TiltParam>) -> Dist {
        match alpha.into() {
            TiltParam::PosInf => Dist::point_mass(&self.base, self.base.argmax()),
            TiltParam::NegInf => Dist::point_mass(&self.base, self.base.argmin()),
            TiltParam::Finite(0.0) => self.reference.clone(),
            TiltParam::Finite(a) => Dist::from_log_weights(&self.base, &self.log_weights(a)),
        }
    }

    /// Probabilities of the tilt at a finite parameter, without building a
    /// [`Dist`]. Used in the inner loops of the root finders.
    pub(crate) fn probs_at(&self, alpha: f64) -> Vec<f64> {
        if alpha == 0.0 {
            return self.reference.probs().to_vec();
        }
        softmax(&self.log_weights(alpha))
    }

    pub(crate) fn log_base(&self) -> &[f64] {
        &self.log_base
    }

    fn log_weights(&self, alpha: f64) -> Vec<f64> {
        match &self.log_reference {
            Some(lr) => lr
                .iter()
                .zip(&self.log_base)
                .map(|(r, b)| r + alpha * b)
                .collect(),
            None => self.log_base.iter().map(|b| alpha * b).collect(),
        }
    }
}

/// `T(curve.base, curve.reference, alpha)`.
pub fn tilt(curve: &TiltCurve, alpha: impl Into<TiltParam>) -> Dist {
    curve.at(alpha)
}

/// Cross-entropy level `H(T(ν, α)‖ν)` defining the linear family `ℒ(ν, α)`.
pub fn linear_family_level(nu: &Dist, alpha: impl Into<TiltParam>) -> Result<f64> {
    let curve = TiltCurve::uniform(nu.clone())?;
    Ok(level_on(&curve, alpha.into()))
}

pub(crate) fn level_on(curve: &TiltCurve, alpha: TiltParam) -> f64 {
    let log_nu = curve.log_base();
    match alpha {
        TiltParam::PosInf => -log_nu[argmax(log_nu)],
        TiltParam::NegInf => -log_nu[argmin(log_nu)],
        TiltParam::Finite(a) => {
            let p = curve.probs_at(a);
            p.iter().zip(log_nu).map(|(p, l)| -p * l).sum()
        }
    }
}

/// Whether `γ ∈ ℒ(ν, α)` up to `tol` nats.
pub fn in_linear_family(
    candidate: &Dist,
    nu: &Dist,
    alpha: impl Into<TiltParam>,
    tol: f64,
) -> Result<bool> {
    candidate.check_same_alphabet(nu)?;
    let level = linear_family_level(nu, alpha)?;
    Ok((cross_entropy_of(candidate.probs(), nu.probs()) - level).abs() <= tol)
}

/// Where a distribution sits relative to the tilted family of `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    PositiveTilt(f64),
    NegativeTilt(f64),
    Uniform,
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::NotMember)
    }
}

/// Decide whether `log candidate = α log ν + const` for some real `α`.
///
/// `α` is estimated from the two coordinates where `log ν` is furthest apart
/// (the argmax and argmin of `ν`), then the affine relation is checked on
/// every coordinate to within [`MEMBERSHIP_TOLERANCE`].
pub fn family_membership(candidate: &Dist, nu: &Dist) -> Result<Membership> {
    candidate.check_same_alphabet(nu)?;
    let log_nu = nu.log_probs();
    let (hi, lo) = (argmax(&log_nu), argmin(&log_nu));
    let spread = log_nu[hi] - log_nu[lo];
    if spread < MEMBERSHIP_TOLERANCE {
        return Err(Error::DegenerateBase(spread));
    }
    if candidate.probs().iter().any(|&p| p <= 0.0) {
        return Ok(Membership::NotMember);
    }
    let log_c = candidate.log_probs();
    let alpha = (log_c[hi] - log_c[lo]) / spread;
    let offsets: Vec<f64> = log_c
        .iter()
        .zip(&log_nu)
        .map(|(c, n)| c - alpha * n)
        .collect();
    let lo_off = offsets.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_off = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi_off - lo_off > MEMBERSHIP_TOLERANCE {
        return Ok(Membership::NotMember);
    }
    Ok(if alpha.abs() <= MEMBERSHIP_TOLERANCE {
        Membership::Uniform
    } else if alpha > 0.0 {
        Membership::PositiveTilt(alpha)
    } else {
        Membership::NegativeTilt(alpha)
    })
}

/// Membership of a type in the sets `D`, `E`, `B` around the level
/// `H(T(ν, α)‖ν)`: more likely, less likely, and as likely under `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypicalityFlags {
    pub in_d: bool,
    pub in_e: bool,
    pub in_b: bool,
}

pub fn typicality_membership(
    ty: &Dist,
    nu: &Dist,
    alpha: f64,
    eps: f64,
) -> Result<TypicalityFlags> {
    ty.check_same_alphabet(nu)?;
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::Domain {
            what: "eps",
            value: eps,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if !alpha.is_finite() {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        });
    }
    let level = linear_family_level(nu, alpha)?;
    let diff = cross_entropy_of(ty.probs(), nu.probs()) - level;
    let slack = eps + TYPICALITY_SLACK;
    Ok(TypicalityFlags {
        in_d: diff <= slack,
        in_e: diff >= -slack,
        in_b: -diff >= -TYPICALITY_SLACK && -diff <= slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{cross_entropy, entropy};
    use proptest::prelude::*;

    fn nu() -> Dist {
        Dist::new(&[0.3, 0.2, 0.5]).unwrap()
    }

    fn mu() -> Dist {
        Dist::new(&[0.05, 0.1, 0.85]).unwrap()
    }

    fn close(a: &Dist, b: &[f64], tol: f64) -> bool {
        a.probs().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn tilt_examples() {
        let c = TiltCurve::uniform(nu()).unwrap();
        assert!(close(&c.at(1.0), &[0.3, 0.2, 0.5], 1e-15));
        let c = TiltCurve::new(
            Dist::new(&[0.4, 0.6]).unwrap(),
            Dist::new(&[0.2, 0.8]).unwrap(),
        )
        .unwrap();
        // unnormalized (0.08, 0.48)
        assert!(close(&c.at(1.0), &[1.0 / 7.0, 6.0 / 7.0], 1e-15));
        for reference in [mu(), nu().uniform_like()] {
            let c = TiltCurve::new(nu(), reference).unwrap();
            assert_eq!(c.at(f64::INFINITY).probs(), &[0.0, 0.0, 1.0]);
            assert_eq!(c.at(f64::NEG_INFINITY).probs(), &[0.0, 1.0, 0.0]);
        }
    }

    #[test]
    fn tilt_at_zero_is_reference_exactly() {
        let c = TiltCurve::new(nu(), mu()).unwrap();
        assert_eq!(c.at(0.0), mu());
        assert_eq!(
            tilt(&TiltCurve::uniform(nu()).unwrap(), 0.0),
            nu().uniform_like()
        );
    }

    #[test]
    fn extreme_finite_tilts_stay_finite() {
        let c = TiltCurve::new(nu(), mu()).unwrap();
        for a in [-5000.0, -500.0, 500.0, 5000.0] {
            let p = c.at(a);
            assert!(p.probs().iter().all(|x| x.is_finite() && *x >= 0.0));
            assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(c.at(5000.0).probs(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn ambiguous_base_rejected() {
        let flat = Dist::new(&[0.2, 0.2, 0.6]).unwrap();
        assert!(matches!(TiltCurve::uniform(flat), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn linear_family_levels() {
        let n = nu();
        let u = n.uniform_like();
        assert!(
            (linear_family_level(&n, 0.0).unwrap() - cross_entropy(&u, &n).unwrap()).abs() < 1e-15
        );
        assert!((linear_family_level(&n, 1.0).unwrap() - entropy(&n)).abs() < 1e-15);
        assert!((linear_family_level(&n, f64::INFINITY).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(in_linear_family(&n, &n, 1.0, 1e-12).unwrap());
        assert!(!in_linear_family(&u, &n, 1.0, 1e-3).unwrap());
    }

    #[test]
    fn membership_examples() {
        let n = nu();
        match family_membership(&n, &n).unwrap() {
            Membership::PositiveTilt(a) => assert!((a - 1.0).abs() < 1e-12),
            m => panic!("{m:?}"),
        }
        assert_eq!(
            family_membership(&n.uniform_like(), &n).unwrap(),
            Membership::Uniform
        );
        assert_eq!(family_membership(&mu(), &n).unwrap(), Membership::NotMember);
        let neg = TiltCurve::uniform(n.clone()).unwrap().at(-2.0);
        assert!(matches!(
            family_membership(&neg, &n).unwrap(),
            Membership::NegativeTilt(a) if (a + 2.0).abs() < 1e-9
        ));
        assert!(matches!(
            family_membership(&n, &n.uniform_like()),
            Err(Error::DegenerateBase(_))
        ));
    }

    #[test]
    fn not_member_residual_is_large() {
        // independent check of the affine fit: with α fixed by the extreme
        // coordinates, the middle coordinate's offset must disagree
        let (c, n) = (mu(), nu());
        let a = ((0.85f64).ln() - (0.1f64).ln()) / ((0.5f64).ln() - (0.2f64).ln());
        let off = |i: usize| c.probs()[i].ln() - a * n.probs()[i].ln();
        assert!((off(0) - off(2)).abs() > 1e-3);
    }

    #[test]
    fn typicality_examples() {
        let n = nu();
        let t = TiltCurve::uniform(n.clone()).unwrap().at(0.7);
        let all = TypicalityFlags {
            in_d: true,
            in_e: true,
            in_b: true,
        };
        for eps in [0.0, 0.01, 1.0] {
            assert_eq!(typicality_membership(&t, &n, 0.7, eps).unwrap(), all);
        }
        assert_eq!(typicality_membership(&n, &n, 1.0, 0.0).unwrap(), all);
        assert_eq!(
            typicality_membership(&n.uniform_like(), &n, 1.0, 0.01).unwrap(),
            TypicalityFlags {
                in_d: false,
                in_e: true,
                in_b: false
            }
        );
    }

    fn arb_unambiguous(k: std::ops::Range<usize>) -> impl Strategy<Value = Dist> {
        k.prop_flat_map(|k| proptest::collection::vec(0.02f64..1.0, k))
            .prop_map(|w| Dist::new(&w).unwrap())
            .prop_filter("unambiguous", |d| d.is_unambiguous_with(1e-6))
    }

    proptest! {
        #[test]
        fn closure_under_tilt(
            (n, m) in (3usize..6).prop_flat_map(|k| (
                proptest::collection::vec(0.02f64..1.0, k),
                proptest::collection::vec(0.02f64..1.0, k),
            )).prop_map(|(a, b)| (Dist::new(&a).unwrap(), Dist::new(&b).unwrap()))
              .prop_filter("unambiguous", |(n, _)| n.is_unambiguous_with(1e-6)),
            alpha in 0.05f64..4.0,
            beta in -4.0f64..4.0,
        ) {
            let inner = TiltCurve::uniform(n.clone()).unwrap().at(alpha);
            let lhs = TiltCurve::new(inner, m.clone()).unwrap().at(beta);
            let rhs = TiltCurve::new(n, m).unwrap().at(alpha * beta);
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        }

        #[test]
        fn entropy_decreasing_for_positive_alpha(n in arb_unambiguous(3..7)) {
            let c = TiltCurve::uniform(n).unwrap();
            let hs: Vec<f64> = (0..40).map(|i| entropy(&c.at(i as f64 * 0.25))).collect();
            for w in hs.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
        }

        #[test]
        fn cross_entropy_level_decreasing(n in arb_unambiguous(3..7)) {
            let c = TiltCurve::uniform(n).unwrap();
            let ls: Vec<f64> = (-20..20)
                .map(|i| level_on(&c, TiltParam::Finite(i as f64 * 0.3)))
                .collect();
            for w in ls.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
        }

        #[test]
        fn membership_recovers_alpha(n in arb_unambiguous(3..7), alpha in -5.0f64..5.0) {
            prop_assume!(alpha.abs() > 1e-6);
            let t = TiltCurve::uniform(n.clone()).unwrap().at(alpha);
            let got = match family_membership(&t, &n).unwrap() {
                Membership::PositiveTilt(a) | Membership::NegativeTilt(a) => a,
                m => return Err(TestCaseError::fail(format!("{m:?}"))),
            };
            prop_assert!((got - alpha).abs() <= 1e-6);
        }
    }
}
