//! Large-deviation rate functions of normalized log-guesswork and the growth
//! exponents of guesswork moments.
//!
//! For `X^n ~ μ^n` guessed in decreasing order of `ν^n`, the rate at level `t`
//! is `J(t) = D(γ(t)‖μ)` where
//!
//! ```text
//! α(t) ≥ 0 solves H(T(ν, α)) = t
//! γ(t)     is the member of 𝒯_{ν,μ} with H(γ‖ν) = H(T(ν, α(t))‖ν)
//! ```
//!
//! With `ν = μ` this collapses to `γ(t) = T(μ, α(t))`. Moment exponents follow
//! from the Varadhan form `E_ρ = (1/ρ) sup_t {ρ t − J(t)}`; in the matched case
//! the closed form is the Rényi entropy of order `1/(1+ρ)`.

use rayon::prelude::*;

use crate::dist::{cross_entropy_of, kl_of, renyi_entropy, Dist};
use crate::error::{Error, Result};
use crate::solver::{alpha_for_entropy_on, gamma_on, golden_section_max, RootConfig};
use crate::tilt::{level_on, TiltCurve, TiltParam};

/// Distance kept from the ends of the open interval `(0, log|𝒳|)`.
pub const DOMAIN_MARGIN: f64 = 1e-6;

/// Number of scan points for the sup over `t`.
pub const SCAN_POINTS: usize = 512;

/// Allowed disagreement between the closed-form and variational matched
/// moment exponents.
pub const VARIATIONAL_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct RatePoint {
    pub t: f64,
    /// `α(t)`, the tilt of the guessing distribution with entropy `t`.
    pub alpha: f64,
    pub gamma: Dist,
    /// `J(t)` in nats.
    pub rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPoint {
    pub rho: f64,
    pub value: f64,
}

/// `Π_{𝒯_ν}(μ) ∈ 𝒯_ν⁺`, checked as `H(μ‖ν) < H(u‖ν)`.
pub fn check_hypothesis(nu: &Dist, mu: &Dist) -> Result<()> {
    nu.check_same_alphabet(mu)?;
    let h_mu = cross_entropy_of(mu.probs(), nu.probs());
    let h_u = cross_entropy_of(nu.uniform_like().probs(), nu.probs());
    if h_mu < h_u {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!(
            "projection of mu is not on the positive tilted family of nu: \
             H(mu||nu) = {h_mu} >= H(u||nu) = {h_u}"
        )))
    }
}

/// Rate function for one `(ν, μ)` pair, with the tilt curves built once.
#[derive(Debug, Clone)]
pub struct RateFunction {
    guess: TiltCurve,
    // `None` for the matched case
    mismatch: Option<TiltCurve>,
    source: Dist,
    cfg: RootConfig,
}

impl RateFunction {
    pub fn matched(mu: &Dist) -> Result<Self> {
        Ok(RateFunction {
            guess: TiltCurve::uniform(mu.clone())?,
            mismatch: None,
            source: mu.clone(),
            cfg: RootConfig::default(),
        })
    }

    pub fn mismatched(nu: &Dist, mu: &Dist) -> Result<Self> {
        if !mu.is_unambiguous() {
            return Err(Error::Ambiguous("mu"));
        }
        let guess = TiltCurve::uniform(nu.clone())?;
        check_hypothesis(nu, mu)?;
        Ok(RateFunction {
            guess,
            mismatch: Some(TiltCurve::new(nu.clone(), mu.clone())?),
            source: mu.clone(),
            cfg: RootConfig::default(),
        })
    }

    /// Matched when `nu == mu`, mismatched otherwise.
    pub fn for_pair(nu: &Dist, mu: &Dist) -> Result<Self> {
        if nu == mu {
            Self::matched(mu)
        } else {
            Self::mismatched(nu, mu)
        }
    }

    pub fn with_config(mut self, cfg: RootConfig) -> Result<Self> {
        cfg.validate()?;
        self.cfg = cfg;
        Ok(self)
    }

    pub fn log_alphabet_size(&self) -> f64 {
        (self.source.len() as f64).ln()
    }

    pub fn point(&self, t: f64) -> Result<RatePoint> {
        let alpha = alpha_for_entropy_on(&self.guess, t, &self.cfg)?;
        let gamma = match &self.mismatch {
            None => self.guess.at(alpha),
            Some(curve) => {
                let level = level_on(&self.guess, TiltParam::Finite(alpha));
                gamma_on(curve, level, &self.cfg)?.dist
            }
        };
        let rate = kl_of(gamma.probs(), self.source.probs());
        Ok(RatePoint {
            t,
            alpha,
            gamma,
            rate,
        })
    }

    pub fn rate(&self, t: f64) -> Result<f64> {
        self.point(t).map(|p| p.rate)
    }

    /// `(1/ρ) sup_t {ρ t − J(t)}` by a scan over the open domain followed by
    /// golden-section refinement on the best cell, clamped to `[0, log|𝒳|]`.
    pub fn moment_exponent(&self, rho: f64) -> Result<f64> {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::NonPositiveRho(rho));
        }
        let cap = self.log_alphabet_size();
        let grid = open_grid(cap, SCAN_POINTS);
        let scores = grid
            .par_iter()
            .map(|&t| self.rate(t).map(|j| rho * t - j))
            .collect::<Result<Vec<f64>>>()?;
        let best = scores
            .iter()
            .enumerate()
            .fold(0, |b, (i, s)| if *s > scores[b] { i } else { b });
        let lo = grid[best.saturating_sub(1)];
        let hi = grid[(best + 1).min(grid.len() - 1)];
        // a failed evaluation inside the refinement cell cannot win
        let (_, refined) = golden_section_max(
            |t| self.rate(t).map_or(f64::NEG_INFINITY, |j| rho * t - j),
            lo,
            hi,
            1e-11,
        );
        let sup = refined.max(scores[best]);
        Ok((sup / rho).clamp(0.0, cap))
    }
}

/// `count` points spanning `[margin, cap − margin]`.
pub(crate) fn open_grid(cap: f64, count: usize) -> Vec<f64> {
    let (a, b) = (DOMAIN_MARGIN, cap - DOMAIN_MARGIN);
    (0..count)
        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Matched rate `J(t) = D(T(μ, α(t))‖μ)`.
pub fn matched_rate(mu: &Dist, t: f64) -> Result<RatePoint> {
    RateFunction::matched(mu)?.point(t)
}

/// Mismatched rate `J(t) = D(γ_{ν,μ}(t)‖μ)`.
pub fn mismatched_rate(nu: &Dist, mu: &Dist, t: f64) -> Result<RatePoint> {
    RateFunction::mismatched(nu, mu)?.point(t)
}

/// Rate function over a grid, in grid order.
pub fn rate_curve(nu: &Dist, mu: &Dist, t_grid: &[f64]) -> Result<Vec<RatePoint>> {
    let f = RateFunction::for_pair(nu, mu)?;
    t_grid.par_iter().map(|&t| f.point(t)).collect()
}

/// `E_ρ(μ) = H_{1/(1+ρ)}(μ)`, cross-checked against the variational form.
pub fn e_rho_matched(mu: &Dist, rho: f64) -> Result<MomentPoint> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::NonPositiveRho(rho));
    }
    let closed = renyi_entropy(mu, 1.0 / (1.0 + rho))?;
    let variational = e_rho_matched_variational(mu, rho)?;
    if (closed - variational).abs() > VARIATIONAL_AGREEMENT {
        return Err(Error::CrossCheck(format!(
            "Renyi form {closed} vs variational form {variational} at rho = {rho}"
        )));
    }
    let cap = (mu.len() as f64).ln();
    Ok(MomentPoint {
        rho,
        value: closed.clamp(0.0, cap),
    })
}

/// `max_{α ≥ 0} H(T(μ, α)) − D(T(μ, α)‖μ)/ρ`, by scan and golden section.
pub fn e_rho_matched_variational(mu: &Dist, rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::NonPositiveRho(rho));
    }
    let curve = TiltCurve::uniform_unchecked(mu.clone());
    let objective = |a: f64| {
        let p = curve.probs_at(a);
        crate::dist::entropy_of(&p) - kl_of(&p, mu.probs()) / rho
    };
    const SPAN: f64 = 4.0;
    const STEPS: usize = 64;
    let grid: Vec<f64> = (0..=STEPS)
        .map(|i| SPAN * i as f64 / STEPS as f64)
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&a| objective(a)).collect();
    let best = vals
        .iter()
        .enumerate()
        .fold(0, |b, (i, v)| if *v > vals[b] { i } else { b });
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(STEPS)];
    let (_, v) = golden_section_max(objective, lo, hi, 1e-10);
    Ok(v.max(vals[best]))
}

/// `E_ρ(ν‖μ)` in the Varadhan form. With `ν = μ` this is the matched exponent
/// evaluated by the same scan.
pub fn e_rho_mismatched(nu: &Dist, mu: &Dist, rho: f64) -> Result<MomentPoint> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::NonPositiveRho(rho));
    }
    let f = RateFunction::for_pair(nu, mu)?;
    Ok(MomentPoint {
        rho,
        value: f.moment_exponent(rho)?,
    })
}

/// `E_ρ(ν‖μ) − H_{1/(1+ρ)}(μ)`; non-negative up to numerical error.
pub fn mismatch_penalty_gap(nu: &Dist, mu: &Dist, rho: f64) -> Result<f64> {
    let mismatched = e_rho_mismatched(nu, mu, rho)?.value;
    let matched = e_rho_matched(mu, rho)?.value;
    Ok(mismatched - matched)
}
