//! Bracketed one-dimensional root finding for the three monotone maps
//!
//! * `α ↦ H(T(ν, α))` on `α ≥ 0` (decreasing),
//! * `β ↦ H(T(ν, β)‖ν)` on the reals (decreasing),
//! * `β ↦ H(T(ν, μ, β)‖ν)` on the reals (decreasing),
//!
//! plus a golden-section maximizer used for the variational cross-checks.

use crate::dist::{cross_entropy_of, entropy_of, Dist};
use crate::error::{Error, Result};
use crate::tilt::{level_on, TiltCurve, TiltParam};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Residual tolerance on the target functional, in nats.
    pub f_tol: f64,
    /// Bracket-width tolerance on the parameter.
    pub x_tol: f64,
    pub max_iter: usize,
    /// Bracket endpoints are doubled until the sign flips or they pass this.
    pub bracket_expand_limit: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            f_tol: 1e-12,
            x_tol: 1e-12,
            max_iter: 200,
            bracket_expand_limit: 1e6,
        }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.f_tol > 0.0 && self.x_tol > 0.0 && self.bracket_expand_limit > 0.0)
            || self.max_iter < 1
        {
            return Err(Error::Config(format!("invalid root config {self:?}")));
        }
        Ok(())
    }
}

/// A root on a tilt curve: the parameter and the distribution it picks out.
#[derive(Debug, Clone)]
pub struct TiltRoot {
    pub param: f64,
    pub dist: Dist,
}

/// Bisection for a decreasing `f` with `f(lo) ≥ 0 ≥ f(hi)`.
pub fn bisect_decreasing<F>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    cfg: &RootConfig,
    what: &'static str,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    for _ in 0..cfg.max_iter {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v.abs() <= cfg.f_tol || (hi - lo) <= cfg.x_tol * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(what))
}

/// Find `[lo, hi]` with `f(lo) ≥ 0 ≥ f(hi)` for a decreasing `f` on the
/// reals, doubling outward from `[-1, 1]`.
fn bracket_decreasing<F>(f: &F, cfg: &RootConfig, what: &'static str) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > cfg.bracket_expand_limit {
            return Err(Error::NoConvergence(what));
        }
    }
    let mut lo = -1.0;
    while f(lo) < 0.0 {
        lo *= 2.0;
        if -lo > cfg.bracket_expand_limit {
            return Err(Error::NoConvergence(what));
        }
    }
    Ok((lo, hi))
}

/// The unique `α ≥ 0` with `H(T(ν, α)) = t`, for `0 < t < log|𝒳|`.
pub fn solve_alpha_for_entropy(nu: &Dist, t: f64, cfg: &RootConfig) -> Result<f64> {
    let curve = TiltCurve::uniform(nu.clone())?;
    alpha_for_entropy_on(&curve, t, cfg)
}

pub(crate) fn alpha_for_entropy_on(curve: &TiltCurve, t: f64, cfg: &RootConfig) -> Result<f64> {
    let cap = (curve.base().len() as f64).ln();
    if !(t > 0.0 && t < cap) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            lo: 0.0,
            hi: cap,
        });
    }
    let f = |a: f64| entropy_of(&curve.probs_at(a)) - t;
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > cfg.bracket_expand_limit {
            return Err(Error::NoConvergence("alpha(t)"));
        }
    }
    bisect_decreasing(f, 0.0, hi, cfg, "alpha(t)")
}

/// I-projection of `μ` on the tilted family of `ν`: the `T(ν, α*)` with
/// `H(T(ν, α*)‖ν) = H(μ‖ν)`.
pub fn solve_projection(nu: &Dist, mu: &Dist, cfg: &RootConfig) -> Result<TiltRoot> {
    nu.check_same_alphabet(mu)?;
    let curve = TiltCurve::uniform(nu.clone())?;
    let target = cross_entropy_of(mu.probs(), nu.probs());
    let f = |b: f64| level_on(&curve, TiltParam::Finite(b)) - target;
    let (lo, hi) = bracket_decreasing(&f, cfg, "projection")?;
    let param = bisect_decreasing(f, lo, hi, cfg, "projection")?;
    Ok(TiltRoot {
        param,
        dist: curve.at(param),
    })
}

/// `γ_{ν,μ}`: the point of `𝒯_{ν,μ}` on the linear family `ℒ(ν, alpha_t)`.
pub fn solve_gamma_intersection(
    nu: &Dist,
    mu: &Dist,
    alpha_t: impl Into<TiltParam>,
    cfg: &RootConfig,
) -> Result<TiltRoot> {
    let level = crate::tilt::linear_family_level(nu, alpha_t)?;
    let curve = TiltCurve::new(nu.clone(), mu.clone())?;
    gamma_on(&curve, level, cfg)
}

pub(crate) fn gamma_on(curve: &TiltCurve, level: f64, cfg: &RootConfig) -> Result<TiltRoot> {
    let log_nu = curve.log_base();
    let f = |b: f64| {
        let p = curve.probs_at(b);
        p.iter().zip(log_nu).map(|(p, l)| -p * l).sum::<f64>() - level
    };
    let (lo, hi) = bracket_decreasing(&f, cfg, "gamma intersection")?;
    let param = bisect_decreasing(f, lo, hi, cfg, "gamma intersection")?;
    Ok(TiltRoot {
        param,
        dist: curve.at(param),
    })
}

/// Cross-entropy residual `H(γ‖ν) − level`, for diagnostics.
pub fn level_residual(gamma: &Dist, nu: &Dist, level: f64) -> f64 {
    cross_entropy_of(gamma.probs(), nu.probs()) - level
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub fn golden_section_max<F>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > x_tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)].into_iter().fold(
        (x, fx),
        |best, cand| if cand.1 > best.1 { cand } else { best },
    )
}
