//! One-to-one source coding under mismatch.
//!
//! The optimal one-to-one code sends the `r`-th guess to the `r`-th binary
//! string in the order `"", "0", "1", "00", …`, so code lengths come straight
//! from guesswork ranks. Average lengths here are in nats of log-guesswork.

use serde::{Deserialize, Serialize};

use crate::dist::{entropy, kl_divergence, Dist};
use crate::error::{Error, Result};
use crate::oracle::GuessTable;
use crate::rate::{check_hypothesis, RateFunction};
use crate::solver::{solve_projection, RootConfig};

/// `⌊log₂ rank⌋` bits.
pub fn code_length(rank: u64) -> Result<u32> {
    if rank == 0 {
        return Err(Error::BadRank);
    }
    Ok(rank.ilog2())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodingReport {
    #[serde(rename = "H_mu")]
    pub h_mu: f64,
    #[serde(rename = "L_matched")]
    pub l_matched: f64,
    #[serde(rename = "L_mismatched")]
    pub l_mismatched: f64,
    pub penalty_one_to_one: f64,
    pub penalty_prefix_free: f64,
    pub projection_alpha: f64,
}

/// Asymptotic per-symbol lengths of the matched and mismatched one-to-one
/// codes, and the two mismatch penalties.
pub fn asymptotic_report(nu: &Dist, mu: &Dist) -> Result<CodingReport> {
    check_hypothesis(nu, mu)?;
    let h_mu = entropy(mu);
    if nu == mu {
        return Ok(CodingReport {
            h_mu,
            l_matched: h_mu,
            l_mismatched: h_mu,
            penalty_one_to_one: 0.0,
            penalty_prefix_free: 0.0,
            projection_alpha: 1.0,
        });
    }
    let pi = solve_projection(nu, mu, &RootConfig::default())?;
    Ok(CodingReport {
        h_mu,
        l_matched: h_mu,
        l_mismatched: entropy(&pi.dist),
        penalty_one_to_one: kl_divergence(mu, &pi.dist)?,
        penalty_prefix_free: kl_divergence(mu, nu)?,
        projection_alpha: pi.param,
    })
}

/// `(1/n) Σ_q P_μ(q) log mid-rank(q)`, in nats per symbol.
pub fn finite_average_length(table: &GuessTable) -> f64 {
    crate::oracle::exact_mean_log_guesswork(table)
}

/// Exponent of `P(g > nR)` for `H(Π) < R < log|𝒳|`.
pub fn reliability(nu: &Dist, mu: &Dist, r: f64) -> Result<f64> {
    let f = RateFunction::for_pair(nu, mu)?;
    let lo = if nu == mu {
        entropy(mu)
    } else {
        entropy(&solve_projection(nu, mu, &RootConfig::default())?.dist)
    };
    let hi = (mu.len() as f64).ln();
    if !(r > lo && r < hi) {
        return Err(Error::Domain {
            what: "R",
            value: r,
            lo,
            hi,
        });
    }
    f.rate(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{cross_entropy, kl_divergence};
    use crate::oracle::{build_guess_table, exact_tail_exponent};
    use crate::rate::matched_rate;
    use crate::tilt::{family_membership, Membership, TiltCurve};
    use proptest::prelude::*;

    fn mu() -> Dist {
        Dist::new(&[0.05, 0.1, 0.85]).unwrap()
    }

    fn nu() -> Dist {
        Dist::new(&[0.3, 0.2, 0.5]).unwrap()
    }

    #[test]
    fn code_lengths() {
        assert_eq!(code_length(1).unwrap(), 0);
        assert_eq!(code_length(5).unwrap(), 2);
        for k in 0..=20 {
            assert_eq!(code_length(1 << k).unwrap(), k);
        }
        assert!(matches!(code_length(0), Err(Error::BadRank)));
        // ranks 2^k .. 2^(k+1)-1 share a length, matching 2^k strings of length k
        for r in 1..1000u64 {
            let l = code_length(r).unwrap();
            assert!((1u64 << l) <= r && r < (2u64 << l));
        }
    }

    #[test]
    fn matched_report_has_no_penalty() {
        let r = asymptotic_report(&mu(), &mu()).unwrap();
        assert_eq!(r.penalty_one_to_one, 0.0);
        assert_eq!(r.penalty_prefix_free, 0.0);
        assert_eq!(r.l_mismatched, entropy(&mu()));
    }

    #[test]
    fn tilted_model_costs_nothing_one_to_one() {
        let curve = TiltCurve::uniform(mu()).unwrap();
        let nu = curve.at(2.0);
        let r = asymptotic_report(&nu, &mu()).unwrap();
        assert!(r.penalty_one_to_one.abs() < 1e-9);
        assert!(r.penalty_prefix_free > 0.01);
        assert!((r.projection_alpha - 0.5).abs() < 1e-6);
    }

    #[test]
    fn mismatched_pair_report() {
        let r = asymptotic_report(&nu(), &mu()).unwrap();
        assert!((r.penalty_prefix_free - 0.292133).abs() < 2e-6);
        assert!(r.penalty_one_to_one > 0.0 && r.penalty_one_to_one < r.penalty_prefix_free);
        assert!((r.l_mismatched - r.h_mu - r.penalty_one_to_one).abs() < 1e-9);
        let json = serde_json::to_value(r).unwrap();
        for key in [
            "H_mu",
            "L_matched",
            "L_mismatched",
            "penalty_one_to_one",
            "penalty_prefix_free",
            "projection_alpha",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn hypothesis_is_enforced() {
        let bad = Dist::new(&[0.1, 0.85, 0.05]).unwrap();
        assert!(matches!(
            asymptotic_report(&nu(), &bad),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn single_symbol_average() {
        let t = build_guess_table(&mu(), &mu(), 1).unwrap();
        let want = 0.1 * 2f64.ln() + 0.05 * 3f64.ln();
        assert!((finite_average_length(&t) - want).abs() < 1e-14);
        assert!((want - 0.12424).abs() < 1e-5);
    }

    #[test]
    fn averages_approach_limits() {
        let report = asymptotic_report(&nu(), &mu()).unwrap();
        let gaps: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&n| {
                let t = build_guess_table(&nu(), &mu(), n).unwrap();
                (finite_average_length(&t) - report.l_mismatched).abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");

        let h = entropy(&mu());
        for n in [25, 50, 100, 200] {
            let t = build_guess_table(&mu(), &mu(), n).unwrap();
            assert!(finite_average_length(&t) < h);
        }
    }

    #[test]
    fn reliability_domain_and_reduction() {
        let (n, m) = (nu(), mu());
        let h_pi = entropy(
            &solve_projection(&n, &m, &RootConfig::default())
                .unwrap()
                .dist,
        );
        assert!(reliability(&n, &m, h_pi - 0.01).is_err());
        assert!(reliability(&n, &m, 3f64.ln()).is_err());
        assert!(reliability(&n, &m, h_pi + 1e-6).unwrap() < 1e-6);
        for r in [0.6, 0.8, 1.0] {
            let a = reliability(&m, &m, r).unwrap();
            let b = matched_rate(&m, r).unwrap().rate;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn reliability_against_tail_oracle() {
        let j = reliability(&nu(), &mu(), 1.0).unwrap();
        let t = build_guess_table(&nu(), &mu(), 400).unwrap();
        let tail = exact_tail_exponent(&t, 1.0);
        assert!(tail > j && tail - j < 0.03, "{tail} vs {j}");
    }

    fn pair(k: usize) -> impl Strategy<Value = (Dist, Dist)> {
        (
            prop::collection::vec(0.05f64..1.0, k),
            prop::collection::vec(0.05f64..1.0, k),
        )
            .prop_map(|(a, b)| (Dist::new(&a).unwrap(), Dist::new(&b).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pythagorean_identity(
            (m, n) in (3usize..=5).prop_flat_map(pair),
            alpha in -2.0f64..2.0,
        ) {
            prop_assume!(n.is_unambiguous());
            let pi = solve_projection(&n, &m, &RootConfig::default()).unwrap().dist;
            let gamma = TiltCurve::uniform(n.clone()).unwrap().at(alpha);
            let lhs = kl_divergence(&m, &gamma).unwrap();
            let rhs = kl_divergence(&m, &pi).unwrap() + kl_divergence(&pi, &gamma).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
        }

        #[test]
        fn projection_entropy_and_divergence(
            (m, n) in (3usize..=5).prop_flat_map(pair),
        ) {
            prop_assume!(n.is_unambiguous() && m.is_unambiguous());
            prop_assume!(check_hypothesis(&n, &m).is_ok());
            let pi = solve_projection(&n, &m, &RootConfig::default()).unwrap().dist;
            let (h_mu, h_pi) = (entropy(&m), entropy(&pi));
            prop_assert!(h_pi >= h_mu - 1e-9);
            let member = family_membership(&m, &n).unwrap() != Membership::NotMember;
            if member {
                prop_assert!((h_pi - h_mu).abs() <= 1e-9);
            }
            let d_mu = kl_divergence(&m, &n).unwrap();
            let d_pi = kl_divergence(&pi, &n).unwrap();
            prop_assert!((d_pi - (d_mu + h_mu - h_pi)).abs() <= 1e-9);
            prop_assert!(d_pi <= d_mu + 1e-9);

            let r = asymptotic_report(&n, &m).unwrap();
            prop_assert!(r.penalty_one_to_one >= -1e-9);
            prop_assert!(r.penalty_one_to_one <= r.penalty_prefix_free + 1e-9);
            prop_assert!((r.l_mismatched - r.h_mu - r.penalty_one_to_one).abs() <= 1e-9);
            prop_assert!(r.l_mismatched <= cross_entropy(&m, &n).unwrap() + 1e-9);
        }
    }
}
