//! Finite-alphabet distributions and the Shannon/Rényi functionals built on
//! them. All logarithms are natural (nats).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance on the post-normalization sum of a distribution.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Minimum gap between the extreme probability and its runner-up for the
/// extreme to count as unique.
pub const UNAMBIGUITY_GAP: f64 = 1e-12;

/// Ordered set of symbol labels. The order is the lexicographic order used to
/// break guesswork ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooSmallAlphabet(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Alphabet { labels })
    }

    /// `a, b, c, …` for up to 26 symbols, `x0, x1, …` beyond that.
    pub fn with_size(k: usize) -> Result<Self> {
        if k <= 26 {
            Alphabet::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Alphabet::new((0..k).map(|i| format!("x{i}")))
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A probability vector over an [`Alphabet`].
///
/// Distributions built from user weights ([`Dist::validate`]) have strictly
/// positive entries. Distributions produced internally (types of sequences,
/// tilts at ±∞, extreme tilts that underflow) may carry exact zeros.
#[derive(Clone)]
pub struct Dist {
    alphabet: Arc<Alphabet>,
    probs: Vec<f64>,
}

impl Dist {
    /// Normalize strictly positive, finite weights into a distribution.
    pub fn validate(raw_weights: &[f64], alphabet: Alphabet) -> Result<Self> {
        Self::validate_shared(raw_weights, Arc::new(alphabet))
    }

    fn validate_shared(raw_weights: &[f64], alphabet: Arc<Alphabet>) -> Result<Self> {
        if raw_weights.len() != alphabet.len() {
            return Err(Error::LengthMismatch {
                expected: alphabet.len(),
                got: raw_weights.len(),
            });
        }
        for (index, &value) in raw_weights.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteWeight { index, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveWeight { index, value });
            }
        }
        let total: f64 = raw_weights.iter().sum();
        let probs: Vec<f64> = raw_weights.iter().map(|w| w / total).collect();
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Dist { alphabet, probs })
    }

    /// [`Dist::validate`] over the default alphabet `a, b, c, …`.
    pub fn new(raw_weights: &[f64]) -> Result<Self> {
        if raw_weights.len() < 2 {
            return Err(Error::TooSmallAlphabet(raw_weights.len()));
        }
        Self::validate(raw_weights, Alphabet::with_size(raw_weights.len())?)
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        Self::uniform_shared(Arc::new(alphabet))
    }

    pub(crate) fn uniform_shared(alphabet: Arc<Alphabet>) -> Self {
        let k = alphabet.len();
        Dist {
            alphabet,
            probs: vec![1.0 / k as f64; k],
        }
    }

    /// Uniform distribution over the same alphabet as `self`.
    pub fn uniform_like(&self) -> Self {
        Self::uniform_shared(Arc::clone(&self.alphabet))
    }

    /// Gibbs normalization `exp(w_i) / Σ exp(w_j)` of log-weights over the
    /// alphabet of `like`. Entries of `-inf` become exact zeros.
    pub fn from_log_weights(like: &Dist, log_weights: &[f64]) -> Self {
        debug_assert_eq!(log_weights.len(), like.len());
        Dist {
            alphabet: Arc::clone(&like.alphabet),
            probs: softmax(log_weights),
        }
    }

    /// Empirical distribution (type) of a count vector.
    pub fn from_counts(like: &Dist, counts: &[u32]) -> Self {
        debug_assert_eq!(counts.len(), like.len());
        let n: u64 = counts.iter().map(|&c| c as u64).sum();
        Dist {
            alphabet: Arc::clone(&like.alphabet),
            probs: counts.iter().map(|&c| c as f64 / n as f64).collect(),
        }
    }

    /// Point mass on symbol `index`.
    pub fn point_mass(like: &Dist, index: usize) -> Self {
        let mut probs = vec![0.0; like.len()];
        probs[index] = 1.0;
        Dist {
            alphabet: Arc::clone(&like.alphabet),
            probs,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn log_probs(&self) -> Vec<f64> {
        self.probs.iter().map(|p| p.ln()).collect()
    }

    pub fn same_alphabet(&self, other: &Dist) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    pub(crate) fn check_same_alphabet(&self, other: &Dist) -> Result<()> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn argmax(&self) -> usize {
        argmax(&self.probs)
    }

    pub fn argmin(&self) -> usize {
        argmin(&self.probs)
    }

    pub fn is_unambiguous(&self) -> bool {
        self.is_unambiguous_with(UNAMBIGUITY_GAP)
    }

    /// Full support, and both the largest and the smallest entry beat their
    /// runner-up by more than `gap`.
    pub fn is_unambiguous_with(&self, gap: f64) -> bool {
        if self.probs.iter().any(|&p| p <= 0.0) {
            return false;
        }
        let mut sorted = self.probs.clone();
        sorted.sort_by(f64::total_cmp);
        let k = sorted.len();
        sorted[k - 1] - sorted[k - 2] > gap && sorted[1] - sorted[0] > gap
    }

    /// Largest elementwise absolute difference. `None` on alphabet mismatch.
    pub fn max_abs_diff(&self, other: &Dist) -> Option<f64> {
        if !self.same_alphabet(other) {
            return None;
        }
        Some(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }
}

impl PartialEq for Dist {
    fn eq(&self, other: &Self) -> bool {
        self.same_alphabet(other) && self.probs == other.probs
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dist")
            .field("alphabet", &self.alphabet.labels)
            .field("probs", &self.probs)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistJson {
    alphabet: Vec<String>,
    probs: Vec<f64>,
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistJson {
            alphabet: self.alphabet.labels.clone(),
            probs: self.probs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DistJson::deserialize(d)?;
        let alphabet = Alphabet::new(raw.alphabet).map_err(serde::de::Error::custom)?;
        Dist::validate(&raw.probs, alphabet).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[best] {
            best = i;
        }
    }
    best
}

/// `log Σ exp(v_i)`, stable against overflow. `-inf` for an empty or
/// all-`-inf` input.
pub fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    if m == f64::INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `log(exp(a) + exp(b))`.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

pub(crate) fn softmax(log_weights: &[f64]) -> Vec<f64> {
    let m = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = log_weights.iter().map(|w| (w - m).exp()).collect();
    let z: f64 = out.iter().sum();
    for p in &mut out {
        *p /= z;
    }
    out
}

pub fn entropy(p: &Dist) -> f64 {
    entropy_of(p.probs())
}

pub(crate) fn entropy_of(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// `H(p‖q) = −Σ p log q`. Infinite when `q` misses mass that `p` has.
pub fn cross_entropy(p: &Dist, q: &Dist) -> Result<f64> {
    p.check_same_alphabet(q)?;
    Ok(cross_entropy_of(p.probs(), q.probs()))
}

pub(crate) fn cross_entropy_of(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| -a * b.ln())
        .sum()
}

/// Relative entropy `D(p‖q)`, clamped at zero against rounding.
pub fn kl_divergence(p: &Dist, q: &Dist) -> Result<f64> {
    p.check_same_alphabet(q)?;
    Ok(kl_of(p.probs(), q.probs()))
}

pub(crate) fn kl_of(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| a * (a / b).ln())
        .sum::<f64>()
        .max(0.0)
}

/// Rényi entropy `(1/(1−a)) log Σ p^a` over the support of `p`.
pub fn renyi_entropy(p: &Dist, order: f64) -> Result<f64> {
    if !order.is_finite() {
        return Err(Error::NonFiniteOrder(order));
    }
    if order == 1.0 {
        return Err(Error::OrderIsOne);
    }
    let terms: Vec<f64> = p
        .probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|x| order * x.ln())
        .collect();
    Ok(log_sum_exp(&terms) / (1.0 - order))
}
