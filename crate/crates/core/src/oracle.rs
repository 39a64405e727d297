//! Exact finite-`n` ground truth for guesswork.
//!
//! Two independent routes:
//!
//! * [`exact_guesswork_enum`] sorts all `|𝒳|^n` sequences by their `ν^n`
//!   log-probability, breaking ties lexicographically.
//! * [`build_guess_table`] works on types (empirical count vectors). All
//!   sequences of a type share one `ν^n` probability, so the rank of a class's
//!   first member is one plus the total size of the strictly more likely
//!   classes. Sizes are multinomial coefficients, accumulated in log space.
//!
//! On top of the table: exact normalized moments, LDP window probabilities,
//! tail exponents, and seeded Monte Carlo draws.

use std::collections::HashMap;
use std::io::Write;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::{log_add_exp, log_sum_exp, Dist};
use crate::error::{Error, Result};
use crate::format::fmt_float;

/// Largest number of sequences [`exact_guesswork_enum`] will sort.
pub const SEQUENCE_LIMIT: u128 = 1 << 24;

/// Largest number of types [`build_guess_table`] will build.
pub const TYPE_LIMIT: u128 = 1 << 22;

/// Scores closer than `TIE_TOLERANCE_PER_SYMBOL · n` nats count as ties.
pub const TIE_TOLERANCE_PER_SYMBOL: f64 = 1e-9;

/// Ranks of every length-`n` sequence, indexed by the sequence's position
/// in lexicographic order (base-`|𝒳|` digits, first symbol most significant).
#[derive(Debug, Clone)]
pub struct SequenceRanks {
    alphabet_size: usize,
    n: usize,
    ranks: Vec<u64>,
}

impl SequenceRanks {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Ranks in lexicographic sequence order.
    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn index_of(&self, seq: &[usize]) -> usize {
        debug_assert_eq!(seq.len(), self.n);
        seq.iter().fold(0, |acc, &s| acc * self.alphabet_size + s)
    }

    pub fn sequence(&self, mut index: usize) -> Vec<usize> {
        let mut seq = vec![0; self.n];
        for slot in seq.iter_mut().rev() {
            *slot = index % self.alphabet_size;
            index /= self.alphabet_size;
        }
        seq
    }

    pub fn rank(&self, seq: &[usize]) -> u64 {
        self.ranks[self.index_of(seq)]
    }

    /// Symbol counts of the sequence at `index`.
    pub fn counts(&self, index: usize) -> Vec<u32> {
        let mut c = vec![0u32; self.alphabet_size];
        for s in self.sequence(index) {
            c[s] += 1;
        }
        c
    }
}

/// Rank all `|𝒳|^n` sequences by decreasing `ν^n` probability.
pub fn exact_guesswork_enum(nu: &Dist, n: usize) -> Result<SequenceRanks> {
    if n == 0 {
        return Err(Error::Domain {
            what: "n",
            value: 0.0,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let k = nu.len();
    let total = checked_pow(k as u128, n, SEQUENCE_LIMIT).ok_or(Error::TooLarge {
        what: "sequence count",
        size: saturating_pow(k as u128, n),
        limit: SEQUENCE_LIMIT,
    })? as usize;

    let log_nu = nu.log_probs();
    // score of index i: score of i / k plus the last symbol
    let mut scores = vec![0.0f64; total];
    let mut block = 1;
    for _ in 0..n {
        for i in (0..block * k).rev() {
            scores[i] = scores[i / k] + log_nu[i % k];
        }
        block *= k;
    }

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let tol = TIE_TOLERANCE_PER_SYMBOL * n as f64;
    let mut start = 0;
    while start < total {
        let mut end = start + 1;
        while end < total && scores[order[end - 1]] - scores[order[end]] <= tol {
            end += 1;
        }
        order[start..end].sort_unstable();
        start = end;
    }

    let mut ranks = vec![0u64; total];
    for (pos, &idx) in order.iter().enumerate() {
        ranks[idx] = pos as u64 + 1;
    }
    Ok(SequenceRanks {
        alphabet_size: k,
        n,
        ranks,
    })
}

/// One type class of length-`n` sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeRecord {
    pub counts: Vec<u32>,
    /// `log n! − Σ log c_x!`
    pub log_class_size: f64,
    /// `Σ c_x log ν(x)`, the `ν^n` log-probability of each member.
    pub nu_score: f64,
    /// Log rank of the class's lexicographically first member (ties across
    /// classes count as not ahead, so this is a lower bound under ties).
    pub log_guesswork: f64,
    /// `log((r_first + r_last) / 2)` over the class's tie group.
    pub log_guesswork_mid: f64,
    /// `μ^n` log-probability of the whole class.
    pub log_mu_prob: f64,
}

#[derive(Debug, Clone)]
pub struct GuessTable {
    n: usize,
    model: Dist,
    source: Dist,
    tie_tol: f64,
    records: Vec<TypeRecord>,
    index: HashMap<Vec<u32>, usize>,
}

impl GuessTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The guessing distribution `ν`.
    pub fn model(&self) -> &Dist {
        &self.model
    }

    /// The source distribution `μ`.
    pub fn source(&self) -> &Dist {
        &self.source
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tol
    }

    /// Records in lexicographic order of their count vectors.
    pub fn records(&self) -> &[TypeRecord] {
        &self.records
    }

    pub fn record(&self, counts: &[u32]) -> Option<&TypeRecord> {
        self.index.get(counts).map(|&i| &self.records[i])
    }

    /// CSV with header `count_<label>...,log_class_size,nu_score,log_guesswork,log_mu_prob`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut header: Vec<String> = self
            .model
            .alphabet()
            .labels()
            .iter()
            .map(|l| format!("count_{l}"))
            .collect();
        header.extend(
            ["log_class_size", "nu_score", "log_guesswork", "log_mu_prob"].map(String::from),
        );
        writeln!(out, "{}", header.join(","))?;
        for r in &self.records {
            let mut row: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
            row.extend(
                [r.log_class_size, r.nu_score, r.log_guesswork, r.log_mu_prob].map(fmt_float),
            );
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Type table with the default tie tolerance.
pub fn build_guess_table(nu: &Dist, mu: &Dist, n: usize) -> Result<GuessTable> {
    build_guess_table_with(nu, mu, n, TIE_TOLERANCE_PER_SYMBOL * n as f64)
}

pub fn build_guess_table_with(nu: &Dist, mu: &Dist, n: usize, tie_tol: f64) -> Result<GuessTable> {
    nu.check_same_alphabet(mu)?;
    if n == 0 {
        return Err(Error::Domain {
            what: "n",
            value: 0.0,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let k = nu.len();
    let count = type_count(n, k);
    if count > TYPE_LIMIT {
        return Err(Error::TooLarge {
            what: "type count",
            size: count,
            limit: TYPE_LIMIT,
        });
    }

    let log_nu = nu.log_probs();
    let log_mu = mu.log_probs();
    let log_n_fact = ln_factorial(n as u32);
    let mut records = Vec::with_capacity(count as usize);
    for_each_composition(n as u32, k, |counts| {
        let log_class_size = log_n_fact - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>();
        let dot = |logs: &[f64]| -> f64 {
            counts
                .iter()
                .zip(logs)
                .filter(|(&c, _)| c > 0)
                .map(|(&c, l)| c as f64 * l)
                .sum()
        };
        records.push(TypeRecord {
            counts: counts.to_vec(),
            log_class_size,
            nu_score: dot(&log_nu),
            log_guesswork: 0.0,
            log_guesswork_mid: 0.0,
            log_mu_prob: log_class_size + dot(&log_mu),
        });
    });

    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| {
        records[b]
            .nu_score
            .total_cmp(&records[a].nu_score)
            .then(a.cmp(&b))
    });

    // log of the number of sequences in strictly more likely groups
    let mut log_ahead = f64::NEG_INFINITY;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len()
            && records[order[end - 1]].nu_score - records[order[end]].nu_score <= tie_tol
        {
            end += 1;
        }
        let group_sizes: Vec<f64> = order[start..end]
            .iter()
            .map(|&i| records[i].log_class_size)
            .collect();
        let log_group = log_sum_exp(&group_sizes);
        let log_first = log_add_exp(0.0, log_ahead);
        let log_last = log_add_exp(log_ahead, log_group);
        let log_mid = log_add_exp(log_first, log_last) - std::f64::consts::LN_2;
        for &i in &order[start..end] {
            records[i].log_guesswork = log_first;
            records[i].log_guesswork_mid = log_mid;
        }
        log_ahead = log_add_exp(log_ahead, log_group);
        start = end;
    }

    let index = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.counts.clone(), i))
        .collect();
    Ok(GuessTable {
        n,
        model: nu.clone(),
        source: mu.clone(),
        tie_tol,
        records,
        index,
    })
}

/// `(1/(nρ)) log Σ_q P_μ(q) · mid-rank(q)^ρ`.
pub fn exact_moment(table: &GuessTable, rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::NonPositiveRho(rho));
    }
    let terms: Vec<f64> = table
        .records
        .iter()
        .map(|r| r.log_mu_prob + rho * r.log_guesswork_mid)
        .collect();
    Ok(log_sum_exp(&terms) / (table.n as f64 * rho))
}

/// `−(1/n) log P_μ(|g/n − t| ≤ eps)`; `+∞` for an empty window.
pub fn exact_ldp_window(table: &GuessTable, t: f64, eps: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain {
            what: "eps",
            value: eps,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let n = table.n as f64;
    let terms: Vec<f64> = table
        .records
        .iter()
        .filter(|r| (r.log_guesswork / n - t).abs() <= eps)
        .map(|r| r.log_mu_prob)
        .collect();
    Ok(-log_sum_exp(&terms) / n)
}

/// `−(1/n) log P_μ(g > n R)`, the finite-`n` tail exponent of log-guesswork
/// (code length in nats); `+∞` when the tail is empty.
pub fn exact_tail_exponent(table: &GuessTable, rate: f64) -> f64 {
    let n = table.n as f64;
    let terms: Vec<f64> = table
        .records
        .iter()
        .filter(|r| r.log_guesswork > n * rate)
        .map(|r| r.log_mu_prob)
        .collect();
    -log_sum_exp(&terms) / n
}

/// `(1/n) E_μ[log mid-rank]`, the exact expected normalized log-guesswork.
pub fn exact_mean_log_guesswork(table: &GuessTable) -> f64 {
    let n = table.n as f64;
    table
        .records
        .iter()
        .map(|r| r.log_mu_prob.exp() * r.log_guesswork_mid)
        .sum::<f64>()
        / n
}

/// Draw `samples` sequences from `μ^n` and return `log G_ν / n` of each.
pub fn mc_log_guesswork(
    nu: &Dist,
    mu: &Dist,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let table = build_guess_table(nu, mu, n)?;
    Ok(mc_from_table(&table, samples, seed))
}

/// Monte Carlo draws against an existing table (its source is `μ`).
pub fn mc_from_table(table: &GuessTable, samples: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = WeightedIndex::new(table.source.probs()).expect("validated source weights");
    let k = table.source.len();
    let n = table.n;
    let mut counts = vec![0u32; k];
    (0..samples)
        .map(|_| {
            counts.iter_mut().for_each(|c| *c = 0);
            for _ in 0..n {
                counts[sampler.sample(&mut rng)] += 1;
            }
            let r = table.record(&counts).expect("every type is in the table");
            r.log_guesswork / n as f64
        })
        .collect()
}

/// Number of types `C(n + k − 1, k − 1)`, saturating at `u128::MAX`.
pub fn type_count(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..k as u128 {
        // C(n + i, i) = C(n + i − 1, i − 1) · (n + i) / i stays integral
        c = match c.checked_mul(n as u128 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    c
}

fn ln_factorial(c: u32) -> f64 {
    libm::lgamma(c as f64 + 1.0)
}

fn checked_pow(base: u128, exp: usize, limit: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Visit every count vector of length `k` summing to `n`, in lexicographic
/// order.
fn for_each_composition(n: u32, k: usize, mut f: impl FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, left: u32, k: usize, f: &mut impl FnMut(&[u32])) {
        if buf.len() + 1 == k {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for c in 0..=left {
            buf.push(c);
            rec(buf, left - c, k, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(k);
    rec(&mut buf, n, k, &mut f);
}
