//! Experiment orchestration behind the command-line tool: config parsing,
//! grids, and CSV/JSON emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coding::{asymptotic_report, finite_average_length};
use crate::dist::Dist;
use crate::dist::{cross_entropy, entropy, kl_divergence};
use crate::error::{Error, Result};
use crate::format::fmt_float;
use crate::oracle::{build_guess_table, exact_ldp_window, exact_moment, mc_from_table, GuessTable};
use crate::rate::{e_rho_matched, e_rho_mismatched, rate_curve, RateFunction, DOMAIN_MARGIN};
use crate::solver::{solve_projection, RootConfig};

/// Source used by the reference-curve preset.
pub const FIG3_MU: [f64; 3] = [0.05, 0.1, 0.85];
/// Models of the preset's two mismatched curves.
pub const FIG3_NU_A: [f64; 3] = [0.32, 0.3, 0.37];
pub const FIG3_NU_B: [f64; 3] = [0.3, 0.2, 0.5];

/// `ρ = 0.1, 0.6, …, 9.6`.
pub fn fig3_rho_grid() -> Vec<f64> {
    (0..20).map(|i| 0.1 + 0.5 * i as f64).collect()
}

/// `ρ = 0.1, 1.1, …, 9.1`, the sampling of the `ν = (0.32, 0.3, 0.37)` curve.
pub fn fig3_rho_grid_coarse() -> Vec<f64> {
    (0..10).map(|i| 0.1 + i as f64).collect()
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mu: Option<Dist>,
    /// Defaults to `mu`.
    #[serde(default)]
    pub nu: Option<Dist>,
    /// `start:stop:count` over `t`.
    #[serde(default)]
    pub t_grid: Option<String>,
    /// `start:stop:count` over `ρ`.
    #[serde(default)]
    pub rho_grid: Option<String>,
    #[serde(default)]
    pub n_list: Option<Vec<usize>>,
    /// Half-width of LDP windows.
    #[serde(default)]
    pub eps: Option<f64>,
    /// Window centres for the oracle study.
    #[serde(default)]
    pub t_list: Option<Vec<f64>>,
    /// Moment orders for the oracle study.
    #[serde(default)]
    pub rho_list: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Monte Carlo draws at the largest `n` of the oracle study.
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub mc_out: Option<PathBuf>,
    #[serde(default)]
    pub table_out: Option<PathBuf>,
    #[serde(default)]
    pub paper_fig3: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn mu(&self) -> Result<&Dist> {
        self.mu
            .as_ref()
            .ok_or_else(|| Error::Config("mu is required".into()))
    }

    pub fn nu(&self) -> Result<&Dist> {
        match &self.nu {
            Some(nu) => Ok(nu),
            None => self.mu(),
        }
    }

    fn pair(&self) -> Result<(Dist, Dist)> {
        let (nu, mu) = (self.nu()?.clone(), self.mu()?.clone());
        if !nu.same_alphabet(&mu) {
            return Err(Error::AlphabetMismatch);
        }
        Ok((nu, mu))
    }
}

/// Read a Dist JSON file.
pub fn load_dist(path: &Path) -> Result<Dist> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

/// Parse `start:stop:count` into `count` evenly spaced points, endpoints
/// included.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("grid {text:?} is not start:stop:count"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, c] = parts[..] else {
        return Err(bad());
    };
    let start: f64 = a.trim().parse().map_err(|_| bad())?;
    let stop: f64 = b.trim().parse().map_err(|_| bad())?;
    let count: usize = c.trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect())
}

/// Clip grid points into `[δ, log|𝒳| − δ]`.
pub fn clip_to_domain(grid: &mut [f64], log_k: f64) {
    for t in grid {
        *t = t.clamp(DOMAIN_MARGIN, log_k - DOMAIN_MARGIN);
    }
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// `t,alpha,J` rows over the configured grid.
pub fn rate_csv(cfg: &ExperimentConfig) -> Result<String> {
    let (nu, mu) = cfg.pair()?;
    let log_k = (mu.len() as f64).ln();
    let mut grid = match &cfg.t_grid {
        Some(g) => parse_grid(g)?,
        None => parse_grid(&format!("0:{log_k}:101"))?,
    };
    clip_to_domain(&mut grid, log_k);
    let mut out = String::from("t,alpha,J\n");
    for p in rate_curve(&nu, &mu, &grid)? {
        out += &format!(
            "{},{},{}\n",
            fmt_float(p.t),
            fmt_float(p.alpha),
            fmt_float(p.rate)
        );
    }
    Ok(out)
}

pub fn cmd_rate(cfg: &ExperimentConfig) -> Result<()> {
    let csv = rate_csv(cfg)?;
    write_out(cfg.out.as_deref(), csv.as_bytes())
}

/// `rho,E` rows; the closed Rényi form when `ν = μ`.
pub fn moments_csv(nu: &Dist, mu: &Dist, rhos: &[f64]) -> Result<String> {
    let mut out = String::from("rho,E\n");
    for &rho in rhos {
        let e = if nu == mu {
            e_rho_matched(mu, rho)?
        } else {
            e_rho_mismatched(nu, mu, rho)?
        };
        out += &format!("{},{}\n", fmt_float(e.rho), fmt_float(e.value));
    }
    Ok(out)
}

/// The three reference curves as `(file name, csv)`.
pub fn fig3_csvs() -> Result<Vec<(&'static str, String)>> {
    let mu = Dist::new(&FIG3_MU)?;
    let nu_a = Dist::new(&FIG3_NU_A)?;
    let nu_b = Dist::new(&FIG3_NU_B)?;
    Ok(vec![
        (
            "fig3_nu_eq_mu.csv",
            moments_csv(&mu, &mu, &fig3_rho_grid())?,
        ),
        (
            "fig3_nu_032_030_037.csv",
            moments_csv(&nu_a, &mu, &fig3_rho_grid_coarse())?,
        ),
        (
            "fig3_nu_030_020_050.csv",
            moments_csv(&nu_b, &mu, &fig3_rho_grid())?,
        ),
    ])
}

/// With `paper_fig3`, `out` names a directory that receives the three
/// reference-curve files; otherwise one `rho,E` CSV for the configured pair.
pub fn cmd_moments(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.paper_fig3 {
        let dir = cfg
            .out
            .as_deref()
            .ok_or_else(|| Error::Config("--paper-fig3 needs --out DIR".into()))?;
        fs::create_dir_all(dir)?;
        for (name, csv) in fig3_csvs()? {
            fs::write(dir.join(name), csv)?;
        }
        return Ok(());
    }
    let (nu, mu) = cfg.pair()?;
    let rhos = match &cfg.rho_grid {
        Some(g) => parse_grid(g)?,
        None => fig3_rho_grid(),
    };
    let csv = moments_csv(&nu, &mu, &rhos)?;
    write_out(cfg.out.as_deref(), csv.as_bytes())
}

/// Round to the 15 significant digits used everywhere else in the output.
fn num(x: f64) -> Value {
    let rounded: f64 = fmt_float(x).parse().unwrap_or(x);
    json!(rounded)
}

fn dist_json(d: &Dist) -> Value {
    json!({
        "alphabet": d.alphabet().labels(),
        "probs": d.probs().iter().map(|&p| num(p)).collect::<Vec<_>>(),
    })
}

/// The I-projection of `μ` onto the tilted family of `ν`.
pub fn project_json(cfg: &ExperimentConfig) -> Result<String> {
    let (nu, mu) = cfg.pair()?;
    let root = solve_projection(&nu, &mu, &RootConfig::default())?;
    let pi = &root.dist;
    let v = json!({
        "alpha": num(root.param),
        "projection": dist_json(pi),
        "level": num(cross_entropy(&mu, &nu)?),
        "H_projection": num(entropy(pi)),
        "H_mu": num(entropy(&mu)),
        "D_mu_projection": num(kl_divergence(&mu, pi)?),
        "D_projection_nu": num(kl_divergence(pi, &nu)?),
        "D_mu_nu": num(kl_divergence(&mu, &nu)?),
        "positive_tilt": root.param > 0.0,
    });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn cmd_project(cfg: &ExperimentConfig) -> Result<()> {
    let text = project_json(cfg)?;
    write_out(cfg.out.as_deref(), text.as_bytes())
}

fn n_list(cfg: &ExperimentConfig) -> Result<Vec<usize>> {
    match &cfg.n_list {
        Some(ns) if !ns.is_empty() => {
            if ns.contains(&0) {
                return Err(Error::Config("n-list entries must be positive".into()));
            }
            Ok(ns.clone())
        }
        _ => Err(Error::Config("n-list is empty".into())),
    }
}

/// Finite-`n` studies against their limits, as
/// `n,quantity,value,asymptote,gap` rows with `gap = |value − asymptote|`.
pub struct OracleOutput {
    pub csv: String,
    /// The table at the largest `n`.
    pub table: GuessTable,
}

pub fn oracle_study(cfg: &ExperimentConfig) -> Result<OracleOutput> {
    let (nu, mu) = cfg.pair()?;
    let ns = n_list(cfg)?;
    let rhos = cfg.rho_list.clone().unwrap_or_else(|| vec![1.0]);
    let ts = cfg.t_list.clone().unwrap_or_else(|| vec![0.7, 0.9, 1.0]);
    let eps = cfg.eps.unwrap_or(0.02);
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Config(format!("eps must be positive, got {eps}")));
    }

    let f = RateFunction::for_pair(&nu, &mu)?;
    let moment_limits = rhos
        .iter()
        .map(|&rho| {
            if nu == mu {
                e_rho_matched(&mu, rho).map(|m| m.value)
            } else {
                f.moment_exponent(rho)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let window_limits = ts
        .iter()
        .map(|&t| f.rate(t))
        .collect::<Result<Vec<f64>>>()?;
    let length_limit = asymptotic_report(&nu, &mu)?.l_mismatched;

    let mut csv = String::from("n,quantity,value,asymptote,gap\n");
    let mut row = |n: usize, q: String, value: f64, limit: f64| {
        csv += &format!(
            "{n},{q},{},{},{}\n",
            fmt_float(value),
            fmt_float(limit),
            fmt_float((value - limit).abs())
        );
    };
    let mut last = None;
    for &n in &ns {
        let table = build_guess_table(&nu, &mu, n)?;
        for (&rho, &lim) in rhos.iter().zip(&moment_limits) {
            row(
                n,
                format!("moment:rho={}", fmt_float(rho)),
                exact_moment(&table, rho)?,
                lim,
            );
        }
        for (&t, &lim) in ts.iter().zip(&window_limits) {
            row(
                n,
                format!("window:t={}", fmt_float(t)),
                exact_ldp_window(&table, t, eps)?,
                lim,
            );
        }
        row(
            n,
            "average_length".into(),
            finite_average_length(&table),
            length_limit,
        );
        if last.as_ref().is_none_or(|t: &GuessTable| t.n() < n) {
            last = Some(table);
        }
    }
    Ok(OracleOutput {
        csv,
        table: last.expect("non-empty n-list"),
    })
}

pub fn cmd_oracle(cfg: &ExperimentConfig) -> Result<()> {
    let study = oracle_study(cfg)?;
    write_out(cfg.out.as_deref(), study.csv.as_bytes())?;
    if let Some(path) = &cfg.table_out {
        study.table.write_csv(fs::File::create(path)?)?;
    }
    if let Some(path) = &cfg.mc_out {
        let samples = cfg.samples.unwrap_or(1000);
        let draws = mc_from_table(&study.table, samples, cfg.seed.unwrap_or(0));
        let mut text = String::with_capacity(draws.len() * 18);
        for x in draws {
            text += &fmt_float(x);
            text.push('\n');
        }
        fs::write(path, text)?;
    }
    Ok(())
}

/// The asymptotic report plus finite-`n` average lengths for the n-list.
pub fn coding_json(cfg: &ExperimentConfig) -> Result<String> {
    let (nu, mu) = cfg.pair()?;
    let r = asymptotic_report(&nu, &mu)?;
    let mut finite = Vec::new();
    for &n in cfg.n_list.as_deref().unwrap_or(&[]) {
        if n == 0 {
            return Err(Error::Config("n-list entries must be positive".into()));
        }
        let l = finite_average_length(&build_guess_table(&nu, &mu, n)?);
        finite.push(json!({
            "n": n,
            "L_nats": num(l),
            "L_bits": num(l / std::f64::consts::LN_2),
        }));
    }
    let v = json!({
        "H_mu": num(r.h_mu),
        "L_matched": num(r.l_matched),
        "L_mismatched": num(r.l_mismatched),
        "penalty_one_to_one": num(r.penalty_one_to_one),
        "penalty_prefix_free": num(r.penalty_prefix_free),
        "projection_alpha": num(r.projection_alpha),
        "finite": finite,
    });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn cmd_coding(cfg: &ExperimentConfig) -> Result<()> {
    let text = coding_json(cfg)?;
    write_out(cfg.out.as_deref(), text.as_bytes())
}
