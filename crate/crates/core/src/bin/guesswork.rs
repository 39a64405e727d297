use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use guesswork::experiment::{
    cmd_coding, cmd_moments, cmd_oracle, cmd_project, cmd_rate, load_dist, ExperimentConfig,
};
use guesswork::Result;

#[derive(Parser)]
#[command(
    name = "guesswork",
    version,
    about = "Mismatched guesswork experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate function J(t) as `t,alpha,J` rows.
    Rate(Common),
    /// Moment exponents E_rho as `rho,E` rows.
    Moments(Common),
    /// I-projection of mu onto the tilted family of nu, as JSON.
    Project(Common),
    /// Exact finite-n studies as `n,quantity,value,asymptote,gap` rows.
    Oracle(Common),
    /// One-to-one coding report, as JSON.
    Coding(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Source distribution (Dist JSON).
    #[arg(long)]
    mu: Option<PathBuf>,
    /// Guessing distribution (Dist JSON); defaults to mu.
    #[arg(long)]
    nu: Option<PathBuf>,
    /// Output file (stdout if absent); a directory with --paper-fig3.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// start:stop:count
    #[arg(long)]
    t_grid: Option<String>,
    /// start:stop:count
    #[arg(long)]
    rho_grid: Option<String>,
    /// Comma-separated block lengths.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    n_list: Option<Vec<usize>>,
    #[arg(long)]
    eps: Option<f64>,
    /// Comma-separated window centres.
    #[arg(long, value_delimiter = ',')]
    t_list: Option<Vec<f64>>,
    /// Comma-separated moment orders.
    #[arg(long, value_delimiter = ',')]
    rho_list: Option<Vec<f64>>,
    /// Monte Carlo draws written to --mc-out.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    mc_out: Option<PathBuf>,
    /// Type table CSV at the largest n.
    #[arg(long)]
    table_out: Option<PathBuf>,
    /// Emit the three reference moment curves into the --out directory.
    #[arg(long)]
    paper_fig3: bool,
}

impl Common {
    fn into_config(self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(p) = &self.mu {
            cfg.mu = Some(load_dist(p)?);
        }
        if let Some(p) = &self.nu {
            cfg.nu = Some(load_dist(p)?);
        }
        macro_rules! set {
            ($($field:ident),*) => {$(
                if self.$field.is_some() {
                    cfg.$field = self.$field;
                }
            )*};
        }
        set!(
            out, seed, t_grid, rho_grid, n_list, eps, t_list, rho_list, samples, mc_out, table_out
        );
        cfg.paper_fig3 |= self.paper_fig3;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<()> {
    let (common, cmd): (Common, fn(&ExperimentConfig) -> Result<()>) = match cli.command {
        Command::Rate(c) => (c, cmd_rate),
        Command::Moments(c) => (c, cmd_moments),
        Command::Project(c) => (c, cmd_project),
        Command::Oracle(c) => (c, cmd_oracle),
        Command::Coding(c) => (c, cmd_coding),
    };
    cmd(&common.into_config()?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
