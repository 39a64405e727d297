// Exact finite-n guesswork by enumeration and by type classes, compared
// with the asymptotic exponents.

use guesswork::dist::Dist;
use guesswork::oracle::{
    build_guess_table, exact_guesswork_enum, exact_ldp_window, exact_moment, mc_log_guesswork,
};
use guesswork::rate::RateFunction;
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let mu = Dist::new(&[0.05, 0.1, 0.85])?;
    let nu = Dist::new(&[0.3, 0.2, 0.5])?;

    let ranks = exact_guesswork_enum(&nu, 2)?;
    for (i, r) in ranks.ranks().iter().enumerate() {
        let word: String = ranks
            .sequence(i)
            .iter()
            .map(|&s| (b'a' + s as u8) as char)
            .collect();
        println!("{word} -> {r}");
    }

    let f = RateFunction::mismatched(&nu, &mu)?;
    let (e1, j9) = (f.moment_exponent(1.0)?, f.rate(0.9)?);
    println!("n     moment(rho=1)  window(t=0.9)");
    for n in [50, 100, 200, 400] {
        let table = build_guess_table(&nu, &mu, n)?;
        println!(
            "{n:<5} {:<14.5} {:.5}",
            exact_moment(&table, 1.0)?,
            exact_ldp_window(&table, 0.9, 0.02)?
        );
    }

    println!("limit {e1:<14.5} {j9:.5}");

    let draws = mc_log_guesswork(&nu, &mu, 200, 2000, 42)?;
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    println!("Monte Carlo mean of log G / n at n = 200: {mean:.5}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
