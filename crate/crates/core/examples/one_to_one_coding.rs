// One-to-one code lengths under a mismatched model, against the
// prefix-free baseline.

use guesswork::coding::{asymptotic_report, code_length, finite_average_length, reliability};
use guesswork::dist::Dist;
use guesswork::oracle::build_guess_table;
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let mu = Dist::new(&[0.05, 0.1, 0.85])?;
    let nu = Dist::new(&[0.3, 0.2, 0.5])?;

    for rank in [1, 2, 3, 4, 7, 8, 1000] {
        println!("rank {rank:>4} -> {} bits", code_length(rank)?);
    }

    let report = asymptotic_report(&nu, &mu)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    for n in [100, 200, 400] {
        let table = build_guess_table(&nu, &mu, n)?;
        println!(
            "n = {n}: average length {:.5} nats",
            finite_average_length(&table)
        );
    }
    println!("reliability at R = 1.0: {:.5}", reliability(&nu, &mu, 1.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
