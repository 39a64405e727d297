// Growth exponents of guesswork moments: Renyi entropy when the model is
// right, the Varadhan form when it is not.

use guesswork::dist::Dist;
use guesswork::rate::{e_rho_matched, e_rho_mismatched, mismatch_penalty_gap};
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let mu = Dist::new(&[0.05, 0.1, 0.85])?;
    let models = [Dist::new(&[0.32, 0.3, 0.37])?, Dist::new(&[0.3, 0.2, 0.5])?];

    println!("rho    matched    (0.32,0.3,0.37)  (0.3,0.2,0.5)");
    for rho in [0.1, 0.5, 1.0, 2.0, 5.0, 9.6] {
        print!("{rho:<5}  {:.6}", e_rho_matched(&mu, rho)?.value);
        for nu in &models {
            print!("   {:.6}", e_rho_mismatched(nu, &mu, rho)?.value);
        }
        println!();
    }
    println!(
        "penalty at rho = 1: {:.6}",
        mismatch_penalty_gap(&models[1], &mu, 1.0)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
