// Project a source onto the tilted family of a mismatched model and check
// the Pythagorean split of the divergence.

use guesswork::dist::{cross_entropy, entropy, kl_divergence, Dist};
use guesswork::rate::check_hypothesis;
use guesswork::solver::{solve_projection, RootConfig};
use guesswork::tilt::TiltCurve;
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let mu = Dist::new(&[0.05, 0.1, 0.85])?;
    let nu = Dist::new(&[0.3, 0.2, 0.5])?;

    let pi = solve_projection(&nu, &mu, &RootConfig::default())?;
    println!("projection alpha  {:.6}", pi.param);
    println!("projection        {:?}", pi.dist.probs());
    println!("H(mu||nu)         {:.6}", cross_entropy(&mu, &nu)?);
    println!("H(pi||nu)         {:.6}", cross_entropy(&pi.dist, &nu)?);
    println!(
        "H(mu), H(pi)      {:.6}, {:.6}",
        entropy(&mu),
        entropy(&pi.dist)
    );
    println!("on positive side  {}", check_hypothesis(&nu, &mu).is_ok());

    let gamma = TiltCurve::uniform(nu.clone())?.at(-1.0);
    let whole = kl_divergence(&mu, &gamma)?;
    let split = kl_divergence(&mu, &pi.dist)? + kl_divergence(&pi.dist, &gamma)?;
    println!("D(mu||gamma) = {whole:.12}");
    println!("D(mu||pi) + D(pi||gamma) = {split:.12}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
