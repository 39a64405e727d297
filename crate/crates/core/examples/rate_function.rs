// Rate function of normalized log-guesswork, matched and mismatched.

use guesswork::dist::Dist;
use guesswork::rate::RateFunction;
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let mu = Dist::new(&[0.05, 0.1, 0.85])?;
    let nu = Dist::new(&[0.3, 0.2, 0.5])?;
    let matched = RateFunction::matched(&mu)?;
    let mismatched = RateFunction::mismatched(&nu, &mu)?;

    println!("t      J matched   J mismatched");
    for i in 1..=10 {
        let t = 0.1 * i as f64 + 0.05;
        println!(
            "{t:.2}   {:.6}    {:.6}",
            matched.rate(t)?,
            mismatched.rate(t)?
        );
    }
    let p = mismatched.point(0.9)?;
    println!(
        "at t = 0.9: alpha = {:.6}, gamma = {:?}",
        p.alpha,
        p.gamma.probs()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
