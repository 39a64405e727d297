// Walk along the tilted family of a model and report where a few
// distributions sit relative to it.

use guesswork::dist::{entropy, Dist};
use guesswork::tilt::{family_membership, linear_family_level, TiltCurve, TiltParam};
use guesswork::Result;

pub fn run_example() -> Result<()> {
    let nu = Dist::new(&[0.3, 0.2, 0.5])?;
    let curve = TiltCurve::uniform(nu.clone())?;

    println!("alpha   probs                          H        level");
    for alpha in [-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 8.0] {
        let t = curve.at(alpha);
        let p = t.probs();
        println!(
            "{alpha:>5}   ({:.4}, {:.4}, {:.4})   {:.5}  {:.5}",
            p[0],
            p[1],
            p[2],
            entropy(&t),
            linear_family_level(&nu, alpha)?
        );
    }
    println!("alpha = +inf -> {:?}", curve.at(TiltParam::PosInf).probs());

    for probs in [[0.3, 0.2, 0.5], [0.05, 0.1, 0.85], [1.0, 1.0, 1.0]] {
        let candidate = Dist::new(&probs)?;
        println!("{probs:?}: {:?}", family_membership(&candidate, &nu)?);
    }
    println!(
        "tilt at -1.5: {:?}",
        family_membership(&curve.at(-1.5), &nu)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
