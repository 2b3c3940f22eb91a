//! Parsing, evaluating and probing planar norms.

use aniso_lgp::NormSpec;

fn main() -> aniso_lgp::Result<()> {
    let specs = ["lp:2", "lp:1", "lp:3", "lp:2 + 0.1*lp:1", "scale:2*(lp:4) + lp:1.5"];
    for text in specs {
        let norm: NormSpec = text.parse()?;
        let probe = norm.strict_convexity_probe(64);
        println!(
            "{:<28} φ(3,4) = {:<10.6} profile(30°) = {:<9.6} strictly convex: {} (margin {:.2e})",
            norm.to_string(),
            norm.eval([3.0, 4.0]),
            norm.circle_profile(30f64.to_radians()),
            probe.passed,
            probe.worst_margin
        );
    }

    let l3 = NormSpec::lp(3.0)?;
    let theta = 35f64.to_radians();
    let c = NormSpec::rescale_to_match(&l3, &NormSpec::l2(), theta);
    println!("l2 rescaled by {c:.9} agrees with l3 at 35°");

    match "lp:0.5".parse::<NormSpec>() {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
