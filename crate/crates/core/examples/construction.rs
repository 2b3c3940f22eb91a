//! Builds Cantor-type arc families in the three modes and prints per-level
//! measures, cap areas and removed-arc ratios; writes a JSON dump.
//!
//!     cargo run --release --example construction -- [out.json]

use aniso_lgp::construction::isotropic_measure_lower_bound;
use aniso_lgp::{Construction, ConstructionConfig, Mode, NormSpec};

fn main() -> aniso_lgp::Result<()> {
    let depth = 12;
    for mode in [Mode::Equality, Mode::EqualityFraction(0.8), Mode::FixedRatio(0.5)] {
        let c = Construction::build(ConstructionConfig::new(NormSpec::l2(), 0.1, 1.0, depth, mode))?;
        println!("{} (rho {:?})", mode.name(), mode.rho());
        for n in (0..=depth).step_by(3) {
            println!(
                "  level {n:>2}: H1(F_n) = {:.12}  |E_n| = {:.6e}  |E'_n| = {:.6e}",
                c.measure(n)?,
                c.en_area(n)?,
                c.eprime_area(n)?
            );
        }
        let worst = c
            .ratios()
            .iter()
            .map(|r| r.r / (r.child_alpha * r.child_alpha))
            .fold(0.0f64, f64::max);
        println!("  max r/α² over nodes: {worst:.6}");
    }
    println!(
        "measure lower bound at depth {depth}: {:.12}",
        isotropic_measure_lower_bound(0.1, depth)
    );

    let c = Construction::build(ConstructionConfig::new(
        "lp:3".parse()?,
        0.2,
        0.5,
        4,
        Mode::Equality,
    ))?;
    let text = c.to_json()?;
    assert_eq!(Construction::from_json(&text)?.to_json()?, text);
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, &text)?,
        None => println!("l3 dump: {} bytes, {} nodes", text.len(), c.node_count()),
    }
    Ok(())
}
