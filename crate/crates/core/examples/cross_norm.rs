//! Certifies that the equality construction for `l₃` has strictly positive
//! `h` under (rescaled) `l₂` at every node, and shows the `g` scan of the
//! root trapezoid.
//!
//!     cargo run --release --example cross_norm -- [theta_center_deg] [depth]

use aniso_lgp::experiments::{cross_norm_run, direction_window_deg, g_scan, CrossNormOptions};
use aniso_lgp::NormSpec;

fn main() -> aniso_lgp::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta_deg: f64 = args.next().map_or(125.0, |s| s.parse().expect("theta in degrees"));
    let depth: usize = args.next().map_or(12, |s| s.parse().expect("depth"));
    let l3 = NormSpec::lp(3.0)?;
    let l2 = NormSpec::l2();

    let (c, report) = cross_norm_run(
        &l3,
        &l2,
        theta_deg.to_radians(),
        0.05,
        depth,
        &CrossNormOptions::default(),
    )?;
    let (lo, hi) = direction_window_deg(&c);
    println!("chord directions swept: {lo:.3}° .. {hi:.3}°");
    println!("rescale of l2: {:.6}", report.rescale);
    println!(
        "derivative gap in [{:.3e}, {:.3e}], curvature gap in [{:.3e}, {:.3e}], orientation {:?}",
        report.scan.min_derivative_gap,
        report.scan.max_derivative_gap,
        report.scan.min_curvature_gap,
        report.scan.max_curvature_gap,
        report.scan.orientation
    );
    println!(
        "{} internal nodes, min h = {:.3e}, nonpositive = {}",
        report.h.values.len(),
        report.h.min_h,
        report.h.nonpositive_count
    );
    for (a, b) in report.levels_phi1.iter().zip(&report.levels_phi2) {
        println!(
            "level {:>2}: l3 ties {:>10.0}   l2 gap {:.3e} unique-E_n {}",
            a.level, a.n_ties, b.uniqueness_gap, b.optimum_is_en
        );
    }
    println!("verdict: {:?}", report.verdict);

    let scan = g_scan(&l3, &l2, &c.node(0).arc, 64)?;
    println!(
        "g' on the root trapezoid: {} negative, {} positive of {}",
        scan.negative_count,
        scan.positive_count,
        scan.rows.len()
    );
    for row in scan.rows.iter().step_by(8) {
        println!("  α = {:.5}  g = {:+.4e}  g' = {:+.4e}", row.alpha, row.g, row.g_prime);
    }
    Ok(())
}
