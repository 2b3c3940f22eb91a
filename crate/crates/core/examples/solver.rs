//! Exact chord-matching solves: an explicit arc datum, then the levels of an
//! equality construction (ties) and a strict one (unique nested optimum).

use aniso_lgp::experiments::solve_level;
use aniso_lgp::solver::{brute_force, region_labels, solve_dp, DEFAULT_TIE_TOL};
use aniso_lgp::{Arc, Construction, ConstructionConfig, Mode, NormSpec, TraceDatum};

fn main() -> aniso_lgp::Result<()> {
    let datum = TraceDatum::from_arcs(vec![
        Arc::new(0.0, 0.6)?,
        Arc::new(1.0, 0.5)?,
        Arc::new(2.2, 0.9)?,
        Arc::new(4.0, 0.4)?,
    ])?;
    let l3 = NormSpec::lp(3.0)?;
    let report = solve_dp(&l3, &datum, DEFAULT_TIE_TOL)?;
    let (min, all) = brute_force(&l3, &datum)?;
    let labels = region_labels(&report.optimal, &datum)?;
    println!(
        "optimum {:.12} (brute force {:.12} over {} matchings), pairs {:?}, gap {:.3e}, |E| = {:.9}",
        report.optimal_value,
        min,
        all.len(),
        report.optimal.pairs,
        report.uniqueness_gap,
        labels.area_in
    );

    let l2 = NormSpec::l2();
    for mode in [Mode::Equality, Mode::EqualityFraction(0.8)] {
        let c = Construction::build(ConstructionConfig::new(l2.clone(), 0.1, 1.0, 6, mode))?;
        println!("{}:", mode.name());
        for n in 0..=6 {
            let s = solve_level(&c, &l2, n, DEFAULT_TIE_TOL)?;
            println!(
                "  level {n}: m = {:>2}  value {:.12}  gap {:+.3e}  tied choices {:>6}  optimum is E_n: {}",
                s.m, s.optimal_value, s.uniqueness_gap, s.n_ties, s.optimum_is_en
            );
        }
    }
    Ok(())
}
