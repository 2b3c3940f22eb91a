//! Finite-depth existence (equality mode) and nonexistence (strict mode)
//! indicators for `l₂`.

use aniso_lgp::construction::DEFAULT_TOL;
use aniso_lgp::experiments::{existence_run, nonexistence_run};
use aniso_lgp::solver::DEFAULT_TIE_TOL;
use aniso_lgp::{Construction, ConstructionConfig, Mode, NormSpec};

fn main() -> aniso_lgp::Result<()> {
    let l2 = NormSpec::l2();

    let eq = Construction::build(ConstructionConfig::new(l2.clone(), 0.1, 1.0, 8, Mode::Equality))?;
    let r = existence_run(&eq, &l2, DEFAULT_TOL, DEFAULT_TIE_TOL)?;
    for l in &r.levels {
        println!(
            "level {}: E_n {:.12}  E'_n {:.12}  optimum {:.12}  both optimal {}",
            l.level, l.en_value, l.eprime_value, l.optimal_value, l.both_optimal
        );
    }
    println!(
        "|E'_n| nonincreasing {}, limit lower bound {:.6e}, H1 bound {:?} holds {} => existence indicated: {}",
        r.eprime_nonincreasing,
        r.eprime_limit_lower_bound,
        r.measure_bound,
        r.measure_bound_holds,
        r.existence_indicated
    );

    let strict = Construction::build(ConstructionConfig::new(
        l2.clone(),
        0.1,
        1.0,
        8,
        Mode::EqualityFraction(0.8),
    ))?;
    let r = nonexistence_run(&strict, &l2, DEFAULT_TIE_TOL)?;
    for l in &r.levels {
        println!("level {}: gap {:.3e}, optimum is E_n {}", l.level, l.uniqueness_gap, l.optimum_is_en);
    }
    println!(
        "|E_n| strictly decreasing {}, ratio {:.3e} vs {:.3e} => nonexistence indicated: {}",
        r.area_strictly_decreasing, r.area_ratio, r.decay_threshold, r.nonexistence_indicated
    );
    Ok(())
}
