//! `φ2 = φ1 + l₁/k` on a first-quadrant equality construction: exact
//! linearity of `h` in the norm and the identity `h_{l₁} = 2·l₁(ℓ')`.

use std::f64::consts::FRAC_PI_4;

use aniso_lgp::experiments::{l1_quadrant_run, perturbation_run};
use aniso_lgp::{Construction, ConstructionConfig, Mode, NormSpec};

fn main() -> aniso_lgp::Result<()> {
    for k in [1, 10, 100, 1000] {
        let r = perturbation_run(&NormSpec::l2(), k, FRAC_PI_4, 0.05, 10)?;
        println!(
            "k = {k:>4}: linearity {:.1e}, identity {:.1e}, min h_phi2 = {:.3e}, sup distance {:.6}, {:?}",
            r.max_linearity_residual,
            r.max_l1_identity_residual,
            r.min_h_phi2,
            r.sup_profile_distance,
            r.verdict
        );
    }

    let c = Construction::build(ConstructionConfig::new(
        NormSpec::l2(),
        0.2,
        0.6,
        8,
        Mode::FixedRatio(0.7),
    ))?;
    let r = l1_quadrant_run(&c)?;
    println!(
        "l1 quadrant: min h = {:.3e}, |E_8|/|E_0| = {:.3e} (threshold {:.3e}), nonexistence indicated: {}",
        r.h.min_h, r.area_ratio, r.decay_threshold, r.nonexistence_indicated
    );
    Ok(())
}
