//! The trapezoid functional `h` and the equal-angle root for one parent arc.

use aniso_lgp::construction::solve_equal_angle;
use aniso_lgp::geometry::{isotropic_h, segment_area, trapezoid_h};
use aniso_lgp::{Arc, NormSpec};

fn main() -> aniso_lgp::Result<()> {
    let parent = Arc::new(0.7, 1.0)?;
    let l2 = NormSpec::l2();
    for alpha in [0.1, 0.2, 0.3, 0.4, 0.49, 0.4999] {
        let r = trapezoid_h(&l2, &parent, alpha)?;
        println!(
            "α = {alpha:<7} h = {:+.9}  (closed form {:+.9})  parent {:.6} ℓ' {:.6} children {:.6} + {:.6}",
            r.h,
            isotropic_h(1.0, alpha),
            r.parent_len,
            r.prime_len,
            r.child0_len,
            r.child1_len
        );
    }

    for norm in ["lp:2", "lp:3", "lp:1.5", "lp:2 + 0.2*lp:1"] {
        let norm: NormSpec = norm.parse()?;
        let a = solve_equal_angle(&norm, &parent, 1e-12)?;
        let r = trapezoid_h(&norm, &parent, a)?;
        println!("{norm:<18} α* = {a:.12}  residual {:.1e}", r.h);
    }
    println!("segment area of a unit-width arc: {:.12}", segment_area(1.0));
    Ok(())
}
