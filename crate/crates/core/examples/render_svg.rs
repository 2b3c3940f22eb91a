//! Writes SVG figures of `F_n` with the `E_n` chords (solid), the `E'_n`
//! chords (dashed) and the shaded optimal region.
//!
//!     cargo run --release --example render_svg -- [out_dir]

use std::path::PathBuf;

use aniso_lgp::cli::render_level;
use aniso_lgp::{Construction, ConstructionConfig, Mode, NormSpec};

fn main() -> aniso_lgp::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    let c = Construction::build(ConstructionConfig::new(
        NormSpec::l2(),
        1.2,
        90f64.to_radians(),
        4,
        Mode::FixedRatio(0.6),
    ))?;
    for (level, matching) in [(1, "en"), (2, "eprime"), (3, "optimal")] {
        let path = dir.join(format!("level{level}_{matching}.svg"));
        std::fs::write(&path, render_level(&c, level, matching)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
