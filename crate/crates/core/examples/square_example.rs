//! Two competitors on the unit square under `l_p`: slanted corner cuts
//! against horizontal cuts.

use aniso_lgp::experiments::square_example;

fn main() -> aniso_lgp::Result<()> {
    for (a, b) in [(0.5, 0.4), (0.3, 0.3)] {
        for row in square_example(a, b, &[1.5, 2.0, 3.0, 4.0])? {
            println!(
                "a = {a}, b = {b}, p = {}: E1 = {:.9}, E2 = {:.9}, winner {}, solution exists: {}",
                row.p, row.value_e1, row.value_e2, row.winner, row.solution_exists
            );
        }
    }
    Ok(())
}
