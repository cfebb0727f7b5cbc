// Restricted ratios of `P(V) ⊂ P(V ⊕ O)` and the classes realising them.

use projective_blowdown::bundles::SurfaceGenus;
use projective_blowdown::cones::{kahler_class_for_ratio, restrict_to_divisor, restricted_ratio};
use projective_blowdown::rational::frac;

pub fn run_example() -> projective_blowdown::Result<()> {
    println!("{:>6} {:>3} {:>3} {:>6}  model bundle", "alpha", "n", "g", "inf");
    for g in [0, 1] {
        let g = SurfaceGenus::new(g);
        for n in [2, 3] {
            for alpha in [-4, -1, 0, 2, 5] {
                let r = restricted_ratio(alpha, n, g)?;
                println!("{alpha:>6} {n:>3} {:>3} {:>6}  {}", g.get(), r.value, r.achieving_bundle);
            }
        }
    }

    let g = SurfaceGenus::new(0);
    let rho = frac(7, 3);
    let u = kahler_class_for_ratio(2, 3, g, &rho)?;
    let back = restrict_to_divisor(&u)?.cone_ratio()?;
    println!("ratio {rho} over alpha = 2, n = 3: class {u} restricts to ratio {back}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
