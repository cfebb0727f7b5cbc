// Curve cones and Kähler cones of split, semistable and mixed bundles.

use projective_blowdown::bundles::{BundleSpec, SurfaceGenus};
use projective_blowdown::cohomology::DivisorClass;
use projective_blowdown::cones::{cone_of, kahler_cone_ratio, kahler_membership, ProjectiveModel};
use projective_blowdown::rational::{frac, int};

pub fn run_example() -> projective_blowdown::Result<()> {
    let g0 = SurfaceGenus::new(0);
    let split = BundleSpec::decomposable(g0, vec![-2, -1, 3])?;
    let model = ProjectiveModel::from(split.clone());
    let cone = cone_of(&model)?;
    let rays: Vec<String> = cone.rays.iter().map(ToString::to_string).collect();
    println!("P({split}): rays {}, ratio {}, {}", rays.join(", "), kahler_cone_ratio(&split)?, cone.exactness);

    let ctx = model.context()?;
    for (x, y) in [(int(1), int(3)), (int(1), int(2)), (int(2), frac(9, 2))] {
        let u = DivisorClass::new(x, y, ctx);
        println!("  {u}: Kähler {}", kahler_membership(&u, &model)?);
    }

    let g1 = SurfaceGenus::new(1);
    let v = BundleSpec::semistable(g1, 2, -3)?;
    let cone = cone_of(&ProjectiveModel::from(v.clone()))?;
    println!("P({v}): Kähler cone is the forward cone: {}", cone.kahler_is_forward_cone);

    let mixed = ProjectiveModel::with_trivial_summand(&v)?;
    let ctx = mixed.context()?;
    let u = DivisorClass::new(int(2), int(4), ctx);
    println!("P(V ⊕ O): {u} Kähler {} ({})", kahler_membership(&u, &mixed)?, cone_of(&mixed)?.exactness);
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
