// The cohomology ring of `P(E)` and the ratio of a divisor class.

use projective_blowdown::bundles::SurfaceGenus;
use projective_blowdown::cohomology::{BundleContext, CurveClass, DivisorClass, RingElement};
use projective_blowdown::rational::{frac, int};

pub fn run_example() -> projective_blowdown::Result<()> {
    let ctx = BundleContext::quotient(3, 5, SurfaceGenus::new(2))?;
    let u = DivisorClass::new(int(2), frac(-1, 3), ctx);

    let cube = RingElement::from_class(&u).pow(3);
    println!("u = {u}");
    println!("u^3 = {cube}");
    println!("∫ u^3 = {} (closed form {})", cube.integrate(), u.top_power());
    println!("<u, l> = {}, <u, η> = {}", u.pair(&CurveClass::line(ctx))?, u.pair(&CurveClass::eta(ctx))?);
    println!("ratio {}", u.cone_ratio()?);

    // P(E) = P_s(E*): same coordinates, negated degree, same ratio
    let sub = u.convert_convention();
    println!("as {sub}: ratio {}", sub.cone_ratio()?);

    // twisting E by O(t) shifts the fibre coefficient
    let twisted = u.twist_class(4)?;
    println!("twisted by O(4): {twisted}, ratio {}", twisted.cone_ratio()?);
    println!("topological type {}", ctx.topological_type());
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
