// Blow-down verdicts for fibred divisors in six-manifolds.

use projective_blowdown::blowdown::{
    alpha_from_blowup_normal, blowdown_verdict_dim6, validate_verdict, ExceptionalDivisorData,
};
use projective_blowdown::bundles::SurfaceGenus;
use projective_blowdown::cohomology::{BundleContext, DivisorClass};
use projective_blowdown::rational::{frac, int};

fn report(label: &str, d: &ExceptionalDivisorData) -> projective_blowdown::Result<()> {
    let v = blowdown_verdict_dim6(d)?;
    print!("{label}: {}", v.name());
    if let Some(reason) = v.reason() {
        print!(" ({reason})");
    }
    if let (Some(c), Some(check)) = (v.certificate(), validate_verdict(&v, d)) {
        print!(" via V = {}, class {}, valid {}", c.bundle, c.kahler_class, check?.is_valid());
    }
    println!();
    Ok(())
}

pub fn run_example() -> projective_blowdown::Result<()> {
    report("P² over a point", &ExceptionalDivisorData::point(3)?)?;

    // blowing up a sphere with normal degree 1
    let alpha = alpha_from_blowup_normal(1);
    let g0 = SurfaceGenus::new(0);
    let ctx = BundleContext::sub(2, -alpha, g0)?;
    for y in [frac(3, 2), int(1), int(4)] {
        let omega = DivisorClass::new(int(1), y, ctx);
        let d = ExceptionalDivisorData::surface(g0, 2, alpha, omega.clone(), None)?;
        report(&format!("sphere, alpha {alpha}, [ω|D] = {omega}"), &d)?;
    }

    for (a, b) in [(int(1), int(2)), (int(3), int(1)), (int(1), int(1))] {
        let label = format!("S²×S² with ruling areas ({a}, {b})");
        report(&label, &ExceptionalDivisorData::ruled_s2xs2(a, b)?)?;
    }

    let g2 = SurfaceGenus::new(2);
    let ctx = BundleContext::sub(2, -3, g2)?;
    let d = ExceptionalDivisorData::surface(g2, 2, 3, DivisorClass::new(int(1), int(0), ctx), None)?;
    report("genus 2, alpha 3, ratio 3", &d)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
