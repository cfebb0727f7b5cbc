// Slopes, twists, duals and symmetric powers of bundles over a curve.

use projective_blowdown::bundles::{semistable_exists, sym_rank_degree, BundleSpec, SurfaceGenus};

pub fn run_example() -> projective_blowdown::Result<()> {
    let sphere = SurfaceGenus::new(0);
    let e = BundleSpec::decomposable(sphere, vec![0, 2])?;
    println!("E = {e}, slope {}", e.slope());

    for m in 1..=4 {
        let s = e.sym_power(m)?;
        let (rank, degree) = sym_rank_degree(e.rank(), e.degree(), m)?;
        assert_eq!((u64::from(s.rank()), s.degree()), (rank, degree));
        println!("Sym^{m} E = {s}");
    }

    println!("E ⊗ O(-1) = {}", e.twist(-1)?);
    println!("E* = {}", e.dual());
    println!("E semistable: {}", e.is_semistable());

    let torus = SurfaceGenus::new(1);
    let v = BundleSpec::semistable(torus, 2, -3)?;
    let (rank, degree) = sym_rank_degree(v.rank(), v.degree(), 2)?;
    println!("over the torus: {v}, Sym^2 has rank {rank} and degree {degree}");
    println!("rank 2, degree -3 semistable over the sphere exists: {}", semistable_exists(sphere, 2, -3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
