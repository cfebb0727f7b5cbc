// Brute-force oracle sweeps with their report lines.

use projective_blowdown::oracle::{check_cone, check_ring, check_sympow, GridSpec, RingSweep, SymSweep};

pub fn run_example() -> projective_blowdown::Result<()> {
    let ring = check_ring(RingSweep { max_rank: 4, samples: 50, ..RingSweep::default() })?;
    let sympow = check_sympow(SymSweep { max_rank: 3, max_power: 4, ..SymSweep::default() })?;
    let cone = check_cone(&GridSpec { denominator: 2, ..GridSpec::default() }, 3, 3)?;
    for report in [&ring, &sympow, &cone] {
        print!("{report}");
        assert!(report.all_pass());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> projective_blowdown::Result<()> {
    run_example()
}
