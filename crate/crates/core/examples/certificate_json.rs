// Driving the command-line front end in-process, including a spec file.

use std::io::Write;

use projective_blowdown::cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["pbundle", "blowdown", "--genus", "0", "--alpha", "-1", "--class", "1,3/2", "--json"];
    let code = cli::run(args, &mut out, &mut err);
    println!("exit {code}\n{}", String::from_utf8(out)?);

    let mut spec = tempfile::NamedTempFile::new()?;
    write!(
        spec,
        r#"[
  {{"command": "bundle", "action": "sympow", "degrees": [0, 2], "m": 2}},
  {{"command": "cone", "degrees": [-2, -1], "class": "1,3/2"}}
]"#
    )?;
    let mut out = Vec::new();
    let path = spec.path().to_string_lossy().into_owned();
    let code = cli::run(["pbundle", "--spec", path.as_str()], &mut out, &mut err);
    println!("spec file, exit {code}\n{}", String::from_utf8(out)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
