//! Parse a configuration document, run it into a temporary directory and
//! print the manifest.

use elastic_corners::io::{parse_config, run};

const DOC: &str = r#"
mode = "solve"
lambda = 1.0
mu = 1.0
rho0 = 2.0
omega = 3.0
cells = 24

[geometry]
kind = "l-shape"
size = 1.0
notch = 0.5

[incident]
kind = "S"
angle = 0.7
"#;

fn main() -> elastic_corners::Result<()> {
    match parse_config("mode = \"solve\"\nlambda = 1\nmu = -1\nrho0 = 1\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    let cfg = parse_config(DOC)?;
    let root = std::env::temp_dir().join("elastic-corners-example");
    let out = run(&cfg, &root, Some(DOC))?;
    println!("{}", serde_json::to_string_pretty(&out.manifest)?);
    Ok(())
}
