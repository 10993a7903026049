//! Point-set files, content digests and the JSON analysis report.

use std::path::PathBuf;

use znfal::cli::run;
use znfal::constructions::example_2_3;
use znfal::format::{digest, point_set_json, read_point_set, write_point_set};

fn main() -> std::io::Result<()> {
    let set = example_2_3();
    print!("{}", point_set_json(&set));
    println!("{}", digest(&set));

    let path: PathBuf = std::env::temp_dir().join("znfal-example.json");
    write_point_set(&path, &set)?;
    assert_eq!(read_point_set(&path).expect("round trip"), set);

    let code = run(
        [
            "znfal",
            "analyze",
            path.to_str().expect("utf-8 path"),
            "--shells",
            "--classify",
        ],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::fs::remove_file(&path)?;
    std::process::exit(code);
}
