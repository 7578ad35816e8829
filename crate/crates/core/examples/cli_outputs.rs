//! Drives the command-line front end in-process and writes each output
//! format into a temporary directory.
//!
//! cargo run --example cli_outputs

use std::fs;

use jc_freespace::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("jc-freespace-example");
    fs::create_dir_all(&dir)?;
    let jobs: [(&str, &[&str]); 4] = [
        ("verify.csv", &["verify"]),
        ("spectrum.json", &["spectrum", "--alpha", "0", "--xi", "1", "--adiabatic", "--format", "json"]),
        ("bands.csv", &["bands", "--alpha", "0.7854", "--xi", "0.5", "--eps-max", "4"]),
        ("density.csv", &["density", "--alpha", "0.7854", "--xi", "0.5"]),
    ];
    for (file, args) in jobs {
        let out = dir.join(file);
        let argv = ["jc-freespace"].iter().chain(args).copied().chain(["-o", out.to_str().unwrap()]);
        let code = run(argv);
        println!("{:<40} exit {code}", args.join(" "));
    }
    let mut written: Vec<_> = fs::read_dir(&dir)?.filter_map(|e| e.ok()).map(|e| e.file_name()).collect();
    written.sort();
    for name in written {
        println!("  {}", dir.join(name).display());
    }
    Ok(())
}
