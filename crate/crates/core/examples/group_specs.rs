//! The group description language used by the `finis` command line.
use clap::Parser;
use finis::cli::{parse_group_spec, render_text, run, Cli};

fn main() -> finis::Result<()> {
    for text in ["S3 x C2", "C7 ⋊ C3 via power(2)", "(C3 × C3) : C4 via matrix([[0,2],[1,0]])", "perm: (1 2 3 4 5), (1 2)"] {
        let spec = parse_group_spec(text)?;
        println!("{text:<44} → {spec} (order {})", spec.build()?.order()?);
    }
    match parse_group_spec("S3 x ") {
        Err(e) => println!("error: {e}"),
        Ok(s) => println!("unexpected parse {s}"),
    }

    let cli = Cli::parse_from(["finis", "sylow", "PSL(2,7)", "-p", "7"]);
    let report = run(&cli)?;
    print!("{}", render_text(&report));
    Ok(())
}
