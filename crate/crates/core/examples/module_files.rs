//! Reading and writing module files, and the command layer as a library.
use abmod::cli::{self, format_module, parse_module_file, Options};

fn main() -> abmod::Result<()> {
    let text = r#"{"rank": 2, "precision": 6, "matrix": [["1/2*b", "1"], ["0", "1/2*b + b^3"]]}"#;
    let spec = parse_module_file(text)?;
    print!("{}", format_module(&spec.build(None)?));

    let opts = Options::default();
    println!("{}", cli::cmd_invariants(&spec, opts)?);
    println!("{}", cli::cmd_jh(&spec, opts)?);

    let pair = parse_module_file(r#"{"construct": "Epair", "lambda": "2", "mu": "1/2"}"#)?;
    println!("{}", cli::cmd_classify(&pair, opts)?);
    print!("{}", cli::cmd_dual(&pair, opts)?);

    match parse_module_file("{\"rank\": 1,\n \"precision\": 4,\n \"matrix\": [[\"b^\"]]}") {
        Err(e) => println!("rejected: {e} (exit code {})", cli::exit_code(&e)),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
