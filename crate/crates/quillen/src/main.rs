use clap::error::ErrorKind;
use clap::Parser;
use quillen::cli::{run, Cli, EXIT_PARSE};

fn main() {
    // Argument errors belong to the parse/validation exit code; clap's
    // default of 2 is reserved for the not-positive-definite outcome.
    match Cli::try_parse() {
        Ok(cli) => std::process::exit(run(cli)),
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    }
}
