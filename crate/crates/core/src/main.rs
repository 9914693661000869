use clap::Parser;
use ifccr::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("ifccr: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
