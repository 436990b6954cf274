use clap::Parser;
use framed_hitchin::cli::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    std::process::exit(run(&cli));
}
