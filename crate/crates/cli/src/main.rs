use clap::Parser;
use klein168_cli::commands::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
