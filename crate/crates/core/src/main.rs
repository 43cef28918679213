use clap::Parser;

use augfiber::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
