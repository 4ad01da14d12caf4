use clap::Parser;
use varcal::cli::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(varcal::cli::run(&cli));
}
