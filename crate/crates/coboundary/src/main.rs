use clap::Parser;

fn main() {
    let cli = coboundary::cli::Cli::parse();
    std::process::exit(coboundary::cli::run(cli));
}
