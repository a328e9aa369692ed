use clap::Parser;

fn main() {
    let cli = setmax_cli::cli::Cli::parse();
    std::process::exit(setmax_cli::run(cli));
}
