use clap::Parser;

fn main() {
    let cli = quasivar::cli::Cli::parse();
    std::process::exit(quasivar::cli::execute(cli));
}
