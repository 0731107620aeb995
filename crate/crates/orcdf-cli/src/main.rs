use clap::Parser;

fn main() {
    orcdf_cli::configure_threads();
    let cli = orcdf_cli::Cli::parse();
    std::process::exit(orcdf_cli::execute(&cli.command));
}
