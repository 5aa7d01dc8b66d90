use clap::Parser;

fn main() {
    let cli = cosetnet_cli::Cli::parse();
    std::process::exit(cosetnet_cli::run(cli));
}
