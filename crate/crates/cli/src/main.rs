use clap::Parser;

fn main() {
    let cli = semiq_cli::args::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = semiq_cli::run::execute(&cli, &mut stdout);
    std::process::exit(code);
}
