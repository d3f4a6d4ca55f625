use clap::Parser;

fn main() {
    let cli = windmill_cli::Cli::parse();
    let code = windmill_cli::run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
