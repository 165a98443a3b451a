use clap::Parser;

fn main() {
    let cli = dioclt::cli::Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = dioclt::cli::run(cli, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
