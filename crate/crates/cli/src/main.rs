use clap::Parser;
use orbispec_cli::{args::Cli, init_threads, run};

fn main() {
    let cli = Cli::parse();
    let code = match init_threads().and_then(|()| {
        run(
            cli,
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
        )
    }) {
        Ok(report) if report.passed() => 0,
        Ok(_) => 1,
        Err(e) => {
            eprintln!("orbispec: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
