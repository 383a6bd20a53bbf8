use std::io;
use std::process::ExitCode;

use partlie::cli;

fn main() -> ExitCode {
    if let Err(e) = cli::configure_threads() {
        eprintln!("partlie: {e}");
        return ExitCode::from(cli::EXIT_USAGE as u8);
    }
    let code = cli::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
