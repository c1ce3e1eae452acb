use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    ExitCode::from(nuobdd_cli::commands::main_with(std::env::args_os(), &mut stdout))
}
