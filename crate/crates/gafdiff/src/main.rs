use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gafdiff::cli::run(std::env::args_os()))
}
