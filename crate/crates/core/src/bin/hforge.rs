use std::process::ExitCode;

fn main() -> ExitCode {
    hforge::cli::run_from(std::env::args_os())
}
