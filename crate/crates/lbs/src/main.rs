use std::process::ExitCode;

fn main() -> ExitCode {
    lbs::cli::main_with_args(std::env::args_os())
}
