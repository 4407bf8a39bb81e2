use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(icpi::run(std::env::args_os()))
}
