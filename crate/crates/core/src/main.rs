use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lojax::cli::run(std::env::args_os()))
}
