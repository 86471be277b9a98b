use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = rzint::cli::run_cli(std::env::args_os(), std::env::var("RZ_SEED").ok(), &mut stdout(), &mut stderr());
    ExitCode::from(code as u8)
}
