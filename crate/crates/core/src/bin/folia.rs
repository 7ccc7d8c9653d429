use std::io::{stderr, stdin, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = folia::io::cli::run(std::env::args_os(), &mut stdin(), &mut stdout(), &mut stderr());
    ExitCode::from(code as u8)
}
