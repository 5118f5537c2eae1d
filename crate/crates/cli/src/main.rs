use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let stdin = io::stdin();
    let mut out = io::stdout().lock();
    let code = trivalent_cli::run_with_io(&args, &mut stdin.lock(), &mut out);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
