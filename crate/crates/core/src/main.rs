use std::io::Write;
use std::process::ExitCode;

use xfan::cli::{main_with_args, threads_from_env, Context};

fn main() -> ExitCode {
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let mut stdin = std::io::stdin();
    let mut ctx = Context {
        stdin: &mut stdin,
        threads,
    };
    let (out, err, code) = main_with_args(std::env::args_os(), &mut ctx);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code)
}
