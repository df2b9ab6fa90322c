use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    lune_hankel::cli::init_threads();
    let code = lune_hankel::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
