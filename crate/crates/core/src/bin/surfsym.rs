use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = surfsym::cli::run(std::env::args_os());
    let to_stderr = code == 2 || output.starts_with("error:");
    let result = if to_stderr {
        std::io::stderr().write_all(output.as_bytes())
    } else {
        std::io::stdout().write_all(output.as_bytes())
    };
    if result.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
